"""Self-extension blocks, the deformation equation, and order-by-order
normalization of q-families of connections.

The deformation equation B + AY - YA + D(Y) = 0 is linear over the
D-constants, so it is solved exactly by expressing the unknown Y in a
finite polynomial ansatz, clearing denominators, and row-reducing.  A
solution at layer k feeds the gauge I + q^k Y, which kills that layer of a
truncated family while leaving lower layers alone.  Absence of a solution
inside the ansatz is a reported outcome, not an error: the caller may widen
the degree bound and retry.
"""

from __future__ import annotations

from dataclasses import dataclass

from .connection import ConnectionMatrix, Derivation, frobenius_twist_multiplier, \
    nabla_power_matrix, p_curvature
from .linalg import Matrix
from .poly import Polynomial, poly_gcd
from .ratfunc import RationalFunction


class BlockExtension:
    """Rank-2r connection [[A, B], [0, A]] encoding a self-extension."""

    __slots__ = ("A", "B", "M")

    def __init__(self, A: ConnectionMatrix, B: Matrix):
        if B.shape() != A.matrix.shape():
            raise ValueError("extension block must match the connection's shape")
        if B.ring != A.field:
            raise ValueError("extension block over a different field")
        self.A = A
        self.B = B
        r = A.rank
        z = A.field.zero
        rows = []
        for i in range(r):
            rows.append(list(A.matrix.rows[i]) + list(B.rows[i]))
        for i in range(r):
            rows.append([z] * r + list(A.matrix.rows[i]))
        self.M = ConnectionMatrix(Matrix(A.field, rows), A.derivation)

    @property
    def rank(self) -> int:
        return self.A.rank

    def blocks(self):
        """Round-trip accessor: (top-left, top-right, bottom-left, bottom-right)."""
        r = self.rank
        ring = self.A.field
        rows = self.M.matrix.rows

        def sub(r0, c0):
            return Matrix(ring, [[rows[r0 + i][c0 + j] for j in range(r)]
                                 for i in range(r)])

        return sub(0, 0), sub(0, r), sub(r, 0), sub(r, r)


def build_self_extension(A: ConnectionMatrix, B: Matrix) -> BlockExtension:
    return BlockExtension(A, B)


def block_power_pair(ext: BlockExtension, j: int):
    """(P_j, Q_j) with P_1 = A, Q_1 = B and
    P_j = A P_{j-1} + D(P_{j-1}),  Q_j = A Q_{j-1} + B P_{j-1} + D(Q_{j-1})."""
    if j < 1:
        raise ValueError("power must be at least 1")
    D = ext.A.derivation
    A, B = ext.A.matrix, ext.B
    P, Q = A, B
    for _ in range(j - 1):
        P, Q = A * P + D(P), A * Q + B * P + D(Q)
    return P, Q


def block_p_curvature_check(ext: BlockExtension, p: int) -> bool:
    """Exact structural identity: psi_p of the block connection equals
    [[psi_p(A), Q_p - twist*B], [0, psi_p(A)]]."""
    report = p_curvature(ext.M, p)
    if not report.good_prime:
        raise ValueError(f"p = {p} is a bad prime for the block connection")
    char = ext.A.field.characteristic()
    if char == 0:
        Abar = ext.A.reduce_mod(p)
        target = Abar.field
        Bbar = ext.B.map_entries(
            lambda e: e.map_coefficients(target.base, target), target)
    else:
        Abar, Bbar = ext.A, ext.B
    red_ext = BlockExtension(Abar, Bbar)
    Pp, Qp = block_power_pair(red_ext, p)
    v = frobenius_twist_multiplier(Abar.derivation, p)
    twist = v / Abar.derivation.u
    psi_A = Pp - Abar.matrix.scale(twist)
    corner = Qp - Bbar.scale(twist)
    r = ext.rank
    ring = Abar.field
    z = ring.zero
    rows = []
    for i in range(r):
        rows.append(list(psi_A.rows[i]) + list(corner.rows[i]))
    for i in range(r):
        rows.append([z] * r + list(psi_A.rows[i]))
    assembled = Matrix(ring, rows)
    return report.psi == assembled


@dataclass(frozen=True)
class DeformationSolution:
    Y: Matrix
    residual: Matrix
    ansatz_degree: int


def _common_denominator(entries):
    den = None
    for f in entries:
        d = f.den
        if den is None:
            den = d
        else:
            den = ((den * d) // poly_gcd(den, d)).monic()
    return den


def _poly_coords(f: RationalFunction, common_den: Polynomial, width: int):
    num = f.num * (common_den // f.den)
    return [num.coeff(i) for i in range(width)]


def _deformation_system(A: ConnectionMatrix, B: Matrix, ansatz_degree: int):
    """Linear system for B + A Y - Y A + D(Y) = 0 over the coefficient field.

    Returns (system matrix, rhs column, basis builder): columns index the
    ansatz basis E_ij * x^t; rows index (entry, x-power) coordinates.
    """
    field = A.field
    base = field.base
    D = A.derivation
    r = A.rank
    d = ansatz_degree

    basis = []
    images = []
    for i in range(r):
        for j in range(r):
            for t in range(d + 1):
                E = Matrix.zeros(field, r)
                rows = [list(row) for row in E.rows]
                rows[i][j] = field.gen() ** t
                Yb = Matrix(field, rows)
                basis.append(Yb)
                images.append(A.matrix * Yb - Yb * A.matrix + D(Yb))

    all_entries = [e for img in images for row in img.rows for e in row]
    all_entries += [e for row in B.rows for e in row]
    common_den = _common_denominator(all_entries)
    width = 1 + max(
        (f.num.degree() + (common_den.degree() - f.den.degree())
         for f in all_entries if not f.is_zero()),
        default=0,
    )

    sys_rows = []
    rhs_rows = []
    for i in range(r):
        for j in range(r):
            img_coords = [_poly_coords(img.rows[i][j], common_den, width)
                          for img in images]
            b_coords = _poly_coords(B.rows[i][j], common_den, width)
            for k in range(width):
                sys_rows.append([img_coords[b][k] for b in range(len(basis))])
                rhs_rows.append([-b_coords[k]])
    system = Matrix(base, sys_rows)
    rhs = Matrix(base, rhs_rows)
    return system, rhs, basis


def solve_deformation(A: ConnectionMatrix, B: Matrix,
                      ansatz_degree: int) -> DeformationSolution | None:
    """Solve B + AY - YA + D(Y) = 0 with Y polynomial of degree <= d.

    The row-reduced solve assigns zero to every free parameter, so the
    returned Y is deterministic.  None means no solution in this ansatz.
    """
    system, rhs, basis = _deformation_system(A, B, ansatz_degree)
    sol = system.solve(rhs)
    if sol is None:
        return None
    Y = Matrix.zeros(A.field, A.rank)
    for b, Yb in enumerate(basis):
        c = sol.entry(b, 0)
        if c:
            Y = Y + Yb.scale(A.field(c))
    D = A.derivation
    residual = B + A.matrix * Y - Y * A.matrix + D(Y)
    if not residual.is_zero():
        raise AssertionError("solver returned a nonzero residual")
    return DeformationSolution(Y, residual, ansatz_degree)


def commutant_kernel(A: ConnectionMatrix, ansatz_degree: int) -> list[Matrix]:
    """Basis of {Y in the ansatz : AY - YA + D(Y) = 0}."""
    B = Matrix.zeros(A.field, A.rank)
    system, _, basis = _deformation_system(A, B, ansatz_degree)
    out = []
    for vec in system.kernel_basis():
        Y = Matrix.zeros(A.field, A.rank)
        for b, Yb in enumerate(basis):
            c = vec.entry(b, 0)
            if c:
                Y = Y + Yb.scale(A.field(c))
        out.append(Y)
    return out


class TruncatedFamily:
    """Connection family sum_k layers[k] * q^k, truncated at order m."""

    __slots__ = ("derivation", "qvar", "layers")

    def __init__(self, derivation: Derivation, layers, qvar: str = "q"):
        layers = list(layers)
        if not layers:
            raise ValueError("family needs at least the constant layer")
        shape = layers[0].shape()
        for L in layers:
            if L.shape() != shape or L.ring != derivation.field:
                raise ValueError("inconsistent family layers")
        self.derivation = derivation
        self.qvar = qvar
        self.layers = tuple(layers)

    @property
    def order(self) -> int:
        return len(self.layers)

    @property
    def rank(self) -> int:
        return self.layers[0].nrows

    def layer(self, k: int) -> Matrix:
        return self.layers[k]

    def is_constant(self) -> bool:
        return all(L.is_zero() for L in self.layers[1:])

    def constant_through(self) -> int:
        """Largest order m' such that the family is constant mod q^{m'}."""
        for k in range(1, self.order):
            if not self.layers[k].is_zero():
                return k
        return self.order

    def __eq__(self, other):
        if not isinstance(other, TruncatedFamily):
            return NotImplemented
        return self.layers == other.layers and self.derivation == other.derivation

    def __repr__(self):
        return f"Family(order={self.order}, rank={self.rank})"


def _layers_mul(a, b, m, ring, r):
    out = [Matrix.zeros(ring, r) for _ in range(m)]
    for i, Ai in enumerate(a):
        if Ai.is_zero():
            continue
        for j, Bj in enumerate(b):
            if i + j < m and not Bj.is_zero():
                out[i + j] = out[i + j] + Ai * Bj
    return out


def gauge_family(F: TruncatedFamily, Y: Matrix, k: int) -> TruncatedFamily:
    """Apply the gauge G = I + q^k Y to the family, truncating at its order."""
    if k < 1:
        raise ValueError("gauge layer must be positive")
    m = F.order
    ring = F.layers[0].ring
    r = F.rank
    ident = Matrix.identity(ring, r)
    zero = Matrix.zeros(ring, r)

    G = [zero] * m
    G[0] = ident
    if k < m:
        G[k] = Y
    # inverse of I + q^k Y is the alternating geometric series, truncated
    Ginv = [zero] * m
    Ginv[0] = ident
    power = ident
    sign = 1
    for j in range(1, (m - 1) // k + 1):
        power = power * Y
        sign = -sign
        Ginv[j * k] = power.scale(ring(sign))

    D = F.derivation
    DG = [D(L) for L in G]
    AG = _layers_mul(list(F.layers), G, m, ring, r)
    new_layers = [x + y for x, y in
                  zip(_layers_mul(Ginv, AG, m, ring, r),
                      _layers_mul(Ginv, DG, m, ring, r))]
    return TruncatedFamily(D, new_layers, F.qvar)


@dataclass(frozen=True)
class NormalizationResult:
    gauges: tuple
    family: TruncatedFamily
    obstructed_at: int | None
    obstruction: Matrix | None

    @property
    def normalized(self) -> bool:
        return self.obstructed_at is None


def normalize_family(F: TruncatedFamily, ansatz_degree: int) -> NormalizationResult:
    """Kill layers 1, 2, ... in turn by gauges I + q^k Y_k.

    Stops at the first layer whose deformation equation has no solution in
    the ansatz, reporting that layer and its inhomogeneity.
    """
    A0 = ConnectionMatrix(F.layers[0], F.derivation)
    current = F
    gauges = []
    for k in range(1, F.order):
        Bk = current.layers[k]
        if Bk.is_zero():
            continue
        sol = solve_deformation(A0, Bk, ansatz_degree)
        if sol is None:
            return NormalizationResult(tuple(gauges), current, k, Bk)
        current = gauge_family(current, sol.Y, k)
        gauges.append((k, sol.Y))
    return NormalizationResult(tuple(gauges), current, None, None)


def step_conjugate(sigma_gens, tau_gens, m: int):
    """Solve (I + q^m M)^{-1} tau (I + q^m M) = sigma mod q^{m+1}.

    tau_gens[i] is the layer list (coefficients of q^0..q^m) of the i-th
    generator.  Requires tau = sigma mod q^m; the linearized system
    M sigma_i - sigma_i M = (tau_i - sigma_i)/q^m is solved exactly and the
    full conjugation identity is re-verified before returning.  None means
    the layers are not conjugate.
    """
    if m < 1:
        raise ValueError("conjugation layer must be positive")
    if len(sigma_gens) != len(tau_gens):
        raise ValueError("generator count mismatch")
    ring = sigma_gens[0].ring
    n = sigma_gens[0].nrows
    deltas = []
    for sigma, tau_layers in zip(sigma_gens, tau_gens):
        if len(tau_layers) != m + 1:
            raise ValueError(f"tau needs exactly {m + 1} layers (q^0..q^{m})")
        if tau_layers[0] != sigma or any(not L.is_zero() for L in tau_layers[1:m]):
            raise ValueError("tau does not agree with sigma mod q^m")
        deltas.append(tau_layers[m])

    basis = []
    for i in range(n):
        for j in range(n):
            E = [[ring.zero] * n for _ in range(n)]
            E[i][j] = ring.one
            basis.append(Matrix(ring, E))
    sys_rows = []
    rhs_rows = []
    for sigma, delta in zip(sigma_gens, deltas):
        images = [Eb * sigma - sigma * Eb for Eb in basis]
        for i in range(n):
            for j in range(n):
                sys_rows.append([img.rows[i][j] for img in images])
                rhs_rows.append([delta.rows[i][j]])
    system = Matrix(ring, sys_rows)
    sol = system.solve(Matrix(ring, rhs_rows))
    if sol is None:
        return None
    M = Matrix.zeros(ring, n)
    for b, Eb in enumerate(basis):
        c = sol.entry(b, 0)
        if c:
            M = M + Eb.scale(c)

    # full verification mod q^{m+1}: since 2m >= m+1, the inverse gauge is
    # exactly I - q^m M at this truncation
    ident = Matrix.identity(ring, n)
    for sigma, tau_layers in zip(sigma_gens, tau_gens):
        glayers = [ident] + [Matrix.zeros(ring, n)] * (m - 1) + [M]
        ginv_layers = [ident] + [Matrix.zeros(ring, n)] * (m - 1) + [-M]
        t1 = _layers_mul(tau_layers, glayers, m + 1, ring, n)
        t2 = _layers_mul(ginv_layers, t1, m + 1, ring, n)
        expect = [sigma] + [Matrix.zeros(ring, n)] * m
        if t2 != expect:
            return None
    return M
