"""Self-extensions, the deformation equation, and layer-by-layer
normalization of truncated families."""

import random
from fractions import Fraction

import pytest

from pcurvkit import (
    GF,
    QQ,
    ConnectionMatrix,
    Derivation,
    FunctionField,
    Matrix,
    TruncatedFamily,
    block_p_curvature_check,
    block_power_pair,
    build_self_extension,
    commutant_kernel,
    gauge_family,
    nabla_power_matrix,
    normalize_family,
    p_curvature,
    solve_deformation,
    step_conjugate,
)


def qq_line():
    return FunctionField(QQ, "x")


def poly_matrix(K, rng, n=2, deg=1):
    rows = [[K.from_poly(K.polynomial([rng.randint(-2, 2) for _ in range(deg + 1)]))
             for _ in range(n)] for _ in range(n)]
    return Matrix(K, rows)


# -- block extensions ---------------------------------------------------------


def test_block_layout_and_round_trip():
    K = qq_line()
    D = Derivation.d_dx(K)
    x = K.gen()
    A = ConnectionMatrix(Matrix(K, [[x, K.one], [K.zero, x]]), D)
    B = Matrix(K, [[K.one, K.zero], [x, K.one]])
    ext = build_self_extension(A, B)
    tl, tr, bl, br = ext.blocks()
    assert tl == A.matrix and tr == B and br == A.matrix
    assert bl.is_zero()
    assert ext.M.rank == 4


def test_block_shape_mismatch_rejected():
    K = qq_line()
    D = Derivation.d_dx(K)
    A = ConnectionMatrix(Matrix(K, [[1]]), D)
    with pytest.raises(ValueError):
        build_self_extension(A, Matrix.identity(K, 2))


def test_block_power_pair_against_full_nabla():
    """P_j and Q_j are the diagonal and corner blocks of nabla^j on the
    block connection; check against the rank-2r computation directly."""
    rng = random.Random(515)
    K = qq_line()
    D = Derivation.d_dx(K)
    for _ in range(6):
        A = ConnectionMatrix(poly_matrix(K, rng), D)
        B = poly_matrix(K, rng)
        ext = build_self_extension(A, B)
        for j in (1, 2, 3, 5):
            P, Q = block_power_pair(ext, j)
            full = nabla_power_matrix(ext.M, j)
            r = ext.rank
            for i in range(r):
                for k in range(r):
                    assert full.entry(i, k) == P.entry(i, k)
                    assert full.entry(i, k + r) == Q.entry(i, k)
                    assert full.entry(i + r, k + r) == P.entry(i, k)
                    assert full.entry(i + r, k) == K.zero


def test_block_power_pair_diagonal_matches_plain_power():
    rng = random.Random(16)
    K = qq_line()
    D = Derivation.d_dx(K)
    A = ConnectionMatrix(poly_matrix(K, rng), D)
    ext = build_self_extension(A, poly_matrix(K, rng))
    P, _ = block_power_pair(ext, 4)
    assert P == nabla_power_matrix(A, 4)


def test_block_p_curvature_identity():
    rng = random.Random(90)
    K = qq_line()
    D = Derivation.d_dx(K)
    for _ in range(4):
        A = ConnectionMatrix(poly_matrix(K, rng), D)
        B = poly_matrix(K, rng)
        ext = build_self_extension(A, B)
        for p in (2, 3, 5):
            assert block_p_curvature_check(ext, p)


# -- the deformation equation ---------------------------------------------------


def test_solve_deformation_round_trip():
    rng = random.Random(123)
    K = qq_line()
    D = Derivation.d_dx(K)
    solved = 0
    for _ in range(10):
        A = ConnectionMatrix(poly_matrix(K, rng), D)
        Y0 = poly_matrix(K, rng)
        # manufacture a solvable instance: B = -(A Y0 - Y0 A + D(Y0))
        B = -(A.matrix * Y0 - Y0 * A.matrix + D(Y0))
        sol = solve_deformation(A, B, ansatz_degree=4)
        assert sol is not None
        solved += 1
        assert sol.residual.is_zero()
        Y = sol.Y
        assert (B + A.matrix * Y - Y * A.matrix + D(Y)).is_zero()
    assert solved == 10


def test_solve_deformation_obstruction():
    # scalar case: B + D(Y) = 0 needs an antiderivative of -B; 1/x has none
    K = qq_line()
    D = Derivation.d_dx(K)
    x = K.gen()
    A = ConnectionMatrix(Matrix(K, [[0]]), D)
    assert solve_deformation(A, Matrix(K, [[K.one / x]]), 6) is None
    # while a polynomial B integrates fine
    sol = solve_deformation(A, Matrix(K, [[x]]), 6)
    assert sol is not None
    assert sol.Y.entry(0, 0) == -(x * x) / K(2)


def test_solve_deformation_respects_ansatz_cap():
    K = qq_line()
    D = Derivation.d_dx(K)
    x = K.gen()
    A = ConnectionMatrix(Matrix(K, [[0]]), D)
    B = Matrix(K, [[x ** 5]])
    assert solve_deformation(A, B, ansatz_degree=3) is None
    assert solve_deformation(A, B, ansatz_degree=6) is not None


def test_commutant_kernel_of_scalar_connection():
    """For A = scalar matrix the commutant condition D(Y) = 0 forces
    constant Y, so the kernel is all four constant matrix units."""
    K = qq_line()
    D = Derivation.d_dx(K)
    A = ConnectionMatrix(Matrix(K, [[3, 0], [0, 3]]), D)
    basis = commutant_kernel(A, ansatz_degree=3)
    assert len(basis) == 4
    for Y in basis:
        assert (A.matrix * Y - Y * A.matrix + D(Y)).is_zero()


def test_commutant_kernel_companion_is_smaller():
    K = qq_line()
    D = Derivation.d_dx(K)
    x = K.gen()
    A = ConnectionMatrix(Matrix(K, [[K.zero, x], [K.one, K.zero]]), D)
    basis = commutant_kernel(A, ansatz_degree=4)
    assert 1 <= len(basis) < 4
    for Y in basis:
        assert (A.matrix * Y - Y * A.matrix + D(Y)).is_zero()


# -- truncated families -----------------------------------------------------------


def family_fixture(K, D, layers):
    return TruncatedFamily(D, layers)


def test_family_accessors():
    K = qq_line()
    D = Derivation.d_dx(K)
    Z = Matrix.zeros(K, 2)
    L0 = Matrix(K, [[1, 0], [0, 2]])
    L2 = Matrix(K, [[0, 1], [0, 0]])
    F = TruncatedFamily(D, [L0, Z, L2])
    assert F.order == 3 and F.rank == 2
    assert F.constant_through() == 2
    assert not F.is_constant()
    assert TruncatedFamily(D, [L0, Z, Z]).is_constant()


def test_gauge_family_identity_gauge():
    K = qq_line()
    D = Derivation.d_dx(K)
    rng = random.Random(31)
    F = TruncatedFamily(D, [poly_matrix(K, rng) for _ in range(3)])
    G = gauge_family(F, Matrix.zeros(K, 2), 1)
    assert G == F


def test_gauge_family_kills_designed_layer():
    K = qq_line()
    D = Derivation.d_dx(K)
    rng = random.Random(77)
    A0 = poly_matrix(K, rng)
    Y = poly_matrix(K, rng)
    B1 = -(A0 * Y - Y * A0 + D(Y))
    F = TruncatedFamily(D, [A0, B1, Matrix.zeros(K, 2)])
    G = gauge_family(F, Y, 1)
    assert G.layer(0) == A0
    assert G.layer(1).is_zero()


def test_normalize_family_round_trip():
    rng = random.Random(2025)
    K = qq_line()
    D = Derivation.d_dx(K)
    for _ in range(5):
        A0 = poly_matrix(K, rng)
        F0 = TruncatedFamily(D, [A0] + [Matrix.zeros(K, 2)] * 3)
        # perturb the constant family by random gauges, then undo
        F = F0
        for k in (1, 2):
            F = gauge_family(F, poly_matrix(K, rng), k)
        assert F.layer(0) == A0
        res = normalize_family(F, ansatz_degree=8)
        assert res.normalized
        assert res.family.is_constant()
        assert res.family.layer(0) == A0


def test_normalize_family_reports_obstruction():
    K = qq_line()
    D = Derivation.d_dx(K)
    x = K.gen()
    A0 = Matrix.zeros(K, 1)
    bad = Matrix(K, [[K.one / x]])
    F = TruncatedFamily(D, [A0, bad])
    res = normalize_family(F, ansatz_degree=6)
    assert not res.normalized
    assert res.obstructed_at == 1
    assert res.obstruction == bad
    assert res.gauges == ()


def test_normalize_family_partial_progress():
    K = qq_line()
    D = Derivation.d_dx(K)
    x = K.gen()
    A0 = Matrix.zeros(K, 1)
    F = TruncatedFamily(D, [A0, Matrix(K, [[x]]), Matrix(K, [[K.one / x]])])
    res = normalize_family(F, ansatz_degree=6)
    assert not res.normalized
    assert res.obstructed_at == 2
    assert len(res.gauges) == 1
    assert res.family.layer(1).is_zero()


# -- step conjugation of representation layers -------------------------------------


def test_step_conjugate_forward_instances():
    rng = random.Random(404)
    F = GF(7)
    solved = 0
    for _ in range(8):
        n = 2
        sigma = [Matrix(F, [[rng.randrange(7) for _ in range(n)] for _ in range(n)])
                 for _ in range(2)]
        M = Matrix(F, [[rng.randrange(7) for _ in range(n)] for _ in range(n)])
        m = rng.choice([1, 2, 3])
        tau = []
        for s in sigma:
            delta = M * s - s * M
            tau.append([s] + [Matrix.zeros(F, n)] * (m - 1) + [delta])
        got = step_conjugate(sigma, tau, m)
        assert got is not None
        solved += 1
        # the returned matrix solves the same commutator equations
        for s, t in zip(sigma, tau):
            assert got * s - s * got == t[m]
    assert solved == 8


def test_step_conjugate_none_when_not_conjugate():
    F = GF(5)
    I = Matrix.identity(F, 2)
    sigma = [I]
    # a central generator commutes with everything, so only delta = 0 works
    tau = [[I, Matrix(F, [[0, 1], [0, 0]])]]
    assert step_conjugate(sigma, tau, 1) is None


def test_step_conjugate_validates_input():
    F = GF(5)
    I = Matrix.identity(F, 2)
    with pytest.raises(ValueError, match="layers"):
        step_conjugate([I], [[I]], 1)
    with pytest.raises(ValueError, match="mod q"):
        step_conjugate([I], [[I + I, Matrix.zeros(F, 2)]], 1)
    with pytest.raises(ValueError, match="count"):
        step_conjugate([I, I], [[I, Matrix.zeros(F, 2)]], 1)
    with pytest.raises(ValueError):
        step_conjugate([I], [[I, Matrix.zeros(F, 2)]], 0)
