"""Surface-group words, SL2 trace machinery, and finiteness certification.

Traces do all the heavy lifting: the fundamental identity
tr(xy) + tr(xy^{-1}) = tr(x) tr(y) drives both the Fricke rewriting engine
(closed-form trace polynomials for the rank-2 free group) and the
obstruction checks.  Certification itself never trusts a float: integrality
of traces is decided through minimal polynomials, the archimedean bounds
through Sturm counts on those same polynomials, and the final verdict
through exhaustive closure of the exact matrix image with element-order
tests along the way.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .fields import QQ
from .linalg import Matrix
from .numberfield import (
    NumberField,
    NumberFieldElement,
    embedding_absolute_values,
    is_algebraic_integer,
    is_root_of_unity,
    minimal_polynomial,
    root_of_unity_candidates,
)
from .poly import count_real_roots_closed, squarefree_part


# ---------------------------------------------------------------------------
# words


class Word:
    """Freely reduced word: tuple of (generator name, +1|-1)."""

    __slots__ = ("letters",)

    def __init__(self, letters=()):
        self.letters = _free_reduce(tuple(letters))

    @classmethod
    def gen(cls, name: str, exp: int = 1):
        if exp not in (1, -1):
            raise ValueError("letter exponent must be +1 or -1")
        return cls(((name, exp),))

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse 'a*b^-1*a' (also accepts whitespace separation and ^k).
        The bare token '1' is the identity, matching to_str()."""
        letters = []
        for token in text.replace("*", " ").split():
            if token == "1":
                continue
            if "^" in token:
                name, _, expstr = token.partition("^")
                try:
                    exp = int(expstr)
                except ValueError:
                    raise ValueError(f"bad exponent in {token!r}") from None
            else:
                name, exp = token, 1
            if not name:
                raise ValueError(f"bad word token {token!r}")
            sign = 1 if exp >= 0 else -1
            letters.extend([(name, sign)] * abs(exp))
        return cls(letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def names(self):
        return {g for g, _ in self.letters}

    def to_str(self) -> str:
        if not self.letters:
            return "1"
        return "*".join(g if e == 1 else f"{g}^-1" for g, e in self.letters)

    def __repr__(self):
        return self.to_str()


def _free_reduce(letters):
    out = []
    for g, e in letters:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def reduce_word(w) -> Word:
    if isinstance(w, Word):
        return Word(w.letters)
    return Word(tuple(w))


def _cyclic_reduce(letters):
    letters = _free_reduce(letters)
    while len(letters) >= 2 and letters[0][0] == letters[-1][0] \
            and letters[0][1] == -letters[-1][1]:
        letters = letters[1:-1]
    return letters


# ---------------------------------------------------------------------------
# presentations


class SurfacePresentation:
    """Genus-g surface with n punctures; generators a_i, b_i, c_j.

    The defining relation multiplies the commutators [a_i, d_i] with
    d_i = b_i^{-1} and then the puncture loops c_1..c_n.  With punctures the
    group is free of rank 2g + n - 1 (the relation solves for c_n).
    """

    def __init__(self, genus: int, punctures: int):
        if genus < 0 or punctures < 0:
            raise ValueError("genus and puncture count must be nonnegative")
        if genus == 0 and punctures == 0:
            raise ValueError("the sphere group is trivial; nothing to certify")
        self.genus = genus
        self.punctures = punctures

    def generator_names(self) -> list[str]:
        names = []
        for i in range(1, self.genus + 1):
            names.extend((f"a{i}", f"b{i}"))
        names.extend(f"c{j}" for j in range(1, self.punctures + 1))
        return names

    def free_rank(self) -> int:
        if self.punctures == 0:
            return 2 * self.genus
        return 2 * self.genus + self.punctures - 1

    def free_generator_names(self) -> list[str]:
        names = self.generator_names()
        return names[:-1] if self.punctures >= 1 else names

    def relation_word(self) -> Word:
        letters = []
        for i in range(1, self.genus + 1):
            a, b = f"a{i}", f"b{i}"
            letters.extend([(a, 1), (b, -1), (a, -1), (b, 1)])
        for j in range(1, self.punctures + 1):
            letters.append((f"c{j}", 1))
        return Word(letters)

    def last_puncture_word(self) -> Word:
        """c_n expressed in the other generators via the relation."""
        if self.punctures == 0:
            raise ValueError("closed surface has no puncture loops")
        letters = []
        for i in range(1, self.genus + 1):
            a, b = f"a{i}", f"b{i}"
            letters.extend([(a, 1), (b, -1), (a, -1), (b, 1)])
        for j in range(1, self.punctures):
            letters.append((f"c{j}", 1))
        return Word(letters).inverse()

    def optimal_sequence(self) -> list[Word]:
        return [Word.gen(name) for name in self.generator_names()]

    def __repr__(self):
        return f"Surface(genus={self.genus}, punctures={self.punctures})"


def simple_loop_products(pres: SurfacePresentation) -> list[Word]:
    """Products of nonempty subsets of the optimal sequence in cyclic order,
    one representative per rotation class."""
    seq = pres.generator_names()
    seen = set()
    out = []
    for size in range(1, len(seq) + 1):
        for subset in itertools.combinations(range(len(seq)), size):
            letters = tuple((seq[i], 1) for i in subset)
            rotations = {letters[k:] + letters[:k] for k in range(len(letters))}
            key = min(rotations)
            if key not in seen:
                seen.add(key)
                out.append(Word(key))
    return out


# ---------------------------------------------------------------------------
# representations


class Representation:
    """Exact generator matrices over a number field, SL2 or GL2 target."""

    def __init__(self, field: NumberField, pres: SurfacePresentation,
                 generators: dict, target: str = "SL2"):
        if target not in ("SL2", "GL2"):
            raise ValueError("target must be SL2 or GL2")
        self.field = field
        self.presentation = pres
        self.target = target
        names = pres.generator_names()
        free_names = pres.free_generator_names()
        self._inverses = {}
        gens = {}
        for name, mat in generators.items():
            if name not in names:
                raise ValueError(f"unknown generator {name!r}")
            if not isinstance(mat, Matrix):
                mat = Matrix(field, mat)
            if mat.shape() != (2, 2):
                raise ValueError(f"generator {name} is not 2x2")
            gens[name] = mat
        if set(gens) == set(free_names) and pres.punctures >= 1:
            self.gens = gens
            last = names[-1]
            self.gens[last] = self._evaluate_letters(
                pres.last_puncture_word().letters)
        elif set(gens) == set(names):
            self.gens = gens
        else:
            raise ValueError(
                f"need matrices for {free_names} (free) or {names} (all)")
        for name in names:
            det = self.gens[name].det()
            if target == "SL2" and det != field.one:
                raise ValueError(f"generator {name} has determinant {det}, not 1")
            if target == "GL2" and not det:
                raise ValueError(f"generator {name} is singular")
        if pres.punctures == 0:
            rel = self.evaluate(pres.relation_word())
            if rel != Matrix.identity(field, 2):
                raise ValueError("surface relation does not map to the identity")

    def generator_matrix(self, name: str) -> Matrix:
        return self.gens[name]

    def _inverse(self, name: str) -> Matrix:
        if name not in self._inverses:
            self._inverses[name] = self.gens[name].inverse()
        return self._inverses[name]

    def _evaluate_letters(self, letters) -> Matrix:
        acc = Matrix.identity(self.field, 2)
        for g, e in letters:
            if g not in self.gens:
                raise ValueError(f"word uses unknown generator {g!r}")
            acc = acc * (self.gens[g] if e == 1 else self._inverse(g))
        return acc

    def evaluate(self, w: Word) -> Matrix:
        return self._evaluate_letters(reduce_word(w).letters)

    def bfs_generator_names(self) -> list[str]:
        if self.presentation.punctures >= 1:
            return self.presentation.free_generator_names()
        return self.presentation.generator_names()


def evaluate(rho: Representation, w: Word) -> Matrix:
    return rho.evaluate(w)


def conjugate_representation(rho: Representation, field_map) -> Representation:
    """Apply a field automorphism entrywise to every generator."""
    gens = {
        name: mat.map_entries(field_map)
        for name, mat in rho.gens.items()
        if name in rho.presentation.free_generator_names()
        or rho.presentation.punctures == 0
    }
    return Representation(rho.field, rho.presentation, gens, rho.target)


def trace_identity_check(rho: Representation, x: Word, y: Word) -> bool:
    """tr(XY) + tr(XY^{-1}) = tr(X) tr(Y), exactly."""
    X = rho.evaluate(x)
    Y = rho.evaluate(y)
    one = rho.field.one
    if X.det() != one or Y.det() != one:
        raise ValueError("trace identity requires determinant 1")
    lhs = (X * Y).trace() + (X * Y.inverse()).trace()
    return lhs == X.trace() * Y.trace()


# ---------------------------------------------------------------------------
# Fricke trace polynomials


class TracePolynomial:
    """Integer polynomial in X = tr(a), Y = tr(b), Z = tr(ab)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for key, c in (terms or {}).items():
            if c:
                clean[key] = c
        self.terms = clean

    @classmethod
    def const(cls, c: int):
        return cls({(0, 0, 0): c})

    @classmethod
    def var(cls, which: str):
        idx = {"X": (1, 0, 0), "Y": (0, 1, 0), "Z": (0, 0, 1)}[which]
        return cls({idx: 1})

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return TracePolynomial(out)

    def __sub__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) - c
        return TracePolynomial(out)

    def __neg__(self):
        return TracePolynomial({k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        out = {}
        for (i1, j1, k1), c1 in self.terms.items():
            for (i2, j2, k2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2, k1 + k2)
                out[key] = out.get(key, 0) + c1 * c2
        return TracePolynomial(out)

    def evaluate(self, x, y, z, one):
        acc = one - one
        for (i, j, k), c in self.terms.items():
            acc = acc + (x ** i) * (y ** j) * (z ** k) * c
        return acc

    def __eq__(self, other):
        if not isinstance(other, TracePolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (i, j, k) in sorted(self.terms, reverse=True):
            c = self.terms[(i, j, k)]
            mono = "".join(
                (f"{v}^{e}" if e > 1 else v) for v, e in
                (("X", i), ("Y", j), ("Z", k)) if e)
            if mono:
                lead = {1: "", -1: "-"}.get(c, f"{c}*")
                bits.append(f"{lead}{mono}")
            else:
                bits.append(str(c))
        return " + ".join(bits).replace("+ -", "- ")


_FRICKE_MEMO: dict = {}


def _neg_count(letters) -> int:
    return sum(1 for _, e in letters if e == -1)


def _fricke_key(letters):
    """Canonical form under rotation and inversion, preferring the fewest
    inverse letters (that preference is what makes the rewriting terminate)."""
    letters = _cyclic_reduce(letters)
    if not letters:
        return letters
    inv = tuple((g, -e) for g, e in reversed(letters))
    candidates = [letters[k:] + letters[:k] for k in range(len(letters))]
    candidates += [inv[k:] + inv[:k] for k in range(len(inv))]
    return min(candidates, key=lambda c: (_neg_count(c), c))


def fricke_polynomial(w: Word) -> TracePolynomial:
    """P_w with tr(rho(w)) = P_w(tr a, tr b, tr ab) for every SL2 pair.

    Computed by the trace-identity rewriting: strip inverse letters via
    tr(u g^{-1}) = tr(u) tr(g) - tr(u g), then split repeated letters via
    tr(g u g v) = tr(gu) tr(gv) - tr(u v^{-1}).  Both rules shorten the
    (length, inverse-count) measure, so the recursion grounds out at the
    base words 1, a, b, ab.  Results are memoized on the rotation-and-
    inversion canonical form.
    """
    w = reduce_word(w)
    bad = w.names() - {"a", "b"}
    if bad:
        raise ValueError(f"Fricke polynomials live on letters a, b; got {bad}")
    return _fricke(w.letters)


def _fricke(letters) -> TracePolynomial:
    key = _fricke_key(letters)
    cached = _FRICKE_MEMO.get(key)
    if cached is not None:
        return cached
    result = _fricke_uncached(key)
    _FRICKE_MEMO[key] = result
    return result


def _fricke_uncached(w) -> TracePolynomial:
    X = TracePolynomial.var("X")
    Y = TracePolynomial.var("Y")
    Z = TracePolynomial.var("Z")
    if len(w) == 0:
        return TracePolynomial.const(2)
    if len(w) == 1:
        return X if w[0][0] == "a" else Y
    neg = next((idx for idx, (_, e) in enumerate(w) if e == -1), None)
    if neg is not None:
        # rotate the inverse letter to the end: w ~ u * g^{-1}
        rot = w[neg + 1:] + w[:neg + 1]
        u, (g, _) = rot[:-1], rot[-1]
        tr_g = X if g == "a" else Y
        return _fricke(u) * tr_g - _fricke(u + ((g, 1),))
    # all positive letters now
    if len(w) == 2 and w[0][0] != w[1][0]:
        return Z  # ab or ba, same rotation class
    for g in ("a", "b"):
        positions = [idx for idx, (name, _) in enumerate(w) if name == g]
        if len(positions) >= 2:
            i, j = positions[0], positions[1]
            rot = w[i:] + w[:i]
            jj = j - i
            u = rot[1:jj]
            v = rot[jj + 1:]
            v_inv = tuple((name, -e) for name, e in reversed(v))
            head = ((g, 1),)
            return (_fricke(head + u) * _fricke(head + v)
                    - _fricke(u + v_inv))
    raise AssertionError(f"unreachable word shape {w!r}")


# ---------------------------------------------------------------------------
# element order


@dataclass(frozen=True)
class FiniteOrder:
    n: int


@dataclass(frozen=True)
class InfiniteOrder:
    reason: str


@dataclass(frozen=True)
class UndecidedOrder:
    reason: str


def _eigenvalue_power_order(t: NumberFieldElement, bound_degree: int):
    """Order of a root of X^2 - t*X + 1 when it is a root of unity.

    Works in K[lam]/(lam^2 - t*lam + 1): lam^k = alpha + beta*lam, and
    lam^k = 1 exactly when (alpha, beta) = (1, 0) (equivalently both
    eigenvalues are k-th roots of unity, since they are inverse to each
    other).  Returns the smallest such k, or None.
    """
    K = t.field
    candidates = root_of_unity_candidates(2 * bound_degree)
    n_max = candidates[-1]
    alpha, beta = K.one, K.zero
    for k in range(1, n_max + 1):
        alpha, beta = -beta, alpha + t * beta
        if alpha == K.one and not beta:
            return k
    return None


def element_order(M: Matrix):
    """FiniteOrder(n) / InfiniteOrder(reason) for a determinant-1 matrix.

    Central elements have order 1 or 2; trace = +-2 otherwise means a
    noncentral parabolic (infinite); all remaining cases reduce to whether
    an eigenvalue is a root of unity, decided exactly.
    """
    K = M.ring
    if M.det() != K.one:
        raise ValueError("element_order requires determinant 1")
    ident = Matrix.identity(K, 2)
    if M == ident:
        return FiniteOrder(1)
    if M == -ident:
        return FiniteOrder(2)
    t = M.trace()
    two = K(2)
    if t == two or t == -two:
        return InfiniteOrder("parabolic noncentral")
    d = minimal_polynomial(t).degree()
    n = _eigenvalue_power_order(t, d)
    if n is None:
        return InfiniteOrder("eigenvalue not a root of unity")
    return FiniteOrder(n)


def _projective_order(M: Matrix):
    """Order of the image of M in PGL2 (smallest n with M^n scalar)."""
    K = M.ring
    if M.rows[0][1] == K.zero and M.rows[1][0] == K.zero \
            and M.rows[0][0] == M.rows[1][1]:
        return FiniteOrder(1)
    det = M.det()
    if not det:
        raise ValueError("projective order of a singular matrix")
    t = M.trace()
    s = t * t / det - K(2)
    if s == K(2):
        return InfiniteOrder("parabolic noncentral")
    if s == K(-2):
        return FiniteOrder(2)
    d = minimal_polynomial(s).degree()
    n = _eigenvalue_power_order(s, d)
    if n is None:
        return InfiniteOrder("eigenvalue ratio not a root of unity")
    return FiniteOrder(n)


def _gl2_element_order(M: Matrix, det_order: int):
    """Order in GL2 when det(M) has finite order: ord(M) = det_order * m
    where m is the SL2-order of M^det_order."""
    N = M ** det_order
    res = element_order(N)
    if isinstance(res, FiniteOrder):
        return FiniteOrder(det_order * res.n)
    return res


# ---------------------------------------------------------------------------
# obstruction checks


@dataclass(frozen=True)
class NonarchReport:
    passed: bool
    witness: Word | None
    witness_trace_min_poly: object | None


def nonarch_check(rho: Representation, words) -> NonarchReport:
    """Every listed trace must be an algebraic integer."""
    for w in words:
        t = rho.evaluate(w).trace()
        if not is_algebraic_integer(t):
            return NonarchReport(False, reduce_word(w), minimal_polynomial(t))
    return NonarchReport(True, None, None)


@dataclass(frozen=True)
class ArchReport:
    passed: bool
    witness: Word | None
    witness_embedding: int | None
    enclosures: dict


def arch_check(rho: Representation, words, tolerance=Fraction(1, 1024)) -> ArchReport:
    """Every embedding of every listed trace must land in [-2, 2].

    The pass/fail decision is exact: all conjugates of tr are real and in
    [-2, 2] iff the squarefree part of its minimal polynomial has as many
    roots in [-2, 2] as its degree (a Sturm count).  Certified interval
    enclosures at the requested tolerance are returned for reporting, and
    localize a witness embedding on failure.
    """
    tol = Fraction(tolerance)
    enclosures = {}
    failure = None
    for w in words:
        w = reduce_word(w)
        t = rho.evaluate(w).trace()
        mp = squarefree_part(minimal_polynomial(t))
        ok = count_real_roots_closed(mp, Fraction(-2), Fraction(2)) == mp.degree()
        intervals = embedding_absolute_values(t, tol)
        enclosures[w.to_str()] = intervals
        if not ok and failure is None:
            emb_idx = _locate_arch_witness(t, tol)
            failure = (w, emb_idx)
    if failure is not None:
        return ArchReport(False, failure[0], failure[1], enclosures)
    return ArchReport(True, None, None, enclosures)


def _locate_arch_witness(t: NumberFieldElement, tol: Fraction) -> int | None:
    """Index of an embedding provably sending t outside [-2, 2]."""
    from .intervals import eval_poly_box, refine_box, RatInterval
    from .poly import refine_real_root

    K = t.field
    f = K.min_poly
    coeffs = [Fraction(c) for c in t.coords]
    reals, boxes = K.root_enclosures()
    idx = 0
    for iv in reals:
        lo, hi = iv.lo, iv.hi
        for _ in range(80):
            val = _horner_interval(coeffs, RatInterval(lo, hi))
            if val.lo > 2 or val.hi < -2:
                return idx
            if val.hi <= 2 and val.lo >= -2:
                break
            if lo == hi:
                break
            lo, hi = refine_real_root(f, lo, hi, (hi - lo) / 4)
        idx += 1
    for box in boxes:
        current = box
        for _ in range(80):
            val = eval_poly_box(coeffs, current)
            if val.im.lo > 0 or val.im.hi < 0 \
                    or val.re.lo > 2 or val.re.hi < -2:
                return idx
            if val.im.lo == val.im.hi == 0 and val.re.lo >= -2 and val.re.hi <= 2:
                break
            current = refine_box(f, current, current.width() / 4)
        idx += 2
    return None


def _horner_interval(coeffs, x):
    from .intervals import RatInterval

    acc = RatInterval.point(0)
    for c in reversed(coeffs):
        acc = acc * x + RatInterval.point(c)
    return acc


# ---------------------------------------------------------------------------
# finiteness certification


@dataclass(frozen=True)
class Finite:
    order: int


@dataclass(frozen=True)
class Obstructed:
    witness: str
    reason: str


@dataclass(frozen=True)
class Inconclusive:
    reason: str


@dataclass(frozen=True)
class FinitenessCertificate:
    verdict: object
    element_count: int
    max_order_seen: int
    nonarch_passed: bool | None
    arch_passed: bool | None
    det_orders: dict | None


def _matrix_key(M: Matrix):
    return tuple(e.coords for row in M.rows for e in row)


def _matrix_key_projective(M: Matrix):
    k1 = _matrix_key(M)
    k2 = _matrix_key(-M)
    return min(k1, k2)


def certify_finiteness(rho: Representation, max_elements: int = 10000,
                       max_order: int = 10000,
                       tolerance=Fraction(1, 1024),
                       projective: bool = False) -> FinitenessCertificate:
    """Decide finiteness of the matrix image by exact closure.

    Trace obstructions (non-integral trace, an embedding outside [-2, 2])
    on the simple-loop products short-circuit to Obstructed.  Otherwise a
    breadth-first closure enumerates the image with canonical exact
    hashing; every new element's order is tested, with infinite order again
    giving Obstructed.  Caps turn into Inconclusive, never into a Finite
    verdict.  A Finite verdict rests solely on the enumerated closure; the
    archimedean pass is recorded as supporting evidence.

    In projective mode matrices are identified up to sign and the count is
    the image's order in PSL2/PGL2.
    """
    K = rho.field
    det_orders = None
    gl2 = rho.target == "GL2"
    nonarch_passed = None
    arch_passed = None

    if gl2:
        det_orders = {}
        for name in rho.presentation.generator_names():
            det = rho.gens[name].det()
            det_orders[name] = is_root_of_unity(det)
        if any(v is None for v in det_orders.values()) and not projective:
            return FinitenessCertificate(
                Obstructed(
                    next(n for n, v in det_orders.items() if v is None),
                    "determinant is not a root of unity"),
                0, 0, None, None, det_orders)
    else:
        loops = simple_loop_products(rho.presentation)
        na = nonarch_check(rho, loops)
        nonarch_passed = na.passed
        if not na.passed:
            return FinitenessCertificate(
                Obstructed(na.witness.to_str(), "trace is not an algebraic integer"),
                0, 0, False, None, None)
        ar = arch_check(rho, loops, tolerance)
        arch_passed = ar.passed
        if not ar.passed:
            return FinitenessCertificate(
                Obstructed(ar.witness.to_str(),
                           "an embedding sends a trace outside [-2, 2]"),
                0, 0, True, False, None)

    key_of = _matrix_key_projective if projective else _matrix_key

    def order_of(M):
        if projective:
            return _projective_order(M)
        if gl2:
            dord = is_root_of_unity(M.det()) if M.det() != K.one else 1
            if dord is None:
                return InfiniteOrder("determinant is not a root of unity")
            return _gl2_element_order(M, dord)
        return element_order(M)

    ident = Matrix.identity(K, 2)
    names = rho.bfs_generator_names()
    steps = []
    for name in names:
        steps.append((Word.gen(name), rho.gens[name]))
        steps.append((Word.gen(name, -1), rho._inverse(name)))

    seen = {key_of(ident): Word()}
    frontier = [(ident, Word())]
    max_order_seen = 1
    while frontier:
        new_frontier = []
        for M, w in frontier:
            for step_word, step_mat in steps:
                N = M * step_mat
                key = key_of(N)
                if key in seen:
                    continue
                nw = w * step_word
                res = order_of(N)
                if isinstance(res, InfiniteOrder):
                    return FinitenessCertificate(
                        Obstructed(nw.to_str(), res.reason),
                        len(seen), max_order_seen,
                        nonarch_passed, arch_passed, det_orders)
                if isinstance(res, UndecidedOrder):
                    return FinitenessCertificate(
                        Inconclusive(f"order undecided: {res.reason}"),
                        len(seen), max_order_seen,
                        nonarch_passed, arch_passed, det_orders)
                if res.n > max_order:
                    return FinitenessCertificate(
                        Inconclusive(f"element order {res.n} exceeds cap {max_order}"),
                        len(seen), max_order_seen,
                        nonarch_passed, arch_passed, det_orders)
                max_order_seen = max(max_order_seen, res.n)
                seen[key] = nw
                if len(seen) > max_elements:
                    return FinitenessCertificate(
                        Inconclusive(f"element count exceeds cap {max_elements}"),
                        len(seen), max_order_seen,
                        nonarch_passed, arch_passed, det_orders)
                new_frontier.append((N, nw))
        frontier = new_frontier
    return FinitenessCertificate(
        Finite(len(seen)), len(seen), max_order_seen,
        nonarch_passed, arch_passed, det_orders)
