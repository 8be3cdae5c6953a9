"""Dense univariate polynomials over an exact field.

Coefficients live in any field object from ``fields`` (or a NumberField);
they are stored ascending with no trailing zeros.  The module also carries
the integer-polynomial machinery needed to certify irreducibility over the
rationals: rational root test, modular irreducibility certificates, and a
bounded Zassenhaus search (squarefree factor lists mod p, Hensel lifting,
subset recombination) for degrees up to 8.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from .fields import QQ, PrimeField, is_prime


class Polynomial:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        cs = [c if not isinstance(c, (int, Fraction, str)) else field(c) for c in coeffs]
        while cs and not _nonzero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (field.one,))

    @classmethod
    def x(cls, field):
        return cls(field, (field.zero, field.one))

    @classmethod
    def constant(cls, field, c):
        return cls(field, (field(c),))

    # -- structure ---------------------------------------------------------

    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == self.field.one

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def order_at_zero(self) -> int:
        """Index of the first nonzero coefficient; -1 for the zero polynomial."""
        for i, c in enumerate(self.coeffs):
            if _nonzero(c):
                return i
        return -1

    # -- arithmetic ---------------------------------------------------------

    def _wrap(self, other):
        if isinstance(other, Polynomial):
            return other
        try:
            return Polynomial(self.field, (self.field(other),))
        except (TypeError, ValueError):
            return None

    def __add__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Polynomial(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return Polynomial.zero(self.field)
        out = [self.field.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not _nonzero(ai):
                continue
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
        return Polynomial(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        o = self._wrap(other)
        if o is None or o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(o.coeffs)
        if dq < 0:
            return Polynomial.zero(self.field), self
        quot = [self.field.zero] * (dq + 1)
        inv_lead = self.field.one / o.leading()
        for k in range(dq, -1, -1):
            top = rem[k + o.degree()]
            if _nonzero(top):
                q = top * inv_lead
                quot[k] = q
                for j, c in enumerate(o.coeffs):
                    rem[k + j] = rem[k + j] - q * c
        return Polynomial(self.field, quot), Polynomial(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: "Polynomial") -> bool:
        return (other % self).is_zero()

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        inv = self.field.one / self.leading()
        return Polynomial(self.field, [c * inv for c in self.coeffs])

    def derivative(self) -> "Polynomial":
        return Polynomial(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def map_coefficients(self, fn, new_field) -> "Polynomial":
        return Polynomial(new_field, [fn(c) for c in self.coeffs])

    def __call__(self, x):
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        return self.field.zero if acc is None else acc

    # -- comparison / display ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field == other.field and self.coeffs == other.coeffs
        o = self._wrap(other)
        return NotImplemented if o is None else self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def to_str(self, var: str = "x") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree(), -1, -1):
            c = self.coeff(i)
            if not _nonzero(c):
                continue
            cs = _coeff_str(c)
            if i == 0:
                parts.append(cs)
            elif i == 1:
                parts.append(f"{var}" if cs == "1" else f"{cs}*{var}")
            else:
                parts.append(f"{var}^{i}" if cs == "1" else f"{cs}*{var}^{i}")
        return " + ".join(parts)

    def __repr__(self):
        return self.to_str()


def _nonzero(c) -> bool:
    return bool(c != 0) if isinstance(c, (int, Fraction)) else bool(c)


def _coeff_str(c) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return str(c)


class PolynomialRing:
    """Ring object so matrices can carry polynomial entries (no division)."""

    def __init__(self, field, var: str = "x"):
        self.field = field
        self.var = var

    @property
    def zero(self):
        return Polynomial.zero(self.field)

    @property
    def one(self):
        return Polynomial.one(self.field)

    def gen(self):
        return Polynomial.x(self.field)

    def __call__(self, a):
        if isinstance(a, Polynomial):
            if a.field != self.field:
                raise ValueError("foreign coefficient field")
            return a
        return Polynomial.constant(self.field, a)

    def characteristic(self):
        return self.field.characteristic()

    def __eq__(self, other):
        return (
            isinstance(other, PolynomialRing)
            and other.field == self.field
            and other.var == self.var
        )

    def __hash__(self):
        return hash(("polyring", self.field, self.var))

    def __repr__(self):
        return f"{self.field}[{self.var}]"


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd by the Euclidean algorithm; exact over any field.

    Remainders are renormalized to monic every step, which keeps rational
    coefficients from snowballing on desk-scale inputs.
    """
    if a.field != b.field:
        raise ValueError("mixed coefficient fields")
    while not b.is_zero():
        r = a % b
        a, b = b, (r.monic() if not r.is_zero() else r)
    return a.monic()


def poly_xgcd(a: Polynomial, b: Polynomial):
    """Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic."""
    field = a.field
    r0, r1 = a, b
    s0, s1 = Polynomial.one(field), Polynomial.zero(field)
    t0, t1 = Polynomial.zero(field), Polynomial.one(field)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = field.one / r0.leading()
    scale = Polynomial.constant(field, inv)
    return r0.monic(), s0 * scale, t0 * scale


# ---------------------------------------------------------------------------
# real-root counting (Sturm chains) over QQ
# ---------------------------------------------------------------------------


def squarefree_part(f: Polynomial) -> Polynomial:
    if f.field != QQ:
        raise ValueError("squarefree_part expects rational coefficients")
    if f.degree() <= 0:
        return f.monic() if not f.is_zero() else f
    g = poly_gcd(f, f.derivative())
    return (f // g).monic()


def sturm_chain(g: Polynomial) -> list[Polynomial]:
    chain = [g, g.derivative()]
    while not chain[-1].is_zero():
        chain.append(-(chain[-2] % chain[-1]))
    chain.pop()
    return chain


def _variations(values) -> int:
    signs = [(-1 if v < 0 else 1) for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _variations_at(chain, x: Fraction) -> int:
    return _variations([p(x) for p in chain])


def count_real_roots_closed(f: Polynomial, a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots of f in the closed interval [a, b]."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    g = squarefree_part(f)
    extra = 0
    for endpoint in (a, b):
        if g.degree() >= 1 and g(endpoint) == 0:
            g = (g // Polynomial(QQ, [-endpoint, Fraction(1)])).monic()
            extra += 1
    if g.degree() < 1:
        return extra
    chain = sturm_chain(g)
    return _variations_at(chain, a) - _variations_at(chain, b) + extra


def all_roots_in_closed(f: Polynomial, a: Fraction, b: Fraction) -> bool:
    """True iff every complex root of f is real and lies in [a, b]."""
    g = squarefree_part(f)
    if g.degree() < 1:
        return True
    return count_real_roots_closed(g, a, b) == g.degree()


def cauchy_bound(f: Polynomial) -> Fraction:
    """Strict bound M with every root magnitude < M."""
    lead = f.leading()
    return Fraction(1) + max(abs(c / lead) for c in f.coeffs)


def rational_roots(f: Polynomial) -> list[Fraction]:
    """All rational roots of f (f over QQ), each listed once."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    zf = _int_primitive(f)
    while zf[0] == 0:
        zf = zf[1:]
    roots = []
    if len(zf) < len(_int_primitive(f)):
        roots.append(Fraction(0))
    a0, ad = abs(zf[0]), abs(zf[-1])
    for p in _divisors(a0):
        for q in _divisors(ad):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand not in roots and f(cand) == 0:
                    roots.append(cand)
    return sorted(roots)


def isolate_real_roots(f: Polynomial) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational intervals, one per distinct real root of f.

    Rational roots come back as degenerate [r, r] points; the rest are
    open-interval enclosures found by Sturm bisection, so every returned
    interval isolates exactly one real root.
    """
    g = squarefree_part(f)
    if g.degree() < 1:
        return []
    points = []
    for r in rational_roots(g):
        points.append((r, r))
        g = (g // Polynomial(QQ, [-r, Fraction(1)])).monic()
    out = list(points)
    if g.degree() >= 1:
        chain = sturm_chain(g)
        bound = cauchy_bound(g)
        stack = [(-bound, bound, _variations_at(chain, -bound) - _variations_at(chain, bound))]
        while stack:
            lo, hi, n = stack.pop()
            if n == 0:
                continue
            if n == 1:
                out.append((lo, hi))
                continue
            mid = (lo + hi) / 2
            vm = _variations_at(chain, mid)
            nlo = _variations_at(chain, lo) - vm
            stack.append((lo, mid, nlo))
            stack.append((mid, hi, n - nlo))
    return sorted(out, key=lambda iv: iv[0] + iv[1])


def refine_real_root(g: Polynomial, lo: Fraction, hi: Fraction, width: Fraction):
    """Shrink an isolating interval by bisection until hi - lo <= width."""
    if lo == hi:
        return lo, hi
    slo = 1 if g(lo) > 0 else -1
    while hi - lo > width:
        mid = (lo + hi) / 2
        vm = g(mid)
        if vm == 0:
            # landed exactly on the root (possible for non-dyadic inputs)
            return mid, mid
        if (1 if vm > 0 else -1) == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        return [1]
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


# ---------------------------------------------------------------------------
# irreducibility over QQ
# ---------------------------------------------------------------------------


class IrreducibilityUndecided(ValueError):
    """Degree exceeds the bounded factorization fallback."""


def _int_primitive(f: Polynomial) -> list[int]:
    """Scale a rational polynomial to a primitive integer list, lc > 0."""
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in f.coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _has_rational_root(zf: list[int]) -> bool:
    if zf[0] == 0:
        return True
    for p in _divisors(zf[0]):
        for q in _divisors(zf[-1]):
            for num in (p, -p):
                acc = 0
                for c in reversed(zf):
                    acc = acc * Fraction(num, q) + c
                if acc == 0:
                    return True
    return False


def is_irreducible_q(f: Polynomial) -> bool:
    """Exact irreducibility over the rationals.

    Strategy: rational root test (complete through degree 3), then modular
    irreducibility certificates at several small primes, then the bounded
    Zassenhaus search through degree 8.  Degrees above 8 without a modular
    certificate raise IrreducibilityUndecided rather than guess.
    """
    if f.field != QQ:
        raise ValueError("irreducibility test expects rational coefficients")
    d = f.degree()
    if d <= 0:
        raise ValueError("constants are neither reducible nor irreducible here")
    if d == 1:
        return True
    zf = _int_primitive(f)
    if _has_rational_root(zf):
        return False
    if d <= 3:
        return True
    if poly_gcd(f, f.derivative()).degree() > 0:
        return False
    p = 3
    tried = 0
    while tried < 10 and p < 200:
        if zf[-1] % p != 0:
            fp = [c % p for c in zf]
            if _zp_is_squarefree(fp, p):
                tried += 1
                if _zp_is_irreducible(fp, p):
                    return True
        p = _next_prime(p)
    if d > 8:
        raise IrreducibilityUndecided(
            f"degree {d} exceeds the bounded factorization fallback"
        )
    return _zassenhaus_irreducible(zf)


def _next_prime(p: int) -> int:
    p += 2
    while not is_prime(p):
        p += 2
    return p


# -- arithmetic on dense integer lists mod p --------------------------------


def _zp_norm(a, p):
    a = [c % p for c in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def _zp_add(a, b, p):
    out = list(a) + [0] * (len(b) - len(a)) if len(a) < len(b) else list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _zp_norm(out, p)


def _zp_sub(a, b, p):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return _zp_norm(out, p)


def _zp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _zp_norm(out, p)


def _zp_divmod(a, b, p):
    a = _zp_norm(a, p)
    b = _zp_norm(b, p)
    if not b:
        raise ZeroDivisionError
    inv = pow(b[-1], -1, p)
    rem = list(a)
    if len(rem) < len(b):
        return [], rem
    quot = [0] * (len(rem) - len(b) + 1)
    for k in range(len(quot) - 1, -1, -1):
        top = rem[k + len(b) - 1] % p
        if top:
            q = top * inv % p
            quot[k] = q
            for j, c in enumerate(b):
                rem[k + j] -= q * c
    return _zp_norm(quot, p), _zp_norm(rem, p)


def _zp_gcd(a, b, p):
    a, b = _zp_norm(a, p), _zp_norm(b, p)
    while b:
        a, b = b, _zp_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = _zp_norm([c * inv for c in a], p)
    return a


def _zp_powmod(base, e, mod, p):
    result = [1]
    base = _zp_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _zp_divmod(_zp_mul(result, base, p), mod, p)[1]
        base = _zp_divmod(_zp_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def _zp_is_squarefree(f, p):
    f = _zp_norm(f, p)
    deriv = _zp_norm([c * i for i, c in enumerate(f)][1:], p)
    if not deriv:
        return False
    return len(_zp_gcd(f, deriv, p)) == 1


def _zp_is_irreducible(f, p):
    f = _zp_norm(f, p)
    d = len(f) - 1
    if d <= 0:
        return False
    if d == 1:
        return True
    x = [0, 1]
    # x^(p^d) must reduce to x, and x^(p^(d/l)) - x must be coprime to f
    # for every prime l dividing d
    xq = _zp_powmod(x, p ** d, f, p)
    if _zp_norm(_zp_sub(xq, x, p), p):
        return False
    for l in set(_prime_factors(d)):
        xe = _zp_powmod(x, p ** (d // l), f, p)
        if len(_zp_gcd(_zp_sub(xe, x, p), f, p)) != 1:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _zp_factor(f, p, rng: random.Random):
    """Monic irreducible factors of a monic squarefree f mod p (p odd)."""
    out = []
    g = _zp_norm(f, p)
    k = 0
    xq = [0, 1]
    while len(g) - 1 >= 2 * (k + 1):
        k += 1
        xq = _zp_powmod(xq, p, g, p)
        h = _zp_gcd(_zp_sub(xq, [0, 1], p), g, p)
        if len(h) > 1:
            out.extend(_zp_split_equal_degree(h, k, p, rng))
            g = _zp_divmod(g, h, p)[0]
            xq = _zp_divmod(xq, g, p)[1] if len(g) > 1 else [0]
    if len(g) > 1:
        out.append(g)
    return out


def _zp_split_equal_degree(h, k, p, rng: random.Random):
    if len(h) - 1 == k:
        return [h]
    e = (p ** k - 1) // 2
    while True:
        a = [rng.randrange(p) for _ in range(len(h) - 1)]
        a = _zp_norm(a, p)
        if len(a) < 1:
            continue
        d0 = _zp_gcd(a, h, p)
        if 1 < len(d0) < len(h):
            cof = _zp_divmod(h, d0, p)[0]
            return _zp_split_equal_degree(d0, k, p, rng) + _zp_split_equal_degree(cof, k, p, rng)
        b = _zp_sub(_zp_powmod(a, e, h, p), [1], p)
        d1 = _zp_gcd(b, h, p)
        if 1 < len(d1) < len(h):
            cof = _zp_divmod(h, d1, p)[0]
            return _zp_split_equal_degree(d1, k, p, rng) + _zp_split_equal_degree(cof, k, p, rng)


# -- Hensel lifting and recombination ---------------------------------------


def _hensel_pair(F, G, H, p, pk):
    """Lift F = G*H from mod p to mod pk = p^K (all monic, coprime mod p)."""
    g1, s, t = _zp_xgcd(G, H, p)
    assert len(g1) == 1
    modulus = p
    G = list(G)
    H = list(H)
    while modulus < pk:
        step = modulus * p
        prod = _int_poly_mul(G, H)
        E = [((fc - pc) // modulus) % p for fc, pc in _zip_pad(F, prod)]
        E = _zp_norm(E, p)
        q, dh = _zp_divmod(_zp_mul(s, E, p), H, p)
        dg = _zp_divmod(_zp_add(_zp_mul(t, E, p), _zp_mul(q, G, p), p), G, p)[1]
        G = [(a + modulus * b) % step for a, b in _zip_pad(G, dg)]
        H = [(a + modulus * b) % step for a, b in _zip_pad(H, dh)]
        modulus = step
    return G, H


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return zip(list(a) + [0] * (n - len(a)), list(b) + [0] * (n - len(b)))


def _int_poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _zp_xgcd(a, b, p):
    r0, r1 = _zp_norm(a, p), _zp_norm(b, p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _zp_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _zp_sub(s0, _zp_mul(q, s1, p), p)
        t0, t1 = t1, _zp_sub(t0, _zp_mul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    return (
        _zp_norm([c * inv for c in r0], p),
        _zp_norm([c * inv for c in s0], p),
        _zp_norm([c * inv for c in t0], p),
    )


def _hensel_tree(F, factors, p, pk):
    """Lift a list of pairwise-coprime monic factors of monic F to mod pk."""
    if len(factors) == 1:
        return [[c % pk for c in F]]
    half = len(factors) // 2
    left, right = factors[:half], factors[half:]
    G1 = [1]
    for f in left:
        G1 = _zp_mul(G1, f, p)
    H1 = [1]
    for f in right:
        H1 = _zp_mul(H1, f, p)
    G, H = _hensel_pair(F, G1, H1, p, pk)
    return _hensel_tree(G, left, p, pk) + _hensel_tree(H, right, p, pk)


def _zassenhaus_irreducible(zf: list[int]) -> bool:
    d = len(zf) - 1
    lc = zf[-1]
    p = 3
    while True:
        if lc % p != 0 and _zp_is_squarefree([c % p for c in zf], p):
            break
        p = _next_prime(p)
        if p > 10000:  # disc has finitely many prime factors; unreachable
            raise IrreducibilityUndecided("no usable prime found")
    rng = random.Random(0x5EED)
    factors = _zp_factor(
        _zp_norm([c * pow(lc % p, -1, p) for c in zf], p), p, rng
    )
    if len(factors) == 1:
        return True
    norm2 = math.isqrt(sum(c * c for c in zf)) + 1
    bound = 2 * (2 ** d) * norm2 * abs(lc)
    pk = p
    while pk <= 2 * bound:
        pk *= p
    lc_inv = pow(lc % pk, -1, pk)
    F = [c * lc_inv % pk for c in zf]
    lifted = _hensel_tree(F, factors, p, pk)
    fq = Polynomial(QQ, [Fraction(c) for c in zf])
    for size in range(1, len(lifted) // 2 + 1):
        for subset in itertools.combinations(range(len(lifted)), size):
            g = [lc % pk]
            for i in subset:
                g = [c % pk for c in _int_poly_mul(g, lifted[i])]
            g = [c - pk if c > pk // 2 else c for c in g]
            while g and g[-1] == 0:
                g.pop()
            if len(g) <= 1:
                continue
            cont = 0
            for c in g:
                cont = math.gcd(cont, c)
            g = [c // cont for c in g]
            gq = Polynomial(QQ, [Fraction(c) for c in g])
            if (fq % gq).is_zero():
                return False
    return True
