"""q-adic valuation analysis for companion connections over Laurent-series bases.

Valuations are taken at q = 0.  Rational functions in q get exact orders;
elements of a tower k(q)(x) get the Gauss valuation (minimum coefficient
valuation, x a unit); truncated series report their tracked order or raise
when the window cannot decide.  The Newton polygon of a companion column
turns those orders into eigenvalue valuations, and the nonvanishing
predictor pairs the polygon's verdict with an exact p-curvature oracle run
over GF(p)(q)(x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .fields import GF
from .connection import (
    CompanionConnection,
    Derivation,
    frobenius_twist_multiplier,
    p_curvature,
)
from .laurent import TruncatedLaurentSeries, ValuationUndecided
from .ratfunc import FunctionField, RationalFunction

INF = math.inf


def q_valuation(f):
    """Order of vanishing at q = 0; +inf for zero; negative at poles.

    Accepts rational functions in q, elements of a tower k(q)(x) (Gauss
    valuation), and truncated Laurent series (which may raise
    ValuationUndecided).
    """
    if isinstance(f, TruncatedLaurentSeries):
        return f.valuation()
    if isinstance(f, RationalFunction):
        if isinstance(f.field.base, FunctionField):
            if f.is_zero():
                return INF
            num = min(q_valuation(c) for c in f.num.coeffs if c)
            den = min(q_valuation(c) for c in f.den.coeffs if c)
            return num - den
        if f.is_zero():
            return INF
        return f.num.order_at_zero() - f.den.order_at_zero()
    raise TypeError(f"no q-adic valuation for {type(f).__name__}")


class SeriesDerivation:
    """multiplier(q) times an x-derivation, acting coefficient-wise on
    series whose coefficients live in the x-field."""

    __slots__ = ("multiplier", "inner")

    def __init__(self, multiplier: TruncatedLaurentSeries, inner: Derivation):
        self.multiplier = multiplier
        self.inner = inner

    @classmethod
    def from_q_power(cls, k: int, inner: Derivation, qvar: str = "q"):
        coeff_field = inner.field
        mult = TruncatedLaurentSeries.from_coeff_list(
            coeff_field, qvar, k, [coeff_field.one])
        return cls(mult, inner)

    def __call__(self, s: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
        return self.multiplier * s.map_coefficients(self.inner)

    def __repr__(self):
        return f"({self.multiplier!r})*[{self.inner!r}]"


@dataclass(frozen=True)
class IntegralityReport:
    integral: bool
    witness: object | None
    witness_valuations: tuple | None


def check_nu_integrality(D, samples) -> IntegralityReport:
    """Test nu(D(alpha)) >= nu(alpha) on each sample; first violation wins."""
    for alpha in samples:
        va = q_valuation(alpha)
        vd = q_valuation(D(alpha))
        if vd < va:
            return IntegralityReport(False, alpha, (va, vd))
    return IntegralityReport(True, None, None)


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of (index, valuation) points of a companion column
    together with the point (rank, 0)."""

    vertices: tuple

    def segments(self):
        out = []
        for (x1, y1), (x2, y2) in zip(self.vertices, self.vertices[1:]):
            out.append(((x1, y1), (x2, y2), Fraction(y2 - y1, x2 - x1)))
        return out

    @property
    def min_slope(self):
        """Minimal q-adic valuation among the eigenvalues.

        Eigenvalue valuations are the negatives of the hull's geometric
        slopes, so this is minus the steepest (last) one.  None when every
        column entry vanishes and the polygon degenerates to a point.
        """
        segs = self.segments()
        if not segs:
            return None
        return -segs[-1][2]

    def dominance_bound(self, m: int) -> Fraction:
        """The lower bound s*(r - m) that ties valuations to the min slope."""
        r = self.vertices[-1][0]
        return self.min_slope * (r - m)


def _lower_hull(points):
    points = sorted(points)
    hull = []
    for p in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


@dataclass(frozen=True)
class ValuationProfile:
    valuations: tuple
    min_valuation: object

    @classmethod
    def of(cls, c: CompanionConnection) -> "ValuationProfile":
        vals = tuple(q_valuation(f) for f in c.last_column)
        finite = [v for v in vals if v != INF]
        return cls(vals, min(finite) if finite else INF)


def newton_polygon(c: CompanionConnection) -> NewtonPolygon:
    profile = ValuationProfile.of(c)
    r = c.rank
    points = [(m, v) for m, v in enumerate(profile.valuations) if v != INF]
    points.append((r, 0))
    return NewtonPolygon(tuple(_lower_hull(points)))


@dataclass(frozen=True)
class NonvanishingPrediction:
    predicted: bool
    reason: str
    prime: int
    rank: int
    profile: ValuationProfile


def predict_nonvanishing(c: CompanionConnection, p: int) -> NonvanishingPrediction:
    """Negative q-valuation in the companion column predicts nonzero
    p-curvature, under p > rank, a nu-integral derivation, and a derivation
    fixed by the p-th power map."""
    r = c.rank
    if p <= r:
        raise ValueError(f"prediction requires p > rank, got p={p}, rank={r}")
    D = c.derivation
    if q_valuation(D.u) < 0:
        raise ValueError(
            "derivation is not nu-integral: its multiplier has a q-pole")
    char = D.field.characteristic()
    if char == p:
        v = frobenius_twist_multiplier(D, p)
        if v != D.u:
            raise ValueError(
                "derivation does not satisfy D^p = D over the prime field")
    profile = ValuationProfile.of(c)
    if profile.min_valuation != INF and profile.min_valuation < 0:
        return NonvanishingPrediction(
            True,
            f"entry valuation {profile.min_valuation} is negative",
            p, r, profile)
    return NonvanishingPrediction(
        False, "all entries are q-integral; no claim", p, r, profile)


def verify_prediction(c: CompanionConnection, p: int, precision=None) -> bool:
    """Exact oracle: compute psi_p over GF(p)(q)(x) and report nonvanishing.

    The precision argument is accepted for interface parity and ignored:
    entries are rational in q, so the computation is exact.
    """
    report = p_curvature(c.matrix(), p)
    if not report.good_prime:
        raise ValueError(f"p = {p} is bad for this companion connection")
    return not report.vanishes


def standard_tower(p: int | None, qvar: str = "q", xvar: str = "x"):
    """(base, tower, D) with base = k(q), tower = k(q)(x), D = x*d/dx;
    k is GF(p) when p is given, else the rationals."""
    from .fields import QQ

    base = FunctionField(GF(p) if p is not None else QQ, qvar)
    tower = FunctionField(base, xvar)
    return base, tower, Derivation.x_d_dx(tower)
