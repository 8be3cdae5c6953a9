"""Fields of rational functions k(x) over an exact base field.

A RationalFunction keeps a coprime numerator/denominator pair with monic
denominator, so equality and the exact zero test are structural.  Function
fields nest: the base field of one FunctionField may itself be another
FunctionField, which is how entries rational in two variables (say q and
x) are represented as elements of k(q)(x).
"""

from __future__ import annotations

from fractions import Fraction

from .fields import GFElement, PrimeField, QQ, ReductionError
from .poly import Polynomial, poly_gcd


class FunctionField:
    """k(var) for a base field k."""

    def __init__(self, base, var: str = "x"):
        self.base = base
        self.var = var

    @property
    def zero(self) -> "RationalFunction":
        return RationalFunction(self, Polynomial.zero(self.base), Polynomial.one(self.base))

    @property
    def one(self) -> "RationalFunction":
        return RationalFunction(self, Polynomial.one(self.base), Polynomial.one(self.base))

    def gen(self) -> "RationalFunction":
        return RationalFunction(self, Polynomial.x(self.base), Polynomial.one(self.base))

    def polynomial(self, coeffs) -> Polynomial:
        return Polynomial(self.base, coeffs)

    def from_poly(self, p: Polynomial) -> "RationalFunction":
        return RationalFunction(self, p, Polynomial.one(self.base))

    def __call__(self, a) -> "RationalFunction":
        if isinstance(a, RationalFunction):
            if a.field == self:
                return a
            # allow lifting an element of the base field tower as a constant
            return RationalFunction(
                self, Polynomial.constant(self.base, self.base(a)), Polynomial.one(self.base)
            )
        if isinstance(a, Polynomial):
            if a.field == self.base:
                return self.from_poly(a)
            raise ValueError("polynomial over a foreign coefficient field")
        return RationalFunction(
            self, Polynomial.constant(self.base, self.base(a)), Polynomial.one(self.base)
        )

    def characteristic(self) -> int:
        return self.base.characteristic()

    def __eq__(self, other):
        return (
            isinstance(other, FunctionField)
            and other.base == self.base
            and other.var == self.var
        )

    def __hash__(self):
        return hash(("ff", self.base, self.var))

    def __repr__(self):
        return f"{self.base}({self.var})"


class RationalFunction:
    __slots__ = ("field", "num", "den")

    def __init__(self, field: FunctionField, num: Polynomial, den: Polynomial, normalize=True):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if normalize:
            if num.is_zero():
                den = Polynomial.one(field.base)
            else:
                g = poly_gcd(num, den)
                if g.degree() > 0:
                    num = num // g
                    den = den // g
                lead_inv = field.base.one / den.leading()
                if den.leading() != field.base.one:
                    num = num * lead_inv
                    den = den * lead_inv
        self.field = field
        self.num = num
        self.den = den

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() == 0

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.coeff(0)

    def is_polynomial(self) -> bool:
        return self.den.degree() == 0

    def as_polynomial(self) -> Polynomial:
        if not self.is_polynomial():
            raise ValueError(f"{self} has a nontrivial denominator")
        return self.num

    # -- arithmetic -----------------------------------------------------------

    def _wrap(self, other):
        if isinstance(other, RationalFunction) and other.field == self.field:
            return other
        if isinstance(other, RationalFunction):
            return None
        try:
            return self.field(other)
        except (TypeError, ValueError):
            return None

    def __add__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return RationalFunction(
            self.field, self.num * o.den + o.num * self.den, self.den * o.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(self.field, -self.num, self.den, normalize=False)

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
        return RationalFunction(self.field, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.field, self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, e: int):
        if e < 0:
            return (self.field.one / self) ** (-e)
        return RationalFunction(self.field, self.num ** e, self.den ** e, normalize=False)

    def derivative(self) -> "RationalFunction":
        """Formal d/dvar by the quotient rule."""
        n, d = self.num, self.den
        return RationalFunction(self.field, n.derivative() * d - n * d.derivative(), d * d)

    def map_coefficients(self, fn, new_field: FunctionField) -> "RationalFunction":
        """Apply fn to every numerator and denominator coefficient.

        Raises ReductionError (via fn) when a coefficient cannot be mapped,
        or when the denominator collapses to zero in the new field.
        """
        num = self.num.map_coefficients(fn, new_field.base)
        den = self.den.map_coefficients(fn, new_field.base)
        if den.is_zero():
            raise ReductionError(f"denominator of {self} vanishes under the map")
        return RationalFunction(new_field, num, den)

    def __call__(self, x):
        num = self.num(x)
        den = self.den(x)
        return num / den

    # -- comparison / display ---------------------------------------------------

    def __eq__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.field, self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    def to_str(self) -> str:
        var = self.field.var
        ns = self.num.to_str(var)
        if self.den.is_one():
            return ns
        ds = self.den.to_str(var)
        return f"({ns})/({ds})"

    def __repr__(self):
        return self.to_str()


def reduce_rational_mod_p(f: RationalFunction, target: FunctionField) -> RationalFunction:
    """Reduce a rational function over QQ(x) modulo p into GF(p)(x).

    Raises ReductionError when p divides a coefficient denominator or the
    reduced denominator polynomial vanishes.
    """
    base = target.base
    if not isinstance(base, PrimeField):
        raise ValueError("target must be a prime-field function field")
    return f.map_coefficients(base, target)
