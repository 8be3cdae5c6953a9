import random
from fractions import Fraction

from pcurvkit import QQ, Polynomial, RatInterval, certified_root_enclosures
from pcurvkit.intervals import BoxC, eval_poly_box, refine_box


def test_interval_arithmetic_endpoints():
    a = RatInterval(Fraction(1), Fraction(2))
    b = RatInterval(Fraction(-1), Fraction(3))
    assert (a + b).lo == 0 and (a + b).hi == 5
    assert (a * b).lo == -2 and (a * b).hi == 6
    assert a.width() == 1
    assert a.mid() == Fraction(3, 2)


def test_interval_contains_sampled_products():
    rng = random.Random(12)
    for _ in range(40):
        lo1 = Fraction(rng.randint(-8, 8)); hi1 = lo1 + rng.randint(0, 4)
        lo2 = Fraction(rng.randint(-8, 8)); hi2 = lo2 + rng.randint(0, 4)
        a = RatInterval(lo1, hi1)
        b = RatInterval(lo2, hi2)
        # endpoint products must land inside the interval product
        prod = a * b
        for u in (lo1, hi1):
            for v in (lo2, hi2):
                assert prod.lo <= u * v <= prod.hi


def test_abs_interval_of_box():
    box = BoxC(RatInterval(Fraction(3), Fraction(3)), RatInterval(Fraction(4), Fraction(4)))
    iv = box.abs_interval(40)
    assert iv.lo <= 5 <= iv.hi
    assert iv.width() < Fraction(1, 2 ** 20)


def test_eval_poly_box_contains_point_value():
    # f(i) for f = x^2 + 1 is 0; the box evaluation must contain 0
    coeffs = [Fraction(1), Fraction(0), Fraction(1)]
    box = BoxC(RatInterval(Fraction(0), Fraction(0)), RatInterval(Fraction(1), Fraction(1)))
    val = eval_poly_box(coeffs, box)
    assert val.re.lo <= 0 <= val.re.hi
    assert val.im.lo <= 0 <= val.im.hi


def test_certified_enclosures_quadratic():
    x = Polynomial.x(QQ)
    reals, boxes = certified_root_enclosures(x ** 2 - 2)
    assert len(reals) == 2 and not boxes
    neg, pos = reals
    assert neg.lo <= Fraction(-141421, 100000) <= neg.hi or neg.hi < 0
    assert pos.lo > 0
    # sqrt(2) to five places
    assert pos.lo <= Fraction(1414214, 1000000)
    assert pos.hi >= Fraction(1414213, 1000000)


def test_certified_enclosures_complex_pair():
    x = Polynomial.x(QQ)
    reals, boxes = certified_root_enclosures(x ** 2 + 1)
    assert not reals
    assert len(boxes) == 1  # upper-half representative of the conjugate pair
    b = boxes[0]
    assert b.re.lo <= 0 <= b.re.hi
    assert b.im.lo <= 1 <= b.im.hi


def test_refine_box_shrinks():
    x = Polynomial.x(QQ)
    f = x ** 2 + 1
    _, boxes = certified_root_enclosures(f)
    b = refine_box(f, boxes[0], Fraction(1, 1024))
    assert b.width() <= Fraction(1, 1024)
    assert b.im.lo <= 1 <= b.im.hi


def test_quartic_with_mixed_roots():
    x = Polynomial.x(QQ)
    f = (x ** 2 - 3) * (x ** 2 + x + 1)
    reals, boxes = certified_root_enclosures(f)
    assert len(reals) == 2
    assert len(boxes) == 1
    assert reals[0].hi < reals[1].lo  # disjoint and ordered
