import math
from fractions import Fraction as F

import pytest

from rootline.ratutil import (
    cos_pi_bounds,
    decimal_render,
    dyadic_ceil,
    dyadic_floor,
    exp_bounds,
    format_rational,
    iroot_floor,
    le_ln,
    ln_bounds,
    nth_root_lower,
    nth_root_upper,
    parse_rational,
    sqrt_lower,
    sqrt_upper,
    to_fraction,
)


def test_parse_and_format():
    assert parse_rational("3/4") == F(3, 4)
    assert parse_rational("-5") == F(-5)
    assert format_rational(F(3, 4)) == "3/4"
    assert format_rational(F(5)) == "5/1"
    with pytest.raises(ValueError):
        parse_rational("0.5")


def test_to_fraction_refuses_floats():
    with pytest.raises(TypeError):
        to_fraction(0.5)


def test_decimal_render():
    assert decimal_render(F(0)) == "0"
    assert decimal_render(F(3, 4)) == "0.75"
    assert decimal_render(F(-7, 2)) == "-3.5"
    assert decimal_render(F(1, 3), 5) == "0.33333"


def test_iroot_floor():
    assert iroot_floor(0, 3) == 0
    assert iroot_floor(26, 3) == 2
    assert iroot_floor(27, 3) == 3
    assert iroot_floor(2**100 - 1, 10) == 2**10 - 1
    big = 12345678901234567890
    r = iroot_floor(big, 7)
    assert r**7 <= big < (r + 1) ** 7


def test_nth_root_bounds_direction():
    for x, k in ((F(2), 2), (F(30, 4), 2), (F(100, 7), 5)):
        lo = nth_root_lower(x, k)
        hi = nth_root_upper(x, k)
        assert lo**k <= x <= hi**k
        assert hi <= lo * (1 + F(1, 2**60))


def test_nth_root_exact_on_perfect_powers():
    assert nth_root_lower(F(16), 2) == 4
    assert nth_root_upper(F(16), 2) == 4
    assert nth_root_upper(F(27, 8), 3) == F(3, 2)
    assert sqrt_lower(F(1)) == sqrt_upper(F(1)) == 1


def test_dyadic_rounding():
    for x in (F(7, 3), F(1, 3), F(12345, 991), F(2) ** 70 + F(1, 3)):
        lo = dyadic_floor(x, 64)
        hi = dyadic_ceil(x, 64)
        assert lo <= x <= hi
        assert lo > x * (1 - F(1, 2**62))
        assert hi < x * (1 + F(1, 2**62))
        assert dyadic_floor(-x, 64) == -dyadic_ceil(x, 64)


def test_ln_and_exp_bounds():
    # ln 16 = 2.7725887222397812376... (straddled at 16 digits)
    lo, hi = ln_bounds(F(16))
    assert F(27725887222397812, 10**16) < hi
    assert lo < F(27725887222397813, 10**16)
    assert hi - lo < F(1, 2**60)
    # e = 2.718281828459045235...
    elo, ehi = exp_bounds(F(1))
    assert F(2718281828459045, 10**15) < ehi
    assert elo < F(2718281828459046, 10**15)


def test_cos_pi_bounds_algebraic_points():
    lo, hi = cos_pi_bounds(F(1, 3))
    assert lo <= F(1, 2) <= hi and hi - lo < F(1, 2**80)
    lo, hi = cos_pi_bounds(F(1, 2))
    assert lo <= 0 <= hi
    lo, hi = cos_pi_bounds(F(1))
    assert lo == -1 and hi >= -1
    # period reduction: cos(7 pi) = cos(pi)
    lo7, hi7 = cos_pi_bounds(F(7))
    assert lo7 <= -1 <= hi7 + F(1, 2**70)


def test_le_ln_decides_exactly():
    assert le_ln(F(2), 8)       # ln 8 = 2.079...
    assert not le_ln(F(2), 7)   # ln 7 = 1.945...
    assert le_ln(F(1), 3)
    assert not le_ln(F(1), 2)
    assert le_ln(F(0), 1)
    # a very tight rational just below ln(2): 0.693147180559945 < ln 2
    assert le_ln(F(693147180559945, 10**15), 2)
    assert not le_ln(F(693147180559946, 10**15), 2)


def test_math_agreement_smoke():
    # certified bounds sit around the float values (sanity, not authority)
    for n in (2, 10, 1000):
        lo, hi = ln_bounds(F(n))
        assert float(lo) <= math.log(n) <= float(hi)
