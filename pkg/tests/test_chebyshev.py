import random
from fractions import Fraction as F

import pytest

from rootline.chebyshev import (
    cheb_eval,
    cheb_growth_lower_bound,
    cheb_poly,
    cheb_shifted_roots,
)
from rootline.graphs import Signing, cycle_graph, signed_adjacency
from rootline.isolation import eval_on_interval
from rootline.poly import ExactPolynomial as P, char_poly, poly_compose


def test_first_polynomials():
    assert cheb_poly(0) == P.one()
    assert cheb_poly(1) == P.x()
    assert cheb_poly(2) == P.from_coeffs([-1, 0, 2])
    assert cheb_poly(3) == P.from_coeffs([0, -3, 0, 4])


def test_degree_and_leading():
    for k in range(1, 20):
        t = cheb_poly(k)
        assert t.degree == k
        assert t.leading == 2 ** (k - 1)


def test_eval_matches_coefficients():
    rng = random.Random(3)
    for k in (0, 1, 2, 5, 11, 32):
        poly = cheb_poly(k)
        for _ in range(5):
            x = F(rng.randint(-40, 40), rng.choice([1, 2, 8, 16]))
            assert cheb_eval(k, x) == poly(x)


def test_eval_examples():
    for k in range(10):
        assert cheb_eval(k, 1) == 1
    assert cheb_eval(4, 0) == 1
    assert cheb_eval(2, 0) == -1
    assert cheb_eval(2, F(3, 2)) == F(7, 2)
    assert cheb_eval(4, 2) == 97


def test_boundedness_on_unit_interval():
    rng = random.Random(9)
    for _ in range(200):
        x = F(rng.randint(-64, 64), 64)
        k = rng.randint(0, 64)
        assert -1 <= cheb_eval(k, x) <= 1


def test_monotone_growth_right_of_one():
    for k in (1, 3, 8, 20):
        values = [cheb_eval(k, 1 + F(i, 7)) for i in range(8)]
        assert all(a < b for a, b in zip(values, values[1:]) if k >= 1)


def test_composition_law():
    for a in range(1, 9):
        for b in range(1, 9):
            if a * b > 24:
                continue
            assert poly_compose(cheb_poly(a), cheb_poly(b)) == cheb_poly(a * b)


@pytest.mark.parametrize("k", range(1, 17))
def test_double_angle_identity(k):
    two_tk2 = cheb_poly(k) * cheb_poly(k) * 2
    assert two_tk2 - P.one() == cheb_poly(2 * k)


def test_shifted_roots_examples():
    # n=1, theta=0: root of T_1 - 1 is 1
    (lo, hi), = cheb_shifted_roots(1, 0)
    assert lo <= 1 <= hi
    # n=2, theta=pi: 2x^2 - 1 + 1 = 2x^2, double root at 0
    roots = cheb_shifted_roots(2, 1)
    for lo, hi in roots:
        assert lo <= 0 <= hi
    # n=3, theta=0: {1, -1/2, -1/2}
    roots = cheb_shifted_roots(3, 0)
    vals = sorted((lo + hi) / 2 for lo, hi in roots)
    assert abs(float(vals[0]) + 0.5) < 1e-20
    assert abs(float(vals[2]) - 1.0) < 1e-20


def test_shifted_roots_annihilate_polynomial():
    # substituting the certified enclosures into T_n - cos(theta pi) gives
    # an interval containing 0
    from rootline.ratutil import cos_pi_bounds

    for n, theta in ((4, F(1, 3)), (5, F(1, 2)), (7, F(2, 7))):
        poly = cheb_poly(n)
        cos_lo, cos_hi = cos_pi_bounds(theta)
        for lo, hi in cheb_shifted_roots(n, theta):
            v_lo, v_hi = eval_on_interval(poly, lo, hi)
            assert v_lo - cos_hi <= 0 <= v_hi - cos_lo


def test_growth_lower_bound_sandwich():
    assert cheb_growth_lower_bound(5, 0) == F(1, 2)
    assert cheb_growth_lower_bound(1, 2) == F(3, 2)
    assert cheb_growth_lower_bound(3, F(1, 2)) == 4
    rng = random.Random(12)
    for _ in range(25):
        k = rng.randint(0, 24)
        x = F(rng.randint(0, 32), rng.choice([1, 2, 4]))
        v = cheb_growth_lower_bound(k, x)
        assert v <= cheb_eval(k, 1 + x)


def test_cycle_determinant_identity():
    # det(2xI - A_n) for the n-cycle equals 2 T_n(x) - 2 exactly
    # (the classical identity as printed omits the additive constant)
    for n in range(3, 9):
        g = cycle_graph(n)
        A = signed_adjacency(g, Signing.all_plus(g))
        chi = char_poly(A)  # det(xI - A)
        # det(2xI - A) = 2^n chi(. evaluated at 2x .): substitute x -> 2x
        det2x = chi.compose(P.from_coeffs([0, 2]))
        want = cheb_poly(n) * 2 - P.from_coeffs([2])
        assert det2x == want
