import random
from fractions import Fraction as F

import pytest

from rootline.chebyshev import cheb_poly
from rootline.isolation import (
    all_roots_real,
    compare_roots,
    count_distinct_roots_in,
    eval_on_interval,
    isolate_real_roots,
    max_root,
    max_root_geq,
    max_root_leq,
    squarefree_decomposition,
)
from rootline.poly import ExactPolynomial as P


def test_sqrt2_isolation_width():
    roots = isolate_real_roots(P.from_coeffs([-2, 0, 1]), F(1, 1000))
    assert len(roots) == 2
    for r in roots:
        assert r.width <= F(1, 1000)
    # the enclosures contain +-sqrt(2): lo^2 and hi^2 straddle 2
    neg, pos = roots
    assert neg.lo**2 >= 2 >= neg.hi**2
    assert pos.lo**2 <= 2 <= pos.hi**2


def test_double_root_at_zero():
    roots = isolate_real_roots(P.from_coeffs([0, 0, 1]))
    assert len(roots) == 1
    assert roots[0].exact and roots[0].lo == 0 and roots[0].multiplicity == 2


def test_t3_roots():
    roots = isolate_real_roots(P.from_coeffs([0, -3, 0, 4]), F(1, 10**6))
    assert len(roots) == 3
    assert roots[1].exact and roots[1].lo == 0
    # +-sqrt(3)/2 ~ +-0.8660254
    assert abs(float(roots[0]) + 0.8660254) < 1e-6
    assert abs(float(roots[2]) - 0.8660254) < 1e-6


def test_multiplicities():
    p = P.from_roots([1]) ** 2 * P.from_roots([-3]) ** 5 * P.x()
    got = sorted((float(r), r.multiplicity) for r in isolate_real_roots(p))
    assert got == [(-3.0, 5), (0.0, 1), (1.0, 2)]


def test_rational_roots_enclosed():
    want = [F(-7, 5), F(1, 3), F(4)]
    p = P.from_roots(want)
    roots = isolate_real_roots(p, F(1, 2**40))
    assert len(roots) == 3
    for r, value in zip(roots, want):
        assert r.lo <= value <= r.hi
        assert r.width <= F(1, 2**40)


def test_integer_root_grid():
    w = P.from_roots(range(1, 13))
    roots = isolate_real_roots(w, F(1, 2**30))
    assert [float(r) for r in roots] == [float(i) for i in range(1, 13)]
    assert all(r.multiplicity == 1 for r in roots)


def test_count_equals_degree_iff_real_rooted():
    assert all_roots_real(P.from_roots([0, 1, 1, 2]))
    assert not all_roots_real(P.from_coeffs([1, 0, 1]))
    assert isolate_real_roots(P.from_coeffs([1, 0, 1])) == []


def test_product_of_real_rooted_factors_counts():
    p = P.from_coeffs([-2, 0, 1]) * P.from_roots([F(1, 2)]) ** 3
    roots = isolate_real_roots(p)
    assert sum(r.multiplicity for r in roots) == p.degree


def test_max_root_and_thresholds():
    w = P.from_roots(range(1, 13))
    assert float(max_root(w)) == 12.0
    assert max_root_leq(w, F(12))
    assert not max_root_leq(w, F(119, 10))
    assert max_root_geq(w, F(12))
    assert not max_root_geq(w, F(121, 10))


def test_count_distinct_in_interval():
    w = P.from_roots(range(1, 13))
    assert count_distinct_roots_in(w, F(5, 2), F(7)) == 5
    assert count_distinct_roots_in(w, F(3), F(7)) == 5
    assert count_distinct_roots_in(w, F(3), F(7), closed=False) == 3


def test_compare_roots_equality_via_gcd():
    a = P.from_coeffs([-2, 0, 1]) * P.from_roots([5])
    b = P.from_coeffs([-2, 0, 1]) * P.from_roots([7])
    ra = [r for r in isolate_real_roots(a) if not r.exact and r.lo > 0][0]
    rb = [r for r in isolate_real_roots(b) if not r.exact and r.lo > 0 and r.hi < 2][0]
    assert compare_roots(ra, rb) == 0


def test_compare_roots_close_values():
    p = P.from_coeffs([-2, 0, 1]) * P.from_roots([F(1415, 1000)])
    roots = isolate_real_roots(p, F(1, 10**9))
    vals = sorted(float(r) for r in roots)
    assert vals[1] < vals[2]
    assert compare_roots(roots[1], roots[2]) == -1


def test_squarefree_decomposition_structure():
    p = P.from_roots([F(1, 3)]) ** 2 * P.from_coeffs([-2, 0, 1])
    decomp = squarefree_decomposition(p)
    assert sorted((len(f) - 1, m) for f, m in decomp) == [(1, 2), (2, 1)]


def test_random_rational_root_recovery():
    rng = random.Random(5)
    for _ in range(10):
        roots = sorted(F(rng.randint(-20, 20), rng.choice([1, 2, 4]))
                       for _ in range(rng.randint(1, 5)))
        p = P.from_roots(roots)
        found = isolate_real_roots(p, F(1, 2**40))
        expanded = []
        for r in found:
            expanded.extend([r] * r.multiplicity)
        assert len(expanded) == len(roots)
        for want, got in zip(roots, expanded):
            assert got.lo <= want <= got.hi


def test_high_degree_chebyshev_pair_roots():
    p = cheb_poly(64).compose(P.from_coeffs([-1, 1])) + P.one()
    roots = isolate_real_roots(p, F(1, 2**40))
    assert sum(r.multiplicity for r in roots) == 64
    assert all(r.multiplicity == 2 for r in roots)
    assert abs(float(max_root(p)) - 1.9987954562) < 1e-9


def test_eval_on_interval_contains_range():
    p = P.from_coeffs([1, -3, 2])
    lo, hi = eval_on_interval(p, F(0), F(1))
    for x in (F(0), F(1, 4), F(1, 2), F(1)):
        assert lo <= p(x) <= hi


def test_zero_polynomial_rejected():
    with pytest.raises(ValueError):
        isolate_real_roots(P.zero())
