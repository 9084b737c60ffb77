"""Certified real-root isolation over exact rationals.

The engine is Descartes-rule bisection (Vincent-Collins-Akritas) applied
to the square-free factors produced by Yun's algorithm, entirely in
integer arithmetic:

* a root interval is either an exact rational point or an open dyadic
  interval on which the defining square-free factor changes sign;
* multiplicities come from the square-free decomposition;
* refinement is plain sign bisection, so certified width bounds are a
  loop, not an estimate.

On top of the isolator sit exact decision procedures used by the
certificate machinery: root counting on intervals, "no roots above a
rational threshold", and total-order comparison of two isolated
algebraic numbers (with a gcd fallback to detect equality).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from rootline.poly import ExactPolynomial
from rootline.ratutil import to_fraction

IntPoly = Tuple[int, ...]  # ascending degree, trimmed, nonzero unless empty

DEFAULT_PRECISION = Fraction(1, 2**53)


# ---------------------------------------------------------------------------
# integer polynomial kernel
# ---------------------------------------------------------------------------


def _trim(c: List[int]) -> List[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _content(c: Sequence[int]) -> int:
    g = 0
    for v in c:
        g = math.gcd(g, abs(v))
        if g == 1:
            break
    return g or 1


def _primitive(c: Sequence[int]) -> IntPoly:
    c = _trim(list(c))
    if not c:
        return ()
    g = _content(c)
    if c[-1] < 0:
        g = -g
    return tuple(v // g for v in c)


def int_poly_from_fractions(coeffs: Sequence[Fraction]) -> IntPoly:
    """Clear denominators and strip integer content (sign of lead kept +)."""
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    return _primitive([int(c * lcm) for c in coeffs])


def int_poly_from_exact(p: ExactPolynomial) -> IntPoly:
    return int_poly_from_fractions(p.coeffs)


def _deriv(c: IntPoly) -> IntPoly:
    return tuple(i * c[i] for i in range(1, len(c)))


def _poly_mul_int(a: Sequence[int], b: Sequence[int]) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _pseudo_rem(f: List[int], g: List[int]) -> List[int]:
    """Pseudo-remainder of f by g (g nonzero), all-integer."""
    f = list(f)
    dg = len(g) - 1
    lg = g[-1]
    while len(f) - 1 >= dg and f:
        df = len(f) - 1
        lf = f[-1]
        f = [lg * c for c in f]
        shift = df - dg
        for i, gc in enumerate(g):
            f[i + shift] -= lf * gc
        f = _trim(f)
    return f


def int_poly_gcd(a: Sequence[int], b: Sequence[int]) -> IntPoly:
    """Primitive gcd via the primitive pseudo-remainder sequence."""
    f = list(_primitive(a))
    g = list(_primitive(b))
    if not f:
        return tuple(g)
    if not g:
        return tuple(f)
    while g:
        r = _pseudo_rem(f, g)
        f, g = g, list(_primitive(r))
    return _primitive(f)


def _divide_exact(f: Sequence[int], g: Sequence[int]) -> IntPoly:
    """f // g when g divides f over Q; result re-primitivized."""
    work = [Fraction(c) for c in f]
    dg = len(g) - 1
    lg = Fraction(g[-1])
    if len(work) < len(g):
        return ()
    out: List[Fraction] = []
    for shift in range(len(work) - 1 - dg, -1, -1):
        c = work[shift + dg] / lg
        out.append(c)
        if c:
            for i, gc in enumerate(g):
                work[shift + i] -= c * gc
    out.reverse()
    return int_poly_from_fractions(out)


def sign_at(c: Sequence[int], x: Fraction) -> int:
    """Exact sign of the integer polynomial at a rational point."""
    if not c:
        return 0
    num, den = x.numerator, x.denominator
    acc = 0
    denpow = 1
    for coeff in reversed(c):
        acc = acc * num + coeff * denpow
        denpow *= den
    return (acc > 0) - (acc < 0)


def _variations(c: Sequence[int]) -> int:
    count = 0
    prev = 0
    for v in c:
        if v == 0:
            continue
        s = 1 if v > 0 else -1
        if prev and s != prev:
            count += 1
        prev = s
    return count


def _shift1(c: Sequence[int]) -> List[int]:
    """Taylor shift p(x) -> p(x+1), Ruffini-Horner scheme."""
    c = list(c)
    d = len(c) - 1
    for i in range(d):
        for j in range(d - 1, i - 1, -1):
            c[j] += c[j + 1]
    return c


def _shift_int(c: Sequence[int], t: int) -> List[int]:
    """Taylor shift p(x) -> p(x+t) for integer t."""
    c = list(c)
    d = len(c) - 1
    for i in range(d):
        for j in range(d - 1, i - 1, -1):
            c[j] += t * c[j + 1]
    return c


def _scale_pow2(c: Sequence[int], h: int) -> List[int]:
    """2^(dh) * p(x / 2^h), keeping integer coefficients."""
    d = len(c) - 1
    return [v << (h * (d - i)) for i, v in enumerate(c)]


def _variations01(c: Sequence[int]) -> int:
    """Sign variations bounding the number of roots in the open (0,1)."""
    rev = list(reversed(c))
    return _variations(_shift1(_trim(rev)))


def _deflate_root(c: Sequence[int], num: int, den: int) -> IntPoly:
    """Divide by (den*x - num) given that num/den is a root; exact."""
    return _divide_exact(list(c), [-num, den])


def cauchy_bound_pow2(c: Sequence[int]) -> int:
    """Power-of-two h with all real roots strictly inside (-2^h, 2^h)."""
    lead = abs(c[-1])
    top = max(abs(v) for v in c[:-1]) if len(c) > 1 else 0
    bound = 1 + (top + lead - 1) // lead  # ceil(top/lead) + 1 > cauchy bound
    return max(1, bound).bit_length()


# ---------------------------------------------------------------------------
# Yun square-free decomposition
# ---------------------------------------------------------------------------


def _ftrim(c: List[Fraction]) -> List[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _fderiv(c: Sequence[Fraction]) -> List[Fraction]:
    return [i * c[i] for i in range(1, len(c))]


def _fsub(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, v in enumerate(a):
        out[i] += v
    for i, v in enumerate(b):
        out[i] -= v
    return _ftrim(out)


def _fdiv_exact(f: Sequence[Fraction], g: Sequence[Fraction]) -> List[Fraction]:
    """Exact rational division (g | f); no renormalization of the quotient."""
    work = list(f)
    dg = len(g) - 1
    lg = g[-1]
    if len(work) < len(g):
        return []
    out: List[Fraction] = []
    for shift in range(len(work) - 1 - dg, -1, -1):
        c = work[shift + dg] / lg
        out.append(c)
        if c:
            for i, gc in enumerate(g):
                work[shift + i] -= c * gc
    out.reverse()
    return _ftrim(out)


def squarefree_decomposition(p: ExactPolynomial) -> List[Tuple[IntPoly, int]]:
    """Yun decomposition: [(factor, multiplicity)], factors square-free
    and pairwise coprime; the product of factor^mult is p up to a constant.

    Divisions run over Q with a single consistent scale; only the emitted
    factors are normalized to primitive integer polynomials.
    """
    if p.is_zero:
        raise ValueError("zero polynomial has no square-free decomposition")
    if p.degree < 1:
        return []
    f = [Fraction(c) for c in int_poly_from_exact(p)]
    fp = _fderiv(f)
    g = [Fraction(c) for c in int_poly_gcd(int_poly_from_fractions(f),
                                           int_poly_from_fractions(fp))]
    if len(g) == 1:
        return [(int_poly_from_fractions(f), 1)]
    c = _fdiv_exact(f, g)
    d = _fsub(_fdiv_exact(fp, g), _fderiv(c))
    out: List[Tuple[IntPoly, int]] = []
    i = 1
    while len(c) > 1:
        a = [Fraction(v) for v in int_poly_gcd(int_poly_from_fractions(c),
                                               int_poly_from_fractions(d))]
        if len(a) > 1:
            out.append((int_poly_from_fractions(a), i))
        c = _fdiv_exact(c, a)
        d = _fsub(_fdiv_exact(d, a), _fderiv(c))
        i += 1
    return out


# ---------------------------------------------------------------------------
# VCA isolation on a square-free integer polynomial
# ---------------------------------------------------------------------------


def _isolate01(q: Sequence[int]) -> Tuple[List[Tuple[int, int]], List[Tuple[int, int]]]:
    """Isolate roots of square-free q inside the open unit interval.

    Preconditions: q(0) != 0 and q(1) != 0.
    Returns (open intervals as (c, k) meaning (c/2^k, (c+1)/2^k),
             exact dyadic roots as (num, k) meaning num/2^k).
    """
    intervals: List[Tuple[int, int]] = []
    exact: List[Tuple[int, int]] = []
    stack = [(0, 0, list(q))]
    while stack:
        c, k, poly = stack.pop()
        v = _variations01(poly)
        if v == 0:
            continue
        if v == 1:
            intervals.append((c, k))
            continue
        left = _scale_pow2(poly, 1)
        if sum(left) == 0:  # root exactly at the midpoint (2c+1)/2^(k+1)
            exact.append((2 * c + 1, k + 1))
            left = list(_deflate_root(left, 1, 1))  # left-child coordinate x = 1
        right = _shift1(left)
        stack.append((2 * c, k + 1, left))
        stack.append((2 * c + 1, k + 1, _trim(right)))
    return intervals, exact


def _isolate_squarefree(q: IntPoly) -> List[Tuple[IntPoly, Fraction, Fraction]]:
    """All real roots of square-free q as (defining poly, lo, hi) triples.

    Exact roots have lo == hi.  Exact rational roots discovered during
    subdivision are divided out and the remainder re-isolated, so every
    open interval ends up with endpoints at which its defining
    polynomial is nonzero (a genuine sign-change certificate).
    """
    roots: List[Tuple[IntPoly, Fraction, Fraction]] = []
    work = q
    while True:
        if len(work) <= 1:
            break
        if work[0] == 0:  # simple zero root (q square-free)
            roots.append((work, Fraction(0), Fraction(0)))
            work = _primitive(work[1:])
            continue
        if len(work) == 2:
            r = Fraction(-work[0], work[1])
            roots.append((work, r, r))
            break
        h = cauchy_bound_pow2(work)
        bound = 1 << h
        # map (-2^h, 2^h) onto (0, 1): shift to q(x - 2^h), scale x by 2^(h+1)
        shifted = _shift_int(work, -bound)
        mapped = _trim([v << ((h + 1) * i) for i, v in enumerate(shifted)])
        intervals, exact = _isolate01(mapped)
        width = Fraction(2 * bound)
        if not exact:
            for c, k in intervals:
                lo = -bound + width * Fraction(c, 1 << k)
                hi = -bound + width * Fraction(c + 1, 1 << k)
                roots.append((work, lo, hi))
            break
        # peel the exact rational roots off and isolate the rest afresh
        for num, k in exact:
            x = -bound + width * Fraction(num, 1 << k)
            roots.append((work, x, x))
            work = _deflate_root(work, x.numerator, x.denominator)
    roots.sort(key=lambda t: t[1])
    return roots


# ---------------------------------------------------------------------------
# root intervals
# ---------------------------------------------------------------------------


class RootInterval:
    """One real root: an exact rational or an open sign-change interval.

    ``poly`` is the square-free integer factor that vanishes (exactly once)
    inside the interval; refinement bisects against it.
    """

    __slots__ = ("poly", "lo", "hi", "multiplicity", "_sign_lo")

    def __init__(self, poly: Optional[IntPoly], lo: Fraction, hi: Fraction,
                 multiplicity: int = 1):
        self.poly = poly
        self.lo = lo
        self.hi = hi
        self.multiplicity = multiplicity
        if lo == hi:
            self._sign_lo = 0
        else:
            assert poly is not None
            self._sign_lo = sign_at(poly, lo)
            if self._sign_lo == 0 or self._sign_lo == sign_at(poly, hi):
                raise ValueError("not a sign-change isolating interval")

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def refine_step(self) -> None:
        if self.exact:
            return
        mid = self.midpoint()
        s = sign_at(self.poly, mid)
        if s == 0:
            self.lo = self.hi = mid
            self._sign_lo = 0
        elif s == self._sign_lo:
            self.lo = mid
        else:
            self.hi = mid

    def refine_below(self, width: Fraction) -> "RootInterval":
        while not self.exact and self.width > width:
            self.refine_step()
        return self

    def contains(self, x: Fraction) -> bool:
        if self.exact:
            return self.lo == x
        return self.lo < x < self.hi

    def __float__(self) -> float:
        return float(self.midpoint())

    def __repr__(self) -> str:
        if self.exact:
            return f"RootInterval({self.lo}, mult={self.multiplicity})"
        return f"RootInterval(({self.lo}, {self.hi}), mult={self.multiplicity})"


def _disjoint_ordered(a: RootInterval, b: RootInterval) -> bool:
    """a's root provably precedes b's and the enclosures do not overlap."""
    if a.hi < b.lo:
        return True
    if a.exact and b.exact:
        return a.lo < b.lo
    if a.exact:
        return a.lo <= b.lo  # b's root lies strictly inside (b.lo, b.hi)
    if b.exact:
        return a.hi <= b.lo
    return False


def _separate(roots: List[RootInterval]) -> List[RootInterval]:
    """Refine until the enclosures are pairwise disjoint and sorted.

    Roots are pairwise distinct (square-free factors are coprime), so
    bisection always separates them eventually; the re-sort each round
    lets enclosures migrate past each other as they shrink.
    """
    while True:
        roots.sort(key=lambda r: (r.lo, r.hi))
        clean = True
        for a, b in zip(roots, roots[1:]):
            if not _disjoint_ordered(a, b):
                a.refine_step()
                b.refine_step()
                clean = False
        if clean:
            return roots


def isolate_real_roots(p: ExactPolynomial,
                       precision: Fraction = DEFAULT_PRECISION) -> List[RootInterval]:
    """All real roots of p with multiplicity, isolated and refined.

    Result is sorted ascending; intervals are pairwise disjoint and each
    has width <= precision (exact rational roots have width 0).
    """
    if p.is_zero:
        raise ValueError("cannot isolate roots of the zero polynomial")
    precision = to_fraction(precision)
    out: List[RootInterval] = []
    for factor, mult in squarefree_decomposition(p):
        for defining, lo, hi in _isolate_squarefree(factor):
            out.append(RootInterval(defining, lo, hi, mult))
    out = _separate(out)
    for r in out:
        r.refine_below(precision)
    out.sort(key=lambda r: (r.lo, r.hi))
    return out


def all_roots_real(p: ExactPolynomial) -> bool:
    """True iff p (nonzero) splits over the reals, certified by isolation."""
    if p.is_zero:
        raise ValueError("zero polynomial")
    if p.degree <= 0:
        return True
    total = sum(r.multiplicity for r in isolate_real_roots(p, Fraction(1, 4)))
    return total == p.degree


def max_root(p: ExactPolynomial,
             precision: Fraction = DEFAULT_PRECISION) -> Optional[RootInterval]:
    """Largest real root of p, or None if p has no real roots."""
    roots = isolate_real_roots(p, precision)
    return roots[-1] if roots else None


# ---------------------------------------------------------------------------
# exact counting and threshold certificates
# ---------------------------------------------------------------------------


def _count_open_squarefree(q: IntPoly, a: Fraction, b: Fraction) -> int:
    """Number of roots of square-free q in the open interval (a, b)."""
    if a >= b or len(q) <= 1:
        return 0
    # map (a, b) to (0, 1) via s(x) = q(a + (b-a) x): shift by a, then
    # scale the argument by (b-a); Fractions cleared back to integers
    w = b - a
    d = len(q) - 1
    shifted = [Fraction(c) for c in q]
    for i in range(d):
        for j in range(d - 1, i - 1, -1):
            shifted[j] += a * shifted[j + 1]
    mapped = int_poly_from_fractions([shifted[i] * w**i for i in range(d + 1)])
    if not mapped:
        return 0
    count = 0
    work = list(mapped)
    if work[0] == 0:  # root at a itself: outside the open interval
        work = list(_primitive(work[1:]))
    if sign_at(work, Fraction(1)) == 0:
        work = list(_deflate_root(work, 1, 1))
    intervals, exact = _isolate01(_trim(work))
    count += len(intervals) + len(exact)
    return count


def count_distinct_roots_in(p: ExactPolynomial, a: Fraction, b: Fraction,
                            closed: bool = True) -> int:
    """Exact number of distinct real roots of p in [a, b] (or (a, b))."""
    a, b = to_fraction(a), to_fraction(b)
    total = 0
    for factor, _ in squarefree_decomposition(p):
        total += _count_open_squarefree(factor, a, b)
        if closed:
            if sign_at(factor, a) == 0:
                total += 1
            if b != a and sign_at(factor, b) == 0:
                total += 1
    return total


def max_root_leq(p: ExactPolynomial, a: Fraction) -> bool:
    """Certified decision: every real root of p is <= a. Exact, no slack."""
    a = to_fraction(a)
    for factor, _ in squarefree_decomposition(p):
        if len(factor) == 2:
            if Fraction(-factor[0], factor[1]) > a:
                return False
            continue
        bound = Fraction(1 << cauchy_bound_pow2(factor))
        if a >= bound:
            continue
        if _count_open_squarefree(factor, a, bound) > 0:
            return False
    return True


def has_root_at(p: ExactPolynomial, a: Fraction) -> bool:
    return p(to_fraction(a)) == 0


def max_root_geq(p: ExactPolynomial, a: Fraction) -> bool:
    """Certified decision: some real root of p is >= a."""
    a = to_fraction(a)
    if has_root_at(p, a):
        return True
    return not max_root_leq(p, a)


# ---------------------------------------------------------------------------
# ordering isolated algebraic numbers
# ---------------------------------------------------------------------------


def compare_roots(r1: RootInterval, r2: RootInterval,
                  bits_cap: int = 256) -> int:
    """Total-order comparison of two isolated roots: -1, 0 or +1.

    Refines both intervals; if they refuse to separate, decides equality
    exactly through the gcd of the two defining polynomials.
    """
    while True:
        if r1.hi < r2.lo:
            return -1
        if r2.hi < r1.lo:
            return 1
        if r1.exact and r2.exact:
            return (r1.lo > r2.lo) - (r1.lo < r2.lo)
        if r1.exact and r2.poly is not None:
            if sign_at(r2.poly, r1.lo) == 0 and r2.contains(r1.lo):
                return 0
        elif r2.exact and r1.poly is not None:
            if sign_at(r1.poly, r2.lo) == 0 and r1.contains(r2.lo):
                return 0
        if not r1.exact and not r2.exact and r1.poly is not None and r2.poly is not None:
            lo, hi = max(r1.lo, r2.lo), min(r1.hi, r2.hi)
            if _overlap_width_small(r1, r2, bits_cap):
                g = int_poly_gcd(r1.poly, r2.poly)
                if len(g) > 1 and _has_root_in_closed(g, lo, hi):
                    return 0
        r1.refine_step()
        r2.refine_step()


def _overlap_width_small(r1: RootInterval, r2: RootInterval, bits_cap: int) -> bool:
    w = min(r1.width, r2.width)
    return w > 0 and w < Fraction(1, 1 << bits_cap)


def _has_root_in_closed(g: IntPoly, a: Fraction, b: Fraction) -> bool:
    if sign_at(g, a) == 0 or sign_at(g, b) == 0:
        return True
    return _count_open_squarefree(_squarefree_part(g), a, b) > 0


def _squarefree_part(g: IntPoly) -> IntPoly:
    if len(g) <= 2:
        return g
    return _divide_exact(list(g), int_poly_gcd(g, _deriv(g)))


# ---------------------------------------------------------------------------
# interval evaluation (used by certificate cross-checks)
# ---------------------------------------------------------------------------


def eval_on_interval(p: ExactPolynomial, lo: Fraction, hi: Fraction) -> Tuple[Fraction, Fraction]:
    """Interval Horner: encloses {p(x) : x in [lo, hi]} (not tight)."""
    alo, ahi = Fraction(0), Fraction(0)
    for c in reversed(p.coeffs):
        candidates = (alo * lo, alo * hi, ahi * lo, ahi * hi)
        alo, ahi = min(candidates) + c, max(candidates) + c
    return alo, ahi
