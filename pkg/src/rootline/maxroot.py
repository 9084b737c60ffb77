"""Largest-root approximation from the top k coefficients.

Given e_1..e_k of an unknown nonnegative root vector, return a certified
rational lower estimate of the maximum root together with the factor
alpha such that  estimate <= mu_max <= alpha * estimate.

Two branches:

* k <= ln n: the k-th power-sum estimate (p_k/n)^(1/k), factor n^(1/k);
* k >  ln n: a shrinking threshold t and the exact test
  sum_i T_k(mu_i / t) > n, evaluated from the profile alone via Newton's
  identities.  The threshold shrinks geometrically by
  1 + (20 ln n / k)^2 per iteration.

All arithmetic is exact.  The profile is first normalized by e_1 (i.e.
the roots are scaled so that their sum is 1); the algorithm is run on
the normalized profile and the estimate is scaled back.  Consequently
scaling the root vector by c > 0 scales the returned estimate by
exactly c, bit for bit, with identical iteration count and factor.

Irrational quantities never enter: ln n is replaced by a certified
dyadic upper bound, k-th roots are certified rational lower bounds with
relative error below 2^-64, and the loop threshold is floored to 64
significant dyadic bits each step.  The reported factor accounts for
every one of those roundings, so the bracket is a theorem about the
returned rationals, not an approximation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Tuple

from rootline.chebyshev import _cheb_coeffs
from rootline.ratutil import (
    dyadic_ceil,
    dyadic_floor,
    le_ln,
    ln_bounds,
    ln_upper_dyadic,
    nth_root_lower,
    nth_root_upper,
    to_fraction,
)
from rootline.symfuncs import (
    SymmetricProfile,
    extended_power_sums,
    power_sums_from_elementary,
)

POWER_SUM = "power-sum"
CHEBYSHEV_LOOP = "chebyshev-loop"

#: relative-error budget of the k-th root extraction (design constant)
_ROOT_BITS = 65
#: dyadic significand kept for the shrinking threshold
_T_BITS = 64
#: slack factor absorbing root/threshold roundings inside alpha
_GUARD = 1 + Fraction(1, 2**40)


class InconsistentProfileError(ValueError):
    """The profile cannot come from a nonnegative root vector.

    The nonnegativity precondition is not checkable from k < n
    statistics, so it is trusted; this error fires only when the
    algorithm trips over a consequence of its violation.
    """


@dataclass(frozen=True)
class ApproxResult:
    estimate: Fraction
    factor: Fraction
    iterations: int
    branch: str

    def __post_init__(self):
        if self.estimate < 0:
            raise ValueError("estimate must be nonnegative")
        if self.factor < 1:
            raise ValueError("factor must be >= 1")


def uses_power_sum_branch(k: int, n: int) -> bool:
    """Branch test k <= ln n, decided exactly (equality cannot occur)."""
    return le_ln(Fraction(k), n)


def shrink_factor(k: int, n: int) -> Fraction:
    """The loop's threshold divisor 1 + (20 L / k)^2 with dyadic L >= ln n."""
    L = ln_upper_dyadic(n, bits=24)
    return 1 + (Fraction(20) * L / k) ** 2


def alpha_factor(k: int, n: int) -> Fraction:
    """Rational upper bound on the guaranteed approximation factor.

    k <= ln n: n^(1/k) rounded up (exactly n for k = 1).  Otherwise the
    square of the loop shrink factor: one power for the densest the
    geometric scan can straddle the largest root, one for the Chebyshev
    threshold claim, plus a 1 + 2^-40 guard for the dyadic roundings.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if n == 1:
        return Fraction(1)
    if uses_power_sum_branch(k, n):
        if k == 1:
            return Fraction(n)
        return dyadic_ceil(nth_root_upper(Fraction(n), k, _ROOT_BITS) * _GUARD, 96)
    f = shrink_factor(k, n)
    return f * f * _GUARD


def _normalized_power_sums(prof: SymmetricProfile) -> Tuple[Fraction, ...]:
    """Power sums of the e_1-normalized profile (root sum scaled to 1)."""
    e1 = prof.e[0]
    scaled = tuple(prof.e[i] / e1 ** (i + 1) for i in range(prof.k))
    return power_sums_from_elementary(SymmetricProfile(prof.n, scaled)).p


def _cheb_sum_exceeds(coeffs: Tuple[int, ...], psums: Tuple[Fraction, ...],
                      n: int, t: Fraction) -> bool:
    """Exact decision  sum_i T_k(mu_i / t) > n  from power sums.

    sum_i T_k(mu_i/t) = a_0 n + sum_j a_j p_j t^-j.  Everything is put
    over one integer denominator so the comparison is a single integer
    inequality; no rational normalization happens in the loop.
    """
    k = len(coeffs) - 1
    u_num, u_den = t.denominator, t.numerator  # 1/t = u_num/u_den, u_den > 0
    den_lcm = 1
    for j in range(1, k + 1):
        if coeffs[j]:
            den_lcm = lcm(den_lcm, psums[j - 1].denominator)
    # common denominator: den_lcm * u_den^k
    upow = [1] * (k + 1)
    vpow = [1] * (k + 1)
    for j in range(1, k + 1):
        upow[j] = upow[j - 1] * u_num
        vpow[j] = vpow[j - 1] * u_den
    total = coeffs[0] * n * den_lcm * vpow[k]
    for j in range(1, k + 1):
        a = coeffs[j]
        if not a:
            continue
        p = psums[j - 1]
        total += a * p.numerator * (den_lcm // p.denominator) * upow[j] * vpow[k - j]
    return total > n * den_lcm * vpow[k]


def root_sum_test(prof: SymmetricProfile, t, cheb_index: int = None) -> Fraction:
    """Exact value of sum_i T_k(mu_i / t), with k = prof.k by default.

    <= n whenever t >= mu_max; > n forces t < mu_max (soundness of the
    loop's stopping rule).  A larger Chebyshev index may be requested
    when the profile is complete (k = n), in which case the higher power
    sums it needs are still determined exactly.
    """
    t = to_fraction(t)
    if t <= 0:
        raise ValueError("threshold t must be positive")
    if prof.k < 1:
        raise ValueError("profile carries no statistics")
    k = prof.k if cheb_index is None else cheb_index
    coeffs = _cheb_coeffs(k)
    psums = extended_power_sums(prof, k)
    inv = 1 / t
    total = Fraction(coeffs[0] * prof.n)
    ipow = Fraction(1)
    for j in range(1, k + 1):
        ipow *= inv
        if coeffs[j]:
            total += coeffs[j] * psums[j - 1] * ipow
    return total


def iteration_bound(k: int, n: int) -> int:
    """Certified upper bound ceil(1 + ln n / ln f) + 1 on loop passes."""
    f = shrink_factor(k, n)
    ln_n_hi = ln_bounds(Fraction(n))[1]
    ln_f_lo = ln_bounds(f)[0]
    ratio = Fraction(1) + ln_n_hi / ln_f_lo
    return -((-ratio.numerator) // ratio.denominator) + 1


def approx_max_root(prof: SymmetricProfile) -> ApproxResult:
    """Estimate the largest root from the profile, with certified factor.

    Returns (estimate, factor, iterations, branch) with
    estimate <= mu_max <= factor * estimate for any nonnegative root
    vector matching the profile.
    """
    n, k = prof.n, prof.k
    if k < 1:
        raise ValueError("need at least e_1")
    e1 = prof.e[0]
    if e1 < 0:
        raise InconsistentProfileError("e_1 < 0 is impossible for nonnegative roots")
    if n == 1:
        return ApproxResult(e1, Fraction(1), 0, POWER_SUM)
    if e1 == 0:
        # all roots are zero given nonnegativity
        return ApproxResult(Fraction(0), alpha_factor(k, n), 0,
                            POWER_SUM if uses_power_sum_branch(k, n) else CHEBYSHEV_LOOP)

    psums = _normalized_power_sums(prof)

    if uses_power_sum_branch(k, n):
        pk = psums[k - 1]
        if pk < 0:
            raise InconsistentProfileError(
                f"power sum p_{k} < 0 is impossible for nonnegative roots")
        if k == 1:
            return ApproxResult(e1 * pk / n, Fraction(n), 0, POWER_SUM)
        est = e1 * nth_root_lower(pk / n, k, _ROOT_BITS)
        return ApproxResult(est, alpha_factor(k, n), 0, POWER_SUM)

    coeffs = _cheb_coeffs(k)
    f = shrink_factor(k, n)
    cap = 10 * k * k + 100
    t = Fraction(1)  # normalized e_1
    iterations = 0
    while iterations < cap:
        iterations += 1
        if _cheb_sum_exceeds(coeffs, psums, n, t):
            return ApproxResult(e1 * t, alpha_factor(k, n), iterations, CHEBYSHEV_LOOP)
        t = dyadic_floor(t / f, _T_BITS)
    raise InconsistentProfileError(
        f"no threshold crossing within {cap} iterations; "
        "profile cannot come from nonnegative roots")
