"""Newton's identities: elementary symmetric functions <-> power sums.

A ``SymmetricProfile`` is the "top k coefficients" view of an unknown
root vector: n roots, of which only e_1..e_k are known.  Conversions to
and from power sums are exact (the inverse direction divides by i, which
is why the whole module runs over rationals, never integers).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

from rootline.poly import ExactPolynomial
from rootline.ratutil import RationalLike, format_rational, to_fraction


@dataclass(frozen=True)
class SymmetricProfile:
    """(n, e_1..e_k): the first k elementary symmetric values of n roots.

    k = 0 is legal and carries only n.
    """

    n: int
    e: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("profile needs n >= 1")
        if len(self.e) > self.n:
            raise ValueError(f"k={len(self.e)} exceeds n={self.n}")
        object.__setattr__(self, "e", tuple(to_fraction(v) for v in self.e))

    @property
    def k(self) -> int:
        return len(self.e)

    def truncate(self, k: int) -> "SymmetricProfile":
        if not 0 <= k <= self.k:
            raise ValueError(f"cannot truncate k={self.k} profile to {k}")
        return SymmetricProfile(self.n, self.e[:k])

    def to_json_dict(self) -> dict:
        return {"n": self.n, "e": [format_rational(v) for v in self.e]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, d: dict) -> "SymmetricProfile":
        return cls(int(d["n"]), tuple(to_fraction(v) for v in d["e"]))

    @classmethod
    def from_json(cls, s: str) -> "SymmetricProfile":
        return cls.from_json_dict(json.loads(s))


@dataclass(frozen=True)
class PowerSumProfile:
    """(n, p_1..p_k): the first k power sums of n roots."""

    n: int
    p: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("profile needs n >= 1")
        object.__setattr__(self, "p", tuple(to_fraction(v) for v in self.p))

    @property
    def k(self) -> int:
        return len(self.p)


def profile_of_roots(n: int, roots: Sequence[RationalLike], k: int = None) -> SymmetricProfile:
    """Exact e_1..e_k of an explicit root vector (k defaults to n).

    Computed by expanding prod (x - mu_i) incrementally, which is the
    brute-force definition and therefore usable as a test oracle.
    """
    mus = [to_fraction(r) for r in roots]
    if len(mus) != n:
        raise ValueError("root count differs from n")
    if k is None:
        k = n
    e = [Fraction(0)] * (k + 1)
    e[0] = Fraction(1)
    for mu in mus:
        top = min(k, len(e) - 1)
        for i in range(top, 0, -1):
            e[i] = e[i] + mu * e[i - 1]
    return SymmetricProfile(n, tuple(e[1 : k + 1]))


def power_sums_from_elementary(prof: SymmetricProfile) -> PowerSumProfile:
    """p_1..p_k from e_1..e_k by the Newton recurrence, O(k^2).

    p_i = e_1 p_{i-1} - e_2 p_{i-2} + ... + (-1)^i i e_i  (signs alternating).
    """
    e = prof.e
    k = prof.k
    p = []
    for i in range(1, k + 1):
        acc = Fraction(0)
        for j in range(1, i):
            if e[j - 1]:
                term = e[j - 1] * p[i - j - 1]
                acc += term if j % 2 == 1 else -term
        tail = i * e[i - 1]
        acc += tail if i % 2 == 1 else -tail
        p.append(acc)
    return PowerSumProfile(prof.n, tuple(p))


def elementary_from_power_sums(prof: PowerSumProfile) -> SymmetricProfile:
    """Inverse of :func:`power_sums_from_elementary`; exact round trip.

    e_i = (1/i) * sum_{j=1..i} (-1)^(j-1) e_{i-j} p_j, with e_0 = 1.
    """
    p = prof.p
    k = prof.k
    if k > prof.n:
        raise ValueError("more power sums than roots")
    e = [Fraction(1)]
    for i in range(1, k + 1):
        acc = Fraction(0)
        for j in range(1, i + 1):
            term = e[i - j] * p[j - 1]
            acc += term if j % 2 == 1 else -term
        e.append(acc / i)
    return SymmetricProfile(prof.n, tuple(e[1:]))


def profile_from_coefficients(n: int, c: Sequence[RationalLike]) -> SymmetricProfile:
    """Profile from the top coefficients c_1..c_k of a monic chi of degree n.

    e_i = (-1)^i c_i.
    """
    cs = [to_fraction(v) for v in c]
    if len(cs) > n:
        raise ValueError("more coefficients than roots")
    return SymmetricProfile(n, tuple((-1) ** i * cs[i - 1] for i in range(1, len(cs) + 1)))


def profile_from_polynomial(p: ExactPolynomial, k: int = None) -> SymmetricProfile:
    """Profile of a monic polynomial's root multiset, from its coefficients."""
    if p.is_zero or not p.is_monic():
        raise ValueError("profile requires a monic polynomial")
    n = p.degree
    if k is None:
        k = n
    return profile_from_coefficients(n, p.truncate_top(k))


def eval_poly_sum(prof: SymmetricProfile, q: ExactPolynomial) -> Fraction:
    """Exact sum of q over the unknown roots: sum_i q(mu_i).

    Requires deg q <= prof.k; beyond that the profile does not determine
    the value.
    """
    if q.degree > prof.k:
        raise ValueError(f"deg q = {q.degree} exceeds known statistics k = {prof.k}")
    if q.is_zero:
        return Fraction(0)
    p = power_sums_from_elementary(prof).p
    total = q.coeff(0) * prof.n
    for j in range(1, q.degree + 1):
        cj = q.coeff(j)
        if cj:
            total += cj * p[j - 1]
    return total


def extended_power_sums(prof: SymmetricProfile, upto: int) -> Tuple[Fraction, ...]:
    """p_1..p_upto, allowing upto > k only for complete profiles (k = n).

    For i > n every power sum is determined by e_1..e_n through
    p_i = sum_{j=1..n} (-1)^(j-1) e_j p_{i-j}.
    """
    base = power_sums_from_elementary(prof).p
    if upto <= prof.k:
        return base[:upto]
    if prof.k != prof.n:
        raise ValueError("power sums beyond k are undetermined unless k = n")
    p = list(base)
    e = prof.e
    for i in range(prof.n + 1, upto + 1):
        acc = Fraction(0)
        for j in range(1, prof.n + 1):
            if e[j - 1]:
                term = e[j - 1] * p[i - j - 1]
                acc += term if j % 2 == 1 else -term
        p.append(acc)
    return tuple(p)


def profiles_equal_up_to_k(a: SymmetricProfile, b: SymmetricProfile) -> bool:
    """Exact equality of e_1..e_k (equivalently of p_1..p_k)."""
    if a.n != b.n:
        raise ValueError(f"profiles have different n: {a.n} != {b.n}")
    if a.k != b.k:
        raise ValueError(f"profiles have different k: {a.k} != {b.k}")
    return a.e == b.e
