"""Rounding interlacing families through a top-k coefficient oracle.

An oracle exposes, for any prefix assignment (s_1..s_l), the top k
coefficients of the partial sum f_{s_1..s_l} exactly.  The rounding
algorithm walks the tree in groups of ceil(m^(1/3)) coordinates; within
a group it enumerates the not-identically-zero extensions, estimates
each one's largest root from its top coefficients, and keeps the
argmin (lexicographic tie-break).  The final inequality
lambda_max(leaf) <= (1+eps) * lambda_max(root) is then certified
directly on the exact polynomials, independent of the estimates.

Two concrete oracles are provided: independent finite-support random
rank-one sums (``KSInstance``) and subset distributions given by a
dense probability table with fixed vectors (``SRInstance``).  Leaf
polynomials carry their probability as a factor, so a prefix's
polynomial is literally the sum of its children's, exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

from rootline.isolation import compare_roots, isolate_real_roots, max_root
from rootline.maxroot import approx_max_root
from rootline.poly import ExactPolynomial, SquareMatrixQ, char_poly
from rootline.ratutil import (
    RationalLike,
    format_rational,
    iroot_floor,
    ln_bounds,
    parse_rational,
    sqrt_upper,
    to_fraction,
)
from rootline.symfuncs import SymmetricProfile


class OracleInconsistencyError(ValueError):
    """Refinement sums of oracle coefficients failed to telescope."""


# ---------------------------------------------------------------------------
# common interlacing test
# ---------------------------------------------------------------------------


def check_common_interlacing(polys: Sequence[ExactPolynomial]) -> bool:
    """Decide whether the family admits a common interlacer.

    All inputs must share one degree, have positive leading coefficients
    and be certified real-rooted (anything else raises).  The criterion:
    a common interlacing exists iff for every j the j-th smallest roots
    across the family all precede every (j+1)-th smallest root, decided
    with certified comparisons.
    """
    polys = list(polys)
    if not polys:
        raise ValueError("empty family")
    deg = polys[0].degree
    if deg < 1:
        raise ValueError("family members must have degree >= 1")
    root_lists = []
    for p in polys:
        if p.is_zero or p.degree != deg:
            raise ValueError("family members must share one degree")
        if p.leading <= 0:
            raise ValueError("family members need positive leading coefficients")
        roots = isolate_real_roots(p, Fraction(1, 2**30))
        if sum(r.multiplicity for r in roots) != deg:
            raise ValueError("non-real-rooted polynomial in family")
        expanded = []
        for r in roots:
            expanded.extend([r] * r.multiplicity)
        root_lists.append(expanded)
    for j in range(deg - 1):
        top = root_lists[0][j]
        for lst in root_lists[1:]:
            if compare_roots(lst[j], top) > 0:
                top = lst[j]
        for lst in root_lists:
            if compare_roots(top, lst[j + 1]) > 0:
                return False
    return True


# ---------------------------------------------------------------------------
# family specification and oracle interface
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FamilySpec:
    """Depth m, explicit choice-set sizes, and the polynomial degree n."""

    m: int
    sizes: Tuple[int, ...]
    n: int

    def __post_init__(self):
        if self.m != len(self.sizes) or any(s < 1 for s in self.sizes):
            raise ValueError("need one nonempty choice set per coordinate")
        if self.n < 1:
            raise ValueError("degree must be >= 1")


class FamilyOracle:
    """Interface: exact top coefficients of partially-assigned sums.

    ``coeffs(prefix, k)`` returns the k+1 leading coefficients
    (of x^n down to x^(n-k)) of f_prefix, unnormalized: the sum over all
    leaves extending the prefix, each leaf weighted by its probability.
    An identically-zero polynomial yields all zeros.
    """

    spec: FamilySpec

    def coeffs(self, prefix: Tuple[int, ...], k: int) -> Tuple[Fraction, ...]:
        raise NotImplementedError

    def is_zero(self, prefix: Tuple[int, ...]) -> bool:
        return all(c == 0 for c in self.coeffs(prefix, 0))


def _dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    total = Fraction(0)
    for a, b in zip(u, v):
        total += a * b
    return total


def _bareiss_det(mat: List[List[int]]) -> int:
    """Fraction-free exact integer determinant (Bareiss)."""
    n = len(mat)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if mat[k][k] == 0:
            pivot = next((r for r in range(k + 1, n) if mat[r][k] != 0), None)
            if pivot is None:
                return 0
            mat[k], mat[pivot] = mat[pivot], mat[k]
            sign = -sign
        pkk = mat[k][k]
        for i in range(k + 1, n):
            mik = mat[i][k]
            row_i = mat[i]
            row_k = mat[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pkk - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pkk
    return sign * mat[n - 1][n - 1]


def _gram_sigma(vectors: List[Tuple[Fraction, ...]]) -> Fraction:
    """sigma_k of sum of the k rank-one matrices v v^T = det of their Gram.

    Each vector is scaled integral first so the determinant runs over
    plain ints; the result is divided by the squared scales.
    """
    k = len(vectors)
    if k == 0:
        return Fraction(1)
    if k > max(len(v) for v in vectors):
        return Fraction(0)  # rank bound: sigma_k vanishes
    scaled = []
    denom = 1
    for v in vectors:
        L = 1
        for x in v:
            L = L * x.denominator // math.gcd(L, x.denominator)
        scaled.append([int(x * L) for x in v])
        denom *= L * L
    gram = [[sum(a * b for a, b in zip(scaled[i], scaled[j])) for j in range(k)]
            for i in range(k)]
    return Fraction(_bareiss_det(gram), denom)


# ---------------------------------------------------------------------------
# Kadison-Singer style oracle: independent finite-support random vectors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KSInstance:
    """Independent random vectors with explicit finite supports.

    ``n`` is the ambient dimension (vectors shorter than n are read as
    zero-padded, which just adds zero eigenvalues).  Leaf polynomials
    are probability-weighted characteristic polynomials.
    """

    n: int
    supports: Tuple[Tuple[Tuple[Tuple[Fraction, ...], Fraction], ...], ...]

    def __post_init__(self):
        for i, sup in enumerate(self.supports):
            if not sup:
                raise ValueError(f"support {i} is empty")
            total = sum((p for _, p in sup), Fraction(0))
            if total != 1:
                raise ValueError(f"support {i} probabilities sum to {total}, not 1")
            if any(p < 0 for _, p in sup):
                raise ValueError(f"support {i} has a negative probability")
            if any(len(v) > self.n for v, _ in sup):
                raise ValueError("vector longer than the ambient dimension")

    @property
    def m(self) -> int:
        return len(self.supports)

    def spec(self) -> FamilySpec:
        return FamilySpec(self.m, tuple(len(s) for s in self.supports), self.n)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "supports": [
                [{"vector": [format_rational(x) for x in v], "prob": format_rational(p)}
                 for v, p in sup]
                for sup in self.supports
            ],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "KSInstance":
        sups = tuple(
            tuple((tuple(parse_rational(x) for x in ent["vector"]),
                   parse_rational(ent["prob"])) for ent in sup)
            for sup in d["supports"]
        )
        return cls(int(d["n"]), sups)


class KSOracle(FamilyOracle):
    """Top-k coefficients via expected principal minors.

    The x^(n-j) coefficient of the conditional expectation is
    (-1)^j sum over j-subsets T of E[sigma_j(sum_{i in T} r_i r_i^T)],
    and sigma_j of a rank-j sum is the Gram determinant of its vectors.
    Per-subset expectations are memoized across calls: they depend only
    on T and the fixed choices inside T.
    """

    def __init__(self, inst: KSInstance):
        self.inst = inst
        self.spec = inst.spec()
        self._sigma_memo: Dict = {}
        self._dim_cap = max(
            (len(v) for sup in inst.supports for v, _ in sup), default=0)

    def _expected_sigma(self, subset: Tuple[int, ...],
                        fixed: Tuple[Tuple[int, int], ...]) -> Fraction:
        if len(subset) > self._dim_cap:
            return Fraction(0)  # rank bound, skip the outcome enumeration
        key = (subset, fixed)
        hit = self._sigma_memo.get(key)
        if hit is not None:
            return hit
        fixed_map = dict(fixed)
        free = [i for i in subset if i not in fixed_map]
        total = Fraction(0)
        for outcome in product(*[range(len(self.inst.supports[i])) for i in free]):
            weight = Fraction(1)
            choice = dict(zip(free, outcome))
            vectors = []
            for i in subset:
                ci = fixed_map.get(i, choice.get(i))
                v, prob = self.inst.supports[i][ci]
                if i in choice:
                    weight *= prob
                vectors.append(v)
            if weight:
                sig = _gram_sigma(vectors)
                if sig:
                    total += weight * sig
        self._sigma_memo[key] = total
        return total

    def coeffs(self, prefix: Tuple[int, ...], k: int) -> Tuple[Fraction, ...]:
        inst = self.inst
        n, m = inst.n, inst.m
        if not 0 <= k <= n:
            raise ValueError(f"need 0 <= k <= n, got k={k}")
        if len(prefix) > m:
            raise ValueError("prefix longer than the family depth")
        weight = Fraction(1)
        for i, c in enumerate(prefix):
            weight *= inst.supports[i][c][1]
        out = [weight] + [Fraction(0)] * k
        if weight == 0:
            return tuple(out)
        ell = len(prefix)
        for j in range(1, min(k, m, self._dim_cap) + 1):
            acc = Fraction(0)
            for subset in combinations(range(m), j):
                fixed = tuple((i, prefix[i]) for i in subset if i < ell)
                acc += self._expected_sigma(subset, fixed)
            out[j] = (-1) ** j * weight * acc
        return tuple(out)


def ks_oracle(inst: KSInstance) -> KSOracle:
    return KSOracle(inst)


def ks_brute_force_poly(inst: KSInstance, prefix: Tuple[int, ...] = ()) -> ExactPolynomial:
    """Expected characteristic polynomial by full outcome enumeration.

    Independent test oracle for the coefficient formulas; exponential in
    the number of unfixed coordinates.
    """
    m = inst.m
    free = list(range(len(prefix), m))
    total = ExactPolynomial.zero()
    for outcome in product(*[range(len(inst.supports[i])) for i in free]):
        choices = list(prefix) + list(outcome)
        weight = Fraction(1)
        for i, c in enumerate(choices):
            weight *= inst.supports[i][c][1]
        if weight == 0:
            continue
        total = total + ks_leaf_poly(inst, tuple(choices)).scale(weight)
    return total


def ks_leaf_poly(inst: KSInstance, choices: Tuple[int, ...]) -> ExactPolynomial:
    """Unweighted char poly of the chosen rank-one sum, padded to degree n."""
    vectors = [inst.supports[i][c][0] for i, c in enumerate(choices)]
    d = max((len(v) for v in vectors), default=1)
    d = max(d, 1)
    rows = [[Fraction(0)] * d for _ in range(d)]
    for v in vectors:
        for a in range(len(v)):
            if v[a] == 0:
                continue
            for b in range(len(v)):
                if v[b]:
                    rows[a][b] += v[a] * v[b]
    chi = char_poly(SquareMatrixQ(rows))
    pad = inst.n - d
    return ExactPolynomial([Fraction(0)] * pad + list(chi.coeffs))


# ---------------------------------------------------------------------------
# strongly-Rayleigh style oracle: dense subset-probability table
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SRInstance:
    """Distribution over subsets of [m] (dense table) with fixed vectors.

    Choice semantics per coordinate: 0 = leave the vector out,
    1 = take it.  Conditioning is exact table restriction.  Whether the
    table's generating polynomial is actually real stable is not
    checked; the interlacing property is a trusted precondition.
    """

    n: int
    m: int
    vectors: Tuple[Tuple[Fraction, ...], ...]
    table: Tuple[Fraction, ...]  # index = subset bitmask, length 2^m

    def __post_init__(self):
        if self.m > 20:
            raise ValueError("dense table capped at m <= 20")
        if len(self.vectors) != self.m:
            raise ValueError("need one vector per coordinate")
        if len(self.table) != 1 << self.m:
            raise ValueError("table must have 2^m entries")
        if any(p < 0 for p in self.table):
            raise ValueError("negative probability in table")
        if sum(self.table) != 1:
            raise ValueError("table probabilities must sum to 1")
        if any(len(v) > self.n for v in self.vectors):
            raise ValueError("vector longer than the ambient dimension")

    def is_homogeneous(self) -> bool:
        sizes = {bin(mask).count("1") for mask, p in enumerate(self.table) if p}
        return len(sizes) <= 1

    def spec(self) -> FamilySpec:
        return FamilySpec(self.m, (2,) * self.m, self.n)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "vectors": [[format_rational(x) for x in v] for v in self.vectors],
            "table": {str(mask): format_rational(p)
                      for mask, p in enumerate(self.table) if p},
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "SRInstance":
        m = int(d["m"])
        table = [Fraction(0)] * (1 << m)
        for mask, p in d["table"].items():
            table[int(mask)] = parse_rational(p)
        vectors = tuple(tuple(parse_rational(x) for x in v) for v in d["vectors"])
        return cls(int(d["n"]), m, vectors, tuple(table))


class SROracle(FamilyOracle):
    """Coefficients from subset marginals of the restricted table."""

    def __init__(self, inst: SRInstance):
        self.inst = inst
        self.spec = inst.spec()
        self._sigma_memo: Dict[Tuple[int, ...], Fraction] = {}

    def _sigma(self, subset: Tuple[int, ...]) -> Fraction:
        hit = self._sigma_memo.get(subset)
        if hit is None:
            hit = _gram_sigma([self.inst.vectors[i] for i in subset])
            self._sigma_memo[subset] = hit
        return hit

    def coeffs(self, prefix: Tuple[int, ...], k: int) -> Tuple[Fraction, ...]:
        inst = self.inst
        n, m = inst.n, inst.m
        if not 0 <= k <= n:
            raise ValueError(f"need 0 <= k <= n, got k={k}")
        ell = len(prefix)
        out = [Fraction(0)] * (k + 1)
        kk = min(k, m)
        for mask, p in enumerate(inst.table):
            if p == 0:
                continue
            consistent = True
            for i in range(ell):
                if ((mask >> i) & 1) != prefix[i]:
                    consistent = False
                    break
            if not consistent:
                continue
            members = [i for i in range(m) if (mask >> i) & 1]
            out[0] += p
            for j in range(1, min(kk, len(members)) + 1):
                acc = Fraction(0)
                for subset in combinations(members, j):
                    acc += self._sigma(subset)
                if acc:
                    out[j] += (-1) ** j * p * acc
        return tuple(out)


def sr_oracle(inst: SRInstance) -> SROracle:
    return SROracle(inst)


def sr_brute_force_poly(inst: SRInstance, prefix: Tuple[int, ...] = ()) -> ExactPolynomial:
    """Probability-weighted sum of exact characteristic polynomials."""
    total = ExactPolynomial.zero()
    ell = len(prefix)
    for mask, p in enumerate(inst.table):
        if p == 0:
            continue
        if any(((mask >> i) & 1) != prefix[i] for i in range(ell)):
            continue
        vecs = [inst.vectors[i] for i in range(inst.m) if (mask >> i) & 1]
        d = max([len(v) for v in vecs] + [1])
        rows = [[Fraction(0)] * d for _ in range(d)]
        for v in vecs:
            for a in range(len(v)):
                if v[a]:
                    for b in range(len(v)):
                        if v[b]:
                            rows[a][b] += v[a] * v[b]
        chi = char_poly(SquareMatrixQ(rows))
        pad = inst.n - d
        total = total + ExactPolynomial([Fraction(0)] * pad + list(chi.coeffs)).scale(p)
    return total


# ---------------------------------------------------------------------------
# the rounding algorithm
# ---------------------------------------------------------------------------


@dataclass
class StepLog:
    prefix_length: int
    group: Tuple[int, ...]
    candidates: int
    chosen: Tuple[int, ...]
    estimate: Fraction


@dataclass
class RoundingResult:
    assignment: Tuple[int, ...]
    certified: bool
    lambda_leaf: Tuple[Fraction, Fraction]
    lambda_root: Tuple[Fraction, Fraction]
    epsilon: Fraction
    k_used: int
    group_size: int
    steps: List[StepLog] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "assignment": list(self.assignment),
            "certified": self.certified,
            "lambda_leaf": [format_rational(v) for v in self.lambda_leaf],
            "lambda_root": [format_rational(v) for v in self.lambda_root],
            "epsilon": format_rational(self.epsilon),
            "k_used": self.k_used,
            "group_size": self.group_size,
            "per_step_log": [
                {
                    "prefix_length": s.prefix_length,
                    "group": list(s.group),
                    "candidates": s.candidates,
                    "chosen": list(s.chosen),
                    "estimate": format_rational(s.estimate),
                }
                for s in self.steps
            ],
        }


def rounding_coefficient_budget(n: int, m: int, eps: Fraction) -> Tuple[int, int]:
    """(group size M, coefficient count k) for the given accuracy.

    M = ceil(m^(1/3)); k = ceil(20 ln(n) M sqrt(2/eps)) capped at n, so
    each step's estimate carries factor about 1 + eps/(2 M^2).
    """
    r = iroot_floor(m, 3)
    M = r if r**3 == m else r + 1
    ln_hi = ln_bounds(Fraction(n))[1]
    s_hi = sqrt_upper(2 / eps)
    target = 20 * ln_hi * M * s_hi
    k = -((-target.numerator) // target.denominator)
    return M, min(n, k)


def _profile_from_raw(n: int, raw: Sequence[Fraction]) -> Optional[SymmetricProfile]:
    """Monic-normalize oracle coefficients into a profile; None if zero."""
    lead = raw[0]
    if lead == 0:
        if any(c != 0 for c in raw):
            raise OracleInconsistencyError("zero leading coefficient on a nonzero polynomial")
        return None
    e = tuple((-1) ** i * raw[i] / lead for i in range(1, len(raw)))
    return SymmetricProfile(n, e)


def _poly_from_raw(n: int, raw: Sequence[Fraction]) -> ExactPolynomial:
    """Full polynomial from the n+1 leading coefficients, monic-normalized."""
    lead = raw[0]
    coeffs = [raw[n - i] / lead for i in range(n + 1)]
    return ExactPolynomial(coeffs)


def round_family(spec: FamilySpec, oracle: FamilyOracle, epsilon: RationalLike,
                 check_consistency: bool = True) -> RoundingResult:
    """Round an interlacing family to one leaf with a certified bound.

    Walks ceil(m/M) groups of M coordinates; in each group all
    not-identically-zero extensions are scored by approx_max_root on
    their top-k profile and the lexicographically-first argmin wins.
    The returned leaf's largest root is then certified, by exact root
    comparison, to be at most (1+eps) times the root polynomial's.

    Every step also re-checks the oracle's refinement consistency: the
    children's coefficient vectors must sum to the parent's exactly.
    """
    eps = to_fraction(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    m, n = spec.m, spec.n
    M, k = rounding_coefficient_budget(n, m, eps)

    prefix: Tuple[int, ...] = ()
    steps: List[StepLog] = []
    while len(prefix) < m:
        group = tuple(range(len(prefix), min(len(prefix) + M, m)))
        children = [(cand, oracle.coeffs(prefix + cand, k))
                    for cand in product(*[range(spec.sizes[i]) for i in group])]
        if check_consistency:
            parent = oracle.coeffs(prefix, k)
            sums = [sum(raw[i] for _, raw in children) for i in range(k + 1)]
            if tuple(sums) != tuple(parent):
                raise OracleInconsistencyError(
                    f"children of prefix {prefix} sum to {sums}, "
                    f"oracle reports {parent}")
        best_est: Optional[Fraction] = None
        best_cand: Optional[Tuple[int, ...]] = None
        count = 0
        for cand, raw in children:
            prof = _profile_from_raw(n, raw)
            if prof is None:
                continue
            count += 1
            est = approx_max_root(prof).estimate
            if best_est is None or est < best_est:
                best_est, best_cand = est, cand
        if best_cand is None:
            raise OracleInconsistencyError(
                f"every extension of prefix {prefix} is identically zero")
        steps.append(StepLog(len(prefix), group, count, best_cand, best_est))
        prefix = prefix + best_cand

    leaf = _poly_from_raw(n, oracle.coeffs(prefix, n))
    root = _poly_from_raw(n, oracle.coeffs((), n))
    lam_leaf = max_root(leaf, Fraction(1, 2**40))
    lam_root = max_root(root, Fraction(1, 2**40))
    # exact decision lambda(leaf) <= (1+eps) * lambda(root)
    scaled_root = root.shift_scale(1 + eps, 0)
    lam_scaled = max_root(scaled_root, Fraction(1, 2**40))
    certified = compare_roots(lam_leaf, lam_scaled) <= 0
    return RoundingResult(
        assignment=prefix,
        certified=certified,
        lambda_leaf=(lam_leaf.lo, lam_leaf.hi),
        lambda_root=(lam_root.lo, lam_root.hi),
        epsilon=eps,
        k_used=k,
        group_size=M,
        steps=steps,
    )
