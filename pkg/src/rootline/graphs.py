"""Graphs, girth, signings and exact signed spectra.

Signings assign +-1 to each edge; the signed adjacency matrix replaces
1-entries by the edge signs.  Two facts shape the implementation:

* switching a signing at a vertex set (flipping every crossing edge)
  conjugates D + A_s by a +-1 diagonal matrix, so every spectral or
  trace quantity is a function of the switching class only;
* every signing is switching-equivalent to exactly one signing that is
  +1 on a fixed spanning forest, so the 2^|E| signings fall into
  2^(|E|-n+components) explicitly enumerable classes.

The exhaustive trace scan (`verify_sign_invariance`) still walks all
2^|E| signings literally, batched through numpy int64 after clearing
denominators; the search for the best signing exploits the class
structure but returns exactly the signing a full lexicographic brute
force would return (cross-checked in the tests).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from rootline.isolation import RootInterval, compare_roots, isolate_real_roots, max_root
from rootline.poly import ExactPolynomial, SquareMatrixQ, char_poly_int_rows
from rootline.ratutil import RationalLike, to_fraction

EXHAUSTION_CAP = 24


class ExhaustionCapError(ValueError):
    """Raised when an exact enumeration would exceed the signing cap."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    n: int
    edges: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        seen = set()
        canon = []
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u} not allowed")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            canon.append(e)
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def adjacency_lists(self) -> List[List[int]]:
        adj: List[List[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def degrees(self) -> List[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def max_degree(self) -> int:
        return max(self.degrees())

    def components(self) -> List[List[int]]:
        adj = self.adjacency_lists()
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            stack, comp = [s], []
            seen[s] = True
            while stack:
                u = stack.pop()
                comp.append(u)
                for v in adj[u]:
                    if not seen[v]:
                        seen[v] = True
                        stack.append(v)
            comps.append(sorted(comp))
        return comps

    def bipartition(self) -> Optional[Tuple[List[int], List[int]]]:
        """2-coloring if bipartite, else None."""
        adj = self.adjacency_lists()
        color = [-1] * self.n
        for s in range(self.n):
            if color[s] != -1:
                continue
            color[s] = 0
            queue = [s]
            while queue:
                u = queue.pop()
                for v in adj[u]:
                    if color[v] == -1:
                        color[v] = 1 - color[u]
                        queue.append(v)
                    elif color[v] == color[u]:
                        return None
        return ([i for i in range(self.n) if color[i] == 0],
                [i for i in range(self.n) if color[i] == 1])

    def is_bipartite(self) -> bool:
        return self.bipartition() is not None

    def to_json_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json_dict(cls, d: dict) -> "Graph":
        return cls(int(d["n"]), tuple((int(u), int(v)) for u, v in d["edges"]))


@dataclass(frozen=True)
class Signing:
    """+-1 per edge, aligned with the owning graph's sorted edge order."""

    signs: Tuple[int, ...]

    def __post_init__(self):
        if any(s not in (-1, 1) for s in self.signs):
            raise ValueError("signs must be +-1")

    @classmethod
    def all_plus(cls, g: Graph) -> "Signing":
        return cls((1,) * g.num_edges)

    @classmethod
    def from_bits(cls, g: Graph, bits: int) -> "Signing":
        """Bit i set means edge i carries -1 (so bits order lex-minimal +1 first)."""
        return cls(tuple(-1 if (bits >> i) & 1 else 1 for i in range(g.num_edges)))

    def bits(self) -> int:
        return sum(1 << i for i, s in enumerate(self.signs) if s == -1)


def girth(g: Graph):
    """Length of the shortest cycle; math.inf for forests.

    Per-vertex BFS; the minimum over all roots of the first non-tree
    edge closure is exact.
    """
    adj = g.adjacency_lists()
    best = math.inf
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = [s]
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            if 2 * dist[u] >= best:
                break
            for v in adj[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    queue.append(v)
                elif parent[u] != v:
                    best = min(best, dist[u] + dist[v] + 1)
        if best == 3:
            return 3
    return best


def avg_degree_bound(g: Graph) -> Fraction:
    """2|E|/n; the all-plus adjacency has an eigenvalue at least this."""
    return Fraction(2 * g.num_edges, g.n)


def signed_adjacency(g: Graph, s: Signing,
                     D: Optional[Sequence[RationalLike]] = None) -> SquareMatrixQ:
    """The symmetric matrix D + A_s (D diagonal, defaults to zero)."""
    if len(s.signs) != g.num_edges:
        raise ValueError("signing does not cover the edge set")
    rows = [[Fraction(0)] * g.n for _ in range(g.n)]
    if D is not None:
        if len(D) != g.n:
            raise ValueError("diagonal has wrong length")
        for i, d in enumerate(D):
            rows[i][i] = to_fraction(d)
    for (u, v), sign in zip(g.edges, s.signs):
        rows[u][v] = Fraction(sign)
        rows[v][u] = Fraction(sign)
    return SquareMatrixQ(rows)


def _int_rows(g: Graph, signs: Sequence[int], diag: Sequence[int]) -> List[List[int]]:
    rows = [[0] * g.n for _ in range(g.n)]
    for i, d in enumerate(diag):
        rows[i][i] = d
    for (u, v), sign in zip(g.edges, signs):
        rows[u][v] = sign
        rows[v][u] = sign
    return rows


# ---------------------------------------------------------------------------
# exhaustive trace scan over all signings
# ---------------------------------------------------------------------------


@dataclass
class InvarianceReport:
    """Outcome of scanning trace powers over every signing."""

    graph: Graph
    k: int
    agree: bool
    #: first power at which some pair of signings disagrees, if any
    first_disagreement: Optional[int] = None
    #: witness (bits_a, bits_b, power) for the disagreement
    witness: Optional[Tuple[int, int, int]] = None


def _thread_count() -> int:
    env = os.environ.get("ROOTLINE_THREADS")
    if env:
        return max(1, int(env))
    return 1


def _scaled_diag(g: Graph, D: Optional[Sequence[RationalLike]]) -> Tuple[List[int], int]:
    """Clear denominators: returns (L*D as ints, L)."""
    if D is None:
        return [0] * g.n, 1
    fracs = [to_fraction(d) for d in D]
    L = 1
    for f in fracs:
        L = L * f.denominator // math.gcd(L, f.denominator)
    return [int(f * L) for f in fracs], L


def sign_invariance_report(g: Graph, D: Optional[Sequence[RationalLike]], k: int,
                           cap: int = EXHAUSTION_CAP) -> InvarianceReport:
    """Scan trace((D+A_s)^i) for i = 1..k over ALL 2^|E| signings.

    Scaling D by a common denominator L turns every matrix integral;
    trace agreement is unaffected (traces scale by L^i).  Batches of
    signings run through numpy int64 when the trace bound allows,
    otherwise exact big-int arithmetic takes over.
    """
    m = g.num_edges
    if m > cap:
        raise ExhaustionCapError(
            f"{m} edges exceeds the exhaustion cap {cap}; "
            "use sample_sign_invariance for an uncertified check")
    diag, _ = _scaled_diag(g, D)
    maxabs = max([1] + [abs(d) for d in diag])
    # worst-case |trace(M^i)| <= n * (n*maxabs)^i
    bound = g.n * (g.n * maxabs) ** max(k, 1)
    if bound < 2**62:
        return _scan_numpy(g, diag, k)
    return _scan_exact(g, diag, k)


def verify_sign_invariance(g: Graph, D: Optional[Sequence[RationalLike]], k: int,
                           cap: int = EXHAUSTION_CAP) -> bool:
    """True iff trace powers 1..k agree across all signings, exactly."""
    return sign_invariance_report(g, D, k, cap).agree


def sample_sign_invariance(g: Graph, D: Optional[Sequence[RationalLike]], k: int,
                           samples: int, seed: int = 0) -> bool:
    """Uncertified sampling fallback for graphs beyond the cap."""
    import random

    rng = random.Random(seed)
    diag, _ = _scaled_diag(g, D)
    ref = _traces_exact(_int_rows(g, (1,) * g.num_edges, diag), k)
    for _ in range(samples):
        bits = rng.getrandbits(g.num_edges)
        signs = [-1 if (bits >> i) & 1 else 1 for i in range(g.num_edges)]
        if _traces_exact(_int_rows(g, signs, diag), k) != ref:
            return False
    return True


def _traces_exact(rows: List[List[int]], k: int) -> List[int]:
    n = len(rows)
    out = []
    power = [row[:] for row in rows]
    for i in range(1, k + 1):
        if i > 1:
            power = [[sum(power[a][t] * rows[t][b] for t in range(n)) for b in range(n)]
                     for a in range(n)]
        out.append(sum(power[a][a] for a in range(n)))
    return out


def _scan_exact(g: Graph, diag: List[int], k: int) -> InvarianceReport:
    ref = None
    for bits in range(1 << g.num_edges):
        signs = [-1 if (bits >> i) & 1 else 1 for i in range(g.num_edges)]
        tr = _traces_exact(_int_rows(g, signs, diag), k)
        if ref is None:
            ref = tr
        elif tr != ref:
            power = next(i + 1 for i in range(k) if tr[i] != ref[i])
            return InvarianceReport(g, k, False, power, (0, bits, power))
    return InvarianceReport(g, k, True)


def _scan_numpy(g: Graph, diag: List[int], k: int) -> InvarianceReport:
    m = g.num_edges
    n = g.n
    total = 1 << m
    batch = 1 << min(m, 13)
    base = np.zeros((n, n), dtype=np.int64)
    for i, d in enumerate(diag):
        base[i, i] = d
    us = np.array([e[0] for e in g.edges])
    vs = np.array([e[1] for e in g.edges])

    def batch_traces(start: int) -> Tuple[int, np.ndarray]:
        idx = np.arange(start, min(start + batch, total), dtype=np.int64)
        signs = 1 - 2 * ((idx[:, None] >> np.arange(m)[None, :]) & 1)
        mats = np.broadcast_to(base, (len(idx), n, n)).copy()
        mats[:, us, vs] = signs
        mats[:, vs, us] = signs
        return start, _batch_traces(mats, k)

    starts = list(range(0, total, batch))
    threads = _thread_count()
    if threads > 1 and len(starts) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(batch_traces, starts))
    else:
        results = map(batch_traces, starts)

    ref: Optional[np.ndarray] = None
    for start, traces in results:
        if ref is None:
            ref = traces[:, 0].copy()  # signing 0 = all +1
        diff = traces != ref[:, None]
        if diff.any():
            power_idx, sig_idx = np.argwhere(diff)[0]
            power = int(power_idx) + 1
            return InvarianceReport(g, k, False, power,
                                    (0, int(start + sig_idx), power))
    return InvarianceReport(g, k, True)


def _batch_traces(mats: np.ndarray, k: int) -> np.ndarray:
    """traces[i-1, b] = trace(mats[b]^i) for i = 1..k; all symmetric int64."""
    out = np.empty((k, mats.shape[0]), dtype=np.int64)
    powers = {1: mats}
    out[0] = np.trace(mats, axis1=1, axis2=2)
    half = (k + 1) // 2
    p = mats
    for j in range(2, half + 1):
        p = np.matmul(p, mats)
        powers[j] = p
    for i in range(2, k + 1):
        a = powers[(i + 1) // 2]
        b = powers[i - (i + 1) // 2]
        # symmetric factors: trace(AB) = sum(A * B)
        out[i - 1] = np.einsum("bij,bij->b", a, b)
    return out


# ---------------------------------------------------------------------------
# best signing search (minimum largest eigenvalue)
# ---------------------------------------------------------------------------


@dataclass
class BestSigning:
    signing: Signing
    char: ExactPolynomial
    lambda_max: RootInterval
    classes_searched: int


def _spanning_forest(g: Graph) -> List[int]:
    """Indices of a BFS spanning forest's edges."""
    index = {e: i for i, e in enumerate(g.edges)}
    adj: List[List[Tuple[int, int]]] = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(g.edges):
        adj[u].append((v, i))
        adj[v].append((u, i))
    seen = [False] * g.n
    tree: List[int] = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        queue = [s]
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            for v, ei in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    tree.append(ei)
                    queue.append(v)
    return sorted(tree)


def _cut_space_rows(g: Graph) -> List[int]:
    """Vertex-star rows of the GF(2) cut space, as edge-indexed bitmasks."""
    rows = []
    for v in range(g.n):
        mask = 0
        for i, (a, b) in enumerate(g.edges):
            if a == v or b == v:
                mask |= 1 << i
        rows.append(mask)
    return rows


def _gf2_echelon(rows: List[int]) -> List[Tuple[int, int]]:
    """[(pivot_bit, row)] with strictly increasing pivot positions."""
    basis: Dict[int, int] = {}
    for row in rows:
        cur = row
        while cur:
            piv = cur & -cur
            if piv in basis:
                cur ^= basis[piv]
            else:
                basis[piv] = cur
                break
    # re-reduce to echelon (each pivot appears in exactly one row)
    pivots = sorted(basis.keys())
    reduced: Dict[int, int] = {}
    for piv in reversed(pivots):
        row = basis[piv]
        for p2, r2 in reduced.items():
            if row & p2:
                row ^= r2
        reduced[piv] = row
    return sorted(reduced.items())


def _coset_lex_min(bits: int, echelon: List[Tuple[int, int]]) -> int:
    """Lexicographically minimal member of bits + rowspace (bit 0 first).

    Greedy over ascending pivots: clearing an early edge's -1 can only
    flip later edges, which are less significant in the edge order.
    """
    for piv, row in echelon:
        if bits & piv:
            bits ^= row
    return bits


def _lex_key(bits: int, m: int) -> Tuple[int, ...]:
    """Sign-vector order key: edge 0 most significant, +1 (bit 0) < -1."""
    return tuple((bits >> i) & 1 for i in range(m))


def best_signing_search(g: Graph, cap: int = EXHAUSTION_CAP,
                        width: Fraction = Fraction(1, 2**30)) -> BestSigning:
    """The signing minimizing lambda_max(A_s), ties broken lexicographically.

    Enumerates one representative per switching class (signs free off a
    spanning forest), compares the classes' exact characteristic
    polynomials by certified root intervals, then recovers the
    lexicographically smallest signing among all argmin signings via a
    GF(2) coset reduction.  Output is identical to brute force over all
    2^|E| signings.
    """
    m = g.num_edges
    if m > cap:
        raise ExhaustionCapError(f"{m} edges exceeds the exhaustion cap {cap}")
    tree = set(_spanning_forest(g))
    free = [i for i in range(m) if i not in tree]
    zero_diag = [0] * g.n

    by_char: Dict[Tuple[int, ...], int] = {}
    for assign in range(1 << len(free)):
        bits = 0
        for j, ei in enumerate(free):
            if (assign >> j) & 1:
                bits |= 1 << ei
        signs = [-1 if (bits >> i) & 1 else 1 for i in range(m)]
        coeffs = tuple(char_poly_int_rows(_int_rows(g, signs, zero_diag)))
        by_char.setdefault(coeffs, bits)

    best: List[Tuple[Tuple[int, ...], RootInterval, int]] = []
    for coeffs, bits in by_char.items():
        poly = ExactPolynomial.from_coeffs(list(reversed([Fraction(c) for c in coeffs])))
        lam = max_root(poly, Fraction(1, 2**20))
        if not best:
            best = [(coeffs, lam, bits)]
            continue
        cmp = compare_roots(lam, best[0][1])
        if cmp < 0:
            best = [(coeffs, lam, bits)]
        elif cmp == 0:
            best.append((coeffs, lam, bits))

    echelon = _gf2_echelon(_cut_space_rows(g))
    min_bits = None
    min_coeffs = None
    for coeffs, _, bits in best:
        cand = _coset_lex_min(bits, echelon)
        if min_bits is None or _lex_key(cand, m) < _lex_key(min_bits, m):
            min_bits = cand
            min_coeffs = coeffs
    signing = Signing.from_bits(g, min_bits)
    poly = ExactPolynomial.from_coeffs(list(reversed([Fraction(c) for c in min_coeffs])))
    lam = max_root(poly, width)
    return BestSigning(signing, poly, lam, len(by_char))


def best_signing_bruteforce(g: Graph, width: Fraction = Fraction(1, 2**30)) -> BestSigning:
    """Reference implementation: all 2^|E| signings, for cross-checking.

    Walks sign vectors in lexicographic edge order (+1 before -1) so the
    tie-break matches the class-based search by construction.
    """
    m = g.num_edges
    zero_diag = [0] * g.n
    best_bits = None
    best_lam = None
    best_coeffs = None
    for key in range(1 << m):
        # key's high bit is edge 0: counting up walks sign vectors in lex order
        bits = sum(1 << i for i in range(m) if (key >> (m - 1 - i)) & 1)
        signs = [-1 if (bits >> i) & 1 else 1 for i in range(m)]
        coeffs = tuple(char_poly_int_rows(_int_rows(g, signs, zero_diag)))
        poly = ExactPolynomial.from_coeffs(list(reversed([Fraction(c) for c in coeffs])))
        lam = max_root(poly, width)
        if best_lam is None or compare_roots(lam, best_lam) < 0:
            best_bits, best_lam, best_coeffs = bits, lam, coeffs
    poly = ExactPolynomial.from_coeffs(list(reversed([Fraction(c) for c in best_coeffs])))
    return BestSigning(Signing.from_bits(g, best_bits), poly, best_lam, 1 << m)


def ramanujan_bound_holds(g: Graph, s: Signing) -> bool:
    """Exact check lambda_max(A_s) <= 2*sqrt(deg_max - 1), no slack.

    Decided on the squared matrix: eigenvalues of A_s^2 are the squares,
    so the bound becomes the rational threshold 4*(deg_max - 1).
    """
    from rootline.isolation import max_root_leq

    d = g.max_degree()
    if d < 2:
        raise ValueError("bound is vacuous for max degree < 2")
    A = signed_adjacency(g, s)
    A2 = A @ A
    from rootline.poly import char_poly

    return max_root_leq(char_poly(A2), Fraction(4 * (d - 1)))


# ---------------------------------------------------------------------------
# catalog of small high-girth graphs
# ---------------------------------------------------------------------------


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cube_graph() -> Graph:
    edges = []
    for v in range(8):
        for b in (1, 2, 4):
            if v < v ^ b:
                edges.append((v, v ^ b))
    return Graph(8, tuple(edges))


def heawood_graph() -> Graph:
    """Incidence graph of the Fano plane: 14 vertices, 21 edges, girth 6."""
    edges = []
    for line in range(7):
        for p in (line, (line + 1) % 7, (line + 3) % 7):
            edges.append((p, 7 + line))
    return Graph(14, tuple(edges))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def tutte_coxeter_graph() -> Graph:
    """Duad-syntheme incidence: 30 vertices, 45 edges, girth 8."""
    duads = list(combinations(range(6), 2))
    duad_index = {d: i for i, d in enumerate(duads)}
    synthemes = []
    for m1 in duads:
        rest1 = [x for x in range(6) if x not in m1]
        for m2 in combinations(rest1, 2):
            if m2 < m1:
                continue
            m3 = tuple(x for x in rest1 if x not in m2)
            syn = tuple(sorted((m1, m2, m3)))
            if syn not in synthemes:
                synthemes.append(syn)
    edges = []
    for j, syn in enumerate(sorted(synthemes)):
        for d in syn:
            edges.append((duad_index[d], 15 + j))
    return Graph(30, tuple(edges))


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    graph: Graph
    girth: int
    deg_max: int
    deg_avg: Fraction


def high_girth_catalog(name: str) -> Graph:
    """Named small graphs standing in for the asymptotic girth families.

    Accepts even cycles ("C_8"), the cube ("Q_3"), "heawood",
    "tutte-coxeter" and complete bipartite ("K_3,3").
    """
    key = name.strip().lower().replace("{", "").replace("}", "")
    if key in ("q_3", "q3", "cube"):
        return cube_graph()
    if key == "heawood":
        return heawood_graph()
    if key in ("tutte-coxeter", "tutte_coxeter", "levi"):
        return tutte_coxeter_graph()
    if key.startswith("c_") or key.startswith("c"):
        digits = key.split("_")[-1] if "_" in key else key[1:]
        if digits.isdigit():
            n = int(digits)
            if n % 2 != 0:
                raise ValueError(f"catalog carries even cycles only, got {name}")
            return cycle_graph(n)
    if key.startswith("k_") or key.startswith("k"):
        body = key[2:] if key.startswith("k_") else key[1:]
        parts = body.split(",")
        if len(parts) == 2 and all(p.isdigit() for p in parts):
            a, b = int(parts[0]), int(parts[1])
            if a != b:
                raise ValueError("catalog carries balanced K_d,d only")
            return complete_bipartite(a, b)
    raise ValueError(f"unknown catalog graph: {name!r}")


def catalog_entries() -> List[CatalogEntry]:
    """The fixed registry used by the verification suites."""
    entries = []
    for n in (4, 6, 8, 10, 12):
        entries.append(CatalogEntry(f"C_{n}", cycle_graph(n), n, 2, Fraction(2)))
    entries.append(CatalogEntry("Q_3", cube_graph(), 4, 3, Fraction(3)))
    for d in (2, 3, 4):
        entries.append(CatalogEntry(f"K_{d},{d}", complete_bipartite(d, d), 4, d, Fraction(d)))
    entries.append(CatalogEntry("heawood", heawood_graph(), 6, 3, Fraction(3)))
    entries.append(CatalogEntry("tutte-coxeter", tutte_coxeter_graph(), 8, 3, Fraction(3)))
    return entries


def signed_char_poly(g: Graph, s: Signing,
                     D: Optional[Sequence[RationalLike]] = None) -> ExactPolynomial:
    from rootline.poly import char_poly

    return char_poly(signed_adjacency(g, s, D))


def eigenvalue_intervals(g: Graph, s: Signing,
                         D: Optional[Sequence[RationalLike]] = None,
                         width: Fraction = Fraction(1, 2**30)) -> List[RootInterval]:
    """Certified eigenvalue enclosures of D + A_s (all real, symmetric)."""
    return isolate_real_roots(signed_char_poly(g, s, D), width)


@dataclass
class SignedSpectrum:
    """Exact characteristic polynomial of D + A_s with certified roots."""

    char: ExactPolynomial
    roots: List[RootInterval]

    @property
    def lambda_max(self) -> RootInterval:
        return self.roots[-1]


def signed_spectrum(g: Graph, s: Signing,
                    D: Optional[Sequence[RationalLike]] = None,
                    width: Fraction = Fraction(1, 2**30)) -> SignedSpectrum:
    """Spectrum of D + A_s; the root count always certifies realness."""
    chi = signed_char_poly(g, s, D)
    roots = isolate_real_roots(chi, width)
    if sum(r.multiplicity for r in roots) != g.n:
        raise AssertionError("symmetric matrix produced non-real roots")
    return SignedSpectrum(chi, roots)


def switching_class_char_polys(g: Graph) -> List[Tuple[Tuple[int, ...], int]]:
    """(descending char poly coefficients, representative bits) per class.

    The characteristic polynomial of A_s is constant on switching
    classes, so these cover every one of the 2^|E| signings exactly.
    """
    tree = set(_spanning_forest(g))
    free = [i for i in range(g.num_edges) if i not in tree]
    zero_diag = [0] * g.n
    out = []
    for assign in range(1 << len(free)):
        bits = 0
        for j, ei in enumerate(free):
            if (assign >> j) & 1:
                bits |= 1 << ei
        signs = [-1 if (bits >> i) & 1 else 1 for i in range(g.num_edges)]
        out.append((tuple(char_poly_int_rows(_int_rows(g, signs, zero_diag))), bits))
    return out
