"""Dense univariate polynomials and matrices over exact rationals.

``ExactPolynomial`` stores coefficients in ascending degree order and is
the common currency of the package: characteristic polynomials, Chebyshev
polynomials and every generated lower-bound instance flow through it.
The zero polynomial is the empty coefficient list and has degree -1.

Characteristic polynomials are computed by the Samuelson-Berkowitz scheme,
which is division free: intermediate values stay in the subring generated
by the matrix entries, so integer matrices never touch Fraction
arithmetic (a large constant-factor win for the signing searches).
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

from rootline.ratutil import RationalLike, format_rational, to_fraction

Coeff = Union[int, Fraction]


class ExactPolynomial:
    """Immutable dense polynomial with Fraction coefficients.

    >>> p = ExactPolynomial.from_coeffs([-1, 0, 1])   # x^2 - 1
    >>> p.degree
    2
    >>> p(Fraction(3))
    Fraction(8, 1)
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Coeff]):
        cs = [to_fraction(c) if not isinstance(c, Fraction) else c for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: Tuple[Fraction, ...] = tuple(cs)

    # -- constructors -------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[RationalLike]) -> "ExactPolynomial":
        return cls([to_fraction(c) for c in coeffs])

    @classmethod
    def zero(cls) -> "ExactPolynomial":
        return cls([])

    @classmethod
    def one(cls) -> "ExactPolynomial":
        return cls([1])

    @classmethod
    def x(cls) -> "ExactPolynomial":
        return cls([0, 1])

    @classmethod
    def monomial(cls, degree: int, coeff: RationalLike = 1) -> "ExactPolynomial":
        return cls([0] * degree + [to_fraction(coeff)])

    @classmethod
    def from_roots(cls, roots: Iterable[RationalLike]) -> "ExactPolynomial":
        """Monic polynomial with the given rational roots."""
        p = cls.one()
        for r in roots:
            p = p * cls([-to_fraction(r), 1])
        return p

    # -- structure ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> Fraction:
        """Coefficient of x^k (zero beyond the stored degree)."""
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def descending(self) -> Tuple[Fraction, ...]:
        return tuple(reversed(self.coeffs))

    def is_monic(self) -> bool:
        return not self.is_zero and self.leading == 1

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "ExactPolynomial") -> "ExactPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return ExactPolynomial(out)

    def __neg__(self) -> "ExactPolynomial":
        return ExactPolynomial([-c for c in self.coeffs])

    def __sub__(self, other: "ExactPolynomial") -> "ExactPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "ExactPolynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ExactPolynomial.zero()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
        return ExactPolynomial(out)

    __rmul__ = __mul__

    def scale(self, c: RationalLike) -> "ExactPolynomial":
        c = to_fraction(c)
        return ExactPolynomial([c * a for a in self.coeffs])

    def __pow__(self, e: int) -> "ExactPolynomial":
        if e < 0:
            raise ValueError("negative powers are not polynomials")
        result = ExactPolynomial.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x: RationalLike) -> Fraction:
        x = to_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "ExactPolynomial") -> "ExactPolynomial":
        """self(inner(x)), by Horner over polynomials."""
        acc = ExactPolynomial.zero()
        for c in reversed(self.coeffs):
            acc = acc * inner + ExactPolynomial([c])
        return acc

    def derivative(self) -> "ExactPolynomial":
        return ExactPolynomial([i * c for i, c in enumerate(self.coeffs) if i >= 1])

    def shift_scale(self, a: RationalLike, b: RationalLike) -> "ExactPolynomial":
        """Map the root multiset mu -> a*mu + b, a != 0.

        Substitutes x -> (x - b)/a and renormalizes by a^deg, which keeps
        the leading coefficient exactly equal to the input's (so monic
        stays monic and the sign is preserved).
        """
        a = to_fraction(a)
        b = to_fraction(b)
        if a == 0:
            raise ValueError("shift_scale requires a != 0")
        if self.is_zero:
            return self
        n = self.degree
        inner = ExactPolynomial([-b / a, 1 / a])
        return self.compose(inner).scale(a**n)

    def monic(self) -> "ExactPolynomial":
        if self.is_zero:
            raise ValueError("zero polynomial cannot be made monic")
        lead = self.leading
        if lead == 1:
            return self
        return ExactPolynomial([c / lead for c in self.coeffs])

    def truncate_top(self, k: int) -> Tuple[Fraction, ...]:
        """The k coefficients after the leading one, descending.

        For a monic chi(x) = x^n + c_1 x^(n-1) + ... this is (c_1..c_k).
        """
        if self.is_zero:
            raise ValueError("zero polynomial has no top coefficients")
        n = self.degree
        if not 0 <= k <= n:
            raise ValueError(f"need 0 <= k <= degree, got k={k}, degree={n}")
        return tuple(self.coeff(n - i) for i in range(1, k + 1))

    # -- comparisons / hashing -----------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, ExactPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if self.is_zero:
            return "ExactPolynomial(0)"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if c == 0:
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"{c}*x" if c != 1 else "x")
            else:
                terms.append(f"{c}*x^{i}" if c != 1 else f"x^{i}")
        return "ExactPolynomial(" + " + ".join(terms) + ")"

    # -- JSON wire format ----------------------------------------------

    def to_json_dict(self) -> dict:
        return {"coeffs": [format_rational(c) for c in self.coeffs]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, d: dict) -> "ExactPolynomial":
        return cls.from_coeffs(d["coeffs"])

    @classmethod
    def from_json(cls, s: str) -> "ExactPolynomial":
        return cls.from_json_dict(json.loads(s))


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


class SquareMatrixQ:
    """Square matrix with exact rational entries."""

    __slots__ = ("n", "entries")

    def __init__(self, rows: Sequence[Sequence[RationalLike]]):
        n = len(rows)
        entries = []
        for row in rows:
            if len(row) != n:
                raise ValueError("matrix is not square")
            entries.append(tuple(to_fraction(v) for v in row))
        self.n = n
        self.entries: Tuple[Tuple[Fraction, ...], ...] = tuple(entries)

    @classmethod
    def zeros(cls, n: int) -> "SquareMatrixQ":
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def identity(cls, n: int) -> "SquareMatrixQ":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij: Tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def is_symmetric(self) -> bool:
        return all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.n)
            for j in range(i + 1, self.n)
        )

    def trace(self) -> Fraction:
        return sum((self.entries[i][i] for i in range(self.n)), Fraction(0))

    def __matmul__(self, other: "SquareMatrixQ") -> "SquareMatrixQ":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        n = self.n
        bt = list(zip(*other.entries))
        rows = []
        for i in range(n):
            arow = self.entries[i]
            rows.append([sum(a * b for a, b in zip(arow, bt[j])) for j in range(n)])
        return SquareMatrixQ(rows)

    def power(self, t: int) -> "SquareMatrixQ":
        if t < 0:
            raise ValueError("negative matrix power")
        result = SquareMatrixQ.identity(self.n)
        base = self
        while t:
            if t & 1:
                result = result @ base
            base = base @ base
            t >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, SquareMatrixQ) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"SquareMatrixQ({[list(map(str, row)) for row in self.entries]})"


def _berkowitz(rows: List[List]) -> List:
    """det(xI - A) coefficients, descending, by Samuelson-Berkowitz.

    Division free: works verbatim over int or Fraction entries.
    """
    n = len(rows)
    if n == 0:
        return [1]
    vec = [1, -rows[0][0]]
    for r in range(1, n):
        a = rows[r][r]
        row = rows[r][:r]
        col = [rows[i][r] for i in range(r)]
        # s = [1, -a, -R.C, -R.A'C, -R.A'^2 C, ...], length r+2
        s = [1, -a]
        w = col
        for j in range(2, r + 2):
            s.append(-sum(x * y for x, y in zip(row, w)))
            if j < r + 1:
                w = [sum(rows[i][t] * w[t] for t in range(r)) for i in range(r)]
        new_vec = []
        for i in range(r + 2):
            acc = 0
            lo = max(0, i - len(s) + 1)
            for j in range(lo, min(i, r) + 1):
                acc += s[i - j] * vec[j]
            new_vec.append(acc)
        vec = new_vec
    return vec


def char_poly(A: SquareMatrixQ) -> ExactPolynomial:
    """Exact characteristic polynomial det(xI - A); monic of degree n.

    Sign convention: det(xI - A) = sum_k (-1)^k sigma_k(A) x^(n-k) where
    sigma_k is the sum of all principal k-by-k minors.
    """
    rows: List[List] = []
    all_int = True
    for row in A.entries:
        r = []
        for v in row:
            if v.denominator == 1:
                r.append(v.numerator)
            else:
                all_int = False
                r.append(v)
        rows.append(r)
    if not all_int:
        rows = [[to_fraction(v) for v in row] for row in A.entries]
    desc = _berkowitz(rows)
    return ExactPolynomial.from_coeffs(list(reversed([to_fraction(c) for c in desc])))


def char_poly_int_rows(rows: Sequence[Sequence[int]]) -> List[int]:
    """Berkowitz on plain int rows; returns descending int coefficients.

    Fast path for the signing searches, which grind through many integer
    matrices and only need coefficient tuples for grouping.
    """
    return _berkowitz([list(r) for r in rows])


def sigma_k(A: SquareMatrixQ, k: int) -> Fraction:
    """Sum of all principal k-by-k minors, read off char_poly.

    sigma_0 = 1, sigma_1 = trace, sigma_n = det.
    """
    if not 0 <= k <= A.n:
        raise ValueError(f"sigma_k needs 0 <= k <= n, got k={k}, n={A.n}")
    chi = char_poly(A)
    return (-1) ** k * chi.coeff(A.n - k)


# ---------------------------------------------------------------------------
# operation wrappers (stable names for the public surface)
# ---------------------------------------------------------------------------


def poly_add(a: ExactPolynomial, b: ExactPolynomial) -> ExactPolynomial:
    return a + b


def poly_mul(a: ExactPolynomial, b: ExactPolynomial) -> ExactPolynomial:
    return a * b


def poly_compose(outer: ExactPolynomial, inner: ExactPolynomial) -> ExactPolynomial:
    return outer.compose(inner)


def poly_shift_scale(p: ExactPolynomial, a: RationalLike, b: RationalLike) -> ExactPolynomial:
    return p.shift_scale(a, b)


def real_roots(p: ExactPolynomial, precision: RationalLike = Fraction(1, 2**53)):
    """Isolating intervals (with multiplicity) for all real roots of p.

    Convenience re-export; the implementation lives in
    :mod:`rootline.isolation`.
    """
    from rootline.isolation import isolate_real_roots

    return isolate_real_roots(p, to_fraction(precision))
