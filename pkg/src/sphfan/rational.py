"""Exact rational scalars, vectors, and matrices.

Scalars are ``fractions.Fraction`` (always in lowest terms, positive
denominator).  Vectors are tuples of Fractions.  No floats anywhere.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Rat = Fraction
Vec = tuple[Fraction, ...]

_RAT_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def rat(x: int | str | Fraction) -> Fraction:
    """Build an exact rational from an int, Fraction, or 'p/q' string."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rat(x)
    raise TypeError(f"cannot build a rational from {type(x).__name__}")


def parse_rat(s: str) -> Fraction:
    """Parse 'p/q' or a decimal integer string, exactly.

    Denominators must be positive digit strings; anything else (floats,
    whitespace, empty strings) is rejected.
    """
    if not _RAT_RE.match(s):
        raise ValueError(f"not a rational literal: {s!r}")
    if "/" in s:
        num, den = s.split("/")
        d = int(den)
        if d == 0:
            raise ValueError(f"zero denominator: {s!r}")
        return Fraction(int(num), d)
    return Fraction(int(s))


def format_rat(q: Fraction) -> str:
    """Canonical string form: 'p/q' in lowest terms, or 'p' when q = 1."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def vec(entries: Iterable) -> Vec:
    return tuple(rat(e) for e in entries)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c: Fraction, u: Sequence[Fraction]) -> Vec:
    return tuple(c * a for a in u)


def zero_vec(n: int) -> Vec:
    return (Fraction(0),) * n


def is_zero_vec(u: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in u)


def primitive(u: Sequence[Fraction]) -> Vec:
    """Scale a nonzero vector to coprime integer entries, same direction."""
    if is_zero_vec(u):
        return tuple(Fraction(0) for _ in u)
    m = lcm(*(a.denominator for a in u))
    ints = [a.numerator * (m // a.denominator) for a in u]
    g = gcd(*(abs(i) for i in ints))
    return tuple(Fraction(i // g) for i in ints)


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        m = lcm(*(a.denominator for a in row)) if row else 1
        out.append([a.numerator * (m // a.denominator) for a in row])
    return out


class Mat:
    """Immutable rectangular matrix of exact rationals."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable]):
        grid = tuple(tuple(rat(e) for e in row) for row in rows)
        if grid and any(len(r) != len(grid[0]) for r in grid):
            raise ValueError("ragged rows")
        object.__setattr__(self, "rows", grid)
        object.__setattr__(self, "nrows", len(grid))
        object.__setattr__(self, "ncols", len(grid[0]) if grid else 0)

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    def __eq__(self, other):
        return isinstance(other, Mat) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Mat({[list(map(format_rat, r)) for r in self.rows]})"

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "Mat":
        return cls([[0] * ncols for _ in range(nrows)])

    def transpose(self) -> "Mat":
        return Mat(zip(*self.rows)) if self.rows else Mat([])

    def matvec(self, v: Sequence[Fraction]) -> Vec:
        if len(v) != self.ncols:
            raise ValueError(f"dimension mismatch: {self.ncols} cols vs {len(v)}")
        return tuple(dot(row, v) for row in self.rows)

    def matmul(self, other: "Mat") -> "Mat":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in matmul")
        cols = list(zip(*other.rows))
        return Mat([[dot(row, col) for col in cols] for row in self.rows])

    def _bareiss_echelon(self) -> tuple[list[list[int]], list[int]]:
        """Fraction-free row echelon form.

        Returns the integer echelon grid together with the pivot column
        list; rows are scaled (Bareiss), so only zero-patterns and exact
        linear relations are meaningful.
        """
        a = _integer_rows(self.rows)
        nrows, ncols = self.nrows, self.ncols
        pivots: list[int] = []
        r = 0
        prev = 1
        for col in range(ncols):
            piv = next((i for i in range(r, nrows) if a[i][col] != 0), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            for i in range(r + 1, nrows):
                for j in range(col + 1, ncols):
                    a[i][j] = (a[i][j] * a[r][col] - a[i][col] * a[r][j]) // prev
                a[i][col] = 0
            prev = a[r][col]
            pivots.append(col)
            r += 1
            if r == nrows:
                break
        return a, pivots

    def rank(self) -> int:
        _, pivots = self._bareiss_echelon()
        return len(pivots)

    def solve_homogeneous(self) -> list[Vec]:
        """Basis of the exact kernel {x : self @ x = 0}."""
        ech, pivots = self._bareiss_echelon()
        free = [j for j in range(self.ncols) if j not in pivots]
        basis: list[Vec] = []
        for f in free:
            x = [Fraction(0)] * self.ncols
            x[f] = Fraction(1)
            # back-substitute the pivot variables
            for i in reversed(range(len(pivots))):
                p = pivots[i]
                s = sum((Fraction(ech[i][j]) * x[j] for j in range(p + 1, self.ncols)),
                        Fraction(0))
                x[p] = -s / ech[i][p]
            basis.append(tuple(x))
        return basis

    def det(self) -> Fraction:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        if n == 0:
            return Fraction(1)
        a = [list(row) for row in self.rows]
        sign = 1
        prev = Fraction(1)
        for col in range(n):
            piv = next((i for i in range(col, n) if a[i][col] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                sign = -sign
            for i in range(col + 1, n):
                for j in range(col + 1, n):
                    a[i][j] = (a[i][j] * a[col][col] - a[i][col] * a[col][j]) / prev
                a[i][col] = Fraction(0)
            prev = a[col][col]
        return sign * a[n - 1][n - 1]

    def is_integral_unimodular(self) -> bool:
        """True iff square, all entries integers, and det = ±1."""
        if self.nrows != self.ncols:
            raise ValueError("unimodularity requires a square matrix")
        if any(e.denominator != 1 for row in self.rows for e in row):
            return False
        return abs(self.det()) == 1
