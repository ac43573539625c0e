"""Exact integer and rational linear algebra.

Everything here works on Python ints and :class:`fractions.Fraction`, so
there is no overflow and no rounding.  Matrices are small (at most 15x15
in the pipelines), which keeps the textbook algorithms fast enough.
"""

from __future__ import annotations

import operator

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

RatVector = tuple  # tuple[Fraction, ...]


def as_ratvector(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        for x in self.entries:
            if not isinstance(x, int) or isinstance(x, bool):
                raise TypeError(f"matrix entries must be int, got {type(x).__name__}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        # operator.index accepts int-like values (numpy ints) but not floats
        return cls(len(rows), cols,
                   tuple(x if isinstance(x, bool) else operator.index(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def tolist(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_rows(
            [self.col(j) for j in range(self.cols)], cols=self.rows
        )

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i)
        )

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = [other.col(j) for j in range(other.cols)]
        return IntMatrix.from_rows(
            [[sum(a * b for a, b in zip(self.row(i), c)) for c in cols]
             for i in range(self.rows)],
            cols=other.cols,
        )

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> IntMatrix:
        return IntMatrix.from_rows([[self[i, j] for j in cols] for i in rows], cols=len(cols))


def _as_matrix(m) -> IntMatrix:
    if isinstance(m, IntMatrix):
        return m
    return IntMatrix.from_rows(m)


@dataclass(frozen=True)
class SnfResult:
    """``left @ m @ right`` is diagonal with ``elementary_divisors`` on it."""

    elementary_divisors: tuple[int, ...]
    left_transform: IntMatrix
    right_transform: IntMatrix

    def diagonal(self) -> IntMatrix:
        rows, cols = self.left_transform.rows, self.right_transform.cols
        d = [[0] * cols for _ in range(rows)]
        for k, v in enumerate(self.elementary_divisors):
            d[k][k] = v
        return IntMatrix.from_rows(d, cols=cols)


def smith_normal_form(m) -> SnfResult:
    """Smith normal form with unimodular transforms.

    Returns divisors ``d_1 | d_2 | ...`` (nonnegative, length
    ``min(rows, cols)``, zeros last) together with ``U`` and ``V`` such that
    ``U @ m @ V`` is the diagonal matrix of divisors.
    """
    m = _as_matrix(m)
    nr, nc = m.shape
    a = m.tolist()
    u = IntMatrix.identity(nr).tolist()
    v = IntMatrix.identity(nc).tolist()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):
        # row[dst] += k * row[src]
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):
        for r in a:
            r[dst] += k * r[src]
        for r in v:
            r[dst] += k * r[src]

    for t in range(min(nr, nc)):
        while True:
            # smallest nonzero entry of the trailing block becomes the pivot
            pivot = None
            for i in range(t, nr):
                for j in range(t, nc):
                    if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, nc):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    divisors = tuple(a[k][k] for k in range(min(nr, nc)))
    return SnfResult(divisors, IntMatrix.from_rows(u, cols=nr), IntMatrix.from_rows(v, cols=nc))


def determinant(m) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    m = _as_matrix(m)
    if not m.is_square:
        raise ValueError(f"determinant needs a square matrix, got {m.shape}")
    n = m.rows
    if n == 0:
        return 1
    a = m.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _echelon(a: list[list[int]], ncols: int | None = None) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form of ``a`` (modified in place).

    Only the first ``ncols`` columns are used for pivots.  Returns the
    reduced rows and the pivot column of each nonzero row.
    """
    if not a:
        return a, []
    if ncols is None:
        ncols = len(a[0])
    nr = len(a)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nr:
            break
        sel = next((i for i in range(r, nr) if a[i][c]), None)
        if sel is None:
            continue
        a[r], a[sel] = a[sel], a[r]
        for i in range(r + 1, nr):
            if a[i][c]:
                f, g = a[r][c], a[i][c]
                a[i] = [f * x - g * y for x, y in zip(a[i], a[r])]
                # keep entries small; any common factor of the row can go
                h = gcd(*a[i])
                if h > 1:
                    a[i] = [x // h for x in a[i]]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m) -> int:
    m = _as_matrix(m)
    _, pivots = _echelon(m.tolist(), m.cols)
    return len(pivots)


@dataclass(frozen=True)
class SolveResult:
    consistent: bool
    solution: tuple[Fraction, ...] | None
    rank: int
    augmented_rank: int


def solve_rational(a, b: Sequence) -> SolveResult:
    """Decide whether ``a @ x = b`` has a rational solution and return one.

    The verdict compares rank(a) with rank(a|b) after fraction-free
    elimination.  When consistent, free variables are set to zero.
    """
    a = _as_matrix(a)
    b = as_ratvector(b)
    if a.rows != len(b):
        raise ValueError(f"system has {a.rows} rows but right-hand side has {len(b)} entries")
    den = 1
    for x in b:
        den = den * x.denominator // gcd(den, x.denominator)
    aug = [list(a.row(i)) + [int(b[i] * den)] for i in range(a.rows)]
    ech, pivots = _echelon(aug, a.cols)
    r = len(pivots)
    consistent = all(row[-1] == 0 for row in ech[r:])
    aug_rank = r if consistent else r + 1
    if not consistent:
        return SolveResult(False, None, r, aug_rank)
    # back substitution on integer numerators over a shared denominator dd
    xn = [0] * a.cols
    dd = 1
    for k in range(r - 1, -1, -1):
        row, c = ech[k], pivots[k]
        s = row[-1] * dd - sum(row[j] * xn[j] for j in range(c + 1, a.cols))
        p = row[c]
        if p < 0:
            p, s = -p, -s
        xn = [v * p for v in xn]
        dd *= p
        xn[c] = s
        h = gcd(dd, *xn)
        if h > 1:
            xn = [v // h for v in xn]
            dd //= h
    sol = tuple(Fraction(v, dd * den) for v in xn)
    return SolveResult(True, sol, r, aug_rank)


def row_basis(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Basis of the Z-module spanned by integer ``rows`` (Hermite-style).

    Uses extended-gcd row operations, so the span over Z is preserved
    exactly (plain fraction-free elimination would only preserve the span
    over Q).
    """
    a = [list(r) for r in rows if any(r)]
    if not a:
        return []
    ncols = len(a[0])
    out = []
    for c in range(ncols):
        live = [r for r in a if r[c]]
        rest = [r for r in a if not r[c]]
        if not live:
            continue
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[c]))
            p = live[0]
            nxt = [p]
            for r in live[1:]:
                q = r[c] // p[c]
                r = [x - q * y for x, y in zip(r, p)]
                if r[c]:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            live = nxt
        p = live[0]
        if p[c] < 0:
            p = [-x for x in p]
        out.append(p)
        a = rest
    return out


def inertia(m) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric integer matrix.

    Exact symmetric elimination by congruence, so Sylvester's law of
    inertia applies directly.
    """
    m = _as_matrix(m)
    if not m.is_symmetric():
        raise ValueError("inertia needs a symmetric matrix")
    a = [[Fraction(x) for x in r] for r in m.tolist()]
    n = len(a)
    pos = neg = 0
    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                a[k], a[j] = a[j], a[k]
                for r in a:
                    r[k], r[j] = r[j], r[k]
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    # index k is decoupled from the rest: a null direction
                    continue
                a[k] = [x + y for x, y in zip(a[k], a[j])]
                for r in a:
                    r[k] += r[j]
        p = a[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            f = a[i][k] / p
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
                for r in a:
                    r[i] -= f * r[k]
    return pos, neg, n - pos - neg
