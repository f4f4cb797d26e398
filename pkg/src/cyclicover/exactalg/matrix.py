"""Integer and Laurent-polynomial matrices.

Matrices are plain row-major lists of lists; :class:`LaurentMatrix` wraps a
grid of :class:`LaurentPoly` with its shape so that empty matrices keep
their column count.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Sequence

from .laurent import LaurentPoly, laurent_gcd, laurent_normalize, poly_exact_div

__all__ = [
    "IntMatrix",
    "LaurentMatrix",
    "SizeLimitError",
    "SmithForm",
    "smith_normal_form",
    "int_det",
    "laurent_det",
    "minors_gcd",
    "minor_size_limit",
]

IntMatrix = list  # list[list[int]]

DEFAULT_MINOR_LIMIT = 12


class SizeLimitError(RuntimeError):
    """Raised when an enumeration would exceed the configured size cap."""


def minor_size_limit() -> int:
    raw = os.environ.get("CYCLICOVER_SIZE_LIMIT")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise ValueError(f"CYCLICOVER_SIZE_LIMIT must be an integer, got {raw!r}") from None
    return DEFAULT_MINOR_LIMIT


# ---------------------------------------------------------------------------
# Smith normal form

@dataclass(frozen=True)
class SmithForm:
    diagonal: tuple[int, ...]
    rank: int
    rows: int
    cols: int

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d > 1)

    def cokernel_generators(self) -> int:
        """Minimal number of generators of Z^cols / (row space)."""
        return (self.cols - self.rank) + len(self.torsion)

    def cokernel(self) -> tuple[int, tuple[int, ...]]:
        """(free rank, torsion invariant factors) of the cokernel."""
        return self.cols - self.rank, self.torsion


def smith_normal_form(M: Sequence[Sequence[int]], cols: int | None = None) -> SmithForm:
    """Invariant factors d1 | d2 | ... of an integer matrix.

    ``cols`` must be given when ``M`` has no rows.
    """
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if m else (cols or 0)
    if cols is not None and m and cols != n:
        raise ValueError("column count mismatch")
    diag: list[int] = []
    top = 0
    while top < min(m, n):
        # pivot: smallest nonzero absolute entry in the trailing block
        best = None
        for i in range(top, m):
            for j in range(top, n):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        A[top], A[pi] = A[pi], A[top]
        for row in A:
            row[top], row[pj] = row[pj], row[top]
        while True:
            p = A[top][top]
            done = True
            for i in range(top + 1, m):
                if A[i][top]:
                    q = A[i][top] // p
                    if q:
                        Ai, At = A[i], A[top]
                        for j in range(top, n):
                            Ai[j] -= q * At[j]
                    if A[i][top]:
                        done = False
            for j in range(top + 1, n):
                if A[top][j]:
                    q = A[top][j] // p
                    if q:
                        for i in range(top, m):
                            A[i][j] -= q * A[i][top]
                    if A[top][j]:
                        done = False
            if done:
                # divisibility of the remaining block by the pivot
                bad = None
                for i in range(top + 1, m):
                    for j in range(top + 1, n):
                        if A[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                At, Ab = A[top], A[bad]
                for j in range(top, n):
                    At[j] += Ab[j]
                continue
            # move the smallest remaining entry of row/col `top` into the pivot
            best = (abs(p), top, top)
            for i in range(top + 1, m):
                v = A[i][top]
                if v and abs(v) < best[0]:
                    best = (abs(v), i, top)
            for j in range(top + 1, n):
                v = A[top][j]
                if v and abs(v) < best[0]:
                    best = (abs(v), top, j)
            _, pi, pj = best
            A[top], A[pi] = A[pi], A[top]
            for row in A:
                row[top], row[pj] = row[pj], row[top]
        diag.append(abs(A[top][top]))
        top += 1
    rank = len(diag)
    diag.extend([0] * (min(m, n) - rank))
    return SmithForm(tuple(diag), rank, m, n)


def int_det(M: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by Bareiss elimination."""
    A = [list(row) for row in M]
    n = len(A)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Laurent matrices

@dataclass(frozen=True)
class LaurentMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[LaurentPoly, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[LaurentPoly]], cols: int | None = None) -> LaurentMatrix:
        grid = tuple(tuple(r) for r in rows)
        ncols = len(grid[0]) if grid else (cols or 0)
        return cls(len(grid), ncols, grid)

    @classmethod
    def diagonal(cls, entries: Sequence[LaurentPoly]) -> LaurentMatrix:
        n = len(entries)
        z = LaurentPoly.zero()
        return cls.from_rows([[entries[i] if i == j else z for j in range(n)] for i in range(n)], n)

    def __getitem__(self, idx: tuple[int, int]) -> LaurentPoly:
        i, j = idx
        return self.entries[i][j]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> LaurentMatrix:
        return LaurentMatrix.from_rows([[self.entries[i][j] for j in cols] for i in rows], len(cols))

    def delete_column(self, j: int) -> LaurentMatrix:
        keep = [c for c in range(self.cols) if c != j]
        return self.submatrix(range(self.rows), keep)

    def evaluate(self, value: int) -> list[list]:
        return [[p(value) for p in row] for row in self.entries]

    def to_json(self) -> list:
        return [[p.to_json() for p in row] for row in self.entries]

    def __str__(self) -> str:
        return "\n".join("[ " + ", ".join(str(p) for p in row) + " ]" for row in self.entries)


def _det_cofactor(M: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    n = len(M)
    if n == 0:
        return LaurentPoly.one()
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = LaurentPoly.zero()
    for j in range(n):
        if M[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def _det_bareiss(M: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    n = len(M)
    shift = 0
    A: list[list[LaurentPoly]] = []
    for row in M:
        lows = [p.low for p in row if p.coeffs]
        if not lows:
            return LaurentPoly.zero()
        lo = min(lows)
        shift += lo
        A.append([p.shift(-lo) for p in row])
    sign = 1
    prev = LaurentPoly.one()
    for k in range(n - 1):
        if A[k][k].is_zero():
            for i in range(k + 1, n):
                if not A[i][k].is_zero():
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return LaurentPoly.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = poly_exact_div(A[i][j] * A[k][k] - A[i][k] * A[k][j], prev)
        prev = A[k][k]
    return A[n - 1][n - 1].shift(shift).scale(sign)


def laurent_det(M: LaurentMatrix | Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Exact determinant over Z[t^{+-1}].

    Rows are shifted to min degree 0 and reduced by fraction-free elimination
    over Z[t]; small matrices use cofactor expansion.
    """
    grid = M.entries if isinstance(M, LaurentMatrix) else M
    n = len(grid)
    if any(len(r) != n for r in grid):
        raise ValueError("determinant of a non-square matrix")
    if n <= 3:
        return _det_cofactor([list(r) for r in grid])
    return _det_bareiss(grid)


def minors_gcd(M: LaurentMatrix, k: int) -> LaurentPoly:
    """Normalized gcd of all k x k minors of ``M``.

    k = 0 gives 1; k beyond the matrix shape gives 0.  Matrices with a side
    longer than the size cap (``CYCLICOVER_SIZE_LIMIT``, default 12) are refused.
    """
    if k < 0:
        raise ValueError("minor size must be nonnegative")
    if k == 0:
        return LaurentPoly.one()
    if k > min(M.rows, M.cols):
        return LaurentPoly.zero()
    limit = minor_size_limit()
    if M.rows > limit or M.cols > limit:
        raise SizeLimitError(
            f"minor enumeration on a {M.rows}x{M.cols} matrix exceeds the {limit}x{limit} limit"
        )
    g = LaurentPoly.zero()
    for rows in combinations(range(M.rows), k):
        for cols in combinations(range(M.cols), k):
            d = laurent_det([[M.entries[i][j] for j in cols] for i in rows])
            if d.is_zero():
                continue
            g = laurent_gcd(g, d)
            if g.is_unit():
                return LaurentPoly.one()
    return laurent_normalize(g)


def int_gcd_all(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
