"""Exact linear algebra over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def echelon(rows: Sequence[Sequence[int | Fraction]]) -> tuple[int, list[int]]:
    """Rank and pivot columns by exact row reduction."""
    a = [[Fraction(x) for x in r] for r in rows]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    r = 0
    pivots = []
    for c in range(nc):
        p = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        for i in range(r + 1, nr):
            if a[i][c] != 0:
                fac = a[i][c] / a[r][c]
                a[i] = [x - fac * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return r, pivots


def rank(rows: Sequence[Sequence[int | Fraction]]) -> int:
    return echelon(rows)[0]


def determinant(rows: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    n = len(rows)
    a = [list(map(int, r)) for r in rows]
    sign = 1
    prev = 1
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                a[i][j] = (a[i][j] * a[c][c] - a[i][c] * a[c][j]) // prev
            a[i][c] = 0
        prev = a[c][c]
    return sign * prev


def solve(matrix: Sequence[Sequence[int | Fraction]], rhs: Sequence[int | Fraction]) -> list[Fraction]:
    """Solve a square non-singular system exactly by Gauss-Jordan elimination."""
    n = len(matrix)
    if len(rhs) != n or any(len(r) != n for r in matrix):
        raise ValueError("solve needs a square system with a matching right-hand side")
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            raise ValueError("singular system")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                fac = a[i][c]
                a[i] = [x - fac * y for x, y in zip(a[i], a[c])]
    return [row[n] for row in a]
