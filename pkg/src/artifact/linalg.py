"""Exact linear algebra over the rationals on plain nested lists."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Matrix = list[list[Fraction]]


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(size: int) -> Matrix:
    m = zeros(size, size)
    for i in range(size):
        m[i][i] = Fraction(1)
    return m


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]], inner: int | None = None) -> Matrix:
    rows = len(a)
    cols = len(b[0]) if b else 0
    k = len(b) if inner is None else inner
    out = zeros(rows, cols)
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if x:
                bt = b[t]
                for j in range(cols):
                    if bt[j]:
                        oi[j] += x * bt[j]
    return out


def transpose(a: Sequence[Sequence[Fraction]], cols: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*a)]


def integer_row(row: Sequence[Fraction]) -> list[int]:
    """Scale a rational row to integers (same row space)."""
    den = 1
    for x in row:
        if x:
            den = lcm(den, Fraction(x).denominator)
    return [int(Fraction(x) * den) for x in row]


def rank_bareiss(rows: Sequence[Sequence[int]], ncols: int) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    work = [list(r) for r in rows if any(r)]
    rank = 0
    prev = 1
    col = 0
    while rank < len(work) and col < ncols:
        pivot = next((r for r in range(rank, len(work)) if work[r][col]), None)
        if pivot is None:
            col += 1
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        p = work[rank][col]
        prow = work[rank]
        for r in range(rank + 1, len(work)):
            row = work[r]
            f = row[col]
            if f:
                work[r] = [(p * row[j] - f * prow[j]) // prev for j in range(ncols)]
            else:
                work[r] = [(p * row[j]) // prev for j in range(ncols)]
        prev = p
        rank += 1
        col += 1
        work = work[:rank] + [r for r in work[rank:] if any(r)]
    return rank


def rank(a: Sequence[Sequence[Fraction]], ncols: int) -> int:
    return rank_bareiss([integer_row(r) for r in a], ncols)


def nullspace(a: Sequence[Sequence[Fraction]], ncols: int) -> Matrix:
    """Basis (as rows) of {x : a x = 0}, by reduced row echelon form."""
    m = [[Fraction(x) for x in r] for r in a]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in enumerate(pivots):
            v[pc] = -m[row][fc]
        basis.append(v)
    return basis


def left_nullspace(a: Sequence[Sequence[Fraction]], nrows: int, ncols: int) -> Matrix:
    """Basis (as rows) of {y : y a = 0} for an nrows x ncols matrix a."""
    at = [[a[i][j] for i in range(nrows)] for j in range(ncols)]
    return nullspace(at, nrows)
