"""Exact integer linear algebra: fraction-free determinants and integer kernels."""

from __future__ import annotations

from typing import Sequence


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by Bareiss elimination.

    Every intermediate quotient is exact, so entries stay bounded by the
    corresponding minors.
    """
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    if any(len(r) != n for r in a):
        raise ValueError("matrix is not square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = None
            for r in range(k + 1, n):
                if a[r][k]:
                    piv = r
                    break
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
            ri[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int | None = None) -> list[list[int]]:
    """Z-basis of ``{v in Z^n : A v = 0}`` for an integer matrix ``A``.

    Column-style Hermite reduction of ``A`` with a tracked unimodular
    transform; the transform columns that map to zero span the kernel.
    """
    m = len(rows)
    n = ncols if ncols is not None else (len(rows[0]) if m else 0)
    A = [list(r) for r in rows]
    # U starts as identity; we apply column operations to A and U together
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def col_op_swap(c1, c2):
        for r in A:
            r[c1], r[c2] = r[c2], r[c1]
        for r in U:
            r[c1], r[c2] = r[c2], r[c1]

    def col_op_add(dst, src, q):
        # column dst -= q * column src
        if q == 0:
            return
        for r in A:
            r[dst] -= q * r[src]
        for r in U:
            r[dst] -= q * r[src]

    def col_neg(c):
        for r in A:
            r[c] = -r[c]
        for r in U:
            r[c] = -r[c]

    pivot_col = 0
    for r in range(m):
        if pivot_col >= n:
            break
        while True:
            nz = [c for c in range(pivot_col, n) if A[r][c] != 0]
            if not nz:
                break
            c_min = min(nz, key=lambda c: (abs(A[r][c]), c))
            col_op_swap(pivot_col, c_min)
            done = True
            for c in range(pivot_col + 1, n):
                if A[r][c]:
                    col_op_add(c, pivot_col, A[r][c] // A[r][pivot_col])
                    if A[r][c]:
                        done = False
            if done:
                break
        if any(A[r][c] for c in range(pivot_col, n)):
            if A[r][pivot_col] < 0:
                col_neg(pivot_col)
            pivot_col += 1
    return [[U[i][c] for i in range(n)] for c in range(pivot_col, n)]


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def transpose(A):
    return [list(r) for r in zip(*A)]
