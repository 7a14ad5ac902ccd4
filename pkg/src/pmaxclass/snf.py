"""Smith normal form of small integer matrices, with unimodular transforms."""
from __future__ import annotations

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def smith_normal_form(M: Matrix) -> tuple[list[int], Matrix, Matrix, Matrix]:
    """Return ``(diag, U, U_inv, V)`` with ``U @ M @ V`` diagonal, each entry dividing the next.

    ``U`` and ``V`` are unimodular and ``U_inv`` is the exact inverse of ``U``.
    """
    A = [list(map(int, row)) for row in M]
    r = len(A)
    c = len(A[0]) if r else 0
    U, Ui, V = identity(r), identity(r), identity(c)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for row in Ui:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]
        for row in Ui:
            row[src] -= q * row[dst]

    def negate_row(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]
        for row in Ui:
            row[i] = -row[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(r, c)):
        while True:
            nonzero = [(abs(A[i][j]), i, j) for i in range(t, r) for j in range(t, c) if A[i][j]]
            if not nonzero:
                break
            _, i, j = min(nonzero)
            swap_rows(t, i)
            swap_cols(t, j)
            clean = True
            for i in range(t + 1, r):
                q = A[i][t] // A[t][t]
                if q:
                    add_row(i, t, -q)
                clean &= A[i][t] == 0
            for j in range(t + 1, c):
                q = A[t][j] // A[t][t]
                if q:
                    add_col(j, t, -q)
                clean &= A[t][j] == 0
            if not clean:
                continue
            bad = [i for i in range(t + 1, r) for j in range(t + 1, c) if A[i][j] % A[t][t]]
            if not bad:
                break
            add_row(t, bad[0], 1)
        if t < r and t < c and A[t][t] < 0:
            negate_row(t)
    diag = [A[i][i] for i in range(min(r, c))]
    return diag, U, Ui, V
