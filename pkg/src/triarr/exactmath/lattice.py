"""Integer lattices: Hermite normal form and exact integer kernels.

Matrices are plain lists of lists of Python ints so nothing overflows.
"""

from __future__ import annotations

from typing import Sequence

IntMatrix = list[list[int]]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def hnf_rows(rows: Sequence[Sequence[int]]) -> IntMatrix:
    """Row-style Hermite normal form; zero rows are dropped.

    Pivots are positive and the entries above each pivot are reduced into
    ``[0, pivot)``.  Two generating sets span the same lattice iff their
    HNFs coincide.
    """
    A = [list(r) for r in rows]
    if not A:
        return []
    ncols = len(A[0])
    out: IntMatrix = []
    r = 0
    for c in range(ncols):
        live = [i for i in range(r, len(A)) if A[i][c]]
        if not live:
            continue
        # gcd-combine everything into row r
        if live[0] != r:
            A[r], A[live[0]] = A[live[0]], A[r]
        for i in range(r + 1, len(A)):
            b = A[i][c]
            if not b:
                continue
            a = A[r][c]
            g, s, t = xgcd(a, b)
            ra, rb = A[r], A[i]
            A[r] = [s * x + t * y for x, y in zip(ra, rb)]
            A[i] = [(a // g) * y - (b // g) * x for x, y in zip(ra, rb)]
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
        piv = A[r][c]
        for i in range(r):
            q = A[i][c] // piv
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], A[r])]
        r += 1
    out = [row for row in A[:r]]
    return out


def integer_kernel(M: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
    """Basis of the lattice ``{v in Z^n : M v = 0}``.

    Returned as a list of basis vectors (the columns of a kernel matrix,
    stored as rows), put in Hermite normal form so the output is canonical.
    """
    n = ncols if ncols is not None else (len(M[0]) if M else 0)
    A = [list(r) for r in M]
    U = [[int(i == j) for j in range(n)] for i in range(n)]  # rows of U^T

    def col_op(c: int, j: int, s: int, t: int, u: int, v: int) -> None:
        # (col_c, col_j) <- (s*col_c + t*col_j, u*col_c + v*col_j)
        for row in A:
            x, y = row[c], row[j]
            row[c], row[j] = s * x + t * y, u * x + v * y
        x, y = U[c], U[j]
        U[c] = [s * a + t * b for a, b in zip(x, y)]
        U[j] = [u * a + v * b for a, b in zip(x, y)]

    c = 0
    for row in A:
        if c == n:
            break
        for j in range(c + 1, n):
            b = row[j]
            if not b:
                continue
            a = row[c]
            g, s, t = xgcd(a, b)
            col_op(c, j, s, t, -(b // g), a // g)
        if row[c]:
            c += 1
    return hnf_rows(U[c:])


def in_lattice(v: Sequence[int], basis: Sequence[Sequence[int]]) -> bool:
    """Whether ``v`` is an integer combination of ``basis`` rows."""
    if not basis:
        return not any(v)
    H = hnf_rows(basis)
    w = list(v)
    for row in H:
        c = next(i for i, x in enumerate(row) if x)
        q, r = divmod(w[c], row[c])
        if r:
            return False
        w = [x - q * y for x, y in zip(w, row)]
    return not any(w)


def matvec(M: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, v)) for row in M]


def diagonalize(M: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[list[int], IntMatrix]:
    """Unimodular U, W with U M W diagonal; returns the diagonal and W.

    The diagonal is not normalized into a divisibility chain (callers only
    need U M W diagonal).  Solutions of M x = 0 mod n are then x = W y with
    d_i y_i = 0 mod n.
    """
    A = [list(r) for r in M]
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    m = len(A)
    W = [[int(i == j) for j in range(n)] for i in range(n)]
    diag: list[int] = []
    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        A[t], A[i] = A[i], A[t]
        if j != t:
            for row in A:
                row[t], row[j] = row[j], row[t]
            for row in W:
                row[t], row[j] = row[j], row[t]
        done = False
        while not done:
            done = True
            piv = A[t][t]
            for j in range(t + 1, n):
                q = A[t][j] // piv
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                    for row in W:
                        row[j] -= q * row[t]
                if A[t][j]:
                    done = False
            for i in range(t + 1, m):
                q = A[i][t] // piv
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                if A[i][t]:
                    done = False
            if not done:
                # move the smallest remaining entry of row/column t to the pivot
                cand = [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
                cand += [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                _, i, j = min(cand)
                A[t], A[i] = A[i], A[t]
                if j != t:
                    for row in A:
                        row[t], row[j] = row[j], row[t]
                    for row in W:
                        row[t], row[j] = row[j], row[t]
        diag.append(A[t][t])
        t += 1
    return diag, W
