"""Dense linear algebra over GF(p) on numpy int64 residues.

All moduli must stay below 2**31 so that a product of two residues fits
in a signed 64-bit integer before reduction.
"""

from __future__ import annotations

import numpy as np

MAX_MODULUS = 1 << 31


def as_fp(M, p: int) -> np.ndarray:
    if p >= MAX_MODULUS:
        raise ValueError(f"modulus {p} too large for int64 elimination")
    A = np.array(M, dtype=np.int64, copy=True)
    if A.ndim == 1:
        A = A.reshape(1, -1)
    return A % p


def rref(M, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod ``p`` and the pivot columns."""
    R = as_fp(M, p)
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        inv = pow(int(R[r, c]), p - 2, p)
        R[r] = R[r] * inv % p
        col = R[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            R[hit] = (R[hit] - np.outer(col[hit], R[r])) % p
        pivots.append(c)
        r += 1
    return R[:r], pivots


def rank(M, p: int) -> int:
    """Rank mod ``p``; eliminates below the pivot only."""
    R = as_fp(M, p)
    rows, cols = R.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        inv = pow(int(R[r, c]), p - 2, p)
        R[r] = R[r] * inv % p
        below = r + 1 + np.flatnonzero(R[r + 1:, c])
        if below.size:
            R[below] = (R[below] - np.outer(R[below, c], R[r])) % p
        r += 1
    return r


def kernel(M, p: int, cols: int | None = None) -> np.ndarray:
    """Basis of the right null space mod ``p``, one vector per row.

    The basis is the canonical one read off the reduced echelon form: the
    vector for free column ``f`` has a 1 in position ``f`` and zeros in the
    other free positions.
    """
    A = np.asarray(M)
    if A.size == 0:
        n = cols if cols is not None else (A.shape[1] if A.ndim == 2 else 0)
        return np.eye(n, dtype=np.int64)
    R, pivots = rref(A, p)
    n = R.shape[1]
    pivset = set(pivots)
    free = [c for c in range(n) if c not in pivset]
    K = np.zeros((len(free), n), dtype=np.int64)
    for idx, f in enumerate(free):
        K[idx, f] = 1
        for r, c in enumerate(pivots):
            K[idx, c] = (-R[r, f]) % p
    return K


def det(M, p: int) -> int:
    """Determinant mod ``p`` of a square matrix."""
    R = as_fp(M, p)
    n = R.shape[0]
    if R.shape != (n, n):
        raise ValueError("det of a non-square matrix")
    d = 1
    for c in range(n):
        nz = np.flatnonzero(R[c:, c])
        if nz.size == 0:
            return 0
        piv = c + int(nz[0])
        if piv != c:
            R[[c, piv]] = R[[piv, c]]
            d = -d
        pc = int(R[c, c])
        d = d * pc % p
        inv = pow(pc, p - 2, p)
        below = c + 1 + np.flatnonzero(R[c + 1:, c])
        if below.size:
            f = R[below, c] * inv % p
            R[below] = (R[below] - np.outer(f, R[c])) % p
    return d % p


def matmul(A, B, p: int) -> np.ndarray:
    """Product mod ``p`` without int64 overflow for long inner dimensions."""
    A = as_fp(A, p)
    B = as_fp(B, p)
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    # 2**62 / p**2 terms can be accumulated before reducing
    step = max(1, (1 << 62) // (p * p))
    for s in range(0, A.shape[1], step):
        out = (out + A[:, s:s + step] @ B[s:s + step]) % p
    return out
