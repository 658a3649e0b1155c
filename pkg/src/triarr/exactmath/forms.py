"""Homogeneous forms in x, y, z and binary forms in s, t over GF(p).

Monomial order (shared by every module): graded lexicographic with
x > y > z.  For degree k the coefficient vector lists x^i y^j z^l with i
descending, then j descending, so index(i, j) = T(k-i) + (k-i-j) where
T(m) = m(m+1)/2.

Binary forms of degree k store the coefficient of s^(k-e) t^e at
position e.

Internally forms are dense (k+1)x(k+1) arrays ``D[i, j]`` holding the
coefficient of x^i y^j z^(k-i-j); entries with i + j > k are zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np


def n_monomials(k: int) -> int:
    return (k + 1) * (k + 2) // 2


@lru_cache(maxsize=None)
def monomials(k: int) -> tuple[tuple[int, int, int], ...]:
    return tuple((i, j, k - i - j) for i in range(k, -1, -1) for j in range(k - i, -1, -1))


def mono_index(k: int, i: int, j: int) -> int:
    m = k - i
    return m * (m + 1) // 2 + (m - j)


@lru_cache(maxsize=None)
def _mono_arrays(k: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    mons = np.array(monomials(k), dtype=np.int64).reshape(-1, 3)
    return mons[:, 0], mons[:, 1], mons[:, 2]


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class HomForm3:
    """A degree-``degree`` form in x, y, z with coefficients mod ``p``."""

    degree: int
    coeffs: np.ndarray
    p: int

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.int64) % self.p
        if c.shape != (n_monomials(self.degree),):
            raise ValueError(f"degree {self.degree} needs {n_monomials(self.degree)} coefficients")
        object.__setattr__(self, "coeffs", _freeze(c))

    # construction ---------------------------------------------------------
    @classmethod
    def zero(cls, k: int, p: int) -> "HomForm3":
        return cls(k, np.zeros(n_monomials(k), dtype=np.int64), p)

    @classmethod
    def from_dense(cls, D: np.ndarray, p: int) -> "HomForm3":
        k = D.shape[0] - 1
        I, J, _ = _mono_arrays(k)
        return cls(k, D[I, J], p)

    @classmethod
    def from_terms(cls, k: int, terms: dict[tuple[int, int, int], int], p: int) -> "HomForm3":
        c = np.zeros(n_monomials(k), dtype=np.int64)
        for (i, j, l), v in terms.items():
            if i + j + l != k:
                raise ValueError("inhomogeneous term")
            c[mono_index(k, i, j)] = v % p
        return cls(k, c, p)

    @classmethod
    def linear(cls, a: int, b: int, c: int, p: int) -> "HomForm3":
        return cls(1, np.array([a, b, c]), p)

    def dense(self) -> np.ndarray:
        k = self.degree
        D = np.zeros((k + 1, k + 1), dtype=np.int64)
        I, J, _ = _mono_arrays(k)
        D[I, J] = self.coeffs
        return D

    def terms(self) -> dict[tuple[int, int, int], int]:
        return {m: int(c) for m, c in zip(monomials(self.degree), self.coeffs) if c}

    # arithmetic -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def __eq__(self, other) -> bool:
        return (isinstance(other, HomForm3) and self.p == other.p
                and self.degree == other.degree and np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.degree, self.p, self.coeffs.tobytes()))

    def _check(self, other: "HomForm3") -> None:
        if self.p != other.p:
            raise ValueError("forms over different fields")

    def __add__(self, other: "HomForm3") -> "HomForm3":
        self._check(other)
        if self.degree != other.degree:
            if self.is_zero():
                return other
            if other.is_zero():
                return self
            raise ValueError("adding forms of different degrees")
        return HomForm3(self.degree, self.coeffs + other.coeffs, self.p)

    def __neg__(self) -> "HomForm3":
        return HomForm3(self.degree, -self.coeffs, self.p)

    def __sub__(self, other: "HomForm3") -> "HomForm3":
        return self + (-other)

    def scale(self, s: int) -> "HomForm3":
        return HomForm3(self.degree, self.coeffs * (s % self.p) % self.p, self.p)

    def __mul__(self, other: "HomForm3") -> "HomForm3":
        self._check(other)
        p = self.p
        A, B = self.dense(), other.dense()
        ka, kb = self.degree, other.degree
        out = np.zeros((ka + kb + 1, ka + kb + 1), dtype=np.int64)
        ii, jj = np.nonzero(A)
        for i, j in zip(ii, jj):
            out[i:i + kb + 1, j:j + kb + 1] += A[i, j] * B % p
            out[i:i + kb + 1, j:j + kb + 1] %= p
        return HomForm3.from_dense(out, p)

    def __pow__(self, e: int) -> "HomForm3":
        out = HomForm3(0, np.array([1]), self.p)
        for _ in range(e):
            out = out * self
        return out

    def __call__(self, point: Sequence[int]) -> int:
        x, y, z = (int(v) % self.p for v in point)
        p = self.p
        total = 0
        for (i, j, l), c in zip(monomials(self.degree), self.coeffs):
            if c:
                total += int(c) * pow(x, i, p) * pow(y, j, p) * pow(z, l, p)
        return total % p

    def leading(self) -> tuple[int, int]:
        """First nonzero ``(index, coefficient)`` in monomial order."""
        nz = np.flatnonzero(self.coeffs)
        if nz.size == 0:
            raise ValueError("zero form has no leading term")
        return int(nz[0]), int(self.coeffs[nz[0]])

    def divide_linear(self, cov: Sequence[int]) -> tuple["HomForm3", bool]:
        """Divide by the linear form ``cov . (x, y, z)``.

        Returns ``(quotient, exact)``; the quotient is only meaningful when
        ``exact`` is true.
        """
        p = self.p
        cov = [int(c) % p for c in cov]
        piv = max(v for v in range(3) if cov[v])
        inv = pow(cov[piv], p - 2, p)
        k = self.degree
        if k == 0:
            return HomForm3.zero(0, p), self.is_zero()
        # work on a dict of exponent tuples
        rem = {m: int(c) for m, c in zip(monomials(k), self.coeffs) if c}
        quo: dict[tuple[int, int, int], int] = {}
        unit = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        for e in range(k, 0, -1):
            for m in [m for m in rem if m[piv] == e]:
                c = rem.pop(m) * inv % p
                if not c:
                    continue
                qm = tuple(m[v] - (v == piv) for v in range(3))
                quo[qm] = (quo.get(qm, 0) + c) % p
                for v in range(3):
                    if v != piv and cov[v]:
                        t = tuple(qm[w] + unit[v][w] for w in range(3))
                        rem[t] = (rem.get(t, 0) - c * cov[v]) % p
                        if not rem[t]:
                            del rem[t]
        exact = not any(rem.values())
        return HomForm3.from_terms(k - 1, quo, p), exact

    def restrict(self, line: Sequence[int]) -> "BinForm":
        return restrict_to_line(self, line)

    def compose(self, M: Sequence[Sequence[int]]) -> "HomForm3":
        """Linear change of variables: old variable v becomes sum_j M[v][j] X_j."""
        p, k = self.p, self.degree
        pw = []
        for row in M:
            lin = HomForm3.linear(*row, p)
            seq = [HomForm3(0, np.array([1]), p)]
            for _ in range(k):
                seq.append(seq[-1] * lin)
            pw.append(seq)
        out = HomForm3.zero(k, p)
        for (i, j, l), c in zip(monomials(k), self.coeffs):
            if c:
                out = out + (pw[0][i] * pw[1][j] * pw[2][l]).scale(int(c))
        return out

    def __repr__(self) -> str:
        return f"HomForm3(deg={self.degree}, p={self.p}, terms={self.terms()})"


@dataclass(frozen=True, eq=False)
class BinForm:
    """Binary form; ``coeffs[e]`` multiplies s^(degree-e) t^e."""

    degree: int
    coeffs: np.ndarray
    p: int

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.int64) % self.p
        if c.shape != (self.degree + 1,):
            raise ValueError("binary form length must be degree + 1")
        object.__setattr__(self, "coeffs", _freeze(c))

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def __eq__(self, other) -> bool:
        return (isinstance(other, BinForm) and self.p == other.p
                and self.degree == other.degree and np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.degree, self.p, self.coeffs.tobytes()))

    def __mul__(self, other: "BinForm") -> "BinForm":
        out = np.zeros(self.degree + other.degree + 1, dtype=np.int64)
        for e, c in enumerate(self.coeffs):
            if c:
                out[e:e + other.degree + 1] = (out[e:e + other.degree + 1] + c * other.coeffs) % self.p
        return BinForm(self.degree + other.degree, out, self.p)

    def zeros(self) -> list[tuple[int, int]]:
        """Distinct projective zeros ``(s:t)`` in GF(p), normalized."""
        from . import univariate as uv

        if self.is_zero():
            raise ValueError("zero binary form vanishes everywhere")
        p = self.p
        out = []
        # t = 1 chart: f(s, 1) = sum_e c_e s^(k-e)
        affine = [int(c) for c in self.coeffs[::-1]]
        out = [(r, 1) for r in uv.roots(affine, p)]
        if self.coeffs[0] == 0:  # s^k coefficient vanishes => (1:0) is a zero
            out.append((1, 0))
        return out


def line_parametrization(line: Sequence[int], p: int) -> tuple[int, list[tuple[int, int]]]:
    """Parametrize the line ``a x + b y + c z = 0``.

    The pivot is the variable of largest index with nonzero coefficient;
    the other two variables, in index order, become ``s`` and ``t``.
    Returns ``(pivot, coords)`` where ``coords[v] = (coef_s, coef_t)``
    expresses variable ``v`` as a linear form in s, t.
    """
    cov = [int(c) % p for c in line]
    if not any(cov):
        raise ValueError("zero linear form")
    piv = max(v for v in range(3) if cov[v])
    others = [v for v in range(3) if v != piv]
    coords: list[tuple[int, int]] = [(0, 0)] * 3
    coords[others[0]] = (1, 0)
    coords[others[1]] = (0, 1)
    inv = pow(cov[piv], p - 2, p)
    coords[piv] = ((-cov[others[0]] * inv) % p, (-cov[others[1]] * inv) % p)
    return piv, coords


def point_on_line(line: Sequence[int], st: tuple[int, int], p: int) -> tuple[int, int, int]:
    """Map parameters ``(s:t)`` back to a point of the plane."""
    _, coords = line_parametrization(line, p)
    s, t = st
    return tuple((cs * s + ct * t) % p for cs, ct in coords)


def line_params_of(line: Sequence[int], point: Sequence[int], p: int) -> tuple[int, int]:
    """Inverse of :func:`point_on_line` for a point lying on the line."""
    piv, _ = line_parametrization(line, p)
    others = [v for v in range(3) if v != piv]
    return int(point[others[0]]) % p, int(point[others[1]]) % p


def restrict_to_line(F: HomForm3, line: Sequence[int]) -> BinForm:
    """Substitute the parametrization of ``line`` into ``F``."""
    p, k = F.p, F.degree
    _, coords = line_parametrization(line, p)
    # powers of each coordinate as binary forms
    pw = []
    for cs, ct in coords:
        lin = BinForm(1, np.array([cs, ct]), p)
        seq = [BinForm(0, np.array([1]), p)]
        for _ in range(k):
            seq.append(seq[-1] * lin)
        pw.append(seq)
    out = np.zeros(k + 1, dtype=np.int64)
    for (i, j, l), c in zip(monomials(k), F.coeffs):
        if c:
            term = pw[0][i] * pw[1][j] * pw[2][l]
            out = (out + int(c) * term.coeffs) % p
    return BinForm(k, out, p)
