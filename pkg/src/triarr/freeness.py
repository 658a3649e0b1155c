"""Logarithmic derivations of an RUA over prime fields.

Everything here is exact linear algebra over GF(p) for primes p = 1 mod n,
where the chosen n-th root of unity realizes the arrangement.  Freeness is
decided per prime: a Saito certificate proves freeness over that field, and
reports list each prime separately.  Agreement over two large primes is
taken as evidence for characteristic 0, not as a proof.

Degree conventions: D(A)_k is the space of derivations P dx + Q dy + R dz
with P, Q, R forms of degree k tangent to every line.  The Euler
derivation lives in degree 1, and h0(k) = dim D(A)_k - C(k+1, 2) counts
sections modulo Euler multiples.  A free arrangement with exponents
(e1, e2) has h0(k) = C(k-e1+2, 2) + C(k-e2+2, 2).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Sequence

import numpy as np

from . import combinatorics as cb
from .arrangement import RUA, Line, concrete_equation
from .errors import InvariantViolation, LineNotPresent, ModulusMismatch
from .exactmath import HomForm3, PrimeField, find_field, kernel, n_monomials, rank
from .exactmath import univariate as uv
from .exactmath.forms import BinForm, line_parametrization, monomials, point_on_line
from .exactmath.linalg import det as det_fp
from .exactmath.linalg import matmul

FIELD_BASE = 1 << 20


def fields_for(n: int, primes: int = 2) -> list[PrimeField]:
    """The fields used by :func:`classify`: smallest suitable primes above i * 2^20."""
    return [find_field(n, FIELD_BASE * i) for i in range(1, primes + 1)]


def _check_field(A: RUA, F: PrimeField) -> None:
    if F.n != A.n:
        raise ModulusMismatch(f"field has n={F.n}, arrangement has n={A.n}")


def normalize_point(q: Sequence[int], p: int) -> tuple[int, int, int]:
    """Scale so the first nonzero coordinate is 1."""
    q = [int(v) % p for v in q]
    lead = next(v for v in q if v)
    inv = pow(lead, p - 2, p)
    return tuple(v * inv % p for v in q)


def _comb0(n: int, k: int) -> int:
    return comb(n, k) if n >= k >= 0 else 0


def free_h0(k: int, e1: int, e2: int) -> int:
    """h0(k) predicted by a free module with generators in degrees e1, e2."""
    return _comb0(k - e1 + 2, 2) + _comb0(k - e2 + 2, 2)


# ---------------------------------------------------------------------------
# derivations


@dataclass(frozen=True, eq=False)
class Derivation:
    """P dx + Q dy + R dz with forms of a common degree."""

    P: HomForm3
    Q: HomForm3
    R: HomForm3

    @property
    def degree(self) -> int:
        return self.P.degree

    @property
    def p(self) -> int:
        return self.P.p

    @classmethod
    def from_vector(cls, v: np.ndarray, k: int, p: int) -> "Derivation":
        m = n_monomials(k)
        return cls(HomForm3(k, v[:m], p), HomForm3(k, v[m:2 * m], p), HomForm3(k, v[2 * m:], p))

    @classmethod
    def euler(cls, p: int) -> "Derivation":
        return cls(HomForm3.linear(1, 0, 0, p), HomForm3.linear(0, 1, 0, p),
                   HomForm3.linear(0, 0, 1, p))

    def vector(self) -> np.ndarray:
        return np.concatenate([self.P.coeffs, self.Q.coeffs, self.R.coeffs])

    def components(self) -> tuple[HomForm3, HomForm3, HomForm3]:
        return (self.P, self.Q, self.R)

    def apply_linear(self, cov: Sequence[int]) -> HomForm3:
        """theta(L) for the linear form L = cov . (x, y, z)."""
        p = self.p
        out = HomForm3.zero(self.degree, p)
        for c, comp in zip(cov, self.components()):
            if c % p:
                out = out + comp.scale(c)
        return out

    def minors(self) -> tuple[HomForm3, HomForm3, HomForm3]:
        """2x2 minors of the matrix with rows (x, y, z) and (P, Q, R)."""
        p = self.p
        x, y, z = (HomForm3.linear(*row, p) for row in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
        return (x * self.Q - y * self.P, x * self.R - z * self.P, y * self.R - z * self.Q)

    def is_euler_multiple(self) -> bool:
        return all(g.is_zero() for g in self.minors())

    def minus_euler(self, g: HomForm3) -> "Derivation":
        """theta - g * Euler for a form g of degree one less."""
        p = self.p
        xs = [HomForm3.linear(*row, p) for row in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
        P, Q, R = (c - g * v for c, v in zip(self.components(), xs))
        return Derivation(P, Q, R)

    def to_json(self) -> dict:
        return {"degree": self.degree, "P": self.P.coeffs.tolist(), "Q": self.Q.coeffs.tolist(),
                "R": self.R.coeffs.tolist()}


def _var_images(cov: Sequence[int], p: int) -> list[tuple[int, int]]:
    """Each variable restricted to the line as ``(kind, scalar)``.

    RUA lines have at most two nonzero covector entries, so every variable
    becomes a multiple of s, of t, or zero.  kind: 0 = s, 1 = t, -1 = zero.
    """
    _, coords = line_parametrization(cov, p)
    out = []
    for cs, ct in coords:
        if cs and ct:
            raise ValueError("line has three nonzero coefficients")
        if cs:
            out.append((0, cs))
        elif ct:
            out.append((1, ct))
        else:
            out.append((-1, 0))
    return out


@lru_cache(maxsize=None)
def _mono_table(k: int) -> np.ndarray:
    return np.array(monomials(k), dtype=np.int64).reshape(-1, 3)


def _restriction_map(cov: Sequence[int], p: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    """For each degree-k monomial: (row offset e, scalar) of its restriction."""
    mons = _mono_table(k)
    scal = np.ones(len(mons), dtype=np.int64)
    tdeg = np.zeros(len(mons), dtype=np.int64)
    for v, (kind, c) in enumerate(_var_images(cov, p)):
        ex = mons[:, v]
        if kind < 0:
            scal = np.where(ex > 0, 0, scal)
            continue
        table = np.array([pow(int(c), e, p) for e in range(k + 1)], dtype=np.int64)
        scal = scal * table[ex] % p
        if kind == 1:
            tdeg = tdeg + ex
    return tdeg, scal


def _tangency_matrix(covs: list[tuple[int, int, int]], p: int, k: int) -> np.ndarray:
    m = n_monomials(k)
    M = np.zeros((len(covs) * (k + 1), 3 * m), dtype=np.int64)
    cols = np.arange(m)
    for li, cov in enumerate(covs):
        tdeg, scal = _restriction_map(cov, p, k)
        rows = li * (k + 1) + tdeg
        for comp in range(3):
            if cov[comp] % p:
                M[rows, comp * m + cols] = scal * (cov[comp] % p) % p
    return M


def derivation_matrix(A: RUA, F: PrimeField, k: int) -> np.ndarray:
    """Full tangency system: one row per line and restricted coefficient."""
    _check_field(A, F)
    return _tangency_matrix([ln.covector(F) for ln in A.lines], F.p, k)


def _reduced_system(A: RUA, F: PrimeField, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Tangency to a present side is a coordinate condition (x | P etc.), so
    those coefficients are dropped instead of adding rows.  Returns the
    system on the remaining columns and their indices in the full layout."""
    m = n_monomials(k)
    mons = _mono_table(k)
    keep = np.ones(3 * m, dtype=bool)
    for comp, side in enumerate(("X", "Y", "Z")):
        if side in A.sides:
            keep[comp * m:(comp + 1) * m] &= mons[:, comp] > 0
    inner = [ln.covector(F) for ln in A.lines if not ln.is_side]
    cols = np.flatnonzero(keep)
    M = _tangency_matrix(inner, F.p, k)[:, cols] if inner else np.zeros((0, len(cols)), np.int64)
    return M, cols


def derivation_dim(A: RUA, F: PrimeField, k: int) -> int:
    _check_field(A, F)
    if k < 0:
        return 0
    M, cols = _reduced_system(A, F, k)
    if M.shape[0] == 0:
        return len(cols)
    return len(cols) - rank(M, F.p)


def derivation_basis(A: RUA, F: PrimeField, k: int) -> list[Derivation]:
    """Basis of D(A)_k; every vector is checked against the full system."""
    _check_field(A, F)
    M, cols = _reduced_system(A, F, k)
    K = kernel(M, F.p, cols=len(cols))
    full = np.zeros((K.shape[0], 3 * n_monomials(k)), dtype=np.int64)
    full[:, cols] = K
    if full.shape[0]:
        check = matmul(derivation_matrix(A, F, k), full.T, F.p)
        if check.any():
            raise InvariantViolation("kernel vector is not tangent", {"arrangement": A.to_json(),
                                                                      "degree": k})
    return [Derivation.from_vector(v, k, F.p) for v in full]


def h0_log(A: RUA, F: PrimeField, k: int) -> int:
    return derivation_dim(A, F, k) - comb(k + 1, 2)


def h0_profile(A: RUA, F: PrimeField, k_max: int | None = None) -> list[int]:
    k_max = A.line_count - 1 if k_max is None else k_max
    return [h0_log(A, F, k) for k in range(k_max + 1)]


def mdr(A: RUA, F: PrimeField) -> int:
    for k in range(1, A.line_count):
        if h0_log(A, F, k) > 0:
            return k
    raise InvariantViolation("no section up to degree N-1", A.to_json())


def _random_section(basis: list[Derivation], rng: np.random.Generator, p: int,
                    avoid_euler: bool = True) -> Derivation:
    k = basis[0].degree
    V = np.array([b.vector() for b in basis], dtype=np.int64)
    for _ in range(32):
        c = rng.integers(0, p, size=len(basis), dtype=np.int64)
        v = matmul(c.reshape(1, -1), V, p)[0]
        th = Derivation.from_vector(v, k, p)
        if not avoid_euler or not th.is_euler_multiple():
            return th
    raise InvariantViolation("could not draw a non-Euler section", {"degree": k})


# ---------------------------------------------------------------------------
# Saito certificates


def saito_det(t1: Derivation, t2: Derivation) -> HomForm3:
    """det of the 3x3 matrix with rows (x, y, z), theta1, theta2."""
    p = t1.p
    x, y, z = (HomForm3.linear(*row, p) for row in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    P1, Q1, R1 = t1.components()
    P2, Q2, R2 = t2.components()
    return x * (Q1 * R2 - R1 * Q2) - y * (P1 * R2 - R1 * P2) + z * (P1 * Q2 - Q1 * P2)


@dataclass(frozen=True)
class SaitoCertificate:
    theta1: Derivation
    theta2: Derivation
    scalar: int
    p: int

    @property
    def degrees(self) -> tuple[int, int]:
        return (self.theta1.degree, self.theta2.degree)

    def to_json(self) -> dict:
        return {"p": self.p, "degrees": list(self.degrees), "scalar": self.scalar,
                "theta1": self.theta1.to_json(), "theta2": self.theta2.to_json()}


def _proportional(g: HomForm3, f: HomForm3) -> int | None:
    """s with g = s f, s != 0, or None."""
    if g.degree != f.degree or g.is_zero():
        return None
    idx, lead = f.leading()
    p = f.p
    s = int(g.coeffs[idx]) * pow(lead, p - 2, p) % p
    if s and np.array_equal(g.coeffs, f.scale(s).coeffs):
        return s
    return None


def saito_certificate(A: RUA, F: PrimeField, e1: int | None = None, e2: int | None = None,
                      seed: int = 0, tries: int = 4) -> SaitoCertificate | None:
    """Look for theta1 in D_e1, theta2 in D_e2 with det(E, theta1, theta2) = s f.

    Defaults: e1 = mdr, e2 = N - 1 - e1.  Random combinations of the kernel
    bases (seeded) are tried; for a free arrangement a generic pair works.
    """
    _check_field(A, F)
    N = A.line_count
    if e1 is None:
        e1 = mdr(A, F)
    if e2 is None:
        e2 = N - 1 - e1
    if e1 < 0 or e2 < 0 or e1 + e2 != N - 1:
        return None
    B1, B2 = derivation_basis(A, F, e1), derivation_basis(A, F, e2)
    if len(B1) <= comb(e1 + 1, 2) or len(B2) <= comb(e2 + 1, 2):
        return None
    f = concrete_equation(A, F)
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        t1 = _random_section(B1, rng, F.p)
        t2 = _random_section(B2, rng, F.p)
        s = _proportional(saito_det(t1, t2), f)
        if s is not None:
            return SaitoCertificate(t1, t2, s, F.p)
    return None


# ---------------------------------------------------------------------------
# base locus of a section


def _binary_common_zeros(forms: list[BinForm], p: int) -> list[tuple[int, int]] | None:
    """Common projective zeros of binary forms; None if all vanish identically."""
    live = [f for f in forms if not f.is_zero()]
    if not live:
        return None
    g = None
    for f in live:
        aff = [int(c) for c in f.coeffs[::-1]]  # chart t = 1, coefficients of s^0, s^1, ...
        g = aff if g is None else uv.gcd(g, aff, p)
    out = [(r, 1) for r in uv.roots(g, p)] if uv.degree(g) > 0 else []
    if all(f.coeffs[0] == 0 for f in live):
        out.append((1, 0))
    return out


def _strip_lines(g: HomForm3, covs: list[Sequence[int]]) -> HomForm3:
    if g.is_zero():
        return g
    for cov in covs:
        while g.degree > 0:
            q, exact = g.divide_linear(cov)
            if not exact:
                break
            g = q
    return g


def _sylvester_det(f: list[int], g: list[int], df: int, dg: int, p: int) -> int:
    """Resultant of f, g (coefficients low to high) with formal degrees df, dg."""
    n = df + dg
    if n == 0:
        return 1
    S = np.zeros((n, n), dtype=np.int64)
    fr = [f[df - i] if df - i < len(f) else 0 for i in range(df + 1)]  # high to low
    gr = [g[dg - i] if dg - i < len(g) else 0 for i in range(dg + 1)]
    for r in range(dg):
        S[r, r:r + df + 1] = fr
    for r in range(df):
        S[dg + r, r:r + dg + 1] = gr
    return det_fp(S, p)


def _affine_zeros(hs: list[HomForm3], p: int) -> list[tuple[int, int, int]] | None:
    """Common zeros of forms in general position (no common zero at z = 0 assumed
    but still checked).  None when the zero set is not finite."""
    live = [h for h in hs if not h.is_zero()]
    if not live:
        return None
    if any(h.degree == 0 for h in live):
        return []
    if len(live) == 1:
        return None
    dense = [h.dense() for h in live]

    def in_y(D: np.ndarray, x0: int) -> list[int]:
        k = D.shape[0] - 1
        xp = np.array([pow(x0, i, p) for i in range(k + 1)], dtype=np.int64)
        return uv.trim([int(c) for c in matmul(xp.reshape(1, -1), D, p)[0]])

    xs_roots = None
    for a, b in itertools.combinations(range(len(live)), 2):
        ka, kb = live[a].degree, live[b].degree
        pts = list(range(ka * kb + 1))
        vals = [_sylvester_det(in_y(dense[a], x0), in_y(dense[b], x0), ka, kb, p) for x0 in pts]
        res = uv.interpolate(pts, vals, p)
        if res:
            xs_roots = uv.roots(res, p)
            break
    if xs_roots is None:
        return None
    out = []
    for x0 in xs_roots:
        polys = [in_y(D, x0) for D in dense]
        nz = [f for f in polys if f]
        if not nz:
            return None
        g = nz[0]
        for f in nz[1:]:
            g = uv.gcd(g, f, p)
        if uv.degree(g) > 0:
            out += [(x0, y0, 1) for y0 in uv.roots(g, p)]
    at_inf = _binary_common_zeros([h.restrict((0, 0, 1)) for h in live], p)
    if at_inf is None:
        return None
    out += [point_on_line((0, 0, 1), st, p) for st in at_inf]
    return [q for q in out if all(h(q) == 0 for h in live)]


def _local_vanishes(theta: Derivation, q: tuple[int, int, int], m: int) -> bool:
    """Whether the section vanishes at a point where m >= 2 lines meet.

    In an affine chart centred at q the section is the vector field V with
    components given by two minors.  Tangent fields near an ordinary
    m-fold point are generated by the local Euler field and one field of
    order m-1, so the section vanishes in the fibre iff the linear part of
    V is zero and every homogeneous part of degree 2..m-1 is a multiple of
    the local Euler field.
    """
    p = theta.p
    c = max(v for v in range(3) if q[v] % p)
    inv = pow(int(q[c]), p - 2, p)
    q = [int(v) * inv % p for v in q]
    a, b = [v for v in range(3) if v != c]
    g = theta.minors()
    # minor index for (x_c * theta_v - x_v * theta_c), up to sign
    pair = {(0, 1): 0, (0, 2): 1, (1, 2): 2}

    def comp(v: int) -> HomForm3:
        i, j = min(v, c), max(v, c)
        h = g[pair[(i, j)]]
        return h if i == c else -h

    # new variables (u, v, w): x_a = u + q_a w, x_b = v + q_b w, x_c = w
    M = [[0, 0, 0] for _ in range(3)]
    M[a] = [1, 0, q[a]]
    M[b] = [0, 1, q[b]]
    M[c] = [0, 0, 1]
    Va, Vb = comp(a).compose(M), comp(b).compose(M)
    Da, Db = Va.dense(), Vb.dense()  # D[i, j]: u^i v^j w^rest

    def part(D: np.ndarray, j: int) -> np.ndarray:
        return np.array([D[i, j - i] if i < D.shape[0] and j - i < D.shape[1] else 0
                         for i in range(j + 1)], dtype=np.int64)

    for j in range(0, min(m, Va.degree + 1)):
        pa, pb = part(Da, j), part(Db, j)
        if j <= 1:
            if pa.any() or pb.any():
                return False
            continue
        # u * pb - v * pa as a form of degree j + 1 in (u, v), indexed by the u-power
        e = np.zeros(j + 2, dtype=np.int64)
        e[1:] += pb
        e[:-1] -= pa  # v * u^i v^(j-i) keeps the u-power i
        if (e % p).any():
            return False
    return True


def section_base_locus(A: RUA, F: PrimeField, theta: Derivation,
                       seed: int = 0) -> list[tuple[int, int, int]]:
    """Zeros of the section of T_A(k) defined by theta (modulo Euler).

    Off the arrangement these are the common zeros of the 2x2 minors with
    (x, y, z); line factors of the minors are stripped first and the rest is
    solved by resultants after a random change of coordinates.  Points on a
    single line L are zeros of theta - (theta(L)/L) * Euler; singular points
    of the arrangement are tested with the local criterion of
    :func:`_local_vanishes`.  Raises ValueError when the zero set is not
    finite.
    """
    _check_field(A, F)
    p = F.p
    if theta.is_euler_multiple():
        raise ValueError("Euler multiples vanish nowhere as sections of a twist")
    lines = A.lines
    covs = [ln.covector(F) for ln in lines]

    def on_lines(q) -> int:
        return sum(1 for cov in covs if sum(c * v for c, v in zip(cov, q)) % p == 0)

    found: set[tuple[int, int, int]] = set()
    # off the arrangement
    hs = [_strip_lines(g, covs) for g in theta.minors()]
    rng = np.random.default_rng(seed)
    for _ in range(8):
        M = rng.integers(0, p, size=(3, 3)).tolist()
        if det_fp(M, p) == 0:
            continue
        zs = _affine_zeros([h.compose(M) for h in hs], p)
        if zs is None:
            continue
        for X in zs:
            q = tuple(sum(M[v][j] * X[j] for j in range(3)) % p for v in range(3))
            if all(g(q) == 0 for g in theta.minors()) and on_lines(q) == 0:
                found.add(normalize_point(q, p))
        break
    else:
        raise ValueError("the section vanishes along a curve off the arrangement")
    # smooth points of each line
    for ln, cov in zip(lines, covs):
        lam, exact = theta.apply_linear(cov).divide_linear(cov)
        if not exact:
            raise InvariantViolation("derivation is not tangent", {"line": str(ln)})
        tp = theta.minus_euler(lam)
        zs = _binary_common_zeros([c.restrict(cov) for c in tp.components()], p)
        if zs is None:
            raise ValueError(f"the section vanishes along the line {ln}")
        for st in zs:
            q = point_on_line(cov, st, p)
            if on_lines(q) == 1:
                found.add(normalize_point(q, p))
    # singular points
    for pt in cb.singular_points(A):
        q = pt.coords(A, F)
        if _local_vanishes(theta, q, pt.multiplicity):
            found.add(normalize_point(q, p))
    return sorted(found)


# ---------------------------------------------------------------------------
# restrictions and curves


def ziegler_exponents(A: RUA, F: PrimeField, line: Line) -> tuple[int, int]:
    """Exponents of the multiarrangement induced on ``line``.

    Each singular point q on the line gets multiplicity m_q - 1.  A
    derivation f ds + g dt of degree d is admissible when t0 f - s0 g is
    divisible by (t0 s - s0 t)^mu at every point (s0 : t0).
    """
    _check_field(A, F)
    if line not in A:
        raise LineNotPresent(str(line))
    p = F.p
    cov = line.covector(F)
    piv, _ = line_parametrization(cov, p)
    others = [v for v in range(3) if v != piv]
    pts = []
    for pt in cb.points_on(A, line):
        q = pt.coords(A, F)
        pts.append(((int(q[others[0]]) % p, int(q[others[1]]) % p), pt.multiplicity - 1))
    total = sum(mu for _, mu in pts)
    for d in range(0, total + 1):
        rows = []
        for (s0, t0), mu in pts:
            # h = t0 f - s0 g; unknowns [f_0..f_d, g_0..g_d], h_e multiplies s^(d-e) t^e
            if t0 == 0:
                for e in range(min(mu, d + 1)):
                    r = [0] * (2 * d + 2)
                    r[d + 1 + e] = (-s0) % p
                    r[e] = t0
                    rows.append(r)
                continue
            u = s0 * pow(t0, p - 2, p) % p
            # h(s, 1) = sum_i a_i s^i with a_i = h_(d-i); require d^j/ds^j at u vanish, j < mu.
            # When mu > d these conditions already force h = 0.
            for j in range(min(mu, d + 1)):
                r = [0] * (2 * d + 2)
                for i in range(j, d + 1):
                    w = comb(i, j) * pow(u, i - j, p) % p
                    e = d - i
                    r[e] = (r[e] + w * t0) % p
                    r[d + 1 + e] = (r[d + 1 + e] - w * s0) % p
                rows.append(r)
        dim = 2 * d + 2 - (rank(np.array(rows), p) if rows else 0)
        if dim > 0:
            return (d, total - d)
    raise InvariantViolation("multiarrangement without derivations", {"line": str(line)})


def curves_through_T(A: RUA, F: PrimeField, d: int) -> int:
    """dim of degree-d forms vanishing on the inner triple points."""
    _check_field(A, F)
    if d < 0:
        raise ValueError("degree must be nonnegative")
    pts = [pt.coords(A, F) for pt in cb.singular_points(A)
           if pt.kind == "inner" and pt.multiplicity == 3]
    mons = monomials(d)
    if not pts:
        return len(mons)
    p = F.p
    E = [[pow(q[0], i, p) * pow(q[1], j, p) * pow(q[2], l, p) % p for (i, j, l) in mons]
         for q in pts]
    return len(mons) - rank(np.array(E, dtype=np.int64), p)


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class PrimeResult:
    p: int
    cls: str
    exponents: tuple[int, int] | None
    mdr: int
    jumping_point: tuple[int, int, int] | None = None
    certificate: tuple[int, int] | None = None

    def key(self):
        return (self.cls, self.exponents, self.mdr)


@dataclass(frozen=True)
class FreenessReport:
    cls: str  # "free" | "nearly_free" | "other"
    exponents: tuple[int, int] | None
    mdr: int
    c2: int
    jumping_point: tuple[int, int, int] | None
    per_prime: tuple[PrimeResult, ...] = field(default_factory=tuple)

    @property
    def agree(self) -> bool:
        return all(r.key() == self.per_prime[0].key() for r in self.per_prime)

    @property
    def certificate(self) -> tuple[int, int] | None:
        return self.per_prime[0].certificate if self.per_prime else None

    def label(self) -> str:
        if self.cls == "other":
            return "other"
        return f"{self.cls}({self.exponents[0]},{self.exponents[1]})"

    def to_json(self) -> dict:
        first = self.per_prime[0].key() if self.per_prime else None
        return {"class": self.cls,
                "exponents": list(self.exponents) if self.exponents else None,
                "mdr": self.mdr, "c2": self.c2,
                "jumping_point": list(self.jumping_point) if self.jumping_point else None,
                "certificate": list(self.certificate) if self.certificate else None,
                "primes": [{"p": r.p, "agree": r.key() == first, "class": r.cls}
                           for r in self.per_prime],
                "note": "freeness is certified over each listed prime field separately"}


def classify_over(A: RUA, F: PrimeField, c2_value: int | None = None, seed: int = 0,
                  check_profile: bool = True) -> PrimeResult:
    _check_field(A, F)
    N = A.line_count
    c2v = cb.c2(A) if c2_value is None else c2_value
    r = mdr(A, F)
    e2 = N - 1 - r
    if r * e2 == c2v:
        cert = saito_certificate(A, F, r, e2, seed=seed)
        if cert is not None:
            if check_profile:
                for k in range(N):
                    got, want = h0_log(A, F, k), free_h0(k, r, e2)
                    if got != want:
                        raise InvariantViolation("h0 profile of a certified free arrangement "
                                                 "differs from the two-generator model",
                                                 {"arrangement": A.to_json(), "p": F.p, "k": k,
                                                  "h0": got, "model": want})
            return PrimeResult(F.p, "free", (r, e2), r, certificate=cert.degrees)
    if r * e2 == c2v - 1:
        # the minimal section has a finite zero scheme of length c2 - r(N-1-r) = 1
        rng = np.random.default_rng(seed)
        theta = _random_section(derivation_basis(A, F, r), rng, F.p)
        pts = section_base_locus(A, F, theta, seed=seed)
        if len(pts) != 1:
            raise InvariantViolation("minimal section of a length-one zero scheme has "
                                     f"{len(pts)} zeros", {"arrangement": A.to_json(), "p": F.p,
                                                           "points": pts})
        return PrimeResult(F.p, "nearly_free", (r, N - r), r, jumping_point=pts[0])
    return PrimeResult(F.p, "other", None, r)


def classify(A: RUA, primes: int = 2, seed: int = 0, check_profile: bool = True) -> FreenessReport:
    if primes < 1:
        raise ValueError("need at least one prime")
    c2v = cb.c2(A)
    results = tuple(classify_over(A, F, c2v, seed, check_profile) for F in fields_for(A.n, primes))
    first = results[0]
    rep = FreenessReport(first.cls, first.exponents, first.mdr, c2v, first.jumping_point, results)
    if rep.cls == "free":
        e1, e2 = rep.exponents
        if e1 + e2 != A.line_count - 1 or e1 * e2 != c2v:
            raise InvariantViolation("free exponents inconsistent", rep.to_json())
    return rep
