"""Intersection lattice data of RUAs, decided purely by exponent arithmetic."""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable

import networkx as nx
from networkx.algorithms import isomorphism

from .arrangement import (INNER, RUA, SIDES, SIDES_AT, VERTEX_COORDS, VERTEX_OF, Line,
                          complement_in, tr_signature)
from .errors import InvariantViolation, NotEmbeddable
from .exactmath import PrimeField


def inner_triples(A: RUA) -> list[tuple[int, int, int]]:
    """Index triples ``(i, j, k)`` into ``(ea, eb, ec)`` with zero exponent sum."""
    pos_c = {e: k for k, e in enumerate(A.ec)}
    out = []
    for i, a in enumerate(A.ea):
        for j, b in enumerate(A.eb):
            k = pos_c.get((-a - b) % A.n)
            if k is not None:
                out.append((i, j, k))
    return out


@dataclass(frozen=True)
class SingularPoint:
    kind: str  # "vertex" | "side" | "inner"
    lines: tuple[Line, ...]
    label: str = ""

    @property
    def multiplicity(self) -> int:
        return len(self.lines)

    def coords(self, A: RUA, F: PrimeField) -> tuple[int, int, int]:
        """Projective coordinates over ``F`` (one coordinate equal to 1)."""
        if self.kind == "vertex":
            return VERTEX_COORDS[self.label]
        ex = {ln.family: ln.exponent for ln in self.lines}
        r = F.root
        if self.kind == "side":
            if "A" in ex:
                return (r(ex["A"]), 1, 0)
            if "B" in ex:
                return (0, r(ex["B"]), 1)
            return (1, 0, r(ex["C"]))
        if "A" in ex and "B" in ex:
            return (r(ex["A"] + ex["B"]), r(ex["B"]), 1)
        if "A" in ex:
            return (r(ex["A"]), 1, r(ex["A"] + ex["C"]))
        return (1, r(ex["B"] + ex["C"]), r(ex["C"]))


def singular_points(A: RUA) -> list[SingularPoint]:
    """All points where at least two lines meet, with full incidence."""
    pts: list[SingularPoint] = []
    for f in INNER:
        through = [Line(f, e) for e in A.exps(f)]
        through += [Line(s) for s in SIDES_AT[f] if s in A.sides]
        if len(through) >= 2:
            pts.append(SingularPoint("vertex", tuple(through), VERTEX_OF[f]))
    # inner lines crossing the opposite side
    for f, s in (("A", "Z"), ("B", "X"), ("C", "Y")):
        if s in A.sides:
            pts += [SingularPoint("side", (Line(f, e), Line(s))) for e in A.exps(f)]
    in_triple_ab, in_triple_ac, in_triple_bc = set(), set(), set()
    for i, j, k in inner_triples(A):
        a, b, c = A.ea[i], A.eb[j], A.ec[k]
        pts.append(SingularPoint("inner", (Line("A", a), Line("B", b), Line("C", c))))
        in_triple_ab.add((a, b))
        in_triple_ac.add((a, c))
        in_triple_bc.add((b, c))
    for a in A.ea:
        pts += [SingularPoint("inner", (Line("A", a), Line("B", b)))
                for b in A.eb if (a, b) not in in_triple_ab]
        pts += [SingularPoint("inner", (Line("A", a), Line("C", c)))
                for c in A.ec if (a, c) not in in_triple_ac]
    for b in A.eb:
        pts += [SingularPoint("inner", (Line("B", b), Line("C", c)))
                for c in A.ec if (b, c) not in in_triple_bc]
    pairs = sum(comb(pt.multiplicity, 2) for pt in pts)
    if pairs != comb(A.line_count, 2):
        raise InvariantViolation("pair-count identity failed",
                                 {"arrangement": A.to_json(), "pairs": pairs})
    return pts


def points_on(A: RUA, line: Line, pts: list[SingularPoint] | None = None) -> list[SingularPoint]:
    pts = singular_points(A) if pts is None else pts
    return [pt for pt in pts if line in pt.lines]


@dataclass(frozen=True)
class WeakCombinatorics:
    n_lines: int
    t: dict  # multiplicity -> count

    def to_json(self) -> dict:
        return {str(m): c for m, c in sorted(self.t.items())}

    def get(self, m: int) -> int:
        return self.t.get(m, 0)


def t_vector(A: RUA) -> WeakCombinatorics:
    counts = Counter(pt.multiplicity for pt in singular_points(A))
    w = WeakCombinatorics(A.line_count, dict(sorted(counts.items())))
    if sum(c * comb(m, 2) for m, c in w.t.items()) != comb(w.n_lines, 2):
        raise InvariantViolation("t-vector fails the pair-count identity", w.to_json())
    return w


def c2_formula(a: int, b: int, c: int, n_triples: int) -> int:
    """Second Chern number of a complete triangular arrangement from (a, b, c, |T|)."""
    return comb(a + b + c - 1, 2) - comb(a, 2) - comb(b, 2) - comb(c, 2) - n_triples


def c2(A: RUA) -> int:
    """c2 = C(N-1, 2) - sum over singular points of C(m-1, 2)."""
    val = comb(A.line_count - 1, 2) - sum(comb(pt.multiplicity - 1, 2)
                                          for pt in singular_points(A))
    sig = tr_signature(A)
    if sig.complete:
        ref = c2_formula(sig.a, sig.b, sig.c, len(inner_triples(A)))
        if ref != val:
            raise InvariantViolation("c2 multiplicity formula disagrees with (a,b,c,|T|) formula",
                                     {"arrangement": A.to_json(), "c2": val, "ref": ref})
    return val


def hirzebruch_check(A: RUA) -> dict:
    w = t_vector(A)
    n = w.n_lines
    applicable = all(w.get(m) == 0 for m in (n, n - 1, n - 2))
    lhs = w.get(2) + w.get(3)
    rhs = n + sum((m - 4) * c for m, c in w.t.items() if m >= 5)
    out = {"applicable": applicable, "lhs": lhs, "rhs": rhs}
    if applicable:
        out.update(holds=lhs >= rhs, slack=lhs - rhs)
    return out


@dataclass(frozen=True)
class AbstractCombinatorics:
    """Signature plus inner triple incidences, inner lines indexed from 1."""

    a: int
    b: int
    c: int
    sides: frozenset = field(default_factory=lambda: frozenset(SIDES))
    triples: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "sides", frozenset(self.sides))
        object.__setattr__(self, "triples", frozenset(tuple(t) for t in self.triples))
        for i, j, k in self.triples:
            if not (1 <= i < self.a and 1 <= j < self.b and 1 <= k < self.c):
                raise ValueError(f"triple {(i, j, k)} out of range for Tr({self.a},{self.b},{self.c})")

    def violations(self) -> list[str]:
        """Necessary conditions every realizable combinatorics satisfies."""
        out = []
        T = sorted(self.triples)
        for s, t in itertools.combinations(T, 2):
            if sum(x == y for x, y in zip(s, t)) >= 2:
                out.append(f"triples {s} and {t} share two lines")
        a1, b1, c1 = self.a - 1, self.b - 1, self.c - 1
        bound = min(a1 * b1, a1 * c1, b1 * c1)
        if len(T) > bound:
            out.append(f"|T| = {len(T)} exceeds {bound}")
        return out

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "sides": sorted(self.sides),
                "triples": [list(t) for t in sorted(self.triples)]}

    @classmethod
    def from_json(cls, doc: dict) -> "AbstractCombinatorics":
        return cls(doc["a"], doc["b"], doc["c"], frozenset(doc.get("sides", SIDES)),
                   frozenset(tuple(t) for t in doc.get("triples", [])))

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def extract_combinatorics(A: RUA) -> AbstractCombinatorics:
    sig = tr_signature(A)
    return AbstractCombinatorics(sig.a, sig.b, sig.c, A.sides,
                                 frozenset((i + 1, j + 1, k + 1) for i, j, k in inner_triples(A)))


def triples_per_line(A: RUA) -> dict[str, list[int]]:
    out = {f: [0] * len(A.exps(f)) for f in INNER}
    for i, j, k in inner_triples(A):
        out["A"][i] += 1
        out["B"][j] += 1
        out["C"][k] += 1
    return out


def _incidence_graph(A: RUA) -> nx.Graph:
    G = nx.Graph()
    for ln in A.lines:
        G.add_node(("L", ln), kind="line")
    for pt in singular_points(A):
        if pt.multiplicity >= 3:
            node = ("P", pt.lines)
            G.add_node(node, kind="point")
            G.add_edges_from((node, ("L", ln)) for ln in pt.lines)
    return G


def _line_profiles(A: RUA) -> list[tuple[int, ...]]:
    prof: dict[Line, list[int]] = {ln: [] for ln in A.lines}
    for pt in singular_points(A):
        for ln in pt.lines:
            prof[ln].append(pt.multiplicity)
    return sorted(tuple(sorted(v)) for v in prof.values())


def same_combinatorics(A: RUA, B: RUA) -> bool:
    """Whether the intersection lattices of ``A`` and ``B`` are isomorphic.

    Lines and points of multiplicity >= 3 form a bipartite incidence graph;
    double points are determined by it, so a kind-preserving graph
    isomorphism is exactly a lattice isomorphism.
    """
    if A.line_count != B.line_count:
        return False
    if _line_profiles(A) != _line_profiles(B):
        return False
    GA, GB = _incidence_graph(A), _incidence_graph(B)
    gm = isomorphism.GraphMatcher(GA, GB, node_match=lambda u, v: u["kind"] == v["kind"])
    return gm.is_isomorphic()


def complement_stats(A: RUA, N: int) -> dict:
    """|T_rem| of the complement in ``full_monomial(N)`` and the |T| identity check."""
    if N % A.n:
        raise NotEmbeddable(f"modulus {A.n} does not divide {N}")
    comp = complement_in(A, N)
    t_rem = len(inner_triples(comp))
    sig = tr_signature(A)
    a, b, c = sig.as_tuple()
    predicted = N * N - (N + 2) * (a + b + c - 3) - 3 + a * b + a * c + b * c - t_rem
    n_t = len(inner_triples(A))
    return {"N": N, "t_rem": t_rem, "triples": n_t, "predicted_triples": predicted,
            "identity_holds": predicted == n_t}


def min_trem_formula(N: int, a: int, b: int, c: int) -> int:
    """Closed-form minimum from the balanced deletion pattern.

    0 when 2N <= a+b+c-3; otherwise r^2/4 (r even) or (r^2-1)/4 (r odd)
    with r = 2N+3-a-b-c.  Only valid when the deletion pattern is balanced
    enough; :func:`min_trem` is the exact minimum.
    """
    if 2 * N <= a + b + c - 3:
        return 0
    r = 2 * N + 3 - a - b - c
    return r * r // 4


def sum_counts(N: int, X: Iterable[int], Y: Iterable[int]) -> list[int]:
    cnt = [0] * N
    Y = list(Y)
    for x in X:
        for y in Y:
            cnt[(x + y) % N] += 1
    return cnt


@lru_cache(maxsize=None)
def min_trem(N: int, a: int, b: int, c: int) -> int:
    """Exact minimum of |T_rem| over all ways to delete inner lines of
    ``full_monomial(N)`` leaving ``a-1, b-1, c-1`` inner lines per family.

    For fixed deleted sets X, Y in two families the best third set takes the
    residues z whose sum count at -z is smallest, so only X and Y are
    enumerated (X may be translated to contain 0).
    """
    if not all(1 <= v <= N + 1 for v in (a, b, c)):
        raise ValueError(f"signature ({a},{b},{c}) does not fit in N={N}")
    d1, d2, d3 = sorted((N + 1 - a, N + 1 - b, N + 1 - c))
    if d1 == 0:
        return 0
    best = None
    for rest in itertools.combinations(range(1, N), d1 - 1):
        X = (0,) + rest
        for Y in itertools.combinations(range(N), d2):
            cnt = sum_counts(N, X, Y)
            val = sum(sorted(cnt)[:d3])
            if best is None or val < best:
                best = val
                if best == 0:
                    return 0
    return best


def is_ci_grid(A: RUA) -> tuple[tuple[str, str], tuple[int, int]] | None:
    """First family pair whose inner triples form a full product grid.

    Orientations are tried in the order AB, AC, BC.  Returns
    ``((f1, f2), (#lines of f1, #lines of f2))`` or None.
    """
    for f1, f2 in (("A", "B"), ("A", "C"), ("B", "C")):
        if is_grid_in(A, f1, f2):
            return (f1, f2), (len(A.exps(f1)), len(A.exps(f2)))
    return None


def report_fragment(A: RUA) -> dict:
    return {"t": t_vector(A).to_json(), "inner_triples": [list(t) for t in inner_triples(A)],
            "c2": c2(A), "hirzebruch": hirzebruch_check(A)}


def is_grid_in(A: RUA, f1: str, f2: str) -> bool:
    """Whether the inner triples are the full product of the inner lines of f1 and f2."""
    T = inner_triples(A)
    idx = {"A": 0, "B": 1, "C": 2}
    n1, n2 = len(A.exps(f1)), len(A.exps(f2))
    pairs = {(t[idx[f1]], t[idx[f2]]) for t in T}
    return len(T) == n1 * n2 and len(pairs) == n1 * n2
