"""Realize abstract triangular combinatorics as a roots-of-unity arrangement.

Unknown exponents v_i, w_j, t_k (one per inner line) must satisfy
v_i + w_j + t_k = 0 mod n for every prescribed triple, and must keep every
other sum and every within-family difference nonzero mod n.

Two routes are tried.  First the equalities are solved over the integers:
when no forbidden form vanishes on the whole integer kernel, a sampled
kernel vector reduced modulo n = 2M + 1 (M bounds every form involved)
works.  Many arrangements (the full monomial ones, for instance) only
satisfy their triples modulo n, and then the integer kernel is too small;
the second route diagonalizes the equality matrix and searches moduli
n = 1, 2, ... directly in the solution group mod n.

A forbidden form is forced, for every modulus, exactly when it is an
integer combination of the equality rows; those are reported instead of
searched around.  Every result is verified before it is returned.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import gcd

from .arrangement import RUA, make_rua
from .combinatorics import AbstractCombinatorics, extract_combinatorics, same_combinatorics
from .errors import (DuplicateExponent, EmptyArrangement, InvariantViolation,
                     SamplingExhausted)
from .exactmath import diagonalize, in_lattice, integer_kernel

FAMILIES = ("A", "B", "C")


@dataclass(frozen=True)
class RealizationProblem:
    target: AbstractCombinatorics
    bound: int = 3
    seed: int = 0
    samples_per_round: int = 200
    max_rounds: int = 8
    samples_per_modulus: int = 20
    max_modulus: int = 4096


@dataclass(frozen=True)
class RealizationResult:
    outcome: str  # "realized" | "forced"
    rua: RUA | None = None
    forced: tuple = ()
    attempts: int = 0
    modulus: int | None = None
    # labels[f][pos] = 1-based target index of the line at sorted position pos
    labels: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"outcome": self.outcome, "attempts": self.attempts, "modulus": self.modulus}
        if self.rua is not None:
            out["arrangement"] = self.rua.to_json()
            out["labels"] = self.labels
        if self.forced:
            out["forced"] = list(self.forced)
        return out


def _layout(C: AbstractCombinatorics) -> tuple[int, int, int, int]:
    na, nb, nc = C.a - 1, C.b - 1, C.c - 1
    return na, nb, nc, na + nb + nc


def equality_system(C: AbstractCombinatorics) -> list[list[int]]:
    """One row v_i + w_j + t_k per prescribed triple (1-based indices)."""
    na, nb, nc, n = _layout(C)
    rows = []
    for i, j, k in sorted(C.triples):
        r = [0] * n
        r[i - 1] = r[na + j - 1] = r[na + nb + k - 1] = 1
        rows.append(r)
    return rows


def _forbidden_forms(C: AbstractCombinatorics) -> list[tuple[dict, list[int]]]:
    na, nb, nc, n = _layout(C)
    offs = {"A": 0, "B": na, "C": na + nb}
    sizes = {"A": na, "B": nb, "C": nc}
    out = []
    for i, j, k in itertools.product(range(1, na + 1), range(1, nb + 1), range(1, nc + 1)):
        if (i, j, k) in C.triples:
            continue
        r = [0] * n
        r[i - 1] = r[na + j - 1] = r[na + nb + k - 1] = 1
        out.append(({"kind": "extra_triple", "triple": [i, j, k]}, r))
    for f in FAMILIES:
        for s, t in itertools.combinations(range(1, sizes[f] + 1), 2):
            r = [0] * n
            r[offs[f] + s - 1], r[offs[f] + t - 1] = 1, -1
            out.append(({"kind": "coincident_lines", "family": f, "lines": [s, t]}, r))
    return out


def _dot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def _kernel(C: AbstractCombinatorics) -> list[list[int]]:
    n = _layout(C)[3]
    rows = equality_system(C)
    basis = integer_kernel(rows, n) if rows else [[int(i == j) for j in range(n)] for i in range(n)]
    probe = [-1] * (C.a - 1) + [2] * (C.b - 1) + [-1] * (C.c - 1)
    if not in_lattice(probe, basis):
        raise InvariantViolation("(-1, 2, -1) solution missing from the kernel lattice",
                                 C.to_json())
    return basis


def forced_relations(C: AbstractCombinatorics) -> list[dict]:
    """Forbidden relations implied by the prescribed triples for every modulus."""
    rows = equality_system(C)
    return [desc for desc, phi in _forbidden_forms(C) if in_lattice(phi, rows)]


def _triples_in_target_labels(A: RUA, values: list[list[int]]) -> frozenset:
    """Inner triples of A with lines named by target index, given the per-family
    exponent (mod A.n) of each target line."""
    pos = [{v % A.n: idx + 1 for idx, v in enumerate(vals)} for vals in values]
    out = set()
    for a in A.ea:
        for b in A.eb:
            c = (-a - b) % A.n
            if c in pos[2]:
                out.add((pos[0][a], pos[1][b], pos[2][c]))
    return frozenset(out)


def _build(C: AbstractCombinatorics, x: list[int], n: int) -> tuple[RUA, dict] | None:
    na, nb, _, _ = _layout(C)
    vals = [x[:na], x[na:na + nb], x[na + nb:]]
    try:
        A = make_rua(n, *vals, sides=C.sides)
    except (DuplicateExponent, EmptyArrangement):
        return None
    if _triples_in_target_labels(A, vals) != C.triples:
        return None
    labels = {}
    for f, vs in zip(FAMILIES, vals):
        where = {v % n: idx + 1 for idx, v in enumerate(vs)}
        labels[f] = [where[e] for e in A.exps(f)]
    return A, labels


def _smallest_modulus(C: AbstractCombinatorics, x: list[int], n: int) -> tuple[int, tuple]:
    built = _build(C, x, n)
    if built is None:
        raise InvariantViolation("modulus bound failed to preserve the combinatorics",
                                 {"target": C.to_json(), "solution": x, "modulus": n})
    # smaller moduli often work too; keep the smallest that verifies
    for d in range(1, n):
        smaller = _build(C, x, d)
        if smaller is not None:
            return d, smaller
    return n, built


def _integer_route(C: AbstractCombinatorics, P: RealizationProblem,
                   rng: random.Random) -> tuple[list[int], int, int] | None:
    """Sample the integer kernel; None if some forbidden form vanishes on it."""
    basis = _kernel(C)
    forms = [phi for _, phi in _forbidden_forms(C)]
    if any(all(_dot(phi, b) == 0 for b in basis) for phi in forms):
        return None
    n_vars = _layout(C)[3]
    B = P.bound
    attempts = 0
    for _ in range(P.max_rounds):
        for _ in range(P.samples_per_round):
            attempts += 1
            coef = [rng.randint(-B, B) for _ in basis]
            x = [sum(c * b[i] for c, b in zip(coef, basis)) for i in range(n_vars)]
            values = [_dot(phi, x) for phi in forms]
            if all(values):
                return x, 2 * max([abs(v) for v in values] + [0]) + 1, attempts
        B *= 2
    raise SamplingExhausted(f"no admissible integer kernel vector after {attempts} samples")


def _modular_route(C: AbstractCombinatorics, P: RealizationProblem,
                   rng: random.Random) -> tuple[list[int], int, int]:
    n_vars = _layout(C)[3]
    rows = equality_system(C)
    diag, W = diagonalize(rows, n_vars) if rows else ([], [[int(i == j) for j in range(n_vars)]
                                                           for i in range(n_vars)])
    forms = [phi for _, phi in _forbidden_forms(C)]
    attempts = 0
    for n in range(1, P.max_modulus + 1):
        steps = [n // gcd(d, n) for d in diag] + [1] * (n_vars - len(diag))
        gens = [[W[i][j] * steps[j] % n for i in range(n_vars)] for j in range(n_vars)]
        if any(all(_dot(phi, g) % n == 0 for g in gens) for phi in forms):
            continue
        for _ in range(P.samples_per_modulus):
            attempts += 1
            y = [rng.randrange(n) for _ in gens]
            x = [sum(c * g[i] for c, g in zip(y, gens)) % n for i in range(n_vars)]
            if all(_dot(phi, x) % n for phi in forms):
                return x, n, attempts
    raise SamplingExhausted(f"no admissible exponents for any modulus up to {P.max_modulus}")


def realize_as_rua(P: RealizationProblem) -> RealizationResult:
    C = P.target
    forced = forced_relations(C)
    if forced:
        return RealizationResult("forced", forced=tuple(forced))
    rng = random.Random(P.seed)
    found = _integer_route(C, P, rng)
    if found is None:
        found = _modular_route(C, P, rng)
    x, n, attempts = found
    n, (A, labels) = _smallest_modulus(C, x, n)
    if extract_combinatorics(A).triples != _relabel(C, labels):
        raise InvariantViolation("realized arrangement fails verification", C.to_json())
    return RealizationResult("realized", rua=A, attempts=attempts, modulus=n, labels=labels)


def _relabel(C: AbstractCombinatorics, labels: dict) -> frozenset:
    """Target triples renamed to sorted-exponent positions."""
    pos = {f: {orig: k + 1 for k, orig in enumerate(labels[f])} for f in FAMILIES}
    return frozenset((pos["A"][i], pos["B"][j], pos["C"][k]) for i, j, k in C.triples)


def realize(C: AbstractCombinatorics, seed: int = 0, bound: int = 3) -> RealizationResult:
    return realize_as_rua(RealizationProblem(C, bound, seed))


@dataclass(frozen=True)
class TeraoPair:
    original: object
    rua: object
    realized: RUA
    lattice_match: bool

    @property
    def classes_match(self) -> bool:
        return (self.original.cls, self.original.exponents) == (self.rua.cls, self.rua.exponents)

    def to_json(self) -> dict:
        return {"original": self.original.to_json(), "rua": self.rua.to_json(),
                "realized": self.realized.to_json(), "lattice_match": self.lattice_match,
                "classes_match": self.classes_match}


def terao_pair(A: RUA, primes: int = 2, seed: int = 0) -> TeraoPair:
    """Classify A and an independently realized RUA with the same lattice."""
    from .freeness import classify

    res = realize(extract_combinatorics(A), seed=seed)
    if res.outcome != "realized":
        raise InvariantViolation("combinatorics of an actual arrangement reported as forced",
                                 res.to_json())
    B = res.rua
    return TeraoPair(classify(A, primes, seed), classify(B, primes, seed), B,
                     same_combinatorics(A, B))
