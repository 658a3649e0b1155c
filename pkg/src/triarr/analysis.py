"""Combinatorial freeness predictors and arrangement generators.

The complete-triangle predictor asks whether an arrangement can be cut out
of ``full_monomial(N)`` one line at a time so that each deletion leaves the
removed lines with as few triple points as any deletion could.  The uncomplete predictor reads a case table
keyed by which sides are missing, after naming the vertex families so that
their line counts a <= b <= c increase.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import isqrt

from .arrangement import (INNER, RUA, Line, complement_in, delete_lines, full_monomial, make_rua,
                          tr_signature)
from .combinatorics import c2, complement_stats, inner_triples, is_grid_in, min_trem
from .errors import ConstructionFailed, InvalidSignature

FREE, NOT_FREE, NOT_APPLICABLE = "free", "not_free", "not_applicable"

# the side joining two vertices, keyed by their families
SIDE_BETWEEN = {frozenset("AB"): "Y", frozenset("AC"): "X", frozenset("BC"): "Z"}


@dataclass(frozen=True)
class Prediction:
    verdict: str
    exponents: tuple[int, int] | None = None
    reason: str = ""

    @property
    def free(self) -> bool:
        return self.verdict == FREE

    def to_json(self) -> dict:
        out = {"verdict": self.verdict}
        if self.exponents is not None:
            out["exponents"] = list(self.exponents)
        if self.reason:
            out["reason"] = self.reason
        return out

    def label(self) -> str:
        if self.verdict == FREE:
            return "free({},{})".format(*self.exponents)
        return self.verdict


@dataclass(frozen=True)
class DeletionStep:
    line: Line
    t_rem: int
    signature: tuple[int, int, int]

    def to_json(self) -> dict:
        return {"line": str(self.line), "t_rem": self.t_rem, "signature": list(self.signature)}


def exponents_from_c2(n_lines: int, c2_value: int) -> tuple[int, int] | None:
    """Integer roots of e^2 - (n_lines - 1) e + c2, if any."""
    s = n_lines - 1
    disc = s * s - 4 * c2_value
    if disc < 0:
        return None
    r = isqrt(disc)
    if r * r != disc or (s - r) % 2:
        return None
    return ((s - r) // 2, (s + r) // 2)


def _created(N: int, fam: str, e: int, gone: dict) -> int:
    """Triples the complement gains when the inner line ``fam e`` joins it."""
    others = [g for g in INNER if g != fam]
    p, q = gone[others[0]], gone[others[1]]
    return sum(1 for x in p if (-e - x) % N in q)


def minimal_deletion_path(A: RUA, N: int, budget: int = 2_000_000) -> list[DeletionStep] | None:
    """An order of deleting the lines missing from ``A`` inside
    ``full_monomial(N)`` such that every deletion leaves the complement with
    the fewest triple points any single deletion could leave at that step,
    or None when no such order exists.

    Candidates at a step are all inner lines still present, not only those
    missing from ``A``.  ``budget`` bounds the number of visited states.
    """
    comp = complement_in(A, N)
    todo = tuple(Line(f, e) for f in INNER for e in comp.exps(f))
    seen: set[int] = set()

    def walk(mask: int, gone: dict, t: int) -> list[DeletionStep] | None:
        if mask == (1 << len(todo)) - 1:
            return []
        if mask in seen:
            return None
        if len(seen) >= budget:
            raise ConstructionFailed(f"deletion search exceeded {budget} states")
        seen.add(mask)
        low = min(_created(N, f, e, gone) for f in INNER for e in range(N) if e not in gone[f])
        for i, ln in enumerate(todo):
            if mask >> i & 1 or _created(N, ln.family, ln.exponent, gone) != low:
                continue
            gone[ln.family].add(ln.exponent)
            sig = tuple(N + 1 - len(gone[f]) for f in INNER)
            rest = walk(mask | 1 << i, gone, t + low)
            gone[ln.family].discard(ln.exponent)
            if rest is not None:
                return [DeletionStep(ln, t + low, sig)] + rest
        return None

    return walk(0, {f: set() for f in INNER}, 0)


def predict_free_complete(A: RUA, N: int) -> Prediction:
    """Free exactly when ``A`` is reached from ``full_monomial(N)`` by
    deletions that each leave the complement with as few triple points as
    possible.  Exponents are the integer roots of e^2 - (|A|-1) e + c2."""
    if len(A.sides) != 3:
        return Prediction(NOT_APPLICABLE, reason="a side is missing")
    t_rem = complement_stats(A, N)["t_rem"]
    if minimal_deletion_path(A, N) is None:
        return Prediction(NOT_FREE, reason=f"no stepwise-minimal deletion order (t_rem={t_rem})")
    exps = exponents_from_c2(A.line_count, c2(A))
    if exps is None:
        return Prediction(NOT_FREE, reason="c2 admits no integer exponents")
    return Prediction(FREE, exps)


def greedy_free_path(N: int, a: int, b: int, c: int, seed: int = 0,
                     budget: int = 2_000_000) -> tuple[list[DeletionStep], RUA]:
    """Delete inner lines of ``full_monomial(N)`` one at a time down to
    signature (a, b, c).  Every deletion must leave the complement with the
    fewest triple points that deleting any remaining inner line could give;
    among such lines the choice is seeded-random, backtracking when the
    per-family counts can no longer be met."""
    if not all(1 <= v <= N + 1 for v in (a, b, c)):
        raise InvalidSignature(f"({a},{b},{c}) does not fit in N={N}")
    rng = random.Random(seed)
    need = {"A": N + 1 - a, "B": N + 1 - b, "C": N + 1 - c}
    gone = {f: set() for f in INNER}
    dead: set[frozenset] = set()

    def walk(t: int) -> list[DeletionStep] | None:
        if all(len(gone[f]) == need[f] for f in INNER):
            return []
        key = frozenset((f, e) for f in INNER for e in gone[f])
        if key in dead:
            return None
        if len(dead) >= budget:
            raise ConstructionFailed(f"greedy search exceeded {budget} states")
        gains = {(f, e): _created(N, f, e, gone) for f in INNER for e in range(N) if e not in gone[f]}
        low = min(gains.values())
        cands = [k for k, v in gains.items() if v == low and len(gone[k[0]]) < need[k[0]]]
        rng.shuffle(cands)
        for f, e in cands:
            gone[f].add(e)
            sig = tuple(N + 1 - len(gone[g]) for g in INNER)
            rest = walk(t + low)
            gone[f].discard(e)
            if rest is not None:
                return [DeletionStep(Line(f, e), t + low, sig)] + rest
        dead.add(key)
        return None

    steps = walk(0)
    if steps is None:
        raise ConstructionFailed(f"no stepwise-minimal deletion path to ({a},{b},{c}) in N={N}")
    A = full_monomial(N)
    for st in steps:
        A = delete_lines(A, [st.line])
    return steps, A


def _role_labelings(sizes: dict) -> list[dict]:
    """Assignments role -> family with sizes a <= b <= c."""
    out = []
    for perm in itertools.permutations(INNER):
        roles = dict(zip("abc", perm))
        if sizes[roles["a"]] <= sizes[roles["b"]] <= sizes[roles["c"]]:
            out.append(roles)
    return out


def _case_table(A: RUA, roles: dict, sizes: dict) -> tuple[int, int] | None:
    a, b, c = (sizes[roles[r]] for r in "abc")
    side = {frozenset(p): SIDE_BETWEEN[frozenset((roles[p[0]], roles[p[1]]))]
            for p in ("ab", "ac", "bc")}
    missing = {p for p, s in side.items() if s not in A.sides}
    AB, AC, BC = frozenset("ab"), frozenset("ac"), frozenset("bc")
    grid = is_grid_in(A, roles["a"], roles["b"])
    n_t = len(inner_triples(A))
    if missing == {AB}:
        return (c, a + b - 2) if grid else None
    if missing == {AC}:
        return (b, a + b - 2) if b == c and grid else None
    if missing == {BC}:
        return (a, 2 * a - 2) if a == b == c and grid else None
    if missing == {AB, AC}:
        return (c, a + b - 3) if grid else None
    if missing == {AB, BC}:
        return (b, a + b - 3) if b == c and grid else None
    if missing == {AC, BC}:
        return (a, 2 * a - 3) if a == b == c and grid else None
    if a == b == c == 2 and n_t == 0:
        return (1, 1)
    if (a, b, c) == (2, 2, 3) and n_t == 1:
        return (1, 2)
    return (a, 2 * a - 4) if a == b == c and grid else None


def predict_free_uncomplete(A: RUA) -> Prediction:
    if len(A.sides) == 3:
        return Prediction(NOT_APPLICABLE, reason="all sides present")
    sizes = dict(zip(INNER, tr_signature(A).as_tuple()))
    for roles in _role_labelings(sizes):
        exps = _case_table(A, roles, sizes)
        if exps is not None:
            return Prediction(FREE, tuple(sorted(exps)))
    return Prediction(NOT_FREE, reason="no case of the table applies")


def ci_example(a: int, b: int, c: int) -> RUA:
    """All sides plus a-1, b-1, c-1 lines with a (c-1)-th root of unity;
    the inner triple points form an (a-1) x (b-1) grid."""
    if c < 2 or not (2 <= a <= c and 2 <= b <= c):
        raise InvalidSignature(f"need 2 <= a, b <= c, got ({a},{b},{c})")
    n = c - 1
    return make_rua(n, range(a - 1), range(b - 1), [-k for k in range(c - 1)])


def addition_deletion(exponents: tuple[int, int], t: int) -> tuple[int, int] | None:
    """Exponents after deleting a line meeting the others in t points.

    When both rules apply (d1 = d2) the second exponent is lowered.
    """
    d1, d2 = exponents
    if t == d1 + 1:
        return (d1, d2 - 1)
    if t == d2 + 1:
        return (d1 - 1, d2)
    return None


def section6_pair() -> tuple[RUA, RUA]:
    """A free and a nearly free arrangement with equal weak combinatorics."""
    A0 = make_rua(6, [0, 1, 3, 5], [2, 3, 4, 5], [1, 2, 3, 4])
    A1 = make_rua(5, [1, 2, 3, 4], [1, 2, 3, 4], [1, 2, 3, 4])
    return A0, A1


def nearly_free_family(k: int, seed: int = 0) -> tuple[RUA, RUA]:
    """Two arrangements in Tr(2k+1, 2k+1, 2k+1) with 3k^2 inner triple points.

    The free one is a greedy deletion from ``full_monomial(3k)``.  The other
    sits in ``full_monomial(3k-1)``: delete A- and B-lines 0..k-2, then C-lines
    creating no complement triple, and last the C-line through the point
    where the deleted lines A0 and B0 meet.
    """
    if k < 2:
        raise InvalidSignature("k must be at least 2")
    n = 2 * k + 1
    steps, free = greedy_free_path(3 * k, n, n, n, seed)
    if steps[-1].t_rem != 0:
        raise ConstructionFailed(f"greedy path ended with t_rem={steps[-1].t_rem}")
    N = 3 * k - 1
    gone = list(range(k - 1))
    bad = {(-x - y) % N for x in gone for y in gone}
    extra = [g for g in range(1, N) if g not in bad][:k - 2]
    if len(extra) < k - 2:
        raise ConstructionFailed("not enough C-lines avoid the deleted intersections")
    drop_c = set(extra) | {0}
    nearly = make_rua(N, [e for e in range(N) if e not in gone],
                      [e for e in range(N) if e not in gone],
                      [e for e in range(N) if e not in drop_c])
    t_rem = complement_stats(nearly, N)["t_rem"]
    if t_rem != 1:
        raise ConstructionFailed(f"nearly free member has t_rem={t_rem}, expected 1")
    for A in (free, nearly):
        if len(inner_triples(A)) != 3 * k * k:
            raise ConstructionFailed(f"expected {3 * k * k} inner triples, got "
                                     f"{len(inner_triples(A))}")
    return free, nearly


def _agree(pred: Prediction, report) -> bool | None:
    if pred.verdict == NOT_APPLICABLE:
        return None
    if pred.free:
        return report.cls == "free" and tuple(sorted(report.exponents)) == pred.exponents
    return report.cls != "free"


def corpus(N: int, sides: str = "all"):
    """Sub-RUAs of ``full_monomial(N)`` in a fixed order.

    ``sides="all"`` keeps the three sides; ``"subsets"`` takes every proper
    subset of sides.  Inputs that degenerate (too few lines, all concurrent)
    are skipped.
    """
    from .errors import EmptyArrangement

    side_sets = [("X", "Y", "Z")] if sides == "all" else [
        s for r in range(3) for s in itertools.combinations(("X", "Y", "Z"), r)]
    subsets = [tuple(s) for r in range(N + 1) for s in itertools.combinations(range(N), r)]
    for S in side_sets:
        for ea, eb, ec in itertools.product(subsets, repeat=3):
            try:
                yield make_rua(N, ea, eb, ec, S)
            except EmptyArrangement:
                continue


def enumeration_record(A: RUA, N: int, primes: int = 2, seed: int = 0) -> dict:
    from .freeness import classify

    a, b, c = tr_signature(A).as_tuple()
    report = classify(A, primes, seed)
    rec = {"arrangement": A.to_json(), "signature": [a, b, c]}
    if len(A.sides) == 3:
        rec["t_rem"] = complement_stats(A, N)["t_rem"]
        rec["min_trem"] = min_trem(N, a, b, c)
        pred = predict_free_complete(A, N)
    else:
        rec["t_rem"] = rec["min_trem"] = None
        pred = predict_free_uncomplete(A)
    rec["prediction"] = pred.label()
    rec["oracle_class"] = report.label()
    rec["primes_agree"] = report.agree
    rec["agree"] = _agree(pred, report)
    return rec


def _record_task(args):
    return enumeration_record(*args)


def enumerate_corpus(N: int, sides: str = "all", primes: int = 2, seed: int = 0,
                     workers: int = 1):
    """Enumeration records in corpus order; workers > 1 uses a process pool."""
    tasks = [(A, N, primes, seed) for A in corpus(N, sides)]
    if workers <= 1:
        for t in tasks:
            yield _record_task(t)
        return
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(workers) as pool:
        yield from pool.map(_record_task, tasks, chunksize=16)


def summarize(records) -> dict:
    out = {"records": 0, "agree": 0, "disagree": 0, "not_applicable": 0, "classes": {}}
    for r in records:
        out["records"] += 1
        key = {True: "agree", False: "disagree", None: "not_applicable"}[r["agree"]]
        out[key] += 1
        cls = r["oracle_class"].split("(")[0]
        out["classes"][cls] = out["classes"].get(cls, 0) + 1
    return out
