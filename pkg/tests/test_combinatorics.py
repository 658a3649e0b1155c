import itertools
import random
from collections import Counter

import pytest

from triarr import combinatorics as cb
from triarr.arrangement import Line, delete_lines, full_monomial, make_rua, triangle
from triarr.errors import EmptyArrangement, NotEmbeddable
from triarr.exactmath import find_field


def random_rua(rng, N, sides=("X", "Y", "Z")):
    while True:
        picks = [rng.sample(range(N), rng.randint(0, N)) for _ in range(3)]
        try:
            return make_rua(N, *picks, sides)
        except EmptyArrangement:
            continue


def field_t_vector(A):
    """Multiplicities from actual intersection points over a large prime field."""
    F = find_field(A.n, 10 ** 6)
    p = F.p
    covs = [ln.covector(F) for ln in A.lines]
    points = Counter()
    for u, v in itertools.combinations(covs, 2):
        q = (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])
        q = [c % p for c in q]
        lead = next(c for c in q if c)
        inv = pow(lead, p - 2, p)
        points[tuple(c * inv % p for c in q)] += 1
    # a point of multiplicity m accounts for m(m-1)/2 pairs
    out = Counter()
    for pairs in points.values():
        m = next(m for m in range(2, 100) if m * (m - 1) // 2 == pairs)
        out[m] += 1
    return dict(out)


class TestInnerTriples:
    def test_examples(self, A0, fm2, tri):
        assert len(cb.inner_triples(fm2)) == 4
        assert len(cb.inner_triples(A0)) == 12
        assert cb.inner_triples(tri) == []

    def test_independent_of_sides(self, A0):
        assert cb.inner_triples(delete_lines(A0, [Line("X"), Line("Z")])) == cb.inner_triples(A0)


class TestSingularPoints:
    def test_triangle(self, tri):
        pts = cb.singular_points(tri)
        assert [(p.kind, p.multiplicity) for p in pts] == [("vertex", 2)] * 3

    def test_full_monomial_two(self, fm2):
        pts = cb.singular_points(fm2)
        assert Counter((p.kind, p.multiplicity) for p in pts) == \
            {("vertex", 4): 3, ("inner", 3): 4, ("side", 2): 6}

    def test_free_member(self, A0):
        pts = cb.singular_points(A0)
        assert Counter(p.multiplicity for p in pts) == {6: 3, 3: 12, 2: 24}
        assert sum(p.kind == "vertex" for p in pts) == 3

    def test_points_on_side(self, fm2):
        on = cb.points_on(fm2, Line("X"))
        assert sorted(p.multiplicity for p in on) == [2, 2, 4, 4]

    @pytest.mark.parametrize("seed", range(25))
    def test_matches_field_intersections(self, seed):
        rng = random.Random(seed)
        sides = rng.choice([("X", "Y", "Z"), ("X",), (), ("Y", "Z")])
        A = random_rua(rng, rng.randint(2, 7), sides)
        assert cb.t_vector(A).t == field_t_vector(A)


class TestTVector:
    def test_pair(self, A0, A1):
        assert cb.t_vector(A0).t == {2: 24, 3: 12, 6: 3}
        assert cb.t_vector(A1).t == cb.t_vector(A0).t

    def test_full_monomial_two(self, fm2):
        assert cb.t_vector(fm2).t == {2: 6, 3: 4, 4: 3}


class TestC2:
    def test_examples(self, A0, A1, tri):
        assert cb.c2(full_monomial(5)) == 66
        assert cb.c2(A0) == cb.c2(A1) == 49
        assert cb.c2(tri) == 1

    def test_formula(self):
        assert cb.c2_formula(5, 5, 5, 12) == 49

    @pytest.mark.parametrize("seed", range(20))
    def test_formula_agrees_on_random_complete(self, seed):
        rng = random.Random(100 + seed)
        A = random_rua(rng, 6)
        a, b, c = (len(A.exps(f)) + 1 for f in "ABC")
        assert cb.c2(A) == cb.c2_formula(a, b, c, len(cb.inner_triples(A)))


class TestHirzebruch:
    def test_pair(self, A0):
        h = cb.hirzebruch_check(A0)
        assert h["applicable"] and h["holds"] and h["slack"] == 15

    def test_triangle(self, tri):
        assert not cb.hirzebruch_check(tri)["applicable"]

    def test_full_monomial_two(self, fm2):
        h = cb.hirzebruch_check(fm2)
        assert h["applicable"] and h["slack"] == 1


class TestGrid:
    def test_full_monomial(self):
        for n in range(1, 5):
            assert cb.is_ci_grid(full_monomial(n)) == (("A", "B"), (n, n))

    def test_nearly_free_member(self, A1):
        assert cb.is_ci_grid(A1) is None

    def test_ci_construction(self):
        from triarr.analysis import ci_example
        assert cb.is_ci_grid(ci_example(3, 3, 4)) == (("A", "B"), (2, 2))

    def test_other_orientation(self):
        # B and C lines meet on A-lines in a full grid
        A = make_rua(3, [0, 1, 2], [0], [1])
        assert cb.is_ci_grid(A) == (("B", "C"), (1, 1))


class TestAbstract:
    def test_extract(self, A0, fm2, tri):
        C = cb.extract_combinatorics(A0)
        assert (C.a, C.b, C.c, len(C.triples)) == (5, 5, 5, 12)
        assert len(cb.extract_combinatorics(fm2).triples) == 4
        assert cb.extract_combinatorics(tri).triples == frozenset()

    def test_json(self, A1):
        C = cb.extract_combinatorics(A1)
        assert cb.AbstractCombinatorics.from_json(C.to_json()) == C
        assert min(min(t) for t in C.to_json()["triples"]) == 1

    def test_violations(self):
        C = cb.AbstractCombinatorics(3, 3, 3, triples={(1, 1, 1), (1, 1, 2)})
        assert C.violations()
        with pytest.raises(ValueError):
            cb.AbstractCombinatorics(2, 2, 2, triples={(2, 1, 1)})


class TestTriplesPerLine:
    def test_pair(self, A0, A1):
        got = sorted(sorted(v) for v in cb.triples_per_line(A0).values())
        assert got == [[2, 3, 3, 4], [3, 3, 3, 3], [3, 3, 3, 3]]
        assert all(v == [3, 3, 3, 3] for v in cb.triples_per_line(A1).values())

    def test_triangle(self, tri):
        assert cb.triples_per_line(tri) == {"A": [], "B": [], "C": []}


class TestSameCombinatorics:
    def test_examples(self, A0, A1, fm2):
        assert cb.same_combinatorics(A0, A0)
        assert not cb.same_combinatorics(A0, A1)
        shifted = make_rua(2, [0, 1], [0, 1], [1, 0])
        assert cb.same_combinatorics(fm2, shifted)

    def test_translation_is_isomorphism(self):
        A = make_rua(7, [0, 2, 3], [1, 5], [4, 6])
        B = make_rua(7, [1, 3, 4], [1, 5], [3, 5])  # shift A by +1, C by -1
        assert cb.same_combinatorics(A, B)

    def test_equivalence_relation_on_sample(self):
        rng = random.Random(5)
        sample = [random_rua(rng, 3) for _ in range(12)]
        rel = {(i, j): cb.same_combinatorics(a, b)
               for i, a in enumerate(sample) for j, b in enumerate(sample)}
        n = len(sample)
        for i in range(n):
            assert rel[i, i]
            for j in range(n):
                assert rel[i, j] == rel[j, i]
                for k in range(n):
                    if rel[i, j] and rel[j, k]:
                        assert rel[i, k]


class TestComplementStats:
    def test_free_member(self, A0):
        s = cb.complement_stats(A0, 6)
        assert (s["t_rem"], s["triples"], s["predicted_triples"]) == (0, 12, 12)

    def test_nearly_free_member(self, A1):
        s = cb.complement_stats(A1, 5)
        assert s["t_rem"] == 1 and s["identity_holds"]

    @pytest.mark.parametrize("N", [2, 4, 7])
    def test_full_monomial(self, N):
        s = cb.complement_stats(full_monomial(N), N)
        assert s["t_rem"] == 0 and s["triples"] == N * N and s["identity_holds"]

    def test_not_embeddable(self, A0):
        with pytest.raises(NotEmbeddable):
            cb.complement_stats(A0, 4)


def brute_min_trem(N, a, b, c):
    best = None
    for X in itertools.combinations(range(N), N + 1 - a):
        for Y in itertools.combinations(range(N), N + 1 - b):
            for Z in itertools.combinations(range(N), N + 1 - c):
                Zs = set(Z)
                t = sum(1 for x in X for y in Y if (-x - y) % N in Zs)
                best = t if best is None else min(best, t)
    return best


class TestMinTrem:
    def test_examples(self):
        assert cb.min_trem(6, 5, 5, 5) == 0
        assert cb.min_trem(5, 5, 5, 5) == 0
        assert cb.min_trem(5, 4, 4, 4) == 0

    def test_formula_examples(self):
        assert cb.min_trem_formula(6, 5, 5, 5) == 0
        assert cb.min_trem_formula(5, 4, 4, 4) == 0
        assert cb.min_trem_formula(4, 2, 2, 2) == 6  # r = 5

    @pytest.mark.parametrize("N", [1, 2, 3, 4])
    def test_brute_force(self, N):
        for a, b, c in itertools.product(range(1, N + 2), repeat=3):
            assert cb.min_trem(N, a, b, c) == brute_min_trem(N, a, b, c), (a, b, c)

    def test_balanced_formula_is_not_the_minimum(self):
        # a 2x2 grid of removed lines avoids the triple the balanced count predicts
        assert cb.min_trem(4, 3, 3, 3) == 0 < cb.min_trem_formula(4, 3, 3, 3)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            cb.min_trem(3, 5, 2, 2)


def test_report_fragment(A0):
    frag = cb.report_fragment(A0)
    assert frag["t"] == {"2": 24, "3": 12, "6": 3} and frag["c2"] == 49
    assert len(frag["inner_triples"]) == 12
