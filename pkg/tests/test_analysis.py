import pytest

from triarr import analysis as an
from triarr.arrangement import Line, delete_lines, full_monomial, make_rua, tr_signature
from triarr.combinatorics import (complement_stats, inner_triples, is_ci_grid, points_on,
                                  same_combinatorics, t_vector)
from triarr.errors import InvalidSignature
from triarr.freeness import classify, fields_for, ziegler_exponents


class TestPredictComplete:
    def test_pair(self, A0, A1):
        assert an.predict_free_complete(A0, 6).label() == "free(7,7)"
        p = an.predict_free_complete(A1, 5)
        assert p.verdict == an.NOT_FREE and "t_rem=1" in p.reason

    def test_one_line_removed(self):
        A = delete_lines(full_monomial(5), [Line("A", 0)])
        assert an.predict_free_complete(A, 5).label() == "free(6,10)"

    def test_needs_all_sides(self, fm2):
        p = an.predict_free_complete(delete_lines(fm2, [Line("X")]), 2)
        assert p.verdict == an.NOT_APPLICABLE

    # Tr(3,3,3) inside full_monomial(4): the four oracle classes
    @pytest.mark.parametrize("ec,label", [((0, 2), "free(3,5)"), ((0, 3), "free(4,4)"),
                                          ((0, 1), "not_free"), ((1, 3), "not_free")])
    def test_balanced_and_grid_cases(self, ec, label):
        ab = (0, 2) if ec in {(0, 2), (1, 3)} else (0, 1)
        A = make_rua(4, ab, ab, ec)
        assert an.predict_free_complete(A, 4).label() == label
        truth = classify(A, 1)
        assert (truth.label() if truth.cls == "free" else "not_free") == label

    def test_empty_family_is_missed(self):
        # two pencils through the vertices P2, P3: free, and all such
        # arrangements share one lattice, yet only some admit a
        # stepwise-minimal deletion order inside full_monomial(4)
        hit = make_rua(4, [], [0, 1], [0, 1])
        miss = make_rua(4, [], [0, 2], [0, 1])
        assert same_combinatorics(hit, miss)
        assert classify(miss, 1).label() == classify(hit, 1).label() == "free(3,3)"
        assert an.predict_free_complete(hit, 4).free
        assert an.predict_free_complete(miss, 4).verdict == an.NOT_FREE

    def test_path_is_stepwise_minimal(self, A0):
        path = an.minimal_deletion_path(A0, 6)
        assert len(path) == 6 and all(s.t_rem == 0 for s in path)
        assert path[-1].signature == (5, 5, 5)
        assert an.minimal_deletion_path(make_rua(4, [0, 1], [0, 1], [0, 1]), 4) is None


class TestExponents:
    def test_roots(self):
        assert an.exponents_from_c2(15, 49) == (7, 7)
        assert an.exponents_from_c2(9, 15) == (3, 5)
        assert an.exponents_from_c2(15, 50) is None


class TestGreedy:
    def test_five(self):
        steps, A = an.greedy_free_path(5, 5, 5, 5, seed=1)
        assert len(steps) == 3 and steps[-1].t_rem == 0
        assert tr_signature(A).as_tuple() == (5, 5, 5)
        # 13 inner triples, so c2 = 48 and the exponents are (6, 8)
        assert an.predict_free_complete(A, 5).label() == "free(6,8)"

    def test_two(self):
        steps, A = an.greedy_free_path(2, 2, 2, 2)
        assert len(steps) == 3
        assert classify(A, 1).cls == "free"

    def test_six(self):
        steps, A = an.greedy_free_path(6, 5, 5, 5, seed=4)
        assert steps[-1].t_rem == 0
        assert an.predict_free_complete(A, 6).label() == "free(7,7)"

    @pytest.mark.parametrize("sig", [(4, 3, 3), (2, 5, 5), (4, 4, 4), (3, 3, 3)])
    def test_counts_nondecreasing(self, sig):
        steps, A = an.greedy_free_path(4, *sig, seed=7)
        counts = [s.t_rem for s in steps]
        assert counts == sorted(counts)
        assert counts[-1] == complement_stats(A, 4)["t_rem"]
        assert an.predict_free_complete(A, 4).free

    def test_seeded(self):
        assert an.greedy_free_path(5, 3, 4, 5, seed=2) == an.greedy_free_path(5, 3, 4, 5, seed=2)

    def test_out_of_range(self):
        with pytest.raises(InvalidSignature):
            an.greedy_free_path(3, 5, 2, 2)


class TestPredictUncomplete:
    def test_one_side(self):
        A = delete_lines(full_monomial(3), [Line("Z")])
        assert an.predict_free_uncomplete(A).label() == "free(4,6)"

    def test_grid_minus_side(self):
        A = delete_lines(an.ci_example(3, 3, 4), [Line("Y")])
        assert an.predict_free_uncomplete(A).label() == "free(4,4)"
        assert classify(A, 1).label() == "free(4,4)"

    def test_three_general_lines(self):
        A = make_rua(3, [0], [0], [1], [])
        assert an.predict_free_uncomplete(A).label() == "free(1,1)"
        assert classify(A, 1).label() == "free(1,1)"

    def test_complete_not_applicable(self, A0):
        assert an.predict_free_uncomplete(A0).verdict == an.NOT_APPLICABLE

    def test_table_is_literal(self):
        # two sides missing around a 2x2 grid: the table says (1,3), the oracle (2,2)
        A = make_rua(3, [0], [0], [0, 2], ["Z"])
        assert an.predict_free_uncomplete(A).label() == "free(1,3)"
        assert classify(A, 1).label() == "free(2,2)"


class TestCiExample:
    def test_three_three_four(self):
        A = an.ci_example(3, 3, 4)
        assert A.n == 3 and is_ci_grid(A) == (("A", "B"), (2, 2))
        assert classify(A, 1).label() == "free(4,5)"

    def test_smallest(self):
        A = an.ci_example(2, 2, 2)
        assert A.n == 1 and is_ci_grid(A) == (("A", "B"), (1, 1))

    def test_two_three_three(self):
        assert classify(an.ci_example(2, 3, 3), 1).label() == "free(3,4)"

    def test_invalid(self):
        with pytest.raises(InvalidSignature):
            an.ci_example(4, 2, 3)


class TestAdditionDeletion:
    def test_examples(self):
        assert an.addition_deletion((6, 11), 7) == (6, 10)
        assert an.addition_deletion((3, 5), 9) is None
        assert an.addition_deletion((1, 1), 2) == (1, 0)

    def test_against_oracle(self):
        A = full_monomial(3)
        side = Line("X")
        t = len(points_on(A, side))
        pred = an.addition_deletion((4, 7), t)
        assert classify(delete_lines(A, [side]), 1).exponents == pred


class TestFreeNearlyFreePair:
    def test_pair(self, pair):
        A0, A1 = pair
        assert t_vector(A0).t == t_vector(A1).t
        assert classify(A0, 1).label() == "free(7,7)"
        assert classify(A1, 1).jumping_point == (1, 1, 1)


class TestNearlyFreeFamily:
    def test_k2(self):
        free, nearly = an.nearly_free_family(2)
        assert len(inner_triples(free)) == len(inner_triples(nearly)) == 12
        assert t_vector(free).t == t_vector(nearly).t
        assert classify(free, 1).label() == "free(7,7)"
        r = classify(nearly, 1)
        assert r.cls == "nearly_free" and r.mdr == 6
        F = fields_for(nearly.n, 1)[0]
        assert ziegler_exponents(nearly, F, Line("A", nearly.ea[0])) == (6, 8)

    def test_k3_construction(self):
        free, nearly = an.nearly_free_family(3)
        assert len(inner_triples(free)) == 27 and t_vector(free).t == t_vector(nearly).t

    def test_invalid(self):
        with pytest.raises(InvalidSignature):
            an.nearly_free_family(1)


class TestCorpus:
    def test_sizes(self):
        assert sum(1 for _ in an.corpus(2, "all")) == 64
        assert all(len(A.sides) < 3 for A in an.corpus(2, "subsets"))

    def test_records(self):
        recs = list(an.enumerate_corpus(2, "all", primes=1))
        s = an.summarize(recs)
        assert s["records"] == 64 and s["disagree"] == 0
        assert {"arrangement", "signature", "t_rem", "min_trem", "prediction",
                "oracle_class", "agree", "primes_agree"} <= set(recs[0])
