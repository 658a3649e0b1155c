from math import comb

from hypothesis import given, settings, strategies as st

from triarr.arrangement import make_rua, tr_signature
from triarr.combinatorics import c2, c2_formula, inner_triples, t_vector
from triarr.errors import EmptyArrangement


@st.composite
def complete_ruas(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    fams = [draw(st.sets(st.integers(0, n - 1))) for _ in range(3)]
    try:
        return make_rua(n, *fams)
    except EmptyArrangement:
        return make_rua(n, [0], [], [])


@settings(max_examples=150, deadline=None)
@given(complete_ruas())
def test_pairs_are_counted_once(A):
    t = t_vector(A).t
    assert sum(comb(m, 2) * k for m, k in t.items()) == comb(A.line_count, 2)


@settings(max_examples=150, deadline=None)
@given(complete_ruas())
def test_c2_closed_form(A):
    a, b, c = tr_signature(A).as_tuple()
    assert c2(A) == c2_formula(a, b, c, len(inner_triples(A)))


@settings(max_examples=150, deadline=None)
@given(complete_ruas())
def test_triple_count_bound(A):
    # each pair of inner lines from two families meets at most one line of the third
    a, b, c = tr_signature(A).as_tuple()
    T = len(inner_triples(A))
    assert T <= min((a - 1) * (b - 1), (b - 1) * (c - 1), (a - 1) * (c - 1))
