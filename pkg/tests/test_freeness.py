import random
from math import comb

import numpy as np
import pytest

from triarr.arrangement import Line, concrete_equation, full_monomial, make_rua
from triarr.errors import LineNotPresent, ModulusMismatch
from triarr.exactmath import HomForm3, find_field, rank
from triarr.freeness import (Derivation, classify, curves_through_T, derivation_basis,
                             derivation_dim, derivation_matrix, fields_for, free_h0, h0_log,
                             mdr, saito_certificate, saito_det, section_base_locus,
                             ziegler_exponents)

from conftest import field_for


class TestDerivations:
    def test_triangle(self, tri):
        assert derivation_dim(tri, field_for(tri), 1) == 3

    def test_full_monomial_five(self):
        A = full_monomial(5)
        F = field_for(A)
        assert derivation_dim(A, F, 6) == comb(7, 2) + 1
        assert h0_log(A, F, 6) == 1
        assert h0_log(A, F, 11) == 22

    def test_nearly_free_member(self, A1):
        F = field_for(A1)
        assert derivation_dim(A1, F, 5) == 15
        assert h0_log(A1, F, 5) == 0 and h0_log(A1, F, 6) == 1

    def test_free_member(self, A0):
        F = field_for(A0)
        assert h0_log(A0, F, 6) == 0 and h0_log(A0, F, 7) == 2

    @pytest.mark.parametrize("seed", range(8))
    def test_matches_full_system(self, seed):
        rng = random.Random(seed)
        N = rng.randint(2, 5)
        A = make_rua(N, *[rng.sample(range(N), rng.randint(1, N)) for _ in range(3)],
                     rng.choice([("X", "Y", "Z"), ("Y",), ()]))
        F = field_for(A)
        for k in range(0, 6):
            M = derivation_matrix(A, F, k)
            assert derivation_dim(A, F, k) == M.shape[1] - rank(M, F.p)

    def test_basis_is_tangent(self, A1):
        F = field_for(A1)
        for theta in derivation_basis(A1, F, 6):
            for ln in A1.lines:
                _, exact = theta.apply_linear(ln.covector(F)).divide_linear(ln.covector(F))
                assert exact

    def test_modulus_mismatch(self, A0):
        with pytest.raises(ModulusMismatch):
            derivation_dim(A0, find_field(5, 100), 3)

    def test_free_model(self):
        assert [free_h0(k, 1, 1) for k in range(4)] == [0, 2, 6, 12]


class TestMdr:
    def test_examples(self, A0, A1, tri):
        assert mdr(A1, field_for(A1)) == 6
        assert mdr(A0, field_for(A0)) == 7
        assert mdr(tri, field_for(tri)) == 1


class TestSaito:
    def test_free_member(self, A0):
        F = field_for(A0)
        cert = saito_certificate(A0, F)
        assert cert is not None and cert.degrees == (7, 7)
        assert saito_det(cert.theta1, cert.theta2) == concrete_equation(A0, F).scale(cert.scalar)

    def test_full_monomial_two(self, fm2):
        cert = saito_certificate(fm2, field_for(fm2))
        assert cert.degrees == (3, 5)

    def test_nearly_free_member(self, A1):
        assert saito_certificate(A1, field_for(A1), 6, 8) is None
        assert saito_certificate(A1, field_for(A1), 7, 7) is None

    def test_wrong_degrees(self, A0):
        assert saito_certificate(A0, field_for(A0), 6, 6) is None


class TestClassify:
    def test_free_member(self, A0):
        r = classify(A0, 2)
        assert (r.cls, r.exponents, r.c2, r.agree) == ("free", (7, 7), 49, True)
        assert len({pr.p for pr in r.per_prime}) == 2

    def test_nearly_free_member(self, A1):
        r = classify(A1, 2)
        assert (r.cls, r.exponents, r.mdr, r.jumping_point) == ("nearly_free", (6, 9), 6, (1, 1, 1))
        assert r.agree

    def test_other(self):
        A = make_rua(4, [0, 1, 2], [0, 1, 2], [0, 1, 2, 3])
        r = classify(A, 1)
        assert r.cls in {"free", "nearly_free", "other"}
        if r.cls == "other":
            assert r.exponents is None

    def test_invariants_on_sample(self):
        rng = random.Random(3)
        for _ in range(15):
            N = rng.randint(2, 4)
            A = make_rua(N, *[rng.sample(range(N), rng.randint(1, N)) for _ in range(3)])
            r = classify(A, 2)
            assert r.agree
            n = A.line_count
            if r.cls == "free":
                assert sum(r.exponents) == n - 1 and r.exponents[0] * r.exponents[1] == r.c2
            if r.cls == "nearly_free":
                assert sum(r.exponents) == n and r.mdr * (n - 1 - r.mdr) == r.c2 - 1

    def test_report_json(self, A0):
        doc = classify(A0, 1).to_json()
        assert doc["class"] == "free" and doc["exponents"] == [7, 7]
        assert doc["primes"][0]["agree"]

    def test_fields(self):
        Fs = fields_for(6, 3)
        assert len({F.p for F in Fs}) == 3 and all(F.p > 2 ** 20 for F in Fs)


class TestBaseLocus:
    def test_free_member(self, A0):
        F = field_for(A0)
        rng = np.random.default_rng(0)
        basis = derivation_basis(A0, F, 7)
        coeffs = rng.integers(0, F.p, size=len(basis))
        v = sum(int(c) * b.vector() for c, b in zip(coeffs, basis)) % F.p
        theta = Derivation.from_vector(v, 7, F.p)
        assert section_base_locus(A0, F, theta) == []

    def test_nearly_free_member(self, A1):
        F = field_for(A1)
        basis = [b for b in derivation_basis(A1, F, 6) if not b.is_euler_multiple()]
        assert section_base_locus(A1, F, basis[0]) == [(1, 1, 1)]

    def test_triangle_edge_case(self, tri):
        # the minors with Euler vanish on x = 0, but as a section of
        # T(1) = O + O the derivation x dx has no zeros at all
        F = field_for(tri)
        p = F.p
        zero = HomForm3.zero(1, p)
        theta = Derivation(HomForm3.linear(1, 0, 0, p), zero, zero)
        assert section_base_locus(tri, F, theta) == []


class TestZiegler:
    def test_full_monomial_side(self, fm2):
        assert ziegler_exponents(fm2, field_for(fm2), Line("X")) == (3, 5)

    def test_nearly_free_member(self, A1):
        F = field_for(A1)
        for e in A1.ea:
            assert ziegler_exponents(A1, F, Line("A", e)) == (6, 8)

    def test_triangle(self, tri):
        assert ziegler_exponents(tri, field_for(tri), Line("Y")) == (1, 1)

    def test_missing_line(self, A1):
        with pytest.raises(LineNotPresent):
            ziegler_exponents(A1, field_for(A1), Line("A", 0))


class TestCurves:
    def test_pair(self, A0, A1):
        assert curves_through_T(A1, field_for(A1), 3) == 1
        assert curves_through_T(A0, field_for(A0), 3) == 0

    def test_no_triples(self):
        A = make_rua(5, [1], [1], [1])
        assert curves_through_T(A, field_for(A), 1) == 3
