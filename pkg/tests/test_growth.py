"""Tests for word balls, growth tables, candidate sequences, word synthesis.

Ball contents for small radii were verified against the brute-force product
oracle below; growth values F(1) = 6 and F(2) = 24 were derived through the
all-moduli brute force before freezing.
"""

import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from resfin import growth as gr
from resfin import matgrp
from resfin.chevalley import SL2, SL3, SL4, BudgetExceededError


def brute_ball(gens, n):
    """Oracle: minimal word length by enumerating all products up to length n."""
    out = {matgrp.identity(len(gens.mats[0])): 0}
    for length in range(1, n + 1):
        for combo in itertools.product(gens.mats, repeat=length):
            m = matgrp.identity(len(combo[0]))
            for s in combo:
                m = matgrp.mat_mul(m, s)
            if m not in out:
                out[m] = length
    return out


MINUS_I = ((-1, 0), (0, -1))


class TestWordBall:
    def test_radius_zero_and_one(self):
        gens = gr.sl2_st()
        assert gr.word_ball(gens, 0) == {matgrp.identity(2): 0}
        b1 = gr.word_ball(gens, 1)
        assert len(b1) == 5
        assert set(b1.values()) == {0, 1}

    def test_minus_identity_at_radius_two(self):
        b2 = gr.word_ball(gr.sl2_st(), 2)
        assert len(b2) == 16
        assert b2[MINUS_I] == 2

    def test_matches_brute_force(self):
        gens = gr.sl2_st()
        assert gr.word_ball(gens, 3) == brute_ball(gens, 3)
        gens3 = gr.elementary_set(3)
        assert gr.word_ball(gens3, 2) == brute_ball(gens3, 2)

    def test_budget(self):
        with pytest.raises(BudgetExceededError):
            gr.word_ball(gr.sl2_st(), 6, budget=10)

    def test_negative_radius(self):
        with pytest.raises(ValueError):
            gr.word_ball(gr.sl2_st(), -1)


class TestGeneratingSet:
    def test_rejects_asymmetric(self):
        t = matgrp.elementary(2, 1, 2, 1)
        with pytest.raises(ValueError):
            gr.GeneratingSet("bad", ("T",), (t,))

    def test_elementary_set(self):
        gens = gr.elementary_set(3)
        assert len(gens.mats) == 12
        assert dict(gens)["E13^-1"] == matgrp.elementary(3, 1, 3, -1)


class TestFarbGrowth:
    def test_frozen_first_values(self):
        t = gr.farb_growth(gr.sl2_st(), SL2, 4)
        assert t.f(1) == 6
        assert t.f(2) == 24
        assert t.rows[0].f_value == 0 and t.rows[0].ball_size == 1
        assert t.rows[1].witness == ((0, -1), (1, 0))
        assert t.rows[2].witness == MINUS_I
        assert (t.rows[2].detection.modulus, t.rows[2].detection.quotient_order) == (3, 24)
        assert t.family == "F_cong"

    def test_monotone_and_ball_sizes(self):
        t = gr.farb_growth(gr.sl2_st(), SL2, 5)
        values = [r.f_value for r in t.rows]
        assert values == sorted(values)
        sizes = [r.ball_size for r in t.rows]
        assert sizes[0:3] == [1, 5, 16]
        assert all(a <= b for a, b in zip(sizes, sizes[1:]))

    def test_power_table_skips_torsion(self):
        # S^2 = -I is kept (nontrivial), S^4 = I is skipped at k=4
        t2 = gr.farb_growth(gr.sl2_st(), SL2, 2, k=2)
        assert [(r.n, r.f_value) for r in t2.rows] == [(0, 0), (1, 24), (2, 24)]
        assert t2.rows[1].witness == ((0, -1), (1, 0))
        t4 = gr.farb_growth(gr.sl2_st(), SL2, 1, k=4)
        # at radius 1 only T^4 = E_12(4) survives; detected first mod 3
        assert t4.rows[1].detection.modulus == 3
        assert t4.rows[1].witness in (matgrp.elementary(2, 1, 2, 1), matgrp.elementary(2, 1, 2, -1))

    def test_selberg_inequality_small(self):
        plain = gr.farb_growth(gr.sl2_st(), SL2, 8)
        squared = gr.farb_growth(gr.sl2_st(), SL2, 4, k=2)
        for n in range(1, 5):
            assert squared.f(n) <= plain.f(2 * n)

    def test_central_family(self):
        t = gr.farb_growth(gr.sl2_st(), SL2, 2, allow_central=True)
        assert t.family == "F_cong_central"
        # the maximizer -I is central everywhere, so F(2) stays 24
        assert t.f(2) == 24
        assert t.rows[2].detection.central_quotient is False

    def test_worker_pool_is_deterministic(self):
        serial = gr.farb_growth(gr.sl2_st(), SL2, 3)
        parallel = gr.farb_growth(
            gr.sl2_st(), SL2, 3, workers=2, parallel_threshold=1
        )
        assert serial == parallel

    def test_bad_power(self):
        with pytest.raises(ValueError):
            gr.farb_growth(gr.sl2_st(), SL2, 2, k=0)


class TestCandidateSeq:
    def test_frozen_elements(self):
        assert gr.candidate_elements(gr.CandidateSeq(SL2), 3) == matgrp.elementary(2, 1, 2, 6)
        assert gr.candidate_elements(gr.CandidateSeq(SL2, (2,)), 2) == matgrp.elementary(2, 1, 2, 8)
        assert gr.candidate_elements(gr.CandidateSeq(SL2, (), 2), 4) == matgrp.elementary(2, 1, 2, 24)

    def test_validation(self):
        with pytest.raises(ValueError):
            gr.CandidateSeq(SL2, (), 0)
        with pytest.raises(ValueError):
            gr.CandidateSeq(SL2, (4,))
        with pytest.raises(ValueError):
            gr.CandidateSeq(SL2, (2, 2))
        with pytest.raises(ValueError):
            gr.CandidateSeq(SL2).r(0)
        with pytest.raises(ValueError):
            gr.CandidateSeq(SL2).r(65)

    def test_log_matches_materialized(self):
        for cs in (gr.CandidateSeq(SL2), gr.CandidateSeq(SL2, (2, 3))):
            for k in (1, 2, 7, 20, 40, 64):
                assert math.isclose(cs.r_log2(k), math.log2(cs.r(k)), rel_tol=1e-12)

    def test_valuations_match_factorization(self):
        cs = gr.CandidateSeq(SL2, (3,), 12)
        for k in (1, 2, 5, 11, 20):
            m = cs.e * cs.r(k)
            f = dict(arith_factors(m))
            for p in (2, 3, 5, 7, 11, 13, 23):
                assert cs.multiplier_valuation(k, p) == f.get(p, 0)


def arith_factors(m):
    from resfin import arith

    return arith.factorize(m).factors


class TestCandidateDAnalytic:
    def test_frozen_values(self):
        cs = gr.CandidateSeq(SL2)
        r = gr.candidate_D_analytic(cs, 3)
        assert (r.modulus, r.quotient_order) == (4, 48)
        r = gr.candidate_D_analytic(cs, 6)
        assert (r.modulus, r.quotient_order) == (7, 336)
        r = gr.candidate_D_analytic(gr.CandidateSeq(SL3), 6)
        assert (r.modulus, r.quotient_order) == (7, 343 * 48 * 342)

    def test_matches_materialized_search(self):
        for cs in (
            gr.CandidateSeq(SL2),
            gr.CandidateSeq(SL2, (2,)),
            gr.CandidateSeq(SL2, (), 2),
            gr.CandidateSeq(SL3, (5,), 3),
        ):
            for k in range(1, 41):
                if k > 20 and cs.s_primes:
                    continue
                lhs = gr.candidate_D_analytic(cs, k)
                rhs = matgrp.congruence_D(gr.candidate_elements(cs, k), cs.spec)
                assert (lhs.modulus, lhs.quotient_order) == (rhs.modulus, rhs.quotient_order)

    def test_central_variant(self):
        cs = gr.CandidateSeq(SL2)
        r = gr.candidate_D_analytic(cs, 3, allow_central=True)
        assert (r.modulus, r.quotient_order, r.central_quotient) == (4, 24, True)
        rhs = matgrp.congruence_D(gr.candidate_elements(cs, 3), SL2, allow_central=True)
        assert r == rhs

    def test_growth_sandwich(self):
        # order of the detecting quotient sits between (3/4) k^3 and (2k)^3
        cs = gr.CandidateSeq(SL2)
        for k in range(10, 301):
            d = gr.candidate_D_analytic(cs, k).quotient_order
            assert 3 * k**3 <= 4 * d
            assert d <= (2 * k) ** 3


class TestFitExponent:
    def test_exact_power_law(self):
        f = gr.fit_exponent([(k, k**8) for k in range(10, 100)])
        assert abs(f.slope - 8) < 1e-9
        assert f.max_residual < 1e-9
        assert abs(f.intercept) < 1e-9

    def test_noisy_slope_and_residual(self):
        pts = [(k, k**3 * (1.1 if k % 2 == 0 else 0.9)) for k in range(10, 60)]
        f = gr.fit_exponent(pts)
        assert abs(f.slope - 3) < 0.2
        assert 0.05 < f.max_residual < 0.25

    def test_rejections(self):
        with pytest.raises(ValueError):
            gr.fit_exponent([(1, 1), (2, 8)])
        with pytest.raises(ValueError):
            gr.fit_exponent([(1, 1), (2, 8), (3, -1)])
        with pytest.raises(ValueError):
            gr.fit_exponent([(2, 1), (2, 8), (2, 27)])


class TestShortUnipotentWord:
    def test_single_generator(self):
        assert gr.short_unipotent_word(SL3, 1) == ["E13"]

    def test_four_splits_as_two_by_two(self):
        w = gr.short_unipotent_word(SL3, 4)
        assert len(w) == 8
        assert gr.evaluate_word(3, w) == matgrp.elementary(3, 1, 3, 4)

    def test_highly_composite(self):
        z = 2520
        w = gr.short_unipotent_word(SL3, z)
        assert gr.evaluate_word(3, w) == matgrp.elementary(3, 1, 3, z)
        assert len(w) <= 250

    def test_negative_target(self):
        w = gr.short_unipotent_word(SL3, -7)
        assert gr.evaluate_word(3, w) == matgrp.elementary(3, 1, 3, -7)

    def test_seeded_large_targets(self):
        rng = random.Random(0)
        for _ in range(30):
            z = rng.randrange(1, 10**18)
            w = gr.short_unipotent_word(SL3, z)
            assert gr.evaluate_word(3, w) == matgrp.elementary(3, 1, 3, z)
            assert len(w) <= 4 * (1 + math.log2(z)) ** 2

    def test_other_positions_and_sizes(self):
        w = gr.short_unipotent_word(SL4, 12345, i=2, j=1)
        assert gr.evaluate_word(4, w) == matgrp.elementary(4, 2, 1, 12345)

    def test_inverse_word(self):
        w = gr.short_unipotent_word(SL3, 97)
        assert gr.evaluate_word(3, w + gr._invert_word(w)) == matgrp.identity(3)

    def test_rejections(self):
        with pytest.raises(ValueError):
            gr.short_unipotent_word(SL2, 5)
        with pytest.raises(ValueError):
            gr.short_unipotent_word(SL3, 0)
        with pytest.raises(ValueError):
            gr.short_unipotent_word(SL3, 5, i=1, j=1)
        with pytest.raises(ValueError):
            gr.evaluate_word(3, ["X12"])


def test_detection_is_viewpoint_free():
    # an element of the level-2 congruence subgroup has one detection result,
    # whether it is written in subgroup generators or as a bare matrix
    via_gamma2 = matgrp.mat_mul(matgrp.elementary(2, 1, 2, 2), matgrp.elementary(2, 2, 1, 2))
    assert via_gamma2 == ((5, 2), (2, 1))
    d1 = matgrp.congruence_D(via_gamma2, SL2)
    d2 = matgrp.congruence_D(((5, 2), (2, 1)), SL2)
    assert d1 == d2
    assert d1.quotient_order == matgrp.congruence_D(matgrp.mat_pow(via_gamma2, 1), SL2).quotient_order
