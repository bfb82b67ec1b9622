"""Tests for number rings, split primes, and residue-field detection.

Split-prime lists were cross-checked against the congruence descriptions
(p = 1 mod 4 for x^2+1, p = +-1 mod 8 for x^2-2, p = 1 mod 5 for the fifth
cyclotomic) before freezing; detection values were derived by evaluating
the residue maps by hand.
"""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from resfin import numring as nr
from resfin.matgrp import RangeExhaustedError, UndetectableError

ZI = nr.GAUSSIAN
R2 = nr.SQRT2


class TestConstruction:
    def test_names(self):
        assert ZI.name == "Z[x]/(x^2+1)"
        assert R2.name == "Z[x]/(x^2-2)"
        assert nr.NumberRing((1, 0, 1), 2).name == "Z[x]/(x^2+1)[1/2]"

    def test_degree_and_discriminant(self):
        assert (ZI.degree, ZI.discriminant()) == (2, -4)
        assert (R2.degree, R2.discriminant()) == (2, 8)
        assert nr.NumberRing((0, 1)).discriminant() == 1
        assert nr.NumberRing((1, 0, 0, 0, 1)).discriminant() == 256
        assert nr.NumberRing((1, 1, 1, 1, 1)).discriminant() == 125

    def test_rejects_nonmonic_and_trivial(self):
        with pytest.raises(ValueError):
            nr.NumberRing((2, 3))
        with pytest.raises(ValueError):
            nr.NumberRing((1,))
        with pytest.raises(ValueError):
            nr.NumberRing((1, 0, 1), 0)

    def test_rejects_reducible(self):
        for coeffs in (
            (-1, 0, 1),  # (x-1)(x+1)
            (1, 2, 1),  # (x+1)^2
            (-1, 0, 0, 0, 1),  # x^4 - 1
            (2, 0, 3, 0, 1),  # (x^2+1)(x^2+2)
            (6, 0, -5, 0, 1),  # (x^2-2)(x^2-3)
            (0, 0, 1),  # x^2
        ):
            with pytest.raises(ValueError):
                nr.NumberRing(coeffs)

    def test_accepts_irreducible_quartics(self):
        # x^4+1 is reducible mod every prime, so the lift-and-recombine
        # stage has to do the work
        assert nr.NumberRing((1, 0, 0, 0, 1)).degree == 4
        assert nr.NumberRing((1, 1, 1, 1, 1)).degree == 4


class TestArithmetic:
    def test_frozen_products(self):
        i = ZI.element((0, 1))
        assert (i * i).coords == (-1, 0)
        a = ZI.element((3, 7))
        assert (ZI.one() * a) == a
        s = R2.element((1, 1))
        assert (s * s).coords == (3, 2)

    def test_add_sub_neg(self):
        a = ZI.element((3, 7))
        assert (a + a).coords == (6, 14)
        assert (a - a) == ZI.zero()
        assert (-a).coords == (-3, -7)

    def test_mixed_rings_rejected(self):
        with pytest.raises(ValueError):
            ZI.element((1, 0)) + R2.element((1, 0))
        with pytest.raises(ValueError):
            ZI.element((1, 0)) * R2.element((1, 0))

    def test_localized_normalization(self):
        ring = nr.NumberRing((1, 0, 1), 2)
        half = ring.element((1, 0), 1)
        assert half.denom_exp == 1
        whole = half + half
        assert (whole.coords, whole.denom_exp) == ((1, 0), 0)
        assert (half * ring.element((2, 0))).denom_exp == 0

    def test_element_validation(self):
        with pytest.raises(ValueError):
            ZI.element((1, 2, 3))
        with pytest.raises(ValueError):
            ZI.element((1, 0), -1)
        ring = nr.NumberRing((1, 0, 1), 2)
        with pytest.raises(ValueError):
            nr.RingElement(ring, (2, 4), 1)  # not normalized

    @given(
        st.tuples(st.integers(-30, 30), st.integers(-30, 30)),
        st.tuples(st.integers(-30, 30), st.integers(-30, 30)),
        st.tuples(st.integers(-30, 30), st.integers(-30, 30)),
    )
    @settings(max_examples=60, deadline=None)
    def test_ring_axioms_sample(self, x, y, z):
        a, b, c = ZI.element(x), ZI.element(y), ZI.element(z)
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


class TestSplitPrimes:
    def test_frozen_lists(self):
        assert [p for p, _ in nr.split_primes(ZI, 30)] == [5, 13, 17, 29]
        assert [p for p, _ in nr.split_primes(nr.NumberRing((0, 1)), 10)] == [2, 3, 5, 7]
        assert [p for p, _ in nr.split_primes(R2, 25)] == [7, 17, 23]
        assert [p for p, _ in nr.split_primes(nr.NumberRing((1, 0, 0, 0, 1)), 40)] == [17]
        assert [p for p, _ in nr.split_primes(nr.NumberRing((1, 1, 1, 1, 1)), 50)] == [11, 31, 41]

    def test_roots_are_distinct_roots(self):
        for ring in (ZI, R2, nr.NumberRing((1, 1, 1, 1, 1))):
            for p, roots in nr.split_primes(ring, 60):
                assert len(roots) == ring.degree
                assert len(set(roots)) == len(roots)
                for r in roots:
                    value = sum(c * r**k for k, c in enumerate(ring.min_poly))
                    assert value % p == 0

    def test_bad_primes_skipped(self):
        assert all(p != 2 for p, _ in nr.split_primes(ZI, 100))
        assert all(p != 2 for p, _ in nr.split_primes(R2, 100))

    def test_limit_validation(self):
        with pytest.raises(ValueError):
            nr.split_primes(ZI, 1)


class TestReduceElement:
    def test_frozen_values(self):
        assert nr.reduce_element(ZI.element((3, 0)), 5, 2) == 3
        assert nr.reduce_element(ZI.element((0, 5)), 13, 5) == 12
        assert nr.reduce_element(ZI.element((0, 5)), 5, 2) == 0

    def test_localized_value(self):
        ring = nr.NumberRing((1, 0, 1), 2)
        half_i = ring.element((0, 1), 1)
        assert nr.reduce_element(half_i, 5, 2) == 1  # 2 * inverse(2) mod 5

    def test_rejections(self):
        with pytest.raises(ValueError):
            nr.reduce_element(ZI.element((1, 0)), 6, 2)  # composite modulus
        with pytest.raises(ValueError):
            nr.reduce_element(ZI.element((1, 0)), 5, 1)  # not a root
        ring = nr.NumberRing((1, 0, 1), 5)
        with pytest.raises(ValueError):
            nr.reduce_element(ring.element((1, 0)), 5, 2)  # p divides inverted

    @given(
        st.tuples(st.integers(-50, 50), st.integers(-50, 50)),
        st.tuples(st.integers(-50, 50), st.integers(-50, 50)),
    )
    @settings(max_examples=60, deadline=None)
    def test_homomorphism(self, x, y):
        a, b = ZI.element(x), ZI.element(y)
        for p, roots in nr.split_primes(ZI, 30):
            for r in roots:
                fa, fb = nr.reduce_element(a, p, r), nr.reduce_element(b, p, r)
                assert nr.reduce_element(a + b, p, r) == (fa + fb) % p
                assert nr.reduce_element(a * b, p, r) == fa * fb % p


class TestDetectSplit:
    def test_frozen_values(self):
        assert nr.detect_split(ZI.element((0, 5))) == nr.SplitDetection(13, 5, 12)
        assert nr.detect_split(ZI.element((1, 0))) == nr.SplitDetection(5, 2, 1)
        assert nr.detect_split(R2.element((0, 7))) == nr.SplitDetection(17, 6, 8)
        assert nr.detect_split(nr.NumberRing((0, 1)).element((12,))) == nr.SplitDetection(5, 0, 2)

    def test_zero_and_limit(self):
        with pytest.raises(UndetectableError):
            nr.detect_split(ZI.zero())
        with pytest.raises(RangeExhaustedError):
            nr.detect_split(ZI.element((0, 5)), limit=3)

    def test_residue_is_live(self):
        rng = random.Random(11)
        for _ in range(25):
            coords = (rng.randrange(-999, 1000), rng.randrange(-999, 1000))
            if coords == (0, 0):
                continue
            d = nr.detect_split(ZI.element(coords))
            assert d.residue != 0
            assert nr.reduce_element(ZI.element(coords), d.prime, d.root) == d.residue


class TestMinDetectingIdeal:
    def test_frozen_values(self):
        assert nr.min_detecting_ideal(ZI.element((0, 5))) == nr.IdealDetection(2, (1, 1), 2)
        assert nr.min_detecting_ideal(ZI.element((1, 0))) == nr.IdealDetection(2, (1, 1), 2)
        # 1+i dies at the ramified ideal over 2; the first split prime wins
        assert nr.min_detecting_ideal(ZI.element((1, 1))) == nr.IdealDetection(5, (2, 1), 5)
        # (1+i) * 5 * 13 dies everywhere small except the inert prime 3
        assert nr.min_detecting_ideal(ZI.element((65, 65))) == nr.IdealDetection(3, (1, 0, 1), 9)

    def test_zero_and_limit(self):
        with pytest.raises(UndetectableError):
            nr.min_detecting_ideal(ZI.zero())
        with pytest.raises(RangeExhaustedError):
            nr.min_detecting_ideal(ZI.element((0, 5)), limit=1)

    def test_never_beaten_by_split_detection(self):
        rng = random.Random(23)
        for ring in (ZI, R2):
            for _ in range(30):
                coords = tuple(rng.randrange(-9999, 10000) for _ in range(ring.degree))
                if all(c == 0 for c in coords):
                    continue
                a = ring.element(coords)
                assert nr.min_detecting_ideal(a).norm <= nr.detect_split(a).prime


class TestParseRing:
    def test_round_trips(self):
        assert nr.parse_ring("f = 1,0,1; invert = 1") == ZI
        assert nr.parse_ring("f=-2,0,1;invert=7") == nr.NumberRing((-2, 0, 1), 7)
        assert nr.parse_ring("f = 1,0,1") == ZI

    def test_rejections(self):
        for text in ("", "g = 1,0,1", "f = 1,0,1; invert = -2", "f = x^2+1", "f = 2,3"):
            with pytest.raises(ValueError):
                nr.parse_ring(text)


def test_split_density_matches_half():
    import resfin.arith as arith

    split = nr.split_primes(ZI, 10**5)
    total = len(arith.primes_up_to(10**5))
    ratio = len(split) / total
    assert abs(ratio - 0.5) < 0.1
