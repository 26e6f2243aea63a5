"""Integer-set core: normalization, generators, windowed predicates."""

import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from reclab.errors import EmptyInput, NonIntegerPolynomial, TooFewElements
from reclab.intsets import (
    IntSet,
    Window,
    as_int_list,
    difference_set,
    format_set_json,
    format_set_lines,
    gen_k_times_nr,
    gen_l_r,
    gen_polynomial,
    is_thick_window,
    l_r_layer,
    lacunarity_ratios,
    load_set_file,
    parse_set_text,
    poly_eval_int,
    syndetic_gap,
)


class TestIntSet:
    def test_normalizes(self):
        s = IntSet((3, -1, 3, 0, 2))
        assert tuple(s) == (-1, 2, 3)  # sorted, deduped, zero dropped

    def test_membership_and_len(self):
        s = IntSet((5, 1, 9))
        assert 5 in s and 4 not in s and len(s) == 3

    def test_restrict(self):
        s = IntSet(range(-5, 6))
        assert tuple(s.restrict(Window(-2, 3))) == (-2, -1, 1, 2, 3)

    def test_empty_is_falsy(self):
        assert not IntSet(()) and len(IntSet((0,))) == 0


class TestWindow:
    def test_iteration(self):
        assert list(Window(2, 5)) == [2, 3, 4, 5]

    def test_empty_when_lo_exceeds_hi(self):
        w = Window(1, 0)
        assert len(w) == 0 and list(w) == [] and 1 not in w

    def test_contains(self):
        assert 0 in Window(-3, 3) and 4 not in Window(-3, 3)


class TestDifferenceSet:
    def test_basic(self):
        assert tuple(difference_set([1, 2])) == (-1, 1)

    def test_zero_allowed_in_input(self):
        assert tuple(difference_set([0, 3, 6])) == (-6, -3, 3, 6)

    def test_windowed(self):
        d = difference_set([0, 3, 6, 9], window=Window(-4, 4))
        assert tuple(d) == (-3, 3)

    def test_empty_raises(self):
        with pytest.raises(EmptyInput):
            difference_set([])

    @given(st.lists(st.integers(-40, 40), min_size=1, max_size=12))
    def test_symmetric(self, xs):
        d = set(difference_set(xs))
        assert all(-v in d for v in d)
        assert 0 not in d


class TestSyndeticGap:
    def test_consecutive_diffs(self):
        prof = syndetic_gap([3, 6, 9, 12], Window(1, 12))
        assert prof.max_gap == 3 and prof.gaps == (3, 3, 3)

    def test_singleton_degenerate(self):
        prof = syndetic_gap([5], Window(1, 10))
        assert prof.max_gap == 0 and prof.gaps == ()

    def test_one_sided(self):
        prof = syndetic_gap([-4, 2, 5], Window(-10, 10), side="one")
        assert prof.max_gap == 3  # positives only: {2, 5}


class TestThick:
    def test_run_present(self):
        s = [1, 2, 3, 10, 11, 12, 13]
        assert is_thick_window(s, 4, Window(1, 20))
        assert not is_thick_window(s, 5, Window(1, 20))


class TestGenerators:
    def test_k_times_nr(self):
        assert tuple(gen_k_times_nr(2, 3)) == (2, 4, 6)
        assert tuple(gen_k_times_nr(1, 1)) == (1,)

    def test_l_r_layers(self):
        # base step r+2, layer k = (r+2)^k * {1..r}
        assert tuple(gen_l_r(2, 2)) == (1, 2, 4, 8, 16, 32)
        assert tuple(l_r_layer(2, 1)) == (4, 8)
        assert tuple(l_r_layer(3, 0)) == (1, 2, 3)

    def test_l_r_cardinality(self):
        for r in (2, 3, 4):
            for k_max in (0, 1, 3):
                assert len(gen_l_r(r, k_max)) == r * (k_max + 1)

    def test_l_r_nesting(self):
        small = set(gen_l_r(3, 2))
        big = set(gen_l_r(3, 3))
        assert small < big

    def test_polynomial(self):
        assert tuple(gen_polynomial([1, 0, 1], 4)) == (2, 5, 10, 17)
        # zeros dropped: n^2 - 1 at n=1
        assert tuple(gen_polynomial([-1, 0, 1], 3)) == (3, 8)

    def test_polynomial_fractional_coeffs_ok_when_integral(self):
        # n(n+1)/2 is always integral
        assert tuple(gen_polynomial([Fraction(0), Fraction(1, 2), Fraction(1, 2)], 4)) == (1, 3, 6, 10)

    def test_polynomial_non_integer_rejected(self):
        with pytest.raises(NonIntegerPolynomial):
            gen_polynomial([Fraction(1, 2)], 3)

    def test_poly_eval(self):
        assert poly_eval_int([Fraction(1), Fraction(0), Fraction(1)], 7) == 50


class TestLacunarity:
    def test_exact_min_ratio(self):
        for r in (2, 3, 4):
            ratio, lac = lacunarity_ratios(gen_l_r(r, 3))
            assert lac and ratio == Fraction(r, r - 1)

    def test_needs_two(self):
        with pytest.raises(TooFewElements):
            lacunarity_ratios([7])

    def test_truncation_of_consecutive_integers_still_passes(self):
        # any finite increasing listing has min ratio > 1; the flag is
        # explicitly window-scale only
        ratio, lac = lacunarity_ratios([1, 2, 3, 4])
        assert lac and ratio == Fraction(4, 3)


class TestSetIO:
    def test_json_roundtrip(self, tmp_path):
        path = tmp_path / "s.json"
        path.write_text(format_set_json([3, 1, 2]))
        assert load_set_file(str(path)) == [1, 2, 3]  # writers sort and dedupe

    def test_lines_roundtrip(self, tmp_path):
        path = tmp_path / "s.txt"
        path.write_text(format_set_lines([5, -2, 0]))
        assert load_set_file(str(path)) == [-2, 0, 5]

    def test_parse_auto_detect(self):
        assert parse_set_text("[1, 2, 3]") == [1, 2, 3]
        assert parse_set_text("1\n2\n-3\n") == [1, 2, -3]

    def test_as_int_list_keeps_zero(self):
        assert as_int_list([0, 2]) == [0, 2]
        assert as_int_list(IntSet((0, 2))) == [2]
