"""Grammar for user-supplied integer sequence formulas."""

import pytest
from hypothesis import given, strategies as st

from reclab.seqexpr import EBNF, SeqExprError, compile_sequence, parse_expr


class TestEval:
    @pytest.mark.parametrize(
        "text,k,expected",
        [
            ("k^2", 7, 49),
            ("k^3 - k", 4, 60),
            ("2^k", 10, 1024),
            ("k*(k+1)", 3, 12),
            ("-k + 5", 2, 3),
            ("k mod 7", 23, 2),
            ("2^k mod 10", 6, 4),
            ("2*k^2 + 3*k + 1", 2, 15),
            ("((k))", 9, 9),
            ("7", 123, 7),
        ],
    )
    def test_values(self, text, k, expected):
        assert compile_sequence(text)(k) == expected

    def test_power_right_associates(self):
        assert compile_sequence("2^3^2")(0) == 512

    def test_power_binds_tighter_than_unary(self):
        # -2^2 parses as -(2^2)
        assert compile_sequence("-2^2")(0) == -4

    def test_mul_before_add(self):
        assert compile_sequence("1 + 2*3")(0) == 7

    def test_mod_is_multiplicative_level(self):
        assert compile_sequence("10 mod 3 + 1")(0) == 2

    def test_whitespace_tolerated(self):
        assert compile_sequence("  k ^ 2  ")(5) == 25

    @given(st.integers(0, 500))
    def test_shifted_squares_closed_form(self, k):
        assert compile_sequence("k^2 + 1")(k) == k * k + 1


class TestErrors:
    @pytest.mark.parametrize(
        "text",
        [
            "",
            "   ",
            "k +",
            "k k",
            "(k",
            "k)",
            "2 ** 3",
            "k!",
            "x",
            "mod 3",
            "1.5",
        ],
    )
    def test_rejected(self, text):
        with pytest.raises(SeqExprError):
            parse_expr(text)

    def test_mod_zero(self):
        f = compile_sequence("k mod (k - 3)")
        assert f(5) == 1
        with pytest.raises(SeqExprError):
            f(3)

    def test_negative_exponent(self):
        f = compile_sequence("2^(k - 1)")
        assert f(3) == 4
        with pytest.raises(SeqExprError):
            f(0)

    def test_result_size_guard(self):
        f = compile_sequence("2^k")
        assert f(200) == 2**200  # big but fine
        with pytest.raises(SeqExprError):
            f(10_000_000)

    def test_stacked_power_guard(self):
        with pytest.raises(SeqExprError):
            compile_sequence("9^9^9")(0)


class TestEbnf:
    def test_constant_mentions_every_token(self):
        for tok in ("expr", "term", "power", "mod", '"k"', '"^"'):
            assert tok in EBNF
