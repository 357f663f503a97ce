"""Weighted minimal forms: weights, canonical spellings, enumeration."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from grigorchuk import (MinimalForms, SCALE, TUNED_WEIGHTS, UNIT_WEIGHTS,
                        parse_weights, word_weight, words_equal)
from grigorchuk.minforms import format_scaled, is_triangular, scale_decimal

words = st.text(alphabet="abcd", max_size=9)


@pytest.fixture(scope="module")
def unit_forms():
    return MinimalForms(dict(UNIT_WEIGHTS))


@pytest.fixture(scope="module")
def tuned_forms():
    return MinimalForms(dict(TUNED_WEIGHTS))


class TestWeights:
    def test_parse_block(self):
        w = parse_weights("a=1 b=3.33 c=2.8 d=1.06")
        assert w == TUNED_WEIGHTS

    def test_scaling_round_trip(self):
        for text in ("1", "3.33", "0.655", "12.0001"):
            assert format_scaled(scale_decimal(text)) == text

    def test_word_weight(self):
        assert word_weight("dada", TUNED_WEIGHTS) == 2 * 10_000 + 2 * 10_600

    def test_triangular(self):
        assert is_triangular(UNIT_WEIGHTS)
        assert is_triangular(TUNED_WEIGHTS)
        assert not is_triangular({"a": SCALE, "b": 5 * SCALE,
                                  "c": SCALE, "d": SCALE})

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_weights("a=1 b=x")
        with pytest.raises(ValueError):
            parse_weights("a=1 b=1 c=1")


class TestCanonicalForm:
    def test_appendix_convention(self, tuned_forms):
        assert tuned_forms.minimal_form("dada") == "adad"

    def test_klein_respelling(self, unit_forms):
        assert unit_forms.minimal_form("bc") == "d"

    def test_trivial_words(self, unit_forms):
        assert unit_forms.minimal_form("") == ""
        assert unit_forms.minimal_form("abba") == ""

    def test_lex_order_prefers_a_then_d(self, unit_forms):
        # among equal-weight equal-length spellings the order a < d < c < b
        # picks the least, matching the fixture's buffer spellings
        assert unit_forms.minimal_form("adad") == "adad"

    @given(words)
    def test_form_is_equal_and_no_heavier(self, unit_forms, w):
        m = unit_forms.minimal_form(w)
        assert words_equal(m, w)
        assert word_weight(m, UNIT_WEIGHTS) <= word_weight(w, UNIT_WEIGHTS)

    @given(words)
    def test_idempotent(self, tuned_forms, w):
        m = tuned_forms.minimal_form(w)
        assert tuned_forms.minimal_form(m) == m


class TestEnumeration:
    def test_radius_zero(self, unit_forms):
        assert unit_forms.enumerate_forms(0) == [""]

    def test_radius_one(self, unit_forms):
        assert unit_forms.enumerate_forms(1) == ["", "a", "d", "c", "b"]

    def test_h_forms_up_to_two_letters(self, unit_forms):
        got = unit_forms.enumerate_forms(2, lambda w: w.count("a") % 2 == 0)
        assert got == ["", "d", "c", "b"]

    def test_weight_filter(self, tuned_forms):
        light = tuned_forms.enumerate_forms(4, max_weight=3 * SCALE)
        assert all(word_weight(w, TUNED_WEIGHTS) <= 3 * SCALE for w in light)
        assert "a" in light and "adad" not in light

    def test_sorted_by_priority(self, tuned_forms):
        forms = tuned_forms.enumerate_forms(4)
        weights = [word_weight(w, TUNED_WEIGHTS) for w in forms]
        assert weights == sorted(weights)
