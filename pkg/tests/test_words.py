"""Word-level operations: reduction, the tree action, psi and sections."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grigorchuk import (act, free_reduce, in_B, in_H, pair_in_section_image,
                        psi, psi_preimage_basic, rev, sigma, tau, words_equal)
from grigorchuk.words import check_word, sections

words = st.text(alphabet="abcd", max_size=12)
binary = st.text(alphabet="01", min_size=1, max_size=8)


def all_words(max_len):
    stack = [""]
    while stack:
        w = stack.pop()
        yield w
        if len(w) < max_len:
            stack.extend(w + x for x in "abcd")


class TestReduction:
    def test_empty(self):
        assert free_reduce("") == ""

    def test_involutions_cancel(self):
        for x in "abcd":
            assert free_reduce(x + x) == ""

    def test_klein_products(self):
        assert free_reduce("bc") == "d"
        assert free_reduce("cd") == "b"
        assert free_reduce("db") == "c"
        assert free_reduce("badb") == "bac"

    def test_rejects_bad_letter(self):
        with pytest.raises(ValueError):
            check_word("abx")

    @given(words)
    def test_idempotent(self, w):
        assert free_reduce(free_reduce(w)) == free_reduce(w)

    @given(words)
    def test_no_adjacent_same_class(self, w):
        r = free_reduce(w)
        for x, y in zip(r, r[1:]):
            assert (x == "a") != (y == "a")

    @given(words)
    def test_rev_is_inverse(self, w):
        assert free_reduce(w + rev(w)) == ""
        assert rev(rev(w)) == w


class TestAction:
    def test_a_flips_first(self):
        assert act("a", "01") == "11"
        assert act("a", "10") == "00"

    def test_abab_on_zeros(self):
        assert act("abab", "0000") == "0110"

    def test_identity_word(self):
        assert act("", "0101") == "0101"

    @given(words, binary)
    def test_preserves_length(self, w, s):
        assert len(act(w, s)) == len(s)

    @given(words, binary)
    def test_reduction_preserves_action(self, w, s):
        assert act(w, s) == act(free_reduce(w), s)

    @given(words, binary)
    def test_inverse_action(self, w, s):
        assert act(rev(w), act(w, s)) == s


class TestPsi:
    def test_generator_sections(self):
        assert sections("b") == (0, "a", "c")
        assert psi("b") == ("a", "c")
        assert psi("d") == ("", "b")

    def test_even_a_words(self):
        assert psi("abab") == ("ca", "ac")
        assert psi("aca") == ("d", "a")

    def test_parity(self):
        assert in_H("abab")
        assert in_H("aca")
        assert not in_H("ab")

    @given(words)
    def test_section_shrinks(self, w):
        r = free_reduce(w)
        if not in_H(r):
            return
        w0, w1 = psi(r)
        bound = (len(r) + 1) // 2 + 1
        assert len(w0) <= bound and len(w1) <= bound

    def test_section_identity_small(self):
        for w in all_words(5):
            if not in_H(w):
                continue
            w0, w1 = psi(w)
            for s in ("000", "101", "110"):
                assert act(w, "0" + s) == "0" + act(w0, s)
                assert act(w, "1" + s) == "1" + act(w1, s)


class TestSigmaTau:
    def test_generator_values(self):
        assert sigma("a") == "aca"
        assert sigma("b") == "d"
        assert sigma("d") == "c"
        assert tau("a") == "d"

    def test_doubling_identity_generators(self):
        for g in ("a", "b", "c", "d", "ab", "da"):
            w0, w1 = psi(free_reduce(sigma(g)))
            assert words_equal(w0, tau(g))
            assert words_equal(w1, g)


class TestPreimage:
    def test_known_pair(self):
        assert pair_in_section_image("ca", "ac")
        assert psi_preimage_basic("ca", "ac") == "abab"

    def test_rejected_pair(self):
        assert not pair_in_section_image("da", "ca")
        with pytest.raises(ValueError):
            psi_preimage_basic("da", "ca")

    def test_b_membership(self):
        assert in_B("")
        assert in_B("b")
        assert not in_B("d")
        assert not in_B("a")

    def test_roundtrip_small(self):
        for h in all_words(5):
            if not in_H(h):
                continue
            h0, h1 = psi(h)
            if not pair_in_section_image(h0, h1):
                continue
            w = psi_preimage_basic(h0, h1)
            v0, v1 = psi(free_reduce(w))
            assert words_equal(v0, h0) and words_equal(v1, h1)
            assert len(w) <= 4 * max(len(h0), len(h1)) + 12
