"""Tests for the transducer graph: parsing, verification, cycle analysis,
and word transduction against the bundled machine."""

import math
import random
from itertools import product

import pytest

from grigorchuk import (
    GraphFormatError,
    TransduceError,
    first_loop_ratio,
    max_cycle_ratio,
    parse_graph,
    preimage_constant,
    psi,
    serialize_graph,
    transduce,
    verify_graph,
    words_equal,
)
from grigorchuk.automaton import path_excess_constant
from grigorchuk.minforms import SCALE, UNIT_WEIGHTS, word_weight
from grigorchuk.words import in_H

# A structurally valid machine used for exact-ratio checks.  Its outputs are
# not group-correct (verify_graph would flag them); only the shape matters
# here.  Chunks weigh 2 apiece, the heavy output weighs 6, and every other
# output weighs 2, so the worst cycle ratio is exactly 2*6/(2+2) = 3.
TOY = """\
weights a=1 b=1 c=1 d=1
state (-,-) input initial final
edge (-,-) in (da,da) out cacaca -> (-,-)
edge (-,-) in (da,ca) out ca -> (-,-)
edge (-,-) in (da,ba) out ca -> (-,-)
edge (-,-) in (ca,da) out ca -> (-,-)
edge (-,-) in (ca,ca) out ca -> (-,-)
edge (-,-) in (ca,ba) out ca -> (-,-)
edge (-,-) in (ba,da) out ca -> (-,-)
edge (-,-) in (ba,ca) out ca -> (-,-)
edge (-,-) in (ba,ba) out ca -> (-,-)
"""


def random_pair(rng, max_len=14):
    """A pair in the image of psi: psi of a random even-a-count word."""
    while True:
        h = "".join(rng.choice("abcd") for _ in range(rng.randrange(max_len + 1)))
        if in_H(h):
            return psi(h)


class TestParsing:
    def test_fixture_shape(self, fixture_graph):
        kinds = [st.kind for st in fixture_graph.states.values()]
        assert len(fixture_graph.states) == 141
        assert kinds.count("input") == 12
        assert kinds.count("output") == 129
        assert len(fixture_graph.transitions) == 276

    def test_serialize_round_trip(self, fixture_text, fixture_graph):
        assert serialize_graph(fixture_graph) == fixture_text

    def test_toy_round_trip_stable(self):
        once = serialize_graph(parse_graph(TOY))
        assert serialize_graph(parse_graph(once)) == once

    def test_duplicate_state(self):
        text = TOY.replace(
            "state (-,-) input initial final",
            "state (-,-) input initial final\nstate (-,-) input",
        )
        with pytest.raises(GraphFormatError, match="duplicate state"):
            parse_graph(text)

    def test_dangling_endpoint(self):
        text = TOY.replace("out cacaca -> (-,-)", "out cacaca -> (b,-)")
        with pytest.raises(GraphFormatError, match="dangling endpoint"):
            parse_graph(text)

    def test_wrong_successor_count(self):
        lines = TOY.strip().splitlines()
        with pytest.raises(GraphFormatError, match="wrong successor count"):
            parse_graph("\n".join(lines[:-1]))

    def test_non_minimal_buffer(self):
        text = TOY + "state (bc,-) input\n"
        with pytest.raises(GraphFormatError, match="non-minimal buffer"):
            parse_graph(text)

    def test_no_initial_state(self):
        text = TOY.replace("input initial final", "input")
        with pytest.raises(GraphFormatError, match="no initial state"):
            parse_graph(text)

    def test_weights_line_required_first(self):
        text = "state (-,-) input initial\n" + TOY
        with pytest.raises(GraphFormatError, match="weights line must come first"):
            parse_graph(text)

    def test_unknown_directive(self):
        with pytest.raises(GraphFormatError, match="unknown directive"):
            parse_graph(TOY + "frobnicate (-,-)\n")

    def test_bad_chunk_shape(self):
        text = TOY.replace("in (da,da)", "in (ad,da)")
        with pytest.raises(GraphFormatError, match="not of the form xa"):
            parse_graph(text)


class TestVerification:
    def test_fixture_verifies_clean(self, fixture_graph):
        report = verify_graph(fixture_graph)
        assert report.ok
        assert report.violations == []
        assert report.input_states == 12
        assert report.output_states == 129
        assert report.transitions == 276
        assert report.swapped_successors == 23

    def test_corrupted_label_caught(self, fixture_text):
        # swap one output for a weight-minimal word of the wrong element, so
        # exactly the cancellation check fires and nothing else
        bad = fixture_text.replace(
            "edge (da,da) in (da,da) out acacacac -> (-,-)",
            "edge (da,da) in (da,da) out acacacad -> (-,-)",
            1,
        )
        assert bad != fixture_text
        report = verify_graph(parse_graph(bad))
        assert not report.ok
        assert len(report.violations) == 1
        assert "acacacad" in report.violations[0]


class TestCycleRatio:
    def test_toy_exact(self):
        ratio, witness = max_cycle_ratio(parse_graph(TOY))
        assert ratio == pytest.approx(3.0, abs=1e-12)
        assert witness.ratio == ratio
        assert witness.out_weight == 6.0
        assert witness.in_weight0 == witness.in_weight1 == 2.0

    def test_fixture_eta(self, fixture_graph):
        ratio, witness = max_cycle_ratio(fixture_graph)
        assert ratio == pytest.approx(4.233609, abs=1e-4)
        # the witness must reproduce its own ratio from the reported weights
        recomputed = 2 * witness.out_weight / (
            witness.in_weight0 + witness.in_weight1)
        assert recomputed == pytest.approx(ratio, abs=1e-9)
        assert witness.cycle

    def test_fixture_eta_unit_weights(self, fixture_graph):
        ratio, _ = max_cycle_ratio(fixture_graph, dict(UNIT_WEIGHTS))
        assert ratio == pytest.approx(4.5, abs=1e-9)

    def test_special_transitions_raise_ratio(self, fixture_graph):
        excluded, _ = max_cycle_ratio(fixture_graph)
        included, _ = max_cycle_ratio(fixture_graph, exclude_special=False)
        assert included == pytest.approx(5.473016, abs=1e-4)
        assert included > excluded

    def test_first_loop_ratio(self, fixture_graph):
        assert first_loop_ratio(fixture_graph) == pytest.approx(
            3.689320, abs=5e-3)

    def test_constants_finite(self, fixture_graph):
        assert preimage_constant(fixture_graph) == pytest.approx(
            372.734150, abs=1e-2)
        assert path_excess_constant(fixture_graph) == pytest.approx(
            30.25, abs=1e-6)


class TestTransduce:
    def test_known_output(self, fixture_graph):
        result = transduce(fixture_graph, ("dada", "dada"))
        assert result.output == (
            "cacabacacabacacacacabacacabacacacacacaca")
        assert not result.used_special

    def test_special_path(self, fixture_graph):
        result = transduce(fixture_graph, ("", "b"))
        assert result.output == "d"
        assert result.used_special
        assert result.consumed_chunks == 0

    def test_identity_pair(self, fixture_graph):
        result = transduce(fixture_graph, ("", ""))
        assert words_equal(result.output, "")

    def test_rejects_pair_outside_image(self, fixture_graph):
        with pytest.raises(TransduceError):
            transduce(fixture_graph, ("da", "ca"))

    def test_exhaustive_small_consistency(self, fixture_graph):
        for length in range(7):
            for letters in product("abcd", repeat=length):
                h = "".join(letters)
                if not in_H(h):
                    continue
                pair = psi(h)
                out = transduce(fixture_graph, pair).output
                assert in_H(out)
                back = psi(out)
                assert words_equal(back[0], pair[0])
                assert words_equal(back[1], pair[1])

    def test_random_consistency_and_weight_bound(self, fixture_graph):
        rng = random.Random(20250823)
        eta, _ = max_cycle_ratio(fixture_graph)
        slack = preimage_constant(fixture_graph)
        w = fixture_graph.weights
        specials_used = 0
        for _ in range(60):
            pair = random_pair(rng)
            result = transduce(fixture_graph, pair)
            back = psi(result.output)
            assert words_equal(back[0], pair[0])
            assert words_equal(back[1], pair[1])
            # weights here are in plain units: word_weight is scaled by
            # SCALE while the additive constant is not
            biggest = max(word_weight(pair[0], w),
                          word_weight(pair[1], w)) / SCALE
            out_weight = word_weight(result.output, w) / SCALE
            assert out_weight <= eta * biggest + slack
            specials_used += result.used_special
        assert specials_used > 0

    def test_output_weight_not_wildly_padded(self, fixture_graph):
        # a long balanced pair should come out near the cycle ratio, far
        # under the additive constant regime
        pair = psi("abab" * 12)
        result = transduce(fixture_graph, pair)
        w = fixture_graph.weights
        biggest = max(word_weight(pair[0], w), word_weight(pair[1], w))
        assert word_weight(result.output, w) <= 4.5 * biggest

    def test_log_preimage_constant_sane(self, fixture_graph):
        assert math.isfinite(preimage_constant(fixture_graph))
        assert preimage_constant(fixture_graph) > 0
