"""The section-preimage transducer: file format, verification, ratios, runs.

The machine reads a pair of words chunk by chunk (a chunk is a
{b,c,d}-letter followed by a) and emits a word whose section pair equals
the consumed input, as group elements.  Vertices carry a buffer pair of
minimal-form words: input vertices consume one chunk on each stream and
have all nine successors, output vertices emit their single label and
move to the buffer with that label's sections cancelled off.

The central invariant, checked by the verifier for every output
transition labelled v from buffer (u0,u1) to (u0',u1'), is

    element(v0 * u0') = element(u0)   and   element(v1 * u1') = element(u1)

with (v0,v1) the section pair of v: the sections of the emitted output
times the remaining buffer always equal the consumed input.  Because all
generators are involutions, a buffer pair may equally be stored with its
components swapped; the verifier and the runner accept either
orientation and track the swap.

Cycle analysis bounds the output weight of arbitrarily long runs: the
maximal ratio 2*out/(in0+in1) over directed cycles, found by parametric
binary search with exact scaled-integer arithmetic, is the certified
growth constant of the machine.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .minforms import (MinimalForms, SCALE, Weight, format_scaled,
                       parse_weights, word_weight)
from .words import (check_word, free_reduce, in_B, in_H,
                    pair_in_section_image, psi, psi_preimage_basic, rev,
                    sigma)

Buffer = tuple[str, str]

LAMBDA = "-"
PAD = "_"

# Chunk-shaped replacements for a trailing {b,c,d}-letter, element-equal
# to the letter they replace; they let any minimal form be consumed as a
# sequence of (letter, a) chunks.
CHUNKED_LETTER = {"b": "cadadada", "c": "badadada", "d": "dacadadadaba"}

# One block of neutral padding in chunk shape ((da)^4 is trivial).
PADDING_BLOCK = "dadadada"


class GraphFormatError(ValueError):
    """Structural problem in a transducer graph file."""


class TransduceError(RuntimeError):
    """A run could not be completed on the given graph."""


@dataclass
class State:
    buffer: Buffer
    kind: str                     # "input" or "output"
    initial: bool = False
    final: bool = False


@dataclass
class Transition:
    src: Buffer
    dst: Buffer
    chunk: Buffer | None = None   # input label (xa, ya)
    pad: str | None = None        # special input label: the consumed word u
    output: str | None = None     # output label
    special: bool = False

    def consumed(self, w: Weight) -> tuple[int, int]:
        if self.chunk is not None:
            return word_weight(self.chunk[0], w), word_weight(self.chunk[1], w)
        if self.pad is not None:
            return 0, word_weight(self.pad, w)
        return 0, 0

    def emitted(self, w: Weight) -> int:
        return word_weight(self.output, w) if self.output is not None else 0


@dataclass
class CycleReport:
    cycle: list[Transition]
    in_weight0: float
    in_weight1: float
    out_weight: float
    ratio: float


@dataclass
class VerificationReport:
    violations: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    input_states: int = 0
    output_states: int = 0
    transitions: int = 0
    swapped_successors: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations


def _buffer_to_text(b: Buffer) -> str:
    return f"({b[0] or LAMBDA},{b[1] or LAMBDA})"


def _text_to_buffer(text: str, where: str) -> Buffer:
    if not (text.startswith("(") and text.endswith(")") and "," in text):
        raise GraphFormatError(f"{where}: malformed buffer {text!r}")
    left, _, right = text[1:-1].partition(",")
    out = []
    for part in (left, right):
        if part == LAMBDA:
            out.append("")
        else:
            check_word(part)
            out.append(part)
    return out[0], out[1]


class TransducerGraph:
    def __init__(self, weights: Weight):
        self.weights = dict(weights)
        self.states: dict[Buffer, State] = {}
        self.transitions: list[Transition] = []
        self.forms = MinimalForms(weights)

    # -- construction -------------------------------------------------------

    def add_state(self, buffer: Buffer, kind: str, initial: bool = False,
                  final: bool = False) -> State:
        if buffer in self.states:
            raise GraphFormatError(f"duplicate state {_buffer_to_text(buffer)}")
        st = State(buffer, kind, initial, final)
        self.states[buffer] = st
        return st

    def resolve(self, buffer: Buffer) -> Buffer | None:
        """Find a stored state for the buffer, directly or swapped."""
        if buffer in self.states:
            return buffer
        swapped = (buffer[1], buffer[0])
        if swapped in self.states:
            return swapped
        return None

    def initial_state(self) -> State:
        for st in self.states.values():
            if st.initial:
                return st
        raise GraphFormatError("no initial state")

    def input_transitions(self, src: Buffer) -> dict[Buffer, Transition]:
        return {t.chunk: t for t in self.transitions
                if t.src == src and t.chunk is not None and not t.special}

    def output_transition(self, src: Buffer) -> Transition | None:
        for t in self.transitions:
            if t.src == src and t.output is not None:
                return t
        return None

    def special_transitions(self, src: Buffer) -> dict[str, Transition]:
        return {t.pad: t for t in self.transitions
                if t.src == src and t.special and t.pad is not None}


# --- parsing and serialization ---------------------------------------------

def parse_graph(text: str) -> TransducerGraph:
    """Parse the line-oriented graph format; raise GraphFormatError early.

    Structural requirements enforced here: a weights line first, unique
    state declarations, canonical buffer words, an initial state, nine
    distinct chunk successors per input state, and resolvable transition
    endpoints (a successor may be stored with swapped components).
    """
    graph: TransducerGraph | None = None
    pending_edges: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == "weights":
            if graph is not None:
                raise GraphFormatError(f"line {lineno}: repeated weights line")
            graph = TransducerGraph(parse_weights(" ".join(tokens[1:])))
            continue
        if graph is None:
            raise GraphFormatError(f"line {lineno}: weights line must come first")
        if kind == "state":
            if len(tokens) < 3 or tokens[2] not in ("input", "output"):
                raise GraphFormatError(f"line {lineno}: malformed state line")
            buffer = _text_to_buffer(tokens[1], f"line {lineno}")
            flags = tokens[3:]
            bad = [f for f in flags if f not in ("initial", "final")]
            if bad:
                raise GraphFormatError(f"line {lineno}: unknown flag {bad[0]!r}")
            for comp in buffer:
                if not graph.forms.is_minimal(comp) or \
                        graph.forms.minimal_form(comp) != comp:
                    raise GraphFormatError(
                        f"line {lineno}: non-minimal buffer word {comp!r}")
            graph.add_state(buffer, tokens[2], "initial" in flags,
                            "final" in flags)
        elif kind in ("edge", "special"):
            pending_edges.append((lineno, tokens))
        else:
            raise GraphFormatError(f"line {lineno}: unknown directive {kind!r}")
    if graph is None or not graph.states:
        raise GraphFormatError("no initial state")
    graph.initial_state()

    # First pass: materialize implicit output states so later lines can
    # reference them as successors.
    parsed = []
    for lineno, tokens in pending_edges:
        where = f"line {lineno}"
        try:
            arrow = tokens.index("->")
        except ValueError:
            raise GraphFormatError(f"{where}: missing '->'") from None
        head, target_text = tokens[:arrow], tokens[arrow + 1]
        target = _text_to_buffer(target_text, where)
        if tokens[0] == "edge" and len(head) == 4 and head[2] == "out":
            # explicit output transition from a declared output state
            src = _text_to_buffer(head[1], where)
            output = head[3]
            check_word(output)
            if src not in graph.states or graph.states[src].kind != "output":
                raise GraphFormatError(
                    f"{where}: edge source {_buffer_to_text(src)} is not a "
                    f"declared output state")
            parsed.append((where, "out", src, None, output, target))
        elif tokens[0] == "edge":
            if len(head) < 4 or head[2] != "in":
                raise GraphFormatError(f"{where}: malformed edge line")
            src = _text_to_buffer(head[1], where)
            chunk = _text_to_buffer(head[3], where)
            for part in chunk:
                if len(part) != 2 or part[0] not in "bcd" or part[1] != "a":
                    raise GraphFormatError(
                        f"{where}: chunk {part!r} is not of the form xa")
            output = None
            if len(head) > 4:
                if head[4] != "out" or len(head) != 6:
                    raise GraphFormatError(f"{where}: malformed edge line")
                output = head[5]
                check_word(output)
            if src not in graph.states or graph.states[src].kind != "input":
                raise GraphFormatError(
                    f"{where}: edge source {_buffer_to_text(src)} is not a "
                    f"declared input state")
            parsed.append((where, "edge", src, chunk, output, target))
            if output is not None:
                # implicit output vertices are keyed by their exact buffer;
                # a swapped pair is a different vertex with its own label
                mid = (graph.forms.minimal_form(src[0] + chunk[0]),
                       graph.forms.minimal_form(src[1] + chunk[1]))
                if mid not in graph.states:
                    graph.add_state(mid, "output")
        else:
            if len(head) != 6 or head[2] != "pad" or head[4] != "out":
                raise GraphFormatError(f"{where}: malformed special line")
            src = _text_to_buffer(head[1], where)
            pad_text = head[3]
            if not (pad_text.startswith("(") and pad_text.endswith(")")):
                raise GraphFormatError(f"{where}: malformed pad label")
            pads, _, consumed = pad_text[1:-1].partition(",")
            check_word(consumed)
            if pads != PAD * len(consumed):
                raise GraphFormatError(
                    f"{where}: padding must be {PAD!r} repeated |u| times")
            output = head[5]
            check_word(output)
            if src not in graph.states or graph.states[src].kind != "input":
                raise GraphFormatError(
                    f"{where}: special source is not a declared input state")
            parsed.append((where, "special", src, consumed, output, target))
            mid = (src[0], graph.forms.minimal_form(src[1] + consumed))
            if mid not in graph.states:
                graph.add_state(mid, "output")

    # Second pass: resolve successors and lay down transitions.
    seen_out: dict[Buffer, tuple[str, Buffer]] = {}
    for where, kind, src, label, output, target in parsed:
        resolved = graph.resolve(target)
        if resolved is None:
            raise GraphFormatError(
                f"{where}: dangling endpoint {_buffer_to_text(target)}")
        if kind == "out":
            prior = seen_out.get(src)
            if prior is None:
                seen_out[src] = (output, resolved)
                graph.transitions.append(Transition(src, resolved, output=output))
            elif prior != (output, resolved):
                raise GraphFormatError(
                    f"{where}: duplicate state {_buffer_to_text(src)} with "
                    f"conflicting output transitions")
        elif kind == "edge":
            if output is None:
                graph.transitions.append(Transition(src, resolved, chunk=label))
                continue
            mid = (graph.forms.minimal_form(src[0] + label[0]),
                   graph.forms.minimal_form(src[1] + label[1]))
            graph.transitions.append(Transition(src, mid, chunk=label))
            prior = seen_out.get(mid)
            if prior is None:
                seen_out[mid] = (output, resolved)
                graph.transitions.append(
                    Transition(mid, resolved, output=output))
            elif prior != (output, resolved):
                raise GraphFormatError(
                    f"{where}: duplicate state {_buffer_to_text(mid)} with "
                    f"conflicting output transitions")
        else:
            mid = (src[0], graph.forms.minimal_form(src[1] + label))
            graph.transitions.append(
                Transition(src, mid, pad=label, special=True))
            graph.transitions.append(
                Transition(mid, resolved, output=output, special=True))

    for st in graph.states.values():
        if st.kind != "input":
            continue
        chunks = [t.chunk for t in graph.transitions
                  if t.src == st.buffer and t.chunk is not None]
        if len(chunks) != 9 or len(set(chunks)) != 9:
            raise GraphFormatError(
                f"wrong successor count at {_buffer_to_text(st.buffer)}: "
                f"{len(chunks)} chunk edges, {len(set(chunks))} distinct")
    return graph


def serialize_graph(graph: TransducerGraph) -> str:
    """Canonical text form; parse . serialize is the identity on outputs.

    Output states reached by a chunk edge stay implicit inside combined
    edge lines; an output state only reachable from another output state
    is declared explicitly with its own output edge line.
    """
    lines = ["weights " + " ".join(
        f"{ch}={format_scaled(graph.weights[ch])}" for ch in "abcd")]
    chunk_covered = {t.dst for t in graph.transitions
                     if t.chunk is not None and not t.special
                     and graph.states[t.dst].kind == "output"}
    for st in graph.states.values():
        if st.kind == "input":
            flags = (" initial" if st.initial else "") + \
                (" final" if st.final else "")
            lines.append(f"state {_buffer_to_text(st.buffer)} input{flags}")
    for st in graph.states.values():
        if st.kind == "output" and st.buffer not in chunk_covered:
            out = graph.output_transition(st.buffer)
            if out is not None and not out.special:
                lines.append(f"state {_buffer_to_text(st.buffer)} output")
    for t in graph.transitions:
        if t.chunk is not None and not t.special:
            out = graph.output_transition(t.dst) \
                if graph.states[t.dst].kind == "output" else None
            if out is None:
                lines.append(f"edge {_buffer_to_text(t.src)} in "
                             f"{_buffer_to_text(t.chunk)} -> "
                             f"{_buffer_to_text(t.dst)}")
            else:
                lines.append(f"edge {_buffer_to_text(t.src)} in "
                             f"{_buffer_to_text(t.chunk)} out {out.output} -> "
                             f"{_buffer_to_text(out.dst)}")
    for t in graph.transitions:
        if t.output is not None and not t.special \
                and t.src not in chunk_covered:
            lines.append(f"edge {_buffer_to_text(t.src)} out {t.output} -> "
                         f"{_buffer_to_text(t.dst)}")
    for t in graph.transitions:
        if t.special and t.pad is not None:
            out = graph.output_transition(t.dst)
            lines.append(f"special {_buffer_to_text(t.src)} pad "
                         f"({PAD * len(t.pad)},{t.pad}) out {out.output} -> "
                         f"{_buffer_to_text(out.dst)}")
    return "\n".join(lines) + "\n"


# --- verification -----------------------------------------------------------

def verify_graph(graph: TransducerGraph) -> VerificationReport:
    """Check every structural and group-theoretic requirement; report all.

    Output transitions must emit parity-even minimal-weight labels whose
    sections cancel the buffer exactly; input transitions must land on the
    buffer extended by their chunk; input states need nine distinct
    successors.  A successor stored with swapped components is accepted
    and counted, not flagged.
    """
    from .elements import element_of

    report = VerificationReport()
    report.input_states = sum(1 for s in graph.states.values()
                              if s.kind == "input")
    report.output_states = len(graph.states) - report.input_states
    report.transitions = len(graph.transitions)

    def equation_holds(v: str, src: Buffer, dst: Buffer) -> bool:
        v0, v1 = psi(v)
        return (element_of(v0 + dst[0]) is element_of(src[0])
                and element_of(v1 + dst[1]) is element_of(src[1]))

    for t in graph.transitions:
        src_name = _buffer_to_text(t.src)
        if t.output is not None:
            u = graph.states[t.src].buffer
            if not in_H(t.output):
                report.violations.append(
                    f"output {t.output!r} at {src_name} has odd a-parity")
                continue
            target = graph.states[t.dst].buffer
            if equation_holds(t.output, u, target):
                pass
            elif equation_holds(t.output, u, (target[1], target[0])):
                report.swapped_successors += 1
            else:
                report.violations.append(
                    f"output {t.output!r} at {src_name} does not cancel the "
                    f"buffer into {_buffer_to_text(target)}")
            if not graph.forms.is_minimal(t.output):
                report.violations.append(
                    f"output {t.output!r} at {src_name} is not weight-minimal")
            elif graph.forms.minimal_form(t.output) != t.output:
                report.notes.append(
                    f"output {t.output!r} at {src_name} is minimal-weight but "
                    f"not the canonical spelling")
        elif t.chunk is not None:
            expect = (graph.forms.minimal_form(t.src[0] + t.chunk[0]),
                      graph.forms.minimal_form(t.src[1] + t.chunk[1]))
            target = graph.states[t.dst].buffer
            if target == expect:
                pass
            elif target == (expect[1], expect[0]):
                report.swapped_successors += 1
            else:
                report.violations.append(
                    f"chunk {t.chunk} at {src_name} should reach "
                    f"{_buffer_to_text(expect)}, found {_buffer_to_text(target)}")
        else:
            if not in_B(t.pad or ""):
                report.violations.append(
                    f"special at {src_name} consumes {t.pad!r} outside the "
                    f"closure of b")
            if not pair_in_section_image(*graph.states[t.src].buffer):
                report.violations.append(
                    f"special attached at {src_name} whose buffer is not a "
                    f"section pair")

    for st in graph.states.values():
        if st.kind == "input":
            chunks = set(t.chunk for t in graph.transitions
                         if t.src == st.buffer and t.chunk is not None)
            if len(chunks) != 9:
                report.violations.append(
                    f"input state {_buffer_to_text(st.buffer)} has "
                    f"{len(chunks)} distinct chunk successors, expected 9")
        else:
            outs = [t for t in graph.transitions
                    if t.src == st.buffer and t.output is not None]
            if len(outs) != 1:
                report.violations.append(
                    f"output state {_buffer_to_text(st.buffer)} has "
                    f"{len(outs)} output transitions, expected 1")
    return report


# --- cycle-ratio engine -----------------------------------------------------

def _ratio_edges(graph: TransducerGraph, weights: Weight,
                 exclude_special: bool) -> list[tuple[int, int, int, int, int]]:
    """Edges as (src_idx, dst_idx, in0, in1, out) in scaled units."""
    index = {b: i for i, b in enumerate(graph.states)}
    edges = []
    for ti, t in enumerate(graph.transitions):
        if exclude_special and t.special:
            continue
        i0, i1 = t.consumed(weights)
        edges.append((index[t.src], index[t.dst], i0, i1, t.emitted(weights)))
    return edges


def _positive_cycle(n: int, edges: list, num: int, den: int) -> list[int] | None:
    """Indices of edges forming a cycle of value sum > 0 under
    value(e) = 2*out*den - num*(in0+in1), or None."""
    dist = [0] * n
    pred: list[int | None] = [None] * n
    last_improved = -1
    for round_ in range(n):
        last_improved = -1
        for ei, (u, v, i0, i1, o) in enumerate(edges):
            val = 2 * o * den - num * (i0 + i1)
            if dist[u] + val > dist[v]:
                dist[v] = dist[u] + val
                pred[v] = ei
                last_improved = v
        if last_improved == -1:
            return None
    # walk back n steps to land inside a positive cycle
    v = last_improved
    for _ in range(n):
        v = edges[pred[v]][0]
    cycle = []
    start = v
    while True:
        ei = pred[v]
        cycle.append(ei)
        v = edges[ei][0]
        if v == start:
            break
    cycle.reverse()
    return cycle


def max_cycle_ratio(graph: TransducerGraph, weights: Weight | None = None,
                    exclude_special: bool = True,
                    tolerance: float = 1e-6) -> tuple[float, CycleReport]:
    """Largest 2*out/(in0+in1) over directed cycles, with a witness.

    Parametric binary search: a candidate ratio r is beaten exactly when
    the graph has a positive cycle under edge values 2*out - r*(in0+in1),
    evaluated in exact integers for rational r.  The witness cycle's own
    ratio is returned after confirming no cycle beats it, so the reported
    value is exact rather than a bracket midpoint.
    """
    weights = weights or graph.weights
    n = len(graph.states)
    all_edges = _ratio_edges(graph, weights, exclude_special)
    kept = [t for t in graph.transitions
            if not (exclude_special and t.special)]

    zero_in = [e for e in all_edges if e[2] + e[3] == 0 and e[4] > 0]
    # a cycle of zero consumed weight with positive output is unbounded
    if zero_in and _positive_cycle(n, zero_in, 0, 1) is not None:
        raise TransduceError("unbounded: cycle with output but no input")

    hi = Fraction(2 * sum(e[4] for e in all_edges) + 1,
                  min((e[2] + e[3] for e in all_edges if e[2] + e[3] > 0),
                      default=1))
    lo = Fraction(0)
    witness = None
    while hi - lo > Fraction(tolerance).limit_denominator(10 ** 9):
        mid = (lo + hi) / 2
        found = _positive_cycle(n, all_edges, mid.numerator, mid.denominator)
        if found is None:
            hi = mid
        else:
            lo = mid
            witness = found
    if witness is None:
        raise TransduceError("no cycle with positive consumed weight")
    i0 = sum(all_edges[ei][2] for ei in witness)
    i1 = sum(all_edges[ei][3] for ei in witness)
    out = sum(all_edges[ei][4] for ei in witness)
    exact = Fraction(2 * out, i0 + i1)
    if _positive_cycle(n, all_edges, exact.numerator, exact.denominator):
        raise RuntimeError("cycle search did not converge; lower tolerance")
    report = CycleReport([kept[ei] for ei in witness], i0 / SCALE, i1 / SCALE,
                         out / SCALE, float(exact))
    return float(exact), report


def path_excess_constant(graph: TransducerGraph, weights: Weight | None = None,
                         eta: Fraction | None = None) -> float:
    """Largest accumulated 2*out - eta*(in0+in1) over walks, halved.

    At the exact maximal ratio no cycle has positive value, so the longest
    walk stabilizes within |states| relaxation rounds; the result bounds
    how far any run's output can exceed eta/2 times its consumed weight.
    """
    weights = weights or graph.weights
    if eta is None:
        value, _ = max_cycle_ratio(graph, weights)
        eta = Fraction(value).limit_denominator(10 ** 9)
    edges = _ratio_edges(graph, weights, exclude_special=True)
    n = len(graph.states)
    num, den = eta.numerator, eta.denominator
    dist = [0] * n
    for _ in range(n + 1):
        changed = False
        for (u, v, i0, i1, o) in edges:
            val = 2 * o * den - num * (i0 + i1)
            if dist[u] + val > dist[v]:
                dist[v] = dist[u] + val
                changed = True
        if not changed:
            break
    return max(dist) / (2 * den * SCALE)


# --- transduction -----------------------------------------------------------

def _chunked(word: str) -> str:
    """Rewrite a minimal form into strict chunk shape, preserving the element.

    Assumes the word does not start with a (the pair-level correction has
    already run); replaces a trailing {b,c,d}-letter with its chunk-shaped
    equivalent.  The result is a literal concatenation, not reduced.
    """
    if not word:
        return word
    if word[-1] != "a":
        word = word[:-1] + CHUNKED_LETTER[word[-1]]
    return word


def _prefix_correction(w0: str, w1: str) -> tuple[str, str, str]:
    """Choose a short answer prefix g so both inputs lose leading a's.

    Multiplying the sought preimage by g on the left multiplies the input
    pair by the section pair of g; the choices below (section pairs
    (c,a), (b,1), (1,b)) strip a leading a from either or both components.
    """
    lead0 = w0.startswith("a")
    lead1 = w1.startswith("a")
    if lead0 and lead1:
        return "aba", free_reduce("c" + w0), free_reduce("a" + w1)
    if lead0:
        return "ada", free_reduce("b" + w0), w1
    if lead1:
        return "d", w0, free_reduce("b" + w1)
    return "", w0, w1


@dataclass
class TransduceResult:
    output: str
    used_special: bool
    consumed_chunks: int


def transduce(graph: TransducerGraph, pair: Buffer) -> TransduceResult:
    """Run the machine on a section pair and return a preimage word.

    Preprocessing: canonicalize both components, strip leading a's via a
    short answer prefix, rewrite trailing letters into chunk shape, and
    append neutral (da)^4 blocks so the first stream exhausts at most four
    chunks before the second.  The run then alternates chunk consumption
    with output chains, accepting swapped successor orientations by
    emitting the mirror conjugate a*v*a.  When the first stream is empty
    the residue is closed off through a special transition when one
    matches, and otherwise through the baseline preimage of the remaining
    buffer, whose size is bounded by the graph's buffers plus eight
    letters.
    """
    w0 = graph.forms.minimal_form(free_reduce(pair[0]))
    w1 = graph.forms.minimal_form(free_reduce(pair[1]))
    if not pair_in_section_image(w0, w1):
        raise TransduceError(f"not in the section image: ({w0!r}, {w1!r})")

    prefix, p0, p1 = _prefix_correction(w0, w1)
    p0, p1 = _chunked(p0), _chunked(p1)
    gap = len(p1) // 2 - len(p0) // 2
    target = 4 if gap >= 4 and gap % 4 == 0 else gap % 4
    blocks = (target - gap) // 4
    if blocks >= 0:
        p1 += PADDING_BLOCK * blocks
    else:
        p0 += PADDING_BLOCK * -blocks

    chunks0 = [p0[i:i + 2] for i in range(0, len(p0), 2)]
    chunks1 = [p1[i:i + 2] for i in range(0, len(p1), 2)]

    state = graph.initial_state()
    mirror = 0
    true0, true1 = "", ""
    parts = [prefix]
    pos = 0
    used_special = False

    def emit(word: str) -> None:
        parts.append("a" + word + "a" if mirror else word)

    while True:
        if state.kind == "output":
            t = graph.output_transition(state.buffer)
            if t is None:
                raise TransduceError(
                    f"stuck: no output transition at "
                    f"{_buffer_to_text(state.buffer)}")
            emit(t.output)
            v0, v1 = psi(t.output)
            if mirror:
                v0, v1 = v1, v0
            true0 = graph.forms.minimal_form(rev(v0) + true0)
            true1 = graph.forms.minimal_form(rev(v1) + true1)
            nxt = graph.states[t.dst]
            if nxt.buffer == (true0, true1):
                mirror = 0
            elif nxt.buffer == (true1, true0):
                mirror = 1
            else:
                raise TransduceError(
                    f"stuck: successor buffer mismatch after {t.output!r}")
            state = nxt
            continue
        if pos >= len(chunks0):
            break
        c0, c1 = chunks0[pos], chunks1[pos]
        pos += 1
        key = (c1, c0) if mirror else (c0, c1)
        t = graph.input_transitions(state.buffer).get(key)
        if t is None:
            raise TransduceError(
                f"stuck: no chunk edge {key} at {_buffer_to_text(state.buffer)}")
        true0 = graph.forms.minimal_form(true0 + c0)
        true1 = graph.forms.minimal_form(true1 + c1)
        nxt = graph.states[t.dst]
        if nxt.buffer == (true0, true1):
            mirror = 0
        elif nxt.buffer == (true1, true0):
            mirror = 1
        else:
            raise TransduceError(
                f"stuck: successor buffer mismatch after chunk {key}")
        state = nxt

    rest = "".join(chunks1[pos:])
    residue0 = true0
    residue1 = free_reduce(true1 + rest)
    if not mirror and state.buffer == ("", "") and residue0 == "":
        canonical = graph.forms.minimal_form(residue1)
        specials = graph.special_transitions(state.buffer)
        if canonical in specials:
            t = specials[canonical]
            closing = graph.output_transition(t.dst)
            emit(closing.output)
            used_special = True
            residue1 = ""
    if residue0 or residue1:
        if not pair_in_section_image(residue0, residue1):
            raise TransduceError(
                f"not in the section image: residue ({residue0!r}, {residue1!r})")
        # The residue is tracked in true orientation already, so its
        # baseline preimage is appended unwrapped whatever the mirror state.
        parts.append(psi_preimage_basic(residue0, residue1))

    answer = free_reduce("".join(parts))
    out0, out1 = psi(answer)
    from .elements import words_equal
    if not (words_equal(out0, w0) and words_equal(out1, w1)):
        raise TransduceError("not in the section image: run check failed")
    return TransduceResult(answer, used_special, pos)


def preimage_constant(graph: TransducerGraph, weights: Weight | None = None) -> float:
    """The additive constant K of the run bound out <= eta*max(in) + K.

    Sums the worst-case contributions that are independent of the input:
    the answer prefix, the walk excess of the cycle analysis, eta times
    the chunk-rewriting and padding overhead on the consumed streams, and
    the closing residue's baseline preimage.
    """
    weights = weights or graph.weights
    eta, _ = max_cycle_ratio(graph, weights)
    excess = path_excess_constant(graph, weights)
    prefix = word_weight("aba", weights) / SCALE
    rewrite = max(word_weight(CHUNKED_LETTER[x], weights) - weights[x]
                  for x in "bcd") / SCALE
    padding = 2 * word_weight(PADDING_BLOCK, weights) / SCALE
    overhead = eta * (rewrite + padding + word_weight("ca", weights) / SCALE)
    max_buffer = max((len(comp) for st in graph.states.values()
                      if st.kind == "input" for comp in st.buffer), default=0)
    residue_len = 4 * (max_buffer + 8) + 12
    closing = residue_len * max(weights.values()) / SCALE
    return prefix + excess + overhead + closing


def first_loop_ratio(graph: TransducerGraph, weights: Weight | None = None) -> float:
    """Ratio of the shortest loop at the initial state reading (da,da)(da,da).

    This loop consumes the chunk (da,da) twice and emits one output label;
    it pins down the normalization 2*out/(in0+in1) of the cycle ratio.
    """
    weights = weights or graph.weights
    start = graph.initial_state().buffer
    t1 = graph.input_transitions(start).get(("da", "da"))
    if t1 is None:
        raise TransduceError("initial state has no (da,da) edge")
    t2 = graph.input_transitions(t1.dst).get(("da", "da"))
    if t2 is None:
        raise TransduceError("no second (da,da) edge")
    out = graph.output_transition(t2.dst)
    if out is None or out.dst != start:
        raise TransduceError("the (da,da)(da,da) path does not close up")
    i = t1.consumed(weights)
    j = t2.consumed(weights)
    return 2 * out.emitted(weights) / (i[0] + i[1] + j[0] + j[1])
