"""Weighted geodesic normal forms via uniform-cost Cayley search.

A weight assigns a positive cost to each generator; the weight of an
element is the cheapest total cost of a word representing it.  Weights
are read as decimals with at most four fraction digits and held as
integers scaled by 10^4, so priority comparisons are exact and runs are
reproducible.

The search settles elements in order of (weight, word length, fixed
letter order), which picks one canonical minimal form per element.  The
frontier is kept between calls, so raising the radius resumes rather
than restarts.
"""

from __future__ import annotations

import heapq
from typing import Callable, Iterable

from .elements import Element, element_of
from .words import LETTERS, free_reduce

SCALE = 10_000

Weight = dict[str, int]

# Canonical tie-break order between equal-weight, equal-length words:
# letters sorted by increasing tuned weight (a, d, c, b).
_LEX = {"a": 0, "d": 1, "c": 2, "b": 3}

UNIT_WEIGHTS: Weight = {ch: SCALE for ch in LETTERS}
# The tuned weights shipped with the appendix fixture.
TUNED_WEIGHTS: Weight = {"a": 10_000, "b": 33_300, "c": 28_000, "d": 10_600}


def parse_weights(text: str) -> Weight:
    """Parse ``a=1 b=3.33 c=2.8 d=1.06`` into scaled-integer weights."""
    w: Weight = {}
    for part in text.replace(",", " ").split():
        if "=" not in part:
            raise ValueError(f"malformed weight assignment {part!r}")
        key, _, val = part.partition("=")
        if key not in LETTERS:
            raise ValueError(f"unknown generator {key!r} in weights")
        w[key] = scale_decimal(val)
    missing = [ch for ch in LETTERS if ch not in w]
    if missing:
        raise ValueError(f"weights missing for {', '.join(missing)}")
    check_weights(w)
    return w


def scale_decimal(text: str) -> int:
    """Exact conversion of a decimal with <= 4 fraction digits to units of 1e-4."""
    text = text.strip()
    neg = text.startswith("-")
    if neg:
        text = text[1:]
    whole, _, frac = text.partition(".")
    if len(frac) > 4:
        raise ValueError(f"more than 4 fraction digits in {text!r}")
    if not (whole or frac):
        raise ValueError(f"empty number {text!r}")
    value = int(whole or "0") * SCALE + int((frac + "0000")[:4] or "0")
    return -value if neg else value


def format_scaled(v: int) -> str:
    """Render a scaled integer back as a minimal decimal string."""
    sign = "-" if v < 0 else ""
    v = abs(v)
    whole, frac = divmod(v, SCALE)
    if frac == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:04d}".rstrip("0")


def check_weights(w: Weight) -> None:
    if any(w[ch] <= 0 for ch in LETTERS):
        raise ValueError("weights must be positive")


def is_triangular(w: Weight) -> bool:
    """Whether each of b, c, d weighs at most the sum of the other two.

    Triangular weights guarantee that merging adjacent {b,c,d}-letters
    during free reduction never increases a word's weight.
    """
    b, c, d = w["b"], w["c"], w["d"]
    return b <= c + d and c <= b + d and d <= b + c


def word_weight(word: str, w: Weight) -> int:
    """Total scaled weight of a word's letters."""
    return sum(w[ch] for ch in word)


def _priority(word: str, w: Weight) -> tuple[int, int, tuple[int, ...]]:
    return word_weight(word, w), len(word), tuple(_LEX[ch] for ch in word)


class MinimalForms:
    """Canonical minimal forms for one weight, computed incrementally."""

    def __init__(self, weights: Weight, element_budget: int = 10_000_000):
        check_weights(weights)
        self.weights = dict(weights)
        self.element_budget = element_budget
        self.table: dict[int, str] = {}
        self._elems: dict[int, Element] = {}
        self._heap: list[tuple[tuple[int, int, tuple[int, ...]], str]] = []
        self._settled_upto = -1
        heapq.heappush(self._heap, (_priority("", weights), ""))

    def extend(self, radius: int) -> None:
        """Settle every element of weight <= radius (scaled units)."""
        if radius <= self._settled_upto:
            return
        while self._heap and self._heap[0][0][0] <= radius:
            prio, word = heapq.heappop(self._heap)
            e = element_of(word)
            if id(e) in self.table:
                continue
            if len(self.table) >= self.element_budget:
                raise RuntimeError(
                    f"element budget {self.element_budget} exceeded at radius "
                    f"{format_scaled(prio[0])}")
            self.table[id(e)] = word
            self._elems[id(e)] = e
            for g in LETTERS:
                nxt = free_reduce(word + g)
                if nxt != word:
                    heapq.heappush(self._heap, (_priority(nxt, self.weights), nxt))
        self._settled_upto = radius

    def minimal_form(self, word: str) -> str:
        """The canonical minimal-weight word for the element of ``word``."""
        e = element_of(word)
        found = self.table.get(id(e))
        if found is not None:
            return found
        self.extend(word_weight(free_reduce(word), self.weights))
        return self.table[id(e)]

    def element_weight(self, word: str) -> int:
        """Scaled weight of the element represented by ``word``."""
        return word_weight(self.minimal_form(word), self.weights)

    def is_minimal(self, word: str) -> bool:
        """Whether ``word`` has the least weight among words for its element."""
        return word_weight(word, self.weights) == self.element_weight(word)

    def settled_words(self) -> Iterable[str]:
        return self.table.values()

    def lookup_element(self, e: Element, cap: int) -> str | None:
        """Canonical word for an element, or None if its weight exceeds cap."""
        self.extend(cap)
        return self.table.get(id(e))

    def enumerate_forms(self, max_len: int,
                        predicate: Callable[[str], bool] | None = None,
                        max_weight: int | None = None) -> list[str]:
        """All canonical forms of length <= max_len satisfying the predicate.

        Canonical forms alternate the letter a with letters from {b, c, d},
        so a form of <= max_len letters weighs at most ceil(max_len/2) heavy
        letters plus floor(max_len/2) copies of a; settling that radius is
        sufficient.  max_weight restricts the enumeration to a smaller
        radius when the caller only needs light forms.
        """
        heavy = max(self.weights[x] for x in "bcd")
        radius = (max_len + 1) // 2 * heavy + max_len // 2 * self.weights["a"]
        if max_weight is not None:
            radius = min(radius, max_weight)
        self.extend(radius)
        out = [w for w in self.table.values()
               if len(w) <= max_len
               and word_weight(w, self.weights) <= radius
               and (predicate is None or predicate(w))]
        out.sort(key=lambda w: _priority(w, self.weights))
        return out
