"""Weighted growth counts and the growth-exponent lower bound.

The growth function counts group elements of weight at most a radius.
Two independent enumeration back-ends are provided: the canonical-form
search (hash-consed section trees) and a cross-check that groups plain
reduced words by their action on short binary strings before confirming
equality exactly.  A cycle bound eta < 4 on the section-preimage
transducer converts into the exponent alpha = log 2 / log eta, and the
doubling argument turns one ball count into a lower bound on log-growth
at larger radii.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Callable, Sequence

from .elements import words_equal
from .minforms import SCALE, MinimalForms, Weight, word_weight
from .words import LETTERS, act, free_reduce

GrowthTable = list[tuple[int, int]]


def gamma(mfs: MinimalForms, radius: int) -> int:
    """Number of elements of weight <= radius (scaled units)."""
    mfs.extend(radius)
    return sum(1 for w in mfs.settled_words()
               if word_weight(w, mfs.weights) <= radius)


def gamma_table(mfs: MinimalForms, radii: Sequence[int]) -> GrowthTable:
    """Ball counts at each requested scaled radius, one pass."""
    radii = sorted(radii)
    if radii:
        mfs.extend(radii[-1])
    weights = sorted(word_weight(w, mfs.weights) for w in mfs.settled_words())
    table: GrowthTable = []
    i = 0
    for r in radii:
        while i < len(weights) and weights[i] <= r:
            i += 1
        table.append((r, i))
    return table


def gamma_restricted(mfs: MinimalForms, radius: int,
                     predicate: Callable[[str], bool]) -> int:
    """Ball count restricted to elements whose canonical word passes a test.

    Intended for the kernel-membership predicates (parity-even subgroup,
    normal closure of b), which are properties of the element and hence
    independent of the word chosen.
    """
    mfs.extend(radius)
    return sum(1 for w in mfs.settled_words()
               if word_weight(w, mfs.weights) <= radius and predicate(w))


def gamma_by_signature(max_len: int, probe_depth: int = 5) -> list[int]:
    """Unit-weight ball counts 0..max_len via the action cross-check.

    Enumerates all freely reduced words up to the length, buckets them by
    their action on every binary string of length <= probe_depth, and
    confirms equality inside each bucket exactly.  Deliberately avoids the
    canonical-form machinery so the two back-ends can check each other.
    """
    probes = ["".join(bits) for n in range(1, probe_depth + 1)
              for bits in product("01", repeat=n)]

    def signature(w: str) -> tuple[str, ...]:
        return tuple(act(w, s) for s in probes)

    counts = []
    buckets: dict[tuple[str, ...], list[str]] = {}
    frontier = [""]
    total = 0
    for length in range(max_len + 1):
        for w in frontier:
            sig = signature(w)
            known = buckets.setdefault(sig, [])
            if not any(words_equal(w, seen) for seen in known):
                known.append(w)
                total += 1
        counts.append(total)
        frontier = [w + g for w in frontier for g in LETTERS
                    if free_reduce(w + g) == w + g]
    return counts


@dataclass
class SubgroupGrowthCheck:
    radius: int
    lower: int
    middle: int
    upper: int

    @property
    def holds(self) -> bool:
        return self.lower <= self.middle <= self.upper


def check_subgroup_growth(mfs: MinimalForms, radii: Sequence[int],
                          predicate: Callable[[str], bool], index: int,
                          shift: int) -> list[SubgroupGrowthCheck]:
    """Finite-index sandwich on growth: g(n-K) <= N*g_sub(n) <= g(n+K).

    For a subgroup of index N whose cosets are reached by words of weight
    at most K, the subgroup ball of radius n, scaled by the index, is
    wedged between whole-group balls at radius n -+ K.
    """
    out = []
    for r in radii:
        lower = gamma(mfs, r - shift)
        middle = index * gamma_restricted(mfs, r, predicate)
        upper = gamma(mfs, r + shift)
        out.append(SubgroupGrowthCheck(r, lower, middle, upper))
    return out


def alpha_of_eta(eta: float) -> float:
    """Growth exponent log 2 / log eta from a transducer cycle bound eta.

    A cycle ratio below 4 certifies growth at least exp(n^alpha) with
    alpha strictly above 1/2; eta = 4 is the baseline alpha = 0.5.
    """
    if eta <= 1:
        raise ValueError("eta must exceed 1")
    return 1.0 / math.log2(eta)


@dataclass
class BoundParams:
    """Inputs for the doubling lower bound on log-growth.

    eta: certified cycle bound of the transducer;
    shift: additive constant of the preimage weight bound;
    base_radius: radius L of the seed ball;
    base_count: ball count gamma(L) at the seed radius.
    """

    eta: float
    shift: float
    base_radius: float
    base_count: int


def lower_bound_log_gamma(n: float, p: BoundParams) -> tuple[int, float]:
    """Doubling steps m and a lower bound for log gamma(n).

    Each application of the preimage bound doubles the ball count at the
    cost of multiplying the radius by eta and adding the shift: after m
    steps the radius is eta^m * L + (eta^(m-1) + ... + 1) * shift and
    log gamma is at least 2^m * log(gamma(L)/4) + log 4.  Raises
    ValueError below the seed radius.
    """
    if p.base_count < 4:
        raise ValueError("seed ball must contain at least 4 elements")
    if n < p.base_radius:
        raise ValueError("no bound: radius below the seed ball")
    m = 0
    radius = p.base_radius
    while True:
        nxt = p.eta * radius + p.shift
        if nxt > n:
            break
        radius = nxt
        m += 1
    bound = (2 ** m) * math.log(p.base_count / 4.0) + math.log(4.0)
    return m, bound
