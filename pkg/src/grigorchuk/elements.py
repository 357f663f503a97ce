"""Exact group elements as hash-consed section trees.

A reduced word of length > 1 is determined by its a-parity together with
its two subtree sections, whose reduced lengths are at most half its own
(plus one).  Recursing on sections therefore terminates, and interning
every node by (parity, left, right) gives each group element one shared
immutable representative.  Equality of elements is pointer identity,
which makes the word problem a dictionary lookup after construction.
"""

from __future__ import annotations

from functools import lru_cache

from .words import free_reduce, sections


class Element:
    """Interned node of the section tree; compare with ``is``."""

    __slots__ = ("swap", "left", "right", "name")

    def __init__(self, swap: int, left: "Element | None", right: "Element | None",
                 name: str = ""):
        self.swap = swap
        self.left = left
        self.right = right
        self.name = name

    def __repr__(self) -> str:
        if self.name:
            return f"<elem {self.name}>"
        return f"<elem swap={self.swap} {self.left!r} {self.right!r}>"


# Atoms.  The identity is the unique leaf; a swaps the subtrees and acts
# trivially below, while b, c, d refer to each other cyclically (d's right
# section is b), so they are built as placeholders and patched afterwards.
IDENTITY = Element(0, None, None, "1")
GEN_A = Element(1, None, None, "a")
GEN_B = Element(0, None, None, "b")
GEN_C = Element(0, None, None, "c")
GEN_D = Element(0, None, None, "d")
GEN_A.left, GEN_A.right = IDENTITY, IDENTITY
GEN_B.left, GEN_B.right = GEN_A, GEN_C
GEN_C.left, GEN_C.right = GEN_A, GEN_D
GEN_D.left, GEN_D.right = IDENTITY, GEN_B

_ATOM = {"": IDENTITY, "a": GEN_A, "b": GEN_B, "c": GEN_C, "d": GEN_D}

_INTERN: dict[tuple[int, int, int], Element] = {
    (e.swap, id(e.left), id(e.right)): e for e in _ATOM.values() if e.left is not None
}


def _node(swap: int, left: Element, right: Element) -> Element:
    if swap == 0 and left is IDENTITY and right is IDENTITY:
        return IDENTITY
    key = (swap, id(left), id(right))
    found = _INTERN.get(key)
    if found is None:
        found = Element(swap, left, right)
        _INTERN[key] = found
    return found


@lru_cache(maxsize=None)
def _element_of_reduced(w: str) -> Element:
    if len(w) <= 1:
        return _ATOM[w]
    p, s0, s1 = sections(w)
    return _node(p, _element_of_reduced(s0), _element_of_reduced(s1))


# Products of distinct atoms from {b,c,d} close up cyclically, so the
# recursion below would chase b*c -> c*d -> d*b forever without these
# seeds; every other section pair is structurally smaller.
_MUL: dict[tuple[int, int], Element] = {}
for _x, _y, _z in (("b", "c", "d"), ("c", "d", "b"), ("d", "b", "c")):
    _MUL[(id(_ATOM[_x]), id(_ATOM[_y]))] = _ATOM[_z]
    _MUL[(id(_ATOM[_y]), id(_ATOM[_x]))] = _ATOM[_z]
for _x in "abcd":
    _MUL[(id(_ATOM[_x]), id(_ATOM[_x]))] = IDENTITY


def mul(g: Element, h: Element) -> Element:
    """The product element g*h (g acting first, like word concatenation)."""
    if g is IDENTITY:
        return h
    if h is IDENTITY:
        return g
    key = (id(g), id(h))
    found = _MUL.get(key)
    if found is None:
        if g.swap == 0:
            found = _node(h.swap, mul(g.left, h.left), mul(g.right, h.right))
        else:
            found = _node(1 ^ h.swap, mul(g.left, h.right), mul(g.right, h.left))
        _MUL[key] = found
    return found


def element_of(w: str) -> Element:
    """The interned element represented by the word w."""
    return _element_of_reduced(free_reduce(w))


def is_trivial(w: str) -> bool:
    """Whether the word w represents the identity of the group."""
    return element_of(w) is IDENTITY


def words_equal(v: str, w: str) -> bool:
    """Whether two words represent the same group element."""
    return element_of(v) is element_of(w)
