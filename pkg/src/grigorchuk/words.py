"""Words over the generators of the first Grigorchuk group.

The group G acts on finite binary strings.  It is generated by four
involutions: ``a`` swaps the first bit, while ``b``, ``c``, ``d`` fix the
first bit and act recursively on the rest according to

    b = (a, c)    c = (a, d)    d = (1, b)

where ``(p, q)`` means "act as p below a leading 0 and as q below a
leading 1".  The letters b, c, d commute and multiply into each other
(bc = d and cyclically), so every group element is represented by a
reduced word in which a's and {b,c,d}-letters alternate.

Everything in this module is word-level and exact: free reduction,
the string action, the section decomposition of parity-even words, the
order-8 dihedral quotient used for membership tests, and the auxiliary
substitutions that power the baseline preimage construction.
"""

from __future__ import annotations

LETTERS = "abcd"
BCD = "bcd"

# bc = cb = d, bd = db = c, cd = dc = b
THIRD = {
    ("b", "c"): "d", ("c", "b"): "d",
    ("b", "d"): "c", ("d", "b"): "c",
    ("c", "d"): "b", ("d", "c"): "b",
}

# x = (pair[0], pair[1]) as an action on subtrees; "" is the identity.
SECTIONS_OF = {"b": ("a", "c"), "c": ("a", "d"), "d": ("", "b")}


def check_word(w: str) -> None:
    """Raise ValueError unless w uses only the letters a, b, c, d."""
    for ch in w:
        if ch not in LETTERS:
            raise ValueError(f"invalid letter {ch!r} in word {w!r}")


def free_reduce(w: str) -> str:
    """Shortest word equal to w under xx = 1 and the {b,c,d} products.

    A single stack pass: equal adjacent letters cancel, and adjacent
    {b,c,d}-letters merge into the third one (which may cascade).
    """
    out: list[str] = []
    for ch in w:
        while out:
            top = out[-1]
            if top == ch:
                out.pop()
                break
            merged = THIRD.get((top, ch))
            if merged is None:
                out.append(ch)
                break
            out.pop()
            ch = merged
        else:
            out.append(ch)
    return "".join(out)


def rev(w: str) -> str:
    """Reversal of w; since all generators are involutions this inverts it."""
    return w[::-1]


def act_letter(x: str, s: str) -> str:
    """Apply a single generator to a binary string."""
    if not s:
        return s
    if x == "a":
        return ("1" if s[0] == "0" else "0") + s[1:]
    sub = SECTIONS_OF[x][int(s[0])]
    return s[0] + act(sub, s[1:])


def act(w: str, s: str) -> str:
    """Apply the word w to a binary string, leftmost letter first."""
    for x in w:
        s = act_letter(x, s)
    return s


def a_parity(w: str) -> int:
    """Number of a's in w, modulo 2."""
    return w.count("a") & 1


def in_H(w: str) -> bool:
    """Whether w lies in the index-2 subgroup of words with evenly many a's.

    Such words preserve the first bit of every string, so they act on the
    two subtrees separately.
    """
    return a_parity(w) == 0


def sections(w: str) -> tuple[int, str, str]:
    """Parity of w together with its two subtree section words.

    A letter x in {b, c, d} scanned at even a-parity contributes its
    0-section to the left subtree word and its 1-section to the right one;
    at odd parity the roles swap.  Returns (parity, left, right) with both
    section words freely reduced.
    """
    p = 0
    s0: list[str] = []
    s1: list[str] = []
    for ch in w:
        if ch == "a":
            p ^= 1
            continue
        lo, hi = SECTIONS_OF[ch]
        if p == 0:
            s0.append(lo)
            s1.append(hi)
        else:
            s0.append(hi)
            s1.append(lo)
    return p, free_reduce("".join(s0)), free_reduce("".join(s1))


def psi(w: str) -> tuple[str, str]:
    """Section pair of a parity-even word: its actions on the two subtrees.

    This is the injection of the even-parity subgroup into G x G; it is
    multiplicative, so section words of products concatenate.
    """
    p, s0, s1 = sections(w)
    if p:
        raise ValueError(f"word {w!r} has odd a-parity and no section pair")
    return s0, s1


# --- the order-8 dihedral quotient -----------------------------------------
#
# Collapsing b kills the recursion: the images A of a and D of d generate
# a dihedral group of order 8 with rotation R = A*D.  Elements are encoded
# as (t, e) meaning R^t * A^e.  The normal closure of b is exactly the
# kernel of this quotient map, which makes membership testing exact and
# linear-time.

D4Elem = tuple[int, int]

D4_ONE: D4Elem = (0, 0)
D4_A: D4Elem = (0, 1)
D4_D: D4Elem = (3, 1)

_D4_OF_LETTER = {"a": D4_A, "b": D4_ONE, "c": D4_D, "d": D4_D}


def d4_mul(x: D4Elem, y: D4Elem) -> D4Elem:
    t1, e1 = x
    t2, e2 = y
    return ((t1 + (t2 if e1 == 0 else -t2)) % 4, e1 ^ e2)


def residue(w: str) -> D4Elem:
    """Image of w in the dihedral quotient that collapses b."""
    r = D4_ONE
    for ch in w:
        r = d4_mul(r, _D4_OF_LETTER[ch])
    return r


def in_B(w: str) -> bool:
    """Whether w lies in the normal closure of b (the quotient kernel)."""
    return residue(w) == D4_ONE


def d4_flip(x: D4Elem) -> D4Elem:
    """The outer automorphism of the quotient induced by taking sections.

    A parity-even word w has first section in the closure of b exactly when
    the second section's residue equals this image of the first section's
    residue; it sends the rotation to its inverse and A to D.
    """
    t, e = x
    base: D4Elem = ((-t) % 4, 0)
    return d4_mul(base, D4_D) if e else base


def pair_in_section_image(w0: str, w1: str) -> bool:
    """Whether the pair of words is the section pair of some parity-even word.

    The image of the parity-even subgroup under the section map is the set
    of pairs whose dihedral residues correspond under ``d4_flip``.
    """
    return d4_flip(residue(w0)) == residue(w1)


# --- auxiliary substitutions and the baseline preimage ----------------------
#
# The letter substitution s below is a homomorphism into the parity-even
# subgroup whose section pair is (t(g), g) for the companion substitution t.
# Applying it to the second component of a target pair, after cancelling the
# first component through t, yields a preimage under the section map with at
# most 4*max(lengths) + 12 letters.

_SIGMA = {"a": "aca", "b": "d", "c": "b", "d": "c"}
_TAU = {"a": "d", "b": "", "c": "a", "d": "a"}


def sigma(w: str) -> str:
    """Letterwise substitution a -> aca, b -> d, c -> b, d -> c."""
    return "".join(_SIGMA[ch] for ch in w)


def tau(w: str) -> str:
    """Letterwise substitution a -> d, b -> 1, c -> a, d -> a."""
    return "".join(_TAU[ch] for ch in w)


def psi_preimage_basic(w0: str, w1: str) -> str:
    """A parity-even word whose section pair is (w0, w1), as elements.

    Uses psi(sigma(g)) = (tau(g), g) twice: first to realize the second
    component, then to cancel the leftover in the first.  The result has
    at most 4*max(|w0|, |w1|) + 12 letters.  Raises ValueError when the
    pair is not a section pair.
    """
    if not pair_in_section_image(w0, w1):
        raise ValueError(f"pair ({w0!r}, {w1!r}) is not a section pair")
    h = "a" + sigma(w0) + "a" + sigma(free_reduce(rev(tau(w0)) + w1))
    return free_reduce(h)
