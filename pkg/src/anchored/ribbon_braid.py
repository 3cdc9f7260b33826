"""Exact arithmetic in the ribbon braid group ``RB_n = B_n ⋉ Z^n``.

An element is stored as a crossing word followed by a vector of twists
sitting at the bottom of the strands.  Words are read bottom to top, and
the letter at the end of a product acts first on the tensor factors, so
``P(a * b) = P(a) ∘ P(b)``.

Letters
-------
``e k``   crossing of strands ``k`` and ``k+1``, strand ``k`` passing over
``e' k``  its inverse
``t k``   one full positive twist on strand ``k``
``t' k``  its inverse

Strand positions in the public API are 1-based.  Equality of braids is
decided through the Artin action on the free group of rank ``n``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

__all__ = [
    "BraidError",
    "Permutation",
    "RibbonBraid",
    "from_word",
    "identity",
    "multiply",
    "equals",
    "permutation",
    "compose_at",
    "full_twist",
    "parse_braid",
]

_LETTERS = ("e", "e'", "t", "t'")


class BraidError(ValueError):
    """Raised for out-of-range indices or strand-count mismatches."""


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``1..n`` given by its images."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise BraidError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """``self ∘ other``: apply ``other`` first."""
        if self.n != other.n:
            raise BraidError("permutation size mismatch")
        return Permutation(tuple(self(other(k)) for k in range(1, self.n + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for k, v in enumerate(self.images, start=1):
            inv[v - 1] = k
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.n + 1))


# -- free group helpers ------------------------------------------------------
# A free-group word is a tuple of non-zero ints; +k is x_k, -k its inverse.

def _reduce(word: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def _invert(word: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(-x for x in reversed(word))


def _artin_images(k: int, sign: int) -> dict[int, tuple[int, ...]]:
    """Images of the generators moved by the crossing at 1-based ``k``."""
    a, b = k, k + 1
    if sign > 0:
        return {a: (a, b, -a), b: (a,)}
    return {a: (b,), b: (-b, a, b)}


def _substitute(word, table) -> tuple[int, ...]:
    out: list[int] = []
    for x in word:
        img = table.get(abs(x))
        if img is None:
            out.append(x)
        else:
            out.extend(img if x > 0 else _invert(img))
    return _reduce(out)


# -- the group ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RibbonBraid:
    """Element ``(crossing word) · (twist word)`` of ``RB_n``.

    ``crossings`` holds ``(index, sign)`` pairs in bottom-to-top order and
    ``twists[k]`` counts full twists on the strand at bottom position
    ``k+1``.  Equality and hashing are those of the group element.
    """

    strands: int
    crossings: tuple[tuple[int, int], ...] = ()
    twists: tuple[int, ...] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.strands < 0:
            raise BraidError("negative strand count")
        cr = tuple((int(i), int(s)) for i, s in self.crossings)
        for i, s in cr:
            if not 1 <= i <= self.strands - 1:
                raise BraidError(f"crossing index {i} out of range for {self.strands} strands")
            if s not in (1, -1):
                raise BraidError(f"crossing sign must be ±1, got {s}")
        object.__setattr__(self, "crossings", cr)
        tw = (0,) * self.strands if self.twists is None else tuple(int(t) for t in self.twists)
        if len(tw) != self.strands:
            raise BraidError("twist vector has wrong length")
        object.__setattr__(self, "twists", tw)

    # identity and structure

    @cached_property
    def permutation(self) -> Permutation:
        # pi(sigma tau) = pi(sigma) o pi(tau); the last letter acts first
        img = list(range(1, self.strands + 1))
        for i, _ in reversed(self.crossings):
            img = [i + 1 if v == i else i if v == i + 1 else v for v in img]
        return Permutation(tuple(img))

    @cached_property
    def artin(self) -> tuple[tuple[int, ...], ...]:
        """Reduced images of ``x_1..x_n`` under the Artin action."""
        images = [(k,) for k in range(1, self.strands + 1)]
        for i, s in reversed(self.crossings):
            table = _artin_images(i, s)
            images = [_substitute(w, table) for w in images]
        return tuple(images)

    def key(self) -> tuple:
        return (self.strands, self.twists, self.artin)

    def __eq__(self, other):
        if not isinstance(other, RibbonBraid):
            return NotImplemented
        if self.strands != other.strands:
            return False
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __mul__(self, other: "RibbonBraid") -> "RibbonBraid":
        return multiply(self, other)

    def inverse(self) -> "RibbonBraid":
        cross = tuple((i, -s) for i, s in reversed(self.crossings))
        # (c t)^-1 = t^-1 c^-1; move t^-1 below c^-1 by relabelling
        pi = self.permutation
        tw = [0] * self.strands
        for k, t in enumerate(self.twists, start=1):
            tw[pi(k) - 1] = -t
        return RibbonBraid(self.strands, cross, tuple(tw))

    def is_identity(self) -> bool:
        return self == identity(self.strands)

    def shifted(self, offset: int, strands: int) -> "RibbonBraid":
        """The same braid acting on positions ``offset+1..`` of ``strands``."""
        if offset < 0 or offset + self.strands > strands:
            raise BraidError("shift out of range")
        tw = [0] * strands
        tw[offset:offset + self.strands] = self.twists
        return RibbonBraid(strands, tuple((i + offset, s) for i, s in self.crossings), tuple(tw))

    def letters(self) -> list[tuple[str, int]]:
        """A word for this element: crossings, then twists."""
        out = [("e" if s > 0 else "e'", i) for i, s in self.crossings]
        for k, t in enumerate(self.twists, start=1):
            out.extend([("t" if t > 0 else "t'", k)] * abs(t))
        return out

    def render(self) -> str:
        body = " ".join(f"{a} {k}" for a, k in self.letters())
        return f"rb({self.strands})[{body}]"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"RibbonBraid({self.render()})"


def identity(n: int) -> RibbonBraid:
    return RibbonBraid(n)


def _token(tok) -> tuple[str, int]:
    if isinstance(tok, str):
        parts = tok.split()
        if len(parts) != 2:
            raise BraidError(f"bad braid token {tok!r}")
        tok = (parts[0], parts[1])
    letter, idx = tok
    if letter not in _LETTERS:
        raise BraidError(f"unknown braid letter {letter!r}")
    return letter, int(idx)


def from_word(n: int, word: Sequence) -> RibbonBraid:
    """Build an element from a word of letters read bottom to top.

    Tokens are strings like ``"e 1"`` or pairs like ``("t'", 2)``.
    """
    out = identity(n)
    for tok in word:
        letter, k = _token(tok)
        if letter.startswith("e"):
            if not 1 <= k <= n - 1:
                raise BraidError(f"crossing index {k} out of range for {n} strands")
            g = RibbonBraid(n, ((k, 1 if letter == "e" else -1),))
        else:
            if not 1 <= k <= n:
                raise BraidError(f"twist index {k} out of range for {n} strands")
            tw = [0] * n
            tw[k - 1] = 1 if letter == "t" else -1
            g = RibbonBraid(n, (), tuple(tw))
        out = multiply(out, g)
    return out


def multiply(a: RibbonBraid, b: RibbonBraid) -> RibbonBraid:
    """``a · b`` with ``a``'s letters first in the word.

    Twists of ``a`` slide down through ``b``'s crossings: a twist on
    position ``q`` above ``b`` sits on position ``π_b⁻¹(q)`` below it.
    """
    if a.strands != b.strands:
        raise BraidError(f"strand mismatch: {a.strands} vs {b.strands}")
    pi = b.permutation
    tw = tuple(a.twists[pi(m) - 1] + b.twists[m - 1] for m in range(1, a.strands + 1))
    return RibbonBraid(a.strands, a.crossings + b.crossings, tw)


def equals(a: RibbonBraid, b: RibbonBraid) -> bool:
    if a.strands != b.strands:
        raise BraidError(f"strand mismatch: {a.strands} vs {b.strands}")
    return a == b


def permutation(a: RibbonBraid) -> Permutation:
    return a.permutation


def full_twist(s: int, power: int = 1) -> tuple[tuple[int, int], ...]:
    """Crossing word of ``FT_s^power`` with ``FT_s = (ε_1⋯ε_{s-1})^s``."""
    one = tuple((k, 1) for k in range(1, s)) * s
    if power >= 0:
        return one * power
    inv = tuple((k, -1) for k, _ in reversed(one))
    return inv * (-power)


def _positive_block(k: int, p: int, s: int) -> tuple[list[tuple[int, int]], int]:
    """Cabled image of ``ε_k`` (1-based) when the cable starts at 0-based
    position ``p`` below it.  Returns the letters and the cable position
    above the crossing.
    """
    k0 = k - 1
    if p == k0:
        return [(k0 + 1 + t, 1) for t in range(s)], k0 + 1
    if p == k0 + 1:
        return [(k0 + s - t, 1) for t in range(s)], k0
    if p > k0 + 1:
        return [(k, 1)], p
    return [(k + s - 1, 1)], p


def compose_at(sigma: RibbonBraid, i: int, tau: RibbonBraid) -> RibbonBraid:
    """Operadic composite: cable strand ``i`` of ``sigma`` into ``tau.strands``
    parallel strands and insert ``tau`` at the bottom of the cable.
    """
    r, s = sigma.strands, tau.strands
    if not 1 <= i <= r:
        raise BraidError(f"slot {i} out of range for {r} strands")
    n = r + s - 1
    p = i - 1
    blocks: list[list[tuple[int, int]]] = []
    for k, sign in reversed(sigma.crossings):
        if sign > 0:
            block, p = _positive_block(k, p, s)
        else:
            top = k if p == k - 1 else k - 1 if p == k else p
            pos, below = _positive_block(k, top, s)
            assert below == p
            block = [(q, -1) for q, _ in reversed(pos)]
            p = top
        blocks.append(block)
    cabled = [x for block in reversed(blocks) for x in block]
    p0 = i - 1
    t = sigma.twists[p0]
    ft = tuple((q + p0, sg) for q, sg in full_twist(s, t))
    tw = list(sigma.twists[:p0]) + [t] * s + list(sigma.twists[p0 + 1:])
    top = RibbonBraid(n, tuple(cabled) + ft, tuple(tw))
    return multiply(top, tau.shifted(p0, n))


_BRAID_RE = re.compile(r"\s*rb\(\s*(\d+)\s*\)\s*\[(.*?)\]\s*$", re.S)


def parse_braid(text: str) -> RibbonBraid:
    """Parse the literal ``rb(n)[e 1 e' 2 t 3 t' 1]``."""
    m = _BRAID_RE.match(text)
    if not m:
        raise BraidError(f"malformed braid literal {text!r}")
    n = int(m.group(1))
    toks = m.group(2).split()
    if len(toks) % 2:
        raise BraidError("braid word must alternate letters and indices")
    word = []
    for a, b in zip(toks[::2], toks[1::2]):
        if not b.isdigit():
            raise BraidError(f"bad braid index {b!r}")
        word.append((a, int(b)))
    return from_word(n, word)
