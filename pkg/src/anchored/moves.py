"""Local moves on standard forms and a bounded equivalence prover.

Positions index the word from the top (``word[0]``).  A pair move at
position ``p`` rewrites ``word[p]`` (upper) and ``word[p+1]`` (lower).

M1  exchange two adjacent Pins; the braid gains ``ε_a^{±1}`` on the left,
    where ``a`` is the chain input of the lower Pin
M2  slide a cap or cup past an adjacent Pin
M3  exchange two adjacent caps/cups that touch disjoint points
M4  cancel a cap directly above a cup when they form a zigzag
M5  insert a zigzag next to a Pin's inserted strands
M6  wind or unwind a full rotation of a Pin's input, trading it for
    ``ϑ_a^{±1}`` in the braid
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .ribbon_braid import RibbonBraid
from .tangle import Cap, Cup, Pin, StandardForm, TangleTypeError, infer_type, normalize

__all__ = [
    "Move",
    "MoveNotApplicable",
    "applicable_moves",
    "apply_move",
    "equivalent",
    "EquivalenceResult",
]


class MoveNotApplicable(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Move:
    kind: str
    position: int
    variant: str = ""

    def __str__(self):
        return f"{self.kind}@{self.position}" + (f":{self.variant}" if self.variant else "")


def _letter(r: int, kind: str, a: int, sign: int) -> RibbonBraid:
    if kind == "e":
        return RibbonBraid(r, ((a, sign),))
    tw = [0] * r
    tw[a - 1] = sign
    return RibbonBraid(r, (), tuple(tw))


def _pair_rewrites(upper, lower, s: int) -> Iterator[tuple[str, str, tuple, tuple | None]]:
    """Rewrites of an adjacent pair whose lower member has ``s`` inputs.

    Yields ``(kind, variant, new_pair, braid_letter)``; ``new_pair`` is the
    replacement (top first), ``braid_letter`` is ``("e", ±1)`` or None.
    """
    U, L = type(upper), type(lower)
    if U is Pin and L is Pin:
        I, Lw = upper.i, upper.j
        i, j = lower.i, lower.j
        if I >= i + j:
            yield "M1", "down", (Pin(i, j, s + Lw), Pin(I - j, Lw, s)), ("e", 1)
        if I <= i:
            yield "M1", "up", (Pin(i + Lw, j, s + Lw), Pin(I, Lw, s)), ("e", -1)
    elif U is Cap and L is Pin:
        c, j, k = upper.i, lower.i, lower.j
        if c + 1 < j:
            yield "M2", "cap-left-down", (Pin(j - 2, k, s - 2), Cap(c, s - 2)), None
        if c + 1 > j + k:
            yield "M2", "cap-right-down", (Pin(j, k, s - 2), Cap(c - k, s - 2)), None
    elif U is Pin and L is Cap:
        J, k, c = upper.i, upper.j, lower.i
        if c <= J:
            yield "M2", "cap-left-up", (Cap(c, s + k - 2), Pin(J + 2, k, s)), None
        if c >= J:
            yield "M2", "cap-right-up", (Cap(c + k, s + k - 2), Pin(J, k, s)), None
    elif U is Cup and L is Pin:
        c, j, k = upper.i, lower.i, lower.j
        if c <= j:
            yield "M2", "cup-left-down", (Pin(j + 2, k, s + 2), Cup(c, s)), None
        if c >= j + k:
            yield "M2", "cup-right-down", (Pin(j, k, s + 2), Cup(c - k, s)), None
    elif U is Pin and L is Cup:
        J, k, c = upper.i, upper.j, lower.i
        if J >= 2 and c <= J - 2:
            yield "M2", "cup-left-up", (Cup(c, s + k), Pin(J - 2, k, s)), None
        if c >= J:
            yield "M2", "cup-right-up", (Cup(c + k, s + k), Pin(J, k, s)), None
    elif U is Cap and L is Cap:
        c1, c2 = upper.i, lower.i
        if c1 + 1 < c2:
            yield "M3", "cap-cap", (Cap(c2 - 2, s - 4), Cap(c1, s - 2)), None
        if c2 <= c1:
            yield "M3", "cap-cap-rev", (Cap(c2, s - 4), Cap(c1 + 2, s - 2)), None
    elif U is Cup and L is Cup:
        c1, c2 = upper.i, lower.i
        if c1 <= c2:
            yield "M3", "cup-cup", (Cup(c2 + 2, s + 2), Cup(c1, s)), None
        if c2 <= c1 - 2:
            yield "M3", "cup-cup-rev", (Cup(c2, s + 2), Cup(c1 - 2, s)), None
    elif U is Cap and L is Cup:
        c1, c2 = upper.i, lower.i
        if c1 < c2 - 1:
            yield "M3", "cap-cup-left", (Cup(c2 - 2, s - 2), Cap(c1, s - 2)), None
        if c1 > c2 + 1:
            yield "M3", "cap-cup-right", (Cup(c2, s - 2), Cap(c1 - 2, s - 2)), None
        if c1 == c2 + 1 or c1 + 1 == c2:
            yield "M4", "zigzag", (), None
    elif U is Cup and L is Cap:
        c1, c2 = upper.i, lower.i
        if c2 <= c1:
            yield "M3", "cup-cap-left", (Cap(c2, s), Cup(c1 + 2, s)), None
        if c2 >= c1:
            yield "M3", "cup-cap-right", (Cap(c2 + 2, s), Cup(c1, s)), None


def _rotation_word(j: int, k: int, s: int) -> tuple:
    """Chain replacing ``Pin(j, k, s)`` by the same Pin wound once around."""
    cups = [Cup(j + t, s + 2 * t) for t in range(k)]  # bottom first
    pin = Pin(j + k, k, s + 2 * k)
    caps = [Cap(j + 2 * k - 1 - t, s + 3 * k - 2 - 2 * t) for t in range(k)]  # bottom first
    bottom_up = cups + [pin] + caps
    return tuple(reversed(bottom_up))


def _unwind_at(word: tuple, q: int, sizes: list[int]):
    """If the Pin at ``q`` is the centre of a wound rotation word, return the
    span ``(start, stop)`` and the plain Pin replacing it."""
    pin = word[q]
    k = pin.j
    if k == 0:
        return None
    j = pin.i - k
    if j < 0 or q - k < 0 or q + k >= len(word) - 1:
        return None
    s = sizes[q + k]
    if j > s:
        return None
    want = _rotation_word(j, k, s)
    if word[q - k:q + k + 1] == want:
        return (q - k, q + k + 1), Pin(j, k, s)
    return None


def applicable_moves(sf: StandardForm) -> list[tuple[Move, StandardForm]]:
    """Every move applicable to ``sf`` with its result, in a fixed order."""
    w = sf.word
    r = sf.braid.strands
    sizes = sf.sizes()
    out: list[tuple[Move, StandardForm]] = []
    for p in range(len(w) - 2):
        upper, lower = w[p], w[p + 1]
        for kind, variant, pair, letter in _pair_rewrites(upper, lower, sizes[p + 1]):
            braid = sf.braid
            if letter is not None:
                a = sf.input_index(p + 1)
                braid = _letter(r, letter[0], a, letter[1]) * braid
            out.append((Move(kind, p, variant), StandardForm(w[:p] + pair + w[p + 2:], braid)))
    for p, g in enumerate(w):
        if not isinstance(g, Pin):
            continue
        s, j, k = sizes[p], g.i, g.j
        a = sf.input_index(p)
        if k >= 1:
            right = (Cap(j + k - 1, s + k), Cup(j + k, s + k))
            out.append((Move("M5", p, "right"), StandardForm(w[:p] + right + w[p:], sf.braid)))
            left = (Cap(j + 1, s + k), Cup(j, s + k))
            out.append((Move("M5", p, "left"), StandardForm(w[:p] + left + w[p:], sf.braid)))
        wound = _rotation_word(j, k, s)
        out.append((Move("M6", p, "wind"),
                    StandardForm(w[:p] + wound + w[p + 1:], _letter(r, "t", a, -1) * sf.braid)))
        if k == 0:
            out.append((Move("M6", p, "unwind"),
                        StandardForm(w, _letter(r, "t", a, 1) * sf.braid)))
        else:
            hit = _unwind_at(w, p, sizes)
            if hit is not None:
                (lo, hi), plain = hit
                out.append((Move("M6", p, "unwind"),
                            StandardForm(w[:lo] + (plain,) + w[hi:], _letter(r, "t", a, 1) * sf.braid)))
    return out


def apply_move(sf: StandardForm, move: Move) -> StandardForm:
    for m, result in applicable_moves(sf):
        if m == move:
            return result
    raise MoveNotApplicable(f"move {move} does not apply to {sf.render_word()}")


@dataclass
class EquivalenceResult:
    proven: bool
    steps: int | None
    explored: int
    path: list = field(default_factory=list)

    def __bool__(self):
        return self.proven

    def __str__(self):
        if self.proven:
            return f"Proven ({self.steps} steps)"
        return f"NotProven (explored {self.explored} standard forms)"


def _sort_key(sf: StandardForm):
    return (sf.render_word(), sf.braid.render())


def equivalent(a, b, budget: int) -> EquivalenceResult:
    """Breadth-first search from both ends for a chain of at most ``budget``
    moves connecting ``normalize(a)`` and ``normalize(b)``."""
    ta, tb = infer_type(a), infer_type(b)
    if ta != tb:
        raise TangleTypeError(f"types differ: {ta} vs {tb}")
    sa, sb = normalize(a), normalize(b)
    parents = [{sa.key(): None}, {sb.key(): None}]
    forms = [{sa.key(): sa}, {sb.key(): sb}]
    frontiers = [[sa], [sb]]
    depth = [0, 0]

    def path_to(side, key):
        chain = []
        while key is not None:
            chain.append(forms[side][key])
            key = parents[side][key]
        return chain

    if sa.key() == sb.key():
        return EquivalenceResult(True, 0, 1, [sa])
    while depth[0] + depth[1] < budget and frontiers[0] and frontiers[1]:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        other = 1 - side
        nxt = []
        for sf in sorted(frontiers[side], key=_sort_key):
            for _, res in applicable_moves(sf):
                key = res.key()
                if key in parents[side]:
                    continue
                parents[side][key] = sf.key()
                forms[side][key] = res
                nxt.append(res)
                if key in parents[other]:
                    chain = list(reversed(path_to(0, key))) + path_to(1, key)[1:]
                    explored = len(parents[0]) + len(parents[1])
                    return EquivalenceResult(True, len(chain) - 1, explored, chain)
        frontiers[side] = nxt
        depth[side] += 1
    return EquivalenceResult(False, None, len(parents[0]) + len(parents[1]))
