"""Anchored planar tangles as typed expressions.

Generating tangles
------------------
``Unit``          no inputs, output 0
``Id(n)``         ``(n; n)``
``Cap(i, n)``     ``(n+2; n)``, joins boundary points ``i+1, i+2`` of the input
``Cup(i, n)``     ``(n; n+2)``, inserts a nested arc at output points ``i+1, i+2``
``Pin(i, j, n)``  ``(n, j; n+j)``, the second input sits at output points
                  ``i+1 .. i+j``

An expression is a tree of ``Gen``, ``Comp`` (operadic composition into a
slot) and ``Act`` (precomposition with a ribbon braid acting on the input
anchor lines).  Every expression normalizes to a ``StandardForm``: a chain
``g_N ∘₁ ⋯ ∘₁ g_0`` ending in the unit, paired with one ribbon braid.

The inputs of a chain are its Pin second slots, numbered from the bottom
of the chain upward.  ``Act(body, σ)`` has ``inputs[k] = body.inputs[π_σ(k)]``,
so acting twice multiplies braids: ``Act(Act(e, σ), τ) ~ Act(e, σ·τ)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .ribbon_braid import RibbonBraid, compose_at as braid_compose_at, identity as braid_identity

__all__ = [
    "TangleTypeError",
    "TangleType",
    "Unit",
    "Id",
    "Cap",
    "Cup",
    "Pin",
    "Generator",
    "Gen",
    "Comp",
    "Act",
    "TangleExpr",
    "StandardForm",
    "infer_type",
    "compose",
    "act",
    "normalize",
    "combine",
    "gen_for_input",
]


class TangleTypeError(ValueError):
    """Ill-typed tangle expression.  ``path`` locates the offending node."""

    def __init__(self, message: str, path: str = "root"):
        super().__init__(f"{message} (at {path})")
        self.path = path
        self.reason = message


@dataclass(frozen=True)
class TangleType:
    inputs: tuple[int, ...]
    output: int

    def __str__(self):
        return f"({','.join(map(str, self.inputs))}; {self.output})"


# -- generators --------------------------------------------------------------

def _check(cond: bool, msg: str):
    if not cond:
        raise TangleTypeError(msg, "generator")


@dataclass(frozen=True)
class Unit:
    @property
    def inputs(self) -> tuple[int, ...]:
        return ()

    @property
    def output(self) -> int:
        return 0

    def render(self) -> str:
        return "u"


@dataclass(frozen=True)
class Id:
    n: int

    def __post_init__(self):
        _check(self.n >= 0, f"id needs n >= 0, got {self.n}")

    @property
    def inputs(self):
        return (self.n,)

    @property
    def output(self):
        return self.n

    def render(self):
        return f"(id {self.n})"


@dataclass(frozen=True)
class Cap:
    i: int
    n: int

    def __post_init__(self):
        _check(self.n >= 0 and 0 <= self.i <= self.n, f"cap index out of range: i={self.i}, n={self.n}")

    @property
    def inputs(self):
        return (self.n + 2,)

    @property
    def output(self):
        return self.n

    def render(self):
        return f"(cap {self.i} {self.n})"


@dataclass(frozen=True)
class Cup:
    i: int
    n: int

    def __post_init__(self):
        _check(self.n >= 0 and 0 <= self.i <= self.n, f"cup index out of range: i={self.i}, n={self.n}")

    @property
    def inputs(self):
        return (self.n,)

    @property
    def output(self):
        return self.n + 2

    def render(self):
        return f"(cup {self.i} {self.n})"


@dataclass(frozen=True)
class Pin:
    i: int
    j: int
    n: int

    def __post_init__(self):
        _check(self.n >= 0 and self.j >= 0 and 0 <= self.i <= self.n,
               f"pin index out of range: i={self.i}, j={self.j}, n={self.n}")

    @property
    def inputs(self):
        return (self.n, self.j)

    @property
    def output(self):
        return self.n + self.j

    def render(self):
        return f"(p {self.i} {self.j} {self.n})"


Generator = Union[Unit, Id, Cap, Cup, Pin]


def gen_for_input(kind: str, size: int, *idx: int) -> Generator:
    """Build a chain generator from its first-input size."""
    if kind == "cap":
        return Cap(idx[0], size - 2)
    if kind == "cup":
        return Cup(idx[0], size)
    if kind == "pin":
        return Pin(idx[0], idx[1], size)
    raise ValueError(kind)


# -- expressions ---------------------------------------------------------------

@dataclass(frozen=True)
class Gen:
    g: Generator


@dataclass(frozen=True)
class Comp:
    outer: "TangleExpr"
    slot: int
    inner: "TangleExpr"


@dataclass(frozen=True)
class Act:
    body: "TangleExpr"
    braid: RibbonBraid


TangleExpr = Union[Gen, Comp, Act]


def _infer(e, path: str) -> TangleType:
    if isinstance(e, Gen):
        return TangleType(e.g.inputs, e.g.output)
    if isinstance(e, Comp):
        t_out = _infer(e.outer, path + "/comp.outer")
        t_in = _infer(e.inner, path + "/comp.inner")
        r = len(t_out.inputs)
        if not 1 <= e.slot <= r:
            raise TangleTypeError(f"slot {e.slot} out of range for {r} inputs", path)
        want = t_out.inputs[e.slot - 1]
        if t_in.output != want:
            raise TangleTypeError(f"slot {e.slot} expects {want} points, inner output is {t_in.output}", path)
        k = e.slot - 1
        return TangleType(t_out.inputs[:k] + t_in.inputs + t_out.inputs[k + 1:], t_out.output)
    if isinstance(e, Act):
        t = _infer(e.body, path + "/act.body")
        if e.braid.strands != len(t.inputs):
            raise TangleTypeError(
                f"braid on {e.braid.strands} strands acts on {len(t.inputs)} inputs", path)
        pi = e.braid.permutation
        return TangleType(tuple(t.inputs[pi(k) - 1] for k in range(1, len(t.inputs) + 1)), t.output)
    if isinstance(e, StandardForm):
        return e.type
    raise TypeError(f"not a tangle expression: {e!r}")


def infer_type(e) -> TangleType:
    return _infer(e, "root")


def compose(outer, slot: int, inner):
    e = Comp(outer, slot, inner)
    infer_type(e)
    return e


def act(body, braid: RibbonBraid):
    e = Act(body, braid)
    infer_type(e)
    return e


# -- standard forms --------------------------------------------------------------

@dataclass(frozen=True)
class StandardForm:
    """Chain ``word[0] ∘₁ word[1] ∘₁ ⋯ ∘₁ Unit`` (top first) and a braid."""

    word: tuple
    braid: RibbonBraid

    def __post_init__(self):
        w = tuple(self.word)
        object.__setattr__(self, "word", w)
        if not w or not isinstance(w[-1], Unit):
            raise TangleTypeError("standard form must end in the unit", "word")
        size = 0
        for pos in range(len(w) - 2, -1, -1):
            g = w[pos]
            if isinstance(g, (Unit, Id)):
                raise TangleTypeError(f"{g.render()} cannot occur inside a chain", f"word[{pos}]")
            if g.inputs[0] != size:
                raise TangleTypeError(
                    f"{g.render()} expects {g.inputs[0]} points, chain below has {size}", f"word[{pos}]")
            size = g.output
        r = sum(isinstance(g, Pin) for g in w)
        if self.braid.strands != r:
            raise TangleTypeError(f"braid has {self.braid.strands} strands, chain has {r} inputs", "braid")

    @property
    def chain_inputs(self) -> tuple[int, ...]:
        """Input sizes of the bare chain, bottom Pin first."""
        return tuple(g.j for g in reversed(self.word) if isinstance(g, Pin))

    @property
    def output(self) -> int:
        return self.word[0].output

    @property
    def type(self) -> TangleType:
        pi = self.braid.permutation
        ins = self.chain_inputs
        return TangleType(tuple(ins[pi(k) - 1] for k in range(1, len(ins) + 1)), self.output)

    def pin_positions(self) -> list[int]:
        """Word positions of the Pins, ordered by input number."""
        return [p for p in range(len(self.word) - 1, -1, -1) if isinstance(self.word[p], Pin)]

    def input_index(self, pos: int) -> int:
        """1-based chain input number of the Pin at word position ``pos``."""
        return sum(isinstance(g, Pin) for g in self.word[pos:])

    def sizes(self) -> list[int]:
        """``sizes[p]`` is the number of points entering ``word[p]`` from below."""
        out = [0] * len(self.word)
        size = 0
        for pos in range(len(self.word) - 2, -1, -1):
            out[pos] = size
            size = self.word[pos].output
        return out

    def chain_expr(self):
        e = Gen(self.word[-1])
        for g in reversed(self.word[:-1]):
            e = Comp(Gen(g), 1, e)
        return e

    def to_expr(self):
        return Act(self.chain_expr(), self.braid)

    def key(self) -> tuple:
        return (self.word, self.braid.key())

    def __eq__(self, other):
        if not isinstance(other, StandardForm):
            return NotImplemented
        return self.word == other.word and self.braid == other.braid

    def __hash__(self):
        return hash(self.key())

    def render_word(self) -> str:
        return " ".join(g.render() for g in self.word)


def _merge(word: tuple, b: int, inner: tuple) -> tuple:
    """Glue the chain ``inner`` into the second slot of the ``b``-th Pin."""
    bottom_up = list(reversed(word))
    count = 0
    m = None
    for idx, g in enumerate(bottom_up):
        if isinstance(g, Pin):
            count += 1
            if count == b:
                m = idx
                break
    if m is None:
        raise AssertionError(f"no Pin number {b} in chain")
    pin = bottom_up[m]
    i, j, n = pin.i, pin.j, pin.n
    above: list = []  # top first
    for h in inner:
        if isinstance(h, Cap):
            assert h.output == j
            above.append(Cap(i + h.i, n + j))
            j += 2
        elif isinstance(h, Cup):
            assert h.output == j
            above.append(Cup(i + h.i, n + j - 2))
            j -= 2
        elif isinstance(h, Pin):
            assert h.output == j
            above.append(Pin(i + h.i, h.j, n + j - h.j))
            j -= h.j
        elif isinstance(h, Unit):
            assert j == 0
        else:
            raise AssertionError(f"unexpected generator {h!r} in a normalized chain")
    new_bottom_up = bottom_up[:m] + list(reversed(above)) + bottom_up[m + 1:]
    return tuple(reversed(new_bottom_up))


def combine(outer: StandardForm, slot: int, inner: StandardForm) -> StandardForm:
    """Standard form of ``outer ∘_slot inner`` from the two standard forms."""
    b = outer.braid.permutation(slot)
    word = _merge(outer.word, b, inner.word)
    return StandardForm(word, braid_compose_at(outer.braid, slot, inner.braid))


def _generator_form(g) -> StandardForm:
    if isinstance(g, Unit):
        return StandardForm((g,), braid_identity(0))
    if isinstance(g, Id):
        return StandardForm((Pin(0, g.n, 0), Unit()), braid_identity(1))
    if isinstance(g, Cap):
        return StandardForm((g, Pin(0, g.n + 2, 0), Unit()), braid_identity(1))
    if isinstance(g, Cup):
        return StandardForm((g, Pin(0, g.n, 0), Unit()), braid_identity(1))
    if isinstance(g, Pin):
        return StandardForm((g, Pin(0, g.n, 0), Unit()), braid_identity(2))
    raise TypeError(f"not a generator: {g!r}")


def normalize(e) -> StandardForm:
    """Deterministic standard form of a well-typed expression."""
    infer_type(e)
    return _normalize(e)


def _normalize(e) -> StandardForm:
    if isinstance(e, StandardForm):
        return e
    if isinstance(e, Gen):
        return _generator_form(e.g)
    if isinstance(e, Act):
        sf = _normalize(e.body)
        return StandardForm(sf.word, sf.braid * e.braid)
    if isinstance(e, Comp):
        return combine(_normalize(e.outer), e.slot, _normalize(e.inner))
    raise TypeError(f"not a tangle expression: {e!r}")
