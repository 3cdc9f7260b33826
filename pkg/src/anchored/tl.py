"""Temperley–Lieb planar algebra with a symbolic loop value ``d``.

The box space ``P[n]`` has a basis of non-crossing perfect matchings of
``n`` boundary points.  A matching is stored as its partner tuple
(0-based internally; 1-based in text I/O).  Coefficients are ``Poly``.

Maps between tensor products of box spaces are kept lazily as functions on
basis tuples, with caching; ``matrix`` materializes them.  Anchor data acts
through the permutation of tensor factors only, since the braiding of
vector spaces is the flip and the twist is trivial.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb
from typing import Callable, Mapping, Sequence

from .poly import DELTA, ONE, ZERO, Poly
from .ribbon_braid import RibbonBraid
from .tangle import Act, Cap, Comp, Cup, Gen, Id, Pin, StandardForm, Unit, infer_type

__all__ = [
    "Pairing",
    "TLElement",
    "TLMap",
    "box_dim",
    "enumerate_basis",
    "is_noncrossing",
    "eval_generator",
    "eval_expr",
    "permute_factors",
    "format_matrix",
    "format_element",
    "parse_elements",
]

Pairing = tuple  # partner tuple: p[k] is the point matched with k


def box_dim(n: int) -> int:
    if n < 0 or n % 2:
        return 0
    m = n // 2
    return comb(2 * m, m) // (m + 1)


def is_noncrossing(p: Sequence[int]) -> bool:
    n = len(p)
    if n % 2:
        return False
    for a in range(n):
        b = p[a]
        if b == a or p[b] != a:
            return False
        if a < b:
            for c in range(a + 1, b):
                if not a < p[c] < b:
                    return False
    return True


@lru_cache(maxsize=None)
def enumerate_basis(n: int) -> tuple[Pairing, ...]:
    """All non-crossing matchings of ``n`` points, lexicographic order."""
    if n < 0 or n % 2:
        return ()

    def build(points: tuple[int, ...]):
        if not points:
            yield {}
            return
        first = points[0]
        for m in range(1, len(points), 2):
            inside, outside = points[1:m], points[m + 1:]
            for a in build(inside):
                for b in build(outside):
                    d = {first: points[m], points[m]: first}
                    d.update(a)
                    d.update(b)
                    yield d

    out = [tuple(d[k] for k in range(n)) for d in build(tuple(range(n)))]
    return tuple(sorted(out))


# -- diagram operations ---------------------------------------------------------

def _cap(p: Pairing, i: int) -> tuple[Pairing, int]:
    """Join points ``i, i+1``; returns the new matching and loop count."""
    n = len(p)
    if p[i] == i + 1:
        rest = [k for k in range(n) if k not in (i, i + 1)]
        loops = 1
        a = b = None
    else:
        a, b = p[i], p[i + 1]
        rest = [k for k in range(n) if k not in (i, i + 1)]
        loops = 0
    index = {k: r for r, k in enumerate(rest)}
    out = []
    for k in rest:
        q = p[k]
        if loops == 0 and k == a:
            q = b
        elif loops == 0 and k == b:
            q = a
        out.append(index[q])
    return tuple(out), loops


def _cup(p: Pairing, i: int) -> Pairing:
    n = len(p)
    shift = [k if k < i else k + 2 for k in range(n)]
    out = [0] * (n + 2)
    for k in range(n):
        out[shift[k]] = shift[p[k]]
    out[i], out[i + 1] = i + 1, i
    return tuple(out)


def _pin(x: Pairing, y: Pairing, i: int) -> Pairing:
    n, j = len(x), len(y)
    sx = [k if k < i else k + j for k in range(n)]
    out = [0] * (n + j)
    for k in range(n):
        out[sx[k]] = sx[x[k]]
    for k in range(j):
        out[i + k] = i + y[k]
    return tuple(out)


# -- vectors ------------------------------------------------------------------------

class TLElement:
    """Finite combination of matchings of ``n`` points."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Pairing, Poly] | None = None):
        self.n = n
        clean = {}
        for p, c in (terms or {}).items():
            c = Poly.coerce(c)
            if c:
                if len(p) != n:
                    raise ValueError(f"matching {p} does not have {n} points")
                clean[tuple(p)] = c
        self.terms = clean

    @classmethod
    def basis(cls, p: Pairing, coeff=ONE) -> "TLElement":
        return cls(len(p), {tuple(p): coeff})

    def __add__(self, other: "TLElement") -> "TLElement":
        if self.n != other.n:
            raise ValueError("box size mismatch")
        t = dict(self.terms)
        for p, c in other.terms.items():
            t[p] = t.get(p, ZERO) + c
        return TLElement(self.n, t)

    def scale(self, c) -> "TLElement":
        c = Poly.coerce(c)
        return TLElement(self.n, {p: c * v for p, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, TLElement) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return sorted(self.terms.items())

    def __repr__(self):
        body = " + ".join(f"({c})*{list(p)}" for p, c in self.items()) or "0"
        return f"TLElement[{self.n}]({body})"


class TLMap:
    """Multilinear map ``P[domain[0]] ⊗ ⋯ → P[codomain]`` on basis tuples."""

    def __init__(self, domain: Sequence[int], codomain: int, fn: Callable[[tuple], TLElement]):
        self.domain = tuple(domain)
        self.codomain = codomain
        self._fn = fn
        self._cache: dict[tuple, TLElement] = {}

    def __call__(self, args: tuple) -> TLElement:
        args = tuple(args)
        hit = self._cache.get(args)
        if hit is None:
            hit = self._fn(args)
            self._cache[args] = hit
        return hit

    def apply(self, vectors: Sequence[TLElement]) -> TLElement:
        """Extend multilinearly to arbitrary input vectors."""
        if len(vectors) != len(self.domain):
            raise ValueError(f"expected {len(self.domain)} inputs, got {len(vectors)}")
        for v, n in zip(vectors, self.domain):
            if v.n != n:
                raise ValueError(f"input of size {v.n} where {n} was expected")
        out = TLElement(self.codomain)
        for combo in itertools.product(*(v.items() for v in vectors)):
            coeff = ONE
            for _, c in combo:
                coeff = coeff * c
            out = out + self(tuple(p for p, _ in combo)).scale(coeff)
        return out

    def columns(self) -> list[tuple]:
        return list(itertools.product(*(enumerate_basis(n) for n in self.domain)))

    def table(self) -> dict:
        return {col: self(col) for col in self.columns()}

    def matrix(self) -> list[list[Poly]]:
        rows = enumerate_basis(self.codomain)
        cols = self.columns()
        vals = [self(c) for c in cols]
        return [[v.terms.get(r, ZERO) for v in vals] for r in rows]

    def __eq__(self, other):
        if not isinstance(other, TLMap):
            return NotImplemented
        return (self.domain == other.domain and self.codomain == other.codomain
                and all(self(c) == other(c) for c in self.columns()))

    __hash__ = None  # type: ignore[assignment]

    def compose_at(self, slot: int, inner: "TLMap") -> "TLMap":
        """``self ∘_slot inner``: feed ``inner``'s output into input ``slot``."""
        k = slot - 1
        if not 0 <= k < len(self.domain):
            raise ValueError(f"slot {slot} out of range")
        if inner.codomain != self.domain[k]:
            raise ValueError(f"slot {slot} has size {self.domain[k]}, inner output is {inner.codomain}")
        s = len(inner.domain)
        dom = self.domain[:k] + inner.domain + self.domain[k + 1:]

        def fn(args):
            mid = inner(args[k:k + s])
            out = TLElement(self.codomain)
            for p, c in mid.items():
                out = out + self(args[:k] + (p,) + args[k + s:]).scale(c)
            return out

        return TLMap(dom, self.codomain, fn)

    def precompose_permutation(self, images: Sequence[int]) -> "TLMap":
        """``self ∘ P(σ)`` where ``images`` is ``π_σ`` (1-based)."""
        r = len(images)
        if r != len(self.domain):
            raise ValueError("permutation size mismatch")
        dom = tuple(self.domain[images[k] - 1] for k in range(r))

        def fn(args):
            moved = [None] * r
            for k in range(r):
                moved[images[k] - 1] = args[k]
            return self(tuple(moved))

        return TLMap(dom, self.codomain, fn)


# -- generators ---------------------------------------------------------------------

def eval_generator(g) -> TLMap:
    if isinstance(g, Unit):
        return TLMap((), 0, lambda args: TLElement.basis(()))
    if isinstance(g, Id):
        return TLMap((g.n,), g.n, lambda args: TLElement.basis(args[0]))
    if isinstance(g, Cap):
        def cap(args, i=g.i):
            p, loops = _cap(args[0], i)
            return TLElement.basis(p, DELTA ** loops)
        return TLMap((g.n + 2,), g.n, cap)
    if isinstance(g, Cup):
        return TLMap((g.n,), g.n + 2, lambda args, i=g.i: TLElement.basis(_cup(args[0], i)))
    if isinstance(g, Pin):
        return TLMap((g.n, g.j), g.n + g.j, lambda args, i=g.i: TLElement.basis(_pin(args[0], args[1], i)))
    raise TypeError(f"not a generator: {g!r}")


def permute_factors(braid: RibbonBraid, args: Sequence) -> tuple:
    """Image of a basis tuple under ``P(σ)``: factor ``k`` moves to slot ``π_σ(k)``."""
    images = braid.permutation.images
    if len(images) != len(args):
        raise ValueError("braid strand count does not match the number of factors")
    moved = [None] * len(args)
    for k, a in enumerate(args):
        moved[images[k] - 1] = a
    return tuple(moved)


def eval_expr(e) -> TLMap:
    """Evaluate an expression or a standard form."""
    if isinstance(e, StandardForm):
        m = eval_generator(e.word[-1])
        for g in reversed(e.word[:-1]):
            m = eval_generator(g).compose_at(1, m)
        return m.precompose_permutation(e.braid.permutation.images)
    infer_type(e)
    return _eval(e)


def _eval(e) -> TLMap:
    if isinstance(e, Gen):
        return eval_generator(e.g)
    if isinstance(e, Comp):
        return _eval(e.outer).compose_at(e.slot, _eval(e.inner))
    if isinstance(e, Act):
        return _eval(e.body).precompose_permutation(e.braid.permutation.images)
    if isinstance(e, StandardForm):
        return eval_expr(e)
    raise TypeError(f"not a tangle expression: {e!r}")


# -- text formats -------------------------------------------------------------------

def _cell(c: Poly) -> str:
    return str(c)


def format_matrix(m: TLMap) -> str:
    """TSV: a comment header, then one row per codomain basis element."""
    lines = [f"# domain\t{','.join(map(str, m.domain))}", f"# codomain\t{m.codomain}"]
    for row in m.matrix():
        lines.append("\t".join(_cell(c) for c in row))
    return "\n".join(lines) + "\n"


def format_element(v: TLElement) -> str:
    """One line per term: ``n: partners = coeff`` with 1-based partners."""
    if v.is_zero():
        return f"{v.n}: = 0\n"
    return "".join(
        f"{v.n}: {' '.join(str(q + 1) for q in p)} = {c}\n" for p, c in v.items())


def parse_elements(text: str) -> list[TLElement]:
    """Parse input vectors; blank lines separate consecutive vectors."""
    out: list[TLElement] = []
    current: TLElement | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            if current is not None:
                out.append(current)
                current = None
            continue
        try:
            head, rest = line.split(":", 1)
            partners, coeff = rest.split("=", 1)
            n = int(head)
            p = tuple(int(x) - 1 for x in partners.split())
            c = Poly.parse(coeff)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: cannot parse {raw!r} ({exc})") from None
        if len(p) != n or (n and not is_noncrossing(p)):
            raise ValueError(f"line {lineno}: {list(x + 1 for x in p)} is not a non-crossing matching of {n} points")
        term = TLElement(n, {p: c})
        if current is None:
            current = term
        elif current.n != n:
            raise ValueError(f"line {lineno}: box size {n} inside a vector of size {current.n}")
        else:
            current = current + term
    if current is not None:
        out.append(current)
    return out
