"""Batch verification of relation families against an evaluation backend.

Families
--------
``A1``..``A7``  tangle relations, evaluated through the standard form
``C1``..``C9``  the same relations as identities of generator maps,
                evaluated by composing the maps directly
``M1``..``M6``  move invariance on seeded random standard forms
``RB``          equivariance of the braid action under cabling

Instances are bounded by ``nmax``: every box size in the type of the
relation (its inputs and its output) is at most ``nmax``.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Iterable

from . import tl
from .moves import applicable_moves
from .poly import DELTA, ONE, Poly
from .random_tangles import random_braid, random_standard_form
from .ribbon_braid import compose_at, from_word
from .tangle import Act, Cap, Comp, Cup, Gen, Id, Pin, StandardForm, Unit, infer_type, normalize

__all__ = [
    "FAMILIES",
    "BackendError",
    "RelationInstance",
    "InstanceResult",
    "Report",
    "enumerate_instances",
    "check_relations",
    "check_instances",
    "check_equivariance",
    "rotation_chain",
    "get_backend",
]

RELATION_FAMILIES = tuple(f"A{k}" for k in range(1, 8)) + tuple(f"C{k}" for k in range(1, 10))
MOVE_FAMILIES = tuple(f"M{k}" for k in range(1, 7))
FAMILIES = RELATION_FAMILIES + MOVE_FAMILIES


class BackendError(ValueError):
    pass


def get_backend(backend):
    """Resolve a backend name; only backends that evaluate morphisms qualify."""
    if backend in ("tl", None):
        return tl
    if isinstance(backend, str):
        if backend in ("groth", "grothendieck"):
            raise BackendError("the Grothendieck backend is object-level and cannot evaluate morphisms")
        raise BackendError(f"unknown backend {backend!r}")
    if not hasattr(backend, "eval_expr"):
        raise BackendError(f"backend {backend!r} has no eval_expr")
    return backend


@dataclass(frozen=True)
class RelationInstance:
    family: str
    params: tuple[tuple[str, object], ...]
    left: object
    right: object
    scalar: Poly = ONE  # the relation reads left = scalar * right

    def param_text(self) -> str:
        return ",".join(f"{k}={v}" for k, v in self.params)


@dataclass
class InstanceResult:
    instance: RelationInstance
    passed: bool
    seconds: float
    counterexample: tuple[str, str] | None = None


@dataclass
class Report:
    results: list[InstanceResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list[InstanceResult]:
        return [r for r in self.results if not r.passed]

    def extend(self, other: "Report") -> "Report":
        self.results.extend(other.results)
        return self

    def to_tsv(self) -> str:
        lines = ["family\tparams\tverdict"]
        for r in self.results:
            lines.append(f"{r.instance.family}\t{r.instance.param_text()}\t{'pass' if r.passed else 'fail'}")
        return "\n".join(lines) + "\n"

    def summary(self) -> str:
        n, bad = len(self.results), len(self.failures)
        return f"{n - bad}/{n} passed"


# -- instance builders ----------------------------------------------------------

def _c(outer, slot, inner):
    return Comp(outer, slot, inner)


def _g(x):
    return Gen(x)


def rotation_chain(n: int):
    """The chain ``a_n ∘ ⋯ ∘ a_{2n-1} ∘ p_{n,n} ∘ ā_{n-1} ∘ ⋯ ∘ ā_0 ∘ u``."""
    e = _g(Unit())
    for t in range(n):
        e = _c(_g(Cup(t, 2 * t)), 1, e)
    e = _c(_g(Pin(n, n, 2 * n)), 1, e)
    for t in range(n):
        i = 2 * n - 1 - t
        e = _c(_g(Cap(i, 3 * n - 2 - 2 * t)), 1, e)
    return e


def _a1(fam, nmax):
    for j in range(nmax + 1):
        yield (("form", "unit-first"), ("j", j)), _c(_g(Pin(0, j, 0)), 1, _g(Unit())), _g(Id(j)), ONE
    for n in range(nmax + 1):
        for i in range(n + 1):
            yield (("form", "unit-second"), ("n", n), ("i", i)), _c(_g(Pin(i, 0, n)), 2, _g(Unit())), _g(Id(n)), ONE


def _a2(fam, nmax):
    for n in range(nmax - 3):
        for j in range(n + 3):
            for i in range(n + 1):
                if i + 1 < j:
                    yield ((("n", n), ("i", i), ("j", j)),
                           _c(_g(Cap(i, n)), 1, _g(Cap(j, n + 2))),
                           _c(_g(Cap(j - 2, n)), 1, _g(Cap(i, n + 2))), ONE)


def _a3(fam, nmax):
    for n in range(nmax - 3):
        for j in range(n + 1):
            for i in range(j + 1):
                yield ((("n", n), ("i", i), ("j", j)),
                       _c(_g(Cup(i, n + 2)), 1, _g(Cup(j, n))),
                       _c(_g(Cup(j + 2, n + 2)), 1, _g(Cup(i, n))), ONE)


def _a4(fam, nmax):
    for n in range(nmax + 1):
        for i in range(n + 1):
            for j in range(n + 1):
                left = _c(_g(Cap(i, n)), 1, _g(Cup(j, n)))
                p = (("n", n), ("i", i), ("j", j))
                if i < j - 1:
                    yield p + (("case", "i<j-1"),), left, _c(_g(Cup(j - 2, n - 2)), 1, _g(Cap(i, n - 2))), ONE
                elif i == j + 1 or i == j - 1:
                    yield p + (("case", "i=j±1"),), left, _g(Id(n)), ONE
                elif i == j:
                    if fam == "A4":
                        yield p + (("case", "i=j"),), left, _g(Id(n)), DELTA
                else:
                    yield p + (("case", "i>j+1"),), left, _c(_g(Cup(j, n - 2)), 1, _g(Cap(i - 2, n - 2))), ONE


def _a5(fam, nmax):
    for n in range(nmax + 1):
        for k in range(nmax + 1):
            out = n + k - 2
            if out < 0 or out > nmax:
                continue
            for j in range(n + 1):
                for i in range(out + 1):
                    left = _c(_g(Cap(i, out)), 1, _g(Pin(j, k, n)))
                    p = (("n", n), ("i", i), ("j", j), ("k", k))
                    if i + 1 < j:
                        yield (p + (("case", "i+1<j"),), left,
                               _c(_g(Pin(j - 2, k, n - 2)), 1, _g(Cap(i, n - 2))), ONE)
                    if j < i + 1 < j + k:
                        yield (p + (("case", "j<i+1<j+k"),), left,
                               _c(_g(Pin(j, k - 2, n)), 2, _g(Cap(i - j, k - 2))), ONE)
                    if i + 1 > j + k:
                        yield (p + (("case", "i+1>j+k"),), left,
                               _c(_g(Pin(j, k, n - 2)), 1, _g(Cap(i - k, n - 2))), ONE)


def _a6(fam, nmax):
    for n in range(nmax + 1):
        for k in range(nmax + 1):
            out = n + k + 2
            if out > nmax:
                continue
            for j in range(n + 1):
                for i in range(n + k + 1):
                    left = _c(_g(Cup(i, n + k)), 1, _g(Pin(j, k, n)))
                    p = (("n", n), ("i", i), ("j", j), ("k", k))
                    if i <= j:
                        yield (p + (("case", "i<=j"),), left,
                               _c(_g(Pin(j + 2, k, n + 2)), 1, _g(Cup(i, n))), ONE)
                    if j <= i <= j + k:
                        yield (p + (("case", "j<=i<=j+k"),), left,
                               _c(_g(Pin(j, k + 2, n)), 2, _g(Cup(i - j, k))), ONE)
                    if i >= j + k:
                        yield (p + (("case", "i>=j+k"),), left,
                               _c(_g(Pin(j, k, n + 2)), 1, _g(Cup(i - k, n))), ONE)


def _a7(fam, nmax):
    for n in range(nmax + 1):
        for i in range(n + 1):
            for j in range(nmax + 1):
                for l in range(nmax + 1 - j):
                    for k in range(nmax + 1):
                        if n + j + k + l > nmax:
                            continue
                        yield ((("n", n), ("i", i), ("j", j), ("k", k), ("l", l)),
                               _c(_g(Pin(i + j, k, n + j + l)), 1, _g(Pin(i, j + l, n))),
                               _c(_g(Pin(i, j + k + l, n)), 2, _g(Pin(j, k, j + l))), ONE)


def _c8(fam, nmax):
    swap = from_word(3, ["e 2"])
    for n in range(nmax + 1):
        for j in range(nmax + 1):
            for l in range(nmax + 1):
                if n + j + l > nmax:
                    continue
                for i in range(n + 1):
                    for k in range(n - i + 1):
                        left = _c(_g(Pin(i + j + k, l, n + j)), 1, _g(Pin(i, j, n)))
                        right = Act(_c(_g(Pin(i, j, n + l)), 1, _g(Pin(i + k, l, n))), swap)
                        yield (("n", n), ("i", i), ("j", j), ("k", k), ("l", l)), left, right, ONE


def _c9(fam, nmax):
    for n in range(nmax + 1):
        yield (("n", n),), rotation_chain(n), Act(_g(Id(n)), from_word(1, ["t 1"])), ONE


_BUILDERS = {
    "1": _a1, "2": _a2, "3": _a3, "4": _a4, "5": _a5, "6": _a6, "7": _a7, "8": _c8, "9": _c9,
}


def _move_instances(family: str, nmax: int, count: int = 60, seed: int = 0):
    rng = random.Random(f"{family}:{nmax}:{seed}")
    for t in range(count):
        sf = random_standard_form(rng, rng.randint(1, 6), max_size=max(nmax, 2), max_pin=min(max(nmax, 1), 3))
        for move, res in applicable_moves(sf):
            if move.kind != family:
                continue
            yield ((("sample", t), ("move", str(move))), sf, res, ONE)


def enumerate_instances(family: str, nmax: int) -> list[RelationInstance]:
    if nmax < 0:
        raise ValueError("nmax must be non-negative")
    if family in MOVE_FAMILIES:
        gen = _move_instances(family, nmax)
    elif family in RELATION_FAMILIES:
        num = family[1:]
        if family[0] == "A" and num in ("8", "9"):
            raise ValueError(f"unknown family {family!r}")
        gen = _BUILDERS[num](family, nmax)
    else:
        raise ValueError(f"unknown family {family!r}; known: {', '.join(FAMILIES)}")
    out = []
    for params, left, right, scalar in gen:
        inst = RelationInstance(family, tuple(params), left, right, scalar)
        if infer_type(left) != infer_type(right):
            raise AssertionError(f"ill-typed instance {inst.param_text()} of {family}")
        out.append(inst)
    return out


# -- evaluation -------------------------------------------------------------------------

def _evaluate(backend, family: str, e):
    if family.startswith("A") and not isinstance(e, StandardForm):
        return backend.eval_expr(normalize(e))
    return backend.eval_expr(e)


def check_instances(backend, instances: Iterable[RelationInstance]) -> Report:
    backend = get_backend(backend)
    report = Report()
    for inst in instances:
        t0 = time.perf_counter()
        lhs = _evaluate(backend, inst.family, inst.left)
        rhs = _evaluate(backend, inst.family, inst.right)
        ok = lhs.domain == rhs.domain and lhs.codomain == rhs.codomain and all(
            lhs(c) == rhs(c).scale(inst.scalar) for c in lhs.columns())
        cx = None
        if not ok:
            cx = (backend.format_matrix(lhs), backend.format_matrix(rhs))
        report.results.append(InstanceResult(inst, ok, time.perf_counter() - t0, cx))
    return report


def check_relations(backend, family: str, nmax: int) -> Report:
    return check_instances(backend, enumerate_instances(family, nmax))


def _block_oracle(sigma, i: int, tau, args: tuple) -> tuple:
    """Apply ``P(τ)`` to the cabled block, then ``P(σ)`` with the block as one factor."""
    s = tau.strands
    k = i - 1
    block = tl.permute_factors(tau, args[k:k + s])
    outer = args[:k] + (block,) + args[k + s:]
    moved = tl.permute_factors(sigma, outer)
    flat = []
    for pos, x in enumerate(moved):
        if sigma.permutation(i) == pos + 1:
            flat.extend(x)
        else:
            flat.append(x)
    return tuple(flat)


def check_equivariance(backend, n: int, trials: int, seed: int, sizes: tuple[int, ...] = (0, 2, 4)) -> Report:
    """Compare ``P(σ ∘_i τ)`` with the operadic composite of ``P(σ)`` and ``P(τ)``
    on every basis tuple of random box-size tuples."""
    backend = get_backend(backend)
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = random.Random(seed)
    report = Report()
    for t in range(trials):
        t0 = time.perf_counter()
        r = rng.randint(1, n)
        s = rng.randint(0, n)
        sigma = random_braid(rng, r, rng.randint(0, 6))
        tau = random_braid(rng, s, rng.randint(0, 6))
        i = rng.randint(1, r)
        boxes = tuple(rng.choice(sizes) for _ in range(r + s - 1))
        comp = compose_at(sigma, i, tau)
        ok = True
        cx = None
        for args in itertools.product(*(backend.enumerate_basis(b) for b in boxes)):
            got = backend.permute_factors(comp, args)
            want = _block_oracle(sigma, i, tau, args)
            if got != want:
                ok = False
                cx = (repr(got), repr(want))
                break
        inst = RelationInstance("RB", (("trial", t), ("sigma", sigma.render()), ("i", i),
                                       ("tau", tau.render()), ("boxes", "/".join(map(str, boxes)))),
                                sigma, tau)
        report.results.append(InstanceResult(inst, ok, time.perf_counter() - t0, cx))
    return report
