"""Seeded random tangles, standard forms and braids for property checks."""

from __future__ import annotations

import random

from .ribbon_braid import RibbonBraid, from_word
from .tangle import Act, Cap, Comp, Cup, Gen, Id, Pin, StandardForm, Unit, infer_type

__all__ = ["random_braid", "random_generator", "random_expr", "random_standard_form"]


def random_braid(rng: random.Random, n: int, length: int, twists: bool = True) -> RibbonBraid:
    letters = []
    for _ in range(length):
        if n >= 2 and (not twists or rng.random() < 0.75):
            letters.append((rng.choice(("e", "e'")), rng.randint(1, n - 1)))
        elif twists and n >= 1:
            letters.append((rng.choice(("t", "t'")), rng.randint(1, n)))
    return from_word(n, letters)


def random_generator(rng: random.Random, max_arity: int, output: int | None = None):
    """A generator with every box size at most ``max_arity``."""
    if output is None:
        opts = ["id", "cup", "pin"] + (["cap"] if max_arity >= 2 else []) + ["unit"]
        kind = rng.choice(opts)
        if kind == "unit":
            return Unit()
        if kind == "id":
            return Id(rng.randint(0, max_arity))
        if kind == "cap":
            n = rng.randint(0, max_arity - 2)
            return Cap(rng.randint(0, n), n)
        if kind == "cup":
            n = rng.randint(0, max(0, max_arity - 2))
            return Cup(rng.randint(0, n), n)
        total = rng.randint(0, max_arity)
        j = rng.randint(0, total)
        n = total - j
        return Pin(rng.randint(0, n), j, n)
    o = output
    opts = [Id(o)]
    if o + 2 <= max_arity:
        opts += [Cap(i, o) for i in range(o + 1)]
    if o >= 2:
        opts += [Cup(i, o - 2) for i in range(o - 1)]
    for j in range(o + 1):
        opts += [Pin(i, j, o - j) for i in range(o - j + 1)]
    if o == 0:
        opts.append(Unit())
    return rng.choice(opts)


def random_expr(rng: random.Random, size: int, max_arity: int = 6, output: int | None = None,
                max_inputs: int = 4):
    """A well-typed expression with at most ``size`` nodes."""
    if size <= 1:
        return Gen(random_generator(rng, max_arity, output))
    roll = rng.random()
    if roll < 0.2:
        body = random_expr(rng, size - 1, max_arity, output, max_inputs)
        r = len(infer_type(body).inputs)
        return Act(body, random_braid(rng, r, rng.randint(0, 3)))
    if roll < 0.85:
        k = rng.randint(1, size - 1)
        outer = random_expr(rng, k, max_arity, output, max_inputs)
        t = infer_type(outer)
        if not t.inputs:
            return outer
        slot = rng.randint(1, len(t.inputs))
        for _ in range(8):
            inner = random_expr(rng, size - k, max_arity, t.inputs[slot - 1], max_inputs)
            ti = infer_type(inner)
            if len(t.inputs) - 1 + len(ti.inputs) <= max_inputs:
                return Comp(outer, slot, inner)
        return outer
    return Gen(random_generator(rng, max_arity, output))


def random_standard_form(rng: random.Random, length: int, max_size: int = 6, max_pin: int = 3,
                         max_inputs: int = 3) -> StandardForm:
    """Random chain of ``length`` generators above the unit, plus a braid."""
    bottom_up = [Unit()]
    size = 0
    pins = 0
    for _ in range(length):
        opts = []
        if size >= 2:
            opts += [Cap(i, size - 2) for i in range(size - 1)]
        if size + 2 <= max_size:
            opts += [Cup(i, size) for i in range(size + 1)]
        if pins < max_inputs:
            for j in range(0, min(max_pin, max_size - size) + 1):
                opts += [Pin(i, j, size) for i in range(size + 1)]
        if not opts:
            break
        g = rng.choice(opts)
        if isinstance(g, Pin):
            pins += 1
        bottom_up.append(g)
        size = g.output
    word = tuple(reversed(bottom_up))
    return StandardForm(word, random_braid(rng, pins, rng.randint(0, 4)))
