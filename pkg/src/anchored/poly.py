"""Integer polynomials in the loop parameter ``d``.

A tiny immutable type is enough here: coefficients stay exact, equality is
structural and the text form is stable for golden files.
"""

from __future__ import annotations

import re
from typing import Iterable, Union

__all__ = ["Poly", "DELTA", "ONE", "ZERO"]

_TERM = re.compile(r"^([+-]?\d*)(\*?d(\^(\d+))?)?$")


class Poly:
    """Polynomial ``c0 + c1*d + c2*d^2 + ...`` with integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def const(cls, c: int) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, power: int, c: int = 1) -> "Poly":
        return cls((0,) * power + (c,))

    @staticmethod
    def coerce(x: Union["Poly", int]) -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, int):
            return Poly((x,))
        raise TypeError(f"cannot treat {x!r} as a polynomial")

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other):
        other = Poly.coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly(x + (b[k] if k < len(b) else 0) for k, x in enumerate(a))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-x for x in self.coeffs)

    def __sub__(self, other):
        return self + (-Poly.coerce(other))

    def __rsub__(self, other):
        return Poly.coerce(other) - self

    def __mul__(self, other):
        other = Poly.coerce(other)
        if not self.coeffs or not other.coeffs:
            return ZERO
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        out = ONE
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly((other,))
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __call__(self, value):
        """Evaluate at a number (Horner)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                body = str(c)
            else:
                mono = "d" if k == 1 else f"d^{k}"
                if c == 1:
                    body = mono
                elif c == -1:
                    body = "-" + mono
                else:
                    body = f"{c}*{mono}"
            if parts and not body.startswith("-"):
                body = "+" + body
            parts.append(body)
        return "".join(parts)

    def __repr__(self):
        return f"Poly({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "Poly":
        """Inverse of ``str``; accepts ``3``, ``-d``, ``1+2*d^2`` and so on."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial")
        terms = re.findall(r"[+-]?[^+-]+", s)
        if "".join(terms) != s:
            raise ValueError(f"malformed polynomial {text!r}")
        out = ZERO
        for t in terms:
            m = _TERM.match(t)
            if not m:
                raise ValueError(f"malformed term {t!r} in {text!r}")
            cs, var, _, pw = m.groups()
            if var is None:
                if cs in ("", "+", "-"):
                    raise ValueError(f"malformed term {t!r}")
                out = out + int(cs)
                continue
            if var.startswith("*") and cs in ("", "+", "-"):
                raise ValueError(f"malformed term {t!r}")
            c = -1 if cs == "-" else 1 if cs in ("", "+") else int(cs)
            out = out + Poly.monomial(int(pw) if pw else 1, c)
        return out


ZERO = Poly()
ONE = Poly((1,))
DELTA = Poly((0, 1))
