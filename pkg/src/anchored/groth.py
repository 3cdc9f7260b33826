"""Box objects of module tensor categories at the level of multiplicities.

Data consists of a fusion ring for ``C``, the simples of ``M`` with the
matrix of ``- ⊗ m``, and the matrix of ``Φ : C → M``.  The trace
``Tr : M → C`` is the transpose of ``Φ`` (Frobenius reciprocity on
simples), and the box objects are ``P[k] = Tr(m^{⊗k})``.

All arithmetic is on Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

__all__ = [
    "GrothError",
    "FusionRing",
    "ModuleTensorData",
    "AxiomReport",
    "PRESETS",
    "preset",
    "tlj_ring",
    "cyclic_ring",
    "chebyshev_phi",
    "chebyshev_matrices",
    "tensor_power_decomp",
    "box_table",
    "near_group_f",
    "near_group_f_closed",
    "e6_ab",
    "verify_axioms",
    "ring_power_decomp",
    "parse_fusion_data",
    "load_fusion_data",
    "format_box_table",
]

Matrix = tuple  # tuple of row tuples


class GrothError(ValueError):
    pass


def _matvec(A: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(a * x for a, x in zip(row, v) if a and x) for row in A)


def _matmul(A, B) -> Matrix:
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


def _transpose(A) -> Matrix:
    return tuple(zip(*A)) if A else ()


def _unit_vec(n: int, k: int) -> tuple[int, ...]:
    return tuple(1 if i == k else 0 for i in range(n))


def _identity(n: int) -> Matrix:
    return tuple(_unit_vec(n, k) for k in range(n))


@dataclass(frozen=True)
class FusionRing:
    """Structure constants ``a ⊗ b = Σ_c N[a][b][c] c``."""

    simples: tuple[str, ...]
    unit: int
    N: tuple

    @property
    def rank(self) -> int:
        return len(self.simples)

    def index(self, label: str) -> int:
        try:
            return self.simples.index(label)
        except ValueError:
            raise GrothError(f"unknown simple {label!r}") from None

    def fuse(self, a: int, b: int) -> tuple[int, ...]:
        return tuple(self.N[a][b])

    def left_matrix(self, a: int) -> Matrix:
        """Matrix of ``a ⊗ -``: column ``b`` is ``a ⊗ b``."""
        n = self.rank
        return tuple(tuple(self.N[a][b][c] for b in range(n)) for c in range(n))

    def right_matrix(self, a: int) -> Matrix:
        """Matrix of ``- ⊗ a``."""
        n = self.rank
        return tuple(tuple(self.N[b][a][c] for b in range(n)) for c in range(n))

    def multiply(self, u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
        out = [0] * self.rank
        for a, x in enumerate(u):
            if x:
                for b, y in enumerate(v):
                    if y:
                        for c, m in enumerate(self.N[a][b]):
                            if m:
                                out[c] += x * y * m
        return tuple(out)


@dataclass(frozen=True)
class ModuleTensorData:
    name: str
    ring: FusionRing
    module_simples: tuple[str, ...]
    unit_m: int
    action: Matrix  # action[y][x]: multiplicity of y in x ⊗ m
    phi: Matrix  # phi[x][c]: multiplicity of x in Φ(c)
    module_ring: FusionRing | None = None
    generator_action: Matrix | None = None  # Chebyshev generator acting on M, when used
    notes: str = ""

    def __post_init__(self):
        nm, nc = len(self.module_simples), self.ring.rank
        if len(self.action) != nm or any(len(r) != nm for r in self.action):
            raise GrothError("action matrix must be square of the size of M")
        if len(self.phi) != nm or any(len(r) != nc for r in self.phi):
            raise GrothError("phi must be |M| x |C|")
        if any(x < 0 for r in self.action for x in r) or any(x < 0 for r in self.phi for x in r):
            raise GrothError("negative multiplicity")
        if tuple(r[self.ring.unit] for r in self.phi) != _unit_vec(nm, self.unit_m):
            raise GrothError("Φ must send the unit of C to the unit of M")

    @property
    def trace(self) -> Matrix:
        return _transpose(self.phi)

    def module_index(self, label: str) -> int:
        try:
            return self.module_simples.index(label)
        except ValueError:
            raise GrothError(f"unknown module simple {label!r}") from None

    def phi_of(self, label: str) -> dict[str, int]:
        c = self.ring.index(label)
        return {x: r[c] for x, r in zip(self.module_simples, self.phi) if r[c]}

    def trace_of(self, label: str) -> dict[str, int]:
        x = self.module_index(label)
        return {c: m for c, m in zip(self.ring.simples, self.phi[x]) if m}


# -- constructions ----------------------------------------------------------------

def _ring_from_rule(labels: Sequence[str], unit: int, rule) -> FusionRing:
    n = len(labels)
    N = tuple(tuple(tuple(rule(a, b, c) for c in range(n)) for b in range(n)) for a in range(n))
    return FusionRing(tuple(labels), unit, N)


def cyclic_ring(n: int) -> FusionRing:
    if n < 1:
        raise GrothError("cyclic group order must be at least 1")
    return _ring_from_rule([str(a) for a in range(n)], 0, lambda a, b, c: int((a + b) % n == c))


def tlj_ring(n: int, labels: Sequence[str] | None = None) -> FusionRing:
    """Truncated Chebyshev ring ``A_n`` with simples ``1..n``."""
    if n < 1:
        raise GrothError("A_n needs n >= 1")

    def rule(a, b, c):
        a, b, c = a + 1, b + 1, c + 1
        lo, hi = abs(a - b) + 1, min(a + b - 1, 2 * n + 1 - a - b)
        return int(lo <= c <= hi and (c - lo) % 2 == 0)

    return _ring_from_rule(labels or [str(k) for k in range(1, n + 1)], 0, rule)


def _adjacency(labels: Sequence[str], edges: Sequence[tuple[str, str]]) -> Matrix:
    idx = {x: k for k, x in enumerate(labels)}
    A = [[0] * len(labels) for _ in labels]
    for a, b in edges:
        A[idx[a]][idx[b]] += 1
        A[idx[b]][idx[a]] += 1
    return tuple(map(tuple, A))


def chebyshev_phi(ring: FusionRing, generator: int, gen_action: Matrix, unit_m: int) -> Matrix:
    """Φ determined by ``Φ(g) = A·Φ(1)`` and ``Φ(c_{k+1}) = A·Φ(c_k) − Φ(c_{k−1})``
    along the chain ``c_{k+1} = g ⊗ c_k − c_{k−1}`` of simples of the ring."""
    nc, nm = ring.rank, len(gen_action)
    cols: dict[int, tuple[int, ...]] = {ring.unit: _unit_vec(nm, unit_m)}
    prev_c, cur_c = None, ring.unit
    prev_v, cur_v = None, cols[ring.unit]
    while True:
        nxt = list(ring.fuse(generator, cur_c))
        nv = list(_matvec(gen_action, cur_v))
        if prev_c is not None:
            nxt[prev_c] -= 1
            nv = [a - b for a, b in zip(nv, prev_v)]
        if not any(nxt):
            break
        if sorted(nxt) != [0] * (nc - 1) + [1]:
            raise GrothError("ring is not a Chebyshev chain for this generator")
        c = nxt.index(1)
        if c in cols:
            break
        if any(x < 0 for x in nv):
            raise GrothError(f"Chebyshev recursion went negative at {ring.simples[c]}")
        cols[c] = tuple(nv)
        prev_c, cur_c, prev_v, cur_v = cur_c, c, cur_v, tuple(nv)
    if len(cols) != nc:
        raise GrothError("generator does not reach every simple of the ring")
    return tuple(tuple(cols[c][x] for c in range(nc)) for x in range(nm))


def chebyshev_matrices(A: Matrix, count: int) -> list[Matrix]:
    """``M(1) = I``, ``M(2) = A``, ``M(k+1) = A M(k) − M(k−1)``."""
    n = len(A)
    out = [_identity(n), tuple(map(tuple, A))]
    while len(out) < count:
        nxt = _matmul(A, out[-1])
        out.append(tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(nxt, out[-2])))
    return out[:count]


def _module_data(name, ring, labels, unit_m, action, phi, **kw) -> ModuleTensorData:
    return ModuleTensorData(name, ring, tuple(labels), unit_m, action, phi, **kw)


def _group(n: int) -> ModuleTensorData:
    ring = cyclic_ring(n)
    m = 1 % n
    action = ring.right_matrix(m)
    return _module_data(f"group:{n}", ring, ring.simples, 0, action, _identity(n), module_ring=ring,
                        notes="m is the generator 1 of Z/N")


def _tlj(n: int) -> ModuleTensorData:
    ring = tlj_ring(n)
    action = ring.right_matrix(1) if n >= 2 else ((0,),)
    return _module_data(f"tlj:{n}", ring, ring.simples, 0, action, _identity(n), module_ring=ring,
                        generator_action=action)


def _pointed_plus_m(n: int, mm_self: int) -> FusionRing:
    """Z/n together with one extra simple ``m``: a⊗m = m⊗a = m and
    m⊗m = mm_self·m ⊕ (sum of all group elements)."""
    labels = [str(a) for a in range(n)] + ["m"]
    M = n

    def rule(a, b, c):
        if a < M and b < M:
            return int(c < M and (a + b) % n == c)
        if a == M and b == M:
            return mm_self if c == M else 1
        return int(c == M)

    return _ring_from_rule(labels, 0, rule)


def _ty(n: int) -> ModuleTensorData:
    if n < 1:
        raise GrothError("ty:N needs N >= 1")
    mring = _pointed_plus_m(n, 0)
    ring = cyclic_ring(n)
    action = mring.right_matrix(n)
    phi = tuple(tuple(int(x == c) for c in range(n)) for x in range(n + 1))
    return _module_data(f"ty:{n}", ring, mring.simples, 0, action, phi, module_ring=mring)


def _ng(n: int) -> ModuleTensorData:
    if n < 1:
        raise GrothError("ng:N needs N >= 1")
    mring = _pointed_plus_m(n, n)
    ring = cyclic_ring(n)
    action = mring.right_matrix(n)
    phi = tuple(tuple(int(x == c) for c in range(n)) for x in range(n + 1))
    return _module_data(f"ng:{n}", ring, mring.simples, 0, action, phi, module_ring=mring)


def _d2n(n: int) -> ModuleTensorData:
    if n < 2:
        raise GrothError("d2n:n needs n >= 2")
    ring = tlj_ring(4 * n - 3)
    labels = [str(k) for k in range(1, 2 * n - 1)] + [f"{2 * n - 1}", f"{2 * n - 1}'"]
    edges = [(str(k), str(k + 1)) for k in range(1, 2 * n - 2)]
    edges += [(str(2 * n - 2), labels[-2]), (str(2 * n - 2), labels[-1])]
    A = _adjacency(labels, edges)
    phi = chebyshev_phi(ring, 1, A, 0)
    return _module_data(f"d2n:{n}", ring, labels, 0, A, phi, generator_action=A)


def _d4z() -> ModuleTensorData:
    a5 = tlj_ring(5)
    zq = ["1", "3", "3'"]
    labels = [f"({p},{q})" for p in range(1, 6) for q in zq]

    def rule(x, y, z):
        (p1, q1), (p2, q2), (p3, q3) = divmod(x, 3), divmod(y, 3), divmod(z, 3)
        return a5.N[p1][p2][p3] * int((q1 + q2) % 3 == q3)

    ring = _ring_from_rule(labels, 0, rule)
    mlabels = ["1", "2", "3", "3'"]
    A = _adjacency(mlabels, [("1", "2"), ("2", "3"), ("2", "3'")])
    table = {1: {"1": ["1"], "3": ["3"], "3'": ["3'"]},
             2: {q: ["2"] for q in zq},
             3: {"1": ["3", "3'"], "3": ["1", "3'"], "3'": ["1", "3"]},
             4: {q: ["2"] for q in zq},
             5: {"1": ["1"], "3": ["3"], "3'": ["3'"]}}
    phi = [[0] * len(labels) for _ in mlabels]
    for c, lab in enumerate(labels):
        p, q = divmod(c, 3)
        for x in table[p + 1][zq[q]]:
            phi[mlabels.index(x)][c] += 1
    return _module_data("d4z", ring, mlabels, 0, A, tuple(map(tuple, phi)),
                        notes="C is A_5 with Z/3 fusion on the second factor")


_E6_LABELS = ("1", "m", "x", "sigma", "psim", "psi")
_E6_EDGES = (("1", "m"), ("m", "x"), ("x", "psim"), ("psim", "psi"), ("x", "sigma"))


def _e6() -> ModuleTensorData:
    ring = tlj_ring(11)
    A = _adjacency(_E6_LABELS, _E6_EDGES)
    phi = chebyshev_phi(ring, 1, A, 0)
    return _module_data("e6", ring, _E6_LABELS, 0, A, phi, generator_action=A)


def _e6d() -> ModuleTensorData:
    ring = tlj_ring(3, ["1", "sigma", "psi"])
    A = _adjacency(_E6_LABELS, _E6_EDGES)
    phi = tuple(tuple(int(x == c) for c in ring.simples) for x in _E6_LABELS)
    return _module_data("e6d", ring, _E6_LABELS, 0, A, phi)


E7X_LABELS = ("x", "a", "b", "n", "y", "p", "z", "t", "u", "d", "c", "v", "s", "w", "q", "r", "m")
E7X_BLUE = (("x", "a"), ("a", "b"), ("b", "n"), ("n", "y"), ("y", "p"), ("p", "z"), ("z", "t"),
            ("t", "u"), ("t", "d"), ("c", "v"), ("v", "s"), ("s", "w"), ("w", "q"), ("q", "r"),
            ("w", "m"))
E7X_ORANGE = (("x", "c"), ("c", "d"), ("d", "m"), ("m", "y"), ("y", "q"), ("q", "z"), ("z", "s"),
              ("s", "u"), ("s", "b"), ("a", "v"), ("v", "t"), ("t", "w"), ("w", "p"), ("p", "r"),
              ("w", "n"))


def _e7x() -> ModuleTensorData:
    ring = tlj_ring(17)
    blue = _adjacency(E7X_LABELS, E7X_BLUE)
    orange = _adjacency(E7X_LABELS, E7X_ORANGE)
    phi = chebyshev_phi(ring, 1, blue, 0)
    return _module_data("e7x", ring, E7X_LABELS, 0, orange, phi, generator_action=blue,
                        notes="vertex c is the object m, vertex a is the strand of C")


PRESETS = ("group:N", "tlj:n", "ty:N", "ng:N", "d2n:n", "d4z", "e6", "e6d", "e7x")

_FIXED = {"d4z": _d4z, "e6": _e6, "e6d": _e6d, "e7x": _e7x}
_FAMILIES = {"group": _group, "tlj": _tlj, "ty": _ty, "ng": _ng, "d2n": _d2n}


def preset(name: str) -> ModuleTensorData:
    if name in _FIXED:
        return _FIXED[name]()
    fam, sep, arg = name.partition(":")
    if fam in _FAMILIES and sep:
        try:
            k = int(arg)
        except ValueError:
            raise GrothError(f"preset parameter must be an integer: {name!r}") from None
        if k < 1:
            raise GrothError(f"preset parameter out of range: {name!r}")
        return _FAMILIES[fam](k)
    raise GrothError(f"unknown preset {name!r}; known: {', '.join(PRESETS)}")


# -- computations -------------------------------------------------------------------

def tensor_power_decomp(d: ModuleTensorData, k: int) -> tuple[int, ...]:
    if k < 0:
        raise GrothError("k must be non-negative")
    v = _unit_vec(len(d.module_simples), d.unit_m)
    for _ in range(k):
        v = _matvec(d.action, v)
    return v


def box_table(d: ModuleTensorData, kmax: int) -> list[tuple[int, ...]]:
    if kmax < 0:
        raise GrothError("kmax must be non-negative")
    out = []
    v = _unit_vec(len(d.module_simples), d.unit_m)
    tr = d.trace
    for k in range(kmax + 1):
        out.append(_matvec(tr, v))
        v = _matvec(d.action, v)
    return out


def ring_power_decomp(ring: FusionRing, start: Sequence[int], generator: int, k: int) -> tuple[int, ...]:
    """``start ⊗ g^{⊗k}`` computed inside the ring."""
    v = tuple(start)
    R = ring.right_matrix(generator)
    for _ in range(k):
        v = _matvec(R, v)
    return v


def near_group_f(N: int, k: int) -> int:
    if k < 1:
        raise GrothError("k must be at least 1")
    a, b = 0, 1  # f(1), f(2)
    if k == 1:
        return a
    for _ in range(k - 2):
        a, b = b, N * (b + a)
    return b


def near_group_f_closed(N: int, k: int) -> int:
    if k < 1:
        raise GrothError("k must be at least 1")
    return sum(comb(k - i, i - 2) * N ** (k - i) for i in range(2, k // 2 + 2))


def e6_ab(k: int) -> tuple[int, int]:
    if k < 0:
        raise GrothError("k must be non-negative")
    a, b = 1, 0
    for _ in range(k):
        a = a + b
        b = b + 2 * a - 1
    return a, b


@dataclass
class AxiomReport:
    unit: bool
    associativity: bool
    unit_witness: tuple | None = None
    assoc_witness: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.unit and self.associativity

    def lines(self) -> list[str]:
        out = [f"unit\t{'pass' if self.unit else 'fail'}"
               + (f"\t{self.unit_witness}" if self.unit_witness else "")]
        out.append(f"associativity\t{'pass' if self.associativity else 'fail'}"
                   + (f"\t{self.assoc_witness}" if self.assoc_witness else ""))
        return out


def verify_axioms(r: FusionRing) -> AxiomReport:
    n, u = r.rank, r.unit
    rep = AxiomReport(True, True)
    for b in range(n):
        for c in range(n):
            want = int(b == c)
            if r.N[u][b][c] != want or r.N[b][u][c] != want:
                rep.unit = False
                rep.unit_witness = (r.simples[b], r.simples[c])
                break
        if not rep.unit:
            break
    for a in range(n):
        for b in range(n):
            ab = r.N[a][b]
            for c in range(n):
                bc = r.N[b][c]
                for d in range(n):
                    lhs = sum(ab[e] * r.N[e][c][d] for e in range(n) if ab[e])
                    rhs = sum(bc[f] * r.N[a][f][d] for f in range(n) if bc[f])
                    if lhs != rhs:
                        rep.associativity = False
                        rep.assoc_witness = tuple(r.simples[x] for x in (a, b, c, d))
                        return rep
    return rep


# -- text formats -------------------------------------------------------------------

def _parse_terms(tokens: Sequence[str], where: str) -> list[tuple[str, int]]:
    out = []
    for t in tokens:
        label, sep, mult = t.rpartition(":")
        if not sep:
            label, mult = t, "1"
        try:
            m = int(mult)
        except ValueError:
            raise GrothError(f"{where}: bad multiplicity in {t!r}") from None
        if m < 0:
            raise GrothError(f"{where}: negative multiplicity in {t!r}")
        out.append((label, m))
    return out


def parse_fusion_data(text: str, name: str = "file") -> ModuleTensorData:
    """Read the sectioned fusion-data format.

    ::

        [ring]
        simples 1 2 3
        unit 1
        fuse 2 2 -> 1 3        # multiplicities as label:count, default 1
        [module]
        simples a b c
        unit a
        act a -> b             # decomposition of a ⊗ m
        phi 2 -> b             # or: phi-recursion chebyshev 2

    Products with the unit are filled in automatically, and a missing
    ``fuse b a`` defaults to ``fuse a b``.
    """
    section = None
    ring_simples = mod_simples = None
    ring_unit = mod_unit = None
    fuse: dict[tuple[str, str], list] = {}
    act: dict[str, list] = {}
    phi: dict[str, list] = {}
    cheb = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"line {lineno}"
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section not in ("ring", "module"):
                raise GrothError(f"{where}: unknown section {section!r}")
            continue
        if section is None:
            raise GrothError(f"{where}: content before a section header")
        head, *rest = line.split()
        lhs, arrow, rhs = line.partition("->")
        if head == "simples":
            if section == "ring":
                ring_simples = tuple(rest)
            else:
                mod_simples = tuple(rest)
        elif head == "unit" and len(rest) == 1:
            if section == "ring":
                ring_unit = rest[0]
            else:
                mod_unit = rest[0]
        elif head == "fuse" and section == "ring" and arrow:
            ab = lhs.split()[1:]
            if len(ab) != 2:
                raise GrothError(f"{where}: fuse needs two labels")
            fuse[(ab[0], ab[1])] = _parse_terms(rhs.split(), where)
        elif head == "act" and section == "module" and arrow:
            x = lhs.split()[1:]
            if len(x) != 1:
                raise GrothError(f"{where}: act needs one label")
            act[x[0]] = _parse_terms(rhs.split(), where)
        elif head == "phi" and section == "module" and arrow:
            c = lhs.split()[1:]
            if len(c) != 1:
                raise GrothError(f"{where}: phi needs one label")
            phi[c[0]] = _parse_terms(rhs.split(), where)
        elif head == "phi-recursion" and section == "module":
            if len(rest) != 2 or rest[0] != "chebyshev":
                raise GrothError(f"{where}: expected 'phi-recursion chebyshev <label>'")
            cheb = rest[1]
        else:
            raise GrothError(f"{where}: cannot parse {raw.strip()!r}")
    if not ring_simples or ring_unit is None:
        raise GrothError("[ring] needs simples and unit")
    if not mod_simples or mod_unit is None:
        raise GrothError("[module] needs simples and unit")
    ri = {x: k for k, x in enumerate(ring_simples)}
    mi = {x: k for k, x in enumerate(mod_simples)}
    if ring_unit not in ri or mod_unit not in mi:
        raise GrothError("unit is not among the simples")

    def look(table, label, kind):
        if label not in table:
            raise GrothError(f"unknown {kind} simple {label!r}")
        return table[label]

    n = len(ring_simples)
    N = [[[0] * n for _ in range(n)] for _ in range(n)]
    for a in range(n):
        N[ri[ring_unit]][a][a] = 1
        N[a][ri[ring_unit]][a] = 1
    filled = set()
    for (a, b), terms in fuse.items():
        ia, ib = look(ri, a, "ring"), look(ri, b, "ring")
        N[ia][ib] = [0] * n
        for c, m in terms:
            N[ia][ib][look(ri, c, "ring")] += m
        filled.add((ia, ib))
    for (ia, ib) in list(filled):
        if (ib, ia) not in filled:
            N[ib][ia] = list(N[ia][ib])
    ring = FusionRing(ring_simples, ri[ring_unit], tuple(tuple(map(tuple, x)) for x in N))
    nm = len(mod_simples)
    A = [[0] * nm for _ in range(nm)]
    for x, terms in act.items():
        ix = look(mi, x, "module")
        for y, m in terms:
            A[look(mi, y, "module")][ix] += m
    A = tuple(map(tuple, A))
    if cheb is not None:
        P = chebyshev_phi(ring, look(ri, cheb, "ring"), A, mi[mod_unit])
        gen = A
    else:
        P = [[0] * n for _ in range(nm)]
        P[mi[mod_unit]][ri[ring_unit]] = 1
        for c, terms in phi.items():
            ic = look(ri, c, "ring")
            for x in range(nm):
                P[x][ic] = 0
            for x, m in terms:
                P[look(mi, x, "module")][ic] += m
        P = tuple(map(tuple, P))
        gen = None
    return ModuleTensorData(name, ring, mod_simples, mi[mod_unit], A, P, generator_action=gen)


def load_fusion_data(path) -> ModuleTensorData:
    with open(path, encoding="utf-8") as fh:
        return parse_fusion_data(fh.read(), name=str(path))


def format_box_table(d: ModuleTensorData, kmax: int) -> str:
    lines = ["# k\t" + "\t".join(d.ring.simples)]
    for k, row in enumerate(box_table(d, kmax)):
        lines.append(f"{k}\t" + "\t".join(map(str, row)))
    return "\n".join(lines) + "\n"
