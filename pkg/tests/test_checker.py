from math import comb

import pytest

from anchored import checker, tl
from anchored.checker import (
    BackendError, RelationInstance, Report, check_equivariance, check_instances, check_relations,
    enumerate_instances, get_backend,
)
from anchored.poly import DELTA, ONE
from anchored.ribbon_braid import compose_at, from_word
from anchored.tangle import Cap, Comp, Cup, Gen, Id, Pin, Unit, infer_type


def tri(n):
    return (n + 1) * (n + 2) // 2


def a5_count(nmax):
    total = 0
    for n in range(nmax + 1):
        for k in range(nmax + 1):
            out = n + k - 2
            if out < 0 or out > nmax:
                continue
            below = n if k >= 1 else max(n - 1, 0)  # i+1 = j
            beside = n if k >= 1 else max(n - 1, 0)  # i+1 = j+k
            total += (out + 1) * (n + 1) - below - beside + (below if k == 0 else 0)
    return total


# closed-form counts of legal index tuples, with every arity bounded by nmax
CLOSED = {
    "A1": lambda m: (m + 1) + sum(n + 1 for n in range(m + 1)),
    "A2": lambda m: sum(tri(n) for n in range(m - 3)),
    "A3": lambda m: sum(tri(n) for n in range(m - 3)),
    "A4": lambda m: sum((n + 1) ** 2 for n in range(m + 1)),
    "C4": lambda m: sum((n + 1) ** 2 - (n + 1) for n in range(m + 1)),
    "A5": a5_count,
    "A6": lambda m: sum((n + k + 1) * (n + 1) + 2 * (n + 1)
                        for n in range(m + 1) for k in range(m + 1) if n + k + 2 <= m),
    "A7": lambda m: sum((n + 1) * comb(m - n + 3, 3) for n in range(m + 1)),
    "C8": lambda m: sum(tri(n) * comb(m - n + 2, 2) for n in range(m + 1)),
    "C9": lambda m: m + 1,
}


@pytest.mark.parametrize("nmax", range(0, 6))
@pytest.mark.parametrize("family", checker.RELATION_FAMILIES)
def test_instance_counts(family, nmax):
    key = family if family in CLOSED else "A" + family[1:]
    assert len(enumerate_instances(family, nmax)) == CLOSED[key](nmax)


@pytest.mark.parametrize("family", checker.RELATION_FAMILIES)
def test_arities_bounded(family):
    for inst in enumerate_instances(family, 3):
        t = infer_type(inst.left)
        assert max(t.inputs + (t.output,)) <= 3
        assert t == infer_type(inst.right)


class TestEnumerate:
    def test_a4_closed_loop(self):
        inst = enumerate_instances("A4", 2)[0]
        assert dict(inst.params)["n"] == 0 and inst.scalar == DELTA
        assert inst.left == Comp(Gen(Cap(0, 0)), 1, Gen(Cup(0, 0)))
        assert inst.right == Gen(Id(0))

    def test_c1(self):
        insts = [i for i in enumerate_instances("C1", 3) if dict(i.params)["form"] == "unit-first"]
        assert [i.left for i in insts] == [Comp(Gen(Pin(0, j, 0)), 1, Gen(Unit())) for j in range(4)]
        assert [i.right for i in insts] == [Gen(Id(j)) for j in range(4)]

    def test_a2_small_is_empty(self):
        assert enumerate_instances("A2", 1) == []

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            enumerate_instances("A9", 3)
        with pytest.raises(ValueError):
            enumerate_instances("Z1", 3)

    def test_deterministic(self):
        a = [i.param_text() for i in enumerate_instances("M1", 4)]
        b = [i.param_text() for i in enumerate_instances("M1", 4)]
        assert a == b and a


class TestCheck:
    @pytest.mark.parametrize("family", ["C8", "C9"])
    def test_braided_families(self, family):
        rep = check_relations("tl", family, 3)
        assert rep.ok and rep.results

    def test_c9_sides_are_identity(self):
        for inst in enumerate_instances("C9", 3):
            n = dict(inst.params)["n"]
            assert tl.eval_expr(inst.left) == tl.eval_generator(Id(n)) == tl.eval_expr(inst.right)

    @pytest.mark.parametrize("family", checker.MOVE_FAMILIES)
    def test_move_families(self, family):
        rep = check_relations("tl", family, 4)
        assert rep.ok and rep.results

    def test_failure_carries_counterexample(self):
        bogus = RelationInstance("A4", (("n", 0),), Comp(Gen(Cap(0, 0)), 1, Gen(Cup(0, 0))), Gen(Id(0)), ONE)
        rep = check_instances("tl", [bogus])
        assert not rep.ok
        (bad,) = rep.failures
        assert bad.counterexample == ("# domain\t0\n# codomain\t0\nd\n", "# domain\t0\n# codomain\t0\n1\n")
        assert rep.summary() == "0/1 passed"
        assert "\tfail" in rep.to_tsv()

    def test_tsv_is_deterministic(self):
        a = check_relations("tl", "A5", 3).to_tsv()
        b = check_relations("tl", "A5", 3).to_tsv()
        assert a == b
        assert a.splitlines()[0] == "family\tparams\tverdict"

    def test_grothendieck_backend_is_refused(self):
        with pytest.raises(BackendError):
            get_backend("groth")
        with pytest.raises(BackendError):
            check_relations("groth", "A1", 2)


class TestEquivariance:
    def test_identity_braids(self):
        sigma, tau = from_word(2, []), from_word(2, [])
        args = ((1, 0), (), (3, 2, 1, 0))
        assert tl.permute_factors(compose_at(sigma, 1, tau), args) == args

    def test_crossing_into_crossing(self):
        e = from_word(2, ["e 1"])
        c = compose_at(e, 1, e)
        assert c.permutation.images == (3, 2, 1)
        x, y, z = (1, 0), (), (3, 2, 1, 0)
        # tau swaps x and y inside the block, sigma moves the block past z
        assert tl.permute_factors(c, (x, y, z)) == (z, y, x)

    def test_seeded_trials(self):
        rep = check_equivariance("tl", 4, 100, 0)
        assert rep.ok and len(rep.results) == 100
        assert rep.to_tsv() == check_equivariance("tl", 4, 100, 0).to_tsv()

    def test_bad_n(self):
        with pytest.raises(ValueError):
            check_equivariance("tl", 0, 3, 0)


def test_report_extend():
    r = Report()
    r.extend(check_relations("tl", "C9", 1))
    r.extend(check_relations("tl", "C2", 4))
    assert r.ok and r.summary() == f"{len(r.results)}/{len(r.results)} passed"
