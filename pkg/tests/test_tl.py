import random

import pytest

from anchored import tl
from anchored.checker import rotation_chain
from anchored.poly import DELTA, ONE, Poly
from anchored.random_tangles import random_braid, random_expr
from anchored.ribbon_braid import compose_at, from_word, identity
from anchored.tangle import Act, Cap, Comp, Cup, Gen, Id, Pin, StandardForm, Unit, infer_type, normalize
from oracles import brute_force_noncrossing, catalan, closed_chain, delta_power, loop_oracle


def one_based(p):
    return tuple(q + 1 for q in p)


class TestBasis:
    @pytest.mark.parametrize("n", range(0, 11))
    def test_matches_brute_force(self, n):
        assert [one_based(p) for p in tl.enumerate_basis(n)] == brute_force_noncrossing(n)

    @pytest.mark.parametrize("n, size", [(0, 1), (2, 1), (3, 0), (4, 2), (6, 5), (8, 14), (12, 132)])
    def test_box_dim(self, n, size):
        assert tl.box_dim(n) == size
        assert len(tl.enumerate_basis(n)) == size
        if n % 2 == 0:
            assert size == catalan(n // 2)

    def test_empty_pairing(self):
        assert tl.enumerate_basis(0) == ((),)

    def test_noncrossing_predicate(self):
        assert tl.is_noncrossing((3, 2, 1, 0))
        assert not tl.is_noncrossing((2, 3, 0, 1))


class TestGenerators:
    def test_unit(self):
        assert tl.eval_generator(Unit())(()) == tl.TLElement.basis(())

    def test_closed_loop(self):
        m = tl.eval_expr(Comp(Gen(Cap(0, 0)), 1, Gen(Cup(0, 0))))
        assert m.matrix() == [[DELTA]]

    def test_zigzag_is_identity(self):
        m = tl.eval_expr(Comp(Gen(Cap(0, 2)), 1, Gen(Cup(1, 2))))
        assert m == tl.eval_generator(Id(2))

    @pytest.mark.parametrize("n", [0, 2, 4, 6])
    def test_identity(self, n):
        m = tl.eval_generator(Id(n))
        size = tl.box_dim(n)
        assert m.matrix() == [[ONE if r == c else Poly(()) for c in range(size)] for r in range(size)]
        assert tl.eval_expr(Gen(Id(n))) == tl.eval_expr(normalize(Gen(Id(n))))

    def test_pin_shuffle_by_hand(self):
        cup = (1, 0)
        out = tl.eval_generator(Pin(0, 2, 2))((cup, cup))
        assert out == tl.TLElement.basis((1, 0, 3, 2))
        # second argument goes to positions 2,3; first argument wraps around it
        out = tl.eval_generator(Pin(1, 2, 2))((cup, cup))
        assert out == tl.TLElement.basis((3, 2, 1, 0))

    def test_pin_nested_shuffle(self):
        # x = 1-2 3-4 in P[4], y = 1-2 in P[2], inserted after point 2
        out = tl.eval_generator(Pin(2, 2, 4))(((1, 0, 3, 2), (1, 0)))
        assert one_based(next(iter(out.terms))) == (2, 1, 4, 3, 6, 5)

    def test_cap_reconnects(self):
        # cap on points 2,3 of 1-4,2-3 closes a loop; on 1,2 it reconnects
        p = (3, 2, 1, 0)
        assert tl.eval_generator(Cap(1, 2))((p,)) == tl.TLElement.basis((1, 0), DELTA)
        assert tl.eval_generator(Cap(0, 2))((p,)) == tl.TLElement.basis((1, 0))


class TestLoopOracle:
    @pytest.mark.parametrize("seed", range(60))
    def test_cap_cup_chains(self, seed):
        rng = random.Random(seed)
        word = closed_chain(rng, rng.randint(1, 12))
        m = tl.eval_expr(StandardForm(word, identity(0)))
        pairing, loops = loop_oracle(word)
        assert m(()) == tl.TLElement.basis(tuple(q - 1 for q in pairing), delta_power(loops))

    @pytest.mark.parametrize("seed", range(60))
    def test_closed_expressions(self, seed):
        rng = random.Random(500 + seed)
        e = None
        while e is None or infer_type(e).inputs:
            e = random_expr(rng, 10, output=0 if rng.random() < 0.5 else None)
            if infer_type(e).inputs:
                # close the remaining inputs with cup chains
                t = infer_type(e)
                for k in reversed(range(len(t.inputs))):
                    n = t.inputs[k]
                    if n % 2:
                        e = None
                        break
                    fill = Gen(Unit())
                    for q in range(n // 2):
                        fill = Comp(Gen(Cup(rng.randint(0, 2 * q), 2 * q)), 1, fill)
                    e = Comp(e, k + 1, fill)
        sf = normalize(e)
        assert all(isinstance(g, (Cap, Cup, Unit)) for g in sf.word)
        pairing, loops = loop_oracle(sf.word)
        assert tl.eval_expr(e)(()) == tl.TLElement.basis(tuple(q - 1 for q in pairing), delta_power(loops))


class TestExpressions:
    def test_full_rotation_is_identity(self):
        m = tl.eval_expr(rotation_chain(4))
        assert m.domain == (4,) and m.codomain == 4
        assert m.matrix() == [[ONE, Poly(())], [Poly(()), ONE]]

    @pytest.mark.parametrize("n", [0, 1, 2, 3, 5, 6])
    def test_full_rotation_identity_other_sizes(self, n):
        assert tl.eval_expr(rotation_chain(n)) == tl.eval_generator(Id(n))

    def test_braid_permutes_factors(self):
        body = Gen(Pin(0, 2, 2))
        swapped = tl.eval_expr(Act(body, from_word(2, ["e 1"])))
        plain = tl.eval_expr(body)
        a, b = (1, 0), (1, 0)
        x, y = (3, 2, 1, 0), (1, 0)
        assert swapped((a, b)) == plain((b, a))
        # input sizes swap; the value is the body applied to the swapped pair
        swapped = tl.eval_expr(Act(Gen(Pin(0, 2, 4)), from_word(2, ["e 1"])))
        assert swapped.domain == (2, 4)
        assert swapped((y, x)) == tl.eval_generator(Pin(0, 2, 4))((x, y))
        assert plain((a, b)) == tl.TLElement.basis((1, 0, 3, 2))

    @pytest.mark.parametrize("seed", range(40))
    def test_composition_law(self, seed):
        rng = random.Random(seed)
        a = random_expr(rng, 5)
        t = infer_type(a)
        if not t.inputs:
            return
        i = rng.randint(1, len(t.inputs))
        b = random_expr(rng, 5, output=t.inputs[i - 1])
        assert tl.eval_expr(Comp(a, i, b)) == tl.eval_expr(a).compose_at(i, tl.eval_expr(b))

    @pytest.mark.parametrize("seed", range(30))
    def test_equivariance(self, seed):
        rng = random.Random(seed)
        r, s = rng.randint(1, 3), rng.randint(0, 3)
        sigma, tau = random_braid(rng, r, 5), random_braid(rng, s, 5)
        i = rng.randint(1, r)
        args = tuple(rng.choice(tl.enumerate_basis(rng.choice((0, 2)))) for _ in range(r + s - 1))
        # applying the cabled braid equals permuting inside the slot, then outside
        inner = tl.permute_factors(tau, args[i - 1:i - 1 + s])
        got = tl.permute_factors(compose_at(sigma, i, tau), args)
        outer_images = sigma.permutation.images
        blocks = [(x,) for x in args[:i - 1]] + [inner] + [(x,) for x in args[i - 1 + s:]]
        moved = [None] * r
        for k in range(r):
            moved[outer_images[k] - 1] = blocks[k]
        assert got == tuple(x for blk in moved for x in blk)


class TestFormats:
    def test_matrix_tsv(self):
        text = tl.format_matrix(tl.eval_expr(Comp(Gen(Cap(0, 0)), 1, Gen(Cup(0, 0)))))
        assert text == "# domain\t0\n# codomain\t0\nd\n"

    def test_element_round_trip(self):
        v = tl.TLElement.basis((1, 0, 3, 2), Poly((1, 1))) + tl.TLElement.basis((3, 2, 1, 0), Poly((0, 0, -2)))
        text = tl.format_element(v)
        assert "4: 2 1 4 3 = 1+d\n" in text
        assert tl.parse_elements(text) == [v]

    def test_apply(self):
        vectors = tl.parse_elements("2: 2 1 = 1\n\n2: 2 1 = d\n")
        out = tl.eval_generator(Pin(0, 2, 2)).apply(vectors)
        assert tl.format_element(out) == "4: 2 1 4 3 = d\n"

    @pytest.mark.parametrize("bad", ["4: 2 1 = 1\n", "4: 3 4 1 2 = 1\n", "x\n", "2: 2 1 = q\n"])
    def test_parse_rejects(self, bad):
        with pytest.raises(ValueError):
            tl.parse_elements(bad)
