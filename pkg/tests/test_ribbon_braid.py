"""Ribbon braid arithmetic.

The Burau representation at a rational parameter gives an independent
necessary condition for braid equality, used as an oracle below.
"""

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from anchored.ribbon_braid import (
    BraidError, Permutation, RibbonBraid, compose_at, equals, from_word, full_twist,
    identity, multiply, parse_braid, permutation,
)


def burau(b: RibbonBraid, t=Fraction(2)):
    """Unreduced Burau matrix of the underlying braid."""
    n = b.strands
    M = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for k, s in b.crossings:
        G = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        a = k - 1
        if s > 0:
            G[a][a], G[a][a + 1], G[a + 1][a], G[a + 1][a + 1] = 1 - t, t, Fraction(1), Fraction(0)
        else:
            G[a][a], G[a][a + 1], G[a + 1][a], G[a + 1][a + 1] = Fraction(0), Fraction(1), 1 / t, 1 - 1 / t
        M = [[sum(M[i][l] * G[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
    return M


def words(n, max_len=12):
    letters = [("e", k) for k in range(1, n)] + [("e'", k) for k in range(1, n)]
    letters += [("t", k) for k in range(1, n + 1)] + [("t'", k) for k in range(1, n + 1)]
    if not letters:
        return st.just([])
    return st.lists(st.sampled_from(letters), max_size=max_len)


class TestFromWord:
    def test_single_crossing(self):
        b = from_word(2, ["e 1"])
        assert b.crossings == ((1, 1),)
        assert b.twists == (0, 0)
        assert permutation(b).images == (2, 1)

    def test_twists_on_one_strand_add(self):
        b = from_word(1, ["t 1", "t 1"])
        assert b.crossings == () and b.twists == (2,)

    def test_twist_slides_through_crossing(self):
        assert equals(from_word(2, ["e 1", "t 1"]), from_word(2, ["t 2", "e 1"]))

    @pytest.mark.parametrize("n, tok", [(2, "e 2"), (2, "e 0"), (2, "t 3"), (1, "e 1"), (3, "x 1")])
    def test_out_of_range(self, n, tok):
        with pytest.raises(BraidError):
            from_word(n, [tok])

    def test_tuple_tokens(self):
        assert from_word(3, [("e", 2), ("t'", 1)]) == from_word(3, ["e 2", "t' 1"])


class TestEquality:
    def test_inverse_pair(self):
        assert from_word(2, ["e 1", "e' 1"]) == identity(2)
        assert multiply(from_word(2, ["e 1"]), from_word(2, ["e' 1"])).is_identity()

    def test_crossing_is_not_its_inverse(self):
        a, b = from_word(2, ["e 1"]), from_word(2, ["e' 1"])
        assert not equals(a, b)
        # by hand: e_1 sends x1 to x1 x2 x1^-1, its inverse sends x1 to x2
        assert a.artin[0] == (1, 2, -1)
        assert b.artin[0] == (2,)

    def test_strand_mismatch(self):
        with pytest.raises(BraidError):
            equals(identity(2), identity(3))
        with pytest.raises(BraidError):
            multiply(identity(2), identity(3))

    @pytest.mark.parametrize("n", range(1, 7))
    def test_defining_relations(self, n):
        E = lambda *w: from_word(n, list(w))
        for i in range(1, n - 1):
            assert E(f"e {i}", f"e {i+1}", f"e {i}") == E(f"e {i+1}", f"e {i}", f"e {i+1}")
        for i, j in itertools.product(range(1, n), repeat=2):
            if abs(i - j) > 1:
                assert E(f"e {i}", f"e {j}") == E(f"e {j}", f"e {i}")
        for i in range(1, n):
            assert E(f"e {i}", f"t {i}") == E(f"t {i+1}", f"e {i}")
            assert E(f"e {i}", f"t {i+1}") == E(f"t {i}", f"e {i}")
            for j in range(1, n + 1):
                if j not in (i, i + 1):
                    assert E(f"e {i}", f"t {j}") == E(f"t {j}", f"e {i}")
        for i, j in itertools.product(range(1, n + 1), repeat=2):
            assert E(f"t {i}", f"t {j}") == E(f"t {j}", f"t {i}")

    def test_hash_agrees_with_equality(self):
        a = from_word(3, ["e 1", "e 2", "e 1"])
        b = from_word(3, ["e 2", "e 1", "e 2"])
        assert len({a, b}) == 1

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_equal_implies_equal_burau(self, data):
        n = data.draw(st.integers(2, 5))
        w = data.draw(words(n))
        a = from_word(n, w)
        # insert a random relation somewhere; the element must not change
        rng = random.Random(data.draw(st.integers(0, 10**6)))
        i = rng.randint(1, n - 1)
        filler = [f"e {i}", f"e' {i}"] if rng.random() < 0.5 else [f"t {rng.randint(1, n)}", f"t' {rng.randint(1, n)}"]
        if filler[0].startswith("t"):
            filler[1] = "t'" + filler[0][1:]
        pos = rng.randint(0, len(w))
        b = from_word(n, w[:pos] + filler + w[pos:])
        assert a == b
        assert burau(a) == burau(b)

    @settings(max_examples=80, deadline=None)
    @given(st.data())
    def test_congruence_and_homomorphism(self, data):
        n = data.draw(st.integers(1, 5))
        a, b, c = (from_word(n, data.draw(words(n))) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert permutation(a * b) == permutation(a).compose(permutation(b))
        assert a * a.inverse() == identity(n) == a.inverse() * a
        if a == b:
            assert a * c == b * c and c * a == c * b

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_reduction_order_is_irrelevant(self, data):
        n = data.draw(st.integers(2, 4))
        w = data.draw(words(n))
        b = from_word(n, w)
        # rebuild by multiplying the letters in a random bracketing
        parts = [from_word(n, [x]) for x in w]
        rng = random.Random(data.draw(st.integers(0, 10**6)))
        while len(parts) > 1:
            k = rng.randrange(len(parts) - 1)
            parts[k:k + 2] = [parts[k] * parts[k + 1]]
        c = parts[0] if parts else identity(n)
        assert b.artin == c.artin and b == c


class TestPermutation:
    def test_examples(self):
        assert permutation(from_word(3, ["e 1"])).images == (2, 1, 3)
        assert permutation(from_word(3, ["t 2"])).is_identity()
        p = permutation(from_word(3, ["e 1", "e 2"]))
        # pi(e1 e2) = (1 2) o (2 3): 1->1->2, 2->3->3, 3->2->1
        assert p.images == (2, 3, 1)

    def test_rejects_non_bijection(self):
        with pytest.raises(BraidError):
            Permutation((1, 1))


def block_permutation(ps: Permutation, i: int, pt: Permutation) -> tuple:
    """Independent construction of the permutation of a cabled composite."""
    r, s = ps.n, pt.n
    target_block = ps(i)
    out = []
    for k in range(1, r + s):
        if k < i:
            src, inner = k, None
        elif k < i + s:
            src, inner = i, k - i + 1
        else:
            src, inner = k - s + 1, None
        img = ps(src)
        if inner is not None:
            out.append(target_block + pt(inner) - 1)
        elif img < target_block:
            out.append(img)
        else:
            out.append(img + s - 1)
    return tuple(out)


class TestComposeAt:
    def test_identity_insertion_is_cabling(self):
        s = from_word(2, ["e 1"])
        c = compose_at(s, 1, identity(2))
        # the doubled strand crosses over the third one strand at a time
        assert c == from_word(3, ["e 1", "e 2"])
        assert c.permutation.images == block_permutation(s.permutation, 1, identity(2).permutation)

    def test_twist_cabling(self):
        c = compose_at(from_word(1, ["t 1"]), 1, identity(2))
        assert c == from_word(2, ["e 1", "e 1", "t 1", "t 2"])

    def test_empty_cable(self):
        sigma = from_word(3, ["e 1", "e 2"])
        c = compose_at(sigma, 2, identity(0))
        assert c.strands == 2
        assert c.permutation.images == block_permutation(sigma.permutation, 2, identity(0).permutation)

    def test_slot_out_of_range(self):
        with pytest.raises(BraidError):
            compose_at(identity(2), 3, identity(1))

    def test_full_twist_is_central(self):
        for s in range(1, 5):
            ft = RibbonBraid(s, full_twist(s))
            for k in range(1, s):
                e = from_word(s, [f"e {k}"])
                assert ft * e == e * ft

    @settings(max_examples=80, deadline=None)
    @given(st.data())
    def test_block_permutation(self, data):
        r = data.draw(st.integers(1, 4))
        s = data.draw(st.integers(0, 4))
        i = data.draw(st.integers(1, r))
        sigma = from_word(r, data.draw(words(r, 8)))
        tau = from_word(s, data.draw(words(s, 8)))
        c = compose_at(sigma, i, tau)
        assert c.permutation.images == block_permutation(sigma.permutation, i, tau.permutation)

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_operadic_associativity(self, data):
        r = data.draw(st.integers(1, 3))
        s = data.draw(st.integers(1, 3))
        u = data.draw(st.integers(0, 2))
        sigma = from_word(r, data.draw(words(r, 6)))
        tau = from_word(s, data.draw(words(s, 6)))
        rho = from_word(u, data.draw(words(u, 6)))
        i = data.draw(st.integers(1, r))
        j = data.draw(st.integers(1, s))
        # nested insertion
        assert compose_at(compose_at(sigma, i, tau), i + j - 1, rho) == compose_at(sigma, i, compose_at(tau, j, rho))

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_compatible_with_multiplication(self, data):
        r = data.draw(st.integers(1, 3))
        s = data.draw(st.integers(0, 3))
        i = data.draw(st.integers(1, r))
        a = from_word(r, data.draw(words(r, 6)))
        b = from_word(r, data.draw(words(r, 6)))
        tau = from_word(s, data.draw(words(s, 6)))
        # (a b) o_i tau = (a o_{pi_b(i)} id) (b o_i tau)
        lhs = compose_at(a * b, i, tau)
        rhs = compose_at(a, b.permutation(i), identity(s)) * compose_at(b, i, tau)
        assert lhs == rhs


def test_parse_and_render_round_trip():
    b = parse_braid("rb(3)[e 1 e' 2 t 3 t' 1]")
    assert parse_braid(b.render()) == b
    assert parse_braid(" rb( 2 ) [ ] ") == identity(2)
    with pytest.raises(BraidError):
        parse_braid("rb(2)[e]")
