import pytest
from hypothesis import given, strategies as st

from webspider.exterior import (ExteriorError, LinearMap, MINUS, PLUS, SpaceObject, act_generator,
                                cap_map, cup_map, ell, generator_map, merge_map, split_map, tag_map,
                                tagin_map)
from webspider.functor import cell_map
from webspider.scalar import minus_q_power, one, q, quantum_binomial
from webspider.web import cap, cup, merge, split, tagin, tagout


def x(*sets):
    return tuple(tuple(s) for s in sets)


def test_ell():
    assert ell((), (1, 2, 3)) == 0
    assert ell((1, 3), (2, 4)) == 3
    assert ell((2,), (1,)) == 0


def test_generator_action_on_single_wedges():
    obj = SpaceObject.upward(2, (1,))
    assert act_generator("E", 1, {x((2,)): one()}, obj) == {x((1,)): one()}
    assert act_generator("K", 1, {x((1,)): one()}, obj) == {x((1,)): q(1)}
    for n in range(2, 5):
        top = SpaceObject.upward(n, (2,))
        assert act_generator("E", 1, {x((1, 2)): one()}, top) == {}
    with pytest.raises(ExteriorError):
        act_generator("E", 2, {x((1,)): one()}, obj)


def test_merge_examples():
    m = merge_map(1, 1, 2)
    assert m.apply({x((2,), (1,)): one()}) == {x((1, 2)): one()}
    assert m.apply({x((1,), (2,)): one()}) == {x((1, 2)): -q(1)}
    assert m.apply({x((1,), (1,)): one()}) == {}


def test_split_examples():
    s = split_map(1, 1, 2)
    assert s.apply({x((1, 2)): one()}) == {x((1,), (2,)): -one(), x((2,), (1,)): q(-1)}
    s0 = split_map(0, 2, 3)
    assert s0.apply({x((1, 3)): one()}) == {x((), (1, 3)): one()}
    bigon = s.then(m := merge_map(1, 1, 2))
    assert bigon == LinearMap.identity(m.target).scale(quantum_binomial(2, 1))


def test_tag_examples():
    d = tag_map(1, 2, "L")
    assert d.entry(x((2,)), x((1,))) == -q(1)
    assert d.entry(x((1,)), x((1,))) == 0
    d0 = tag_map(0, 3, "L")
    assert d0.apply({x(()): one()}) == {x((1, 2, 3)): one()}
    assert tag_map(1, 3, "R") == tag_map(1, 3, "L")
    assert tag_map(1, 2, "R") == tag_map(1, 2, "L").scale(-one())


def test_tag_in_inverts_tag_out():
    for n in range(2, 6):
        for k in range(0, n + 1):
            out = tag_map(n - k, n, "L")
            back = tagin_map(k, n, "R")
            assert back.then(out) == LinearMap.identity(back.source)
            assert out.then(back) == LinearMap.identity(out.source)


def test_cap_and_cup_examples():
    c = cap_map(1, 2)
    assert c.entry((), x((1,), (1,))) == one()
    assert c.entry((), x((1,), (2,))) == 0
    u = cup_map(1, 2)
    assert u.apply({(): one()}) == {x((1,), (1,)): q(-1), x((2,), (2,)): q(1)}
    for n in range(2, 6):
        for k in range(1, n):
            for o in ("-+", "+-"):
                # a circle: cup closed by the cap of the same orientation pair
                loop = cup_map(k, n, o).then(cap_map(k, n, o))
                assert loop.entry((), ()) == quantum_binomial(n, k)


def _cells(n):
    for k in range(0, n + 1):
        for l in range(0, n + 1 - k):
            yield merge(k, l)
            yield split(k, l)
        for side in "LR":
            yield tagout(k, side)
            yield tagin(k, side)
        if 1 <= k <= n - 1:
            for o in ("-+", "+-"):
                yield cup(k, o)
                yield cap(k, o)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_generating_maps_are_equivariant(n):
    for cell in _cells(n):
        m = cell_map(cell, n)
        for i in range(1, n):
            for g in ("E", "F", "K", "Kinv"):
                lhs = generator_map(g, i, m.source).then(m)
                rhs = m.then(generator_map(g, i, m.target))
                assert lhs == rhs, (cell, g, i)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_split_coassociative_and_counital(n):
    for k in range(0, n + 1):
        for l in range(0, n + 1 - k):
            for m in range(0, n + 1 - k - l):
                idk = LinearMap.identity(SpaceObject.upward(n, (k,)))
                idm = LinearMap.identity(SpaceObject.upward(n, (m,)))
                left = split_map(k + l, m, n).then(split_map(k, l, n).tensor(idm))
                right = split_map(k, l + m, n).then(idk.tensor(split_map(l, m, n)))
                assert left == right
        ident = LinearMap.identity(SpaceObject.upward(n, (k,)))
        # deleting the 0-labelled factor of split(0, k) gives the identity
        assert split_map(0, k, n).then(merge_map(0, k, n)) == ident


@pytest.mark.parametrize("n", [2, 3, 4])
def test_merge_associative(n):
    for k in range(0, n + 1):
        for l in range(0, n + 1 - k):
            for m in range(0, n + 1 - k - l):
                idk = LinearMap.identity(SpaceObject.upward(n, (k,)))
                idm = LinearMap.identity(SpaceObject.upward(n, (m,)))
                left = merge_map(k, l, n).tensor(idm).then(merge_map(k + l, m, n))
                right = idk.tensor(merge_map(l, m, n)).then(merge_map(k, l + m, n))
                assert left == right


@given(st.integers(2, 5), st.data())
def test_generators_satisfy_commutator(n, data):
    # [E_i, F_i] = (K_i - K_i^-1) / (q - q^-1) on a random tensor of wedges and duals
    width = data.draw(st.integers(1, 3))
    factors = tuple((data.draw(st.integers(0, n)), data.draw(st.sampled_from([PLUS, MINUS])))
                    for _ in range(width))
    i = data.draw(st.integers(1, n - 1))
    obj = SpaceObject(n, factors)
    E, F = generator_map("E", i, obj), generator_map("F", i, obj)
    K, Ki = generator_map("K", i, obj), generator_map("Kinv", i, obj)
    lhs = (F.then(E) - E.then(F)).scale(q(1) - q(-1))
    assert lhs == K - Ki


def test_minus_q_power():
    assert minus_q_power(3) == -q(3)
    assert minus_q_power(-2) == q(-2)
