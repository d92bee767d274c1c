import pytest
from hypothesis import given, strategies as st

from webspider.exterior import LinearMap, SpaceObject, maps_equal
from webspider.functor import EvaluationError, eval_closed, evaluate, same_map, strip_trivial
from webspider.harness import random_web, rel_ih
from webspider.scalar import q, quantum_binomial, quantum_int
from webspider.web import (Builder, WebIR, compose, cap, cup, ident, merge, split, tagin, tagout,
                           tensor)


def circle(n, k, orient="-+"):
    return Builder(n, ()).apply(0, cup(k, orient)).apply(0, cap(k, orient)).web()


@pytest.mark.parametrize("n", range(2, 7))
def test_circle_is_quantum_dimension(n):
    for k in range(0, n + 1):
        for o in ("-+", "+-"):
            assert eval_closed(circle(n, k, o)) == quantum_binomial(n, k)


def test_circle_through_tags():
    # a 1-labelled circle whose right half is drawn as a 2-labelled strand between tags
    w = (Builder(3, ()).apply(0, cup(1, "-+")).apply(0, tagin(1, "R"))
         .apply(0, tagout(2, "L")).apply(0, cap(1, "-+")).web())
    assert eval_closed(w) == quantum_binomial(3, 1)


def test_bigon_is_binomial_times_identity():
    for n in range(2, 6):
        w = Builder(n, ((2, "+"),)).apply(0, split(1, 1)).apply(0, merge(1, 1)).web()
        assert evaluate(w) == LinearMap.identity(SpaceObject.upward(n, (2,))).scale(quantum_int(2))


def test_empty_web_is_identity_on_unit():
    m = evaluate(WebIR(3, (), ()))
    assert m.entry((), ()) == 1 and m.source.dim() == 1


def test_two_circles():
    two = tensor(circle(2, 1), circle(2, 1))
    assert eval_closed(two) == quantum_int(2) * quantum_int(2)


def test_eval_closed_rejects_open_webs():
    with pytest.raises(EvaluationError):
        eval_closed(WebIR(3, ((1, "+"),), ()))


def test_label_out_of_range_is_zero():
    w = WebIR(3, ((2, "+"), (2, "+")), ((merge(2, 2),),))
    assert evaluate(w).is_zero()


def test_ih_relation_example():
    lhs, rhs = rel_ih(4, 1, 1, 1)
    assert maps_equal(evaluate(lhs), evaluate(rhs))


def test_identity_is_not_zero():
    obj = SpaceObject.upward(3, (1,))
    assert not maps_equal(LinearMap.identity(obj), LinearMap.zero(obj, obj))


def test_slicings_agree():
    # two cells in one row versus the same cells in two rows
    n = 4
    src = ((1, "+"), (1, "+"), (2, "+"))
    one_row = WebIR(n, src, ((merge(1, 1), split(1, 1)),))
    two_rows = Builder(n, src).apply(0, merge(1, 1)).apply(1, split(1, 1)).web()
    other_order = Builder(n, src).apply(2, split(1, 1)).apply(0, merge(1, 1)).web()
    assert same_map(one_row, two_rows) and same_map(two_rows, other_order)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_zigzags_are_identities(n):
    for k in range(1, n):
        for s in ("+", "-"):
            ident_map = LinearMap.identity(SpaceObject(n, ((k, s),)))
            if s == "+":
                a = Builder(n, ((k, s),)).apply(1, cup(k, "-+")).apply(0, cap(k, "+-")).web()
                b = Builder(n, ((k, s),)).apply(0, cup(k, "+-")).apply(1, cap(k, "-+")).web()
            else:
                a = Builder(n, ((k, s),)).apply(1, cup(k, "+-")).apply(0, cap(k, "-+")).web()
                b = Builder(n, ((k, s),)).apply(0, cup(k, "-+")).apply(1, cap(k, "+-")).web()
            assert evaluate(a) == ident_map and evaluate(b) == ident_map


def test_strip_trivial_drops_extreme_factors():
    n = 3
    w = Builder(n, ((2, "+"),)).apply(0, split(2, 0)).web()
    m = strip_trivial(evaluate(w))
    assert m == LinearMap.identity(SpaceObject.upward(n, (2,)))


@given(st.integers(2, 3), st.integers(1, 8), st.integers(0, 10 ** 6), st.data())
def test_functoriality(n, budget, seed, data):
    w = random_web(n, budget, seed)
    cut = data.draw(st.integers(0, len(w.rows)))
    f = WebIR(n, w.source, w.rows[:cut])
    g = WebIR(n, f.target, w.rows[cut:])
    assert compose(f, g) == w
    assert evaluate(w) == evaluate(f).then(evaluate(g))


@given(st.integers(2, 3), st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_tensor_functoriality(n, s1, s2):
    f, g = random_web(n, 4, s1), random_web(n, 4, s2)
    assert evaluate(tensor(f, g)) == evaluate(f).tensor(evaluate(g))
