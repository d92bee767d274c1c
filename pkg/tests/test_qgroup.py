import random

import pytest

from conftest import random_word
from hypothesis import given, strategies as st

from webspider.functor import evaluate
from webspider.qgroup import (Ladder, QGroupError, UWord, check_ladder_relation, check_u_relation,
                              ladder_relation_grid, ladder_to_web, n_bounded, parse_ladder,
                              parse_uword, phi_action, phi_matrix, shift, u_relation_grid,
                              word_matrix, word_to_ladder)
from webspider.scalar import one, q
from webspider.web import WebIR


def test_parse_uword():
    w = parse_uword("F1^2 E2", (2, 1, 0))
    assert w.letters == (("F", 1, 2), ("E", 2, 1))
    assert w.render() == "F1^2 E2"
    assert parse_uword("1", (1, 1)).letters == ()
    with pytest.raises(QGroupError):
        parse_uword("G1", (1, 1))
    with pytest.raises(QGroupError):
        parse_uword("E3", (1, 1))


def test_weights_run_right_to_left():
    w = parse_uword("F1 F2 E1", (1, 2, 0))
    assert w.weights() == [(1, 2, 0), (2, 1, 0), (2, 0, 1), (1, 1, 1)]
    assert shift((2, 0), ("F", 1, 2)) == (0, 2)


def test_word_to_ladder():
    lad = word_to_ladder(parse_uword("F1 F2 E1", (1, 2, 0)), 3)
    assert lad.rungs == (("E", 1, 1), ("F", 2, 1), ("F", 1, 1))
    empty = word_to_ladder(parse_uword("", (1, 1)), 2)
    assert empty.rungs == () and ladder_to_web(empty) == WebIR(2, ((1, "+"), (1, "+")), ())
    assert word_to_ladder(UWord((0, 1), (("E", 1, 1),)), 1).target == (1, 0)
    for n in range(1, 4):
        for k in range(0, n + 1):
            assert word_to_ladder(UWord((n, k), (("E", 1, 1),)), n) is None


def test_ladder_text_round_trip():
    lad = Ladder(3, (1, 2, 0), (("E", 1, 1), ("F", 2, 1)), -one())
    text = lad.render()
    assert text.splitlines()[0] == "ladder n=3 src=(1,2,0)"
    assert parse_ladder(text) == lad


def test_single_rung_web():
    # an E rung on (k, l) is a split on the right upright followed by a merge
    from webspider.web import merge, split
    w = ladder_to_web(Ladder(3, (1, 2), (("E", 1, 1),)))
    assert [c for row in w.rows for c in row if c.kind != "id"] == [split(1, 1), merge(1, 1)]


def test_phi_action_examples():
    assert phi_action(UWord((0, 1), (("E", 1, 1),)), 2, {((), (1,)): one()}) == {((1,), ()): one()}
    assert phi_action(UWord((1, 0), (("F", 1, 1),)), 2, {((1,), ()): one()}) == {((), (1,)): one()}
    assert phi_action(UWord((0, 0), (("E", 1, 1),)), 2, {((), ()): one()}) == {}


def test_u_relation_examples():
    for k in [(a, b) for a in range(3) for b in range(3)]:
        assert check_u_relation("4.1", (1, 1, 1), 2, k) is None
    for k in [(a, b, c) for a in range(4) for b in range(4) for c in range(4)]:
        for g in "EF":
            assert check_u_relation("4.3", (1, 2, g), 3, k) is None
            assert check_u_relation("4.5", (1, 1, 1, g), 3, k) is None


@pytest.mark.parametrize("m,n", [(2, 2), (2, 3), (3, 2), (4, 2)])
def test_u_relation_grid(m, n):
    bad = [(rel, p, k) for rel, p, k in u_relation_grid(m, n) if check_u_relation(rel, p, n, k)]
    assert bad == []


def test_u_relation_grid_covers_distant_commutation():
    assert any(rel == "4.4" for rel, _, _ in u_relation_grid(4, 2))


@pytest.mark.parametrize("n", [2, 3])
def test_ladder_relation_grid(n):
    bad = []
    for rel, p, k in ladder_relation_grid(n):
        for mir in (False, True):
            if check_ladder_relation(rel, p, n, k, mir):
                bad.append((rel, p, k, mir))
    assert bad == []


def test_perturbed_relation_fails():
    # sanity: scaling one side is detected
    from webspider.qgroup import lincomb_matrix, u_relation_sides
    lhs, rhs = u_relation_sides("4.1", (1, 1, 1), (1, 1))
    a = lincomb_matrix(lhs, 2, (1, 1), (1, 1), "ladder")
    b = lincomb_matrix([(c * q(1), w) for c, w in rhs], 2, (1, 1), (1, 1), "ladder")
    assert a.first_difference(b) is not None


@pytest.mark.parametrize("n,m", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_single_letters_match_oracle(n, m):
    from itertools import product
    for k in product(range(n + 1), repeat=m):
        for g in "EF":
            for i in range(1, m):
                for r in range(1, n + 1):
                    w = UWord(k, ((g, i, r),))
                    if n_bounded(w.target, n):
                        assert phi_matrix(w, n) == word_matrix(w, n), (k, g, i, r)


@given(st.integers(2, 3), st.integers(2, 3), st.integers(0, 4), st.integers(0, 10 ** 6))
def test_random_words_match_oracle(n, m, length, seed):
    w = random_word(random.Random(seed), n, m, length)
    assert phi_matrix(w, n) == word_matrix(w, n)


@given(st.integers(2, 3), st.integers(0, 10 ** 6))
def test_words_compose(n, seed):
    rng = random.Random(seed)
    a = random_word(rng, n, 3, 2)
    b = random_word(rng, n, 3, 2, a.target)
    assert word_matrix(a.then(b), n) == word_matrix(a, n).then(word_matrix(b, n))
