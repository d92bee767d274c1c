import pytest
from hypothesis import given, strategies as st

from webspider.functor import evaluate, strip_trivial
from webspider.harness import random_web, rel_serre
from webspider.ladderize import LadderizeError, ladderize, ladderize_verify
from webspider.qgroup import Ladder, eval_ladder, ladder_web
from webspider.web import Builder, WebIR, cap, cup, merge, split, tagin, tagout


def up(*labels):
    return tuple((k, "+") for k in labels)


def test_identity_web():
    lad = ladderize(WebIR(3, up(2)))
    assert lad.source == (2,) and lad.rungs == ()


def test_single_merge():
    for n in range(2, 5):
        for k in range(1, n):
            for l in range(1, n - k + 1):
                w = Builder(n, up(k, l)).apply(0, merge(k, l)).web()
                lad = ladderize(w)
                assert lad.source == (k, l) and lad.rungs == (("E", 1, l),)
                assert lad.target == (k + l, 0)
                assert ladderize_verify(w).equal


def test_bigon():
    n, k, l = 4, 1, 2
    w = Builder(n, up(k + l)).apply(0, split(k, l)).apply(0, merge(k, l)).web()
    lad = ladderize(w)
    assert lad.source == (k + l, 0)
    assert lad.rungs == (("F", 1, l), ("E", 1, l))
    assert ladderize_verify(w).equal


def test_serre_web_terms():
    n = 3
    for g, k in (("E", (0, 2, 1)), ("F", (2, 1, 0))):
        x = rel_serre(n, *k, g)[0]
        assert len(x.terms) == 3
        for _, w in x.terms:
            assert ladderize_verify(w).equal


def test_tags_on_closed_loops():
    n = 3
    w = (Builder(n, up(1)).apply(1, cup(1, "-+")).apply(1, tagin(1, "R"))
         .apply(1, tagout(2, "L")).apply(1, tagin(1, "L")).apply(1, tagout(2, "R"))
         .apply(1, cap(1, "-+")).web())
    assert ladderize_verify(w).equal
    loop = (Builder(n, ()).apply(0, cup(2, "+-")).apply(1, tagin(2, "L")).apply(1, tagout(1, "R"))
            .apply(0, cap(2, "+-")).web())
    assert ladderize_verify(loop).equal


def test_rejects_downward_boundary():
    with pytest.raises(LadderizeError):
        ladderize(WebIR(3, ((1, "-"),)))


@given(st.integers(2, 3), st.integers(0, 8), st.integers(0, 10 ** 6))
def test_ladderize_preserves_evaluation(n, budget, seed):
    w = random_web(n, budget, seed)
    rep = ladderize_verify(w)
    assert rep.equal, rep.witness
    assert rep.ladder.is_valid()


@given(st.integers(2, 3), st.integers(0, 6), st.integers(0, 10 ** 6))
def test_ladderize_idempotent_on_ladders(n, budget, seed):
    lad = ladderize(random_web(n, budget, seed))
    again = ladderize(ladder_web(lad))
    a = strip_trivial(eval_ladder(lad))
    b = strip_trivial(evaluate(ladder_web(again)).scale(again.coeff * lad.coeff))
    assert a == b
