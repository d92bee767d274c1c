import pytest
from hypothesis import given, strategies as st

from webspider.harness import random_web
from webspider.web import (Builder, Cell, WebError, WebIR, WebLinComb, WebSyntaxError, compose, cap,
                           cup, ident, identity_web, merge, mirror, parse, render, reverse_arrows,
                           split, tagin, tagout, tensor, validate)
from webspider.scalar import q, quantum_int


def test_parse_bigon():
    w = parse("web n=3 src=(2+)\n  split 1 1\n  merge 1 1\n")
    assert w == WebIR(3, ((2, "+"),), ((split(1, 1),), (merge(1, 1),)))
    assert validate(w) is None


def test_parse_circle():
    w = parse("web n=2 src=()\n  cup 1 -+\n  cap 1 -+\n")
    assert w.source == () and w.target == ()
    assert w.cell_count() == 2


def test_parse_rows_with_several_cells():
    w = parse("# comment\nweb n=3 src=(1+,1+,2-)\n  merge 1 1 | tagin 2 R\n")
    assert w.rows == ((merge(1, 1), tagin(2, "R")),)
    assert w.target == ((2, "+"), (1, "+"))


def test_parse_linear_combination():
    text = "web n=3 src=(1+,1+)\n+ q *\n  id 1+ | id 1+\n+ -1 *\n  merge 1 1\n  split 1 1\n"
    x = parse(text)
    assert isinstance(x, WebLinComb)
    assert [c for c, _ in x.terms] == [q(1), -q(0)]
    assert parse(render(x)) == x


@pytest.mark.parametrize("text,line", [
    ("web n=3 src=(2+)\n  merge 1 x\n", 2),
    ("web n=3 src=(2+)\n  frob 1 1\n", 2),
    ("web n=3 src=(2+)\n\n  split 1 1\n  tagout 1 X\n", 4),
    ("web n=3 src=(4+)\n", 1),
    ("webby n=3\n", 1),
    ("web n=3 src=(1+)\n  split 4 0\n", 2),
])
def test_syntax_errors_carry_position(text, line):
    with pytest.raises(WebSyntaxError) as info:
        parse(text)
    assert info.value.line == line
    assert info.value.column >= 1


def test_validate_diagnostics():
    w = WebIR(3, ((2, "+"), (2, "+")), ((merge(2, 2),),))
    d = validate(w)
    assert d.zero and "label out of range" in d.message
    bad = WebIR(3, ((1, "-"),), ((ident(1, "+"),),))
    d = validate(bad)
    assert not d.zero and d.message == "orientation mismatch" and (d.row, d.column) == (1, 1)
    short = WebIR(3, ((1, "+"), (1, "+")), ((ident(1),),))
    assert "unconsumed" in validate(short).message


def test_builder_rejects_misplaced_cells():
    with pytest.raises(WebError):
        Builder(3, ((1, "+"),)).apply(0, merge(1, 1))


def test_compose_and_tensor():
    bottom = Builder(2, ()).apply(0, cup(1)).web()
    top = Builder(2, bottom.target).apply(0, cap(1)).web()
    circle = compose(bottom, top)
    assert circle.source == () and circle.target == ()
    ids = tensor(identity_web(3, ((1, "+"),)), identity_web(3, ((2, "+"),)))
    assert ids == identity_web(3, ((1, "+"), (2, "+")))
    with pytest.raises(WebError):
        compose(bottom, bottom)


def webs():
    return st.builds(random_web, st.integers(2, 4), st.integers(0, 8), st.integers(0, 10 ** 6))


@given(webs())
def test_render_parse_round_trip(w):
    assert parse(render(w)) == w


@given(webs())
def test_mirror_is_an_involution(w):
    assert mirror(mirror(w)) == w
    assert validate(mirror(w)) is None


@given(st.integers(2, 4), st.lists(st.integers(0, 10 ** 6), min_size=3, max_size=3))
def test_tensor_strictly_associative(n, seeds):
    a, b, c = (random_web(n, 6, s) for s in seeds)
    left, right = tensor(tensor(a, b), c), tensor(a, tensor(b, c))
    assert left.source == right.source and left.target == right.target
    assert validate(left) is None and validate(right) is None


@given(webs())
def test_reverse_arrows_flips_boundary(w):
    r = reverse_arrows(w)
    flip = {"+": "-", "-": "+"}
    assert r.source == tuple((k, flip[s]) for k, s in w.source)
    assert r.target == tuple((k, flip[s]) for k, s in w.target)
    assert validate(r) is None


def test_cell_render_parse():
    for c in (merge(1, 2), split(0, 3), tagout(1, "R"), tagin(2, "L"), cup(1, "+-"), cap(2, "-+"),
              ident(3, "-")):
        assert parse(f"web n=3 src=({','.join(f'{k}{s}' for k, s in c.inputs(3))})\n  {c.render()}\n").rows == ((c,),)
