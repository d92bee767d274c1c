"""Sliced web diagrams: rows of elementary cells read bottom to top.

A web is a source object plus a sequence of rows.  Each row is a left to
right list of cells whose inputs concatenate to the running boundary.  The
text form is::

    web n=3 src=(2+)
      split 1 1
      merge 1 1

and a linear combination prefixes each term's rows with ``+ <scalar> *``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .exterior import MINUS, PLUS, SpaceObject
from .scalar import Scalar, ScalarError, one, parse as parse_scalar, render as render_scalar

Strand = Tuple[int, str]

CELL_KINDS = ("id", "merge", "split", "tagout", "tagin", "cup", "cap")


class WebSyntaxError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


class WebError(ValueError):
    pass


@dataclass(frozen=True)
class Cell:
    """One elementary piece.  ``a``/``b`` are labels, ``mode`` is a sign, side or orientation."""

    kind: str
    a: int
    b: int = 0
    mode: str = ""

    def inputs(self, n: int) -> Tuple[Strand, ...]:
        k = self.kind
        if k == "id":
            return ((self.a, self.mode),)
        if k == "merge":
            return ((self.a, PLUS), (self.b, PLUS))
        if k == "split":
            return ((self.a + self.b, PLUS),)
        if k == "tagout":
            return ((self.a, PLUS),)
        if k == "tagin":
            return ((self.a, MINUS),)
        if k == "cup":
            return ()
        if k == "cap":
            return _pair(self.a, self.mode)
        raise WebError(f"unknown cell kind {k!r}")

    def outputs(self, n: int) -> Tuple[Strand, ...]:
        k = self.kind
        if k == "id":
            return ((self.a, self.mode),)
        if k == "merge":
            return ((self.a + self.b, PLUS),)
        if k == "split":
            return ((self.a, PLUS), (self.b, PLUS))
        if k == "tagout":
            return ((n - self.a, MINUS),)
        if k == "tagin":
            return ((n - self.a, PLUS),)
        if k == "cup":
            return _pair(self.a, self.mode)
        if k == "cap":
            return ()
        raise WebError(f"unknown cell kind {k!r}")

    def labels(self, n: int) -> Tuple[int, ...]:
        return tuple(k for k, _ in self.inputs(n) + self.outputs(n))

    def render(self) -> str:
        if self.kind == "id":
            return f"id {self.a}{self.mode}"
        if self.kind in ("merge", "split"):
            return f"{self.kind} {self.a} {self.b}"
        return f"{self.kind} {self.a} {self.mode}"

    def __str__(self):
        return self.render()


def _pair(k: int, orient: str) -> Tuple[Strand, Strand]:
    return ((k, orient[0]), (k, orient[1]))


def ident(k: int, sign: str = PLUS) -> Cell:
    return Cell("id", k, 0, sign)


def merge(k: int, l: int) -> Cell:
    return Cell("merge", k, l)


def split(k: int, l: int) -> Cell:
    return Cell("split", k, l)


def tagout(k: int, side: str = "L") -> Cell:
    return Cell("tagout", k, 0, side)


def tagin(k: int, side: str = "R") -> Cell:
    return Cell("tagin", k, 0, side)


def cup(k: int, orient: str = "-+") -> Cell:
    return Cell("cup", k, 0, orient)


def cap(k: int, orient: str = "-+") -> Cell:
    return Cell("cap", k, 0, orient)


Row = Tuple[Cell, ...]


@dataclass(frozen=True)
class Diagnostic:
    message: str
    row: int
    column: int
    zero: bool = False   # True: well-formed but identically zero by the label convention

    def __str__(self):
        return f"row {self.row}, cell {self.column}: {self.message}"


@dataclass(frozen=True)
class WebIR:
    n: int
    source: Tuple[Strand, ...]
    rows: Tuple[Row, ...] = ()

    @property
    def source_object(self) -> SpaceObject:
        return SpaceObject(self.n, self.source)

    def boundaries(self) -> List[Tuple[Strand, ...]]:
        """Running boundary before each row and after the last one."""
        bd = [tuple(self.source)]
        cur = tuple(self.source)
        for r, row in enumerate(self.rows):
            ins = tuple(s for c in row for s in c.inputs(self.n))
            if ins != cur:
                raise WebError(f"row {r + 1} consumes {_fmt(ins)} but boundary is {_fmt(cur)}")
            cur = tuple(s for c in row for s in c.outputs(self.n))
            bd.append(cur)
        return bd

    @property
    def target(self) -> Tuple[Strand, ...]:
        return self.boundaries()[-1]

    @property
    def target_object(self) -> SpaceObject:
        return SpaceObject(self.n, self.target)

    def cell_count(self, include_ids: bool = False) -> int:
        return sum(1 for row in self.rows for c in row if include_ids or c.kind != "id")

    def render(self) -> str:
        return render(self)


def _fmt(strands: Sequence[Strand]) -> str:
    return "(" + ",".join(f"{k}{s}" for k, s in strands) + ")"


@dataclass(frozen=True)
class WebLinComb:
    """Finite linear combination of webs with a common boundary."""

    terms: Tuple[Tuple[Scalar, WebIR], ...]

    @classmethod
    def of(cls, pairs: Iterable[Tuple[Scalar, WebIR]]) -> "WebLinComb":
        merged: Dict[WebIR, Scalar] = {}
        order: List[WebIR] = []
        for c, w in pairs:
            if w in merged:
                merged[w] = merged[w] + c
            else:
                merged[w] = c
                order.append(w)
        terms = tuple((merged[w], w) for w in order if merged[w])
        if len({(w.n, w.source) for _, w in terms}) > 1:
            raise WebError("linear combination terms have different sources")
        return cls(terms)

    @classmethod
    def single(cls, w: WebIR, c: Optional[Scalar] = None) -> "WebLinComb":
        return cls(((c if c is not None else one(), w),))

    def __add__(self, other: "WebLinComb") -> "WebLinComb":
        return WebLinComb.of(self.terms + other.terms)

    def scale(self, c: Scalar) -> "WebLinComb":
        return WebLinComb.of((c * d, w) for d, w in self.terms)

    def render(self) -> str:
        return render(self)


# validation ----------------------------------------------------------------

def validate(w: WebIR) -> Optional[Diagnostic]:
    """First problem with ``w``, or None.

    A label outside 0..n produced inside the web is reported with
    ``zero=True``: such a web is a legal morphism equal to zero.
    """
    n = w.n
    if n < 1:
        return Diagnostic("n must be positive", 0, 0)
    cur = tuple(w.source)
    for j, (k, s) in enumerate(cur):
        if s not in (PLUS, MINUS):
            return Diagnostic(f"bad sign {s!r}", 0, j + 1)
        if not 0 <= k <= n:
            return Diagnostic("label out of range", 0, j + 1, zero=True)
    zero_diag = None
    for r, row in enumerate(w.rows, start=1):
        pos = 0
        out: List[Strand] = []
        for c, cell in enumerate(row, start=1):
            bad = _cell_problem(cell)
            if bad:
                return Diagnostic(bad, r, c)
            ins = cell.inputs(n)
            have = cur[pos:pos + len(ins)]
            if len(have) < len(ins):
                return Diagnostic("row consumes more strands than the boundary has", r, c)
            for (k1, s1), (k2, s2) in zip(ins, have):
                if k1 != k2:
                    return Diagnostic(f"label mismatch: cell wants {k1}, boundary has {k2}", r, c)
                if s1 != s2:
                    return Diagnostic("orientation mismatch", r, c)
            pos += len(ins)
            if zero_diag is None and any(not 0 <= k <= n for k in cell.labels(n)):
                zero_diag = Diagnostic("label out of range", r, c, zero=True)
            out.extend(cell.outputs(n))
        if pos != len(cur):
            return Diagnostic("row leaves boundary strands unconsumed", r, len(row) + 1)
        cur = tuple(out)
    return zero_diag


def _cell_problem(cell: Cell) -> Optional[str]:
    if cell.kind not in CELL_KINDS:
        return f"unknown cell kind {cell.kind!r}"
    if cell.kind == "id" and cell.mode not in (PLUS, MINUS):
        return "identity needs a sign"
    if cell.kind in ("tagout", "tagin") and cell.mode not in ("L", "R"):
        return "tag side must be L or R"
    if cell.kind in ("cup", "cap") and cell.mode not in ("-+", "+-"):
        return "orientation must be -+ or +-"
    return None


def is_valid(w: WebIR) -> bool:
    d = validate(w)
    return d is None or d.zero


# construction ----------------------------------------------------------------

def identity_web(n: int, strands: Sequence[Strand]) -> WebIR:
    return WebIR(n, tuple(strands), ())


def id_row(strands: Sequence[Strand]) -> Row:
    return tuple(ident(k, s) for k, s in strands)


def place(boundary: Sequence[Strand], pos: int, cell: Cell, n: int) -> Row:
    """A row applying ``cell`` at boundary position ``pos``, identities elsewhere."""
    width = len(cell.inputs(n))
    return id_row(boundary[:pos]) + (cell,) + id_row(boundary[pos + width:])


class Builder:
    """Grow a web one cell at a time, tracking the boundary."""

    def __init__(self, n: int, source: Sequence[Strand]):
        self.n = n
        self.source = tuple(source)
        self.boundary = tuple(source)
        self.rows: List[Row] = []

    def apply(self, pos: int, cell: Cell) -> "Builder":
        row = place(self.boundary, pos, cell, self.n)
        ins = tuple(s for c in row for s in c.inputs(self.n))
        if ins != self.boundary:
            raise WebError(f"cannot place {cell} at {pos} on {_fmt(self.boundary)}")
        self.rows.append(row)
        self.boundary = tuple(s for c in row for s in c.outputs(self.n))
        return self

    def row(self, cells: Sequence[Cell]) -> "Builder":
        row = tuple(cells)
        ins = tuple(s for c in row for s in c.inputs(self.n))
        if ins != self.boundary:
            raise WebError(f"row {row} does not fit {_fmt(self.boundary)}")
        self.rows.append(row)
        self.boundary = tuple(s for c in row for s in c.outputs(self.n))
        return self

    def web(self) -> WebIR:
        return WebIR(self.n, self.source, tuple(self.rows))


def compose(f: WebIR, g: WebIR) -> WebIR:
    """f first, then g."""
    if f.n != g.n:
        raise WebError("cannot compose webs over different n")
    if f.target != g.source:
        raise WebError(f"boundary mismatch: {_fmt(f.target)} vs {_fmt(g.source)}")
    return WebIR(f.n, f.source, f.rows + g.rows)


def tensor(f: WebIR, g: WebIR) -> WebIR:
    """Side by side: f's rows run first next to g's source, then g's rows."""
    if f.n != g.n:
        raise WebError("cannot tensor webs over different n")
    rows = [row + id_row(g.source) for row in f.rows]
    ft = f.target
    rows += [id_row(ft) + row for row in g.rows]
    return WebIR(f.n, f.source + g.source, tuple(rows))


def compose_lin(f, g) -> WebLinComb:
    f, g = as_lincomb(f), as_lincomb(g)
    return WebLinComb.of((a * b, compose(v, w)) for a, v in f.terms for b, w in g.terms)


def tensor_lin(f, g) -> WebLinComb:
    f, g = as_lincomb(f), as_lincomb(g)
    return WebLinComb.of((a * b, tensor(v, w)) for a, v in f.terms for b, w in g.terms)


def as_lincomb(w) -> WebLinComb:
    if isinstance(w, WebLinComb):
        return w
    return WebLinComb.single(w)


# symmetries -------------------------------------------------------------------

_FLIP_SIDE = {"L": "R", "R": "L"}
_FLIP_ORIENT = {"-+": "+-", "+-": "-+"}
_FLIP_SIGN = {PLUS: MINUS, MINUS: PLUS}


def mirror(w: WebIR) -> WebIR:
    """Left-right reflection."""
    def cell(c: Cell) -> Cell:
        if c.kind in ("merge", "split"):
            return Cell(c.kind, c.b, c.a)
        if c.kind in ("tagout", "tagin"):
            return Cell(c.kind, c.a, 0, _FLIP_SIDE[c.mode])
        if c.kind in ("cup", "cap"):
            return Cell(c.kind, c.a, 0, _FLIP_ORIENT[c.mode])
        return c
    rows = tuple(tuple(cell(c) for c in reversed(row)) for row in w.rows)
    return WebIR(w.n, tuple(reversed(w.source)), rows)


def _reversed_vertex(cell: Cell, n: int) -> List[Tuple[int, Cell]]:
    """Arrow-reversed trivalent vertex as a small web of (position, cell) steps.

    Reversing the arrows on a merge gives the transpose of the split with
    swapped labels, and vice versa; transposes are built from the plain
    copairing (cup +-) on the right and the plain pairing (cap -+).
    """
    k, l = cell.a, cell.b
    if cell.kind == "merge":
        # (k-, l-) -> (k+l)-  =  transpose of split(l, k)
        return [(2, cup(k + l, "+-")), (2, split(l, k)), (1, cap(l, "-+")), (0, cap(k, "-+"))]
    # split(k, l) reversed: (k+l)- -> (k-, l-)  =  transpose of merge(l, k)
    return [(1, cup(l, "+-")), (2, cup(k, "+-")), (1, merge(l, k)), (0, cap(k + l, "-+"))]


def reverse_arrows(w: WebIR) -> WebIR:
    """Reverse every orientation, keeping the picture in place.

    Tag sides are read relative to the arrows, so a reversed tag swaps L and R.
    """
    n = w.n
    b = Builder(n, tuple((k, _FLIP_SIGN[s]) for k, s in w.source))
    for row in w.rows:
        # process cells right to left so earlier positions stay valid
        offsets = []
        pos = 0
        for c in row:
            offsets.append(pos)
            pos += len(c.inputs(n))
        # positions in the current (already partially rewritten) boundary
        shift = 0
        plan = []
        for c, off in zip(row, offsets):
            plan.append((off + shift, c))
            shift += len(c.outputs(n)) - len(c.inputs(n))
        for start, c in plan:
            if c.kind == "id":
                continue
            if c.kind == "tagout":
                b.apply(start, tagin(c.a, _FLIP_SIDE[c.mode]))
            elif c.kind == "tagin":
                b.apply(start, tagout(c.a, _FLIP_SIDE[c.mode]))
            elif c.kind in ("cup", "cap"):
                b.apply(start, Cell(c.kind, c.a, 0, _FLIP_ORIENT[c.mode]))
            else:
                for p, sub in _reversed_vertex(c, n):
                    b.apply(start + p, sub)
    return b.web()


def reverse_lin(x) -> WebLinComb:
    return WebLinComb.of((c, reverse_arrows(w)) for c, w in as_lincomb(x).terms)


def mirror_lin(x) -> WebLinComb:
    return WebLinComb.of((c, mirror(w)) for c, w in as_lincomb(x).terms)


# text form --------------------------------------------------------------------

def render(w) -> str:
    if isinstance(w, WebLinComb):
        if not w.terms:
            raise WebError("cannot render an empty linear combination")
        first = w.terms[0][1]
        root = w.terms[0][0].root
        lines = [_header(first, root)]
        for c, t in w.terms:
            lines.append(f"+ {render_scalar(c)} *")
            lines.extend("  " + " | ".join(cell.render() for cell in row) for row in t.rows)
        return "\n".join(lines) + "\n"
    lines = [_header(w, 1)]
    lines.extend("  " + " | ".join(c.render() for c in row) for row in w.rows)
    return "\n".join(lines) + "\n"


def _header(w: WebIR, root: int) -> str:
    src = ",".join(f"{k}{s}" for k, s in w.source)
    extra = f" root={root}" if root != 1 else ""
    return f"web n={w.n}{extra} src=({src})"


_HEADER = re.compile(r"^web\s+n=(\d+)(?:\s+root=(\d+))?\s+src=\(([^)]*)\)\s*$")
_STRAND = re.compile(r"^\s*(\d+)\s*([+-])\s*$")


def _parse_int(tok: str, line: int, col: int) -> int:
    if not re.fullmatch(r"\d+", tok):
        raise WebSyntaxError(f"expected a label, got {tok!r}", line, col)
    return int(tok)


def _parse_cell(text: str, n: int, line: int, col: int) -> Cell:
    toks = text.split()
    if not toks:
        raise WebSyntaxError("empty cell", line, col)
    kind = toks[0]
    if kind not in CELL_KINDS:
        raise WebSyntaxError(f"unknown cell {kind!r}", line, col)
    if kind == "id":
        if len(toks) != 2 or not re.fullmatch(r"\d+[+-]", toks[1]):
            raise WebSyntaxError("identity cell is 'id <k><+|->'", line, col)
        k, s = int(toks[1][:-1]), toks[1][-1]
        cell = ident(k, s)
    elif kind in ("merge", "split"):
        if len(toks) != 3:
            raise WebSyntaxError(f"{kind} takes two labels", line, col)
        cell = Cell(kind, _parse_int(toks[1], line, col), _parse_int(toks[2], line, col))
    else:
        if len(toks) != 3:
            raise WebSyntaxError(f"{kind} takes a label and a mode", line, col)
        k = _parse_int(toks[1], line, col)
        mode = toks[2]
        allowed = ("L", "R") if kind.startswith("tag") else ("-+", "+-")
        if mode not in allowed:
            raise WebSyntaxError(f"{kind} mode must be one of {allowed}", line, col)
        cell = Cell(kind, k, 0, mode)
    for lab in (cell.a, cell.b):
        if lab > n:
            raise WebSyntaxError(f"label {lab} exceeds n={n}", line, col)
    return cell


def parse(text: str):
    """Parse a web or a linear combination of webs."""
    lines = [ln.rstrip() for ln in text.splitlines()]
    idx = 0
    while idx < len(lines) and (not lines[idx].strip() or lines[idx].lstrip().startswith("#")):
        idx += 1
    if idx >= len(lines):
        raise WebSyntaxError("empty input", 1, 1)
    m = _HEADER.match(lines[idx].strip())
    if not m:
        raise WebSyntaxError("expected header 'web n=<int> src=(...)'", idx + 1, 1)
    n = int(m.group(1))
    root = int(m.group(2)) if m.group(2) else 1
    src: List[Strand] = []
    if m.group(3).strip():
        for part in m.group(3).split(","):
            sm = _STRAND.match(part)
            if not sm:
                raise WebSyntaxError(f"bad strand {part.strip()!r}", idx + 1, lines[idx].find(part) + 1)
            k = int(sm.group(1))
            if k > n:
                raise WebSyntaxError(f"label {k} exceeds n={n}", idx + 1, 1)
            src.append((k, sm.group(2)))
    blocks: List[Tuple[Optional[Scalar], List[Row]]] = []
    current: Optional[List[Row]] = None
    for ln_no in range(idx + 1, len(lines)):
        raw = lines[ln_no]
        body = raw.strip()
        if not body or body.startswith("#"):
            continue
        if body.startswith("+") and body.endswith("*"):
            try:
                c = parse_scalar(body[1:-1], root if root != 1 else None)
            except ScalarError as exc:
                raise WebSyntaxError(str(exc), ln_no + 1, 1) from None
            current = []
            blocks.append((c, current))
            continue
        if current is None:
            current = []
            blocks.append((None, current))
        cells = []
        col = raw.find(body) + 1
        for part in body.split("|"):
            cells.append(_parse_cell(part, n, ln_no + 1, col))
            col += len(part) + 1
        current.append(tuple(cells))
    if not blocks:
        return WebIR(n, tuple(src), ())
    if len(blocks) == 1 and blocks[0][0] is None:
        return WebIR(n, tuple(src), tuple(blocks[0][1]))
    if any(c is None for c, _ in blocks):
        raise WebSyntaxError("rows before the first '+ <scalar> *' separator", idx + 2, 1)
    return WebLinComb.of((c, WebIR(n, tuple(src), tuple(rows))) for c, rows in blocks)
