"""Rewrite an upward-boundary web as a ladder with the same evaluation.

Every boundary strand of the running web is an upright: a k+ strand is an
upright labelled k, and a k- strand is an upright labelled n-k, read through
the tag ``tagin k R``.  Spare uprights labelled 0 or n sit to the right of all
strands.  Cells are processed one at a time; a cell that needs an empty
upright next to it fetches one by swapping it leftward, and a cell that frees
an upright sends it back to the right.  Each swap, cup, cap and trivalent
vertex is one rung, up to a sign that is folded into the ladder coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from .exterior import MINUS, PLUS, render_key
from .functor import evaluate, strip_trivial
from .qgroup import Ladder, ladder_to_web
from .scalar import Scalar, one, render as render_scalar
from .web import WebIR, validate


class LadderizeError(ValueError):
    pass


def _sign(e: int) -> Scalar:
    return -one() if e % 2 else one()


class _State:
    def __init__(self, n: int, labels):
        self.n = n
        self.ups: List[int] = list(labels)
        self.source: List[int] = list(labels)
        self.strands = len(self.ups)
        self.rungs = []
        self.coeff = one()

    def _rung(self, gen: str, i: int, r: int):
        if r == 0:
            return
        self.rungs.append((gen, i + 1, r))
        d = r if gen == "E" else -r
        self.ups[i] += d
        self.ups[i + 1] -= d
        if not (0 <= self.ups[i] <= self.n and 0 <= self.ups[i + 1] <= self.n):
            raise LadderizeError("internal error: rung leaves the bounded range")

    def swap_left(self, i: int):
        """Move the empty upright at i+1 to i."""
        n, a, v = self.n, self.ups[i], self.ups[i + 1]
        if v == 0:
            self._rung("F", i, a)
        elif v == n:
            self._rung("E", i, n - a)
            self.coeff = self.coeff * _sign(a * (n - a))
        else:
            raise LadderizeError("internal error: swapping a non-empty upright")

    def swap_right(self, i: int):
        """Move the empty upright at i to i+1."""
        n, v, b = self.n, self.ups[i], self.ups[i + 1]
        if v == 0:
            self._rung("E", i, b)
        elif v == n:
            self._rung("F", i, n - b)
            self.coeff = self.coeff * _sign(b * (n - b))
        else:
            raise LadderizeError("internal error: swapping a non-empty upright")

    def fetch(self, value: int, pos: int):
        """Bring a spare upright labelled ``value`` to ``pos`` and make it a strand."""
        t = next((j for j in range(self.strands, len(self.ups)) if self.ups[j] == value), None)
        if t is None:
            self.ups.append(value)
            self.source.append(value)
            t = len(self.ups) - 1
        for j in range(t - 1, pos - 1, -1):
            self.swap_left(j)
        self.strands += 1

    def release(self, pos: int):
        """Send the empty upright at ``pos`` back past the strands."""
        for j in range(pos, self.strands - 1):
            self.swap_right(j)
        self.strands -= 1


def ladderize(w: WebIR) -> Ladder:
    diag = validate(w)
    if diag is not None and not diag.zero:
        raise LadderizeError(str(diag))
    if any(s != PLUS for _, s in w.source) or any(s != PLUS for _, s in w.target):
        raise LadderizeError("ladderize needs upward source and target")
    n = w.n
    if diag is not None:
        raise LadderizeError("web is identically zero (label out of range)")
    st = _State(n, [k for k, _ in w.source])
    for row in w.rows:
        pos = 0
        for cell in row:
            width_in = len(cell.inputs(n))
            width_out = len(cell.outputs(n))
            _apply(st, cell, pos)
            pos += width_out
    return Ladder(n, tuple(st.source), tuple(st.rungs), st.coeff)


def _apply(st: _State, cell, j: int):
    n = st.n
    kind, k, l = cell.kind, cell.a, cell.b
    if kind == "id":
        return
    if kind == "merge":
        st._rung("E", j, l)
        st.release(j + 1)
    elif kind == "split":
        st.fetch(0, j + 1)
        st._rung("F", j, l)
    elif kind == "tagout":
        if cell.mode == "R":
            st.coeff = st.coeff * _sign(k * (n - k))
    elif kind == "tagin":
        if cell.mode == "L":
            st.coeff = st.coeff * _sign(k * (n - k))
    elif kind == "cup":
        if cell.mode == "-+":
            st.fetch(n, j)
            st.fetch(0, j + 1)
            st._rung("F", j, k)
        else:
            st.fetch(0, j)
            st.fetch(n, j + 1)
            st._rung("E", j, k)
            st.coeff = st.coeff * _sign(k * (n - k))
    elif kind == "cap":
        if cell.mode == "-+":
            st._rung("E", j, k)
            st.release(j + 1)
            st.release(j)
        else:
            st._rung("F", j, k)
            st.coeff = st.coeff * _sign(k * (n - k))
            st.release(j + 1)
            st.release(j)
    else:
        raise LadderizeError(f"unknown cell {cell}")


@dataclass
class LadderReport:
    equal: bool
    ladder: Optional[Ladder]
    witness: Optional[dict] = None

    def __bool__(self):
        return self.equal


def ladderize_verify(w: WebIR) -> LadderReport:
    """Ladderize and compare evaluations with 0- and n-labelled factors deleted."""
    lad = ladderize(w)
    a = strip_trivial(evaluate(w))
    b = strip_trivial(evaluate(ladder_to_web(lad)))
    if a.source != b.source or a.target != b.target:
        return LadderReport(False, lad, {"reason": f"boundary {a.source}->{a.target} vs {b.source}->{b.target}"})
    diff = a.first_difference(b)
    if diff is None:
        return LadderReport(True, lad)
    row, col, x, y = diff
    return LadderReport(False, lad, {"row": render_key(row), "col": render_key(col),
                                     "web": render_scalar(x), "ladder": render_scalar(y)})
