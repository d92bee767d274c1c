"""Evaluation of webs as U_q(sl_n)-linear maps between exterior powers."""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Dict, List, Sequence, Tuple

from .exterior import (Key, LinearMap, SpaceObject, Vector, add_into, cap_map, cup_map,
                       maps_equal, merge_map, split_map, tag_map, tagin_map)
from .scalar import Scalar, one
from .web import Cell, WebError, WebIR, WebLinComb, validate


class EvaluationError(ValueError):
    pass


@lru_cache(maxsize=None)
def cell_map(cell: Cell, n: int) -> LinearMap:
    k = cell.kind
    if k == "id":
        return LinearMap.identity(SpaceObject(n, ((cell.a, cell.mode),)))
    if k == "merge":
        return merge_map(cell.a, cell.b, n)
    if k == "split":
        return split_map(cell.a, cell.b, n)
    if k == "tagout":
        return tag_map(cell.a, n, cell.mode)
    if k == "tagin":
        return tagin_map(cell.a, n, cell.mode)
    if k == "cup":
        return cup_map(cell.a, n, cell.mode)
    if k == "cap":
        return cap_map(cell.a, n, cell.mode)
    raise EvaluationError(f"unknown cell {cell}")


def _row_column(row: Tuple[Cell, ...], n: int, key: Key, widths: Sequence[int]) -> Vector:
    pieces: List[List[Tuple[Key, Scalar]]] = []
    pos = 0
    for cell, w in zip(row, widths):
        chunk = key[pos:pos + w]
        pos += w
        if cell.kind == "id":
            pieces.append([(chunk, None)])
            continue
        col = cell_map(cell, n).cols.get(chunk)
        if not col:
            return {}
        pieces.append(list(col.items()))
    out: Vector = {}
    for combo in product(*pieces):
        k: Key = ()
        c = None
        for part, s in combo:
            k += part
            if s is not None:
                c = s if c is None else c * s
        out[k] = c if c is not None else one()
    return out


def _eval_single(w: WebIR) -> LinearMap:
    diag = validate(w)
    n = w.n
    if diag is not None and not diag.zero:
        raise EvaluationError(str(diag))
    source = SpaceObject(n, tuple(w.source))
    target = SpaceObject(n, tuple(w.target))
    if diag is not None:
        return LinearMap.zero(source, target)
    current: Dict[Key, Vector] = {k: {k: one()} for k in source.basis()}
    for row in w.rows:
        widths = [len(c.inputs(n)) for c in row]
        cache: Dict[Key, Vector] = {}
        nxt: Dict[Key, Vector] = {}
        for src_key, vec in current.items():
            acc: Vector = {}
            for key, c in vec.items():
                col = cache.get(key)
                if col is None:
                    col = cache[key] = _row_column(row, n, key, widths)
                for kk, s in col.items():
                    add_into(acc, kk, c * s)
            if acc:
                nxt[src_key] = acc
        current = nxt
    return LinearMap(source, target, current)


def evaluate(w) -> LinearMap:
    """The linear map of a web or of a linear combination of webs."""
    if isinstance(w, WebIR):
        return _eval_single(w)
    if isinstance(w, WebLinComb):
        if not w.terms:
            raise EvaluationError("empty linear combination has no boundary")
        root = w.terms[0][0].root
        total = None
        for c, t in w.terms:
            m = _eval_single(t)
            if root != 1:
                m = m.scale_root(root)
            m = m.scale(c)
            total = m if total is None else total + m
        return total
    raise TypeError(f"cannot evaluate {type(w).__name__}")


def eval_closed(w) -> Scalar:
    """Value of a web with empty source and target."""
    m = evaluate(w)
    if m.source.factors or m.target.factors:
        raise EvaluationError("web is not closed")
    return m.entry((), ())


def strip_trivial(m: LinearMap) -> LinearMap:
    """Identify every 0- or n-labelled factor with the ground field.

    Those spaces are one-dimensional with a canonical basis vector, so deleting
    them from both boundaries is an isomorphism of based spaces.
    """
    n = m.source.n

    def keep(obj: SpaceObject):
        return [j for j, (k, _) in enumerate(obj.factors) if k not in (0, n)]

    ks, kt = keep(m.source), keep(m.target)
    src = SpaceObject(n, tuple(m.source.factors[j] for j in ks))
    tgt = SpaceObject(n, tuple(m.target.factors[j] for j in kt))
    cols = {}
    for ck, col in m.cols.items():
        cols[tuple(ck[j] for j in ks)] = {tuple(rk[j] for j in kt): s for rk, s in col.items()}
    return LinearMap(src, tgt, cols, m.root)


def same_map(a, b) -> bool:
    """Evaluate both sides (webs or maps) and compare exactly."""
    ma = a if isinstance(a, LinearMap) else evaluate(a)
    mb = b if isinstance(b, LinearMap) else evaluate(b)
    if ma.root != mb.root:
        r = max(ma.root, mb.root)
        ma, mb = ma.scale_root(r), mb.scale_root(r)
    return ma.source == mb.source and ma.target == mb.target and maps_equal(ma, mb)


__all__ = ["evaluate", "eval_closed", "strip_trivial", "same_map", "cell_map",
           "EvaluationError", "maps_equal"]
