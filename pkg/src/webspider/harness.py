"""Relation campaigns, random webs, and the skew Howe rank comparison."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .exterior import MINUS, PLUS, LinearMap, SpaceObject, generator_map, render_key
from .functor import evaluate
from .qgroup import Ladder, UWord, n_bounded, ladder_web, word_matrix
from .scalar import Scalar, one, q, quantum_binomial, quantum_int, render as render_scalar, specialize
from .web import (Builder, WebIR, WebLinComb, as_lincomb, cap, cup, ident, merge, mirror_lin,
                  reverse_lin, split, tagin, tagout)


def _sign(e: int) -> Scalar:
    return one() if e % 2 == 0 else -one()


def _web(n, source, steps) -> WebIR:
    b = Builder(n, source)
    for pos, cell in steps:
        b.apply(pos, cell)
    return b.web()


def _up(*labels):
    return tuple((k, PLUS) for k in labels)


# relation catalogue ------------------------------------------------------------
# Each builder returns (lhs, rhs) as webs or linear combinations; None rhs means zero.

def rel_switch(n, k):
    lhs = _web(n, _up(k), [(0, tagout(k, "L"))])
    rhs = _web(n, _up(k), [(0, tagout(k, "R"))])
    return lhs, WebLinComb.single(rhs, _sign(k * (n - k)))


def rel_bigon1(n, k, l):
    lhs = _web(n, _up(k + l), [(0, split(k, l)), (0, merge(k, l))])
    return lhs, WebLinComb.single(WebIR(n, _up(k + l)), quantum_binomial(k + l, l))


def rel_bigon2(n, k, l):
    lhs = _web(n, _up(k), [(0, cup(l, "-+")), (1, merge(l, k)), (1, split(l, k)), (0, cap(l, "-+"))])
    return lhs, WebLinComb.single(WebIR(n, _up(k)), quantum_binomial(n - k, l))


def rel_ih(n, k, l, m):
    lhs = _web(n, _up(k, l, m), [(0, merge(k, l)), (0, merge(k + l, m))])
    rhs = _web(n, _up(k, l, m), [(1, merge(l, m)), (0, merge(k, l + m))])
    return lhs, rhs


def _rotated_merge(b: Builder, pos: int, a: int, k: int, n: int):
    """At (k+, (a+k)-) starting at ``pos``: produce a- by a merge of (a, k) bent around."""
    b.apply(pos, cup(a, "-+"))
    b.apply(pos + 1, merge(a, k))
    b.apply(pos + 1, cap(a + k, "+-"))


def rel_tag_migration(n, k, l):
    lhs = _web(n, _up(k, l), [(0, merge(k, l)), (0, tagout(k + l, "R"))])
    b = Builder(n, _up(k, l))
    b.apply(1, tagout(l, "R"))
    _rotated_merge(b, 0, n - k - l, k, n)
    return lhs, b.web()


def _reversed_merge(b: Builder, pos: int, a: int, k: int):
    """At (a-, k-) starting at ``pos``: the arrow reversal of merge(a, k), giving (a+k)-."""
    b.apply(pos + 2, cup(a + k, "+-"))
    b.apply(pos + 2, split(k, a))
    b.apply(pos + 1, cap(k, "-+"))
    b.apply(pos, cap(a, "-+"))


def rel_tag_migration2(n, k, l):
    src = ((k + l, PLUS), (k, MINUS))
    lhs = _web(n, src, [(0, split(l, k)), (1, cap(k, "+-")), (0, tagout(l, "L"))])
    b = Builder(n, src)
    b.apply(0, tagout(k + l, "L"))
    _reversed_merge(b, 0, n - k - l, k)
    return lhs, b.web()


def ladder_en(n, a, b, r) -> WebIR:
    """Rung moving r from the left upright to the right one."""
    return ladder_web(Ladder(n, (a, b), (("F", 1, r),)))


def _ladder_or_zero(n, source, rungs):
    L = Ladder(n, tuple(source), tuple(x for x in rungs if x[2] > 0))
    return ladder_web(L) if L.is_valid() else None


def rel_square_removal(n, k, l, r, s):
    lhs = _ladder_or_zero(n, (k, l), [("F", 1, s), ("F", 1, r)])
    rhs = _ladder_or_zero(n, (k, l), [("F", 1, r + s)])
    return lhs, (WebLinComb.single(rhs, quantum_binomial(r + s, r)) if rhs else None)


def rel_square_switch(n, k, l, r, s):
    lhs = _ladder_or_zero(n, (k, l), [("F", 1, s), ("E", 1, r)])
    terms = []
    for t in range(0, min(r, s) + 1):
        w = _ladder_or_zero(n, (k, l), [("E", 1, r - t), ("F", 1, s - t)])
        c = quantum_binomial(k - l + r - s, t)
        if w is not None and c:
            terms.append((c, w))
    return lhs, (WebLinComb.of(terms) if terms else None)


def rel_loop(n, k):
    lhs = _web(n, (), [(0, cup(k, "-+")), (0, cap(k, "-+"))])
    return lhs, WebLinComb.single(WebIR(n, ()), quantum_binomial(n, k))


def rel_cancel_tags(n, k):
    lhs = _web(n, _up(k), [(0, tagout(k, "L")), (0, tagin(n - k, "R"))])
    return lhs, WebIR(n, _up(k))


def rel_serre(n, k1, k2, k3, g):
    def lad(rungs):
        return _ladder_or_zero(n, (k1, k2, k3), [(g, i, 1) for i in rungs])
    terms = [(one(), lad([1, 1, 2])), (-quantum_int(2), lad([1, 2, 1])), (one(), lad([2, 1, 1]))]
    terms = [(c, w) for c, w in terms if w is not None]
    return (WebLinComb.of(terms) if terms else None), None


@dataclass(frozen=True)
class Relation:
    name: str
    builder: Callable
    grid: Callable[[int, int], List[Tuple]]


def _labels(n, mx):
    return range(0, min(n, mx) + 1)


RELATIONS: Dict[str, Relation] = {
    "2.1": Relation("switch", rel_switch, lambda n, mx: [(k,) for k in _labels(n, mx)]),
    "2.2": Relation("bigon1", rel_bigon1,
                    lambda n, mx: [(k, l) for k in _labels(n, mx) for l in _labels(n, mx) if k + l <= n]),
    "2.3": Relation("bigon2", rel_bigon2,
                    lambda n, mx: [(k, l) for k in _labels(n, mx) for l in _labels(n, mx) if k + l <= n]),
    "2.4": Relation("IH", rel_ih,
                    lambda n, mx: [(k, l, m) for k in _labels(n, mx) for l in _labels(n, mx)
                                   for m in _labels(n, mx) if k + l + m <= n]),
    "2.5": Relation("tag-migration", rel_tag_migration,
                    lambda n, mx: [(k, l) for k in _labels(n, mx) for l in _labels(n, mx) if k + l <= n]),
    "2.6": Relation("tag-migration2", rel_tag_migration2,
                    lambda n, mx: [(k, l) for k in _labels(n, mx) for l in _labels(n, mx) if k + l <= n]),
    "2.7": Relation("square-removal", rel_square_removal,
                    lambda n, mx: [(k, l, r, s) for k in _labels(n, mx) for l in _labels(n, mx)
                                   for r in range(1, n + 1) for s in range(1, n + 1)
                                   if r + s <= k]),
    "2.8": Relation("square-switch", rel_square_switch,
                    lambda n, mx: [(k, l, r, s) for k in _labels(n, mx) for l in _labels(n, mx)
                                   for r in range(1, n + 1) for s in range(1, n + 1)
                                   if s <= k and l + s <= n]),
    "2.9": Relation("loop", rel_loop, lambda n, mx: [(k,) for k in _labels(n, mx)]),
    "2.10": Relation("cancel-tags", rel_cancel_tags, lambda n, mx: [(k,) for k in _labels(n, mx)]),
    "2.11": Relation("serre", rel_serre,
                     lambda n, mx: [(a, b, c, g) for a in _labels(n, mx) for b in _labels(n, mx)
                                    for c in _labels(n, mx) for g in ("E", "F")]),
}

VARIANTS = ("plain", "mirror", "reversed", "mirror+reversed")


def _variant(x, variant):
    if x is None:
        return None
    x = as_lincomb(x)
    if "mirror" in variant:
        x = mirror_lin(x)
    if "reversed" in variant:
        x = reverse_lin(x)
    return x


def _side_map(x, other) -> LinearMap:
    if x is not None:
        return evaluate(x)
    ref = evaluate(other)
    return LinearMap.zero(ref.source, ref.target, ref.root)


@dataclass
class CheckRecord:
    relation: str
    params: Dict
    status: str
    witness: Optional[Dict] = None

    def as_dict(self):
        d = {"relation": self.relation, "params": self.params, "status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


def _witness(diff) -> Dict:
    row, col, a, b = diff
    return {"row": render_key(row), "col": render_key(col),
            "lhs": render_scalar(a), "rhs": render_scalar(b)}


def check_relation(rel_id: str, n: int, params: Tuple, variant: str = "plain",
                   perturb: bool = False) -> CheckRecord:
    rel = RELATIONS[rel_id]
    lhs, rhs = rel.builder(n, *params)
    if perturb and rhs is not None:
        rhs = as_lincomb(rhs).scale(q(1))
    lhs, rhs = _variant(lhs, variant), _variant(rhs, variant)
    info = {"n": n, "labels": list(params), "variant": variant}
    if lhs is None and rhs is None:
        return CheckRecord(rel_id, info, "pass")
    a, b = _side_map(lhs, rhs), _side_map(rhs, lhs)
    diff = a.first_difference(b)
    if diff is None:
        return CheckRecord(rel_id, info, "pass")
    return CheckRecord(rel_id, info, "fail", _witness(diff))


def relcheck(n: int, max_label: Optional[int] = None, relations: Optional[Sequence[str]] = None,
             variants: Sequence[str] = VARIANTS, perturb: Optional[str] = None) -> List[CheckRecord]:
    """Check every relation instance on its full label grid.

    ``perturb`` names one relation whose right side is multiplied by q, as a
    negative control that must fail.
    """
    mx = n if max_label is None else max_label
    out = []
    for rel_id in (relations or RELATIONS):
        if rel_id not in RELATIONS:
            raise KeyError(f"unknown relation {rel_id!r}")
        for params in RELATIONS[rel_id].grid(n, mx):
            for v in variants:
                out.append(check_relation(rel_id, n, params, v, perturb == rel_id))
    return out


# random webs -------------------------------------------------------------------

def _moves(n: int, boundary, rng: random.Random):
    moves = []
    for j, (k, s) in enumerate(boundary):
        if s == PLUS:
            if j + 1 < len(boundary) and boundary[j + 1][1] == PLUS and k + boundary[j + 1][0] <= n:
                moves.append((j, merge(k, boundary[j + 1][0])))
            if k >= 2:
                a = rng.randint(1, k - 1)
                moves.append((j, split(a, k - a)))
            if 1 <= k <= n - 1:
                moves.append((j, tagout(k, rng.choice("LR"))))
        else:
            moves.append((j, tagin(k, rng.choice("LR"))))
        if j + 1 < len(boundary):
            (k2, s2) = boundary[j + 1]
            if k2 == k and s2 != s:
                moves.append((j, cap(k, s + s2)))
    for j in range(len(boundary) + 1):
        moves.append((j, cup(rng.randint(1, n - 1), rng.choice(["-+", "+-"]))))
    return moves


def random_web(n: int, cell_budget: int, seed: int, max_width: int = 5) -> WebIR:
    """Seeded random web with upward source and target, using at most ``cell_budget`` cells."""
    rng = random.Random(f"{n}:{cell_budget}:{seed}")
    width = rng.randint(1, 3)
    source = _up(*(rng.randint(1, n - 1) for _ in range(width)))
    b = Builder(n, source)
    used = 0
    while used < cell_budget:
        minus_now = sum(1 for _, s in b.boundary if s == MINUS)
        options = []
        for pos, cell in _moves(n, b.boundary, rng):
            after = list(b.boundary)
            w = len(cell.inputs(n))
            after[pos:pos + w] = cell.outputs(n)
            if len(after) > max_width:
                continue
            minus_after = sum(1 for _, s in after if s == MINUS)
            if used + 1 + minus_after <= cell_budget:
                options.append((pos, cell))
        if not options or rng.random() < 0.1:
            break
        pos, cell = rng.choice(options)
        b.apply(pos, cell)
        used += 1
    for j, (k, s) in enumerate(list(b.boundary)):
        if s == MINUS:
            b.apply(j, tagin(k, rng.choice("LR")))
    return b.web()


# skew Howe rank -------------------------------------------------------------------

GENERIC_POINTS = (Fraction(7, 5), Fraction(13, 9))


def _to_qq(x: Fraction):
    return QQ(x.numerator, x.denominator)


def _specialized(m: LinearMap, u0: Fraction):
    """Dense rational matrix (list of rows) in basis order."""
    rows = m.target.basis()
    cols = m.source.basis()
    ridx = {k: i for i, k in enumerate(rows)}
    mat = [[QQ(0)] * len(cols) for _ in rows]
    for j, ck in enumerate(cols):
        for rk, s in m.cols.get(ck, {}).items():
            mat[ridx[rk]][j] = _to_qq(specialize(s, u0))
    return mat


def _matmul(a, b):
    if not a or not b:
        return [[QQ(0)] * (len(b[0]) if b else 0) for _ in a]
    return (DomainMatrix(a, (len(a), len(a[0])), QQ) * DomainMatrix(b, (len(b), len(b[0])), QQ)).to_list()


def _rank(vectors) -> int:
    if not vectors:
        return 0
    return DomainMatrix(vectors, (len(vectors), len(vectors[0])), QQ).rank()


def weights_of(n: int, m: int, K: int):
    return [k for k in product(range(n + 1), repeat=m) if sum(k) == K]


def howe_span_dim(n: int, m: int, K: int, u0: Fraction) -> int:
    """Dimension of the span of all word images between weight spaces of total K."""
    weights = weights_of(n, m, K)
    gens = {}
    for k in weights:
        for g in ("E", "F"):
            for i in range(1, m):
                w = UWord(k, ((g, i, 1),))
                if n_bounded(w.target, n):
                    gens[(k, g, i)] = (w.target, _specialized(word_matrix(w, n), u0))
    dims = {k: SpaceObject.upward(n, k).dim() for k in weights}
    spans: Dict[Tuple, List[List]] = {}
    queue = []
    for k in weights:
        d = dims[k]
        ident_mat = [[QQ(1) if i == j else QQ(0) for j in range(d)] for i in range(d)]
        spans[(k, k)] = [sum(ident_mat, [])]
        queue.append((k, k, ident_mat))
    while queue:
        src, tgt, X = queue.pop()
        for g in ("E", "F"):
            for i in range(1, len(src)):
                key = (tgt, g, i)
                if key not in gens:
                    continue
                new_t, G = gens[key]
                Y = _matmul(G, X)
                flat = sum(Y, [])
                if not any(flat):
                    continue
                basis = spans.setdefault((src, new_t), [])
                if _rank(basis + [flat]) > len(basis):
                    basis.append(flat)
                    queue.append((src, new_t, Y))
    return sum(len(v) for v in spans.values())


def commutant_dim(n: int, m: int, K: int, u0: Fraction) -> int:
    """Sum over weight pairs of dim Hom_{U_q(sl_n)}(V_k, V_l), by solving X g = g X."""
    weights = weights_of(n, m, K)
    reps = {}
    for k in weights:
        obj = SpaceObject.upward(n, k)
        mats = []
        for g in ("E", "F", "K"):
            for i in range(1, n):
                mats.append(_specialized(generator_map(g, i, obj), u0))
        reps[k] = mats
    total = 0
    for k in weights:
        for l in weights:
            dk = SpaceObject.upward(n, k).dim()
            dl = SpaceObject.upward(n, l).dim()
            rows = []
            # unknown X is dl x dk, index (a, b) -> a*dk + b
            for A, B in zip(reps[k], reps[l]):
                for a in range(dl):
                    for c in range(dk):
                        eq = [QQ(0)] * (dl * dk)
                        for b in range(dk):
                            if A[b][c]:
                                eq[a * dk + b] += A[b][c]
                        for b in range(dl):
                            if B[a][b]:
                                eq[b * dk + c] -= B[a][b]
                        if any(eq):
                            rows.append(eq)
            total += dl * dk - _rank(rows)
    return total


@dataclass
class HoweReport:
    n: int
    m: int
    K: int
    span: Tuple[int, ...]
    commutant: Tuple[int, ...]

    @property
    def equal(self) -> bool:
        return len(set(self.span) | set(self.commutant)) == 1


def howe_rank(n: int, m: int, K: int, points: Sequence[Fraction] = GENERIC_POINTS) -> HoweReport:
    span = tuple(howe_span_dim(n, m, K, Fraction(p)) for p in points)
    comm = tuple(commutant_dim(n, m, K, Fraction(p)) for p in points)
    return HoweReport(n, m, K, span, comm)
