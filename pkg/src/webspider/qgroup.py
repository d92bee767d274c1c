"""Idempotented U_q(gl_m) words, ladders, and the skew Howe action on wedge bases.

Weights are tuples of integers.  A word is written as in ``F1^2 E2`` and acts
right to left, so the rightmost letter is applied first.  ``X^r`` always means
the divided power X^(r).  Ladder rungs are stored bottom to top.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .exterior import (Key, LinearMap, SpaceObject, Vector, add_into, ell,
                       subsets)
from .functor import evaluate
from .scalar import (Scalar, minus_q_power, one, quantum_binomial, quantum_factorial,
                     render as render_scalar, zero)
from .web import Builder, WebIR, WebLinComb, id_row, merge, split

Weight = Tuple[int, ...]
Letter = Tuple[str, int, int]   # (generator E|F, index i >= 1, multiplicity r >= 0)


class QGroupError(ValueError):
    pass


def n_bounded(weight: Sequence[int], n: int) -> bool:
    return all(0 <= k <= n for k in weight)


def shift(weight: Sequence[int], letter: Letter) -> Weight:
    """Weight after applying one letter: E_i^(r) adds r*alpha_i, F_i^(r) subtracts it."""
    gen, i, r = letter
    if not 1 <= i < len(weight):
        raise QGroupError(f"index {i} out of range for m={len(weight)}")
    w = list(weight)
    d = r if gen == "E" else -r
    w[i - 1] += d
    w[i] -= d
    return tuple(w)


@dataclass(frozen=True)
class UWord:
    source: Weight
    letters: Tuple[Letter, ...] = ()

    def weights(self) -> List[Weight]:
        """Running weights from the source through each applied letter."""
        out = [tuple(self.source)]
        for letter in reversed(self.letters):
            out.append(shift(out[-1], letter))
        return out

    @property
    def target(self) -> Weight:
        return self.weights()[-1]

    def then(self, later: "UWord") -> "UWord":
        """This word followed by ``later`` (so ``later`` is written on the left)."""
        if later.source != self.target:
            raise QGroupError("weights do not match")
        return UWord(self.source, later.letters + self.letters)

    def render(self) -> str:
        return render_letters(self.letters)


def render_letters(letters: Sequence[Letter]) -> str:
    parts = []
    for g, i, r in letters:
        parts.append(f"{g}{i}" if r == 1 else f"{g}{i}^{r}")
    return " ".join(parts) if parts else "1"


_LETTER = re.compile(r"^([EF])(\d+)(?:\^\(?(\d+)\)?)?$")


def parse_uword(text: str, source: Sequence[int]) -> UWord:
    letters = []
    body = text.strip()
    if body and body != "1":
        for tok in body.split():
            m = _LETTER.match(tok)
            if not m:
                raise QGroupError(f"bad letter {tok!r}")
            r = int(m.group(3)) if m.group(3) else 1
            letters.append((m.group(1), int(m.group(2)), r))
    w = UWord(tuple(source), tuple(letters))
    w.weights()
    return w


# ladders ------------------------------------------------------------------

@dataclass(frozen=True)
class Ladder:
    n: int
    source: Weight
    rungs: Tuple[Letter, ...] = ()     # bottom to top
    coeff: Scalar = field(default_factory=one)

    @property
    def m(self) -> int:
        return len(self.source)

    def weights(self) -> List[Weight]:
        out = [tuple(self.source)]
        for rung in self.rungs:
            out.append(shift(out[-1], rung))
        return out

    @property
    def target(self) -> Weight:
        return self.weights()[-1]

    def is_valid(self) -> bool:
        try:
            return all(n_bounded(w, self.n) for w in self.weights())
        except QGroupError:
            return False

    def word(self) -> UWord:
        return UWord(tuple(self.source), tuple(reversed(self.rungs)))

    def render(self) -> str:
        src = ",".join(map(str, self.source))
        lines = [f"ladder n={self.n} src=({src})"]
        if self.coeff != 1:
            lines.append(f"coeff {render_scalar(self.coeff)}")
        lines.extend(f"{g} {i} {r}" for g, i, r in self.rungs)
        return "\n".join(lines) + "\n"


_LADDER_HEADER = re.compile(r"^ladder\s+n=(\d+)\s+src=\(([^)]*)\)\s*$")


def parse_ladder(text: str) -> Ladder:
    from .scalar import parse as parse_scalar
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise QGroupError("empty ladder")
    m = _LADDER_HEADER.match(lines[0])
    if not m:
        raise QGroupError("expected header 'ladder n=<int> src=(k1,...)'")
    n = int(m.group(1))
    src = tuple(int(t) for t in m.group(2).split(",") if t.strip())
    coeff = one()
    rungs = []
    for ln in lines[1:]:
        if ln.startswith("coeff "):
            coeff = parse_scalar(ln[6:])
            continue
        parts = ln.split()
        if len(parts) != 3 or parts[0] not in ("E", "F"):
            raise QGroupError(f"bad rung line {ln!r}")
        rungs.append((parts[0], int(parts[1]), int(parts[2])))
    lad = Ladder(n, src, tuple(rungs), coeff)
    if not lad.is_valid():
        raise QGroupError("ladder leaves the n-bounded range")
    return lad


def word_to_ladder(word: UWord, n: int) -> Optional[Ladder]:
    """One rung per letter, or None when some weight is not n-bounded."""
    lad = Ladder(n, tuple(word.source), tuple(reversed(word.letters)))
    return lad if lad.is_valid() else None


def _rung_rows(weight: Weight, rung: Letter, n: int):
    gen, i, r = rung
    a, b = weight[i - 1], weight[i]
    left = id_row((k, "+") for k in weight[:i - 1])
    right = id_row((k, "+") for k in weight[i + 1:])
    if gen == "E":
        # r moves from upright i+1 to upright i
        lower = left + id_row([(a, "+")]) + (split(r, b - r),) + right
        upper = left + (merge(a, r),) + id_row([(b - r, "+")]) + right
    else:
        lower = left + (split(a - r, r),) + id_row([(b, "+")]) + right
        upper = left + id_row([(a - r, "+")]) + (merge(r, b),) + right
    return lower, upper


def ladder_web(lad: Ladder) -> WebIR:
    """The web of a ladder, ignoring its coefficient."""
    rows = []
    cur = tuple(lad.source)
    for rung in lad.rungs:
        if rung[2] == 0:
            cur = shift(cur, rung)
            continue
        rows.extend(_rung_rows(cur, rung, lad.n))
        cur = shift(cur, rung)
    return WebIR(lad.n, tuple((k, "+") for k in lad.source), tuple(rows))


def ladder_to_web(lad: Ladder):
    w = ladder_web(lad)
    if lad.coeff == 1:
        return w
    return WebLinComb.single(w, lad.coeff)


def eval_ladder(lad: Ladder) -> LinearMap:
    return evaluate(ladder_to_web(lad))


def mirror_ladder(lad: Ladder) -> Ladder:
    """Left-right reflection: uprights reversed, E and F rungs exchanged."""
    m = lad.m
    flip = {"E": "F", "F": "E"}
    return Ladder(lad.n, tuple(reversed(lad.source)),
                  tuple((flip[g], m - i, r) for g, i, r in lad.rungs), lad.coeff)


# evaluation of words ---------------------------------------------------------

def word_matrix(word: UWord, n: int) -> LinearMap:
    """Image of a word in Rep(SL_n) via ladders and webs (zero if truncated)."""
    src = SpaceObject.upward(n, word.source)
    lad = word_to_ladder(word, n)
    if lad is None:
        tgt = word.target
        return LinearMap.zero(src, SpaceObject.upward(n, tgt))
    return eval_ladder(lad)


def lincomb_matrix(terms: Iterable[Tuple[Scalar, UWord]], n: int,
                   source: Weight, target: Weight, method: str = "ladder") -> LinearMap:
    total = LinearMap.zero(SpaceObject.upward(n, source), SpaceObject.upward(n, target))
    for c, w in terms:
        if w.source != tuple(source) or w.target != tuple(target):
            raise QGroupError("term weights do not match")
        m = word_matrix(w, n) if method == "ladder" else phi_matrix(w, n)
        total = total + m.scale(c)
    return total


# the direct skew Howe action ------------------------------------------------

def _without(s, r):
    return tuple(x for x in s if x != r)


def _with(s, r):
    return tuple(sorted(s + (r,)))


def _phi_single(gen: str, p: int, key: Key, n: int) -> Vector:
    left, right = key[p - 1], key[p]
    out: Vector = {}
    if gen == "E":
        sign = 1 if len(right) % 2 else -1
        for r in right:
            if r in left:
                continue
            below = sum(1 for s in right if s < r)
            c = minus_q_power(-below) * minus_q_power(ell(left, (r,)))
            new = key[:p - 1] + (_with(left, r), _without(right, r)) + key[p + 1:]
            add_into(out, new, c * sign)
    else:
        sign = 1 if len(left) % 2 else -1
        for r in left:
            if r in right:
                continue
            above = sum(1 for s in left if s > r)
            c = minus_q_power(-above) * minus_q_power(ell((r,), right))
            new = key[:p - 1] + (_without(left, r), _with(right, r)) + key[p + 1:]
            add_into(out, new, c * sign)
    return out


def _apply_single(gen: str, p: int, vec: Vector, n: int) -> Vector:
    out: Vector = {}
    for key, c in vec.items():
        for k2, d in _phi_single(gen, p, key, n).items():
            add_into(out, k2, c * d)
    return out


def phi_action(word: UWord, n: int, vec: Vector) -> Vector:
    """Act by a word on a vector of the source weight space."""
    for key in vec:
        if tuple(len(s) for s in key) != tuple(word.source):
            raise QGroupError("vector does not lie in the source weight space")
    for gen, p, r in reversed(word.letters):
        for _ in range(r):
            vec = _apply_single(gen, p, vec, n)
        if r > 1:
            fact = quantum_factorial(r)
            vec = {k: c.exact_div(fact) for k, c in vec.items()}
    return vec


def phi_matrix(word: UWord, n: int) -> LinearMap:
    src = SpaceObject.upward(n, word.source)
    tgt = SpaceObject.upward(n, word.target)
    if not n_bounded(word.source, n):
        return LinearMap.zero(src, tgt)
    cols = {k: phi_action(word, n, {k: one()}) for k in src.basis()}
    return LinearMap(src, tgt, cols)


# U relations ----------------------------------------------------------------

def _w(source, *letters) -> UWord:
    return UWord(tuple(source), tuple(l for l in letters if l[2] > 0))


def u_relation_sides(rel: str, params: Tuple, weight: Weight):
    """Both sides of a defining relation at ``weight`` as lists of (coeff, word)."""
    k = tuple(weight)
    if rel == "4.1":
        i, r, s = params
        pair = k[i - 1] - k[i]
        lhs = [(one(), _w(k, ("E", i, r), ("F", i, s)))]
        rhs = [(quantum_binomial(pair + r - s, t), _w(k, ("F", i, s - t), ("E", i, r - t)))
               for t in range(0, min(r, s) + 1)]
        return lhs, rhs
    if rel == "4.2":
        i, j, r, s = params
        return ([(one(), _w(k, ("E", i, r), ("F", j, s)))],
                [(one(), _w(k, ("F", j, s), ("E", i, r)))])
    if rel == "4.3":
        i, j, g = params
        lhs = [(one(), _w(k, (g, i, 1), (g, j, 1), (g, i, 1)))]
        rhs = [(one(), _w(k, (g, i, 2), (g, j, 1))), (one(), _w(k, (g, j, 1), (g, i, 2)))]
        return lhs, rhs
    if rel == "4.4":
        i, j, r, s, g = params
        return ([(one(), _w(k, (g, i, r), (g, j, s)))],
                [(one(), _w(k, (g, j, s), (g, i, r)))])
    if rel == "4.5":
        i, r, s, g = params
        return ([(one(), _w(k, (g, i, s), (g, i, r)))],
                [(quantum_binomial(r + s, r), _w(k, (g, i, r + s)))])
    raise QGroupError(f"unknown relation {rel!r}")


def check_u_relation(rel: str, params: Tuple, n: int, weight: Weight, method: str = "ladder"):
    """Return None when both sides agree, else a witness (row, col, lhs, rhs)."""
    lhs, rhs = u_relation_sides(rel, params, weight)
    tgt = lhs[0][1].target
    a = lincomb_matrix(lhs, n, tuple(weight), tgt, method)
    b = lincomb_matrix(rhs, n, tuple(weight), tgt, method)
    return a.first_difference(b)


def u_relation_grid(m: int, n: int, max_r: int = 2):
    """All (relation, params, weight) instances with n-bounded source weights."""
    from itertools import product as iproduct
    weights = list(iproduct(range(n + 1), repeat=m))
    idx = range(1, m)
    out = []
    for k in weights:
        for i in idx:
            for r in range(1, max_r + 1):
                for s in range(1, max_r + 1):
                    out.append(("4.1", (i, r, s), k))
                    for g in ("E", "F"):
                        out.append(("4.5", (i, r, s, g), k))
            for j in idx:
                if j != i:
                    for r in range(1, max_r + 1):
                        for s in range(1, max_r + 1):
                            out.append(("4.2", (i, j, r, s), k))
                if abs(i - j) == 1:
                    for g in ("E", "F"):
                        out.append(("4.3", (i, j, g), k))
                if abs(i - j) > 1:
                    for r in range(1, max_r + 1):
                        for s in range(1, max_r + 1):
                            for g in ("E", "F"):
                                out.append(("4.4", (i, j, r, s, g), k))
    return out


# ladder relations --------------------------------------------------------------

def ladder_relation_sides(rel: str, params: Tuple, weight: Weight, n: int):
    """Both sides of a ladder relation as lists of (coeff, Ladder-or-None)."""
    k = tuple(weight)

    def lad(*rungs):
        L = Ladder(n, k, tuple(x for x in rungs if x[2] > 0))
        return L if L.is_valid() else None

    if rel == "5.1":
        r, s = params   # F rung on 1-2, E rung on 2-3
        return [(one(), lad(("F", 1, r), ("E", 2, s)))], [(one(), lad(("E", 2, s), ("F", 1, r)))]
    if rel == "5.2":
        r, s = params
        return [(one(), lad(("E", 1, r), ("F", 2, s)))], [(one(), lad(("F", 2, s), ("E", 1, r)))]
    if rel == "5.3":
        r, s = params
        return ([(one(), lad(("F", 1, s), ("F", 1, r)))],
                [(quantum_binomial(r + s, r), lad(("F", 1, r + s)))])
    if rel == "5.4":
        r, s = params
        kk, ll = k[0], k[1]
        lhs = [(one(), lad(("F", 1, s), ("E", 1, r)))]
        rhs = [(quantum_binomial(kk - ll + r - s, t), lad(("E", 1, r - t), ("F", 1, s - t)))
               for t in range(0, min(r, s) + 1)]
        return lhs, rhs
    if rel == "5.5":
        (g,) = params
        a = lad((g, 1, 1), (g, 1, 1), (g, 2, 1))
        b = lad((g, 1, 1), (g, 2, 1), (g, 1, 1))
        c = lad((g, 2, 1), (g, 1, 1), (g, 1, 1))
        from .scalar import quantum_int
        return [(one(), a), (-quantum_int(2), b), (one(), c)], []
    raise QGroupError(f"unknown ladder relation {rel!r}")


def _sum_ladders(terms, n, source, target, mirror: bool = False) -> LinearMap:
    from .web import mirror as mirror_web
    if mirror:
        source, target = tuple(reversed(source)), tuple(reversed(target))
    total = LinearMap.zero(SpaceObject.upward(n, source), SpaceObject.upward(n, target))
    for c, L in terms:
        if L is None:
            continue
        w = ladder_web(L)
        if mirror:
            w = mirror_web(w)
        total = total + evaluate(w).scale(c * L.coeff)
    return total


def ladder_relation_target(rel: str, params: Tuple, weight: Weight) -> Weight:
    k = tuple(weight)
    if rel == "5.1":
        r, s = params
        return shift(shift(k, ("F", 1, r)), ("E", 2, s))
    if rel == "5.2":
        r, s = params
        return shift(shift(k, ("E", 1, r)), ("F", 2, s))
    if rel == "5.3":
        r, s = params
        return shift(k, ("F", 1, r + s))
    if rel == "5.4":
        r, s = params
        return shift(shift(k, ("F", 1, s)), ("E", 1, r))
    if rel == "5.5":
        (g,) = params
        return shift(shift(k, (g, 1, 2)), (g, 2, 1))
    raise QGroupError(rel)


def check_ladder_relation(rel: str, params: Tuple, n: int, weight: Weight, mirror: bool = False):
    lhs, rhs = ladder_relation_sides(rel, params, weight, n)
    tgt = ladder_relation_target(rel, params, weight)
    a = _sum_ladders(lhs, n, weight, tgt, mirror)
    b = _sum_ladders(rhs, n, weight, tgt, mirror)
    return a.first_difference(b)


def ladder_relation_grid(n: int, max_r: int = 2):
    from itertools import product as iproduct
    out = []
    for k in iproduct(range(n + 1), repeat=3):
        for r in range(1, max_r + 1):
            for s in range(1, max_r + 1):
                out.append(("5.1", (r, s), k))
                out.append(("5.2", (r, s), k))
        for g in ("E", "F"):
            out.append(("5.5", (g,), k))
    for k in iproduct(range(n + 1), repeat=2):
        for r in range(1, max_r + 1):
            for s in range(1, max_r + 1):
                out.append(("5.3", (r, s), k))
                out.append(("5.4", (r, s), k))
    return out
