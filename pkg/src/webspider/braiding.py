"""Braiding elements, crossing webs, and colored invariants of braid closures.

Everything here uses root order N = n so that q^(1/n) is available.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import sympy
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .exterior import PLUS, LinearMap, SpaceObject
from .functor import evaluate
from .qgroup import Ladder, UWord, ladder_web, n_bounded, phi_matrix, word_matrix
from .scalar import Scalar, minus_q_power, one, quantum_binomial, zero
from .web import Builder, WebIR, WebLinComb, cap, cup, tagin, tagout


class BraidError(ValueError):
    pass


def _swap(weight, i):
    w = list(weight)
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def _word_map(letters, weight, n, method):
    w = UWord(tuple(weight), tuple(l for l in letters if l[2] > 0))
    if not all(n_bounded(x, n) for x in w.weights()):
        return None
    return phi_matrix(w, n) if method == "phi" else word_matrix(w, n)


def _accumulate(total, m):
    return m if total is None else total + m


def lusztig_double_prime(i: int, weight: Sequence[int], n: int, form: str = "single",
                         method: str = "phi") -> LinearMap:
    """Matrix of T''_{i,-1} 1_k on the weight space, with root order 1."""
    k = tuple(weight)
    h = k[i - 1] - k[i]
    src = SpaceObject.upward(n, k)
    tgt = SpaceObject.upward(n, _swap(k, i))
    total = LinearMap.zero(src, tgt)
    if form == "single":
        for b in range(0, n + 1):
            a = b - h
            if a < 0:
                continue
            m = _word_map([("E", i, a), ("F", i, b)], k, n, method)
            if m is not None:
                total = total + m.scale(minus_q_power(-b))
    elif form == "triple":
        for b in range(0, 2 * n + 1):
            for c in range(0, n + 1):
                a = b - c - h
                if a < 0:
                    continue
                m = _word_map([("E", i, a), ("F", i, b), ("E", i, c)], k, n, method)
                if m is not None:
                    c0 = Scalar.q_power(a * c - b, -1 if b % 2 else 1)
                    total = total + m.scale(c0)
    else:
        raise BraidError(f"unknown form {form!r}")
    return total


def prefactor(ki: int, kj: int, n: int) -> Scalar:
    """(-1)^(k_i + k_i k_{i+1}) q^(k_i - k_i k_{i+1}/n) with root order n."""
    sign = -1 if (ki + ki * kj) % 2 else 1
    return Scalar.u_power(n * ki - ki * kj, sign, root=n)


def lusztig_T(i: int, weight: Sequence[int], n: int, form: str = "single",
              method: str = "phi") -> LinearMap:
    k = tuple(weight)
    m = lusztig_double_prime(i, k, n, form, method).scale_root(n)
    return m.scale(prefactor(k[i - 1], k[i], n))


def lusztig_T_inverse_formula(i: int, weight: Sequence[int], n: int, method: str = "phi") -> LinearMap:
    """Inverse of T_i, landing on ``weight``: sum over a-b = h of (-q)^b F^(a) E^(b), rescaled."""
    k = tuple(weight)                 # target of the inverse
    lam = _swap(k, i)                 # its source
    h = lam[i - 1] - lam[i]
    total = LinearMap.zero(SpaceObject.upward(n, lam), SpaceObject.upward(n, k))
    for b in range(0, n + 1):
        a = b + h
        if a < 0:
            continue
        m = _word_map([("F", i, a), ("E", i, b)], lam, n, method)
        if m is not None:
            total = total + m.scale(minus_q_power(b))
    return total.scale_root(n).scale(prefactor(k[i - 1], k[i], n).inverse())


# exact inverse --------------------------------------------------------------------

_U = sympy.Symbol("u")


def inverse_map(m: LinearMap) -> LinearMap:
    """Exact inverse of a square map with Laurent entries."""
    src, tgt = m.source.basis(), m.target.basis()
    if len(src) != len(tgt):
        raise BraidError("map is not square")
    if not src:
        return LinearMap(m.target, m.source, {}, m.root)
    exps = [e for col in m.cols.values() for s in col.values() for e, _ in s.items()]
    lo = min(exps) if exps else 0
    field = QQ.frac_field(_U)
    ridx = {k: r for r, k in enumerate(tgt)}
    rows = [[field.zero] * len(src) for _ in tgt]
    for j, ck in enumerate(src):
        for rk, s in m.cols.get(ck, {}).items():
            poly = sum(sympy.Rational(c.numerator, c.denominator) * _U ** (e - lo) for e, c in s.items())
            rows[ridx[rk]][j] = field.from_sympy(poly)
    inv = DomainMatrix(rows, (len(tgt), len(src)), field).inv().to_Matrix()
    cols = {}
    for j, rk in enumerate(tgt):          # column of inverse indexed by target key
        col = {}
        for r, ck in enumerate(src):
            expr = sympy.cancel(inv[r, j])
            if expr == 0:
                continue
            col[ck] = _laurent(expr, lo, m.root)
        cols[rk] = col
    return LinearMap(m.target, m.source, cols, m.root)


def _laurent(expr, shift: int, root: int) -> Scalar:
    """Entry of the inverse of u^shift * P, given the entry ``expr`` of P^-1."""
    num, den = sympy.fraction(sympy.together(expr))
    den_terms = sympy.Poly(den, _U).terms()
    if len(den_terms) != 1:
        raise BraidError("inverse is not a Laurent polynomial")
    (dexp,), dc = den_terms[0]
    coeffs = {}
    for (e,), c in sympy.Poly(num, _U).terms():
        r = sympy.Rational(c) / sympy.Rational(dc)
        coeffs[e - dexp - shift] = Fraction(int(r.p), int(r.q))
    return Scalar(coeffs, root)


# crossing webs --------------------------------------------------------------------

def crossing_web(k: int, l: int, n: int, sign: str = "+") -> WebLinComb:
    """Braiding Lambda^k ⊗ Lambda^l -> Lambda^l ⊗ Lambda^k as a sum of two-upright ladders.

    The negative crossing is the inverse of the positive (l, k) crossing.
    """
    terms = []
    if sign == "+":
        pre = prefactor(k, l, n)
        for b in range(0, n + 1):
            a = b - (k - l)
            if a < 0:
                continue
            lad = Ladder(n, (k, l), tuple(x for x in (("F", 1, b), ("E", 1, a)) if x[2] > 0))
            if lad.is_valid():
                terms.append((pre * minus_q_power(-b).scale_root(n), ladder_web(lad)))
    elif sign == "-":
        pre = prefactor(l, k, n).inverse()
        h = k - l
        for b in range(0, n + 1):
            a = b + h
            if a < 0:
                continue
            lad = Ladder(n, (k, l), tuple(x for x in (("E", 1, b), ("F", 1, a)) if x[2] > 0))
            if lad.is_valid():
                terms.append((pre * minus_q_power(b).scale_root(n), ladder_web(lad)))
    else:
        raise BraidError(f"crossing sign must be + or -, got {sign!r}")
    return WebLinComb.of(terms)


@lru_cache(maxsize=None)
def crossing_map(k: int, l: int, n: int, sign: str = "+") -> LinearMap:
    """Matrix of a crossing; the negative one is an exact matrix inverse."""
    if sign == "+":
        return evaluate(crossing_web(k, l, n, "+"))
    return inverse_map(crossing_map(l, k, n, "+"))


# braids and closures ------------------------------------------------------------------

@dataclass(frozen=True)
class ColoredBraid:
    colors: Tuple[int, ...]
    word: Tuple[Tuple[int, int], ...]      # (position i >= 1, +1 or -1), bottom to top

    @property
    def strands(self) -> int:
        return len(self.colors)

    def writhe(self) -> int:
        return sum(s for _, s in self.word)

    def color_sequence(self) -> List[Tuple[int, ...]]:
        out = [tuple(self.colors)]
        for i, _ in self.word:
            out.append(_swap(out[-1], i))
        return out

    def permutation(self) -> List[int]:
        perm = list(range(self.strands))
        for i, _ in self.word:
            perm[i - 1], perm[i] = perm[i], perm[i - 1]
        return perm


_GEN = re.compile(r"^s(\d+)(\^(-?1))?$")


def parse_braid(word: str, colors: Sequence[int]) -> ColoredBraid:
    letters = []
    for tok in word.split():
        m = _GEN.match(tok)
        if not m:
            raise BraidError(f"bad braid letter {tok!r}; use s1, s2^-1, ...")
        i = int(m.group(1))
        s = -1 if m.group(3) == "-1" else 1
        if not 1 <= i < len(colors):
            raise BraidError(f"generator s{i} needs at least {i + 1} strands")
        letters.append((i, s))
    return ColoredBraid(tuple(colors), tuple(letters))


def _identity(n: int, labels) -> LinearMap:
    return LinearMap.identity(SpaceObject.upward(n, labels), n)


def braid_map(b: ColoredBraid, n: int) -> LinearMap:
    for c in b.colors:
        if not 1 <= c <= n - 1:
            raise BraidError(f"color {c} out of range 1..{n - 1}")
    cols = list(b.colors)
    total = _identity(n, cols)
    for i, s in b.word:
        x = crossing_map(cols[i - 1], cols[i], n, "+" if s > 0 else "-")
        step = _identity(n, cols[:i - 1]).tensor(x).tensor(_identity(n, cols[i + 1:]))
        total = total.then(step)
        cols = list(_swap(cols, i))
    return total


def _closure_webs(b: ColoredBraid, n: int, closure: str):
    s = b.strands
    cols = b.colors
    top = b.color_sequence()[-1]
    if closure == "trace":
        if tuple(top) != tuple(cols):
            raise BraidError("trace closure needs the braid to return each color to its position")
        bot = Builder(n, ())
        for j, c in enumerate(cols):
            bot.apply(j, cup(c, "+-"))
        top_src = tuple((c, PLUS) for c in cols) + tuple((c, "-") for c in reversed(cols))
        topb = Builder(n, top_src)
        for j in range(s - 1, -1, -1):
            topb.apply(j, cap(cols[j], "+-"))
        return bot.web(), topb.web(), tuple((c, "-") for c in reversed(cols))
    if closure == "plat":
        if s % 2:
            raise BraidError("plat closure needs an even number of strands")
        bot = Builder(n, ())
        for j in range(0, s, 2):
            c = cols[j + 1]
            if cols[j] != n - c:
                raise BraidError("plat closure pairs colors c and n-c at the bottom")
            bot.apply(j, cup(c, "-+"))
            bot.apply(j, tagin(c, "R"))
        topb = Builder(n, tuple((c, PLUS) for c in top))
        for j in range(s - 2, -1, -2):
            a, c = top[j], top[j + 1]
            if a != n - c:
                raise BraidError("plat closure pairs colors c and n-c at the top")
            topb.apply(j, tagout(a, "L"))
            topb.apply(j, cap(c, "-+"))
        return bot.web(), topb.web(), ()
    raise BraidError(f"unknown closure {closure!r}")


def braid_invariant(b: ColoredBraid, n: int, closure: str = "trace") -> Scalar:
    """Framed invariant of the closure, evaluated with the normalized T_i crossings."""
    bottom, top, extra = _closure_webs(b, n, closure)
    low = evaluate(bottom).scale_root(n)
    high = evaluate(top).scale_root(n)
    middle = braid_map(b, n)
    if extra:
        middle = middle.tensor(LinearMap.identity(SpaceObject(n, extra), n))
    total = low.then(middle).then(high)
    return total.entry((), ())


def kink_factor(k: int, n: int) -> Scalar:
    """Scalar by which a positive curl on a k-colored strand acts."""
    x = crossing_map(k, k, n, "+")
    obj = SpaceObject.upward(n, (k,))
    bot = Builder(n, ((k, PLUS),)).apply(1, cup(k, "+-")).web()
    top = Builder(n, ((k, PLUS), (k, PLUS), (k, "-"))).apply(1, cap(k, "+-")).web()
    m = evaluate(bot).scale_root(n).then(x.tensor(LinearMap.identity(SpaceObject(n, ((k, "-"),)), n)))
    m = m.then(evaluate(top).scale_root(n))
    basis = obj.basis()
    c = m.entry(basis[0], basis[0])
    if m != LinearMap.identity(obj, n).scale(c):
        raise BraidError("curl is not a scalar")
    return c


def normalized_invariant(b: ColoredBraid, n: int) -> Scalar:
    """Knot invariant with framing removed and unknot normalized to 1 (knots only)."""
    if len(set(b.colors)) != 1:
        raise BraidError("normalization needs a single color")
    k = b.colors[0]
    if _components(b) != 1:
        raise BraidError("normalization is defined for knots only")
    inv = braid_invariant(b, n, "trace")
    kappa = kink_factor(k, n)
    w = b.writhe()
    inv = inv * (kappa.inverse() ** w if w >= 0 else kappa ** (-w))
    return inv.exact_div(quantum_binomial(n, k).scale_root(n))


def _components(b: ColoredBraid) -> int:
    perm = b.permutation()
    seen, count = set(), 0
    for start in range(b.strands):
        if start in seen:
            continue
        count += 1
        j = start
        while j not in seen:
            seen.add(j)
            j = perm[j]
    return count


# Kauffman bracket oracle ------------------------------------------------------------

def kauffman_bracket(b: ColoredBraid, root: int = 2) -> Scalar:
    """State sum of the trace-closed braid diagram, with the loop value -A^2 - A^-2.

    A is the formal variable u of the given root order.  For a positive
    generator the A-smoothing joins the strands vertically.
    """
    s = b.strands
    c = len(b.word)
    total = zero(root)
    loop = Scalar({2: -1, -2: -1}, root)
    for state in product((0, 1), repeat=c):
        parent = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def join(x, y):
            parent[find(x)] = find(y)

        a_count = 0
        for t, ((i, sg), choice) in enumerate(zip(b.word, state)):
            vertical = (choice == 0) if sg > 0 else (choice == 1)
            a_count += 1 if choice == 0 else 0
            for j in range(s):
                if j in (i - 1, i):
                    continue
                join((t, j), (t + 1, j))
            if vertical:
                join((t, i - 1), (t + 1, i - 1))
                join((t, i), (t + 1, i))
            else:
                join((t, i - 1), (t, i))
                join((t + 1, i - 1), (t + 1, i))
        for j in range(s):
            join((c, j), (0, j))
        loops = len({find((t, j)) for t in range(c + 1) for j in range(s)})
        term = Scalar.u_power(a_count - (c - a_count), 1, root) * loop ** loops
        total = total + term
    return total


def kauffman_normalized(b: ColoredBraid, root: int = 2) -> Scalar:
    """(-A^3)^(-writhe) <D> / <O>, the framing-free normalization."""
    loop = Scalar({2: -1, -2: -1}, root)
    w = b.writhe()
    corr = Scalar.u_power(-3 * w, -1 if w % 2 else 1, root)
    return (kauffman_bracket(b, root) * corr).exact_div(loop)


# checks ----------------------------------------------------------------------------

def _weights(n, m):
    return list(product(range(n + 1), repeat=m))


def check_single_sum(n: int, m: int) -> List[Tuple]:
    bad = []
    for k in _weights(n, m):
        for i in range(1, m):
            a = lusztig_double_prime(i, k, n, "single")
            b = lusztig_double_prime(i, k, n, "triple")
            if a != b:
                bad.append((k, i))
    return bad


def _T(i, k, n):
    return lusztig_T(i, k, n)


def _letter(g, i, k, n):
    w = UWord(tuple(k), ((g, i, 1),))
    if not n_bounded(w.target, n):
        return None
    return phi_matrix(w, n).scale_root(n)


def check_braid_axioms(n: int, m: int) -> Dict[str, List]:
    """Braid relations and naturality of T_i on every n-bounded weight."""
    bad = {"braid": [], "far": [], "natural": [], "far-natural": []}
    for k in _weights(n, m):
        for i in range(1, m):
            for j in range(1, m):
                if abs(i - j) == 1:
                    # T_i T_j T_i = T_j T_i T_j, applied right to left
                    w1 = k
                    lhs = _T(i, w1, n)
                    w2 = _swap(w1, i)
                    lhs = lhs.then(_T(j, w2, n))
                    w3 = _swap(w2, j)
                    lhs = lhs.then(_T(i, w3, n))
                    rhs = _T(j, k, n)
                    v2 = _swap(k, j)
                    rhs = rhs.then(_T(i, v2, n))
                    v3 = _swap(v2, i)
                    rhs = rhs.then(_T(j, v3, n))
                    if lhs != rhs:
                        bad["braid"].append((k, i, j))
                    # T_i T_j E_i = E_j T_i T_j  (and F)
                    for g in ("E", "F"):
                        e = _letter(g, i, k, n)
                        if e is None:
                            continue
                        after = e.target.labels
                        left = e.then(_T(j, after, n))
                        left = left.then(_T(i, _swap(after, j), n))
                        right = _T(j, k, n).then(_T(i, _swap(k, j), n))
                        mid = _swap(_swap(k, j), i)
                        e2 = _letter(g, j, mid, n)
                        if e2 is None:
                            if not left.is_zero():
                                bad["natural"].append((k, i, j, g))
                            continue
                        right = right.then(e2)
                        if left != right:
                            bad["natural"].append((k, i, j, g))
                elif abs(i - j) >= 2:
                    lhs = _T(i, k, n).then(_T(j, _swap(k, i), n))
                    rhs = _T(j, k, n).then(_T(i, _swap(k, j), n))
                    if lhs != rhs:
                        bad["far"].append((k, i, j))
                    for g in ("E", "F"):
                        e = _letter(g, i, k, n)
                        if e is None:
                            continue
                        left = e.then(_T(j, e.target.labels, n))
                        e2 = _letter(g, i, _swap(k, j), n)
                        right = _T(j, k, n).then(e2) if e2 is not None else None
                        if right is None or left != right:
                            bad["far-natural"].append((k, i, j, g))
    return bad


def check_hexagons(n: int) -> List[Tuple]:
    """Crossings are natural for merges: both hexagon forms on single-strand colors."""
    from .web import merge
    bad = []
    for k, l, p in product(range(1, n), repeat=3):
        def ident(*labels):
            return _identity(n, labels)
        if k + l <= n:
            mg = evaluate(Builder(n, ((k, PLUS), (l, PLUS))).apply(0, merge(k, l)).web()).scale_root(n)
            lhs = mg.tensor(ident(p)).then(crossing_map(k + l, p, n))
            rhs = ident(k).tensor(crossing_map(l, p, n))
            rhs = rhs.then(crossing_map(k, p, n).tensor(ident(l)))
            rhs = rhs.then(ident(p).tensor(mg))
            if lhs != rhs:
                bad.append(("first", k, l, p))
        if l + p <= n:
            mg = evaluate(Builder(n, ((l, PLUS), (p, PLUS))).apply(0, merge(l, p)).web()).scale_root(n)
            lhs = ident(k).tensor(mg).then(crossing_map(k, l + p, n))
            rhs = crossing_map(k, l, n).tensor(ident(p))
            rhs = rhs.then(ident(l).tensor(crossing_map(k, p, n)))
            rhs = rhs.then(mg.tensor(ident(k)))
            if lhs != rhs:
                bad.append(("second", k, l, p))
    return bad


def check_eigenvalues(n: int) -> Dict[str, bool]:
    """T'' on weight (1,1): 1 on the symmetric square, -q^-2 on the exterior square."""
    from .harness import _specialized, _rank, GENERIC_POINTS
    T = lusztig_double_prime(1, (1, 1), n)
    ident_ = LinearMap.identity(T.source)
    E = phi_matrix(UWord((0, 2), (("E", 1, 1),)), n)
    F = phi_matrix(UWord((1, 1), (("F", 1, 1),)), n)
    minus = Scalar.q_power(-2, -1)
    out = {}
    out["exterior"] = E.then(T) == E.scale(minus)
    out["symmetric"] = (T - ident_) == F.then(E).scale(-Scalar.q_power(-1))
    out["minimal-polynomial"] = (T - ident_).then(T - ident_.scale(minus)).is_zero()
    u0 = GENERIC_POINTS[0]
    d = T.source.dim()
    r1 = _rank(_specialized(T - ident_, u0))
    r2 = _rank(_specialized(T - ident_.scale(minus), u0))
    out["multiplicities"] = (d - r1, d - r2) == (n * (n + 1) // 2, n * (n - 1) // 2)
    Tn = lusztig_T(1, (1, 1), n)
    big = Scalar.u_power(n - 1, 1, n)
    small = Scalar.u_power(-n - 1, -1, n)
    idn = LinearMap.identity(Tn.source, n)
    out["normalized"] = (Tn - idn.scale(big)).then(Tn - idn.scale(small)).is_zero()
    return out


def check_crossing_matches_T(n: int) -> List[Tuple]:
    bad = []
    for k in range(0, n + 1):
        for l in range(0, n + 1):
            web_side = evaluate(crossing_web(k, l, n)) if crossing_web(k, l, n).terms else None
            t = lusztig_T(1, (k, l), n)
            if web_side is None or web_side != t:
                bad.append((k, l))
    return bad
