"""The quantum exterior algebra of C_q^n and its generating morphisms.

Basis vectors of a wedge power are labelled by increasing tuples of
integers in 1..n.  The wedge monomial itself is read in decreasing order,
``x_S = x_{k_1} ^ ... ^ x_{k_a}`` with ``k_1 > ... > k_a``; that convention
only matters inside :func:`factor_action`.

A vector in a tensor product of wedge powers and their duals is a dict from
keys (one subset per tensor factor) to :class:`~webspider.scalar.Scalar`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .scalar import Scalar, minus_q_power, one, q, zero

Subset = Tuple[int, ...]
Key = Tuple[Subset, ...]
Vector = Dict[Key, Scalar]

PLUS, MINUS = "+", "-"
GENERATORS = ("E", "F", "K", "Kinv")


class ExteriorError(ValueError):
    pass


# subsets -----------------------------------------------------------------

@lru_cache(maxsize=None)
def subsets(n: int, k: int) -> Tuple[Subset, ...]:
    if k < 0 or k > n:
        return ()
    return tuple(combinations(range(1, n + 1), k))


@lru_cache(maxsize=None)
def complement(s: Subset, n: int) -> Subset:
    present = set(s)
    return tuple(i for i in range(1, n + 1) if i not in present)


@lru_cache(maxsize=1 << 16)
def ell(s: Subset, t: Subset) -> int:
    """Number of pairs (i, j) with i in s, j in t and i < j."""
    count = 0
    for i in s:
        for j in t:
            if i < j:
                count += 1
    return count


def union(s: Subset, t: Subset) -> Optional[Subset]:
    """Sorted union of disjoint subsets, None when they meet."""
    if set(s) & set(t):
        return None
    return tuple(sorted(s + t))


def minus(s: Subset, t: Subset) -> Subset:
    drop = set(t)
    return tuple(i for i in s if i not in drop)


# objects -----------------------------------------------------------------

@dataclass(frozen=True)
class SpaceObject:
    """Tensor product of wedge powers (sign +) and their duals (sign -)."""

    n: int
    factors: Tuple[Tuple[int, str], ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ExteriorError("n must be positive")
        for k, sgn in self.factors:
            if sgn not in (PLUS, MINUS):
                raise ExteriorError(f"bad sign {sgn!r}")

    @classmethod
    def upward(cls, n: int, labels: Iterable[int]) -> "SpaceObject":
        return cls(n, tuple((k, PLUS) for k in labels))

    @property
    def labels(self) -> Tuple[int, ...]:
        return tuple(k for k, _ in self.factors)

    def in_range(self) -> bool:
        return all(0 <= k <= self.n for k, _ in self.factors)

    def basis(self) -> List[Key]:
        return list(product(*(subsets(self.n, k) for k, _ in self.factors)))

    def dim(self) -> int:
        d = 1
        for k, _ in self.factors:
            d *= len(subsets(self.n, k))
        return d

    def __add__(self, other: "SpaceObject") -> "SpaceObject":
        if self.n != other.n:
            raise ExteriorError("cannot concatenate objects over different n")
        return SpaceObject(self.n, self.factors + other.factors)

    def __len__(self):
        return len(self.factors)

    def render(self) -> str:
        return "(" + ",".join(f"{k}{s}" for k, s in self.factors) + ")"

    def __str__(self):
        return self.render()


def render_key(key: Key) -> str:
    parts = []
    for s in key:
        parts.append("{" + ",".join(map(str, s)) + "}")
    return "x" + "".join(parts) if parts else "1"


# linear maps ---------------------------------------------------------------

def add_into(acc: Vector, key: Key, value: Scalar) -> None:
    prev = acc.get(key)
    if prev is None:
        if value:
            acc[key] = value
        return
    total = prev + value
    if total:
        acc[key] = total
    else:
        del acc[key]


class LinearMap:
    """Sparse matrix between based spaces; columns indexed by source keys."""

    __slots__ = ("source", "target", "cols", "root")

    def __init__(self, source: SpaceObject, target: SpaceObject,
                 cols: Optional[Dict[Key, Vector]] = None, root: int = 1):
        self.source = source
        self.target = target
        self.root = root
        self.cols: Dict[Key, Vector] = {}
        if cols:
            for k, v in cols.items():
                v = {kk: s for kk, s in v.items() if s}
                if v:
                    self.cols[k] = v

    @classmethod
    def identity(cls, obj: SpaceObject, root: int = 1) -> "LinearMap":
        u = one(root)
        return cls(obj, obj, {k: {k: u} for k in obj.basis()}, root)

    @classmethod
    def zero(cls, source: SpaceObject, target: SpaceObject, root: int = 1) -> "LinearMap":
        return cls(source, target, {}, root)

    def column(self, key: Key) -> Vector:
        return self.cols.get(key, {})

    def apply(self, vec: Vector) -> Vector:
        out: Vector = {}
        for k, c in vec.items():
            col = self.cols.get(k)
            if not col:
                continue
            for kk, s in col.items():
                add_into(out, kk, c * s)
        return out

    def then(self, after: "LinearMap") -> "LinearMap":
        """``after`` composed with ``self`` (self applied first)."""
        if self.target != after.source:
            raise ExteriorError(f"cannot compose: {self.target} vs {after.source}")
        return LinearMap(self.source, after.target,
                         {k: after.apply(v) for k, v in self.cols.items()}, self.root)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        # matrix product convention: (A @ B) applies B first
        return other.then(self)

    def tensor(self, other: "LinearMap") -> "LinearMap":
        cols: Dict[Key, Vector] = {}
        for k1, v1 in self.cols.items():
            for k2, v2 in other.cols.items():
                col: Vector = {}
                for a, s in v1.items():
                    for b, t in v2.items():
                        col[a + b] = s * t
                cols[k1 + k2] = col
        return LinearMap(self.source + other.source, self.target + other.target, cols, self.root)

    def scale(self, c: Scalar) -> "LinearMap":
        if not c:
            return LinearMap.zero(self.source, self.target, self.root)
        return LinearMap(self.source, self.target,
                         {k: {kk: s * c for kk, s in v.items()} for k, v in self.cols.items()},
                         self.root)

    def __add__(self, other: "LinearMap") -> "LinearMap":
        self._check_shape(other)
        cols = {k: dict(v) for k, v in self.cols.items()}
        for k, v in other.cols.items():
            col = cols.setdefault(k, {})
            for kk, s in v.items():
                add_into(col, kk, s)
        return LinearMap(self.source, self.target, cols, self.root)

    def __neg__(self):
        return self.scale(-one(self.root))

    def __sub__(self, other):
        return self + (-other)

    def _check_shape(self, other: "LinearMap"):
        if self.source != other.source or self.target != other.target:
            raise ExteriorError(
                f"shape mismatch: {self.source}->{self.target} vs {other.source}->{other.target}")

    def is_zero(self) -> bool:
        return not self.cols

    def entries(self) -> Iterator[Tuple[Key, Key, Scalar]]:
        """(row key, column key, scalar) in a stable order."""
        for ck in sorted(self.cols):
            col = self.cols[ck]
            for rk in sorted(col):
                yield rk, ck, col[rk]

    def entry(self, row: Key, col: Key) -> Scalar:
        return self.cols.get(col, {}).get(row, zero(self.root))

    def first_difference(self, other: "LinearMap"):
        """First (row, col, mine, theirs) where the maps disagree, else None."""
        self._check_shape(other)
        for ck in sorted(set(self.cols) | set(other.cols)):
            a, b = self.cols.get(ck, {}), other.cols.get(ck, {})
            for rk in sorted(set(a) | set(b)):
                x = a.get(rk, zero(self.root))
                y = b.get(rk, zero(other.root))
                if x != y:
                    return rk, ck, x, y
        return None

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.cols == other.cols)

    def scale_root(self, new_root: int) -> "LinearMap":
        return LinearMap(self.source, self.target,
                         {k: {kk: s.scale_root(new_root) for kk, s in v.items()}
                          for k, v in self.cols.items()}, new_root)

    def __repr__(self):
        return f"LinearMap({self.source} -> {self.target}, {sum(map(len, self.cols.values()))} nonzeros)"


def maps_equal(a: LinearMap, b: LinearMap) -> bool:
    a._check_shape(b)
    return a.cols == b.cols


# the U_q(sl_n) action -------------------------------------------------------

def _k_eigen_exp(i: int, x: int) -> int:
    """Exponent of q for K_i acting on the basis vector x_x of C_q^n."""
    if x == i:
        return 1
    if x == i + 1:
        return -1
    return 0


def wedge_word(word: Sequence[int]) -> Optional[Tuple[Scalar, Subset]]:
    """x_{w1} ^ ... ^ x_{wa} as (coefficient, subset), None if it vanishes."""
    coeff = one()
    acc: Subset = ()
    for x in word:
        if x in acc:
            return None
        coeff = coeff * minus_q_power(ell(acc, (x,)))
        acc = tuple(sorted(acc + (x,)))
    return coeff, acc


@lru_cache(maxsize=None)
def _plus_action(gen: str, i: int, n: int, k: int) -> Dict[Subset, Dict[Subset, Scalar]]:
    """Matrix of a generator on the wedge power, by iterated coproduct."""
    table: Dict[Subset, Dict[Subset, Scalar]] = {}
    for s in subsets(n, k):
        word = tuple(sorted(s, reverse=True))
        col: Dict[Subset, Scalar] = {}
        if gen in ("K", "Kinv"):
            e = sum(_k_eigen_exp(i, x) for x in word)
            col[s] = q(e if gen == "K" else -e)
        elif gen == "E":
            # Delta(E) = E (x) K + 1 (x) E, iterated: E in slot j, K after it
            for j, x in enumerate(word):
                if x != i + 1:
                    continue
                e = sum(_k_eigen_exp(i, y) for y in word[j + 1:])
                res = wedge_word(word[:j] + (x - 1,) + word[j + 1:])
                if res is not None:
                    c, t = res
                    add_into(col, t, c * q(e))
        elif gen == "F":
            # Delta(F) = F (x) 1 + K^-1 (x) F: K^-1 before slot j
            for j, x in enumerate(word):
                if x != i:
                    continue
                e = -sum(_k_eigen_exp(i, y) for y in word[:j])
                res = wedge_word(word[:j] + (x + 1,) + word[j + 1:])
                if res is not None:
                    c, t = res
                    add_into(col, t, c * q(e))
        else:
            raise ExteriorError(f"unknown generator {gen!r}")
        if col:
            table[s] = col
    return table


def _compose_tables(first, second):
    out = {}
    for s, col in first.items():
        acc: Dict[Subset, Scalar] = {}
        for t, c in col.items():
            for u, d in second.get(t, {}).items():
                add_into(acc, u, c * d)
        if acc:
            out[s] = acc
    return out


@lru_cache(maxsize=None)
def _minus_action(gen: str, i: int, n: int, k: int) -> Dict[Subset, Dict[Subset, Scalar]]:
    """Action on the dual space: (g.f)(v) = f(S(g) v)."""
    if gen == "K":
        anti = _plus_action("Kinv", i, n, k)
    elif gen == "Kinv":
        anti = _plus_action("K", i, n, k)
    elif gen == "E":
        # S(E) = -E K^-1 : apply K^-1 first, then E, then negate
        anti = _compose_tables(_plus_action("Kinv", i, n, k), _plus_action("E", i, n, k))
        anti = {s: {t: -c for t, c in col.items()} for s, col in anti.items()}
    elif gen == "F":
        # S(F) = -K F
        anti = _compose_tables(_plus_action("F", i, n, k), _plus_action("K", i, n, k))
        anti = {s: {t: -c for t, c in col.items()} for s, col in anti.items()}
    else:
        raise ExteriorError(f"unknown generator {gen!r}")
    # g . x_T^* = sum_U [S(g)]_{T,U} x_U^*  -- the transpose
    out: Dict[Subset, Dict[Subset, Scalar]] = {}
    for u, col in anti.items():
        for t, c in col.items():
            out.setdefault(t, {})[u] = c
    return out


def factor_action(gen: str, i: int, n: int, k: int, sign: str):
    if not 1 <= i <= n - 1:
        raise ExteriorError(f"generator index {i} out of range for n={n}")
    if sign == PLUS:
        return _plus_action(gen, i, n, k)
    return _minus_action(gen, i, n, k)


def act_generator(gen: str, i: int, vec: Vector, obj: SpaceObject) -> Vector:
    """Apply E_i, F_i, K_i or K_i^-1 to a vector of ``obj`` via the coproduct."""
    n = obj.n
    if not 1 <= i <= n - 1:
        raise ExteriorError(f"generator index {i} out of range for n={n}")
    m = len(obj.factors)
    tables = {g: [factor_action(g, i, n, k, s) for k, s in obj.factors]
              for g in (gen, "K", "Kinv")}
    out: Vector = {}
    for key, c in vec.items():
        if gen in ("K", "Kinv"):
            coeff = c
            for j in range(m):
                coeff = coeff * tables[gen][j][key[j]][key[j]]
            add_into(out, key, coeff)
            continue
        for j in range(m):
            col = tables[gen][j].get(key[j])
            if not col:
                continue
            pre = c
            if gen == "E":
                # 1 ... 1 (x) E (x) K ... K
                for t in range(j + 1, m):
                    pre = pre * tables["K"][t][key[t]][key[t]]
            else:
                # K^-1 ... K^-1 (x) F (x) 1 ... 1
                for t in range(j):
                    pre = pre * tables["Kinv"][t][key[t]][key[t]]
            for s, d in col.items():
                add_into(out, key[:j] + (s,) + key[j + 1:], pre * d)
    return out


def generator_map(gen: str, i: int, obj: SpaceObject) -> LinearMap:
    return LinearMap(obj, obj, {k: act_generator(gen, i, {k: one()}, obj) for k in obj.basis()})


# generating morphisms --------------------------------------------------------

def _check_labels(n: int, *labels: int):
    for k in labels:
        if k < 0 or k > n:
            raise ExteriorError(f"label {k} out of range 0..{n}")


@lru_cache(maxsize=None)
def merge_map(k: int, l: int, n: int) -> LinearMap:
    """M_{k,l}: x_S (x) x_T -> (-q)^ell(S,T) x_{S u T}."""
    _check_labels(n, k, l, k + l)
    src = SpaceObject.upward(n, (k, l))
    tgt = SpaceObject.upward(n, (k + l,))
    cols = {}
    for s in subsets(n, k):
        for t in subsets(n, l):
            u = union(s, t)
            if u is not None:
                cols[(s, t)] = {(u,): minus_q_power(ell(s, t))}
    return LinearMap(src, tgt, cols)


@lru_cache(maxsize=None)
def split_map(k: int, l: int, n: int) -> LinearMap:
    """M'_{k,l}: x_S -> (-1)^{kl} sum_T (-q)^{-ell(S-T,T)} x_T (x) x_{S-T}."""
    _check_labels(n, k, l, k + l)
    src = SpaceObject.upward(n, (k + l,))
    tgt = SpaceObject.upward(n, (k, l))
    sign = -1 if (k * l) % 2 else 1
    cols = {}
    for s in subsets(n, k + l):
        col = {}
        for t in combinations(s, k):
            rest = minus(s, t)
            col[(t, rest)] = minus_q_power(-ell(rest, t)) * sign
        cols[(s,)] = col
    return LinearMap(src, tgt, cols)


@lru_cache(maxsize=None)
def tag_map(k: int, n: int, side: str = "L") -> LinearMap:
    """Outgoing tag k+ -> (n-k)-: D_k, with (-1)^{k(n-k)} on the right side."""
    _check_labels(n, k)
    sign = -1 if side == "R" and (k * (n - k)) % 2 else 1
    src = SpaceObject(n, ((k, PLUS),))
    tgt = SpaceObject(n, ((n - k, MINUS),))
    cols = {}
    for s in subsets(n, k):
        c = complement(s, n)
        cols[(s,)] = {(c,): minus_q_power(ell(s, c)) * sign}
    return LinearMap(src, tgt, cols)


@lru_cache(maxsize=None)
def tagin_map(k: int, n: int, side: str = "R") -> LinearMap:
    """Incoming tag k- -> (n-k)+: inverse of D_{n-k}, signed on the left side.

    The sides are fixed so that an outgoing tag on one side followed by an
    incoming tag on the other side is the identity.
    """
    _check_labels(n, k)
    sign = -1 if side == "L" and (k * (n - k)) % 2 else 1
    src = SpaceObject(n, ((k, MINUS),))
    tgt = SpaceObject(n, ((n - k, PLUS),))
    cols = {}
    for t in subsets(n, k):
        c = complement(t, n)
        cols[(t,)] = {(c,): minus_q_power(-ell(c, t)) * sign}
    return LinearMap(src, tgt, cols)


def _pair_object(k: int, n: int, orient: str) -> SpaceObject:
    if orient == "-+":
        return SpaceObject(n, ((k, MINUS), (k, PLUS)))
    if orient == "+-":
        return SpaceObject(n, ((k, PLUS), (k, MINUS)))
    raise ExteriorError(f"bad orientation {orient!r}")


@lru_cache(maxsize=None)
def cap_map(k: int, n: int, orient: str = "-+") -> LinearMap:
    """Evaluation.  ``-+`` is the plain pairing; ``+-`` carries the pivotal twist."""
    _check_labels(n, k)
    src = _pair_object(k, n, orient)
    tgt = SpaceObject(n, ())
    cols = {}
    top = k * (n - k)
    for t in subsets(n, k):
        if orient == "-+":
            cols[(t, t)] = {(): one()}
        else:
            cols[(t, t)] = {(): q(-top + 2 * ell(t, complement(t, n)))}
    return LinearMap(src, tgt, cols)


@lru_cache(maxsize=None)
def cup_map(k: int, n: int, orient: str = "-+") -> LinearMap:
    """Coevaluation.  ``-+`` carries K_{2rho}^{-1}; ``+-`` is the plain copairing."""
    _check_labels(n, k)
    src = SpaceObject(n, ())
    tgt = _pair_object(k, n, orient)
    top = k * (n - k)
    col = {}
    for t in subsets(n, k):
        if orient == "-+":
            col[(t, t)] = q(top - 2 * ell(t, complement(t, n)))
        else:
            col[(t, t)] = one()
    return LinearMap(src, tgt, {(): col})
