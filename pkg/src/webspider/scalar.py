"""Exact Laurent polynomials in a formal root ``u`` with ``q = u**root``.

A :class:`Scalar` stores a map from integer powers of ``u`` to
:class:`fractions.Fraction` coefficients.  Almost everything in the package
works with ``root == 1`` so that ``u`` and ``q`` coincide; the braiding code
needs ``q**(1/n)`` and therefore uses ``root == n``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Union

Number = Union[int, Fraction]


class ScalarError(ValueError):
    pass


class Scalar:
    """Immutable Laurent polynomial with rational coefficients."""

    __slots__ = ("_coeffs", "root", "_hash")

    def __init__(self, coeffs: Mapping[int, Number] | None = None, root: int = 1):
        if root < 1:
            raise ScalarError("root order must be positive")
        clean: Dict[int, Fraction] = {}
        if coeffs:
            for e, c in coeffs.items():
                if c:
                    clean[int(e)] = Fraction(c)
        self._coeffs = clean
        self.root = root
        self._hash = None

    # construction helpers
    @classmethod
    def _raw(cls, coeffs: Dict[int, Fraction], root: int) -> "Scalar":
        s = object.__new__(cls)
        s._coeffs = coeffs
        s.root = root
        s._hash = None
        return s

    @classmethod
    def const(cls, c: Number, root: int = 1) -> "Scalar":
        return cls._raw({0: Fraction(c)} if c else {}, root)

    @classmethod
    def u_power(cls, e: int, coeff: Number = 1, root: int = 1) -> "Scalar":
        return cls._raw({e: Fraction(coeff)} if coeff else {}, root)

    @classmethod
    def q_power(cls, e: int, coeff: Number = 1, root: int = 1) -> "Scalar":
        return cls.u_power(e * root, coeff, root)

    # inspection
    @property
    def coeffs(self) -> Dict[int, Fraction]:
        return dict(self._coeffs)

    def items(self):
        return self._coeffs.items()

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_monomial(self) -> bool:
        return len(self._coeffs) == 1

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def degree_range(self):
        if not self._coeffs:
            return None
        return min(self._coeffs), max(self._coeffs)

    # arithmetic
    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.root != self.root:
                raise ScalarError(f"root order mismatch: {self.root} vs {other.root}")
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar.const(other, self.root)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Scalar._raw(out, self.root)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw({e: -c for e, c in self._coeffs.items()}, self.root)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._coeffs, other._coeffs
        if not a or not b:
            return Scalar._raw({}, self.root)
        if len(a) == 1:
            (e0, c0), = a.items()
            return Scalar._raw({e0 + e: c0 * c for e, c in b.items()}, self.root)
        if len(b) == 1:
            (e0, c0), = b.items()
            return Scalar._raw({e0 + e: c0 * c for e, c in a.items()}, self.root)
        out: Dict[int, Fraction] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return Scalar._raw({e: c for e, c in out.items() if c}, self.root)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Scalar.const(1, self.root)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "Scalar":
        """Inverse of a monomial; general Laurent polynomials are not units."""
        if not self.is_monomial():
            raise ScalarError("only monomials are invertible in Q[u, 1/u]")
        (e, c), = self._coeffs.items()
        return Scalar._raw({-e: 1 / c}, self.root)

    def exact_div(self, other: "Scalar") -> "Scalar":
        """Divide, insisting that the remainder is zero."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        if self.is_zero():
            return self
        if other.is_monomial():
            return self * other.inverse()
        num = dict(self._coeffs)
        dlo, dhi = other.degree_range()
        lead = other._coeffs[dhi]
        quot: Dict[int, Fraction] = {}
        while num:
            top = max(num)
            if top - min(num) < dhi - dlo:
                break
            c = num[top] / lead
            shift = top - dhi
            quot[shift] = c
            for e, d in other._coeffs.items():
                k = e + shift
                v = num.get(k, 0) - c * d
                if v:
                    num[k] = v
                else:
                    num.pop(k, None)
        if num:
            raise ScalarError("inexact division of Laurent polynomials")
        return Scalar._raw(quot, self.root)

    def scale_root(self, new_root: int) -> "Scalar":
        """Re-express the same element with ``q = u**new_root``."""
        if new_root % self.root:
            raise ScalarError("new root order must be a multiple of the old one")
        f = new_root // self.root
        return Scalar._raw({e * f: c for e, c in self._coeffs.items()}, new_root)

    def bar(self) -> "Scalar":
        """The involution u -> 1/u."""
        return Scalar._raw({-e: c for e, c in self._coeffs.items()}, self.root)

    # comparison
    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.root == other.root and self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self._coeffs
            return self._coeffs == {0: Fraction(other)}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.root, frozenset(self._coeffs.items())))
        return self._hash

    def __repr__(self):
        return f"Scalar({render(self)!r}, root={self.root})"

    def __str__(self):
        return render(self)


def q(e: int = 1, root: int = 1) -> Scalar:
    return Scalar.q_power(e, 1, root)


def one(root: int = 1) -> Scalar:
    return Scalar.const(1, root)


def zero(root: int = 1) -> Scalar:
    return Scalar._raw({}, root)


@lru_cache(maxsize=None)
def minus_q_power(e: int, root: int = 1) -> Scalar:
    """(-q)**e, used throughout the exterior algebra formulas."""
    return Scalar.q_power(e, -1 if e % 2 else 1, root)


@lru_cache(maxsize=None)
def quantum_int(n: int, root: int = 1) -> Scalar:
    if n < 0:
        return -quantum_int(-n, root)
    return Scalar._raw({(n - 1 - 2 * j) * root: Fraction(1) for j in range(n)}, root)


@lru_cache(maxsize=None)
def quantum_factorial(n: int, root: int = 1) -> Scalar:
    out = one(root)
    for j in range(1, n + 1):
        out = out * quantum_int(j, root)
    return out


@lru_cache(maxsize=None)
def quantum_binomial(n: int, k: int, root: int = 1) -> Scalar:
    """Balanced Gaussian binomial via [n k] = q^k [n-1 k] + q^(k-n) [n-1 k-1].

    Negative tops use [-m k] = (-1)^k [m+k-1 k].
    """
    if k < 0:
        return zero(root)
    if n < 0:
        sign = -1 if k % 2 else 1
        return quantum_binomial(-n + k - 1, k, root) * sign
    if k > n:
        return zero(root)
    if k == 0 or k == n:
        return one(root)
    return (q(k, root) * quantum_binomial(n - 1, k, root)
            + q(k - n, root) * quantum_binomial(n - 1, k - 1, root))


def specialize(s: Scalar, u0: Number) -> Fraction:
    """Evaluate at u = u0 exactly."""
    u0 = Fraction(u0)
    if u0 == 0:
        raise ZeroDivisionError("cannot specialize a Laurent polynomial at u = 0")
    total = Fraction(0)
    for e, c in s.items():
        total += c * u0 ** e
    return total


# text form ---------------------------------------------------------------

def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render(s: Scalar) -> str:
    """``q^2 + 2 + q^-2`` when root is 1, otherwise powers of ``u``."""
    if s.is_zero():
        return "0"
    var = "q" if s.root == 1 else "u"
    parts = []
    for e in sorted(s._coeffs, reverse=True):
        c = s._coeffs[e]
        mag = abs(c)
        if e == 0:
            body = _fmt_coeff(mag)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if mag == 1 else f"{_fmt_coeff(mag)}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\d+(?:/\d+)?)\s*(?P<star>\*)?\s*)?
        (?P<var>[qu])?
        (?:\^\s*(?P<exp>-?\d+))?\s*""",
    re.VERBOSE,
)


def parse(text: str, root: int | None = None) -> Scalar:
    """Parse the rendering grammar back into a :class:`Scalar`.

    Text in ``q`` yields a root-1 scalar unless ``root`` is given, in which
    case every ``q`` power is scaled.  Text in ``u`` needs ``root``.
    """
    src = text.strip()
    if not src:
        raise ScalarError("empty scalar")
    pos = 0
    coeffs: Dict[int, Fraction] = {}
    seen_var = set()
    first = True
    while pos < len(src):
        m = _TERM.match(src, pos)
        if not m or m.end() == pos:
            raise ScalarError(f"cannot parse scalar at column {pos + 1}: {src!r}")
        sign, coef, var, exp = m.group("sign"), m.group("coef"), m.group("var"), m.group("exp")
        if not first and sign is None:
            raise ScalarError(f"missing operator at column {pos + 1}: {src!r}")
        if coef is None and var is None:
            raise ScalarError(f"dangling sign at column {pos + 1}: {src!r}")
        if m.group("star") and var is None:
            raise ScalarError(f"'*' must be followed by a variable: {src!r}")
        if exp is not None and var is None:
            raise ScalarError(f"exponent without variable: {src!r}")
        c = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            c = -c
        e = 0
        if var:
            seen_var.add(var)
            e = int(exp) if exp is not None else 1
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
        first = False
    if len(seen_var) > 1:
        raise ScalarError("cannot mix q and u in one scalar")
    if "u" in seen_var:
        if root is None:
            raise ScalarError("a scalar written in u needs an explicit root order")
        return Scalar(coeffs, root)
    r = 1 if root is None else root
    return Scalar({e * r: c for e, c in coeffs.items()}, r)


def as_scalar(x, root: int = 1) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, str):
        return parse(x, root if root != 1 else None)
    return Scalar.const(x, root)


def sum_scalars(items: Iterable[Scalar], root: int = 1) -> Scalar:
    total = zero(root)
    for s in items:
        total = total + s
    return total
