"""Exact rational scalars and dense univariate polynomials.

Scalars are :class:`fractions.Fraction`; polynomials are immutable tuples of
fractions indexed by power, lowest first, with no trailing zeros.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

from .errors import MalformedInput

Rational = Fraction

__all__ = [
    "Rational", "DensePolynomial", "X", "ONE", "ZERO",
    "binomial", "factorial", "poly_derivative", "poly_mul",
    "parse_rational", "format_rational",
]

factorial = math.factorial


def binomial(n: int, k: int) -> int:
    """C(n, k) with the convention C(n, k) = 0 for k > n."""
    if n < 0 or k < 0:
        raise ValueError("binomial requires nonnegative arguments")
    return math.comb(n, k)


def parse_rational(text) -> Fraction:
    """Read a rational literal: ``"p/q"``, ``"p"``, or an int.

    Floats are refused; they would smuggle rounding into exact code.
    """
    if isinstance(text, bool):
        raise MalformedInput(f"not a rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise MalformedInput(f"not a rational: {text!r}")
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise MalformedInput(f"not a rational literal: {text!r}") from None
    if q == 0:
        raise MalformedInput(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _as_scalar(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, _RationalABC) and not isinstance(c, bool):
        return Fraction(c)
    raise TypeError(f"expected an exact rational, got {type(c).__name__}")


class DensePolynomial:
    """Polynomial over Q stored as a coefficient tuple, lowest power first."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [_as_scalar(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    @classmethod
    def _raw(cls, coeffs: tuple) -> "DensePolynomial":
        # caller guarantees Fractions and no trailing zeros
        p = object.__new__(cls)
        p._c = coeffs
        return p

    @classmethod
    def constant(cls, c) -> "DensePolynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, power: int, c=1) -> "DensePolynomial":
        return cls([0] * power + [c])

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def degree(self):
        """Index of the last nonzero coefficient; ``None`` for the zero polynomial."""
        return len(self._c) - 1 if self._c else None

    def is_zero(self) -> bool:
        return not self._c

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self._c):
            return self._c[i]
        return Fraction(0)

    def __len__(self):
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def __eq__(self, other):
        if isinstance(other, DensePolynomial):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == DensePolynomial((other,))._c
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def __repr__(self):
        return f"DensePolynomial({[format_rational(c) for c in self._c]})"

    def __str__(self):
        return self.pretty()

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def _coerce(self, other):
        if isinstance(other, DensePolynomial):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return DensePolynomial((other,))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._c, o._c
        if len(a) < len(b):
            a, b = b, a
        return DensePolynomial([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self):
        return DensePolynomial._raw(tuple(-c for c in self._c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, DensePolynomial):
            return poly_mul(self, other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                return ZERO
            return DensePolynomial._raw(tuple(c * other for c in self._c))
        return NotImplemented

    __rmul__ = __mul__

    def shift(self, k: int) -> "DensePolynomial":
        """Multiply by ``x**k``."""
        if not self._c:
            return self
        return DensePolynomial._raw((Fraction(0),) * k + self._c)

    def derivative(self, order: int = 1) -> "DensePolynomial":
        return poly_derivative(self, order)

    def pretty(self, var: str = "x") -> str:
        """Human-readable form, highest power first, e.g. ``x^2 - 1/2``."""
        if not self._c:
            return "0"
        parts = []
        for i in range(len(self._c) - 1, -1, -1):
            c = self._c[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = format_rational(mag)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> list:
        if not self._c:
            return ["0"]
        return [format_rational(c) for c in self._c]

    @classmethod
    def from_json(cls, data) -> "DensePolynomial":
        if not isinstance(data, list):
            raise MalformedInput(f"polynomial must be a JSON array, got {data!r}")
        return cls(parse_rational(c) for c in data)


ZERO = DensePolynomial()
ONE = DensePolynomial((1,))
X = DensePolynomial((0, 1))


def poly_mul(p: DensePolynomial, q: DensePolynomial) -> DensePolynomial:
    a, b = p.coeffs, q.coeffs
    if not a or not b:
        return ZERO
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    # leading term is a product of two nonzero leading terms
    return DensePolynomial._raw(tuple(out))


def poly_derivative(p: DensePolynomial, order: int = 1) -> DensePolynomial:
    """d^order p / dx^order, exactly."""
    if order < 0:
        raise ValueError("derivative order must be nonnegative")
    if order == 0:
        return p
    c = p.coeffs
    if len(c) <= order:
        return ZERO
    # falling factorial i (i-1) ... (i-order+1) = C(i, order) * order!
    f = math.factorial(order)
    return DensePolynomial._raw(
        tuple(c[i] * (math.comb(i, order) * f) for i in range(order, len(c))))


def as_polynomial(obj) -> DensePolynomial:
    if isinstance(obj, DensePolynomial):
        return obj
    if isinstance(obj, (int, Fraction)):
        return DensePolynomial((obj,))
    if isinstance(obj, Sequence):
        return DensePolynomial(obj)
    raise TypeError(f"cannot interpret {obj!r} as a polynomial")
