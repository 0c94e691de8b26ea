"""Differential operators ``L = sum_m a_m(x) d^m/dx^m`` with ``deg a_m <= m``.

Operators are normalized so that ``a_0 == 0``; a constant ``a_0`` passed at
construction is recorded in ``constant_shift``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DegreeBound, EmptyOperator, MalformedInput, NonconstantZeroTerm, ParseError
from .ratpoly import ZERO, DensePolynomial, as_polynomial, format_rational, poly_derivative

__all__ = [
    "DifferentialOperator", "make_operator", "apply_operator", "parse_operator",
    "pretty_print", "random_operator",
]


@dataclass(frozen=True)
class DifferentialOperator:
    """``coeffs[m]`` is ``a_m`` for ``m = 0..N``; ``coeffs[0]`` is always zero."""

    coeffs: tuple
    constant_shift: Fraction = Fraction(0)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def a(self, m: int) -> DensePolynomial:
        """Coefficient polynomial ``a_m``, zero beyond the order."""
        if 0 <= m < len(self.coeffs):
            return self.coeffs[m]
        return ZERO

    def coeff(self, m: int, i: int) -> Fraction:
        """The scalar ``a_{m,i}``: coefficient of ``x**i`` in ``a_m``."""
        return self.a(m)[i]

    def __call__(self, p: DensePolynomial) -> DensePolynomial:
        return apply_operator(self, p)

    def __str__(self):
        return pretty_print(self)

    def to_json(self) -> dict:
        a0 = DensePolynomial.constant(self.constant_shift)
        return {"coeffs": [a0.to_json()] + [c.to_json() for c in self.coeffs[1:]]}

    @classmethod
    def from_json(cls, data) -> "DifferentialOperator":
        if not isinstance(data, dict) or "coeffs" not in data:
            raise MalformedInput("operator JSON must be an object with a 'coeffs' array")
        coeffs = data["coeffs"]
        if not isinstance(coeffs, list):
            raise MalformedInput("'coeffs' must be an array")
        return make_operator([DensePolynomial.from_json(c) for c in coeffs])


def make_operator(coeffs: Sequence) -> DifferentialOperator:
    """Build an operator from ``[a_0, a_1, ..., a_N]``.

    Entries may be polynomials, scalars, or coefficient lists. ``a_0`` must be
    constant; it is removed and kept as ``constant_shift``. Trailing zero
    coefficients are stripped.
    """
    polys = [as_polynomial(c) for c in coeffs]
    if not polys:
        raise EmptyOperator()
    a0 = polys[0]
    if a0.degree is not None and a0.degree >= 1:
        raise NonconstantZeroTerm(a0.degree)
    for m, p in enumerate(polys[1:], start=1):
        if p.degree is not None and p.degree > m:
            raise DegreeBound(m, p.degree)
    while len(polys) > 1 and polys[-1].is_zero():
        polys.pop()
    if len(polys) == 1:
        raise EmptyOperator()
    return DifferentialOperator((ZERO,) + tuple(polys[1:]), a0[0])


def apply_operator(L: DifferentialOperator, p: DensePolynomial) -> DensePolynomial:
    """``sum_{i=1}^N a_i(x) p^{(i)}(x)``; the shift ``a_0`` is not applied."""
    out = ZERO
    for i in range(1, L.order + 1):
        a = L.coeffs[i]
        if a.is_zero():
            continue
        d = poly_derivative(p, i)
        if d.is_zero():
            break
        out = out + a * d
    return out


# ---------------------------------------------------------------------------
# text form

def _monomial_text(c: Fraction, power: int) -> str:
    if power == 0:
        return format_rational(c)
    mono = "x" if power == 1 else f"x^{power}"
    if c == 1:
        return mono
    if c == -1:
        return f"-{mono}"
    return f"{format_rational(c)}*{mono}"


def _poly_text(p: DensePolynomial) -> str:
    """Poly in parser-friendly ascending form: ``(1 - x)``, ``2*x``, ``-1``."""
    terms = [(i, c) for i, c in enumerate(p.coeffs) if c != 0]
    if len(terms) == 1:
        return _monomial_text(terms[0][1], terms[0][0])
    out = _monomial_text(terms[0][1], terms[0][0])
    for i, c in terms[1:]:
        sign = "-" if c < 0 else "+"
        out += f" {sign} {_monomial_text(abs(c), i)}"
    return f"({out})"


def pretty_print(L: DifferentialOperator) -> str:
    """Canonical text, ascending derivative order; re-parses to ``L``."""
    pieces = []
    if L.constant_shift != 0:
        pieces.append(format_rational(L.constant_shift))
    for m in range(1, L.order + 1):
        a = L.coeffs[m]
        if a.is_zero():
            continue
        if a == 1:
            pieces.append(f"D{m}")
        elif a == -1:
            pieces.append(f"-D{m}")
        else:
            pieces.append(f"{_poly_text(a)}*D{m}")
    out = pieces[0]
    for piece in pieces[1:]:
        if piece.startswith("-"):
            out += f" - {piece[1:]}"
        else:
            out += f" + {piece}"
    return out


class _Parser:
    # Values are dicts {derivative order: polynomial}; order 0 is the a_0 term.

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, expected):
        raise ParseError(self.pos, expected, self.text)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("integer")
        return int(self.text[start:self.pos])

    def parse(self) -> dict:
        value = self.expr()
        if self.peek():
            self.error("'+', '-', '*' or end of input")
        return value

    def expr(self) -> dict:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            value = _combine(value, rhs, 1 if op == "+" else -1)
        return value

    def term(self) -> dict:
        start = self.pos
        value = self.factor()
        while self.peek() == "*":
            self.pos += 1
            if any(k > 0 for k in value):
                # D acts on everything to its right; only a left polynomial factor is allowed
                self.pos = start
                self.error("derivative atom as the rightmost factor of a product")
            rhs = self.factor()
            poly = value.get(0, ZERO)
            value = {k: poly * p for k, p in rhs.items()}
        return value

    def factor(self) -> dict:
        ch = self.peek()
        if ch == "-":
            self.pos += 1
            return {k: -p for k, p in self.factor().items()}
        if ch == "(":
            self.pos += 1
            value = self.expr()
            if self.peek() != ")":
                self.error("')'")
            self.pos += 1
            return value
        if ch == "x":
            self.pos += 1
            power = 1
            if self.peek() == "^":
                self.pos += 1
                power = self.integer()
            return {0: DensePolynomial.monomial(power)}
        if ch == "D":
            self.pos += 1
            if self.pos < len(self.text) and self.text[self.pos] in "123456789":
                m = int(self.text[self.pos])
                self.pos += 1
                return {m: DensePolynomial.constant(1)}
            self.error("derivative index 1..9 after 'D'")
        if ch.isdigit():
            num = self.integer()
            den = 1
            if self.peek() == "/":
                self.pos += 1
                den = self.integer()
                if den == 0:
                    self.error("nonzero denominator")
            return {0: DensePolynomial.constant(Fraction(num, den))}
        self.error("rational, 'x', 'D<digit>', '(' or '-'")


def _combine(a: dict, b: dict, sign: int) -> dict:
    out = dict(a)
    for k, p in b.items():
        out[k] = out.get(k, ZERO) + p * sign
    return out


def parse_operator(spec: str) -> DifferentialOperator:
    """Parse text such as ``"2*x*D1 - D2"`` or ``"(1 - x)*D1 + x*D2"``."""
    value = _Parser(spec).parse()
    order = max(value) if value else 0
    return make_operator([value.get(m, ZERO) for m in range(order + 1)])


def load_operator(source: str) -> DifferentialOperator:
    """Accept operator text, ``@path`` to a text or JSON file, or inline JSON."""
    import json

    text = source
    if source.startswith("@"):
        with open(source[1:], encoding="utf-8") as fh:
            text = fh.read()
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"invalid operator JSON: {exc}") from None
        return DifferentialOperator.from_json(data.get("operator", data))
    return parse_operator(stripped)


def random_operator(order: int, rng: random.Random, low: int = -5, high: int = 5) -> DifferentialOperator:
    """Operator with integer coefficients uniform in ``[low, high]``; ``a_{N,N} != 0``."""
    coeffs = [ZERO]
    for m in range(1, order + 1):
        c = [rng.randint(low, high) for _ in range(m + 1)]
        if m == order:
            while c[m] == 0:
                c[m] = rng.randint(low, high)
        coeffs.append(DensePolynomial(c))
    return make_operator(coeffs)
