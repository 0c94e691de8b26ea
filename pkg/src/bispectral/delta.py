"""The triangular table ``delta[n][k]`` linking operator coefficients to eigendata.

Forward transform (operator -> table)::

    delta_n^(k) = sum_{i=k}^{n} C(n, i) i! a_{i, i-k}

Backward transform (table -> operator)::

    n! a_{n, n-k} = sum_{i=k}^{n} C(n, i) (-1)^(n-i) delta_i^(k)

The two are mutually inverse on arbitrary triangular families; nothing here
assumes the numbers come from a differential operator.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Optional

from .errors import EmptyOperator, InsufficientRows, MalformedInput
from .opcore import DifferentialOperator, make_operator
from .ratpoly import DensePolynomial, format_rational, parse_rational

__all__ = [
    "DeltaTable", "delta_transform", "inverse_delta_transform",
    "delta_from_operator", "operator_from_delta", "check_truncation",
]


@dataclass(frozen=True)
class DeltaTable:
    """``rows[n][k]`` is ``delta_n^(k)`` for ``k = 0..n``."""

    rows: tuple
    declared_order: Optional[int] = None

    def __post_init__(self):
        for n, row in enumerate(self.rows):
            if len(row) != n + 1:
                raise MalformedInput(f"delta row {n} must have {n + 1} entries, got {len(row)}")

    @property
    def n_max(self) -> int:
        return len(self.rows) - 1

    def row(self, n: int) -> tuple:
        return self.rows[n]

    def __getitem__(self, nk) -> Fraction:
        n, k = nk
        if k > n or k < 0:
            return Fraction(0)
        return self.rows[n][k]

    def get(self, n: int, k: int) -> Fraction:
        """Entry with zero outside the stored triangle (including rows past ``n_max``
        when the order is declared and ``k`` exceeds it)."""
        if k < 0 or k > n:
            return Fraction(0)
        if n > self.n_max:
            if self.declared_order is not None and k > self.declared_order:
                return Fraction(0)
            raise InsufficientRows(n, self.n_max)
        return self.rows[n][k]

    def eigenvalues(self) -> tuple:
        return tuple(row[0] for row in self.rows)

    def to_json(self) -> dict:
        return {
            "n_max": self.n_max,
            "declared_order": self.declared_order,
            "rows": [[format_rational(v) for v in row] for row in self.rows],
        }

    @classmethod
    def from_json(cls, data) -> "DeltaTable":
        if not isinstance(data, dict) or "rows" not in data:
            raise MalformedInput("delta JSON must be an object with a 'rows' array")
        rows = tuple(tuple(parse_rational(v) for v in row) for row in data["rows"])
        table = cls(rows, data.get("declared_order"))
        if "n_max" in data and data["n_max"] != table.n_max:
            raise MalformedInput(f"n_max={data['n_max']} disagrees with {len(rows)} rows")
        return table


def delta_transform(a: Callable[[int, int], Fraction], n_max: int, top: Optional[int] = None) -> tuple:
    """Rows ``0..n_max`` of the forward transform of the family ``a(i, j)``.

    ``top`` truncates the inner sum at ``i <= top`` (``a_i = 0`` beyond the order).
    """
    rows = []
    for n in range(n_max + 1):
        hi = n if top is None else min(n, top)
        row = []
        for k in range(n + 1):
            s = Fraction(0)
            for i in range(k, hi + 1):
                c = a(i, i - k)
                if c:
                    s += comb(n, i) * factorial(i) * c
            row.append(s)
        rows.append(tuple(row))
    return tuple(rows)


def inverse_delta_transform(delta: Callable[[int, int], Fraction], n_max: int) -> tuple:
    """Rows ``0..n_max`` of the family ``a[n][j]`` (``j = 0..n``) from ``delta(i, k)``."""
    rows = []
    for n in range(n_max + 1):
        row = [Fraction(0)] * (n + 1)
        nf = factorial(n)
        for k in range(n + 1):
            s = Fraction(0)
            for i in range(k, n + 1):
                d = delta(i, k)
                if d:
                    s += comb(n, i) * (-1) ** (n - i) * d
            row[n - k] = s / nf
        rows.append(tuple(row))
    return tuple(rows)


def delta_from_operator(L: DifferentialOperator, n_max: int) -> DeltaTable:
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    rows = delta_transform(L.coeff, n_max, top=L.order)
    return DeltaTable(rows, declared_order=L.order)


def operator_from_delta(t: DeltaTable, N: int) -> DifferentialOperator:
    """Coefficients ``a_1..a_N`` from rows ``0..N`` of ``t``; later rows are ignored."""
    if N < 1:
        raise EmptyOperator()
    if t.n_max < N:
        raise InsufficientRows(N, t.n_max)
    a = inverse_delta_transform(lambda i, k: t[i, k], N)
    return make_operator([DensePolynomial(row) for row in a])


def check_truncation(t: DeltaTable, N: int):
    """Whether ``delta_n^(k) == 0`` for every stored ``n > N`` and ``k > N``.

    Returns ``(ok, violations)`` with violations as ``(n, k, value)`` triples in
    row-major order.
    """
    violations = []
    for n in range(N + 1, t.n_max + 1):
        for k in range(N + 1, n + 1):
            v = t.rows[n][k]
            if v != 0:
                violations.append((n, k, v))
    return not violations, violations
