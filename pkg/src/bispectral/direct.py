"""Direct problem: operator -> eigenvalues and monic eigenpolynomials.

Two independent routes compute ``b_{n,i}``:

* back-substitution in the upper triangular system
  ``(delta_m^(0) - lambda_n) b_{n,m} + sum_{k=1}^N delta_{m+k}^(k) b_{n,m+k} = 0``;
* the explicit sum over integer compositions of ``n - i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterator, Optional

from .delta import DeltaTable, delta_from_operator
from .errors import DegenerateSpectrum, MalformedInput
from .opcore import DifferentialOperator, apply_operator
from .ratpoly import DensePolynomial, format_rational, parse_rational

__all__ = [
    "EigenSystem", "eigenvalue", "eigenvalues", "check_distinct_eigenvalues",
    "solve_direct_triangular", "solve_direct_compositions", "verify_eigensystem",
    "compositions",
]


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues ``lambda_0..lambda_n_max`` and monic ``P_0..P_n_max``."""

    eigenvalues: tuple
    polys: tuple
    source_order: Optional[int] = None

    def __post_init__(self):
        if len(self.eigenvalues) != len(self.polys):
            raise MalformedInput("eigenvalues and polys must have the same length")
        for n, p in enumerate(self.polys):
            if p.degree != n or p[n] != 1:
                raise MalformedInput(f"P_{n} must be monic of degree {n}")

    @property
    def n_max(self) -> int:
        return len(self.polys) - 1

    def b(self, n: int, i: int) -> Fraction:
        """``b_{n,i}``, zero for ``i > n``."""
        return self.polys[n][i]

    def to_json(self) -> dict:
        out = {
            "eigenvalues": [format_rational(v) for v in self.eigenvalues],
            "polys": [p.to_json() for p in self.polys],
        }
        if self.source_order is not None:
            out["source_order"] = self.source_order
        return out

    @classmethod
    def from_json(cls, data) -> "EigenSystem":
        if not isinstance(data, dict) or "eigenvalues" not in data or "polys" not in data:
            raise MalformedInput("eigensystem JSON needs 'eigenvalues' and 'polys'")
        return cls(
            tuple(parse_rational(v) for v in data["eigenvalues"]),
            tuple(DensePolynomial.from_json(p) for p in data["polys"]),
            data.get("source_order"),
        )


def eigenvalue(L: DifferentialOperator, n: int) -> Fraction:
    """``lambda_n = sum_{i=1}^{min(n,N)} C(n,i) i! a_{i,i}``."""
    s = Fraction(0)
    for i in range(1, min(n, L.order) + 1):
        s += comb(n, i) * factorial(i) * L.coeff(i, i)
    return s


def eigenvalues(L: DifferentialOperator, n_max: int) -> tuple:
    return tuple(eigenvalue(L, n) for n in range(n_max + 1))


def check_distinct_eigenvalues(L: DifferentialOperator, n_max: int):
    """``(True, None)`` if ``lambda_0..lambda_n_max`` are pairwise distinct,
    else ``(False, (m, n))`` for the first collision with ``m < n``."""
    seen = {}
    for n in range(n_max + 1):
        lam = eigenvalue(L, n)
        if lam in seen:
            return False, (seen[lam], n)
        seen[lam] = n
    return True, None


def _require_distinct(L, n_max):
    ok, pair = check_distinct_eigenvalues(L, n_max)
    if not ok:
        m, n = pair
        raise DegenerateSpectrum(m, n, eigenvalue(L, n))


def _solve_row(table: DeltaTable, N: int, n: int) -> DensePolynomial:
    lam = table[n, 0]
    b = [Fraction(0)] * (n + 1)
    b[n] = Fraction(1)
    for m in range(n - 1, -1, -1):
        s = Fraction(0)
        for k in range(1, min(N, n - m) + 1):
            bk = b[m + k]
            if bk:
                s += table[m + k, k] * bk
        denom = lam - table[m, 0]
        if denom == 0:
            raise DegenerateSpectrum(m, n, lam)
        b[m] = s / denom
    return DensePolynomial(b)


def solve_direct_triangular(L: DifferentialOperator, n_max: int,
                            table: Optional[DeltaTable] = None) -> EigenSystem:
    """Monic eigenpolynomials by back-substitution, ``m = n-1 .. 0``."""
    _require_distinct(L, n_max)
    if table is None:
        table = delta_from_operator(L, n_max)
    polys = tuple(_solve_row(table, L.order, n) for n in range(n_max + 1))
    lams = tuple(table[n, 0] for n in range(n_max + 1))
    return EigenSystem(lams, polys, L.order)


def compositions(total: int, max_part: Optional[int] = None) -> Iterator[tuple]:
    """Ordered tuples of positive integers summing to ``total``, parts <= ``max_part``."""
    if total == 0:
        yield ()
        return
    top = total if max_part is None else min(total, max_part)
    for first in range(1, top + 1):
        for rest in compositions(total - first, max_part):
            yield (first,) + rest


def solve_direct_compositions(L: DifferentialOperator, n: int, i: int,
                              table: Optional[DeltaTable] = None) -> Fraction:
    """``b_{n,i}`` as a sum over compositions ``(i_1..i_k)`` of ``n - i`` of

        prod_s delta^(i_s)_{i+i_1+..+i_s} / (lambda_n - lambda_{i+i_1+..+i_{s-1}})

    Parts larger than the order contribute zero and are skipped.
    """
    if not 0 <= i < n:
        raise ValueError("need 0 <= i < n")
    _require_distinct(L, n)
    if table is None:
        table = delta_from_operator(L, n)
    lam_n = table[n, 0]
    total = Fraction(0)
    for parts in compositions(n - i, L.order):
        term = Fraction(1)
        pos = i
        for part in parts:
            num = table[pos + part, part]
            if num == 0:
                term = Fraction(0)
                break
            term *= num / (lam_n - table[pos, 0])
            pos += part
        total += term
    return total


def verify_eigensystem(L: DifferentialOperator, sys: EigenSystem):
    """``(True, None)`` iff ``L P_n == lambda_n P_n`` for every stored ``n``,
    else ``(False, n)`` for the first failure."""
    for n, (lam, p) in enumerate(zip(sys.eigenvalues, sys.polys)):
        if apply_operator(L, p) != p * lam:
            return False, n
    return True, None
