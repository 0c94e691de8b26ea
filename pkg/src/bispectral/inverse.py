"""Inverse problem: eigenvalues and monic eigenpolynomials -> operator.

The delta table is rebuilt from eigendata either by the row recursion

    delta_{n+1}^(s+1) = (lambda_{n+1} - lambda_{n-s}) b_{n+1,n-s}
                        - sum_{k=1}^{s} delta_{n+k-s}^(k) b_{n+1,n+k-s}

or entry by entry as a signed Hessenberg determinant. The operator then
comes from the backward delta transform once the table is seen to vanish
outside a band ``k <= N``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .delta import DeltaTable, check_truncation, inverse_delta_transform, operator_from_delta
from .direct import EigenSystem, verify_eigensystem
from .errors import EmptyOperator, InsufficientRows, MalformedInput, NoTruncationFound, VerificationFailed
from .opcore import DifferentialOperator
from .ratpoly import DensePolynomial, format_rational

__all__ = [
    "EigenData", "delta_from_eigendata_recursive", "delta_from_eigendata_determinant",
    "hessenberg_matrix", "verify_delta_identity", "reconstruct_operator",
    "Reconstruction", "formal_coefficients",
]


@dataclass(frozen=True)
class EigenData(EigenSystem):
    """User-supplied eigendata, shifted so that ``lambda_0 == 0``.

    ``shift`` is the original ``lambda_0``; ``normalized`` is True when the
    input already had ``lambda_0 == 0``.
    """

    shift: Fraction = Fraction(0)

    @property
    def normalized(self) -> bool:
        return self.shift == 0

    @classmethod
    def from_values(cls, eigenvalues, polys) -> "EigenData":
        lams = tuple(Fraction(v) for v in eigenvalues)
        if not lams:
            raise MalformedInput("eigendata is empty")
        lam0 = lams[0]
        return cls(tuple(v - lam0 for v in lams), tuple(polys), None, lam0)

    @classmethod
    def from_system(cls, sys: EigenSystem) -> "EigenData":
        return cls.from_values(sys.eigenvalues, sys.polys)

    @classmethod
    def from_json(cls, data) -> "EigenData":
        return cls.from_system(EigenSystem.from_json(data))


def _check_rows(d, n_max):
    if d.n_max < n_max:
        raise InsufficientRows(n_max, d.n_max)


def delta_from_eigendata_recursive(d, n_max: Optional[int] = None) -> DeltaTable:
    if n_max is None:
        n_max = d.n_max
    _check_rows(d, n_max)
    lam = d.eigenvalues
    b = d.polys
    rows = [[lam[0]]]
    for n in range(n_max):
        # row n+1 from rows 0..n
        row = [Fraction(0)] * (n + 2)
        row[0] = lam[n + 1]
        bn1 = b[n + 1]
        for s in range(n + 1):
            v = (lam[n + 1] - lam[n - s]) * bn1[n - s]
            for k in range(1, s + 1):
                coef = bn1[n + k - s]
                if coef:
                    v -= rows[n + k - s][k] * coef
            row[s + 1] = v
        rows.append(row)
    return DeltaTable(tuple(tuple(r) for r in rows))


def hessenberg_matrix(d, n: int, k: int) -> list:
    """The ``k x k`` matrix whose signed determinant is ``delta_n^(k)``.

    First row ``(lambda_{n-k} - lambda_{n-k+j}) b_{n-k+j, n-k}``, below it
    ``b_{n-k+j, n-k+r}``: unit subdiagonal, zeros beneath.
    """
    lam = d.eigenvalues
    b = d.polys
    base = n - k
    H = [[(lam[base] - lam[base + j]) * b[base + j][base] for j in range(1, k + 1)]]
    for r in range(1, k):
        H.append([b[base + j][base + r] for j in range(1, k + 1)])
    return H


def _hessenberg_det(H) -> Fraction:
    # Laplace along the last column of each leading block; the minors split
    # into a leading block times a unit upper triangular block.
    k = len(H)
    minors = [Fraction(1)]
    for j in range(k):
        s = Fraction(0)
        for r in range(j + 1):
            if H[r][j]:
                s += (-1) ** (j - r) * H[r][j] * minors[r]
        minors.append(s)
    return minors[k]


def delta_from_eigendata_determinant(d, n: int, k: int) -> Fraction:
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    _check_rows(d, n)
    return (-1) ** k * _hessenberg_det(hessenberg_matrix(d, n, k))


def verify_delta_identity(d, t: DeltaTable):
    """Check ``sum_{k=0}^{n-m} delta_{m+k}^(k) b_{n,m+k} == lambda_n b_{n,m}``.

    Returns ``(True, None)`` or ``(False, (n, m))`` for the first failure.
    """
    for n in range(min(d.n_max, t.n_max) + 1):
        p = d.polys[n]
        lam = d.eigenvalues[n]
        for m in range(n + 1):
            s = sum((t[m + k, k] * p[m + k] for k in range(n - m + 1)), Fraction(0))
            if s != lam * p[m]:
                return False, (n, m)
    return True, None


def formal_coefficients(t: DeltaTable, N: int) -> list:
    """The polynomials ``a_n`` for ``n = N+1..n_max`` given by the backward
    transform, as ``(n, a_n)`` pairs. An order-``N`` operator realizes the
    window only if all of them vanish."""
    rows = inverse_delta_transform(lambda i, k: t[i, k], t.n_max)
    return [(n, DensePolynomial(rows[n])) for n in range(N + 1, t.n_max + 1)]


def degree_remark_holds(t: DeltaTable, N: int) -> bool:
    """``a_n / x^(n-N)`` is a polynomial of degree <= N for every formal ``a_n``, n > N."""
    for n, a in formal_coefficients(t, N):
        if any(a[i] != 0 for i in range(0, n - N)):
            return False
    return True


@dataclass
class Reconstruction:
    operator: DifferentialOperator
    order: int
    window: int
    table: DeltaTable
    shift: Fraction = Fraction(0)
    rejected: list = field(default_factory=list)

    def verdict(self) -> dict:
        return {
            "order": self.order,
            "truncation": "holds",
            "window": self.window,
            "violations": [],
            "lambda_shift": format_rational(self.shift),
            "rejected_orders": [n for n, _ in self.rejected],
        }


def reconstruct_operator(d, n_max: Optional[int] = None, N_bound: int = 6) -> Reconstruction:
    """Smallest-order operator reproducing the eigendata on rows ``0..n_max``.

    Every ``N <= N_bound`` whose band truncation holds is tried in increasing
    order; the first whose operator passes ``L P_n == lambda_n P_n`` on the
    window wins.
    """
    if not isinstance(d, EigenData):
        d = EigenData.from_system(d)
    if n_max is None:
        n_max = d.n_max
    if n_max <= N_bound:
        raise ValueError("n_max must exceed N_bound")
    _check_rows(d, n_max)
    window = EigenData(d.eigenvalues[:n_max + 1], d.polys[:n_max + 1], None, d.shift)
    t = delta_from_eigendata_recursive(window, n_max)
    evidence = None
    rejected = []
    for N in range(1, N_bound + 1):
        ok, violations = check_truncation(t, N)
        if not ok:
            if evidence is None or N == N_bound:
                evidence = violations
            continue
        try:
            L = operator_from_delta(t, N)
        except EmptyOperator:
            rejected.append((N, None))
            continue
        good, n_bad = verify_eigensystem(L, window)
        if good:
            table = DeltaTable(t.rows, declared_order=L.order)
            return Reconstruction(L, L.order, n_max, table, d.shift, rejected)
        rejected.append((N, n_bad))
    if rejected:
        n_bad = next((n for _, n in rejected if n is not None), None)
        if n_bad is not None:
            raise VerificationFailed(n_bad, f"truncation holds for N in {[n for n, _ in rejected]} "
                                            "but no such operator reproduces the window")
        raise EmptyOperator()
    raise NoTruncationFound(N_bound, evidence or [])
