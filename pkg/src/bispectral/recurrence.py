"""Recurrence relations ``x P_n = P_{n+1} + sum_{k=n-p}^{n} alpha_{n,k} P_k``.

The bandwidth is measured by expanding every ``x P_n`` in the eigenpolynomial
basis; the characterization through the triangular tail system is kept as an
independent check.
"""
from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .direct import check_distinct_eigenvalues, solve_direct_triangular
from .errors import InsufficientRows, MalformedInput
from .opcore import DifferentialOperator, random_operator
from .ratpoly import ONE, X, format_rational, parse_rational

__all__ = [
    "RecurrenceRelation", "BasisMatrix", "expand_x_times_p", "detect_bandwidth",
    "check_recurrence_condition", "polys_from_recurrence", "conjecture_scan",
    "sample_operator", "summarize_scan",
]


def _b(polys, n, i):
    return polys[n][i] if i >= 0 else Fraction(0)


@dataclass(frozen=True)
class BasisMatrix:
    """Window of the change-of-basis array: entry ``(i, j)`` is ``b_{n+j, i}``."""

    polys: tuple
    n: int
    rows: int
    cols: int

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.polys[self.n + j][i]

    def tail(self, s: int):
        """The last ``s`` rows of the ``rows x s`` section as a list of lists."""
        return [[self[i, j] for j in range(s)] for i in range(self.rows - s, self.rows)]

    def head(self, count: int):
        return [[self[i, j] for j in range(self.cols)] for i in range(count)]


@dataclass(frozen=True)
class RecurrenceRelation:
    """``rows[n]`` holds ``alpha_{n,k}`` for ``k = max(0, n-p) .. n``."""

    bandwidth: int
    rows: tuple

    @property
    def n_max(self) -> int:
        return len(self.rows) - 1

    def start(self, n: int) -> int:
        return max(0, n - self.bandwidth)

    def alpha(self, n: int, k: int) -> Fraction:
        lo = self.start(n)
        if lo <= k <= n:
            return self.rows[n][k - lo]
        return Fraction(0)

    def to_json(self) -> dict:
        return {
            "bandwidth": self.bandwidth,
            "rows": [[format_rational(v) for v in row] for row in self.rows],
        }

    @classmethod
    def from_json(cls, data) -> "RecurrenceRelation":
        try:
            p = int(data["bandwidth"])
            rows = tuple(tuple(parse_rational(v) for v in row) for row in data["rows"])
        except (KeyError, TypeError) as exc:
            raise MalformedInput(f"bad recurrence JSON: {exc}") from None
        rel = cls(p, rows)
        for n, row in enumerate(rows):
            if len(row) != n - rel.start(n) + 1:
                raise MalformedInput(f"recurrence row {n} has wrong length {len(row)}")
        return rel


def expand_x_times_p(sys, n: int) -> tuple:
    """Coefficients ``c_{n,0..n}`` with ``x P_n = P_{n+1} + sum_k c_{n,k} P_k``.

    Solved top-down against the unit triangular basis ``P_0..P_n``.
    """
    polys = sys.polys
    if len(polys) < n + 2:
        raise InsufficientRows(n + 1, len(polys) - 1)
    # residual r = x P_n - P_{n+1}, degree <= n
    r = [_b(polys, n, i - 1) - polys[n + 1][i] for i in range(n + 1)]
    c = [Fraction(0)] * (n + 1)
    for k in range(n, -1, -1):
        ck = r[k]
        c[k] = ck
        if ck:
            pk = polys[k].coeffs
            for i in range(k):
                if pk[i]:
                    r[i] -= ck * pk[i]
    return tuple(c)


def detect_bandwidth(sys, n_max: Optional[int] = None) -> RecurrenceRelation:
    """Measure ``p = max_n (n - min{k : c_{n,k} != 0})`` over ``n <= n_max``."""
    if n_max is None:
        n_max = len(sys.polys) - 2
    if len(sys.polys) < n_max + 2:
        raise InsufficientRows(n_max + 1, len(sys.polys) - 1)
    expansions = [expand_x_times_p(sys, n) for n in range(n_max + 1)]
    p = 0
    for n, c in enumerate(expansions):
        low = next((k for k, v in enumerate(c) if v != 0), None)
        if low is not None:
            p = max(p, n - low)
    rows = tuple(tuple(c[max(0, n - p):]) for n, c in enumerate(expansions))
    return RecurrenceRelation(p, rows)


def _back_substitute_unit_upper(U, rhs):
    n = len(rhs)
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = rhs[i]
        for j in range(i + 1, n):
            if U[i][j]:
                s -= U[i][j] * x[j]
        x[i] = s / U[i][i]
    return x


def check_recurrence_condition(sys, p: int, n: int) -> bool:
    """Whether row ``n`` admits a bandwidth-``p`` relation.

    Solve the ``(p+2)``-row unit triangular tail system for
    ``(alpha_{n,n-p}, .., alpha_{n,n}, 1)``, then test the remaining ``n-p``
    head equations exactly.
    """
    if n <= p:
        raise ValueError("condition is defined for n > p")
    polys = sys.polys
    if len(polys) < n + 2:
        raise InsufficientRows(n + 1, len(polys) - 1)
    B = BasisMatrix(polys, n - p, n + 2, p + 2)
    # right-hand side: coefficients of x P_n, i = 0..n+1
    xp = [_b(polys, n, i - 1) for i in range(n + 2)]
    tail = B.tail(p + 2)
    sol = _back_substitute_unit_upper(tail, xp[n - p:])
    if sol[-1] != 1:
        return False
    for i, row in enumerate(B.head(n - p)):
        if sum(a * s for a, s in zip(row, sol)) != xp[i]:
            return False
    return True


def polys_from_recurrence(rel: RecurrenceRelation, count: int) -> tuple:
    """Rebuild ``P_0..P_{count-1}`` from ``P_0 = 1`` by forward recursion."""
    polys = [ONE]
    for n in range(count - 1):
        nxt = X * polys[n]
        for k in range(rel.start(n), n + 1):
            a = rel.alpha(n, k)
            if a:
                nxt = nxt - polys[k] * a
        polys.append(nxt)
    return tuple(polys[:count])


# ---------------------------------------------------------------------------
# empirical scan of the bandwidth bound p <= N - 1

def sample_operator(order: int, seed, trial: int, n_max: int,
                    low: int = -5, high: int = 5, max_tries: int = 200):
    """Draw random operators for one scan trial, rejecting degenerate spectra.

    Returns ``(operator, distinct)``; ``distinct`` is False only when every
    attempt collided. Deterministic in ``(order, seed, trial)``.
    """
    rng = random.Random(f"{seed}/{order}/{trial}")
    L = None
    for _ in range(max_tries):
        L = random_operator(order, rng, low, high)
        if check_distinct_eigenvalues(L, n_max + 1)[0]:
            return L, True
    return L, False


def _scan_record(L: DifferentialOperator, n_max: int, distinct: bool, **extra) -> dict:
    rec = dict(extra)
    rec["order"] = L.order
    rec["coeffs"] = L.to_json()["coeffs"]
    rec["distinct_spectrum"] = distinct
    rec["observed_p"] = None
    rec["conjecture_holds"] = None
    if distinct:
        sys = solve_direct_triangular(L, n_max + 1)
        rel = detect_bandwidth(sys, n_max)
        rec["observed_p"] = rel.bandwidth
        rec["conjecture_holds"] = rel.bandwidth <= L.order - 1
    return rec


def _run_trial(args) -> dict:
    order, seed, trial, n_max = args
    L, distinct = sample_operator(order, seed, trial, n_max)
    return _scan_record(L, n_max, distinct, seed=seed, trial=trial)


def conjecture_scan(orders: Sequence[int], trials: int, n_max: int, seed=0,
                    include: Iterable[DifferentialOperator] = (), jobs: int = 1) -> list:
    """Measure bandwidths of random operators; one record per trial.

    ``trials`` operators are drawn for each order. Operators in ``include``
    are appended with ``trial = None``. Records come back in a fixed order
    regardless of ``jobs``. Counterexamples are data, never errors.
    """
    tasks = [(order, seed, t, n_max) for order in orders for t in range(trials)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_run_trial, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        records = [_run_trial(t) for t in tasks]
    for L in include:
        distinct = check_distinct_eigenvalues(L, n_max + 1)[0]
        records.append(_scan_record(L, n_max, distinct, seed=seed, trial=None))
    return records


def summarize_scan(records: Sequence[dict]) -> dict:
    """Counts per ``(order, observed_p)``; skipped trials are keyed ``None``."""
    cells = {}
    for rec in records:
        key = (rec["order"], rec["observed_p"])
        cells[key] = cells.get(key, 0) + 1
    return cells


def format_scan_summary(records: Sequence[dict]) -> str:
    cells = summarize_scan(records)
    orders = sorted({k[0] for k in cells})
    ps = sorted({k[1] for k in cells if k[1] is not None})
    header = ["N \\ p"] + [str(p) for p in ps] + ["skipped", "p<=N-1"]
    lines = ["\t".join(header)]
    for order in orders:
        row = [str(order)] + [str(cells.get((order, p), 0)) for p in ps]
        row.append(str(cells.get((order, None), 0)))
        held = sum(1 for r in records if r["order"] == order and r["conjecture_holds"])
        tested = sum(1 for r in records if r["order"] == order and r["observed_p"] is not None)
        row.append(f"{held}/{tested}")
        lines.append("\t".join(row))
    return "\n".join(lines)


def dump_jsonl(records: Sequence[dict]) -> str:
    return "".join(json.dumps(rec, sort_keys=True) + "\n" for rec in records)
