"""Command-line front end.

Exit codes: 0 success, 1 verify found a mismatch in user data, 2 bad input or
configuration, 3 degenerate spectrum, 4 internal cross-check failure,
5 no truncation found, 6 verification of a reconstruction failed.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Optional

from .delta import check_truncation, delta_from_operator
from .direct import EigenSystem, solve_direct_compositions, solve_direct_triangular, verify_eigensystem
from .errors import (BispectralError, DegenerateSpectrum, InsufficientRows, MalformedInput,
                     NoTruncationFound, ParseError, VerificationFailed)
from .inverse import (EigenData, delta_from_eigendata_determinant, delta_from_eigendata_recursive,
                      reconstruct_operator, verify_delta_identity)
from .opcore import load_operator, pretty_print
from .ratpoly import format_rational
from .recurrence import check_recurrence_condition, conjecture_scan, detect_bandwidth, dump_jsonl, format_scan_summary

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_DEGENERATE = 3
EXIT_INTERNAL = 4
EXIT_NO_TRUNCATION = 5
EXIT_VERIFICATION = 6

DEFAULT_NMAX = 16
DEFAULT_ORDER_BOUND = 6

COMMANDS = ("direct", "inverse", "recurrence", "scan", "verify")


@dataclass
class JobConfig:
    command: str
    op: Optional[str] = None
    eigendata: Optional[str] = None
    n_max: Optional[int] = None
    order_bound: Optional[int] = None
    orders: list = field(default_factory=lambda: [2, 3, 4])
    trials: int = 10
    seed: int = 0
    jobs: int = 1
    json_path: Optional[str] = None

    def validate(self):
        if self.command not in COMMANDS:
            raise MalformedInput(f"unknown command {self.command!r}")
        if self.n_max is not None and self.n_max < 0:
            raise MalformedInput("--nmax must be nonnegative")
        if self.command == "scan":
            if self.trials < 0:
                raise MalformedInput("--trials must be >= 0")
            if any(o < 1 for o in self.orders):
                raise MalformedInput("--orders must be positive")
        elif self.command == "verify":
            if self.op is None and self.eigendata is None:
                raise MalformedInput("verify needs --op and/or --eigendata")
        elif self.command == "recurrence":
            if (self.op is None) == (self.eigendata is None):
                raise MalformedInput("give exactly one of --op or --eigendata")
        elif self.command == "direct" and self.op is None:
            raise MalformedInput("direct needs --op")
        elif self.command == "inverse" and self.eigendata is None:
            raise MalformedInput("inverse needs --eigendata")
        if self.command == "inverse" and self.op is not None:
            raise MalformedInput("inverse takes --eigendata only")


def _write_json(path, obj):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=1)
        fh.write("\n")


def _load_eigendata(path) -> EigenData:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: {exc}") from None
    return EigenData.from_json(data)


def _nmax(cfg, default=DEFAULT_NMAX):
    return default if cfg.n_max is None else cfg.n_max


def _eigen_table(sys_) -> str:
    lines = ["n\tlambda_n\tP_n(x)"]
    for n, (lam, p) in enumerate(zip(sys_.eigenvalues, sys_.polys)):
        lines.append(f"{n}\t{format_rational(lam)}\t{p.pretty()}")
    return "\n".join(lines)


def run_direct(cfg: JobConfig, out=None) -> int:
    L = load_operator(cfg.op)
    n_max = _nmax(cfg)
    table = delta_from_operator(L, n_max)
    sys_ = solve_direct_triangular(L, n_max, table)
    ok, n_bad = verify_eigensystem(L, sys_)
    if not ok:
        print(f"internal error: L P_{n_bad} != lambda_{n_bad} P_{n_bad}", file=sys.stderr)
        return EXIT_INTERNAL
    print(f"L = {pretty_print(L)}   (order {L.order})", file=out)
    if L.constant_shift:
        print(f"constant term {format_rational(L.constant_shift)} absorbed; "
              f"shift the eigenvalues by it to recover the original", file=out)
    print(_eigen_table(sys_), file=out)
    if cfg.json_path:
        doc = {"operator": L.to_json()}
        doc.update(sys_.to_json())
        doc["delta"] = table.to_json()
        _write_json(cfg.json_path, doc)
    return EXIT_OK


def run_inverse(cfg: JobConfig, out=None) -> int:
    d = _load_eigendata(cfg.eigendata)
    n_max = d.n_max if cfg.n_max is None else cfg.n_max
    bound = cfg.order_bound
    if bound is None:
        bound = min(DEFAULT_ORDER_BOUND, max(n_max - 1, 0))
    try:
        rec = reconstruct_operator(d, n_max, bound)
    except NoTruncationFound as exc:
        verdict = {"order": None, "truncation": "violated", "window": n_max,
                   "violations": [[n, k, format_rational(v)] for n, k, v in exc.evidence]}
        print(f"no operator of order <= {bound} on rows 0..{n_max}", file=out)
        for n, k, v in exc.evidence[:10]:
            print(f"  delta_{n}^({k}) = {format_rational(v)} != 0", file=out)
        if cfg.json_path:
            _write_json(cfg.json_path, {"operator": None, "verdict": verdict})
        return EXIT_NO_TRUNCATION
    print(f"L = {pretty_print(rec.operator)}   (order {rec.order}, "
          f"truncation holds on rows 0..{n_max})", file=out)
    if rec.shift:
        print(f"eigenvalues shifted by {format_rational(-rec.shift)} to make lambda_0 = 0", file=out)
    if cfg.json_path:
        _write_json(cfg.json_path, {"operator": rec.operator.to_json(), "verdict": rec.verdict()})
    return EXIT_OK


def _cross_check_bandwidth(sys_, p, n_max) -> bool:
    if not all(check_recurrence_condition(sys_, p, n) for n in range(p + 1, n_max + 1)):
        return False
    if p >= 1 and all(check_recurrence_condition(sys_, p - 1, n) for n in range(p, n_max + 1)):
        return False
    return True


def run_recurrence(cfg: JobConfig, out=None) -> int:
    if cfg.op is not None:
        L = load_operator(cfg.op)
        n_max = _nmax(cfg)
        sys_ = solve_direct_triangular(L, n_max + 1)
    else:
        sys_ = _load_eigendata(cfg.eigendata)
        n_max = sys_.n_max - 1 if cfg.n_max is None else cfg.n_max
    if n_max < 0:
        raise InsufficientRows(1, sys_.n_max)
    rel = detect_bandwidth(sys_, n_max)
    if not _cross_check_bandwidth(sys_, rel.bandwidth, n_max):
        print("internal error: bandwidth disagrees with the tail-system criterion", file=sys.stderr)
        return EXIT_INTERNAL
    p = rel.bandwidth
    print(f"observed p = {p} ({p + 2}-term recurrence) on n = 0..{n_max}", file=out)
    print("n\t" + "\t".join(f"alpha_(n,n-{j})" if j else "alpha_(n,n)" for j in range(p, -1, -1)), file=out)
    for n, row in enumerate(rel.rows):
        pad = [""] * (p + 1 - len(row))
        print(f"{n}\t" + "\t".join(pad + [format_rational(v) for v in row]), file=out)
    if cfg.json_path:
        doc = rel.to_json()
        doc["observed_p"] = p
        _write_json(cfg.json_path, doc)
    return EXIT_OK


def run_scan(cfg: JobConfig, out=None) -> int:
    records = conjecture_scan(cfg.orders, cfg.trials, _nmax(cfg), cfg.seed, jobs=cfg.jobs)
    report = dump_jsonl(records)
    summary = format_scan_summary(records) if records else "no trials"
    if cfg.json_path:
        with open(cfg.json_path, "w", encoding="utf-8") as fh:
            fh.write(report)
        print(summary, file=out)
    else:
        (out or sys.stdout).write(report)
        print(summary, file=sys.stderr)
    return EXIT_OK


def run_verify(cfg: JobConfig, out=None) -> int:
    if cfg.op is not None and cfg.eigendata is not None:
        L = load_operator(cfg.op)
        d = _load_eigendata(cfg.eigendata)
        # compare against the unshifted eigenvalues the user supplied
        raw = EigenSystem(tuple(v + d.shift - L.constant_shift for v in d.eigenvalues), d.polys)
        ok, n_bad = verify_eigensystem(L, raw)
        if not ok:
            print(f"mismatch: L P_{n_bad} != lambda_{n_bad} P_{n_bad}", file=out)
            return EXIT_MISMATCH
        print(f"ok: L P_n = lambda_n P_n for n = 0..{d.n_max}", file=out)
        return EXIT_OK

    if cfg.op is not None:
        L = load_operator(cfg.op)
        n_max = _nmax(cfg, 12)
        table = delta_from_operator(L, n_max)
        sys_ = solve_direct_triangular(L, n_max, table)
        checks = {"eigen equation": verify_eigensystem(L, sys_)[0]}
        checks["compositions == back-substitution"] = all(
            solve_direct_compositions(L, n, i, table) == sys_.b(n, i)
            for n in range(n_max + 1) for i in range(n))
        checks["band truncation"] = check_truncation(table, L.order)[0]
    else:
        d = _load_eigendata(cfg.eigendata)
        n_max = d.n_max if cfg.n_max is None else cfg.n_max
        table = delta_from_eigendata_recursive(d, n_max)
        checks = {
            "delta identity": verify_delta_identity(d, table)[0],
            "determinant == recursion": all(
                delta_from_eigendata_determinant(d, n, k) == table[n, k]
                for n in range(1, n_max + 1) for k in range(1, n + 1)),
        }
    for name, ok in checks.items():
        print(f"{'PASS' if ok else 'FAIL'}  {name}", file=out)
    return EXIT_OK if all(checks.values()) else EXIT_INTERNAL


RUNNERS = {
    "direct": run_direct,
    "inverse": run_inverse,
    "recurrence": run_recurrence,
    "scan": run_scan,
    "verify": run_verify,
}


def _csv_ints(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bispectral",
        description="Exact polynomial eigenproblems for differential operators.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--op", help="operator text, @file (text or JSON), or inline JSON")
    parser.add_argument("--eigendata", help="eigensystem JSON file")
    parser.add_argument("--nmax", type=int, dest="n_max")
    parser.add_argument("--order-bound", type=int, dest="order_bound")
    parser.add_argument("--orders", type=_csv_ints, default=[2, 3, 4])
    parser.add_argument("--trials", type=int, default=10)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    parser.add_argument("--json", dest="json_path", metavar="PATH")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = JobConfig(**vars(args))
    try:
        cfg.validate()
        return RUNNERS[cfg.command](cfg)
    except DegenerateSpectrum as exc:
        print(f"error: {exc}; collision pair ({exc.n}, {exc.m})", file=sys.stderr)
        return EXIT_DEGENERATE
    except VerificationFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    except NoTruncationFound as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_TRUNCATION
    except (ParseError, MalformedInput, InsufficientRows, BispectralError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
