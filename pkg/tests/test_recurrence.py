import json
from fractions import Fraction

import pytest

from bispectral.direct import EigenSystem, solve_direct_triangular
from bispectral.errors import InsufficientRows
from bispectral.recurrence import (BasisMatrix, RecurrenceRelation, check_recurrence_condition,
                                   conjecture_scan, detect_bandwidth, dump_jsonl, expand_x_times_p,
                                   polys_from_recurrence, sample_operator, summarize_scan)
from bispectral.ratpoly import X, DensePolynomial

from conftest import HERMITE, LAGUERRE, random_distinct_operators

MONOMIAL = EigenSystem(tuple(Fraction(n) for n in range(12)),
                       tuple(DensePolynomial.monomial(n) for n in range(12)))


@pytest.fixture(scope="module")
def hermite_sys():
    return solve_direct_triangular(HERMITE, 21)


@pytest.fixture(scope="module")
def laguerre_sys():
    return solve_direct_triangular(LAGUERRE, 21)


def test_expand_examples(hermite_sys, laguerre_sys):
    assert expand_x_times_p(hermite_sys, 3) == (0, 0, Fraction(3, 2), 0)
    assert expand_x_times_p(laguerre_sys, 2) == (0, 4, 5)
    for s in (hermite_sys, laguerre_sys):
        assert expand_x_times_p(s, 0) == (-s.b(1, 0),)


def test_expand_reproduces_x_p(laguerre_sys):
    for n in range(20):
        c = expand_x_times_p(laguerre_sys, n)
        rhs = laguerre_sys.polys[n + 1]
        for k, ck in enumerate(c):
            rhs = rhs + laguerre_sys.polys[k] * ck
        assert rhs == X * laguerre_sys.polys[n]


def test_expand_needs_next_row(hermite_sys):
    with pytest.raises(InsufficientRows):
        expand_x_times_p(hermite_sys, 21)


def test_detect_classical(hermite_sys, laguerre_sys):
    rel = detect_bandwidth(hermite_sys, 20)
    assert rel.bandwidth == 1
    for n in range(21):
        assert rel.alpha(n, n) == 0
        if n:
            assert rel.alpha(n, n - 1) == Fraction(n, 2)
    rel = detect_bandwidth(laguerre_sys, 20)
    assert rel.bandwidth == 1
    for n in range(21):
        assert rel.alpha(n, n) == 2 * n + 1
        if n:
            assert rel.alpha(n, n - 1) == n * n


def test_detect_monomial():
    rel = detect_bandwidth(MONOMIAL, 10)
    assert rel.bandwidth == 0
    assert all(rel.alpha(n, n) == 0 for n in range(11))


def test_condition_examples(hermite_sys):
    assert check_recurrence_condition(hermite_sys, 1, 5)
    assert not check_recurrence_condition(hermite_sys, 0, 3)
    for n in range(1, 10):
        assert check_recurrence_condition(MONOMIAL, 0, n)
    with pytest.raises(ValueError):
        check_recurrence_condition(hermite_sys, 3, 3)


def _criteria_agree(sys, n_max):
    rel = detect_bandwidth(sys, n_max)
    p = rel.bandwidth
    assert all(check_recurrence_condition(sys, p, n) for n in range(p + 1, n_max + 1))
    if p:
        assert not all(check_recurrence_condition(sys, p - 1, n) for n in range(p, n_max + 1))
    return rel


def test_criteria_equivalence(hermite_sys, laguerre_sys):
    for s in (hermite_sys, laguerre_sys, MONOMIAL):
        _criteria_agree(s, min(s.n_max - 1, 16))
    for L in random_distinct_operators(10, [2, 3, 4], 13, seed=21):
        _criteria_agree(solve_direct_triangular(L, 13), 12)


def test_reproduction_and_forward_recursion(laguerre_sys):
    systems = [laguerre_sys] + [solve_direct_triangular(L, 11) for L in random_distinct_operators(6, [2, 3, 4], 11, seed=3)]
    for s in systems:
        n_max = s.n_max - 1
        rel = detect_bandwidth(s, n_max)
        polys = s.polys
        for n in range(n_max + 1):
            acc = polys[n + 1] - X * polys[n]
            for k in range(rel.start(n), n + 1):
                acc = acc + polys[k] * rel.alpha(n, k)
            assert acc.is_zero()
        assert polys_from_recurrence(rel, n_max + 2) == polys[:n_max + 2]


def test_tail_window_is_unit_triangular(hermite_sys):
    for p in range(4):
        for n in range(p + 1, 15):
            tail = BasisMatrix(hermite_sys.polys, n - p, n + 2, p + 2).tail(p + 2)
            for r, row in enumerate(tail):
                assert row[r] == 1
                assert all(v == 0 for v in row[:r])


def test_recurrence_json():
    rel = detect_bandwidth(solve_direct_triangular(LAGUERRE, 6), 5)
    assert RecurrenceRelation.from_json(json.loads(json.dumps(rel.to_json()))) == rel


def test_scan_empty():
    assert conjecture_scan([2, 3], 0, 10, seed=1) == []


def test_scan_with_hermite():
    recs = conjecture_scan([2], 5, 12, seed=7, include=[HERMITE, LAGUERRE])
    assert len(recs) == 7
    assert recs[-2]["observed_p"] == 1 and recs[-2]["conjecture_holds"] is True
    assert recs[-1]["observed_p"] == 1
    for rec in recs:
        if rec["distinct_spectrum"]:
            assert rec["conjecture_holds"] == (rec["observed_p"] <= rec["order"] - 1)


def test_scan_deterministic_and_reproducible():
    a = conjecture_scan([3], 6, 10, seed=42)
    b = conjecture_scan([3], 6, 10, seed=42, jobs=2)
    assert dump_jsonl(a) == dump_jsonl(b)
    for rec in a:
        L, distinct = sample_operator(3, 42, rec["trial"], 10)
        assert L.to_json()["coeffs"] == rec["coeffs"]
        if distinct:
            sys = solve_direct_triangular(L, 11)
            assert detect_bandwidth(sys, 10).bandwidth == rec["observed_p"]


def test_summarize():
    recs = [{"order": 2, "observed_p": 1}, {"order": 2, "observed_p": 1}, {"order": 3, "observed_p": None}]
    assert summarize_scan(recs) == {(2, 1): 2, (3, None): 1}
