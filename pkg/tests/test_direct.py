from fractions import Fraction
from math import comb, factorial

import pytest

from bispectral.delta import delta_from_operator
from bispectral.direct import (EigenSystem, check_distinct_eigenvalues, compositions, eigenvalue,
                               solve_direct_compositions, solve_direct_triangular, verify_eigensystem)
from bispectral.errors import DegenerateSpectrum, MalformedInput
from bispectral.opcore import make_operator, parse_operator

from conftest import HERMITE, LAGUERRE, poly, random_distinct_operators

EULER_SHIFTED = parse_operator("x^2*D2 - 3*x*D1")


def hermite_closed_form(n, j):
    gap = n - j
    if gap % 2:
        return Fraction(0)
    s = gap // 2
    return Fraction((-1) ** s, 4 ** s) * Fraction(factorial(n), factorial(n - 2 * s) * factorial(s))


def test_eigenvalue_examples():
    assert eigenvalue(HERMITE, 5) == 10
    assert eigenvalue(LAGUERRE, 4) == -4
    assert all(eigenvalue(L, 0) == 0 for L in (HERMITE, LAGUERRE, EULER_SHIFTED))


def test_distinct_examples():
    assert check_distinct_eigenvalues(HERMITE, 50) == (True, None)
    flat = make_operator([0, 1, -1])
    assert check_distinct_eigenvalues(flat, 3) == (False, (0, 1))
    # lambda_n = n^2 - 4n
    assert [eigenvalue(EULER_SHIFTED, n) for n in range(5)] == [0, -3, -4, -3, 0]
    assert check_distinct_eigenvalues(EULER_SHIFTED, 10) == (False, (1, 3))


def test_degenerate_rejected():
    with pytest.raises(DegenerateSpectrum) as info:
        solve_direct_triangular(EULER_SHIFTED, 10)
    assert info.value.pair == (1, 3)
    with pytest.raises(DegenerateSpectrum):
        solve_direct_compositions(EULER_SHIFTED, 4, 1)


def test_hermite_polys():
    sys = solve_direct_triangular(HERMITE, 4)
    assert sys.polys[0] == poly(1)
    assert sys.polys[2] == poly(Fraction(-1, 2), 0, 1)
    assert sys.polys[4] == poly(Fraction(3, 4), 0, -3, 0, 1)


def test_laguerre_polys():
    sys = solve_direct_triangular(LAGUERRE, 2)
    assert sys.polys[2] == poly(2, -4, 1)


def test_hermite_golden_closed_form():
    sys = solve_direct_triangular(HERMITE, 30)
    for n in range(31):
        assert sys.eigenvalues[n] == 2 * n
        for j in range(n + 1):
            assert sys.b(n, j) == hermite_closed_form(n, j)


def test_compositions_examples():
    assert sorted(compositions(3)) == [(1, 1, 1), (1, 2), (2, 1), (3,)]
    assert len(list(compositions(6))) == 2 ** 5
    # tribonacci count with parts <= 3
    assert len(list(compositions(6, 3))) == 24
    assert list(compositions(0)) == [()]


def test_composition_examples():
    assert solve_direct_compositions(HERMITE, 3, 1) == Fraction(-3, 2)
    assert solve_direct_compositions(HERMITE, 5, 2) == 0
    for L in (HERMITE, LAGUERRE):
        t = delta_from_operator(L, 8)
        for n in range(1, 9):
            want = t[n, 1] / (eigenvalue(L, n) - eigenvalue(L, n - 1))
            assert solve_direct_compositions(L, n, n - 1) == want


def test_dual_method_small():
    for L in [HERMITE, LAGUERRE] + random_distinct_operators(6, [2, 3, 4], 9, seed=11):
        sys = solve_direct_triangular(L, 9)
        t = delta_from_operator(L, 9)
        for n in range(10):
            for i in range(n):
                assert solve_direct_compositions(L, n, i, t) == sys.b(n, i)


def test_verify_examples():
    sys = solve_direct_triangular(HERMITE, 20)
    assert verify_eigensystem(HERMITE, sys) == (True, None)
    polys = list(sys.polys)
    polys[2] = poly(Fraction(-1, 3), 0, 1)
    bad = EigenSystem(sys.eigenvalues, tuple(polys))
    assert verify_eigensystem(HERMITE, bad) == (False, 2)


def test_verify_random_order_three():
    for L in random_distinct_operators(50, [3], 10, seed=5):
        assert verify_eigensystem(L, solve_direct_triangular(L, 10))[0]


def test_verify_identity_random_up_to_thirty():
    for L in random_distinct_operators(4, [1, 2, 3, 4], 30, seed=2):
        assert verify_eigensystem(L, solve_direct_triangular(L, 30))[0]


def test_coefficient_identity():
    # sum_k [sum_{i=k}^{m+k} C(m+k,i) i! a_{i,i-k}] b_{n,m+k} == lambda_n b_{n,m}, built from a_{i,j} directly
    for L in [HERMITE, LAGUERRE] + random_distinct_operators(5, [2, 3, 4], 15, seed=8):
        sys = solve_direct_triangular(L, 15)
        N = L.order
        for n in range(16):
            for m in range(n + 1):
                lhs = Fraction(0)
                for k in range(N + 1):
                    inner = sum(comb(m + k, i) * factorial(i) * L.coeff(i, i - k)
                                for i in range(k, m + k + 1))
                    lhs += inner * sys.b(n, m + k)
                assert lhs == sys.eigenvalues[n] * sys.b(n, m)


def test_deterministic_resolve():
    L = random_distinct_operators(1, [3], 12, seed=4)[0]
    assert solve_direct_triangular(L, 12) == solve_direct_triangular(L, 12)


def test_n_zero_only():
    sys = solve_direct_triangular(LAGUERRE, 0)
    assert sys.eigenvalues == (0,) and sys.polys == (poly(1),)


def test_json_roundtrip():
    sys = solve_direct_triangular(HERMITE, 3)
    data = sys.to_json()
    assert data["eigenvalues"] == ["0", "2", "4", "6"]
    assert data["polys"][2] == ["-1/2", "0", "1"]
    assert EigenSystem.from_json(data) == sys


def test_eigensystem_rejects_non_monic():
    with pytest.raises(MalformedInput):
        EigenSystem((0, 1), (poly(1), poly(0, 2)))
    with pytest.raises(MalformedInput):
        EigenSystem((0, 1), (poly(1), poly(0, 0, 1)))
