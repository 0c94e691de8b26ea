import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bispectral.delta import (DeltaTable, check_truncation, delta_from_operator, delta_transform,
                              inverse_delta_transform, operator_from_delta)
from bispectral.direct import eigenvalue
from bispectral.errors import EmptyOperator, InsufficientRows, MalformedInput
from bispectral.opcore import random_operator

from conftest import HERMITE, LAGUERRE


def test_hermite_row_three():
    t = delta_from_operator(HERMITE, 3)
    assert t.row(3) == (6, 0, -6, 0)
    assert t.declared_order == 2


def test_hermite_closed_form():
    t = delta_from_operator(HERMITE, 20)
    for r in range(21):
        for k in range(r + 1):
            want = {0: 2 * r, 2: -r * (r - 1)}.get(k, 0)
            assert t[r, k] == want


def test_row_zero_vanishes():
    for L in (HERMITE, LAGUERRE, random_operator(3, random.Random(1))):
        assert delta_from_operator(L, 0).row(0) == (0,)


def test_laguerre_rows():
    # frozen from a standalone evaluation of the forward transform
    t = delta_from_operator(LAGUERRE, 4)
    assert t.row(2) == (-2, 4, 0)
    assert t.row(4) == (-4, 16, 0, 0, 0)


def test_operator_from_delta_hermite():
    t = delta_from_operator(HERMITE, 6)
    assert operator_from_delta(t, 2) == HERMITE


def test_operator_from_delta_errors():
    with pytest.raises(EmptyOperator):
        operator_from_delta(DeltaTable(((Fraction(0),),)), 0)
    with pytest.raises(InsufficientRows):
        operator_from_delta(delta_from_operator(HERMITE, 1), 2)


def test_n_zero_backward():
    # a_{0,0} = delta_0^(0)
    rows = inverse_delta_transform(lambda i, k: Fraction(5) if (i, k) == (0, 0) else Fraction(0), 0)
    assert rows == ((Fraction(5),),)


def test_truncation_examples():
    t = delta_from_operator(HERMITE, 10)
    assert check_truncation(t, 2) == (True, [])
    ok, violations = check_truncation(t, 1)
    assert not ok
    assert violations[0] == (2, 2, -2)
    short = delta_from_operator(HERMITE, 2)
    assert check_truncation(short, 2)[0]


def test_json_roundtrip():
    t = delta_from_operator(HERMITE, 4)
    data = t.to_json()
    assert data["rows"][1] == ["2", "0"]
    assert data["n_max"] == 4 and data["declared_order"] == 2
    assert DeltaTable.from_json(data) == t
    with pytest.raises(MalformedInput):
        DeltaTable.from_json({"rows": [["0"], ["1"]]})


def _random_triangle(rng, rows):
    return [[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n + 1)] for n in range(rows + 1)]


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9), st.integers(0, 8))
def test_forward_then_backward(seed, rows):
    a = _random_triangle(random.Random(seed), rows)
    delta = delta_transform(lambda i, j: a[i][j], rows)
    back = inverse_delta_transform(lambda i, k: delta[i][k], rows)
    assert [list(r) for r in back] == a


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9), st.integers(0, 8))
def test_backward_then_forward(seed, rows):
    d = _random_triangle(random.Random(seed), rows)
    a = inverse_delta_transform(lambda i, k: d[i][k], rows)
    again = delta_transform(lambda i, j: a[i][j], rows)
    assert [list(r) for r in again] == d


@given(st.integers(1, 5), st.integers(0, 10**6))
def test_eigenvalue_is_delta_zero(order, seed):
    L = random_operator(order, random.Random(seed))
    t = delta_from_operator(L, 12)
    for n in range(13):
        assert t[n, 0] == eigenvalue(L, n)


@given(st.integers(1, 5), st.integers(0, 10**6))
def test_truncation_sound(order, seed):
    L = random_operator(order, random.Random(seed))
    assert check_truncation(delta_from_operator(L, 14), L.order)[0]
