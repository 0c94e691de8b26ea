import random

import pytest

from bispectral.direct import check_distinct_eigenvalues
from bispectral.opcore import make_operator, random_operator
from bispectral.ratpoly import DensePolynomial


def poly(*coeffs):
    return DensePolynomial(coeffs)


HERMITE = make_operator([0, poly(0, 2), -1])
LAGUERRE = make_operator([0, poly(1, -1), poly(0, 1)])


def random_distinct_operators(count, orders, n_max, seed=0):
    """``count`` random integer operators with pairwise distinct lambda_0..lambda_n_max."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        order = orders[len(out) % len(orders)]
        L = random_operator(order, rng)
        if check_distinct_eigenvalues(L, n_max)[0]:
            out.append(L)
    return out


@pytest.fixture
def hermite():
    return HERMITE


@pytest.fixture
def laguerre():
    return LAGUERRE


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
