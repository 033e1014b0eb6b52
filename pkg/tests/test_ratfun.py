from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tropfold.ratfun import (
    DegreeCapExceeded,
    InconsistentSystemError,
    RatFun,
    SingularMatrixError,
    det,
    identity,
    lu,
    mat_inv,
    mat_mul,
    solve_linear,
    valuation,
)

t = RatFun.monomial(1)
ONE = RatFun.const(1)


def test_valuation_examples():
    assert valuation(t**3 / (1 + t)) == 3
    assert valuation((t**2 + t**5) / t**4) == -2
    assert valuation(RatFun.const(0)) == math.inf
    assert (t**3 / (1 + t)).leading_coefficient() == 1


def test_field_examples():
    assert (1 + t) * (1 - t) == 1 - t**2
    assert t.inv() == RatFun.monomial(-1)
    assert RatFun((2, 2), (4,)) == RatFun((Fraction(1, 2), Fraction(1, 2)))
    assert RatFun((0, 1, 1), (0, 2)) == RatFun((1, 1), (2,))
    with pytest.raises(ZeroDivisionError):
        RatFun.const(0).inv()


def test_solve_2x2_residual():
    m = [[ONE, t], [t**2, 1 + t]]
    b = [t, ONE]
    x = solve_linear(m, b)
    assert [m[i][0] * x[0] + m[i][1] * x[1] for i in range(2)] == b


def test_linear_algebra_errors():
    with pytest.raises(SingularMatrixError):
        solve_linear([[ONE, t], [ONE, t]], [ONE, ONE])
    with pytest.raises(InconsistentSystemError):
        solve_linear([[ONE], [ONE]], [ONE, t])
    with pytest.raises(SingularMatrixError):
        lu([[RatFun.const(0), ONE], [ONE, ONE]])


def test_matrix_helpers():
    a = [[1 + t, t], [t**2, ONE]]
    assert mat_mul(a, mat_inv(a)) == identity(2, ONE)
    assert det(a) == 1 + t - t**3
    low, up = lu(a)
    assert mat_mul(low, up) == a


def test_degree_cap():
    old = RatFun.degree_cap
    RatFun.degree_cap = 10
    try:
        with pytest.raises(DegreeCapExceeded):
            (1 + t) ** 11
    finally:
        RatFun.degree_cap = old


polys = st.lists(st.integers(-5, 5), min_size=1, max_size=4).filter(any)


def _rf(num, den, shift):
    return RatFun(num, den) * RatFun.monomial(shift)


@given(polys, polys, polys, polys, st.integers(-3, 3), st.integers(-3, 3))
def test_valuation_laws(n1, d1, n2, d2, s1, s2):
    f, g = _rf(n1, d1, s1), _rf(n2, d2, s2)
    assert valuation(f * g) == valuation(f) + valuation(g)
    h = f + g
    assert valuation(h) >= min(valuation(f), valuation(g))
    if valuation(f) != valuation(g) or f.leading_coefficient() + g.leading_coefficient() != 0:
        assert valuation(h) == min(valuation(f), valuation(g))
    assert (f + g) - g == f
    assert (f * g) / g == f
