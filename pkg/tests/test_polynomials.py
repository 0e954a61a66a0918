from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qac.algebra import BiPoly
from qac.errors import ParameterConstraint
from qac.operators import f_operator
from qac.polynomials import (
    ParamPoint,
    ascu_from_h,
    ascu_operator,
    ascu_phi,
    ascu_sum,
    ascu_u,
    cauchy_eval,
    cauchy_poly,
    rs_g,
    rs_h,
)
from qac.qkernel import binom2
from qac.scalars import QContext

F = Fraction
X, Y = BiPoly.x(), BiPoly.y()
values = st.fractions(min_value=-3, max_value=3, max_denominator=9)
nonzero = values.filter(lambda v: v != 0)
bases = st.sampled_from(["1/2", "1/3", "2/5"])


def pt(x, y, a):
    return ParamPoint(x=F(x), y=F(y), a=F(a))


def test_cauchy_examples(half):
    assert cauchy_poly(0, half) == BiPoly.constant(1)
    assert cauchy_eval(2, F(2), F(1), half) == F(3, 2)
    q = half.q
    assert cauchy_poly(2, half) == X * X - (1 + q) * X * Y + q * Y * Y


def test_cauchy_numeric_matches_exact(half_num, half):
    v = cauchy_eval(5, half_num.lift(F(2, 3)), half_num.lift(F(-1, 4)), half_num)
    exact = cauchy_eval(5, F(2, 3), F(-1, 4), half)
    with half_num.precision():
        assert abs(v - half_num.lift(exact)) < mpmath.mpf(10) ** -70


def test_ascu_sum_examples(half):
    assert ascu_sum(0, pt(3, 5, 7), half) == 1
    assert ascu_sum(1, pt(1, F(1, 2), 1), half) == F(-1, 2)
    assert ascu_sum(2, pt(1, 1, 1), half) == F(1, 2)


@given(values, values, values)
def test_u1_linear(x, y, a):
    assert ascu_sum(1, pt(x, y, a), QContext("1/3")) == x - y - a


def test_ascu_phi_examples(half):
    assert ascu_phi(0, pt(1, 2, 3), half) == 1
    assert ascu_phi(1, pt(1, F(1, 2), 1), half) == F(-1, 2)
    p = pt(1, F(1, 2), F(1, 3))
    assert ascu_phi(2, p, half) == ascu_sum(2, p, half)


def test_ascu_phi_constraints(half):
    with pytest.raises(ParameterConstraint):
        ascu_phi(2, pt(0, 1, 1), half)
    with pytest.raises(ParameterConstraint):
        ascu_phi(2, pt(1, 1, 0), half)


def test_operator_route_examples(half):
    a = F(2, 7)
    assert f_operator(a, cauchy_poly(1, half), half) == X - Y - a
    assert ascu_operator(0, pt(1, F(1, 2), F(1, 3)), half, route="E") == 1
    p = pt(1, F(1, 2), F(1, 3))
    assert ascu_operator(2, p, half, route="E") == ascu_sum(2, p, half)
    assert ascu_operator(2, p, half, route="F") == ascu_sum(2, p, half)


def test_ascu_u_examples(half):
    assert ascu_u(0, F(3), F(1, 5), half) == 1
    for x, a in [(F(3), F(1, 5)), (F(-1, 2), F(2))]:
        assert ascu_u(1, x, a, half) == x - 1 - a
    x, a = F(3), F(1, 5)
    assert ascu_sum(2, pt(2 * x, 2, 2 * a), half) == 4 * ascu_u(2, x, a, half)
    assert ascu_u(2, x, a, half, route="definition") == ascu_u(2, x, a, half)


def test_rs_g_examples(half):
    a = F(3, 7)
    assert rs_g(1, a, half) == 1 + a
    assert all(rs_g(n, 0, half) == 1 for n in range(6))
    assert rs_g(2, 1, half) == 5
    assert ascu_sum(2, pt(0, 1, 1), half) == F(5, 2)


def test_rs_h_examples(half):
    assert rs_h(0, F(2), F(3), half) == 1
    x, y = F(2, 3), F(1, 5)
    assert rs_h(1, x, y, half) == 1 + x - y
    p = pt(1, F(1, 2), F(1, 3))
    assert ascu_from_h(2, p, half) == ascu_sum(2, p, half)
    with pytest.raises(ParameterConstraint):
        ascu_from_h(2, pt(1, 1, 0), half)


@given(nonzero, values, nonzero, bases, st.integers(0, 12))
def test_route_equivalence(x, y, a, q, n):
    ctx = QContext(q)
    p = pt(x, y, a)
    ref = ascu_sum(n, p, ctx)
    assert ascu_phi(n, p, ctx) == ref
    assert ascu_operator(n, p, ctx, route="F") == ref
    assert ascu_operator(n, p, ctx, route="E") == ref


@given(values, values, values, bases)
def test_symmetry_in_a_and_y(x, y, a, q):
    ctx = QContext(q)
    for n in range(13):
        assert ascu_sum(n, pt(x, y, a), ctx) == ascu_sum(n, pt(x, a, y), ctx)


@given(values, nonzero, values, bases, st.integers(0, 12))
def test_u_relation(x, y, a, q, n):
    ctx = QContext(q)
    assert ascu_sum(n, pt(x, y, a), ctx) == y**n * ascu_u(n, x / y, a / y, ctx)


@given(values, values, nonzero, bases, st.integers(0, 12))
def test_h_relation_inverted_base(x, y, a, q, n):
    ctx = QContext(q)
    assert ascu_from_h(n, pt(x, y, a), ctx) == ascu_sum(n, pt(x, y, a), ctx)


@given(values, bases, st.integers(0, 12))
def test_g_relation(a, q, n):
    ctx = QContext(q)
    assert ascu_sum(n, pt(0, 1, a), ctx) == (-1) ** n * ctx.q ** binom2(n) * rs_g(n, a, ctx)


def test_param_point():
    p = ParamPoint(x=F(1, 2), y=F(3))
    assert p.replace(a=F(1))["a"] == 1
    assert p.as_strings() == {"x": "1/2", "y": "3"}
    with pytest.raises(KeyError):
        p["z"]
