from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qac.algebra import BiPoly, UniPoly
from qac.errors import ConvergenceDomain, EvaluationAtZero, NotDivisible
from qac.operators import (
    dq,
    dq_func,
    dq_iterated_point,
    dq_power,
    dxy,
    dxy_power,
    e_cauchy_operator,
    e_theta_operator,
    eta_shift,
    f_operator,
    poch_ratio_handle,
    polynomial_handle,
    q_leibniz_check,
    t_cauchy_operator,
    t_operator,
    theta,
    theta_power,
)
from qac.polynomials import cauchy_poly
from qac.qkernel import binom2, qbinom, qfact, qpoch, qpoch_inf
from qac.scalars import QContext

F = Fraction
X, Y = BiPoly.x(), BiPoly.y()
coefs = st.fractions(min_value=-5, max_value=5, max_denominator=8)
polys = st.lists(coefs, min_size=1, max_size=6).map(UniPoly)


def mono(n, c=1):
    return UniPoly.monomial(n, F(c))


def test_dq_examples(half):
    q = half.q
    assert dq(mono(2), half) == mono(1, 1 - q**2)
    assert dq(UniPoly.constant(F(7)), half).is_zero()
    f = UniPoly([1, 2, 3])
    assert dq_power(f, 0, half) == f


def test_dq_func(half):
    f = polynomial_handle(UniPoly([1, 2, 3]))
    c = F(3, 4)
    assert dq_func(f, c, half) == dq(UniPoly([1, 2, 3]), half)(c)
    with pytest.raises(EvaluationAtZero):
        dq_func(f, 0, half)


def test_dq_iterated_point_examples(half):
    f = polynomial_handle(mono(3))
    c = F(2, 3)
    assert dq_iterated_point(f, 1, c, half) == dq_func(f, c, half)
    assert dq_iterated_point(f, 0, c, half) == c**3
    assert dq_iterated_point(f, 2, 1, half) == F(21, 32)


@given(polys, st.integers(0, 6), coefs.filter(lambda c: c != 0))
def test_dq_iterated_matches_repeated(f, n, c):
    ctx = QContext("2/5")
    assert dq_iterated_point(polynomial_handle(f), n, c, ctx) == dq_power(f, n, ctx)(c)


def test_eta_examples(half):
    assert eta_shift(mono(2), 1, half) == mono(2, F(1, 4))
    f = UniPoly([1, -2, 5])
    assert eta_shift(eta_shift(f, -1, half), 1, half) == f
    assert eta_shift(mono(3), -1, half) == mono(3, 8)


def test_theta_examples(half):
    assert theta(mono(2), half) == mono(1, F(3, 2))
    assert theta(UniPoly.constant(F(4)), half).is_zero()
    assert theta_power(mono(2), 2, half) == UniPoly.constant(F(3, 4))


@pytest.mark.parametrize("n", range(11))
def test_monomial_laws(base, n):
    q = base.q
    if n == 0:
        assert dq(mono(0), base).is_zero()
    else:
        assert dq(mono(n), base) == mono(n - 1, 1 - q**n)
        assert theta(mono(n), base) == mono(n - 1, (1 - q**n) * q ** (1 - n))
    assert eta_shift(mono(n), 1, base) == mono(n, q**n)
    assert eta_shift(mono(n), -1, base) == mono(n, q**-n)


def test_leibniz_examples(half):
    a = mono(1)
    assert q_leibniz_check(a, a, 0, half)
    assert q_leibniz_check(a, a, 1, half)
    f, g = UniPoly([1, F(1, 2), -2, 0, 3]), UniPoly([F(2, 3), 0, 1, 1, -1])
    assert q_leibniz_check(f, g, 3, half)


@given(polys, polys, st.integers(0, 4), st.sampled_from(["1/2", "1/3", "2/5"]))
def test_leibniz_property(f, g, n, q):
    assert q_leibniz_check(f, g, n, QContext(q))


def test_leibniz_detects_wrong_rule(half):
    # dropping the q^{k(k-n)} weight gives a different polynomial
    f, g, n = UniPoly([0, 1, 1]), UniPoly([1, 0, 1]), 2
    wrong = UniPoly([])
    for k in range(n + 1):
        wrong = wrong + dq_power(f, k, half) * dq_power(g.scale(half.q**k), n - k, half) * qbinom(n, k, half)
    assert wrong != dq_power(f * g, n, half)


def test_t_operator_examples(half):
    b, q = F(2, 7), half.q
    a = mono(1)
    assert t_operator(b, mono(2), half) == a * a + a * ((1 + q) * b) + UniPoly.constant(b * b)
    f = UniPoly([1, 3, -2])
    assert t_operator(0, f, half) == f
    v = t_operator(F(1, 3), mono(3), half)(1)
    assert v == sum(qbinom(3, k, half) * F(1, 3) ** k for k in range(4))


@pytest.mark.parametrize("n", range(11))
def test_t_operator_on_monomials(base, n):
    b = F(-3, 5)
    expected = UniPoly([qbinom(n, n - j, base) * b ** (n - j) for j in range(n + 1)])
    assert t_operator(b, mono(n), base) == expected


def test_t_operator_functional(half_num, half):
    f = UniPoly([F(1, 3), 2, -1, F(1, 2)])
    b, c = F(1, 5), F(3, 4)
    v = t_operator(b, polynomial_handle(f), half_num, point=c)
    exact = t_operator(b, f, half)(c)
    with half_num.precision():
        assert abs(v - half_num.lift(exact)) < mpmath.mpf(10) ** -30


def test_e_theta_examples(half):
    b = F(3, 5)
    assert e_theta_operator(b, UniPoly.constant(F(2)), half) == UniPoly.constant(F(2))
    assert e_theta_operator(b, mono(1), half) == UniPoly([b, 1])
    assert e_theta_operator(1, mono(2), half) == UniPoly([1, 3, 1])


def test_dxy_examples(half):
    q = half.q
    assert dxy(cauchy_poly(1, half), half) == BiPoly.constant(1 - q)
    assert dxy(cauchy_poly(2, half), half) == cauchy_poly(1, half) * (1 - q**2)
    with pytest.raises(NotDivisible):
        dxy(X, half)


@pytest.mark.parametrize("n", range(9))
def test_dxy_ladder(base, n):
    for k in range(n + 4):
        got = dxy_power(cauchy_poly(n, base), k, base)
        if k > n:
            assert got.is_zero()
        else:
            expected = cauchy_poly(n - k, base) * (qfact(n, base) / qfact(n - k, base))
            assert got == expected


def symbolic_ascu(n, a, ctx):
    out = BiPoly()
    for k in range(n + 1):
        out = out + cauchy_poly(n - k, ctx) * (qbinom(n, k, ctx) * (-1) ** k * ctx.q ** binom2(k) * a**k)
    return out


def test_f_operator_examples(half):
    a = F(1, 3)
    assert f_operator(a, BiPoly.constant(1), half) == BiPoly.constant(1)
    assert f_operator(a, cauchy_poly(1, half), half) == X - Y - a
    assert f_operator(a, cauchy_poly(2, half), half) == symbolic_ascu(2, a, half)


@pytest.mark.parametrize("n", range(9))
def test_f_operator_on_cauchy(base, n):
    a = F(-4, 7)
    assert f_operator(a, cauchy_poly(n, base), base) == symbolic_ascu(n, a, base)


def test_e_cauchy_examples(half, half_num):
    a, b = F(1, 3), F(1, 5)
    c = mono(1, 1)
    assert e_cauchy_operator(a, b, c, half) == UniPoly([-b * (1 - a), 1])
    f = UniPoly([2, -1, F(1, 2)])
    assert e_cauchy_operator(a, 0, f, half) == f
    v = e_cauchy_operator(a, b, polynomial_handle(c), half_num, point=F(2))
    with half_num.precision():
        assert abs(v - half_num.lift(2 - b * (1 - a))) < mpmath.mpf(10) ** -30


def test_e_cauchy_domain(half_num):
    with pytest.raises(ConvergenceDomain):
        e_cauchy_operator(F(1, 3), F(4), polynomial_handle(mono(1)), half_num, point=F(1))


@pytest.mark.parametrize("n", range(11))
def test_e_cauchy_closed_form(base, n):
    a, b, q = F(2, 9), F(-3, 4), base.q
    # coefficient of c^j comes from the k = n - j term
    expected = UniPoly([
        qbinom(n, n - j, base) * qpoch(a, n - j, base) * (-b * q) ** (n - j)
        * q ** binom2(n - j) * q ** (-n * (n - j))
        for j in range(n + 1)
    ])
    assert e_cauchy_operator(a, b, mono(n), base) == expected


def test_t_cauchy_examples(half):
    a, b = F(2, 5), F(-1, 3)
    f = UniPoly([1, 2, 3, 4])
    assert t_cauchy_operator(a, 0, f, half) == f
    assert t_cauchy_operator(a, b, mono(1), half) == UniPoly([(1 - a) * b, 1])
    assert t_cauchy_operator(0, b, f, half) == t_operator(b, f, half)


@pytest.mark.parametrize("n", range(7))
def test_dq_power_of_product_ratio(half_num, n):
    # D_q^n in a of (at;q)_inf/(av;q)_inf = v^n (t/v;q)_n (atq^n;q)_inf/(av;q)_inf
    t, v, a = F(1, 3), F(-2, 5), F(3, 4)
    ctx = half_num
    f = poch_ratio_handle([t], [v])
    got = dq_iterated_point(f, n, a, ctx)
    with ctx.precision():
        rhs = (
            ctx.lift(v) ** n * ctx.lift(qpoch(t / v, n, ctx.as_exact()))
            * qpoch_inf(a * t * ctx.q**n, ctx) / qpoch_inf(a * v, ctx)
        )
        dev = abs(got - rhs) / max(1, abs(rhs))
    assert dev < mpmath.mpf(10) ** -30
