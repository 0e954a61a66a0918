from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qac.errors import NonUnit, OutOfOrder, UnknownVariable
from qac.polynomials import ascu_sum, cauchy_eval, rs_h
from qac.qkernel import binom2, qfact
from qac.scalars import QContext
from qac.series import (
    TruncatedSeries,
    assemble_product,
    coefficient,
    den,
    euler_expand,
    fin,
    num,
    scale_variable,
    series_arith,
    series_inverse,
)

F = Fraction


def uni(coeffs, order=8, var="t"):
    return TruncatedSeries.univariate((var,), order, var, [F(c) for c in coeffs])


def one(order=8, variables=("t",)):
    return TruncatedSeries.constant(variables, order)


def test_product_examples():
    assert series_arith(uni([1, 1]), uni([1, -1]), "mul") == uni([1, 0, -1])
    f = uni([3, F(1, 2), 0, 7])
    assert series_arith(f, TruncatedSeries(("t",), 8), "add") == f


def test_euler_pair_mutually_inverse(half):
    n_max = 10
    q = half.q
    a = uni([1 / qfact(n, half) for n in range(n_max + 1)], n_max)
    b = uni([(-1) ** n * q ** binom2(n) / qfact(n, half) for n in range(n_max + 1)], n_max)
    assert a * b == one(n_max)


def test_inverse_examples(half):
    assert series_inverse(uni([1, -1])) == uni([1] * 9)
    assert series_inverse(one()) == one()
    q = half.q
    inv = series_inverse(uni([1, -(1 + q), q]))
    assert [inv.coefficient((n,)) for n in range(9)] == [F(2 ** (n + 1) - 1, 2**n) for n in range(9)]


def test_inverse_nonunit():
    with pytest.raises(NonUnit):
        series_inverse(uni([0, 1]))


def test_euler_expand_examples(half):
    d = euler_expand(den(1), half.with_order(3))
    assert [d.coefficient((n,)) for n in range(4)] == [1, 2, F(8, 3), F(64, 21)]
    assert euler_expand(num(0), half) == one()
    assert euler_expand(fin(1, 2), half) == uni([1, F(-3, 2), F(1, 2)])


def test_scale_variable(half):
    f = uni([1, 1, 1, 1])
    assert scale_variable(f, "t", half.q) == uni([1, F(1, 2), F(1, 4), F(1, 8)])
    assert scale_variable(f, "t", 1) == f
    assert scale_variable(f, "t", 1 / half.q).coefficient((2,)) == 4
    with pytest.raises(UnknownVariable):
        scale_variable(f, "s", 2)


def test_coefficient_access():
    f = uni([1, 0, -1])
    assert coefficient(f, (2,)) == -1
    g = TruncatedSeries(("t", "s"), 4, {(0, 0): F(5), (1, 2): F(3)})
    assert coefficient(g, (0, 0)) == 5
    assert coefficient(g, (2, 1)) == 0
    with pytest.raises(OutOfOrder):
        coefficient(g, (3, 2))


def test_coefficient_of_generating_product(half):
    x, y, a = F(1), F(1, 2), F(1, 3)
    g = assemble_product([num(a), num(y), den(x)], half)
    # U_2 = P_2 - (1+q) a P_1 + q a^2 = 13/72, and (q;q)_2 = 3/8
    assert g.coefficient((2,)) == F(13, 27)


def test_assemble_examples(half):
    x = F(2, 3)
    assert assemble_product([num(0), num(0), den(x)], half) == euler_expand(den(x), half)
    assert assemble_product([], half) == one()
    assert assemble_product([num(1), den(1)], half) == one()


def test_bivariate_product(half):
    f = assemble_product([den(1, "t"), den(1, "s")], half, ("t", "s"), 6)
    for i in range(4):
        for j in range(3):
            assert f.coefficient((i, j)) == 1 / (qfact(i, half) * qfact(j, half))


def test_lines_golden():
    g = TruncatedSeries(("t", "s"), 3, {(1, 0): F(1, 2), (0, 0): F(1)})
    assert g.lines() == ["(0, 0): 1", "(1, 0): 1/2"]


def test_auto_alignment():
    f = TruncatedSeries.univariate(("t",), 4, "t", [F(1), F(1)])
    g = TruncatedSeries.univariate(("s",), 3, "s", [F(1), F(1)])
    h = f * g
    assert h.order == 3 and set(h.variables) == {"t", "s"}
    assert h.coefficient((1, 1)) == 1


coefs = st.fractions(min_value=-4, max_value=4, max_denominator=7)
bivariate = st.dictionaries(
    st.tuples(st.integers(0, 8), st.integers(0, 8)).filter(lambda e: sum(e) <= 8), coefs, max_size=12
).map(lambda d: TruncatedSeries(("t", "s"), 8, d))


@given(bivariate, bivariate, bivariate)
def test_ring_laws(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


@given(st.fractions(min_value=-3, max_value=3, max_denominator=9))
def test_inverse_of_numerator_expansion(c):
    ctx = QContext("1/3")
    assert series_inverse(euler_expand(num(c), ctx)) == euler_expand(den(c), ctx)


def test_generating_function_master_check(base):
    x, y, a = F(3, 4), F(-2, 5), F(1, 7)
    n_max = base.truncation_order
    gu = assemble_product([num(a), num(y), den(x)], base)
    gp = assemble_product([num(y), den(x)], base)
    gh = assemble_product([num(y), den(1), den(x)], base)
    point = {"x": x, "y": y, "a": a}
    for n in range(n_max + 1):
        qn = qfact(n, base)
        assert qn * gu.coefficient((n,)) == ascu_sum(n, point, base)
        assert qn * gp.coefficient((n,)) == cauchy_eval(n, x, y, base)
        assert qn * gh.coefficient((n,)) == rs_h(n, x, y, base)
