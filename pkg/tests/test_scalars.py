from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from qac.errors import BackendMismatch, DivisionByZero, ParameterConstraint
from qac.scalars import Mode, QContext, Verdict, compare, q_power, scalar_arith

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=60)


def test_pow_int_negative():
    assert scalar_arith(Fraction(1, 2), -2, "pow_int") == 4


def test_mul():
    assert scalar_arith(Fraction(1, 2), Fraction(3, 4), "mul") == Fraction(3, 8)


def test_canonical_form():
    v = scalar_arith(Fraction(2, 4), 0, "add")
    assert (v.numerator, v.denominator) == (1, 2)
    zero = scalar_arith(Fraction(1, 3), Fraction(1, 3), "sub")
    assert (zero.numerator, zero.denominator) == (0, 1)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        scalar_arith(Fraction(1), Fraction(0), "div")
    with pytest.raises(DivisionByZero):
        scalar_arith(Fraction(0), -1, "pow_int")


def test_numeric_rounds_to_context(half_num):
    v = scalar_arith(1, 3, "div", half_num)
    assert isinstance(v, mpmath.mpf)
    with mpmath.workprec(512):
        assert abs(v - mpmath.mpf(1) / 3) < mpmath.mpf(2) ** -250


@pytest.mark.parametrize("e, expected", [(3, Fraction(1, 8)), (-1, 2), (3 * 2 // 2, Fraction(1, 8))])
def test_q_power(half, e, expected):
    assert q_power(half, e) == expected


def test_compare_examples(half, half_num):
    assert compare(Fraction(3, 6), Fraction(1, 2), half).verdict is Verdict.EQUAL
    c = compare(Fraction(1, 2), Fraction(1, 3), half)
    assert c.verdict is Verdict.UNEQUAL and c.deviation == Fraction(1, 6)
    with half_num.precision():
        one = mpmath.mpf(1)
        near = one + mpmath.mpf(10) ** -60
    assert compare(one, near, half_num).verdict is Verdict.WITHIN_TOLERANCE
    with half_num.precision():
        far = one + mpmath.mpf(10) ** -20
    assert compare(one, far, half_num).verdict is Verdict.UNEQUAL


def test_compare_relative_floor(half_num):
    # large values are judged relatively, small ones absolutely
    with half_num.precision():
        big = mpmath.mpf(10) ** 40
        assert compare(big, big + 1, half_num).ok
        assert not compare(mpmath.mpf(0), mpmath.mpf(10) ** -25, half_num).ok


def test_backend_mismatch(half):
    with pytest.raises(BackendMismatch):
        compare(Fraction(1), mpmath.mpf(1), half)


@pytest.mark.parametrize("q", ["0", "1", "3/2", "-1/2"])
def test_context_rejects_bad_base(q):
    with pytest.raises(ParameterConstraint):
        QContext(q)


def test_context_guards():
    with pytest.raises(ParameterConstraint):
        QContext("1/2", precision_bits=32)
    with pytest.raises(ParameterConstraint):
        QContext("1/2", tolerance=0)
    with pytest.raises(ParameterConstraint):
        QContext("1/2", max_terms=0)
    ctx = QContext("1/2", mode=Mode.NUMERIC)
    assert ctx.as_exact().exact and not ctx.exact


@given(rationals, rationals, rationals)
def test_field_axioms(a, b, c):
    add = lambda u, v: scalar_arith(u, v, "add")
    mul = lambda u, v: scalar_arith(u, v, "mul")
    assert add(add(a, b), c) == add(a, add(b, c))
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
    assume(a != 0)
    assert mul(a, scalar_arith(1, a, "div")) == 1


@given(st.integers(-50, 50), st.integers(-50, 50), st.sampled_from(["1/2", "1/3", "2/5", "7/9"]))
def test_q_power_law(e1, e2, q):
    ctx = QContext(q)
    assert q_power(ctx, e1) * q_power(ctx, e2) == q_power(ctx, e1 + e2)


@given(rationals, rationals)
def test_compare_symmetric_reflexive(a, b):
    ctx = QContext("1/2")
    assert compare(a, a, ctx).verdict is Verdict.EQUAL
    assert compare(a, b, ctx) == compare(b, a, ctx)
    nctx = ctx.as_numeric()
    x, y = nctx.lift(a), nctx.lift(b)
    assert compare(x, x, nctx).ok
    assert compare(x, y, nctx) == compare(y, x, nctx)
