"""Truncated multivariate formal power series.

Series are truncated at a total-degree bound ``N``.  Coefficients may be any
ring elements supporting ``+``, ``-`` and ``*`` with each other and with
Fractions: exact rationals, mpmath floats (formal identities whose
coefficients are themselves convergent sums), or :class:`~qac.algebra.BiPoly`
when the identity keeps ``x`` and ``y`` symbolic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    InvertedBaseUnsupported,
    NonUnit,
    OutOfOrder,
    UnknownVariable,
)
from .qkernel import binom2, qfact
from .scalars import QContext, is_exact


def _is_zero(c) -> bool:
    return c == 0


class TruncatedSeries:
    """Power series in named variables, exact up to total degree ``order``."""

    __slots__ = ("variables", "order", "_c")

    def __init__(self, variables: Sequence[str], order: int, coeffs: Mapping | None = None):
        self.variables = tuple(variables)
        self.order = int(order)
        c = {}
        if coeffs:
            nv = len(self.variables)
            for e, v in coeffs.items():
                e = tuple(e)
                if len(e) != nv:
                    raise ValueError(f"exponent {e} does not match variables {self.variables}")
                if sum(e) <= self.order and not _is_zero(v):
                    c[e] = v
        self._c = c

    # -- constructors -------------------------------------------------------
    @classmethod
    def constant(cls, variables, order, value=Fraction(1)):
        return cls(variables, order, {(0,) * len(variables): value})

    @classmethod
    def monomial(cls, variables, order, exponents, value=Fraction(1)):
        return cls(variables, order, {tuple(exponents): value})

    @classmethod
    def univariate(cls, variables, order, variable, coeffs: Iterable):
        """sum_i coeffs[i] * m^i, where m is a variable or a product of variables."""
        unit = _unit_exponent(variables, variable)
        out = {}
        for i, c in enumerate(coeffs):
            e = tuple(i * u for u in unit)
            if sum(e) > order:
                break
            out[e] = c
        return cls(variables, order, out)

    # -- access ---------------------------------------------------------------
    def items(self):
        return sorted(self._c.items())

    def coefficients(self) -> dict:
        return dict(self._c)

    def coefficient(self, exponents) -> object:
        e = tuple(exponents)
        if len(e) != len(self.variables):
            raise ValueError("exponent arity mismatch")
        if sum(e) > self.order:
            raise OutOfOrder(f"total degree {sum(e)} exceeds truncation order {self.order}")
        return self._c.get(e, Fraction(0))

    def __repr__(self):
        return f"TruncatedSeries({self.variables}, N={self.order}, {len(self._c)} terms)"

    def lines(self) -> list[str]:
        """Sorted ``exponent-tuple: coefficient`` lines for golden files."""
        return [f"{e}: {v}" for e, v in self.items()]

    # -- alignment ------------------------------------------------------------
    def embed(self, variables: Sequence[str], order: int | None = None) -> "TruncatedSeries":
        variables = tuple(variables)
        order = self.order if order is None else min(order, self.order)
        idx = {}
        for v in self.variables:
            if v not in variables:
                raise UnknownVariable(v)
            idx[v] = variables.index(v)
        out = {}
        for e, c in self._c.items():
            ne = [0] * len(variables)
            for v, k in zip(self.variables, e):
                ne[idx[v]] = k
            out[tuple(ne)] = c
        return TruncatedSeries(variables, order, out)

    def _aligned(self, other: "TruncatedSeries"):
        if self.variables == other.variables and self.order == other.order:
            return self, other
        variables = list(self.variables)
        for v in other.variables:
            if v not in variables:
                variables.append(v)
        order = min(self.order, other.order)
        return self.embed(variables, order), other.embed(variables, order)

    # -- ring operations --------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(self.variables, self.order, other)
        a, b = self._aligned(other)
        out = dict(a._c)
        for e, v in b._c.items():
            out[e] = out[e] + v if e in out else v
        return TruncatedSeries(a.variables, a.order, out)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.variables, self.order, {e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries(
                self.variables, self.order, {e: v * other for e, v in self._c.items()}
            )
        a, b = self._aligned(other)
        n = a.order
        out: dict = {}
        bitems = sorted(b._c.items(), key=lambda kv: sum(kv[0]))
        for ea, va in a._c.items():
            da = sum(ea)
            for eb, vb in bitems:
                if da + sum(eb) > n:
                    break
                e = tuple(i + j for i, j in zip(ea, eb))
                p = va * vb
                out[e] = out[e] + p if e in out else p
        return TruncatedSeries(a.variables, n, out)

    def __rmul__(self, other):
        return TruncatedSeries(
            self.variables, self.order, {e: other * v for e, v in self._c.items()}
        )

    def map(self, fn) -> "TruncatedSeries":
        """Apply ``fn`` to every coefficient."""
        return TruncatedSeries(self.variables, self.order, {e: fn(v) for e, v in self._c.items()})

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.variables, min(order, self.order), self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        a, b = self._aligned(other)
        return a._c == b._c

    __hash__ = None


def series_arith(f: TruncatedSeries, g: TruncatedSeries, op: str) -> TruncatedSeries:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")


def series_inverse(f: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse through the geometric series of the non-constant part."""
    zero = (0,) * len(f.variables)
    c0 = f.coefficient(zero)
    if _is_zero(c0):
        raise NonUnit("constant coefficient is zero")
    if not (is_exact(c0) or _is_mpf(c0)):
        raise NonUnit("constant coefficient must be a scalar")
    inv0 = 1 / c0
    one = TruncatedSeries.constant(f.variables, f.order, Fraction(1))
    h = one - f * inv0
    g = one
    for _ in range(f.order):
        g = one + h * g
    return g * inv0


def _is_mpf(v) -> bool:
    return type(v).__name__ == "mpf"


def scale_variable(f: TruncatedSeries, variable: str, factor) -> TruncatedSeries:
    """Substitute ``variable -> factor * variable``."""
    if variable not in f.variables:
        raise UnknownVariable(variable)
    i = f.variables.index(variable)
    return TruncatedSeries(
        f.variables, f.order, {e: v * factor ** e[i] for e, v in f._c.items()}
    )


def coefficient(f: TruncatedSeries, exponents) -> object:
    return f.coefficient(exponents)


def _unit_exponent(variables, variable) -> tuple:
    names = (variable,) if isinstance(variable, str) else tuple(variable)
    unit = [0] * len(variables)
    for v in names:
        if v not in variables:
            raise UnknownVariable(v)
        unit[variables.index(v)] += 1
    return tuple(unit)


class FactorKind(enum.Enum):
    NUMERATOR_POCH = "num"  # (c m; q)_inf
    DENOMINATOR_POCH = "den"  # 1 / (c m; q)_inf
    FINITE_POCH = "fin"  # (c m; q)_k
    POLYNOMIAL = "poly"  # sum_i coeffs[i] m^i


@dataclass(frozen=True)
class SeriesFactorSpec:
    """One factor of a product, in the monomial ``m`` named by ``variable``.

    ``variable`` is a variable name, or a tuple of names for a product monomial
    such as ``s*z``.
    """

    kind: FactorKind
    c: object = Fraction(1)
    variable: object = "t"
    k: int = 0
    coeffs: tuple = ()

    def __post_init__(self):
        if self.kind is FactorKind.FINITE_POCH and self.k < 0:
            raise ValueError("finite Pochhammer needs k >= 0")


def num(c, variable="t"):
    return SeriesFactorSpec(FactorKind.NUMERATOR_POCH, c, variable)


def den(c, variable="t"):
    return SeriesFactorSpec(FactorKind.DENOMINATOR_POCH, c, variable)


def fin(c, k, variable="t"):
    return SeriesFactorSpec(FactorKind.FINITE_POCH, c, variable, k)


def _coef(value, ctx: QContext):
    # ring elements such as BiPoly pass through untouched
    if is_exact(value) or _is_mpf(value) or isinstance(value, str):
        return ctx.lift(value)
    return value


def euler_expand(
    spec: SeriesFactorSpec,
    ctx: QContext,
    variables: Sequence[str] | None = None,
    order: int | None = None,
) -> TruncatedSeries:
    """Expand one factor with Euler's two q-exponential identities.

    (c m;q)_inf   = sum_n (-1)^n q^C(n,2) c^n m^n / (q;q)_n
    1/(c m;q)_inf = sum_n c^n m^n / (q;q)_n
    """
    if variables is None:
        variables = (spec.variable,) if isinstance(spec.variable, str) else tuple(spec.variable)
    order = ctx.truncation_order if order is None else order
    unit = _unit_exponent(variables, spec.variable)
    deg = sum(unit)
    top = order // deg
    c = _coef(spec.c, ctx)
    kind = spec.kind
    if kind in (FactorKind.NUMERATOR_POCH, FactorKind.DENOMINATOR_POCH):
        if ctx.inverted:
            raise InvertedBaseUnsupported("infinite product at base q > 1")
        with ctx.precision():
            coeffs = []
            cn = ctx.lift(1)
            for n in range(top + 1):
                v = cn / qfact(n, ctx)
                if kind is FactorKind.NUMERATOR_POCH:
                    v = v * ((-1) ** n * ctx.q_power(binom2(n)))
                coeffs.append(v)
                cn = cn * c
        return TruncatedSeries.univariate(variables, order, spec.variable, coeffs)
    if kind is FactorKind.FINITE_POCH:
        out = TruncatedSeries.constant(variables, order, ctx.lift(1))
        with ctx.precision():
            for j in range(spec.k):
                lin = TruncatedSeries.univariate(
                    variables, order, spec.variable, [ctx.lift(1), -c * ctx.q_power(j)]
                )
                out = out * lin
        return out
    return TruncatedSeries.univariate(
        variables, order, spec.variable, [_coef(v, ctx) for v in spec.coeffs]
    )


def assemble_product(
    specs: Sequence[SeriesFactorSpec],
    ctx: QContext,
    variables: Sequence[str] = ("t",),
    order: int | None = None,
) -> TruncatedSeries:
    """Multiply the expansions of several factors."""
    order = ctx.truncation_order if order is None else order
    out = TruncatedSeries.constant(variables, order, ctx.lift(1))
    with ctx.precision():
        for spec in specs:
            out = out * euler_expand(spec, ctx, variables, order)
    return out


def finite_poch_inverse(c, k: int, variable, ctx: QContext, variables, order) -> TruncatedSeries:
    """1 / (c m; q)_k as a series."""
    return series_inverse(euler_expand(fin(c, k, variable), ctx, variables, order))
