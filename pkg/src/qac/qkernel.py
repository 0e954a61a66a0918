"""q-shifted factorials, q-binomials and basic hypergeometric series."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import mpmath

from .errors import (
    ExactModeUnsupported,
    GuardExceeded,
    InvertedBaseUnsupported,
    PoleAtNegativeIndex,
    PoleInDenominator,
)
from .scalars import QContext, Scalar, is_exact
from .summation import cancellation_safe, sum_series


def _prod_factors(a, q, start, n):
    """prod_{k=0}^{n-1} (1 - a q^(start+k))."""
    p = 1
    qk = q**start
    for _ in range(n):
        p *= 1 - a * qk
        qk *= q
    return p


def qpoch(a, n: int, ctx: QContext) -> Scalar:
    """(a;q)_n for any integer n.

    Negative n uses (a;q)_n = 1 / prod_{k=1}^{-n} (1 - a q^{-k}).
    """
    if ctx.exact:
        return _qpoch_exact(Fraction(a), n, ctx.q)
    with ctx.precision():
        a = ctx.lift(a)
        q = ctx.qv
        if n >= 0:
            return _prod_factors(a, q, 0, n) * mpmath.mpf(1)
        den = _prod_factors(a, q, n, -n)
        if den == 0:
            raise PoleAtNegativeIndex(f"(a;q)_{n} has a vanishing factor")
        return 1 / den


@lru_cache(maxsize=65536)
def _qpoch_exact(a: Fraction, n: int, q: Fraction) -> Fraction:
    if n >= 0:
        return Fraction(_prod_factors(a, q, 0, n))
    den = _prod_factors(a, q, n, -n)
    if den == 0:
        raise PoleAtNegativeIndex(f"(a;q)_{n} has a vanishing factor")
    return 1 / Fraction(den)


def qpoch_multi(params: Sequence, n: int, ctx: QContext) -> Scalar:
    """(a_1, ..., a_m; q)_n."""
    r = ctx.lift(1)
    with ctx.precision():
        for a in params:
            r = r * qpoch(a, n, ctx)
    return r


def qpoch_inf(a, ctx: QContext) -> Scalar:
    """(a;q)_inf in numeric mode, truncated once |a q^k| < 2^-precision."""
    if ctx.inverted:
        raise InvertedBaseUnsupported("(a;q)_inf diverges for q > 1")
    if ctx.exact:
        raise ExactModeUnsupported(
            "(a;q)_inf is only available exactly as a series expansion"
        )
    with ctx.precision():
        a = ctx.lift(a)
        q = ctx.qv
        if a == 0:
            return mpmath.mpf(1)
        eps = mpmath.ldexp(mpmath.mpf(1), -ctx.precision_bits)
        p = mpmath.mpf(1)
        t = a
        guard = ctx.max_terms + 4 * ctx.precision_bits
        k = 0
        while abs(t) >= eps or k == 0:
            p *= 1 - t
            if p == 0:
                return p
            t *= q
            k += 1
            if k > guard:
                raise GuardExceeded("infinite product did not settle")
        return p


def qpoch_inf_multi(params: Sequence, ctx: QContext) -> Scalar:
    with ctx.precision():
        r = mpmath.mpf(1)
        for a in params:
            r *= qpoch_inf(a, ctx)
        return r


@lru_cache(maxsize=65536)
def _qbinom_exact(n: int, k: int, q: Fraction) -> Fraction:
    if k < 0 or k > n or n < 0:
        return Fraction(0)
    k = min(k, n - k)
    num = _prod_factors(Fraction(1), q, n - k + 1, k)
    den = _prod_factors(Fraction(1), q, 1, k)
    return Fraction(num) / den


def qbinom(n: int, k: int, ctx: QContext) -> Scalar:
    """Gaussian binomial [n k]; zero outside 0 <= k <= n."""
    return ctx.lift(_qbinom_exact(n, k, ctx.q))


def qfact(n: int, ctx: QContext) -> Scalar:
    """(q;q)_n."""
    return ctx.lift(_qpoch_exact(ctx.q, n, ctx.q))


def binom2(n: int) -> int:
    return n * (n - 1) // 2


@dataclass(frozen=True)
class TerminationInfo:
    terminating: bool
    order: int | None = None


@dataclass(frozen=True)
class PhiSpec:
    """sum_n (a;q)_n / (q,b;q)_n [(-1)^n q^C(n,2)]^(1+s-r) x^n."""

    numerator: tuple = field(default_factory=tuple)
    denominator: tuple = field(default_factory=tuple)
    argument: object = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "numerator", tuple(self.numerator))
        object.__setattr__(self, "denominator", tuple(self.denominator))

    @property
    def balance(self) -> int:
        return 1 + len(self.denominator) - len(self.numerator)


def _neg_q_power_index(p, ctx: QContext) -> int | None:
    """Return m with p == q^-m (0 <= m <= cap), else None."""
    if is_exact(p):
        p = Fraction(p)
        if p < 1:
            return None
        target = Fraction(1)
        for m in range(ctx.termination_cap + 1):
            if p == target:
                return m
            if target > p:
                return None
            target /= ctx.q
        return None
    with ctx.precision():
        if p < 1 - mpmath.mpf(2) ** -8:
            return None
        tol = mpmath.ldexp(mpmath.mpf(1), -(ctx.precision_bits // 2))
        target = mpmath.mpf(1)
        qv = ctx.qv
        for m in range(ctx.termination_cap + 1):
            if abs(p - target) <= tol * target:
                return m
            target /= qv
    return None


def termination_info(spec: PhiSpec, ctx: QContext) -> TerminationInfo:
    orders = [m for m in (_neg_q_power_index(a, ctx) for a in spec.numerator) if m is not None]
    if not orders:
        return TerminationInfo(False)
    return TerminationInfo(True, min(orders))


def _check_denominators(spec: PhiSpec, info: TerminationInfo, ctx: QContext):
    for b in spec.denominator:
        m = _neg_q_power_index(b, ctx)
        if m is None:
            continue
        if not info.terminating or info.order > m:
            raise PoleInDenominator(f"denominator parameter q^-{m} is a pole")


def _phi_terms(spec: PhiSpec, ctx: QContext, count: int | None):
    """Yield the terms of the series in ctx's backend (lifted at ctx precision)."""
    q = ctx.qv
    nums = [ctx.lift(a) for a in spec.numerator]
    dens = [ctx.lift(b) for b in spec.denominator]
    x = ctx.lift(spec.argument)
    e = spec.balance
    sign = -1 if e % 2 else 1
    t = ctx.lift(1)
    qn = ctx.lift(1)
    n = 0
    while count is None or n < count:
        yield t
        num = 1
        for a in nums:
            num *= 1 - a * qn
        den = 1 - qn * q
        for b in dens:
            den *= 1 - b * qn
        if den == 0:
            if num == 0:
                return
            raise PoleInDenominator("vanishing denominator factor")
        t = t * num / den * x
        if e:
            t = t * sign * qn**e
        qn *= q
        n += 1


def phi_eval(spec: PhiSpec, ctx: QContext) -> Scalar:
    """Evaluate a basic hypergeometric series.

    Terminating series are summed exactly to their last term.  Non-terminating
    series need numeric mode and are summed until the tail is negligible.
    """
    info = termination_info(spec, ctx)
    _check_denominators(spec, info, ctx)
    if spec.argument == 0:
        return ctx.lift(1)
    if info.terminating:
        if ctx.exact:
            return sum(_phi_terms(spec, ctx, info.order + 1), Fraction(0))

        def finite(wctx):
            terms = list(_phi_terms(spec, wctx, info.order + 1))
            return sum(terms, mpmath.mpf(0)), max(abs(t) for t in terms)

        return cancellation_safe(finite, ctx)
    if ctx.inverted:
        raise InvertedBaseUnsupported("non-terminating series at base q > 1")
    if ctx.exact:
        raise ExactModeUnsupported("non-terminating series need numeric mode")

    def infinite(wctx):
        return sum_series(_phi_terms(spec, wctx, None), wctx, check_ratio=spec.balance <= 0)

    return cancellation_safe(infinite, ctx)


def phi(numerator, denominator, argument, ctx: QContext) -> Scalar:
    return phi_eval(PhiSpec(tuple(numerator), tuple(denominator), argument), ctx)
