"""Sampling primitives, constraint builders and summation helpers for checks."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Callable

import mpmath

from ..qkernel import _qpoch_exact, binom2, qpoch_inf
from ..scalars import QContext
from ..series import TruncatedSeries, euler_expand, fin, series_inverse
from ..summation import cancellation_safe, sum_series, sum_shells
from .core import Constraint

# Drawn values keep clear of convergence boundaries by this factor.
MARGIN = Fraction(1, 16)


# -- drawing -----------------------------------------------------------------


def free(rng) -> Fraction:
    """A signed rational p/r with 1 <= p, r <= 9."""
    return Fraction(rng.randint(1, 9), rng.randint(1, 9)) * rng.choice((1, -1))


def positive(rng) -> Fraction:
    return Fraction(rng.randint(1, 9), rng.randint(1, 9))


def small(rng) -> Fraction:
    """A signed rational of modulus below one."""
    return Fraction(rng.randint(1, 9), rng.randint(10, 99)) * rng.choice((1, -1))


def shrink(value: Fraction, ok: Callable[[Fraction], bool], limit: int = 400) -> Fraction:
    """Halve ``value`` until ``ok(value)`` holds."""
    for _ in range(limit):
        if ok(value):
            return value
        value /= 2
    raise ValueError("value could not be shrunk into range")


def termination_order(index: int) -> int:
    """Cycle the terminating order through 0..3 over successive points."""
    return index % 4


# -- constraints ---------------------------------------------------------------


def _value(expr, p, ctx):
    return Fraction(expr(p, ctx)) if callable(expr) else Fraction(p[expr])


def is_q_power(v: Fraction, q: Fraction, lo: int = -64, hi: int = 64) -> bool:
    """Whether ``v == q^j`` for an integer ``lo <= j <= hi``."""
    if v <= 0:
        return False
    j = round(math.log(v) / math.log(q)) if v != 1 else 0
    return any(lo <= i <= hi and v == q**i for i in (j - 1, j, j + 1))


def nonzero(*names) -> Constraint:
    return Constraint(
        f"{', '.join(names)} nonzero", "nondegenerate",
        lambda p, ctx: all(p[n] != 0 for n in names),
    )


def below(label: str, expr, bound=1, kind: str = "convergence") -> Constraint:
    """``|expr| < bound``."""
    return Constraint(f"|{label}| < {bound}", kind, lambda p, ctx: abs(_value(expr, p, ctx)) < bound)


def not_inverse_power(label: str, expr) -> Constraint:
    """``expr`` is not ``q^-j`` for j >= 0; such a value zeroes a (.;q)_k factor."""
    return Constraint(
        f"{label} not in q^-N", "pole",
        lambda p, ctx: not is_q_power(_value(expr, p, ctx), ctx.q, lo=-64, hi=0),
    )


def not_power(label: str, expr) -> Constraint:
    """``expr`` is not an integer power of q."""
    return Constraint(
        f"{label} not a power of q", "pole",
        lambda p, ctx: not is_q_power(_value(expr, p, ctx), ctx.q),
    )


def terminates(label: str, expr, key: str = "r") -> Constraint:
    return Constraint(
        f"{label} = q^-r", "termination",
        lambda p, ctx: _value(expr, p, ctx) == ctx.q ** (-int(p[key])),
    )


# -- exact arithmetic shortcuts --------------------------------------------------


def qp(a, n: int, q: Fraction) -> Fraction:
    return _qpoch_exact(Fraction(a), n, q)


def qf(n: int, q: Fraction) -> Fraction:
    return _qpoch_exact(q, n, q)


def sign_q(n: int, q: Fraction) -> Fraction:
    """(-1)^n q^C(n,2)."""
    return (-1) ** n * q ** binom2(n)


def pinf(ctx: QContext, *args):
    """Product of (arg;q)_inf at the context precision."""
    with ctx.precision():
        out = mpmath.mpf(1)
        for a in args:
            out *= qpoch_inf(a, ctx)
        return out


# -- sums of exact terms ------------------------------------------------------------


def exact_series(term: Callable[[int], Fraction], ctx: QContext, start: int = 0):
    """sum_{n >= start} term(n) for exact terms, with cancellation control."""
    cache: dict = {}

    def t(n):
        if n not in cache:
            cache[n] = term(n)
        return cache[n]

    def compute(wctx):
        return sum_series((wctx.lift(t(n)) for n in itertools.count(start)), wctx, min_terms=4)

    return cancellation_safe(compute, ctx)


def exact_shells(shell: Callable[[int], list], ctx: QContext):
    """Multi-index sum of exact terms; ``shell(M)`` lists the terms of degree M."""
    cache: dict = {}

    def terms(m):
        if m not in cache:
            cache[m] = shell(m)
        return cache[m]

    def compute(wctx):
        def lifted(m):
            vals = [wctx.lift(v) for v in terms(m)]
            big = max((abs(v) for v in vals), default=mpmath.mpf(0))
            return sum(vals, mpmath.mpf(0)), big

        return sum_shells(lifted, wctx, min_shells=4)

    return cancellation_safe(compute, ctx)


def compositions(total: int, parts: int):
    """Tuples of ``parts`` non-negative integers summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for i in range(total + 1):
        for rest in compositions(total - i, parts - 1):
            yield (i,) + rest


# -- series pieces -----------------------------------------------------------------


def fin_series(c, k: int, variable, ctx: QContext, variables, order) -> TruncatedSeries:
    return euler_expand(fin(c, k, variable), ctx, variables, order)


def fin_inverse(c, k: int, variable, ctx: QContext, variables, order) -> TruncatedSeries:
    return series_inverse(fin_series(c, k, variable, ctx, variables, order))


def linear_product(roots, variable: str, ctx: QContext, variables, order) -> TruncatedSeries:
    """prod (m - root) as a truncated series in ``variable``."""
    i = variables.index(variable)
    out = TruncatedSeries.constant(variables, order, ctx.lift(1))
    e = tuple(1 if j == i else 0 for j in range(len(variables)))
    zero = (0,) * len(variables)
    for r in roots:
        out = out * TruncatedSeries(variables, order, {zero: -ctx.lift(r), e: ctx.lift(1)})
    return out


def settle(terms, ctx: QContext, consecutive: int = 2, limit: int = 400):
    """Sum an iterator of series until ``consecutive`` contributions are negligible.

    A finite iterator is summed to its end.
    """
    thr = ctx.summation_threshold()
    total = None
    quiet = 0
    for n, s in enumerate(terms):
        total = s if total is None else total + s
        scale = max([mpmath.mpf(1)] + [abs(v) for v in total.coefficients().values()])
        size = max((abs(v) for v in s.coefficients().values()), default=mpmath.mpf(0))
        quiet = quiet + 1 if size <= thr * scale else 0
        if quiet >= consecutive and n >= 4:
            return total
        if n >= limit:
            raise ValueError("series sum did not settle")
    if total is None:
        raise ValueError("empty sum")
    return total
