"""q-difference and q-exponential operators.

Operators act either symbolically on exact polynomials (:class:`UniPoly` in
the operator variable, :class:`BiPoly` for the homogeneous operator) or
functionally on a :class:`FunctionHandle` evaluated at points.  Functional
routes use closed-form point expansions instead of nested differences and
work at twice the context precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath

from .algebra import BiPoly, UniPoly
from .errors import (
    ConvergenceDomain,
    EvaluationAtZero,
    PoleAtNegativeIndex,
    SingularEvaluation,
)
from .qkernel import binom2, qbinom, qfact, qpoch, qpoch_inf
from .scalars import QContext
from .summation import sum_series


@dataclass(frozen=True)
class FunctionHandle:
    """A scalar function ``fn(point, ctx)`` of the operator variable.

    ``singular(point, ctx)`` may flag points where evaluation is undefined.
    ``fn`` must honour ``ctx`` precision so callers can evaluate it at boosted
    precision.
    """

    fn: Callable
    singular: Callable | None = None
    name: str = "f"

    def __call__(self, point, ctx: QContext):
        if self.singular is not None and self.singular(point, ctx):
            raise SingularEvaluation(f"{self.name} is singular at {point}")
        try:
            return self.fn(point, ctx)
        except (ZeroDivisionError, PoleAtNegativeIndex) as exc:
            raise SingularEvaluation(f"{self.name} is singular at {point}") from exc

    def shifted(self, factor) -> "FunctionHandle":
        """The handle for ``point -> f(factor * point)``."""
        fn = self.fn
        return FunctionHandle(lambda c, ctx: fn(c * factor, ctx), self.singular and (
            lambda c, ctx: self.singular(c * factor, ctx)), f"{self.name}(x{factor})")


def poch_ratio_handle(numerator, denominator, name="ratio") -> FunctionHandle:
    """``c -> prod (c*t;q)_inf / prod (c*v;q)_inf`` for the given t's and v's."""
    numerator, denominator = tuple(numerator), tuple(denominator)

    def fn(c, ctx):
        with ctx.precision():
            c = ctx.lift(c)
            out = mpmath.mpf(1)
            for t in numerator:
                out *= qpoch_inf(c * ctx.lift(t), ctx)
            for v in denominator:
                d = qpoch_inf(c * ctx.lift(v), ctx)
                if d == 0:
                    raise SingularEvaluation(f"{name}: denominator vanishes at {c}")
                out /= d
            return out

    return FunctionHandle(fn, None, name)


def polynomial_handle(f: UniPoly) -> FunctionHandle:
    def fn(c, ctx):
        with ctx.precision():
            return f(ctx.lift(c))

    return FunctionHandle(fn, None, f"poly[{f.var}]")


# -- D_q, eta, theta ---------------------------------------------------------


def dq(f: UniPoly, ctx: QContext) -> UniPoly:
    """D_q on a polynomial: a^n -> (1 - q^n) a^(n-1)."""
    q = ctx.q
    return UniPoly([(1 - q**n) * c for n, c in enumerate(f.coeffs)][1:], f.var)


def dq_power(f: UniPoly, n: int, ctx: QContext) -> UniPoly:
    for _ in range(n):
        if f.is_zero():
            break
        f = dq(f, ctx)
    return f


def dq_func(f: FunctionHandle, point, ctx: QContext):
    """(f(c) - f(cq)) / c at one point."""
    if point == 0:
        raise EvaluationAtZero("D_q is undefined at 0")
    with ctx.precision():
        c = ctx.lift(point)
        return (f(c, ctx) - f(c * ctx.qv, ctx)) / c


def _point_boost(n: int, c, ctx: QContext) -> int:
    # the alternating sum loses about C(n,2) log2(1/q) + n log2(1/|c|) bits
    lq = math.log2(1 / float(ctx.q))
    ac = abs(float(c))
    lc = math.log2(1 / ac) if 0 < ac < 1 else 0.0
    return int(binom2(n) * lq + n * lc) + 32


def dq_iterated_point(f: FunctionHandle, n: int, c, ctx: QContext, cache: dict | None = None):
    """D_q^n f at c from the closed alternating sum over f(c q^k), 0 <= k <= n.

    ``cache`` may hold previously computed ``{k: (bits, value)}`` samples of
    ``f(c q^k)``.  In exact mode with an exact-valued ``f`` the result is exact.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if c == 0:
        raise EvaluationAtZero("point evaluation at c = 0")
    if n == 0:
        return f(ctx.lift(c), ctx)
    if ctx.exact:
        c = Fraction(c)
        s = sum(
            (-1) ** k * qbinom(n, k, ctx) * ctx.q ** binom2(n - k) * f(c * ctx.q**k, ctx)
            for k in range(n + 1)
        )
        return s / (c**n * ctx.q ** binom2(n))
    bits = ctx.precision_bits + _point_boost(n, c, ctx)
    wctx = ctx.boosted(bits)
    with wctx.precision():
        cw = wctx.lift(c)
        total = mpmath.mpf(0)
        for k in range(n + 1):
            if cache is not None and k in cache and cache[k][0] >= bits:
                fk = +cache[k][1]
            else:
                fbits = bits if cache is None else 2 * bits
                fctx = ctx.boosted(fbits)
                with fctx.precision():
                    fk = f(fctx.lift(c) * fctx.q_power(k), fctx)
                if cache is not None:
                    cache[k] = (fbits, fk)
                fk = +fk
            total += (-1) ** k * wctx.lift(_qbinom_exact(n, k, ctx)) * wctx.q_power(binom2(n - k)) * fk
        out = total / (cw**n * wctx.q_power(binom2(n)))
    with ctx.precision():
        return +out


def _qbinom_exact(n, k, ctx):
    return qbinom(n, k, ctx.as_exact())


def eta_shift(f, direction: int, ctx: QContext):
    """eta^{+1}: f(a) -> f(aq);  eta^{-1}: f(a) -> f(a/q)."""
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    factor = ctx.q if direction == 1 else 1 / ctx.q
    if isinstance(f, UniPoly):
        return f.scale(factor)
    return f.shifted(factor)


def theta(f: UniPoly, ctx: QContext) -> UniPoly:
    """theta = eta^{-1} D_q (D_q applied first)."""
    return eta_shift(dq(f, ctx), -1, ctx)


def theta_power(f: UniPoly, n: int, ctx: QContext) -> UniPoly:
    for _ in range(n):
        if f.is_zero():
            break
        f = theta(f, ctx)
    return f


def q_leibniz_check(f: UniPoly, g: UniPoly, n: int, ctx: QContext) -> bool:
    """Compare D_q^n{fg} with sum_k [n k] q^{k(k-n)} D_q^k{f} D_q^{n-k}{g(q^k a)}."""
    lhs = dq_power(f * g, n, ctx)
    rhs = UniPoly([], f.var)
    for k in range(n + 1):
        term = dq_power(f, k, ctx) * dq_power(g.scale(ctx.q**k), n - k, ctx)
        rhs = rhs + term * (qbinom(n, k, ctx.as_exact()) * ctx.q ** (k * (k - n)))
    return lhs == rhs


# -- q-exponential operators ---------------------------------------------------


def t_operator(b, f, ctx: QContext, point=None):
    """T(bD_q) = sum_n (b D_q)^n / (q;q)_n.

    On a polynomial the series stops after deg(f)+1 terms.  On a function
    handle the series is summed numerically at ``point``.
    """
    if isinstance(f, UniPoly):
        b = Fraction(b)
        ex = ctx.as_exact()
        out = UniPoly([], f.var)
        g, n = f, 0
        while not g.is_zero():
            out = out + g * (b**n / qfact(n, ex))
            g = dq(g, ctx)
            n += 1
        return out
    if point is None:
        raise ValueError("functional application needs a point")
    nctx = ctx.as_numeric(2 * ctx.precision_bits) if not ctx.exact else ctx.as_numeric(512)
    cache: dict = {}

    def terms():
        n = 0
        while True:
            d = dq_iterated_point(f, n, point, nctx, cache)
            with nctx.precision():
                yield nctx.lift(b) ** n / qfact(n, nctx) * d
            n += 1

    with nctx.precision():
        total, _ = sum_series(terms(), nctx)
    out_ctx = ctx if not ctx.exact else nctx
    with out_ctx.precision():
        return +total


def e_theta_operator(b, f: UniPoly, ctx: QContext) -> UniPoly:
    """E(b theta) = sum_n q^C(n,2) (b theta)^n / (q;q)_n on a polynomial."""
    b = Fraction(b)
    ex = ctx.as_exact()
    out = UniPoly([], f.var)
    g, n = f, 0
    while not g.is_zero():
        out = out + g * (ctx.q ** binom2(n) * b**n / qfact(n, ex))
        g = theta(g, ctx)
        n += 1
    return out


def t_cauchy_operator(a, b, f: UniPoly, ctx: QContext) -> UniPoly:
    """T(a,b;D_q) = sum_n (a;q)_n/(q;q)_n (b D_q)^n on a polynomial."""
    a, b = Fraction(a), Fraction(b)
    ex = ctx.as_exact()
    out = UniPoly([], f.var)
    g, n = f, 0
    while not g.is_zero():
        out = out + g * (qpoch(a, n, ex) * b**n / qfact(n, ex))
        g = dq(g, ctx)
        n += 1
    return out


def e_cauchy_operator(a, b, f, ctx: QContext, point=None):
    """E(a,b;theta) = sum_n (a;q)_n (-b theta)^n / (q;q)_n.

    Polynomials are handled exactly.  For a function handle the convergent
    expansion over the points c q^{-k} is summed, which needs |bq/c| < 1.
    """
    if isinstance(f, UniPoly):
        a, b = Fraction(a), Fraction(b)
        ex = ctx.as_exact()
        out = UniPoly([], f.var)
        g, n = f, 0
        while not g.is_zero():
            out = out + g * (qpoch(a, n, ex) * (-b) ** n / qfact(n, ex))
            g = theta(g, ctx)
            n += 1
        return out
    if point is None:
        raise ValueError("functional application needs a point")
    return expansion_e(a, b, f, point, ctx)


def expansion_e(a, b, f: FunctionHandle, c, ctx: QContext):
    """Point evaluation of E(a,b;theta){f} at c via

    (abq/c;q)_inf/(bq/c;q)_inf * sum_k (a;q)_k q^C(k,2) f(c q^-k) (-bq/c)^k / (q, abq/c;q)_k.
    """
    if c == 0:
        raise EvaluationAtZero("expansion needs c != 0")
    nctx = ctx.as_numeric(2 * ctx.precision_bits) if not ctx.exact else ctx.as_numeric(512)
    with nctx.precision():
        cw, aw, bw = nctx.lift(c), nctx.lift(a), nctx.lift(b)
        q = nctx.qv
        z = bw * q / cw
        if abs(z) >= 1:
            raise ConvergenceDomain(f"|bq/c| = {mpmath.nstr(abs(z), 6)} >= 1")
        w = aw * z
        pre_den = qpoch_inf(z, nctx)
        if pre_den == 0:
            raise SingularEvaluation("(bq/c;q)_inf vanishes")
        pre = qpoch_inf(w, nctx) / pre_den

        def terms():
            coef = mpmath.mpf(1)
            k = 0
            while True:
                yield coef * f(cw / q**k, nctx)
                den = (1 - q ** (k + 1)) * (1 - w * q**k)
                if den == 0:
                    raise SingularEvaluation("(abq/c;q)_k vanishes")
                coef = coef * (1 - aw * q**k) * q**k * (-z) / den
                k += 1

        total, _ = sum_series(terms(), nctx)
        value = pre * total
    out_ctx = ctx if not ctx.exact else nctx
    with out_ctx.precision():
        return +value


# -- homogeneous operators ------------------------------------------------------


def dxy(f: BiPoly, ctx: QContext) -> BiPoly:
    """(f(x, y/q) - f(qx, y)) / (x - y/q), divided exactly."""
    q = ctx.q
    num = f.scale(1, 1 / q) - f.scale(q, 1)
    return num.divide_linear(1 / q)


def dxy_power(f: BiPoly, k: int, ctx: QContext) -> BiPoly:
    for _ in range(k):
        if f.is_zero():
            break
        f = dxy(f, ctx)
    return f


def f_operator(a, f: BiPoly, ctx: QContext) -> BiPoly:
    """F(a D_xy) = sum_n (-1)^n q^C(n,2) (a D_xy)^n / (q;q)_n."""
    a = Fraction(a)
    ex = ctx.as_exact()
    out = BiPoly()
    g, n = f, 0
    while not g.is_zero():
        out = out + g * ((-1) ** n * ctx.q ** binom2(n) * a**n / qfact(n, ex))
        g = dxy(g, ctx)
        n += 1
    return out


__all__ = [
    "FunctionHandle",
    "poch_ratio_handle",
    "polynomial_handle",
    "dq",
    "dq_power",
    "dq_func",
    "dq_iterated_point",
    "eta_shift",
    "theta",
    "theta_power",
    "q_leibniz_check",
    "t_operator",
    "e_theta_operator",
    "t_cauchy_operator",
    "e_cauchy_operator",
    "expansion_e",
    "dxy",
    "dxy_power",
    "f_operator",
]
