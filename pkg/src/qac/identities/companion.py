"""The Cauchy companion operator E(a,b;theta) and the formulas it yields."""

from __future__ import annotations

from fractions import Fraction

from ..algebra import UniPoly
from ..operators import e_cauchy_operator, expansion_e, poch_ratio_handle, polynomial_handle
from ..polynomials import ascu_sum
from ..qkernel import _qbinom_exact, binom2, phi
from .core import CheckMode, IdentityCheck
from .generating import MEHLER_CONSTRAINTS, _mehler_sample, mehler_lhs
from .tools import (
    MARGIN,
    below,
    compositions,
    exact_series,
    exact_shells,
    free,
    nonzero,
    not_inverse_power,
    not_power,
    pinf,
    qf,
    qp,
    shrink,
    sign_q,
    small,
    termination_order,
    terminates,
)


def _U(n, x, y, a):
    return lambda ctx: ascu_sum(n, {"x": x, "y": y, "a": a}, ctx.as_exact())


def _u(n, x, y, a, ctx):
    return ascu_sum(n, {"x": x, "y": y, "a": a}, ctx.as_exact())


def _vals(p, names):
    return tuple(p[k] for k in names)


# -- E on polynomials and on products ---------------------------------------------


def _epoly_lhs(p, ctx, bound):
    return {
        n: e_cauchy_operator(p["a"], p["b"], UniPoly.monomial(n, var="c"), ctx)
        for n in range(bound + 1)
    }


def _epoly_rhs(p, ctx, bound):
    a, b, q = p["a"], p["b"], ctx.q
    out = {}
    for n in range(bound + 1):
        coeffs = [Fraction(0)] * (n + 1)
        for k in range(n + 1):
            coeffs[n - k] = _qbinom_exact(n, k, q) * qp(a, k, q) * (-b * q) ** k * q ** (binom2(k) - n * k)
        out[n] = UniPoly(coeffs, var="c")
    return out


E_POLY = IdentityCheck(
    "E-POLY", "E(a,b;theta) on a monomial",
    "E(a,b;theta){c^n} = sum_k [n k] (a)_k (-bq)^k c^(n-k) q^(C(k,2)-nk)",
    CheckMode.EXACT_FINITE, _epoly_lhs, _epoly_rhs,
    lambda rng, i, ctx: {"a": free(rng), "b": free(rng)}, grid=8,
)


def _eratio_sample(rng, index, ctx):
    q = ctx.q
    c, a = free(rng), free(rng)
    b = shrink(free(rng), lambda b: abs(b * q / c) <= MARGIN)
    t, v = free(rng), free(rng)
    s = shrink(free(rng), lambda s: abs(b * s * t / v) <= MARGIN)
    return {"a": a, "b": b, "c": c, "s": s, "t": t, "v": v}


_E_POLES = (
    nonzero("c", "v"),
    below("bq/c", lambda p, c: p["b"] * c.q / p["c"]),
    not_power("cv", lambda p, c: p["c"] * p["v"]),
    not_inverse_power("abq/c", lambda p, c: p["a"] * p["b"] * c.q / p["c"]),
    not_inverse_power("bq/c", lambda p, c: p["b"] * c.q / p["c"]),
)


def _e1_lhs(p, ctx, bound):
    f = poch_ratio_handle([p["t"]], [p["v"]])
    return {0: expansion_e(p["a"], p["b"], f, p["c"], ctx)}


def _e1_rhs(p, ctx, bound):
    a, b, c, t, v = _vals(p, "abctv")
    q = ctx.q
    with ctx.precision():
        return {0: pinf(ctx, c * t) / pinf(ctx, c * v) * phi([a, t / v], [q / (c * v)], b * q / c, ctx)}


E_RATIO1 = IdentityCheck(
    "E-RATIO1", "E(a,b;theta) on a ratio of two products",
    "E(a,b;theta){(ct)_inf/(cv)_inf} = (ct)_inf/(cv)_inf 2phi1(a,t/v;q/cv;q,bq/c)",
    CheckMode.NUMERIC_POINT, _e1_lhs, _e1_rhs, _eratio_sample, constraints=_E_POLES,
)


def _e2_lhs(p, ctx, bound):
    f = poch_ratio_handle([p["s"], p["t"]], [p["v"]])
    return {0: expansion_e(p["a"], p["b"], f, p["c"], ctx)}


def _e2_rhs(p, ctx, bound):
    a, b, c, s, t, v = _vals(p, "abcstv")
    q = ctx.q
    with ctx.precision():
        pre = pinf(ctx, a * b * q / c, c * s, c * t) / pinf(ctx, b * q / c, c * v)
        return {0: pre * phi([a, q / (c * s), q / (c * t)], [a * b * q / c, q / (c * v)], b * s * t / v, ctx)}


E_RATIO2 = IdentityCheck(
    "E-RATIO2", "E(a,b;theta) on a ratio of three products",
    "E(a,b;theta){(cs,ct)_inf/(cv)_inf} = (abq/c,cs,ct)_inf/(bq/c,cv)_inf 3phi2(a,q/cs,q/ct;abq/c,q/cv;q,bst/v)",
    CheckMode.NUMERIC_POINT, _e2_lhs, _e2_rhs, _eratio_sample,
    constraints=_E_POLES + (
        nonzero("s", "t"),
        below("bst/v", lambda p, c: p["b"] * p["s"] * p["t"] / p["v"]),
    ),
)

E_EXPANSION_DEGREE = 5


def _eexp_sample(rng, index, ctx):
    q = ctx.q
    c, a = free(rng), free(rng)
    b = shrink(free(rng), lambda b: abs(b * q / c) <= Fraction(1, 2))
    out = {"a": a, "b": b, "c": c}
    for i in range(E_EXPANSION_DEGREE + 1):
        out[f"f{i}"] = free(rng)
    return out


def _eexp_poly(p) -> UniPoly:
    return UniPoly([p[f"f{i}"] for i in range(E_EXPANSION_DEGREE + 1)], var="c")


def _eexp_lhs(p, ctx, bound):
    return {0: expansion_e(p["a"], p["b"], polynomial_handle(_eexp_poly(p)), p["c"], ctx)}


def _eexp_rhs(p, ctx, bound):
    g = e_cauchy_operator(p["a"], p["b"], _eexp_poly(p), ctx)
    return {0: ctx.lift(g(p["c"]))}


E_EXPANSION = IdentityCheck(
    "E-EXPANSION", "point expansion of E(a,b;theta)",
    "E(a,b;theta){f}(c) = (abq/c)_inf/(bq/c)_inf sum_k (a)_k q^C(k,2) f(cq^-k) (-bq/c)^k/(q,abq/c)_k",
    CheckMode.NUMERIC_POINT, _eexp_lhs, _eexp_rhs, _eexp_sample,
    constraints=(
        nonzero("c"),
        below("bq/c", lambda p, c: p["b"] * c.q / p["c"], bound=Fraction(1, 2)),
        not_inverse_power("abq/c", lambda p, c: p["a"] * p["b"] * c.q / p["c"]),
    ),
)


def _opre_lhs(p, ctx, bound):
    x, y, a, q = p["x"], p["y"], p["a"], ctx.q
    return {
        n: e_cauchy_operator(y / x, x, UniPoly.monomial(n, sign_q(n, q), var="a"), ctx)(a)
        for n in range(bound + 1)
    }


def _opre_rhs(p, ctx, bound):
    x, y, a = _vals(p, "xya")
    return {n: _u(n, x, y, a, ctx) for n in range(bound + 1)}


OPREP_E = IdentityCheck(
    "OPREP-E", "U_n as E(y/x,x;theta) applied to a monomial",
    "E(y/x,x;theta){(-1)^n q^C(n,2) a^n} = U_n(x,y,a)",
    CheckMode.EXACT_FINITE, _opre_lhs, _opre_rhs,
    lambda rng, i, ctx: {"x": free(rng), "y": free(rng), "a": free(rng)},
    constraints=(nonzero("x"),), grid=8,
)


# -- multilinear generating functions with y/x = q^-r ---------------------------------


def _terminating_xya(rng, index, ctx):
    """x, a with |xq/a| < 1 and y = x q^-r."""
    q = ctx.q
    r = termination_order(index)
    a = free(rng)
    x = shrink(free(rng), lambda x: abs(x * q / a) <= Fraction(1, 2))
    return {"x": x, "y": x * q ** (-r), "a": a, "r": r}


def _rq(p, c):
    return c.q ** (-int(p["r"]))


_TERMINATING = (
    nonzero("x", "a"),
    terminates("y/x", lambda p, c: p["y"] / p["x"]),
    below("xq/a", lambda p, c: p["x"] * c.q / p["a"]),
    not_inverse_power("yq/a", lambda p, c: p["y"] * c.q / p["a"]),
)


def _rogers2_sample(rng, index, ctx):
    p = _terminating_xya(rng, index, ctx)
    q, a, r = ctx.q, p["a"], p["r"]
    p["t"] = shrink(small(rng), lambda t: abs(a * t) * q ** (-r) <= MARGIN)
    p["s"] = small(rng)
    return p


def _rogers2_lhs(p, ctx, bound):
    x, y, a, s, t = _vals(p, "xyast")
    q = ctx.q
    ex = ctx.as_exact()

    def shell(total):
        return [
            (-1) ** n * q ** (-binom2(n) - n * m) * _u(n + m, x, y, a, ex) * t**n * s**m / (qf(n, q) * qf(m, q))
            for n, m in compositions(total, 2)
        ]

    return {0: exact_shells(shell, ctx)}


def _rogers2_rhs(p, ctx, bound):
    x, y, a, s, t = _vals(p, "xyast")
    q = ctx.q
    with ctx.precision():
        return {0: pinf(ctx, a * s) / pinf(ctx, a * t) * phi([y / x, s / t], [q / (a * t)], x * q / a, ctx)}


ROGERS_2 = IdentityCheck(
    "ROGERS-2", "Rogers-type formula through E(a,b;theta)",
    "sum (-1)^n q^(-C(n,2)-nm) U_(n+m) t^n s^m/((q)_n(q)_m) = (as)_inf/(at)_inf 2phi1(y/x,s/t;q/at;q,xq/a)",
    CheckMode.NUMERIC_POINT, _rogers2_lhs, _rogers2_rhs, _rogers2_sample,
    constraints=_TERMINATING + (
        nonzero("t"),
        below("at q^-r", lambda p, c: p["a"] * p["t"] * _rq(p, c)),
        not_inverse_power("q/at", lambda p, c: c.q / (p["a"] * p["t"])),
    ),
)


def _triple_sample(rng, index, ctx):
    p = _terminating_xya(rng, index, ctx)
    q, a, x, r = ctx.q, p["a"], p["x"], p["r"]
    v = shrink(small(rng), lambda v: abs(a * v) * q ** (-r) <= MARGIN)
    s = small(rng)
    t = shrink(small(rng), lambda t: abs(x * s * t / v) <= Fraction(1, 2))
    p.update(s=s, t=t, v=v)
    return p


def _triple_lhs(p, ctx, bound):
    x, y, a, s, t, v = _vals(p, "xyastv")
    q = ctx.q
    ex = ctx.as_exact()

    def shell(total):
        return [
            (-1) ** k * q ** (-binom2(k) - (m + n) * k - m * n) * _u(total, x, y, a, ex)
            * t**n * s**m * v**k / (qf(n, q) * qf(m, q) * qf(k, q))
            for n, m, k in compositions(total, 3)
        ]

    return {0: exact_shells(shell, ctx)}


def _triple_rhs(p, ctx, bound):
    x, y, a, s, t, v = _vals(p, "xyastv")
    q = ctx.q
    with ctx.precision():
        pre = pinf(ctx, y * q / a, a * s, a * t) / pinf(ctx, x * q / a, a * v)
        return {0: pre * phi([y / x, q / (a * s), q / (a * t)], [y * q / a, q / (a * v)], x * s * t / v, ctx)}


TRIPLE = IdentityCheck(
    "TRIPLE", "triple generating function of U_(n+m+k)",
    "sum (-1)^k q^(-C(k,2)-(m+n)k-mn) U_(n+m+k) t^n s^m v^k/((q)_n(q)_m(q)_k) = (yq/a,as,at)_inf/(xq/a,av)_inf 3phi2(y/x,q/as,q/at;yq/a,q/av;q,xst/v)",
    CheckMode.NUMERIC_POINT, _triple_lhs, _triple_rhs, _triple_sample,
    constraints=_TERMINATING + (
        nonzero("s", "t", "v"),
        below("av q^-r", lambda p, c: p["a"] * p["v"] * _rq(p, c)),
        below("xst/v", lambda p, c: p["x"] * p["s"] * p["t"] / p["v"]),
        not_inverse_power("q/av", lambda p, c: c.q / (p["a"] * p["v"])),
    ),
)


def _rogers3_sample(rng, index, ctx):
    p = _terminating_xya(rng, index, ctx)
    q, a, x = ctx.q, p["a"], p["x"]
    s = small(rng)
    t = shrink(small(rng), lambda t: abs(a * x * s * t / q) <= Fraction(1, 2))
    p.update(s=s, t=t)
    return p


def _rogers3_lhs(p, ctx, bound):
    x, y, a, s, t = _vals(p, "xyast")
    q = ctx.q
    ex = ctx.as_exact()

    def shell(total):
        return [
            q ** (-m * n) * _u(total, x, y, a, ex) * t**n * s**m / (qf(n, q) * qf(m, q))
            for n, m in compositions(total, 2)
        ]

    return {0: exact_shells(shell, ctx)}


def _rogers3_rhs(p, ctx, bound):
    x, y, a, s, t = _vals(p, "xyast")
    q = ctx.q
    with ctx.precision():
        pre = pinf(ctx, y * q / a, a * s, a * t) / pinf(ctx, x * q / a)
        return {0: pre * phi([y / x, q / (a * s), q / (a * t)], [y * q / a], a * x * s * t / q, ctx)}


ROGERS_3 = IdentityCheck(
    "ROGERS-3", "Rogers-type formula with the q^-mn weight",
    "sum q^-mn U_(n+m) t^n s^m/((q)_n(q)_m) = (yq/a,as,at)_inf/(xq/a)_inf 3phi1(y/x,q/as,q/at;yq/a;q,axst/q)",
    CheckMode.NUMERIC_POINT, _rogers3_lhs, _rogers3_rhs, _rogers3_sample,
    constraints=_TERMINATING + (
        nonzero("s", "t"),
        below("axst/q", lambda p, c: p["a"] * p["x"] * p["s"] * p["t"] / c.q),
    ),
)


# -- Mehler-type formula, non-terminating form ---------------------------------------------


def _nt_sample(rng, index, ctx):
    p = _mehler_sample(rng, index, ctx)
    # keep xq/a well inside the unit disc
    a = p["a"]
    x = p["x"] = shrink(p["x"], lambda x: abs(x * ctx.q / a) < Fraction(1, 2))
    bound = MARGIN * ctx.q ** p["r"]
    b, u = p["b"], p["u"]
    p["t"] = shrink(p["t"], lambda t: abs(x * b * t) <= bound and abs(a * u * t) <= bound)
    return p


def _nt_series(p, ctx):
    x, y, a, u, v, b, t = _vals(p, "xyauvbt")
    q = ctx.q
    return phi([y / x, q / (a * b * t), q / (a * v * t)], [y * q / a, q / (a * u * t)], x * b * v * t / u, ctx)


def _nt_rhs(p, ctx, bound):
    x, y, a, u, v, b, t = _vals(p, "xyauvbt")
    q = ctx.q
    with ctx.precision():
        pre = pinf(ctx, y * q / a, a * b * t, a * v * t) / pinf(ctx, x * q / a, a * u * t)
        return {0: pre * _nt_series(p, ctx)}


_NT_CONSTRAINTS = MEHLER_CONSTRAINTS + (
    below("xq/a", lambda p, c: p["x"] * c.q / p["a"]),
    below("aut", lambda p, c: p["a"] * p["u"] * p["t"]),
    below("xbvt/u", lambda p, c: p["x"] * p["b"] * p["v"] * p["t"] / p["u"]),
    not_inverse_power("yq/a", lambda p, c: p["y"] * c.q / p["a"]),
)

MEHLER_NT = IdentityCheck(
    "MEHLER-NT", "Mehler-type formula, non-terminating form",
    "sum (-1)^n q^-C(n,2) U_n(x,y,a) U_n(u,v,b) t^n/(q)_n = (yq/a,abt,avt)_inf/(xq/a,aut)_inf 3phi2(y/x,q/abt,q/avt;yq/a,q/aut;q,xbvt/u)",
    CheckMode.NUMERIC_POINT, mehler_lhs, _nt_rhs, _nt_sample, constraints=_NT_CONSTRAINTS,
)


def _trans_lhs(p, ctx, bound):
    with ctx.precision():
        return {0: _nt_series(p, ctx)}


def _trans_rhs(p, ctx, bound):
    x, y, a, u, v, b, t = _vals(p, "xyauvbt")
    q = ctx.q
    with ctx.precision():
        pre = pinf(ctx, y * b * t, x * q / a) / pinf(ctx, x * b * t, y * q / a)
        series = phi([y / x, v / u, q / (a * b * t)], [q / (x * b * t), q / (a * u * t)], q, ctx)
        return {0: pre * series}


TRANS_32 = IdentityCheck(
    "TRANS-32", "transformation between the two Mehler-type 3phi2 series",
    "3phi2(y/x,q/abt,q/avt;yq/a,q/aut;q,xbvt/u) = (ybt,xq/a)_inf/(xbt,yq/a)_inf 3phi2(y/x,v/u,q/abt;q/xbt,q/aut;q,q)",
    CheckMode.NUMERIC_POINT, _trans_lhs, _trans_rhs, _nt_sample, constraints=_NT_CONSTRAINTS,
)


CHECKS = [E_POLY, E_RATIO1, E_RATIO2, E_EXPANSION, OPREP_E, ROGERS_2, TRIPLE, ROGERS_3, MEHLER_NT, TRANS_32]
