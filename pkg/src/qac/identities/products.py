"""Generating functions for products of U_n and of Rogers-Szego polynomials.

Three of these identities only make sense as formal power series once the
parameters are specialised (PROD-RS in t and s, GN-T3 and GN-GAUSS in s and z).
Their coefficients are convergent numeric sums, so they run in NumericSeries
mode: the left side is summed from exact terms, the right side is expanded as
a truncated series with floating coefficients.
"""

from __future__ import annotations

import math
from fractions import Fraction

from ..polynomials import ascu_sum, rs_g
from ..qkernel import binom2, phi
from ..series import TruncatedSeries, assemble_product, num, den
from ..summation import sum_series
from .core import CheckMode, Constraint, IdentityCheck
from .tools import (
    MARGIN,
    below,
    compositions,
    exact_series,
    exact_shells,
    free,
    linear_product,
    nonzero,
    not_inverse_power,
    not_power,
    pinf,
    qf,
    qp,
    settle,
    shrink,
    small,
    termination_order,
    terminates,
)


def _u(n, x, y, a, ctx):
    return ascu_sum(n, {"x": x, "y": y, "a": a}, ctx.as_exact())


def _g(n, a, ctx):
    return rs_g(n, a, ctx.as_exact())


def _vals(p, names):
    return tuple(p[k] for k in names)


def _rq(p, c, key="r"):
    return c.q ** (-int(p[key]))


def _xa_pair(rng, q):
    a = free(rng)
    x = shrink(free(rng), lambda x: abs(x * q / a) <= Fraction(1, 2))
    return x, a


def _wide(ctx):
    """Working context for series with floating coefficients."""
    return ctx.boosted(2 * ctx.precision_bits)


def _narrow(series, ctx):
    with ctx.precision():
        return {e: +v for e, v in series.items()}


# -- PROD-3 and PROD-2 ------------------------------------------------------------------


def _prod3_sample(rng, index, ctx):
    q = ctx.q
    r = termination_order(index)
    x, a = _xa_pair(rng, q)
    u, b, z, c = free(rng), free(rng), free(rng), free(rng)
    bound = MARGIN * q**r
    t = shrink(small(rng), lambda t: abs(a * u * t) <= bound and abs(a * b * t) <= bound)
    s = shrink(small(rng), lambda s: abs(a * z * s) <= bound and abs(a * c * s) <= bound)
    return {"x": x, "y": x * q ** (-r), "a": a, "u": u, "v": free(rng), "b": b,
            "z": z, "w": free(rng), "c": c, "t": t, "s": s, "r": r}


def _prod3_lhs(p, ctx, bound):
    x, y, a, u, v, b, z, w, c, t, s = _vals(p, "xyauvbzwcts")
    q = ctx.q
    ex = ctx.as_exact()

    def shell(total):
        head = (-1) ** total * q ** (-binom2(total)) * _u(total, x, y, a, ex)
        return [
            head * _u(n, u, v, b, ex) * _u(m, z, w, c, ex) * t**n * s**m / (qf(n, q) * qf(m, q))
            for n, m in compositions(total, 2)
        ]

    return {0: exact_shells(shell, ctx)}


def _prod3_rhs(p, ctx, bound):
    x, y, a, u, v, b, z, w, c, t, s = _vals(p, "xyauvbzwcts")
    q = ctx.q
    with ctx.precision():
        pre = pinf(ctx, y * q / a, a * b * t, a * v * t, a * c * s, a * w * s) / pinf(
            ctx, x * q / a, a * u * t, a * z * s
        )
        series = phi(
            [y / x, q / (a * b * t), q / (a * v * t), q / (a * c * s), q / (a * w * s)],
            [y * q / a, q / (a * u * t), q / (a * z * s)],
            x * a * b * c * v * w * t * s / (u * z * q),
            ctx,
        )
        return {0: pre * series}


PROD_3 = IdentityCheck(
    "PROD-3", "generating function for a product of three U polynomials",
    "sum (-1)^(n+m) q^-C(n+m,2) U_(n+m)(x,y,a) U_n(u,v,b) U_m(z,w,c) t^n s^m/((q)_n(q)_m) = (yq/a,abt,avt,acs,aws)_inf/(xq/a,aut,azs)_inf 5phi3(...;q,xabcvwts/(uzq))",
    CheckMode.NUMERIC_POINT, _prod3_lhs, _prod3_rhs, _prod3_sample,
    constraints=(
        nonzero("x", "a", "u", "z", "b", "c", "t", "s"),
        terminates("y/x", lambda p, c: p["y"] / p["x"]),
        below("xq/a", lambda p, c: p["x"] * c.q / p["a"]),
        below("aut q^-r", lambda p, c: p["a"] * p["u"] * p["t"] * _rq(p, c)),
        below("azs q^-r", lambda p, c: p["a"] * p["z"] * p["s"] * _rq(p, c)),
        not_inverse_power("yq/a", lambda p, c: p["y"] * c.q / p["a"]),
        not_inverse_power("q/aut", lambda p, c: c.q / (p["a"] * p["u"] * p["t"])),
        not_inverse_power("q/azs", lambda p, c: c.q / (p["a"] * p["z"] * p["s"])),
    ),
)

PROD2_M = 4


def _prod2_sample(rng, index, ctx):
    q = ctx.q
    r = termination_order(index)
    x, a = _xa_pair(rng, q)
    u, b = free(rng), free(rng)
    bound = MARGIN * q**r
    t = shrink(small(rng), lambda t: abs(a * u * t) <= bound and abs(a * b * t) <= bound)
    return {"x": x, "y": x * q ** (-r), "a": a, "u": u, "v": free(rng), "b": b, "t": t, "r": r}


def _prod2_lhs(p, ctx, bound):
    x, y, a, u, v, b, t = _vals(p, "xyauvbt")
    q = ctx.q
    ex = ctx.as_exact()
    out = {}
    for m in range(bound + 1):
        def term(n, m=m):
            return (
                (-1) ** (n + m) * q ** (-binom2(n + m)) * _u(n + m, x, y, a, ex)
                * _u(n, u, v, b, ex) * t**n / qf(n, q)
            )

        out[m] = exact_series(term, ctx)
    return out


def _prod2_rhs(p, ctx, bound):
    x, y, a, u, v, b, t = _vals(p, "xyauvbt")
    q = ctx.q
    out = {}
    with ctx.precision():
        pre = pinf(ctx, y * q / a, a * b * t, a * v * t) / pinf(ctx, x * q / a, a * u * t)
        for m in range(bound + 1):
            series = phi(
                [y / x, q / (a * b * t), q / (a * v * t)], [y * q / a, q / (a * u * t)],
                x * b * v * t / (u * q**m), ctx,
            )
            out[m] = pre * ctx.lift(a**m) * series
    return out


PROD_2 = IdentityCheck(
    "PROD-2", "generating function for U_(n+m) U_n with m fixed",
    "sum_n (-1)^(n+m) q^-C(n+m,2) U_(n+m)(x,y,a) U_n(u,v,b) t^n/(q)_n = (yq/a,abt,avt)_inf/(xq/a,aut)_inf a^m 3phi2(y/x,q/abt,q/avt;yq/a,q/aut;q,xbvt/(uq^m))",
    CheckMode.NUMERIC_POINT, _prod2_lhs, _prod2_rhs, _prod2_sample,
    constraints=(
        nonzero("x", "a", "u", "b", "t"),
        terminates("y/x", lambda p, c: p["y"] / p["x"]),
        below("xq/a", lambda p, c: p["x"] * c.q / p["a"]),
        below("aut q^-r", lambda p, c: p["a"] * p["u"] * p["t"] * _rq(p, c)),
        not_inverse_power("yq/a", lambda p, c: p["y"] * c.q / p["a"]),
        not_inverse_power("q/aut", lambda p, c: c.q / (p["a"] * p["u"] * p["t"])),
    ),
    grid=PROD2_M,
)


# -- Rogers-Szego products ------------------------------------------------------------------


def _rs_rate(a, b, q, extra: int) -> float:
    """Geometric rate factor of sums over products g_(n+i)(a) g_(m+i)(b)."""
    return math.sqrt(max(1.0, abs(float(a))) * max(1.0, abs(float(b)))) * float(q) ** (-(extra + 1) / 2)


def _cao_sample(rng, index, ctx):
    q = ctx.q
    a, b = free(rng), free(rng)
    rate = _rs_rate(a, b, q, CAO_M)
    t = shrink(small(rng), lambda t: abs(float(t)) * rate <= float(MARGIN))
    return {"a": a, "b": b, "t": t}


CAO_M = 3


def _cao_lhs(p, ctx, bound):
    a, b, t = _vals(p, "abt")
    q = ctx.q
    ex = ctx.as_exact()
    out = {}
    for m in range(bound + 1):
        def term(n, m=m):
            return (-1) ** n * q ** binom2(n) * _g(n + m, a, ex) * _g(n, b, ex) * t**n / qf(n, q)

        out[m] = exact_series(term, ctx)
    return out


def _cao_rhs(p, ctx, bound):
    a, b, t = _vals(p, "abt")
    q = ctx.q
    out = {}
    with ctx.precision():
        pre = pinf(ctx, a * b * t, a * t, b * t, t) / pinf(ctx, a * b * t * t / q)
        for m in range(bound + 1):
            factor = qp(q / t, m, q) / ((b * t / q) ** m * qp(q * q / (a * b * t * t), m, q))
            series = phi([q ** (-m), q / (a * b * t)], [t * q ** (-m)], b * t, ctx)
            out[m] = pre * ctx.lift(factor) * series
    return out


CAO_RED = IdentityCheck(
    "CAO-RED", "generating function for g_(n+m)(a) g_n(b)",
    "sum (-1)^n q^C(n,2) g_(n+m)(a) g_n(b) t^n/(q)_n = (abt,at,bt,t)_inf/(abt^2/q)_inf (q/t)_m/((bt/q)^m (q^2/abt^2)_m) 2phi1(q^-m,q/abt;tq^-m;q,bt)",
    CheckMode.NUMERIC_POINT, _cao_lhs, _cao_rhs, _cao_sample,
    constraints=(
        nonzero("a", "b", "t"),
        Constraint(
            "|t| sqrt(ab) q^-(m+1)/2 < 1", "convergence",
            lambda p, c: abs(float(p["t"])) * _rs_rate(p["a"], p["b"], c.q, CAO_M) < 1,
        ),
        not_power("t", "t"),
        not_power("abt^2", lambda p, c: p["a"] * p["b"] * p["t"] ** 2),
        below("abt^2/q", lambda p, c: p["a"] * p["b"] * p["t"] ** 2 / c.q),
    ),
    grid=CAO_M,
)


def _rs_series_sample(rng, index, ctx):
    return {"a": free(rng), "b": free(rng), "c": free(rng)}


def _prodrs_lhs(p, ctx, order):
    a, b, c = _vals(p, "abc")
    q = ctx.q
    ex = ctx.as_exact()
    out = {}
    for n in range(order + 1):
        for m in range(order + 1 - n):
            v = (
                (-1) ** (n + m) * q ** (binom2(n) + binom2(m))
                * _g(n + m, a, ex) * _g(n, b, ex) * _g(m, c, ex) / (qf(n, q) * qf(m, q))
            )
            out[(n, m)] = ctx.lift(v)
    return out


def _prodrs_rhs(p, ctx, order):
    a, b, c = _vals(p, "abc")
    q = ctx.q
    w = _wide(ctx)
    vs = ("t", "s")
    with w.precision():
        pre = assemble_product(
            [num(a, "t"), num(a * b, "t"), num(a, "s"), num(a * c, "s")], w, vs, order
        ) * pinf(w, q / a)

        def terms():
            k = 0
            while True:
                coef = (a**3 * b * c / q**3) ** k * q ** (-2 * binom2(k)) / (qf(k, q) * qp(q / a, k, q))
                roots_t = [q ** (j + 1) / a for j in range(k)] + [q ** (j + 1) / (a * b) for j in range(k)]
                roots_s = [q ** (j + 1) / a for j in range(k)] + [q ** (j + 1) / (a * c) for j in range(k)]
                yield (
                    linear_product(roots_t, "t", w, vs, order)
                    * linear_product(roots_s, "s", w, vs, order)
                    * w.lift(coef)
                )
                k += 1

        total = settle(terms(), w)
        return _narrow(pre * total, ctx)


PROD_RS = IdentityCheck(
    "PROD-RS", "double generating function for a product of three g polynomials",
    "sum (-1)^(n+m) q^(C(n,2)+C(m,2)) g_(n+m)(a) g_n(b) g_m(c) t^n s^m/((q)_n(q)_m) = (q/a,at,abt,as,acs)_inf 4phi1(q/at,q/abt,q/as,q/acs;q/a;q,a^3bct^2s^2/q^3)",
    CheckMode.NUMERIC_SERIES, _prodrs_lhs, _prodrs_rhs, _rs_series_sample,
    constraints=(nonzero("a", "b", "c"), not_power("a", "a")),
    variables=("t", "s"),
)


def _gn_sample(rng, index, ctx):
    r = termination_order(index)
    a = free(rng)
    return {"a": a, "b": free(rng), "t": ctx.q ** (r + 1) / a, "r": r}


_GN_CONSTRAINTS = (
    nonzero("a", "b"),
    not_power("a", "a"),
    not_power("b", "b"),
    terminates("q/at", lambda p, c: c.q / (p["a"] * p["t"])),
    not_power("ab", lambda p, c: p["a"] * p["b"]),
)


def _gn_lhs(p, ctx, order):
    a, b, t = _vals(p, "abt")
    q = ctx.q
    ex = ctx.as_exact()
    out = {}
    for m in range(order + 1):
        for k in range(order + 1 - m):
            head = (-1) ** (m + k) * q ** (binom2(m) + binom2(k)) / (qf(m, q) * qf(k, q))

            def term(n, m=m, k=k, head=head):
                return head * (-1) ** n * q ** binom2(n) * _g(n + k, a, ex) * _g(m + k, b, ex) * t**n / qf(n, q)

            out[(m, k)] = exact_series(term, ctx)
    return out


def _gnt3_rhs(p, ctx, order):
    a, b, t = _vals(p, "abt")
    q, r = ctx.q, int(p["r"])
    w = _wide(ctx)
    vs = ("s", "z")
    ab = a * b
    with w.precision():
        pre = assemble_product([num(b, "s"), num(ab, "z")], w, vs, order) * pinf(w, q / a, q / b, a * t)
        total = TruncatedSeries(vs, order)
        for k in range(r + 1):
            ck = qp(q / (a * t), k, q) / (qf(k, q) * qp(q / a, k, q)) * (ab * t / q) ** k
            zk = linear_product([q ** (j + 1) / ab for j in range(k)], "z", w, vs, order)

            def inner(k=k):
                j = 0
                while True:
                    cj = ab**j * q ** (-(k + 1) * j) / (qf(j, q) * qp(q / b, j, q))
                    yield (
                        linear_product([q ** (i + 1) / b for i in range(j)], "s", w, vs, order)
                        * linear_product([q ** (k + 1 + i) / ab for i in range(j)], "z", w, vs, order)
                        * w.lift(cj)
                    )
                    j += 1

            total = total + zk * settle(inner(), w) * w.lift(ck)
        return _narrow(pre * total, ctx)


GN_T3 = IdentityCheck(
    "GN-T3", "triple generating function for g_(n+k)(a) g_(m+k)(b)",
    "sum (-1)^(n+m+k) q^(C(n,2)+C(m,2)+C(k,2)) g_(n+k)(a) g_(m+k)(b) t^n s^m z^k/((q)_n(q)_m(q)_k) = (q/a,q/b,bs,at,abz)_inf sum_k (q/at,q/abz)_k/(q,q/a)_k (abtz/q)^k 2phi1(q/bs,q^(k+1)/abz;q/b;q,absz/q^(k+1))",
    CheckMode.NUMERIC_SERIES, _gn_lhs, _gnt3_rhs, _gn_sample,
    constraints=_GN_CONSTRAINTS, variables=("s", "z"),
)


def _gauss_rhs(p, ctx, order):
    a, b, t = _vals(p, "abt")
    q, r = ctx.q, int(p["r"])
    w = _wide(ctx)
    vs = ("s", "z")
    ab = a * b
    with w.precision():
        pre = assemble_product(
            [num(1, "s"), num(b, "s"), num(a, "z"), num(ab, "z"), den(ab / q, ("s", "z"))], w, vs, order
        ) * pinf(w, q / a, a * t)
        total = TruncatedSeries(vs, order)
        for k in range(r + 1):
            ck = qp(q / (a * t), k, q) / (qf(k, q) * qp(q / a, k, q)) * (a * t) ** k * ab**k
            piece = linear_product(
                [q ** (i + 1) / a for i in range(k)] + [q ** (i + 1) / ab for i in range(k)], "z", w, vs, order
            )
            for i in range(k):
                shift = q ** (-i - 2)
                geo = [w.lift(-shift * (ab * shift) ** j) for j in range(order // 2 + 1)]
                piece = piece * TruncatedSeries.univariate(vs, order, ("s", "z"), geo)
            total = total + piece * w.lift(ck)
        return _narrow(pre * total, ctx)


GN_GAUSS = IdentityCheck(
    "GN-GAUSS", "the triple g generating function summed by q-Gauss",
    "same left side = (q/a,s,at,az,bs,abz)_inf/(absz/q)_inf 3phi2(q/at,q/az,q/abz;q/a,q^2/absz;q,atz/s)",
    CheckMode.NUMERIC_SERIES, _gn_lhs, _gauss_rhs, _gn_sample,
    constraints=_GN_CONSTRAINTS, variables=("s", "z"),
)


# -- two-parameter families with an extra summation index ----------------------------------


def _t3_sample(rng, index, ctx):
    q = ctx.q
    r1, r2 = termination_order(index), termination_order(index + 1)
    x, a = _xa_pair(rng, q)
    u, b = _xa_pair(rng, q)
    return {"x": x, "y": x * q ** (-r1), "a": a, "u": u, "v": u * q ** (-r2), "b": b,
            "t": small(rng), "s": small(rng), "z": small(rng), "r": r1, "r2": r2}


def _t3_lhs(p, ctx, bound):
    x, y, a, u, v, b, t, s, z = _vals(p, "xyauvbtsz")
    q = ctx.q
    ex = ctx.as_exact()

    def shell(total):
        return [
            (-1) ** k * q ** (-binom2(k) - (n + m) * k) * _u(n + k, x, y, a, ex) * _u(m + k, u, v, b, ex)
            * t**n * s**m * z**k / (qf(n, q) * qf(m, q) * qf(k, q))
            for n, m, k in compositions(total, 3)
        ]

    return {0: exact_shells(shell, ctx)}


def _t3_rhs(p, ctx, bound):
    x, y, a, u, v, b, t, s, z = _vals(p, "xyauvbtsz")
    q, r1 = ctx.q, int(p["r"])
    with ctx.precision():
        pre = pinf(ctx, y * q / a, v * q / b, b * s, a * t, a * b * z) / pinf(ctx, x * q / a, u * q / b)
        total = ctx.lift(0)
        for k in range(r1 + 1):
            c = (
                (-1) ** k * q ** (-binom2(k))
                * qp(y / x, k, q) * qp(q / (a * t), k, q) * qp(q / (a * b * z), k, q)
                / (qf(k, q) * qp(y * q / a, k, q)) * (x * a * b * t * z / q) ** k
            )
            series = phi(
                [v / u, q / (b * s), q ** (k + 1) / (a * b * z)], [v * q / b],
                a * b * u * s * z / q ** (k + 1), ctx,
            )
            total += ctx.lift(c) * series
        return {0: pre * total}


PROD_T3 = IdentityCheck(
    "PROD-T3", "triple generating function for U_(n+k) U_(m+k)",
    "sum (-1)^k q^(-C(k,2)-(n+m)k) U_(n+k)(x,y,a) U_(m+k)(u,v,b) t^n s^m z^k/((q)_n(q)_m(q)_k) = (yq/a,vq/b,bs,at,abz)_inf/(xq/a,uq/b)_inf sum_k (...)_k 3phi1(v/u,q/bs,q^(k+1)/abz;vq/b;q,abusz/q^(k+1))",
    CheckMode.NUMERIC_POINT, _t3_lhs, _t3_rhs, _t3_sample,
    constraints=(
        nonzero("x", "a", "u", "b", "t", "s", "z"),
        terminates("y/x", lambda p, c: p["y"] / p["x"]),
        terminates("v/u", lambda p, c: p["v"] / p["u"], key="r2"),
        below("xq/a", lambda p, c: p["x"] * c.q / p["a"]),
        below("uq/b", lambda p, c: p["u"] * c.q / p["b"]),
        not_inverse_power("yq/a", lambda p, c: p["y"] * c.q / p["a"]),
        not_inverse_power("vq/b", lambda p, c: p["v"] * c.q / p["b"]),
    ),
)

ONE_K_GRID = 2


def _1k_sample(rng, index, ctx):
    q = ctx.q
    r = termination_order(index)
    x, a = _xa_pair(rng, q)
    u, b = _xa_pair(rng, q)
    bound = MARGIN * q ** (r + ONE_K_GRID)
    z = shrink(small(rng), lambda z: abs(x * b * z) <= bound and abs(a * u * z) <= bound)
    return {"x": x, "y": free(rng), "a": a, "u": u, "v": u * q ** (-r), "b": b, "z": z, "r": r}


def _1k_lhs(p, ctx, bound):
    x, y, a, u, v, b, z = _vals(p, "xyauvbz")
    q = ctx.q
    ex = ctx.as_exact()
    out = {}
    for n in range(bound + 1):
        for m in range(bound + 1):
            def term(k, n=n, m=m):
                return (
                    (-1) ** (m + n + k) * q ** (-binom2(n + k) - binom2(m) - m * k)
                    * _u(n + k, x, y, a, ex) * _u(m + k, u, v, b, ex) * z**k / qf(k, q)
                )

            out[(n, m)] = exact_series(term, ctx)
    return out


def _1k_rhs(p, ctx, bound):
    x, y, a, u, v, b, z = _vals(p, "xyauvbz")
    q = ctx.q
    out = {}
    with ctx.precision():
        pre = pinf(ctx, y * q / a, v * q / b, a * b * z) / pinf(ctx, x * q / a, u * q / b)
        for n in range(bound + 1):
            for m in range(bound + 1):
                def terms(n=n, m=m):
                    k = 0
                    while True:
                        c = qp(y / x, k, q) * qp(q / (a * b * z), k, q) / (qf(k, q) * qp(y * q / a, k, q)) * (
                            x * b * z / q**n
                        ) ** k
                        series = phi([v / u, q ** (k + 1) / (a * b * z)], [v * q / b], a * u * z / q ** (m + k), ctx)
                        yield ctx.lift(c) * series
                        k += 1

                total, _ = sum_series(terms(), ctx)
                out[(n, m)] = pre * ctx.lift(a**n * b**m) * total
    return out


PROD_1K = IdentityCheck(
    "PROD-1K", "generating function for U_(n+k) U_(m+k) over k",
    "sum_k (-1)^(m+n+k) q^(-C(n+k,2)-C(m,2)-mk) U_(n+k)(x,y,a) U_(m+k)(u,v,b) z^k/(q)_k = (yq/a,vq/b,abz)_inf/(xq/a,uq/b)_inf a^n b^m sum_k (y/x,q/abz)_k/(q,yq/a)_k (xbz/q^n)^k 2phi1(v/u,q^(k+1)/abz;vq/b;q,auz/q^(m+k))",
    CheckMode.NUMERIC_POINT, _1k_lhs, _1k_rhs, _1k_sample,
    constraints=(
        nonzero("x", "a", "u", "b", "z"),
        terminates("v/u", lambda p, c: p["v"] / p["u"]),
        below("xq/a", lambda p, c: p["x"] * c.q / p["a"]),
        below("uq/b", lambda p, c: p["u"] * c.q / p["b"]),
        below("xbz q^-(r+2)", lambda p, c: p["x"] * p["b"] * p["z"] * _rq(p, c) * c.q ** -ONE_K_GRID),
        not_inverse_power("yq/a", lambda p, c: p["y"] * c.q / p["a"]),
        not_inverse_power("vq/b", lambda p, c: p["v"] * c.q / p["b"]),
    ),
    grid=ONE_K_GRID,
)


def _gn1k_sample(rng, index, ctx):
    q = ctx.q
    a, b = free(rng), free(rng)
    rate = _rs_rate(a, b, q, 2 * ONE_K_GRID)
    z = shrink(small(rng), lambda z: abs(float(z)) * rate <= float(MARGIN))
    return {"a": a, "b": b, "z": z}


def _gn1k_lhs(p, ctx, bound):
    a, b, z = _vals(p, "abz")
    q = ctx.q
    ex = ctx.as_exact()
    out = {}
    for n in range(bound + 1):
        for m in range(bound + 1):
            def term(k, n=n, m=m):
                return (-1) ** k * q ** binom2(k) * _g(n + k, a, ex) * _g(m + k, b, ex) * z**k / qf(k, q)

            out[(n, m)] = exact_series(term, ctx)
    return out


def _gn1k_rhs(p, ctx, bound):
    a, b, z = _vals(p, "abz")
    q = ctx.q
    out = {}
    with ctx.precision():
        pre = pinf(ctx, q / a, q / b, a * b * z)
        for n in range(bound + 1):
            for m in range(bound + 1):
                def terms(n=n, m=m):
                    k = 0
                    while True:
                        c = (-1) ** k * q ** binom2(k) * qp(q / (a * b * z), k, q) / (qf(k, q) * qp(q / a, k, q)) * (
                            b * z / q**n
                        ) ** k
                        series = phi([q ** (k + 1) / (a * b * z)], [q / b], a * z / q ** (m + k), ctx)
                        yield ctx.lift(c) * series
                        k += 1

                total, _ = sum_series(terms(), ctx)
                out[(n, m)] = pre * ctx.lift(a**n * b**m) * total
    return out


GN_1K = IdentityCheck(
    "GN-1K", "generating function for g_(n+k)(a) g_(m+k)(b) over k",
    "sum_k (-1)^k q^C(k,2) g_(n+k)(a) g_(m+k)(b) z^k/(q)_k = (q/a,q/b,abz)_inf a^n b^m sum_k (-1)^k q^C(k,2) (q/abz)_k/(q,q/a)_k (bz/q^n)^k 1phi1(q^(k+1)/abz;q/b;q,az/q^(m+k))",
    CheckMode.NUMERIC_POINT, _gn1k_lhs, _gn1k_rhs, _gn1k_sample,
    constraints=(
        nonzero("a", "b", "z"),
        Constraint(
            "|z| sqrt(ab) q^-(n+m+1)/2 < 1", "convergence",
            lambda p, c: abs(float(p["z"])) * _rs_rate(p["a"], p["b"], c.q, 2 * ONE_K_GRID) < 1,
        ),
        not_power("a", "a"),
        not_power("b", "b"),
        not_power("abz", lambda p, c: p["a"] * p["b"] * p["z"]),
    ),
    grid=ONE_K_GRID,
)


CHECKS = [PROD_3, PROD_RS, PROD_2, CAO_RED, PROD_T3, GN_T3, GN_GAUSS, PROD_1K, GN_1K]
