"""Generating functions, relations, the D_q and D_xy lemmas, Mehler formulas."""

from __future__ import annotations

from fractions import Fraction

from ..algebra import BiPoly, UniPoly
from ..operators import dq_iterated_point, dxy_power, f_operator, poch_ratio_handle, t_operator
from ..polynomials import ascu_from_h, ascu_sum, ascu_u, cauchy_eval, cauchy_poly, rs_g, rs_h
from ..qkernel import _qbinom_exact, binom2, phi
from ..series import TruncatedSeries, assemble_product, den, num
from ..summation import sum_series
from .core import CheckMode, IdentityCheck
from .tools import (
    MARGIN,
    below,
    exact_series,
    fin_inverse,
    fin_series,
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

X, Y = BiPoly.x(), BiPoly.y()


def _U(n, x, y, a, ctx):
    return ascu_sum(n, {"x": x, "y": y, "a": a}, ctx.as_exact())


def _bp(c) -> BiPoly:
    return c if isinstance(c, BiPoly) else BiPoly.constant(c)


def _xya(rng, index, ctx):
    return {"x": free(rng), "y": free(rng), "a": free(rng)}


def _none(rng, index, ctx):
    return {}


def _only_a(rng, index, ctx):
    return {"a": free(rng)}


# -- generating functions ------------------------------------------------------


def _gf_lhs(poly):
    def lhs(p, ctx, order):
        q = ctx.q
        return {(n,): poly(n, p, ctx) / qf(n, q) for n in range(order + 1)}

    return lhs


def _gf_rhs(factors):
    def rhs(p, ctx, order):
        return assemble_product(factors(p, ctx), ctx, ("t",), order)

    return rhs


GF_U = IdentityCheck(
    "GF-U", "generating function of U_n",
    "sum U_n t^n/(q)_n = (at,yt)_inf/(xt)_inf",
    CheckMode.FORMAL_SERIES,
    _gf_lhs(lambda n, p, ctx: _U(n, p["x"], p["y"], p["a"], ctx)),
    _gf_rhs(lambda p, ctx: [num(p["a"]), num(p["y"]), den(p["x"])]),
    _xya, variables=("t",),
)

GF_P = IdentityCheck(
    "GF-P", "generating function of the Cauchy polynomials",
    "sum P_n t^n/(q)_n = (yt)_inf/(xt)_inf",
    CheckMode.FORMAL_SERIES,
    _gf_lhs(lambda n, p, ctx: cauchy_eval(n, p["x"], p["y"], ctx)),
    _gf_rhs(lambda p, ctx: [num(p["y"]), den(p["x"])]),
    lambda rng, i, ctx: {"x": free(rng), "y": free(rng)}, variables=("t",),
)

GF_H = IdentityCheck(
    "GF-H", "generating function of the homogeneous Rogers-Szego polynomials",
    "sum h_n t^n/(q)_n = (yt)_inf/(t,xt)_inf",
    CheckMode.FORMAL_SERIES,
    _gf_lhs(lambda n, p, ctx: rs_h(n, p["x"], p["y"], ctx)),
    _gf_rhs(lambda p, ctx: [num(p["y"]), den(1), den(p["x"])]),
    lambda rng, i, ctx: {"x": free(rng), "y": free(rng)}, variables=("t",),
)


# -- symmetry and relations ------------------------------------------------------


def _grid(value):
    def side(p, ctx, bound):
        return {n: value(n, p, ctx) for n in range(bound + 1)}

    return side


SYM_U = IdentityCheck(
    "SYM-U", "symmetry of U_n in y and a",
    "U_n(x,y,a) = U_n(x,a,y)",
    CheckMode.EXACT_FINITE,
    _grid(lambda n, p, ctx: _U(n, p["x"], p["y"], p["a"], ctx)),
    _grid(lambda n, p, ctx: _U(n, p["x"], p["a"], p["y"], ctx)),
    _xya, grid=12,
)

REL_u = IdentityCheck(
    "REL-u", "homogenization of the classical polynomials",
    "U_n(x,y,a) = y^n u_n^(a/y)(x/y)",
    CheckMode.EXACT_FINITE,
    _grid(lambda n, p, ctx: _U(n, p["x"], p["y"], p["a"], ctx)),
    _grid(lambda n, p, ctx: p["y"] ** n * ascu_u(n, p["x"] / p["y"], p["a"] / p["y"], ctx, route="definition")),
    _xya, constraints=(nonzero("x", "y", "a"),), grid=12,
)

REL_h = IdentityCheck(
    "REL-h", "U_n through h_n at the inverted base",
    "U_n = (-1)^n q^C(n,2) a^n h_n(y/a, x/a | 1/q)",
    CheckMode.EXACT_FINITE,
    _grid(lambda n, p, ctx: _U(n, p["x"], p["y"], p["a"], ctx)),
    _grid(lambda n, p, ctx: ascu_from_h(n, p, ctx)),
    _xya, constraints=(nonzero("a"),), grid=12,
)

REL_g = IdentityCheck(
    "REL-g", "U_n(0,1,a) through the Rogers-Szego polynomial",
    "U_n(0,1,a) = (-1)^n q^C(n,2) g_n(a)",
    CheckMode.EXACT_FINITE,
    _grid(lambda n, p, ctx: _U(n, 0, 1, p["a"], ctx)),
    _grid(lambda n, p, ctx: sign_q(n, ctx.q) * rs_g(n, p["a"], ctx)),
    _only_a, grid=12,
)


# -- q-exponential operator lemmas ---------------------------------------------------


def _tbdq_lhs(p, ctx, bound):
    return {n: t_operator(p["b"], UniPoly.monomial(n), ctx) for n in range(bound + 1)}


def _tbdq_rhs(p, ctx, bound):
    b, q = p["b"], ctx.q
    return {
        n: UniPoly([_qbinom_exact(n, n - j, q) * b ** (n - j) for j in range(n + 1)])
        for n in range(bound + 1)
    }


LEM_TBDQ = IdentityCheck(
    "LEM-TBDQ", "T(bD_q) on a monomial",
    "T(bD_q){a^n} = sum_k [n k] b^k a^(n-k)",
    CheckMode.EXACT_FINITE, _tbdq_lhs, _tbdq_rhs,
    lambda rng, i, ctx: {"b": free(rng)}, grid=8,
)


def _dqn_sample(rng, index, ctx):
    a = free(rng)
    v = shrink(small(rng), lambda v: abs(a * v) <= Fraction(1, 2))
    return {"a": a, "t": free(rng), "v": v}


def _dqn_lhs(p, ctx, bound):
    f = poch_ratio_handle([p["t"]], [p["v"]])
    cache: dict = {}
    return {n: dq_iterated_point(f, n, p["a"], ctx, cache) for n in range(bound + 1)}


def _dqn_rhs(p, ctx, bound):
    a, t, v, q = p["a"], p["t"], p["v"], ctx.q
    out = {}
    with ctx.precision():
        for n in range(bound + 1):
            out[n] = ctx.lift(v**n * qp(t / v, n, q)) * pinf(ctx, a * t * q**n) / pinf(ctx, a * v)
    return out


LEM_DQN = IdentityCheck(
    "LEM-DQN", "iterated D_q on a ratio of infinite products",
    "D_q^n{(at)_inf/(av)_inf} = v^n (t/v)_n (atq^n)_inf/(av)_inf",
    CheckMode.NUMERIC_POINT, _dqn_lhs, _dqn_rhs, _dqn_sample,
    constraints=(
        nonzero("a", "v"),
        below("av", lambda p, c: p["a"] * p["v"]),
        not_power("av", lambda p, c: p["a"] * p["v"]),
    ),
    grid=6,
)


def _tratio_sample(rng, index, ctx):
    a = free(rng)
    s, t, v = (shrink(small(rng), lambda z: abs(a * z) <= Fraction(1, 2)) for _ in range(3))
    b = shrink(small(rng), lambda b: abs(b) <= MARGIN and abs(b * v) <= MARGIN / 4)
    return {"a": a, "b": b, "s": s, "t": t, "v": v}


def _tratio_lhs(p, ctx, bound):
    f = poch_ratio_handle([p["s"], p["t"]], [p["v"]])
    return {0: t_operator(p["b"], f, ctx, point=p["a"])}


def _tratio_rhs(p, ctx, bound):
    a, b, s, t, v, q = tuple(p[k] for k in "abstv") + (ctx.q,)

    def terms():
        k = 0
        while True:
            c = sign_q(k, q) * qp(a * v, k, q) * (b * s) ** k / (qf(k, q) * qp(a * s, k, q) * qp(a * t, k, q))
            with ctx.precision():
                yield ctx.lift(c) * phi([t / v, 0], [a * t * q**k], b * v, ctx)
            k += 1

    with ctx.precision():
        total, _ = sum_series(terms(), ctx)
        return {0: pinf(ctx, a * s, a * t) / pinf(ctx, a * v) * total}


LEM_T_RATIO = IdentityCheck(
    "LEM-T-RATIO", "T(bD_q) on a ratio of three infinite products",
    "T(bD_q){(as,at)_inf/(av)_inf} = ratio * sum_k (-1)^k q^C(k,2) (av)_k (bs)^k/(q,as,at)_k 2phi1(t/v,0;atq^k;q,bv)",
    CheckMode.NUMERIC_POINT, _tratio_lhs, _tratio_rhs, _tratio_sample,
    constraints=(
        nonzero("a", "v"),
        below("bv", lambda p, c: p["b"] * p["v"]),
        below("as", lambda p, c: p["a"] * p["s"], kind="pole"),
        below("at", lambda p, c: p["a"] * p["t"], kind="pole"),
        below("av", lambda p, c: p["a"] * p["v"], kind="pole"),
    ),
)


# -- Rogers-type formula and linearization ---------------------------------------------


def _rogers1_lhs(p, ctx, order):
    x, y, a, q = p["x"], p["y"], p["a"], ctx.q
    return {
        (n, m): _U(n + m, x, y, a, ctx) / (qf(n, q) * qf(m, q))
        for n in range(order + 1) for m in range(order + 1 - n)
    }


def _rogers1_rhs(p, ctx, order):
    x, y, a, q = p["x"], p["y"], p["a"], ctx.q
    sv = ("s",)
    pre = assemble_product([num(a, "s"), num(y, "s"), den(x, "s")], ctx, sv, order)
    out: dict = {}
    for k in range(order + 1):
        ak = pre * fin_series(x, k, "s", ctx, sv, order) * fin_inverse(a, k, "s", ctx, sv, order)
        ck = sign_q(k, q) * a**k / qf(k, q)
        for l in range(order + 1 - k):
            j = k + l
            cl = ck * qp(y / x, l, q) * x**l / qf(l, q)
            if cl == 0:
                continue
            ser = ak * fin_inverse(y, j, "s", ctx, sv, order - j)
            for (m,), v in ser.items():
                out[(j, m)] = out.get((j, m), 0) + cl * v
    return out


ROGERS_1 = IdentityCheck(
    "ROGERS-1", "Rogers-type double generating function",
    "sum U_(n+m) t^n s^m/((q)_n(q)_m) = (as,ys)_inf/(xs)_inf sum_k (-1)^k q^C(k,2) (xs)_k (at)^k/(q,as,ys)_k 2phi1(y/x,0;ysq^k;q,xt)",
    CheckMode.FORMAL_SERIES, _rogers1_lhs, _rogers1_rhs, _xya,
    constraints=(nonzero("x"),), variables=("t", "s"),
)


def _lin_lhs(p, ctx, bound):
    x, y, a = p["x"], p["y"], p["a"]
    return {(n, m): _U(n + m, x, y, a, ctx) for n in range(bound + 1) for m in range(bound + 1 - n)}


def _lin_rhs(p, ctx, bound):
    x, y, a, q = p["x"], p["y"], p["a"], ctx.q
    out = {}
    for n in range(bound + 1):
        for m in range(bound + 1 - n):
            out[(n, m)] = sum(
                (
                    _qbinom_exact(n, k, q) * sign_q(k, q) * (a * q**m) ** k
                    * cauchy_eval(n - k, x, y, ctx) * _U(m, x, y * q ** (n - k), a, ctx)
                    for k in range(n + 1)
                ),
                Fraction(0),
            )
    return out


LINEARIZE = IdentityCheck(
    "LINEARIZE", "U_(n+m) as a sum of products",
    "U_(n+m) = sum_k [n k] (-1)^k q^C(k,2) (aq^m)^k P_(n-k)(x,y) U_m(x,yq^(n-k),a)",
    CheckMode.EXACT_FINITE, _lin_lhs, _lin_rhs, _xya, grid=10,
)


# -- homogeneous q-difference operator -----------------------------------------------------


def _ladder_lhs(p, ctx, bound):
    return {(n, k): dxy_power(cauchy_poly(n, ctx), k, ctx) for n in range(bound + 1) for k in range(n + 2)}


def _ladder_rhs(p, ctx, bound):
    q = ctx.q
    out = {}
    for n in range(bound + 1):
        for k in range(n + 2):
            out[(n, k)] = cauchy_poly(n - k, ctx) * (qf(n, q) / qf(n - k, q)) if k <= n else BiPoly()
    return out


DXY_LADDER = IdentityCheck(
    "DXY-LADDER", "D_xy lowers the Cauchy polynomials",
    "D_xy^k P_n = (q)_n/(q)_(n-k) P_(n-k)",
    CheckMode.EXACT_FINITE, _ladder_lhs, _ladder_rhs, _none, grid=8, points=1,
)

_CAUCHY_GF = lambda ctx, order, extra=(): assemble_product([num(Y), den(X), *extra], ctx, ("t",), order)  # noqa: E731


def _dxygf_lhs(p, ctx, order):
    g = _CAUCHY_GF(ctx, order)
    out = {}
    for k in range(4):
        for (n,), c in g.items():
            out[(k, n)] = dxy_power(_bp(c), k, ctx)
    return out


def _dxygf_rhs(p, ctx, order):
    q = ctx.q
    return {
        (k, n + k): cauchy_poly(n, ctx) / qf(n, q)
        for k in range(4) for n in range(order + 1 - k)
    }


DXY_GF = IdentityCheck(
    "DXY-GF", "D_xy on the Cauchy generating function",
    "D_xy^k{(yt)_inf/(xt)_inf} = t^k (yt)_inf/(xt)_inf",
    CheckMode.FORMAL_SERIES, _dxygf_lhs, _dxygf_rhs, _none, variables=("t",), points=1,
)


def _opf_lhs(p, ctx, bound):
    return {n: f_operator(p["a"], cauchy_poly(n, ctx), ctx) for n in range(bound + 1)}


def _opf_rhs(p, ctx, bound):
    a, q = p["a"], ctx.q
    out = {}
    for n in range(bound + 1):
        acc = BiPoly()
        for k in range(n + 1):
            acc = acc + cauchy_poly(n - k, ctx) * (_qbinom_exact(n, k, q) * sign_q(k, q) * a**k)
        out[n] = acc
    return out


OPREP_F = IdentityCheck(
    "OPREP-F", "U_n as F(aD_xy) applied to P_n",
    "U_n(x,y,a) = F(aD_xy){P_n(x,y)}",
    CheckMode.EXACT_FINITE, _opf_lhs, _opf_rhs, _only_a, grid=8,
)


def _fgf_lhs(p, ctx, order):
    g = _CAUCHY_GF(ctx, order)
    return g.map(lambda c: f_operator(p["a"], _bp(c), ctx))


def _fgf_rhs(p, ctx, order):
    return _CAUCHY_GF(ctx, order, (num(p["a"]),)).map(_bp)


F_GF = IdentityCheck(
    "F-GF", "F(aD_xy) on the Cauchy generating function",
    "F(aD_xy){(yt)_inf/(xt)_inf} = (at,yt)_inf/(xt)_inf",
    CheckMode.FORMAL_SERIES, _fgf_lhs, _fgf_rhs, _only_a, variables=("t",),
)

MIXED_N = 4


def _mixed_lhs(p, ctx, order):
    out = {}
    sv = ("s",)
    for n in range(MIXED_N + 1):
        g = assemble_product([num(Y * ctx.q**n, "s"), den(X, "s")], ctx, sv, order) * cauchy_poly(n, ctx)
        for (m,), c in g.items():
            out[(n, m)] = f_operator(p["a"], _bp(c), ctx)
    return out


def _mixed_rhs(p, ctx, order):
    a, q = p["a"], ctx.q
    sv = ("s",)
    out = {}
    for n in range(MIXED_N + 1):
        pre = assemble_product([num(Y * q**n, "s"), num(a, "s"), den(X, "s")], ctx, sv, order)
        acc = TruncatedSeries(sv, order)
        for k in range(n + 1):
            c = _qbinom_exact(n, k, q) * sign_q(k, q) * a**k
            acc = acc + fin_series(X, k, "s", ctx, sv, order) * fin_inverse(a, k, "s", ctx, sv, order) * (
                cauchy_poly(n - k, ctx) * c
            )
        for (m,), v in (pre * acc).items():
            out[(n, m)] = _bp(v)
    return out


MIXED_F = IdentityCheck(
    "MIXED-F", "F(aD_xy) on P_n times a ratio of products",
    "F(aD_xy){P_n (ys)_inf/((ys)_n (xs)_inf)} = (ysq^n,as)_inf/(xs)_inf sum_k [n k] (-1)^k q^C(k,2) (xs)_k P_(n-k) a^k/(as)_k",
    CheckMode.FORMAL_SERIES, _mixed_lhs, _mixed_rhs, _only_a, variables=("s",),
)


# -- Mehler-type formulas --------------------------------------------------------------------


def _mehler_sample(rng, index, ctx):
    q = ctx.q
    r = termination_order(index)
    x, y, a, u, b = (free(rng) for _ in range(5))
    bound = MARGIN * q**r
    t = shrink(small(rng), lambda t: abs(x * b * t) <= bound and abs(a * u * t) <= bound)
    return {"x": x, "y": y, "a": a, "u": u, "v": u * q ** (-r), "b": b, "t": t, "r": r}


def mehler_lhs(p, ctx, bound):
    x, y, a, u, v, b, t, q = tuple(p[k] for k in ("x", "y", "a", "u", "v", "b", "t")) + (ctx.q,)
    ex = ctx.as_exact()

    def term(n):
        return (
            (-1) ** n * q ** (-binom2(n)) * _U(n, x, y, a, ex) * _U(n, u, v, b, ex)
            * t**n / qf(n, q)
        )

    return {0: exact_series(term, ctx)}


def _mehler_rhs(p, ctx, bound):
    x, y, a, u, v, b, t = (p[k] for k in ("x", "y", "a", "u", "v", "b", "t"))
    q = ctx.q
    with ctx.precision():
        pre = pinf(ctx, a * b * t, y * b * t, a * v * t) / pinf(ctx, x * b * t, a * u * t)
        return {0: pre * phi([y / x, v / u, q / (a * b * t)], [q / (x * b * t), q / (a * u * t)], q, ctx)}


MEHLER_CONSTRAINTS = (
    nonzero("x", "u", "a", "b", "t"),
    terminates("v/u", lambda p, c: p["v"] / p["u"]),
    below("xbt q^-r", lambda p, c: p["x"] * p["b"] * p["t"] * c.q ** (-int(p["r"]))),
    below("aut q^-r", lambda p, c: p["a"] * p["u"] * p["t"] * c.q ** (-int(p["r"]))),
    not_inverse_power("q/xbt", lambda p, c: c.q / (p["x"] * p["b"] * p["t"])),
    not_inverse_power("q/aut", lambda p, c: c.q / (p["a"] * p["u"] * p["t"])),
)

MEHLER_TERM = IdentityCheck(
    "MEHLER-TERM", "Mehler-type formula, terminating form",
    "sum (-1)^n q^-C(n,2) U_n(x,y,a) U_n(u,v,b) t^n/(q)_n = (abt,ybt,avt)_inf/(xbt,aut)_inf 3phi2(y/x,v/u,q/abt;q/xbt,q/aut;q,q)",
    CheckMode.NUMERIC_POINT, mehler_lhs, _mehler_rhs, _mehler_sample,
    constraints=MEHLER_CONSTRAINTS,
)


def _mehler_u_sample(rng, index, ctx):
    q = ctx.q
    r = termination_order(index)
    x, y, b = free(rng), free(rng), free(rng)
    bound = MARGIN * q**r
    t = shrink(small(rng), lambda t: abs(x * t) <= bound and abs(y * t) <= bound)
    return {"x": x, "a": x * q ** (-r), "y": y, "b": b, "t": t, "r": r}


def _mehler_u_lhs(p, ctx, bound):
    x, a, y, b, t, q = tuple(p[k] for k in ("x", "a", "y", "b", "t")) + (ctx.q,)
    ex = ctx.as_exact()

    def term(n):
        return q ** (-binom2(n)) * ascu_u(n, x, a, ex) * ascu_u(n, y, b, ex) * t**n / qf(n, q)

    return {0: exact_series(term, ctx)}


def _mehler_u_rhs(p, ctx, bound):
    x, a, y, b, t, q = tuple(p[k] for k in ("x", "a", "y", "b", "t")) + (ctx.q,)
    with ctx.precision():
        pre = pinf(ctx, -t, -a * t, -b * t) / pinf(ctx, -x * t, -y * t)
        return {0: pre * phi([a / x, b / y, -q / t], [-q / (x * t), -q / (y * t)], q, ctx)}


MEHLER_u = IdentityCheck(
    "MEHLER-u", "Mehler-type formula for the classical polynomials",
    "sum q^-C(n,2) u_n^(a)(x) u_n^(b)(y) t^n/(q)_n = (-t,-at,-bt)_inf/(-xt,-yt)_inf 3phi2(a/x,b/y,-q/t;-q/xt,-q/yt;q,q)",
    CheckMode.NUMERIC_POINT, _mehler_u_lhs, _mehler_u_rhs, _mehler_u_sample,
    constraints=(
        nonzero("x", "y", "t"),
        terminates("a/x", lambda p, c: p["a"] / p["x"]),
        below("xt q^-r", lambda p, c: p["x"] * p["t"] * c.q ** (-int(p["r"]))),
        below("yt q^-r", lambda p, c: p["y"] * p["t"] * c.q ** (-int(p["r"]))),
        not_inverse_power("-q/xt", lambda p, c: -c.q / (p["x"] * p["t"])),
        not_inverse_power("-q/yt", lambda p, c: -c.q / (p["y"] * p["t"])),
    ),
)


CHECKS = [
    GF_U, SYM_U, GF_P, GF_H, REL_u, REL_h, REL_g, LEM_TBDQ, LEM_DQN, LEM_T_RATIO,
    ROGERS_1, LINEARIZE, DXY_LADDER, DXY_GF, OPREP_F, F_GF, MIXED_F, MEHLER_TERM, MEHLER_u,
]
