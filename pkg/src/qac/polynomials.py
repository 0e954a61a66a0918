"""Cauchy, Al-Salam-Carlitz and Rogers-Szego polynomials.

The finite sum :func:`ascu_sum` is the reference route for U_n: it is valid
for every parameter value and involves no division.  The other routes exist
so they can be cross-checked against it.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .algebra import BiPoly, UniPoly
from .errors import MissingParameter, ParameterConstraint
from .operators import e_cauchy_operator, f_operator
from .qkernel import PhiSpec, _qbinom_exact as _qbinom, binom2, phi_eval, qbinom
from .scalars import QContext, as_fraction, is_exact


class ParamPoint(Mapping):
    """Immutable assignment of parameter names to scalars."""

    __slots__ = ("_v",)

    def __init__(self, values: Mapping | None = None, **kw):
        v = dict(values or {})
        v.update(kw)
        self._v = {k: (Fraction(x) if is_exact(x) else x) for k, x in v.items()}

    def __getitem__(self, key):
        try:
            return self._v[key]
        except KeyError:
            raise MissingParameter(key) from None

    def __iter__(self):
        return iter(sorted(self._v))

    def __len__(self):
        return len(self._v)

    def replace(self, **kw) -> "ParamPoint":
        return ParamPoint(self._v, **kw)

    def as_strings(self) -> dict:
        return {k: str(self._v[k]) for k in sorted(self._v)}

    def __repr__(self):
        inner = ", ".join(f"{k}={v}" for k, v in self.as_strings().items())
        return f"ParamPoint({inner})"

    def __eq__(self, other):
        if isinstance(other, ParamPoint):
            return self._v == other._v
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self._v.items())))


# -- Cauchy polynomials -------------------------------------------------------


@lru_cache(maxsize=1024)
def _cauchy_poly(n: int, q: Fraction) -> BiPoly:
    p = BiPoly.constant(1)
    for k in range(n):
        p = p * BiPoly({(1, 0): 1, (0, 1): -(q**k)})
    return p


def cauchy_poly(n: int, ctx: QContext) -> BiPoly:
    """P_n(x,y) = (x-y)(x-qy)...(x-q^{n-1}y) expanded."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return _cauchy_poly(n, ctx.q)


@lru_cache(maxsize=65536)
def _cauchy_exact(n: int, x: Fraction, y: Fraction, q: Fraction) -> Fraction:
    p = Fraction(1)
    qk = Fraction(1)
    for _ in range(n):
        p *= x - qk * y
        qk *= q
    return p


def cauchy_eval(n: int, x, y, ctx: QContext):
    if n < 0:
        raise ValueError("n must be non-negative")
    if is_exact(x) and is_exact(y):
        return ctx.lift(_cauchy_exact(n, Fraction(x), Fraction(y), ctx.q))
    with ctx.precision():
        x, y = ctx.lift(x), ctx.lift(y)
        p = ctx.lift(1)
        for k in range(n):
            p *= x - ctx.q_power(k) * y
        return p


# -- Al-Salam-Carlitz ----------------------------------------------------------


@lru_cache(maxsize=65536)
def _ascu_exact(n: int, x: Fraction, y: Fraction, a: Fraction, q: Fraction) -> Fraction:
    total = Fraction(0)
    ak = Fraction(1)
    for k in range(n + 1):
        total += _qbinom(n, k, q) * (-1) ** k * q ** binom2(k) * ak * _cauchy_exact(n - k, x, y, q)
        ak *= a
    return total


def _xya(p: Mapping):
    return p["x"], p["y"], p["a"]


def ascu_sum(n: int, p: Mapping, ctx: QContext):
    """U_n(x,y,a;q) = sum_k [n k] (-1)^k q^C(k,2) a^k P_{n-k}(x,y).

    Exact parameters are summed exactly and then lifted into the context
    backend, which avoids the heavy cancellation of the alternating sum.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    x, y, a = _xya(p)
    if all(is_exact(v) for v in (x, y, a)):
        return ctx.lift(_ascu_exact(n, Fraction(x), Fraction(y), Fraction(a), ctx.q))
    with ctx.precision():
        total = ctx.lift(0)
        for k in range(n + 1):
            total += (
                qbinom(n, k, ctx) * (-1) ** k * ctx.q_power(binom2(k))
                * ctx.lift(a) ** k * cauchy_eval(n - k, x, y, ctx)
            )
        return total


def ascu_phi(n: int, p: Mapping, ctx: QContext):
    """U_n = (-a)^n q^C(n,2) 2phi1(q^-n, y/x; 0; q, qx/a)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    x, y, a = _xya(p)
    if x == 0 or a == 0:
        raise ParameterConstraint("the 2phi1 route needs x != 0 and a != 0")
    spec = PhiSpec((ctx.q ** (-n), Fraction(y) / Fraction(x)), (0,), ctx.q * Fraction(x) / Fraction(a))
    value = phi_eval(spec, ctx.as_exact())
    return ctx.lift((-Fraction(a)) ** n * ctx.q ** binom2(n) * value)


def ascu_operator(n: int, p: Mapping, ctx: QContext, route: str = "F"):
    """U_n through an operator.

    ``route="F"``: F(a D_xy) applied to P_n(x,y), then evaluated at (x,y).
    ``route="E"``: E(y/x, x; theta) applied to (-1)^n q^C(n,2) a^n in ``a``.
    """
    x, y, a = (as_fraction(v) for v in _xya(p))
    if route == "F":
        return ctx.lift(f_operator(a, cauchy_poly(n, ctx), ctx)(x, y))
    if route == "E":
        if x == 0:
            raise ParameterConstraint("the E route needs x != 0")
        seed = UniPoly.monomial(n, (-1) ** n * ctx.q ** binom2(n), var="a")
        return ctx.lift(e_cauchy_operator(y / x, x, seed, ctx)(a))
    raise ValueError(f"unknown route {route!r}")


def ascu_u(n: int, x, a, ctx: QContext, route: str = "relation"):
    """Classical u_n^{(a)}(x;q).

    ``route="relation"`` evaluates U_n(x,1,a;q); ``route="definition"`` sums
    (-a)^n q^C(n,2) 2phi1(q^-n, 1/x; 0; q, qx/a) and needs x, a != 0.
    """
    if route == "relation":
        return ascu_sum(n, {"x": x, "y": 1, "a": a}, ctx)
    if route != "definition":
        raise ValueError(f"unknown route {route!r}")
    x, a = as_fraction(x), as_fraction(a)
    if x == 0 or a == 0:
        raise ParameterConstraint("the 2phi1 definition needs x != 0 and a != 0")
    spec = PhiSpec((ctx.q ** (-n), 1 / x), (0,), ctx.q * x / a)
    return ctx.lift((-a) ** n * ctx.q ** binom2(n) * phi_eval(spec, ctx.as_exact()))


# -- Rogers-Szego ----------------------------------------------------------------


@lru_cache(maxsize=65536)
def _rs_g_exact(n: int, a: Fraction, q: Fraction) -> Fraction:
    return sum((_qbinom(n, k, q) * q ** (k * (k - n)) * a**k for k in range(n + 1)), Fraction(0))


def rs_g(n: int, a, ctx: QContext):
    """g_n(a|q) = sum_k [n k] q^{k(k-n)} a^k."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if is_exact(a):
        return ctx.lift(_rs_g_exact(n, Fraction(a), ctx.q))
    with ctx.precision():
        a = ctx.lift(a)
        return sum(qbinom(n, k, ctx) * ctx.q_power(k * (k - n)) * a**k for k in range(n + 1))


def rs_h(n: int, x, y, ctx: QContext):
    """h_n(x,y|q) = sum_k [n k] P_k(x,y); finite, so valid at an inverted base."""
    if n < 0:
        raise ValueError("n must be non-negative")
    with ctx.precision():
        return sum(
            (qbinom(n, k, ctx) * cauchy_eval(k, x, y, ctx) for k in range(n + 1)),
            ctx.lift(0),
        )


def ascu_from_h(n: int, p: Mapping, ctx: QContext):
    """(-1)^n q^C(n,2) a^n h_n(y/a, x/a | 1/q)."""
    x, y, a = (as_fraction(v) for v in _xya(p))
    if a == 0:
        raise ParameterConstraint("the inverted-base relation needs a != 0")
    inv = ctx.as_exact().inverted_base()
    h = rs_h(n, y / a, x / a, inv)
    return ctx.lift((-1) ** n * ctx.q ** binom2(n) * a**n * h)
