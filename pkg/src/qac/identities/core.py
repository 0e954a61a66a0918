"""Identity checks, their reports and the runner."""

from __future__ import annotations

import enum
import random
import time
import zlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import mpmath

from ..algebra import BiPoly, UniPoly
from ..errors import QacError, SamplingExhausted
from ..polynomials import ParamPoint
from ..scalars import QContext, compare, is_exact
from ..series import TruncatedSeries

MAX_REJECTIONS = 10_000


class CheckMode(enum.Enum):
    FORMAL_SERIES = "FormalSeries"
    EXACT_FINITE = "ExactFinite"
    NUMERIC_POINT = "NumericPoint"
    # formal power series whose coefficients are convergent numeric sums
    NUMERIC_SERIES = "NumericSeries"

    @property
    def exact(self) -> bool:
        return self in (CheckMode.FORMAL_SERIES, CheckMode.EXACT_FINITE)


class Status(enum.Enum):
    PASS = "Pass"
    FAIL = "Fail"
    SKIPPED = "Skipped"


@dataclass(frozen=True)
class Constraint:
    """A named predicate ``test(point, ctx) -> bool`` on sampled parameters."""

    name: str
    kind: str  # convergence | termination | pole | nondegenerate
    test: Callable

    def __call__(self, point, ctx) -> bool:
        try:
            return bool(self.test(point, ctx))
        except (ZeroDivisionError, KeyError):
            return False


@dataclass(frozen=True)
class IdentityCheck:
    """One displayed identity with two independent side evaluators.

    ``lhs`` and ``rhs`` map ``(point, ctx, bound)`` to a dict from keys (grid
    indices or exponent tuples) to values.  ``bound`` is the grid bound for
    finite checks and the truncation order for series checks.
    """

    id: str
    title: str
    anchor: str
    mode: CheckMode
    lhs: Callable
    rhs: Callable
    sampler: Callable
    constraints: tuple = ()
    variables: tuple = ()
    grid: int | None = None
    points: int | None = None

    def bound(self, ctx: QContext) -> int:
        if self.mode in (CheckMode.FORMAL_SERIES, CheckMode.NUMERIC_SERIES):
            return ctx.truncation_order
        return self.grid if self.grid is not None else 0

    def admissible(self, point, ctx) -> list[str]:
        """Names of violated constraints."""
        return [c.name for c in self.constraints if not c(point, ctx)]


@dataclass
class CheckReport:
    id: str
    status: Status
    max_deviation: object
    params: list = field(default_factory=list)
    elapsed_ms: int = 0
    detail: str = ""

    def deviation_str(self) -> str:
        return format_deviation(self.max_deviation)

    def to_dict(self, timing: bool = True) -> dict:
        return {
            "id": self.id,
            "status": self.status.value,
            "max_deviation": self.deviation_str(),
            "params": [p.as_strings() for p in self.params],
            "elapsed_ms": self.elapsed_ms if timing else 0,
        }


def format_deviation(dev) -> str:
    if dev is None:
        return ""
    if is_exact(dev):
        return str(Fraction(dev))
    return mpmath.nstr(dev, 6, min_fixed=1, max_fixed=0) if dev != 0 else "0"


# -- comparison ----------------------------------------------------------------


def _poly_gap(a, b) -> Fraction:
    if isinstance(a, UniPoly) or isinstance(b, UniPoly):
        a = a if isinstance(a, UniPoly) else UniPoly([a])
        b = b if isinstance(b, UniPoly) else UniPoly([b])
        n = max(len(a.coeffs), len(b.coeffs))
        return sum((abs(a.coeff(i) - b.coeff(i)) for i in range(n)), Fraction(0))
    d = (a if isinstance(a, BiPoly) else BiPoly.constant(a)) - b
    return sum((abs(v) for v in d.terms.values()), Fraction(0))


def _as_dict(value) -> dict:
    if isinstance(value, TruncatedSeries):
        return value.coefficients()
    return dict(value)


def compare_sides(lhs, rhs, mode: CheckMode, ctx: QContext):
    """Return ``(ok, worst deviation, worst key)`` over the union of keys."""
    lhs, rhs = _as_dict(lhs), _as_dict(rhs)
    keys = sorted(set(lhs) | set(rhs), key=repr)
    worst = Fraction(0) if mode.exact else mpmath.mpf(0)
    worst_key = None
    ok = True
    for k in keys:
        a = lhs.get(k, Fraction(0))
        b = rhs.get(k, Fraction(0))
        if mode.exact:
            if isinstance(a, (BiPoly, UniPoly)) or isinstance(b, (BiPoly, UniPoly)):
                dev = _poly_gap(a, b)
            else:
                dev = abs(Fraction(a) - Fraction(b))
            good = dev == 0
        else:
            a, b = ctx.lift(a), ctx.lift(b)
            c = compare(a, b, ctx)
            dev, good = c.deviation, c.ok
        if dev > worst or worst_key is None:
            worst, worst_key = dev, k
        ok = ok and good
    return ok, worst, worst_key


# -- sampling and running --------------------------------------------------------


def check_seed(check_id: str, seed: int) -> int:
    return zlib.crc32(check_id.encode()) ^ int(seed)


def sample_points(check: IdentityCheck, count: int, seed: int, ctx: QContext) -> list[ParamPoint]:
    """Deterministic admissible points for ``check``."""
    if count < 1:
        raise ValueError("count must be at least 1")
    rng = random.Random(check_seed(check.id, seed))
    ex = ctx.as_exact()
    points: list[ParamPoint] = []
    rejected = 0
    while len(points) < count:
        try:
            p = ParamPoint(check.sampler(rng, len(points), ex))
        except (ZeroDivisionError, QacError):
            p = None
        if p is not None and not check.admissible(p, ex):
            points.append(p)
            continue
        rejected += 1
        if rejected >= MAX_REJECTIONS:
            raise SamplingExhausted(f"{check.id}: no admissible point after {rejected} draws")
    return points


def _side_ctx(check: IdentityCheck, ctx: QContext) -> QContext:
    return ctx.as_exact() if check.mode.exact else ctx.as_numeric()


def run_check(
    check: IdentityCheck,
    points: Sequence[ParamPoint],
    ctx: QContext,
    *,
    lhs: Callable | None = None,
    rhs: Callable | None = None,
) -> CheckReport:
    """Evaluate both sides at every point and compare.

    Evaluator failures become a Fail report carrying the error text; points
    violating a constraint are skipped.
    """
    lhs = lhs or check.lhs
    rhs = rhs or check.rhs
    sctx = _side_ctx(check, ctx)
    bound = check.bound(ctx)
    start = time.perf_counter()
    used: list[ParamPoint] = []
    skipped: list[str] = []
    worst = None
    failures: list[str] = []
    for p in points:
        bad = check.admissible(p, sctx.as_exact())
        if bad:
            skipped.append(f"{p}: violates {', '.join(bad)}")
            continue
        used.append(p)
        try:
            left = lhs(p, sctx, bound)
            right = rhs(p, sctx, bound)
            ok, dev, key = compare_sides(left, right, check.mode, sctx)
        except (QacError, ArithmeticError, ValueError) as exc:
            failures.append(f"{p}: {type(exc).__name__}: {exc}")
            continue
        if worst is None or dev > worst:
            worst = dev
        if not ok:
            failures.append(f"{p}: deviation {format_deviation(dev)} at {key}")
    elapsed = int(round((time.perf_counter() - start) * 1000))
    if failures:
        status, detail = Status.FAIL, "; ".join(failures)
    elif not used:
        status, detail = Status.SKIPPED, "; ".join(skipped) or "no points"
    else:
        status, detail = Status.PASS, ""
    return CheckReport(check.id, status, worst, used, elapsed, detail)
