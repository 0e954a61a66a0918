"""Numeric backends and the evaluation context.

Two scalar kinds flow through the library:

* exact values are :class:`fractions.Fraction` (plain ``int`` is accepted on
  input and promoted);
* approximate values are :class:`mpmath.mpf` at the context precision.

Every numeric routine takes a :class:`QContext`, which fixes the base ``q``,
the backend, the working precision and the summation guards.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Union

import mpmath
from mpmath import libmp, mp

from .errors import BackendMismatch, DivisionByZero, ParameterConstraint

Scalar = Union[Fraction, "mpmath.mpf"]
ExactRational = Fraction
ApproxScalar = mpmath.mpf


class Mode(enum.Enum):
    EXACT = "exact"
    NUMERIC = "numeric"


class Verdict(enum.Enum):
    EQUAL = "Equal"
    WITHIN_TOLERANCE = "WithinTolerance"
    UNEQUAL = "Unequal"


@dataclass(frozen=True)
class Comparison:
    verdict: Verdict
    deviation: Scalar

    @property
    def ok(self) -> bool:
        return self.verdict is not Verdict.UNEQUAL


def as_fraction(value) -> Fraction:
    """Parse ints, Fractions and strings such as ``"3/4"`` or ``"1e-30"``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, str)):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParameterConstraint(f"not a rational number: {value!r}") from exc
    raise TypeError(f"cannot interpret {type(value).__name__} as an exact rational")


def is_exact(value) -> bool:
    return isinstance(value, (Fraction, int)) and not isinstance(value, bool)


@dataclass(frozen=True)
class QContext:
    """Base, backend and guards for one computation.

    ``inverted`` marks a derived context whose base is ``1/q > 1``; such a
    context only supports finite objects.
    """

    q: Fraction
    mode: Mode = Mode.EXACT
    precision_bits: int = 256
    truncation_order: int = 8
    tolerance: Fraction = Fraction(1, 10**30)
    max_terms: int = 4096
    termination_cap: int = 64
    inverted: bool = False

    def __post_init__(self):
        object.__setattr__(self, "q", as_fraction(self.q))
        object.__setattr__(self, "tolerance", as_fraction(self.tolerance))
        if self.inverted:
            if not self.q > 1:
                raise ParameterConstraint("inverted context needs q > 1")
        elif not 0 < self.q < 1:
            raise ParameterConstraint("q must lie in (0,1)")
        if self.precision_bits < 64:
            raise ParameterConstraint("precision_bits must be at least 64")
        if self.tolerance <= 0:
            raise ParameterConstraint("tolerance must be positive")
        if self.max_terms < 1:
            raise ParameterConstraint("max_terms must be at least 1")
        if self.truncation_order < 1:
            raise ParameterConstraint("truncation order must be at least 1")

    # -- derived contexts -------------------------------------------------
    @property
    def exact(self) -> bool:
        return self.mode is Mode.EXACT

    def as_exact(self) -> "QContext":
        return replace(self, mode=Mode.EXACT)

    def as_numeric(self, precision_bits: int | None = None) -> "QContext":
        bits = self.precision_bits if precision_bits is None else precision_bits
        return replace(self, mode=Mode.NUMERIC, precision_bits=bits)

    def boosted(self, bits: int) -> "QContext":
        return replace(self, precision_bits=max(bits, 64))

    def with_order(self, order: int) -> "QContext":
        return replace(self, truncation_order=order)

    def inverted_base(self) -> "QContext":
        """Context for base ``1/q``, restricted to finite sums and products."""
        return replace(self, q=1 / self.q, inverted=not self.inverted)

    # -- scalars ----------------------------------------------------------
    def precision(self):
        """Context manager setting mpmath's working precision."""
        return mp.workprec(self.precision_bits)

    def lift(self, value) -> Scalar:
        """Convert ``value`` into this context's backend."""
        if self.exact:
            if isinstance(value, mpmath.mpf):
                raise BackendMismatch("approximate value passed to an exact context")
            return as_fraction(value)
        if isinstance(value, mpmath.mpf):
            return value
        if isinstance(value, (int, Fraction)):
            f = Fraction(value)
            return mp.make_mpf(
                libmp.from_rational(f.numerator, f.denominator, self.precision_bits, "n")
            )
        if isinstance(value, str):
            return self.lift(as_fraction(value))
        raise TypeError(f"cannot lift {type(value).__name__}")

    @property
    def qv(self) -> Scalar:
        return self.lift(self.q)

    def q_power(self, e: int) -> Scalar:
        """``q**e`` in the active backend; ``e`` may be negative."""
        return self.lift(self.q**e)

    @property
    def tolerance_value(self):
        return self.lift(self.tolerance) if not self.exact else self.tolerance

    def summation_threshold(self):
        """Tail threshold for numeric series: ``tolerance * 2**-16``."""
        return mpmath.mpf(self.tolerance.numerator) / self.tolerance.denominator / 65536


def q_power(ctx: QContext, e: int) -> Scalar:
    return ctx.q_power(e)


_ARITH = ("add", "sub", "mul", "div", "pow_int")


def scalar_arith(a, b, op: str, ctx: QContext | None = None) -> Scalar:
    """Binary arithmetic with canonical exact results.

    ``pow_int`` takes an integer exponent ``b`` (negative allowed when
    ``a != 0``).
    """
    if op not in _ARITH:
        raise ValueError(f"unknown op {op!r}")
    if ctx is not None:
        a = ctx.lift(a)
        if op != "pow_int":
            b = ctx.lift(b)
        with ctx.precision():
            return _apply(a, b, op)
    if is_exact(a):
        a = Fraction(a)
        if op != "pow_int" and is_exact(b):
            b = Fraction(b)
    return _apply(a, b, op)


def _apply(a, b, op: str):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise DivisionByZero("division by zero")
        return a / b
    if not isinstance(b, int):
        raise TypeError("pow_int needs an integer exponent")
    if a == 0 and b < 0:
        raise DivisionByZero("zero to a negative power")
    return a**b


def magnitude(value) -> Scalar:
    return abs(value)


def compare(a, b, ctx: QContext) -> Comparison:
    """Compare two scalars of the same backend.

    Exact: equality of reduced rationals, deviation ``|a-b|``.
    Numeric: relative deviation ``|a-b| / max(1, |a|, |b|)`` against the
    context tolerance.
    """
    if is_exact(a) != is_exact(b):
        raise BackendMismatch("cannot compare exact and approximate scalars")
    if is_exact(a):
        diff = abs(Fraction(a) - Fraction(b))
        return Comparison(Verdict.EQUAL if diff == 0 else Verdict.UNEQUAL, diff)
    with ctx.precision():
        dev = abs(a - b) / max(mpmath.mpf(1), abs(a), abs(b))
        tol = ctx.lift(ctx.tolerance) if not ctx.exact else mpmath.mpf(ctx.tolerance)
        ok = dev <= tol
    return Comparison(Verdict.WITHIN_TOLERANCE if ok else Verdict.UNEQUAL, dev)


def to_float_str(value, digits: int = 40) -> str:
    if is_exact(value):
        return str(Fraction(value))
    return mpmath.nstr(value, digits)
