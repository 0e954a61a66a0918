"""Convergence-guarded numeric summation.

All routines here operate in numeric mode.  They report the largest term
magnitude they met so callers can detect cancellation: if the result is much
smaller than its largest term, the precision spent on the term magnitude is
lost, and :func:`cancellation_safe` re-runs the computation with more bits.
"""

from __future__ import annotations

import math
from typing import Callable, Iterable

import mpmath

from .errors import GuardExceeded, NonConvergent
from .scalars import QContext

RATIO_WINDOW = 32


def sum_series(
    terms: Iterable,
    ctx: QContext,
    *,
    consecutive: int = 3,
    check_ratio: bool = True,
    min_terms: int = 0,
):
    """Sum a one-index series until ``consecutive`` terms fall below threshold.

    The threshold is ``tolerance * 2**-16`` relative to ``max(1, |partial sum|)``.
    Returns ``(sum, largest |term|)``.
    """
    thr = ctx.summation_threshold()
    total = mpmath.mpf(0)
    biggest = mpmath.mpf(0)
    small = 0
    growing = 0
    prev = None
    for n, t in enumerate(terms):
        if n >= ctx.max_terms:
            raise GuardExceeded(f"series not settled after {ctx.max_terms} terms")
        total += t
        a = abs(t)
        if a > biggest:
            biggest = a
        if a <= thr * max(1, abs(total)):
            small += 1
            if small >= consecutive and n + 1 >= min_terms:
                return total, biggest
        else:
            small = 0
        if check_ratio and prev is not None and prev != 0:
            growing = growing + 1 if a >= prev else 0
            if growing >= RATIO_WINDOW:
                raise NonConvergent(f"term ratio stayed >= 1 for {RATIO_WINDOW} terms")
        prev = a
    return total, biggest


def sum_shells(
    shell: Callable[[int], tuple],
    ctx: QContext,
    *,
    consecutive: int = 2,
    min_shells: int = 4,
):
    """Sum a multi-index series shell by shell.

    ``shell(M)`` returns ``(contribution, largest |term|)`` for the indices of
    total degree ``M``.  Summation stops when ``consecutive`` shells are below
    threshold; a shell count above ``ctx.max_terms`` raises GuardExceeded and
    ``RATIO_WINDOW`` growing shells raise NonConvergent.
    """
    thr = ctx.summation_threshold()
    total = mpmath.mpf(0)
    biggest = mpmath.mpf(0)
    small = 0
    growing = 0
    prev = None
    for m in range(ctx.max_terms):
        c, big = shell(m)
        total += c
        if big > biggest:
            biggest = big
        a = abs(c)
        if a <= thr * max(1, abs(total)) and big <= thr * max(1, abs(total)):
            small += 1
            if small >= consecutive and m + 1 >= min_shells:
                return total, biggest
        else:
            small = 0
        if prev is not None and prev != 0:
            growing = growing + 1 if big >= prev else 0
            if growing >= RATIO_WINDOW:
                raise NonConvergent("shell contributions keep growing")
        prev = big
    raise GuardExceeded(f"multi-sum not settled after {ctx.max_terms} shells")


def lost_bits(value, biggest) -> int:
    if biggest == 0:
        return 0
    if value == 0:
        return 10**6
    return max(0, int(math.ceil(float(mpmath.log(biggest / abs(value), 2)))))


def cancellation_safe(compute: Callable[[QContext], tuple], ctx: QContext, *, extra: int = 32):
    """Run ``compute(wctx)`` at escalating precision until cancellation is covered.

    ``compute`` returns ``(value, largest term magnitude)``.  The value is
    returned rounded to ``ctx.precision_bits``.
    """
    bits = ctx.precision_bits + extra
    for _ in range(6):
        wctx = ctx.boosted(bits)
        with wctx.precision():
            value, biggest = compute(wctx)
            loss = lost_bits(value, biggest)
        if bits - loss >= ctx.precision_bits + 16 or value == 0 and biggest == 0:
            with ctx.precision():
                return +value
        if bits >= 8 * ctx.precision_bits:
            break
        bits = min(ctx.precision_bits + loss + 64, 8 * ctx.precision_bits)
    with ctx.precision():
        return +value
