"""Executable catalog of the identities."""

from __future__ import annotations

import fnmatch

from ..errors import SamplingExhausted
from ..scalars import QContext
from . import companion, generating, products
from .core import (
    CheckMode,
    CheckReport,
    Constraint,
    IdentityCheck,
    Status,
    compare_sides,
    run_check,
    sample_points,
)

_ALL = {c.id: c for c in generating.CHECKS + companion.CHECKS + products.CHECKS}
_SORTED = tuple(sorted(_ALL.values(), key=lambda c: c.id))


def catalog() -> list[IdentityCheck]:
    """Every check, ordered by id."""
    return list(_SORTED)


def get(check_id: str) -> IdentityCheck:
    try:
        return _ALL[check_id]
    except KeyError:
        raise KeyError(f"unknown check {check_id!r}") from None


def select(pattern: str = "all") -> list[IdentityCheck]:
    """Checks whose id matches any comma-separated glob; ``all`` selects everything."""
    pats = [p.strip() for p in pattern.split(",") if p.strip()]
    if not pats or "all" in pats:
        return catalog()
    return [c for c in _SORTED if any(fnmatch.fnmatchcase(c.id, p) for p in pats)]


def evaluate(check: IdentityCheck, ctx: QContext, *, seed: int = 0, count: int = 3) -> CheckReport:
    """Sample points for ``check`` and run it."""
    try:
        points = sample_points(check, check.points or count, seed, ctx)
    except SamplingExhausted as exc:
        return CheckReport(check.id, Status.SKIPPED, None, [], 0, str(exc))
    return run_check(check, points, ctx)


__all__ = [
    "CheckMode",
    "CheckReport",
    "Constraint",
    "IdentityCheck",
    "Status",
    "catalog",
    "compare_sides",
    "evaluate",
    "get",
    "run_check",
    "sample_points",
    "select",
]
