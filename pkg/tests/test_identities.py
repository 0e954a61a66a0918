import dataclasses
from fractions import Fraction

import mpmath
import pytest

from qac import qkernel
from qac.identities import (
    CheckMode,
    Status,
    catalog,
    companion,
    evaluate,
    generating,
    get,
    products,
    run_check,
    sample_points,
    select,
)
from qac.identities.core import check_seed
from qac.polynomials import ParamPoint
from qac.scalars import QContext

F = Fraction
HALF = QContext("1/2")

EXPECTED_IDS = {
    "GF-U", "SYM-U", "GF-P", "GF-H", "REL-u", "REL-h", "REL-g",
    "LEM-TBDQ", "LEM-DQN", "LEM-T-RATIO", "ROGERS-1", "LINEARIZE",
    "DXY-LADDER", "DXY-GF", "OPREP-F", "F-GF", "MIXED-F", "MEHLER-TERM", "MEHLER-u",
    "E-POLY", "E-RATIO1", "E-RATIO2", "E-EXPANSION", "OPREP-E", "ROGERS-2", "TRIPLE",
    "ROGERS-3", "MEHLER-NT", "TRANS-32",
    "PROD-3", "PROD-RS", "PROD-2", "CAO-RED", "PROD-T3", "GN-T3", "GN-GAUSS", "PROD-1K", "GN-1K",
}
FORMAL = {"GF-U", "GF-P", "GF-H", "ROGERS-1", "F-GF", "MIXED-F", "DXY-GF"}
FINITE = {
    "SYM-U", "REL-u", "REL-h", "REL-g", "LEM-TBDQ", "LINEARIZE",
    "DXY-LADDER", "OPREP-F", "E-POLY", "OPREP-E",
}


def test_catalog_complete_and_sorted():
    ids = [c.id for c in catalog()]
    assert len(ids) == len(set(ids)) == 38
    assert set(ids) == EXPECTED_IDS
    assert ids == sorted(ids)


def test_catalog_modes():
    for c in catalog():
        if c.id in FORMAL:
            assert c.mode is CheckMode.FORMAL_SERIES
        elif c.id in FINITE:
            assert c.mode is CheckMode.EXACT_FINITE
        else:
            assert not c.mode.exact


def test_numeric_points_have_convergence_constraint():
    for c in catalog():
        if c.mode is CheckMode.NUMERIC_POINT:
            assert any(k.kind == "convergence" for k in c.constraints), c.id


def test_catalog_metadata():
    for c in catalog():
        assert c.title and c.anchor


def test_select():
    assert [c.id for c in select("GF-*")] == ["GF-H", "GF-P", "GF-U"]
    assert len(select("all")) == 38
    assert [c.id for c in select("LINEARIZE, REL-g")] == ["LINEARIZE", "REL-g"]
    with pytest.raises(KeyError):
        get("NOPE")


def test_gf_u_example():
    p = ParamPoint(x=F(1), y=F(1, 2), a=F(1, 3))
    r = run_check(get("GF-U"), [p], HALF)
    assert r.status is Status.PASS and r.max_deviation == 0


def test_linearize_origin():
    check = dataclasses.replace(get("LINEARIZE"), grid=0)
    p = ParamPoint(x=F(2), y=F(1, 3), a=F(-1, 2))
    left = check.lhs(p, HALF, 0)
    right = check.rhs(p, HALF, 0)
    assert left == right == {(0, 0): 1}
    assert run_check(check, [p], HALF).status is Status.PASS


def test_mehler_terminating_r0():
    check = get("MEHLER-TERM")
    p = sample_points(check, 1, 0, HALF)[0]
    assert p["r"] == 0 and p["u"] == p["v"]
    r = run_check(check, [p], HALF)
    assert r.status is Status.PASS
    assert r.max_deviation < mpmath.mpf(10) ** -30


def test_rogers1_sampler_avoids_x_zero():
    pts = sample_points(get("ROGERS-1"), 60, 5, HALF)
    assert all(p["x"] != 0 for p in pts)


def test_mehler_nt_sampler_constraints():
    q = HALF.q
    for p in sample_points(get("MEHLER-NT"), 20, 9, HALF):
        a, b, t, u, v, x = (p[k] for k in "abtuvx")
        assert abs(a * u * t) < 1
        assert abs(x * q / a) < 1
        assert abs(x * b * v * t / u) < 1


def test_sampler_deterministic():
    for c in catalog():
        assert sample_points(c, 3, 11, HALF) == sample_points(c, 3, 11, HALF)
    assert check_seed("GF-U", 1) != check_seed("GF-U", 2)
    c = get("GF-U")
    assert sample_points(c, 3, 1, HALF) != sample_points(c, 3, 2, HALF)


def test_terminating_order_cycles():
    pts = sample_points(get("MEHLER-TERM"), 8, 0, HALF)
    assert [p["r"] for p in pts] == [0, 1, 2, 3, 0, 1, 2, 3]
    for p in pts:
        assert p["v"] / p["u"] == HALF.q ** (-p["r"])


def test_violating_point_is_skipped():
    check = get("MEHLER-NT")
    p = sample_points(check, 1, 0, HALF)[0].replace(t=F(10))
    r = run_check(check, [p], HALF)
    assert r.status is Status.SKIPPED and "violates" in r.detail


def test_evaluator_error_becomes_fail():
    def broken(point, ctx, bound):
        raise ZeroDivisionError("boom")

    check = get("GF-P")
    r = run_check(check, sample_points(check, 1, 0, HALF), HALF, rhs=broken)
    assert r.status is Status.FAIL and "boom" in r.detail


def test_report_dict():
    check = get("REL-g")
    r = evaluate(check, HALF, seed=3, count=2)
    d = r.to_dict(timing=False)
    assert set(d) == {"id", "status", "max_deviation", "params", "elapsed_ms"}
    assert d["status"] == "Pass" and d["max_deviation"] == "0" and d["elapsed_ms"] == 0
    assert len(d["params"]) == 2


def test_formal_checks_other_orders():
    ctx = QContext("1/3", truncation_order=5)
    for cid in ("GF-U", "GF-H", "ROGERS-1"):
        assert evaluate(get(cid), ctx, seed=2, count=2).status is Status.PASS


# -- independence audit ---------------------------------------------------------


def shifted(rhs):
    """Off-by-one in the index: each key receives the value of its predecessor."""

    def wrapped(point, ctx, bound):
        values = rhs(point, ctx, bound)
        values = values.coefficients() if hasattr(values, "coefficients") else dict(values)
        keys = sorted(values, key=repr)
        out = {k: values[prev] for prev, k in zip(keys, keys[1:])}
        if len(keys) == 1:
            out = {("shifted",): values[keys[0]]}
        return out

    return wrapped


@pytest.mark.parametrize("check", catalog(), ids=lambda c: c.id)
def test_shifted_rhs_breaks_check(check):
    points = sample_points(check, check.points or 2, 0, HALF)
    assert run_check(check, points, HALF).status is Status.PASS
    assert run_check(check, points, HALF, rhs=shifted(check.rhs)).status is Status.FAIL


def test_off_by_one_phi_breaks_its_users(monkeypatch):
    """A phi that drops its n=0 term must break every check calling it."""
    calls = set()
    current = []
    real = qkernel.phi

    def counting(*args, **kw):
        calls.add(current[0])
        return real(*args, **kw)

    def off_by_one(*args, **kw):
        return real(*args, **kw) - 1

    users = []
    for check in catalog():
        current[:] = [check.id]
        for mod in (generating, companion, products):
            monkeypatch.setattr(mod, "phi", counting)
        points = sample_points(check, check.points or 2, 0, HALF)
        run_check(check, points, HALF)
        if check.id in calls:
            users.append((check, points))
    assert len(users) >= 15
    for mod in (generating, companion, products):
        monkeypatch.setattr(mod, "phi", off_by_one)
    for check, points in users:
        assert run_check(check, points, HALF).status is Status.FAIL, check.id


@pytest.mark.parametrize("q", ["1/2", "1/3", "2/5"])
def test_samplers_terminate_across_seeds(q):
    ctx = QContext(q)
    for check in catalog():
        for seed in range(25):
            pts = sample_points(check, check.points or 4, seed, ctx)
            assert all(not check.admissible(p, ctx) for p in pts)
