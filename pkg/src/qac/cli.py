"""Command-line harness: ``qac run | eval | series | list``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields, replace
from fractions import Fraction

from . import identities
from .errors import ConfigError, ExactModeUnsupported, MissingParameter, ParseError, QacError
from .polynomials import ascu_sum, ascu_u, cauchy_eval, cauchy_poly, rs_g, rs_h
from .qkernel import phi
from .scalars import Mode, QContext, to_float_str
from .series import assemble_product, den, fin, num

CONFIG_ENV = "QAC_CONFIG"
FORMATS = ("json", "csv", "text")


@dataclass
class RunConfig:
    q: str = "1/2"
    mode: str = "exact"
    order: int = 8
    precision_bits: int = 256
    tolerance: str = "1e-30"
    seed: int = 0
    points: int = 3
    suite: str = "all"
    report: str | None = None
    format: str = "json"
    jobs: int = field(default_factory=lambda: os.cpu_count() or 1)
    timing: bool = True

    def validate(self) -> "RunConfig":
        q = _rational(self.q, "q")
        if not 0 < q < 1:
            raise ConfigError("q must lie in (0,1)")
        if int(self.order) < 1:
            raise ConfigError("order must be at least 1")
        if _rational(self.tolerance, "tolerance") <= 0:
            raise ConfigError("tolerance must be positive")
        if int(self.precision_bits) < 64:
            raise ConfigError("precision_bits must be at least 64")
        if int(self.points) < 1:
            raise ConfigError("points must be at least 1")
        if int(self.jobs) < 1:
            raise ConfigError("jobs must be at least 1")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {', '.join(FORMATS)}")
        if self.mode not in ("exact", "numeric"):
            raise ConfigError("mode must be exact or numeric")
        return self

    def context(self) -> QContext:
        return QContext(
            _rational(self.q, "q"),
            mode=Mode.EXACT if self.mode == "exact" else Mode.NUMERIC,
            precision_bits=int(self.precision_bits),
            truncation_order=int(self.order),
            tolerance=_rational(self.tolerance, "tolerance"),
        )

    def echo(self) -> dict:
        """The settings that determine the report contents."""
        return {
            "q": str(_rational(self.q, "q")),
            "order": int(self.order),
            "precision_bits": int(self.precision_bits),
            "tolerance": self.tolerance,
            "seed": int(self.seed),
            "points": int(self.points),
            "suite": self.suite,
        }


def _rational(text, name: str) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"{name}: cannot parse {text!r} as a rational") from None


def load_config(path: str | None) -> RunConfig:
    cfg = RunConfig()
    if not path:
        return cfg
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    known = {f.name for f in fields(RunConfig)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    return replace(cfg, **data)


# -- run --------------------------------------------------------------------------


def _run_one(args):
    check_id, cfg = args
    check = identities.get(check_id)
    report = identities.evaluate(check, cfg.context(), seed=cfg.seed, count=cfg.points)
    row = report.to_dict(timing=cfg.timing)
    row["_detail"] = report.detail
    return row


def run_suite(cfg: RunConfig) -> dict:
    checks = identities.select(cfg.suite)
    if not checks:
        raise ConfigError(f"suite {cfg.suite!r} selects no checks")
    work = [(c.id, cfg) for c in checks]
    if cfg.jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=min(cfg.jobs, len(work))) as pool:
            rows = list(pool.map(_run_one, work))
    else:
        rows = [_run_one(w) for w in work]
    rows.sort(key=lambda r: r["id"])
    totals = {
        "passed": sum(r["status"] == "Pass" for r in rows),
        "failed": sum(r["status"] == "Fail" for r in rows),
        "skipped": sum(r["status"] == "Skipped" for r in rows),
    }
    return {"config": cfg.echo(), "checks": rows, "totals": totals}


def render(summary: dict, fmt: str) -> str:
    rows = summary["checks"]
    if fmt == "json":
        clean = dict(summary, checks=[{k: v for k, v in r.items() if not k.startswith("_")} for r in rows])
        return json.dumps(clean, indent=2, sort_keys=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "status", "max_deviation", "params", "elapsed_ms"])
        for r in rows:
            w.writerow([r["id"], r["status"], r["max_deviation"], json.dumps(r["params"]), r["elapsed_ms"]])
        return buf.getvalue()
    lines = []
    for r in rows:
        check = identities.get(r["id"])
        dev = r["max_deviation"] or "-"
        lines.append(f"{r['status'].upper():7} {r['id']:12} dev={dev:<12} {check.anchor}")
        if r.get("_detail"):
            lines.append(f"        {r['_detail']}")
    t = summary["totals"]
    lines.append(f"passed {t['passed']}, failed {t['failed']}, skipped {t['skipped']}")
    return "\n".join(lines) + "\n"


def cmd_run(cfg: RunConfig) -> int:
    start = time.perf_counter()
    summary = run_suite(cfg)
    text = render(summary, cfg.format)
    if cfg.report:
        with open(cfg.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    t = summary["totals"]
    wall = time.perf_counter() - start
    print(
        f"{t['passed']} passed, {t['failed']} failed, {t['skipped']} skipped in {wall:.1f}s",
        file=sys.stderr,
    )
    return 1 if t["failed"] else 0


# -- eval ------------------------------------------------------------------------------


def parse_params(items) -> dict:
    out = {}
    for item in items:
        if "=" not in item:
            raise ParseError(f"expected key=value, got {item!r}")
        key, value = item.split("=", 1)
        key = key.strip()
        if key in ("num", "den"):
            out[key] = [_param(v, key) for v in value.split(",") if v.strip()]
        else:
            out[key] = _param(value, key)
    return out


def _param(text: str, key: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{key}: cannot parse {text!r} as a rational") from None


def _split_index(items):
    """Leading bare integer is the index n (default 0); the rest are key=value pairs."""
    items = list(items)
    if items and "=" not in items[0]:
        try:
            return int(items[0]), items[1:]
        except ValueError:
            raise ParseError(f"index must be an integer, got {items[0]!r}") from None
    return 0, items


def _need(params: dict, *names):
    missing = [n for n in names if n not in params]
    if missing:
        raise MissingParameter(", ".join(missing))
    return [params[n] for n in names]


def _show(value, ctx: QContext) -> str:
    # series sums are only as good as the tolerance, so don't print noise digits
    digits = min(int(ctx.precision_bits * 0.30103), int(-math.log10(ctx.tolerance)) + 4)
    return to_float_str(value, digits=digits)


def cmd_eval(family: str, n: int, params: dict, ctx: QContext) -> str:
    if family == "phi":
        (arg,) = _need(params, "arg")
        numer, denom = params.get("num", []), params.get("den", [])
        if ctx.exact:
            try:
                return _show(phi(numer, denom, arg, ctx), ctx)
            except ExactModeUnsupported:
                ctx = ctx.as_numeric()
        return _show(phi(numer, denom, arg, ctx), ctx)
    if n < 0:
        raise ParseError("n must be non-negative")
    if family == "U":
        x, y, a = _need(params, "x", "y", "a")
        value = ascu_sum(n, {"x": x, "y": y, "a": a}, ctx)
    elif family == "u":
        x, a = _need(params, "x", "a")
        value = ascu_u(n, x, a, ctx)
    elif family == "P":
        if "x" not in params and "y" not in params:
            return str(cauchy_poly(n, ctx))
        x, y = _need(params, "x", "y")
        value = cauchy_eval(n, x, y, ctx)
    elif family == "g":
        (a,) = _need(params, "a")
        value = rs_g(n, a, ctx)
    elif family == "h":
        x, y = _need(params, "x", "y")
        value = rs_h(n, x, y, ctx)
    else:
        raise ParseError(f"unknown family {family!r}")
    return _show(value, ctx)


# -- series ----------------------------------------------------------------------------

_FACTOR = re.compile(r"^(num|den|fin(\d+)):(.*)$")
_COEF = re.compile(r"^(-?\d+(?:/\d+)?)?([A-Za-z]*)$")


def parse_product(spec: str, params: dict, q: Fraction, variable: str = "t"):
    """Factors like ``num:at den:xt fin2:-3yt`` in the formal variable ``variable``.

    A factor body is an optional rational, then one-letter parameter names
    (``q`` is the base), then the variable.
    """
    out = []
    for token in spec.split():
        m = _FACTOR.match(token)
        if not m:
            raise ParseError(f"cannot parse factor {token!r}")
        kind, k, body = m.group(1), m.group(2), m.group(3)
        if not body.endswith(variable):
            raise ParseError(f"factor {token!r} must end in the variable {variable!r}")
        body = body[: -len(variable)]
        cm = _COEF.match(body)
        if not cm:
            raise ParseError(f"cannot parse coefficient {body!r}")
        c = Fraction(cm.group(1)) if cm.group(1) else Fraction(1)
        for name in cm.group(2):
            if name == "q":
                c *= q
            elif name in params:
                c *= params[name]
            else:
                raise MissingParameter(name)
        if kind == "num":
            out.append(num(c, variable))
        elif kind == "den":
            out.append(den(c, variable))
        else:
            out.append(fin(c, int(k), variable))
    return out


def cmd_series(spec: str, params: dict, ctx: QContext, variable: str = "t") -> str:
    factors = parse_product(spec, params, ctx.q, variable)
    series = assemble_product(factors, ctx.as_exact(), (variable,), ctx.truncation_order)
    last = max((e[0] for e, _ in series.items()), default=0)
    return "".join(f"{n}: {series.coefficient((n,))}\n" for n in range(last + 1))


# -- argument handling -------------------------------------------------------------


def _common(p: argparse.ArgumentParser):
    p.add_argument("--config", help=f"JSON config file (default: ${CONFIG_ENV})")
    p.add_argument("--q", help="base q as a rational p/r in (0,1)")
    p.add_argument("--order", type=int, help="truncation order N")
    p.add_argument("--precision-bits", type=int, dest="precision_bits")
    p.add_argument("--tolerance", help="relative tolerance, e.g. 1e-30")
    p.add_argument("--mode", choices=("exact", "numeric"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qac", description="q-series identity checker")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run identity checks")
    _common(run)
    run.add_argument("--seed", type=int)
    run.add_argument("--points", type=int, help="sampled points per check")
    run.add_argument("--suite", help="comma-separated id globs, or 'all'")
    run.add_argument("--report", help="write the report here instead of stdout")
    run.add_argument("--format", choices=FORMATS)
    run.add_argument("--jobs", type=int, help="worker processes")
    run.add_argument("--no-timing", action="store_true", help="report elapsed_ms as 0")

    ev = sub.add_parser("eval", help="evaluate a polynomial or basic hypergeometric series")
    _common(ev)
    ev.add_argument("family", choices=("U", "u", "P", "g", "h", "phi"))
    ev.add_argument("params", nargs="*", metavar="n|key=value",
                    help="index n, then key=value pairs; phi takes num=a,b den=c arg=z")

    se = sub.add_parser("series", help="expand a product of q-Pochhammer factors")
    _common(se)
    se.add_argument("spec", help='factors such as "num:at num:yt den:xt"')
    se.add_argument("params", nargs="*", help="key=value parameter values")
    se.add_argument("--var", default="t", help="formal variable name")

    ls = sub.add_parser("list", help="list the catalog")
    ls.add_argument("--suite", default="all")
    return parser


def config_from_args(args) -> RunConfig:
    cfg = load_config(getattr(args, "config", None) or os.environ.get(CONFIG_ENV))
    overrides = {}
    for name in ("q", "order", "precision_bits", "tolerance", "mode", "seed", "points",
                 "suite", "report", "format", "jobs"):
        value = getattr(args, name, None)
        if value is not None:
            overrides[name] = value
    if getattr(args, "no_timing", False):
        overrides["timing"] = False
    return replace(cfg, **overrides).validate()


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "list":
            for c in identities.select(args.suite):
                print(f"{c.id:12} {c.mode.value:13} {c.title}")
            return 0
        cfg = config_from_args(args)
        if args.command == "run":
            return cmd_run(cfg)
        ctx = cfg.context()
        if args.command == "eval":
            n, rest = _split_index(args.params)
            print(cmd_eval(args.family, n, parse_params(rest), ctx))
            return 0
        sys.stdout.write(cmd_series(args.spec, parse_params(args.params), ctx, args.var))
        return 0
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QacError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
