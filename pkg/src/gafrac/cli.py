"""Command-line verification driver.

Two commands:

    gafrac eval  --ineq NAME --f EXPR [--h EXPR --g EXPR ...] --a A --b B
    gafrac suite NAME --trials N --seed S [--tol T] [--report PATH]

eval runs one inequality check and prints its report record; suite runs
seeded fuzz batches with generated functions and prints one record per
case plus a summary footer.  Exit status: 0 all passed, 1 at least one
recorded failure, 2 precondition or usage error.

Records are serialized canonically: fixed key order, params keys
sorted, floats at 17 significant digits independent of locale, no
timestamps.  The same flags and seed always produce byte-identical
output, and any failure record's params are sufficient to re-run the
exact case through eval.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .convexity import SamplingPlan
from .errors import GafracError, ParseError, PreconditionError
from .funcspec import FunctionSpec
from .generators import (
    random_ga_convex,
    random_ga_convex_derivative,
    random_log_polynomial,
    random_symmetric_weight,
)
from .inequalities import (
    REPORT_FIELDS,
    InequalityReport,
    c_constants_alpha,
    corollary1_verify,
    corollary2_closed_forms,
    corollary2_variants,
    corollary3_verify,
    corollary4_verify,
    geodesic_side,
    hh_ga_verify,
    theorem5_verify,
    theorem6_verify,
    trapezoid_functional,
    zhang_bounds,
)
from .interval import Interval

__all__ = ["SuiteConfig", "run_eval", "run_suite", "main", "SUITE_NAMES"]

_SUITE_IDS = {
    "identity": 1,
    "theorem5": 2,
    "corollary1": 3,
    "corollary2": 4,
    "theorem6": 5,
    "corollary3": 6,
    "corollary4": 7,
    "hh_ga": 8,
    "zhang": 9,
    "constants": 10,
}
SUITE_NAMES = tuple(_SUITE_IDS)

_INEQ_NAMES = {
    "identity": "identity",
    "thm5": "theorem5", "theorem5": "theorem5",
    "cor1": "corollary1", "corollary1": "corollary1",
    "cor2": "eq217", "corollary2": "eq217", "eq217": "eq217",
    "eq218": "eq218",
    "thm6": "theorem6", "theorem6": "theorem6",
    "cor3": "corollary3", "corollary3": "corollary3",
    "cor4": "corollary4", "corollary4": "corollary4",
    "hh_ga": "hh_ga",
    "zhang1": "zhang1", "zhang2": "zhang2", "zhang3": "zhang3",
}

_IDENTITY_TOL = 1e-7
_CONSTANTS_TOL = 1e-9
_Q_CYCLE = (1.5, 2.0, 3.0, 5.0)

# Lighter certification plan for high-volume fuzzing; eval uses the
# library default.
_SUITE_PLAN = SamplingPlan(lambda_points=13, random_pairs=60, mesh_points=24)


@dataclass(frozen=True)
class SuiteConfig:
    """Reproducible description of one fuzz batch.

    tol applies to the residual suites (identity, constants) and
    defaults per suite; the bound suites pass or fail on their own
    error budgets.  Ranges are in log coordinates for interval
    endpoints and natural units otherwise.
    """

    suite: str
    trials: int
    seed: int = 0
    tol: float | None = None
    log_a_range: tuple = (math.log(0.2), math.log(5.0))
    logwidth_range: tuple = (0.1, 3.0)
    identity_log_a_range: tuple = (math.log(0.5), math.log(10.0))
    identity_logwidth_range: tuple = (0.1, 4.0)
    constants_logwidth_range: tuple = (0.1, 5.0)
    alpha_range: tuple = (0.05, 2.0)
    s_range: tuple = (0.1, 1.0)
    q_cycle: tuple = _Q_CYCLE

    def __post_init__(self):
        if self.suite not in _SUITE_IDS and self.suite != "all":
            raise ValueError(f"unknown suite {self.suite!r}")
        if int(self.trials) < 0:
            raise ValueError("trials must be nonnegative")
        object.__setattr__(self, "trials", int(self.trials))
        object.__setattr__(self, "seed", int(self.seed) & (2 ** 64 - 1))
        if self.tol is not None and not float(self.tol) > 0.0:
            raise ValueError("tol must be positive")


# -- canonical serialization ------------------------------------------------

def _fmt_float(v):
    v = float(v)
    if not math.isfinite(v):
        raise ValueError("refusing to serialise a non-finite number")
    return "%.17g" % v


def _canon_value(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "null"
    if isinstance(v, str):
        return json.dumps(v, ensure_ascii=True)
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return _fmt_float(v)
    if isinstance(v, dict):
        inner = ",".join(
            json.dumps(k, ensure_ascii=True) + ":" + _canon_value(v[k])
            for k in sorted(v)
        )
        return "{" + inner + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(_canon_value(x) for x in v) + "]"
    raise TypeError(f"cannot serialise {type(v).__name__}")


def _record_json(record):
    parts = [
        json.dumps(k, ensure_ascii=True) + ":" + _canon_value(record[k])
        for k in REPORT_FIELDS
    ]
    return "{" + ",".join(parts) + "}"


def _summary_json(stats):
    return '{"summary":' + _canon_value(stats) + "}"


def _csv_cell(key, value):
    if key == "params":
        return _canon_value(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return _fmt_float(value)


def _csv_lines(records):
    import csv

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(REPORT_FIELDS)
    for rec in records:
        writer.writerow([_csv_cell(k, rec[k]) for k in REPORT_FIELDS])
    return buf.getvalue()


def _summary_csv_record(stats):
    return {
        "inequality": "summary",
        "params": stats,
        "lhs": 0.0,
        "rhs": 0.0,
        "slack": 0.0,
        "pass": stats["failed"] == 0,
        "error_budget": 0.0,
        "seed": stats["seed"],
        "case_index": stats["trials"],
    }


def _emit(records, stats_list, fmt, report_path, out):
    """Write case records plus summary footers to the report target."""
    if fmt == "jsonl":
        lines = [_record_json(r) for r in records]
        lines += [_summary_json(s) for s in stats_list]
        text = "".join(line + "\n" for line in lines)
    else:
        rows = list(records)
        rows += [_summary_csv_record(s) for s in stats_list]
        text = _csv_lines(rows)
    if report_path:
        with open(report_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        for s in stats_list:
            out.write(_summary_json(s) + "\n")
    else:
        out.write(text)


# -- eval -------------------------------------------------------------------

def _parse_spec(text, derivative_text=None, what="f"):
    if text is None:
        raise _Usage(f"--{what} is required for this inequality")
    try:
        return FunctionSpec.from_text(text, derivative_text)
    except ParseError as exc:
        raise _Usage(_parse_diagnostic(what, text, exc))


def _parse_diagnostic(what, text, exc):
    caret = " " * exc.offset + "^"
    return "\n".join([f"cannot parse --{what}: {exc}", f"  {text}",
                      f"  {caret}"])


class _Usage(Exception):
    """Bad flags or unparseable input; maps to exit status 2."""


def _need(args, flag):
    value = getattr(args, flag)
    if value is None:
        raise _Usage(f"--{flag} is required for --ineq {args.ineq}")
    return value


def _eval_interval(args):
    if args.a is None or args.b is None:
        raise _Usage("--a and --b are required")
    try:
        return Interval(args.a, args.b)
    except ValueError as exc:
        raise _Usage(str(exc))


def _identity_report(f, h, interval, tol, seed=0, case_index=0):
    lhs, _ = trapezoid_functional(f, h, interval)
    rhs, _ = geodesic_side(f, h, interval)
    params = {"f": f.value_text, "fprime": f.derivative_text,
              "h": h.value_text, "a": interval.a, "b": interval.b}
    return InequalityReport(
        inequality="identity", params=params, lhs=lhs, rhs=rhs,
        slack=rhs - lhs, passed=abs(lhs - rhs) <= tol, error_budget=tol,
        seed=seed, case_index=case_index,
    )


def _dispatch_eval(args):
    name = _INEQ_NAMES.get(args.ineq)
    if name is None:
        known = ", ".join(sorted(set(_INEQ_NAMES)))
        raise _Usage(f"unknown inequality {args.ineq!r}; choose from {known}")
    interval = _eval_interval(args)
    f = _parse_spec(args.f, args.fprime, "f")

    if name == "identity":
        h = _parse_spec(args.h, what="h")
        tol = args.tol if args.tol is not None else _IDENTITY_TOL
        return _identity_report(f, h, interval, tol)
    if name == "theorem5":
        h = _parse_spec(args.h, what="h")
        return theorem5_verify(f, h, interval)
    if name == "corollary1":
        g = _parse_spec(args.g, what="g")
        variant = args.variant or "exact"
        return corollary1_verify(f, g, interval, _need(args, "alpha"),
                                 variant)
    if name in ("eq217", "eq218"):
        alpha = args.alpha if args.alpha is not None else 1.0
        return corollary2_variants(f, interval, alpha, name)
    if name == "theorem6":
        h = _parse_spec(args.h, what="h")
        return theorem6_verify(f, h, interval, _need(args, "q"))
    if name == "corollary3":
        g = _parse_spec(args.g, what="g")
        return corollary3_verify(f, g, interval, _need(args, "alpha"),
                                 _need(args, "q"))
    if name == "corollary4":
        return corollary4_verify(f, interval, _need(args, "q"))
    if name == "hh_ga":
        return hh_ga_verify(f, interval, args.s)
    which = {"zhang1": "thm1", "zhang2": "thm2", "zhang3": "thm3"}[name]
    q = args.q if args.q is not None else (1.0 if which == "thm1" else None)
    if q is None:
        raise _Usage(f"--q is required for --ineq {args.ineq}")
    if which == "thm3":
        return zhang_bounds(f, interval, which, q, _need(args, "p"))
    return zhang_bounds(f, interval, which, q)


def run_eval(args, out=None, err=None):
    """Evaluate one inequality from parsed flags; returns the exit code."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        report = _dispatch_eval(args)
    except _Usage as exc:
        err.write(f"error: {exc}\n")
        return 2
    except PreconditionError as exc:
        err.write(f"precondition failed: {exc}\n")
        return 2
    except (GafracError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return 2

    record = report.to_dict()
    if args.format == "csv":
        text = _csv_lines([record])
    else:
        text = _record_json(record) + "\n"
    if args.report:
        with open(args.report, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    out.write(text)
    return 0 if report.passed else 1


# -- suite ------------------------------------------------------------------

def _case_rng(cfg, suite, index):
    seq = np.random.SeedSequence([cfg.seed, _SUITE_IDS[suite], index])
    return np.random.default_rng(seq)


def _sub_seed(rng):
    return int(rng.integers(0, 2 ** 63))


def _draw_interval(rng, log_a_range, logwidth_range):
    la = rng.uniform(*log_a_range)
    w = rng.uniform(*logwidth_range)
    return Interval(math.exp(la), math.exp(la + w))


def _draw_alpha(rng, cfg, unit=False):
    lo, hi = cfg.alpha_range
    if unit:
        hi = min(hi, 1.0)
    return float(rng.uniform(lo, hi))


def _case_identity(cfg, rng, idx):
    iv = _draw_interval(rng, cfg.identity_log_a_range,
                        cfg.identity_logwidth_range)
    f = random_ga_convex(_sub_seed(rng), iv)
    h = random_log_polynomial(_sub_seed(rng), iv, degree=3)
    tol = cfg.tol if cfg.tol is not None else _IDENTITY_TOL
    return _identity_report(f, h, iv, tol, cfg.seed, idx)


def _case_theorem5(cfg, rng, idx):
    iv = _draw_interval(rng, cfg.log_a_range, cfg.logwidth_range)
    f = random_ga_convex_derivative(_sub_seed(rng), iv)
    h = random_log_polynomial(_sub_seed(rng), iv, degree=3)
    return theorem5_verify(f, h, iv, plan=_SUITE_PLAN, seed=cfg.seed,
                           case_index=idx)


def _case_corollary1(cfg, rng, idx):
    iv = _draw_interval(rng, cfg.log_a_range, cfg.logwidth_range)
    f = random_ga_convex_derivative(_sub_seed(rng), iv)
    g = random_symmetric_weight(_sub_seed(rng), iv)
    variant = "exact" if idx % 2 == 0 else "relaxed"
    alpha = _draw_alpha(rng, cfg, unit=variant == "relaxed")
    return corollary1_verify(f, g, iv, alpha, variant, plan=_SUITE_PLAN,
                             seed=cfg.seed, case_index=idx)


def _case_corollary2(cfg, rng, idx):
    iv = _draw_interval(rng, cfg.log_a_range, cfg.logwidth_range)
    f = random_ga_convex_derivative(_sub_seed(rng), iv)
    if idx % 2 == 0:
        return corollary2_variants(f, iv, _draw_alpha(rng, cfg), "eq217",
                                   plan=_SUITE_PLAN, seed=cfg.seed,
                                   case_index=idx)
    return corollary2_variants(f, iv, 1.0, "eq218", plan=_SUITE_PLAN,
                               seed=cfg.seed, case_index=idx)


def _case_theorem6(cfg, rng, idx):
    iv = _draw_interval(rng, cfg.log_a_range, cfg.logwidth_range)
    f = random_ga_convex_derivative(_sub_seed(rng), iv)
    h = random_log_polynomial(_sub_seed(rng), iv, degree=3)
    q = cfg.q_cycle[idx % len(cfg.q_cycle)]
    return theorem6_verify(f, h, iv, q, plan=_SUITE_PLAN, seed=cfg.seed,
                           case_index=idx)


def _case_corollary3(cfg, rng, idx):
    iv = _draw_interval(rng, cfg.log_a_range, cfg.logwidth_range)
    f = random_ga_convex_derivative(_sub_seed(rng), iv)
    g = random_symmetric_weight(_sub_seed(rng), iv)
    alpha = _draw_alpha(rng, cfg)
    q = cfg.q_cycle[idx % len(cfg.q_cycle)]
    return corollary3_verify(f, g, iv, alpha, q, plan=_SUITE_PLAN,
                             seed=cfg.seed, case_index=idx)


def _case_corollary4(cfg, rng, idx):
    iv = _draw_interval(rng, cfg.log_a_range, cfg.logwidth_range)
    f = random_ga_convex_derivative(_sub_seed(rng), iv)
    q = cfg.q_cycle[idx % len(cfg.q_cycle)]
    return corollary4_verify(f, iv, q, plan=_SUITE_PLAN, seed=cfg.seed,
                             case_index=idx)


def _case_hh_ga(cfg, rng, idx):
    iv = _draw_interval(rng, cfg.log_a_range, cfg.logwidth_range)
    f = random_ga_convex(_sub_seed(rng), iv, ensure_nonneg=True)
    s = None if idx % 2 == 0 else float(rng.uniform(*cfg.s_range))
    return hh_ga_verify(f, iv, s, plan=_SUITE_PLAN, seed=cfg.seed,
                        case_index=idx)


def _case_zhang(cfg, rng, idx):
    iv = _draw_interval(rng, cfg.log_a_range, cfg.logwidth_range)
    f = random_ga_convex_derivative(_sub_seed(rng), iv)
    which = ("thm1", "thm2", "thm3")[idx % 3]
    q = cfg.q_cycle[idx % len(cfg.q_cycle)]
    if which == "thm1" and idx % 6 == 0:
        q = 1.0
    p = float(rng.uniform(0.2, 1.8) * q) if which == "thm3" else None
    return zhang_bounds(f, iv, which, q, p, plan=_SUITE_PLAN, seed=cfg.seed,
                        case_index=idx)


def _case_constants(cfg, rng, idx):
    iv = _draw_interval(rng, cfg.log_a_range, cfg.constants_logwidth_range)
    closed = corollary2_closed_forms(iv)
    quad = c_constants_alpha(iv, 1.0, "relaxed")
    delta = max(
        abs(c - q) / max(abs(q), 1e-300)
        for c, q in zip(closed, quad)
    )
    tol = cfg.tol if cfg.tol is not None else _CONSTANTS_TOL
    params = {"a": iv.a, "b": iv.b}
    return InequalityReport(
        inequality="constants", params=params, lhs=delta, rhs=tol,
        slack=tol - delta, passed=delta <= tol, error_budget=0.0,
        seed=cfg.seed, case_index=idx,
    )


_SUITE_CASES = {
    "identity": _case_identity,
    "theorem5": _case_theorem5,
    "corollary1": _case_corollary1,
    "corollary2": _case_corollary2,
    "theorem6": _case_theorem6,
    "corollary3": _case_corollary3,
    "corollary4": _case_corollary4,
    "hh_ga": _case_hh_ga,
    "zhang": _case_zhang,
    "constants": _case_constants,
}


def _residual(record):
    if record["inequality"] == "identity":
        return abs(record["lhs"] - record["rhs"])
    if record["inequality"] == "constants":
        return record["lhs"]
    return max(record["lhs"] - record["rhs"], 0.0)


def _run_one_suite(cfg, suite):
    records = []
    case = _SUITE_CASES[suite]
    for idx in range(cfg.trials):
        rng = _case_rng(cfg, suite, idx)
        records.append(case(cfg, rng, idx).to_dict())
    stats = {
        "suite": suite,
        "trials": cfg.trials,
        "passed": sum(1 for r in records if r["pass"]),
        "failed": sum(1 for r in records if not r["pass"]),
        "min_slack": min((r["slack"] for r in records), default=None),
        "max_residual": max((_residual(r) for r in records), default=None),
        "seed": cfg.seed,
    }
    return records, stats


def run_suite(cfg, report_path=None, fmt="jsonl", out=None):
    """Run the configured fuzz batch; returns the exit code."""
    out = out if out is not None else sys.stdout
    if not isinstance(cfg, SuiteConfig):
        raise TypeError("cfg must be a SuiteConfig")
    suites = SUITE_NAMES if cfg.suite == "all" else (cfg.suite,)
    records = []
    stats_list = []
    for suite in suites:
        recs, stats = _run_one_suite(cfg, suite)
        records.extend(recs)
        stats_list.append(stats)
    _emit(records, stats_list, fmt, report_path, out)
    failed = sum(s["failed"] for s in stats_list)
    return 1 if failed else 0


# -- argument parsing -------------------------------------------------------

def _build_parser():
    parser = argparse.ArgumentParser(
        prog="gafrac",
        description="Verify trapezoid-type inequalities for GA-convex "
                    "functions numerically.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", help="evaluate one inequality")
    pe.add_argument("--ineq", required=True,
                    help="identity, thm5, cor1, cor2/eq217, eq218, thm6, "
                         "cor3, cor4, hh_ga, zhang1, zhang2, zhang3")
    pe.add_argument("--f", help="function f(x)")
    pe.add_argument("--fprime", help="derivative of f (default: symbolic)")
    pe.add_argument("--g", help="weight g(x)")
    pe.add_argument("--h", help="weight h(x)")
    pe.add_argument("--a", type=float, help="left endpoint, > 0")
    pe.add_argument("--b", type=float, help="right endpoint, > a")
    pe.add_argument("--alpha", type=float, help="fractional order")
    pe.add_argument("--q", type=float, help="power-mean exponent")
    pe.add_argument("--s", type=float, help="s-GA order in (0, 1]")
    pe.add_argument("--p", type=float, help="split exponent (zhang3)")
    pe.add_argument("--variant", choices=("exact", "relaxed"),
                    help="kernel variant for cor1")
    pe.add_argument("--tol", type=float, help="identity tolerance")
    pe.add_argument("--report", help="also write the record to this file")
    pe.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")

    ps = sub.add_parser("suite", help="run a seeded fuzz batch")
    ps.add_argument("suite", choices=SUITE_NAMES + ("all",))
    ps.add_argument("--trials", type=int, default=100)
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--tol", type=float, default=None)
    ps.add_argument("--report", help="write records to this file")
    ps.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    if args.command == "eval":
        return run_eval(args)
    try:
        cfg = SuiteConfig(suite=args.suite, trials=args.trials,
                          seed=args.seed, tol=args.tol)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    return run_suite(cfg, report_path=args.report, fmt=args.format)


if __name__ == "__main__":
    sys.exit(main())
