"""Tests for the command-line driver.

The contract under test: exit codes 0/1/2, byte-identical output for
identical flags and seed, canonical record serialization, and the
promise that any suite record's params are sufficient to re-run the
same case through eval.
"""

import io
import json
import math
import subprocess
import sys

import pytest

from gafrac.cli import (
    SUITE_NAMES,
    SuiteConfig,
    _build_parser,
    _fmt_float,
    main,
    run_eval,
    run_suite,
)
from gafrac.inequalities import REPORT_FIELDS

E2 = math.e ** 2


def _eval_code(argv):
    """Run the eval subcommand capturing both streams."""
    args = _build_parser().parse_args(["eval"] + argv)
    out = io.StringIO()
    err = io.StringIO()
    code = run_eval(args, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


# -- exit codes -------------------------------------------------------------

def test_eval_pass_exits_zero():
    code, out, err = _eval_code(
        ["--ineq", "hh_ga", "--f", "ln(x)^2", "--a", "1", "--b", repr(E2)])
    assert code == 0
    assert err == ""
    record = json.loads(out)
    assert record["pass"] is True
    assert record["inequality"] == "hh_ga"


def test_eval_recorded_failure_exits_one():
    # An absurd identity tolerance forces a recorded (honest) failure.
    code, out, err = _eval_code(
        ["--ineq", "identity", "--f", "ln(x)^2", "--h", "x",
         "--a", "1", "--b", "4", "--tol", "1e-30"])
    assert code == 1
    record = json.loads(out)
    assert record["pass"] is False
    assert abs(record["lhs"] - record["rhs"]) > 1e-30


def test_eval_precondition_exits_two():
    code, out, err = _eval_code(
        ["--ineq", "cor1", "--f", "x^2", "--g", "x", "--a", "1",
         "--b", repr(E2), "--alpha", "1"])
    assert code == 2
    assert out == ""
    assert "precondition failed" in err
    assert "witness" in err


def test_eval_parse_error_diagnostic():
    code, out, err = _eval_code(
        ["--ineq", "thm5", "--f", "ln(x", "--h", "x", "--a", "1", "--b", "2"])
    assert code == 2
    lines = err.splitlines()
    assert "cannot parse --f" in lines[0]
    assert lines[1].endswith("ln(x")
    # Caret under the offending offset.
    assert lines[2].strip() == "^"
    assert lines[2].index("^") == lines[1].index("l") + 4


def test_eval_unknown_inequality():
    code, _, err = _eval_code(
        ["--ineq", "thm9", "--f", "x", "--a", "1", "--b", "2"])
    assert code == 2
    assert "unknown inequality" in err


def test_eval_missing_required_flag():
    code, _, err = _eval_code(
        ["--ineq", "cor4", "--f", "x^2", "--a", "1", "--b", "2"])
    assert code == 2
    assert "--q is required" in err


def test_eval_bad_interval():
    code, _, err = _eval_code(
        ["--ineq", "hh_ga", "--f", "x", "--a", "-1", "--b", "2"])
    assert code == 2


def test_argparse_usage_error_exits_two():
    with pytest.raises(SystemExit) as info:
        main(["eval"])  # --ineq is required
    assert info.value.code == 2


def test_main_runs_suite():
    # main routes suite flags through SuiteConfig; smoke one tiny batch.
    import contextlib

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(["suite", "zhang", "--trials", "2", "--seed", "5"])
    assert code == 0
    lines = buf.getvalue().splitlines()
    assert len(lines) == 3  # two records plus summary
    assert json.loads(lines[-1])["summary"]["suite"] == "zhang"


# -- determinism ------------------------------------------------------------

def _suite_text(cfg, fmt="jsonl"):
    out = io.StringIO()
    code = run_suite(cfg, fmt=fmt, out=out)
    return code, out.getvalue()


def test_suite_output_byte_identical():
    cfg = SuiteConfig("all", trials=2, seed=7)
    code1, text1 = _suite_text(cfg)
    code2, text2 = _suite_text(cfg)
    assert code1 == code2 == 0
    assert text1 == text2
    assert len(text1.splitlines()) == 2 * len(SUITE_NAMES) + len(SUITE_NAMES)


def test_suite_seed_changes_output():
    _, text1 = _suite_text(SuiteConfig("theorem5", trials=2, seed=1))
    _, text2 = _suite_text(SuiteConfig("theorem5", trials=2, seed=2))
    assert text1 != text2


def test_suite_report_files_byte_identical(tmp_path):
    cfg = SuiteConfig("hh_ga", trials=3, seed=9)
    p1 = tmp_path / "r1.jsonl"
    p2 = tmp_path / "r2.jsonl"
    out1 = io.StringIO()
    out2 = io.StringIO()
    assert run_suite(cfg, report_path=str(p1), out=out1) == 0
    assert run_suite(cfg, report_path=str(p2), out=out2) == 0
    assert p1.read_bytes() == p2.read_bytes()
    # With a report file, stdout carries the summary only.
    assert out1.getvalue() == out2.getvalue()
    assert out1.getvalue().startswith('{"summary":')
    assert len(out1.getvalue().splitlines()) == 1


def test_suite_zero_trials():
    code, text = _suite_text(SuiteConfig("corollary2", trials=0, seed=0))
    assert code == 0
    summary = json.loads(text)["summary"]
    assert summary["trials"] == 0
    assert summary["min_slack"] is None
    assert summary["max_residual"] is None


def test_suite_config_validation():
    with pytest.raises(ValueError):
        SuiteConfig("nonsense", trials=1)
    with pytest.raises(ValueError):
        SuiteConfig("zhang", trials=-1)
    with pytest.raises(ValueError):
        SuiteConfig("zhang", trials=1, tol=-1e-9)
    with pytest.raises(TypeError):
        run_suite({"suite": "zhang"})


# -- serialization ----------------------------------------------------------

def test_csv_format_header_and_rows():
    cfg = SuiteConfig("zhang", trials=2, seed=3)
    code, text = _suite_text(cfg, fmt="csv")
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == ",".join(REPORT_FIELDS)
    assert len(lines) == 4  # header, two records, summary row
    assert lines[-1].startswith("summary,")


def test_record_lines_are_json_with_fixed_key_order():
    _, text = _suite_text(SuiteConfig("corollary4", trials=2, seed=1))
    for line in text.splitlines()[:-1]:
        record = json.loads(line)
        assert tuple(record) == REPORT_FIELDS
        assert list(record["params"]) == sorted(record["params"])


def test_eval_report_file_echoes_stdout(tmp_path):
    path = tmp_path / "one.jsonl"
    args = _build_parser().parse_args(
        ["eval", "--ineq", "zhang1", "--f", "x", "--a", "1", "--b", "3",
         "--report", str(path)])
    out = io.StringIO()
    assert run_eval(args, out=out, err=io.StringIO()) == 0
    assert path.read_text() == out.getvalue()


def test_fmt_float_rejects_non_finite():
    assert _fmt_float(0.1) == "0.10000000000000001"
    for bad in (math.inf, -math.inf, math.nan):
        with pytest.raises(ValueError):
            _fmt_float(bad)


# -- record reproduction through eval ---------------------------------------

def _flags_from_record(rec):
    """Rebuild the eval argv that re-runs a suite record's case."""
    p = rec["params"]
    name = rec["inequality"]
    f17 = lambda v: "%.17g" % v
    argv = ["--a", f17(p["a"]), "--b", f17(p["b"])]
    if "f" in p:
        argv += ["--f", p["f"]]
    if "fprime" in p:
        argv += ["--fprime", p["fprime"]]

    if name == "identity":
        return ["--ineq", "identity", "--h", p["h"]] + argv
    if name == "theorem5":
        return ["--ineq", "thm5", "--h", p["h"]] + argv
    if name == "corollary1":
        return (["--ineq", "cor1", "--g", p["g"], "--alpha", f17(p["alpha"]),
                 "--variant", p["variant"]] + argv)
    if name == "corollary2":
        return ["--ineq", p["which"], "--alpha", f17(p["alpha"])] + argv
    if name == "theorem6":
        return ["--ineq", "thm6", "--h", p["h"], "--q", f17(p["q"])] + argv
    if name == "corollary3":
        return (["--ineq", "cor3", "--g", p["g"], "--alpha", f17(p["alpha"]),
                 "--q", f17(p["q"])] + argv)
    if name == "corollary4":
        return ["--ineq", "cor4", "--q", f17(p["q"])] + argv
    if name == "hh_ga":
        extra = [] if p["s"] == 1.0 else ["--s", f17(p["s"])]
        return ["--ineq", "hh_ga"] + extra + argv
    if name == "zhang":
        ineq = {"thm1": "zhang1", "thm2": "zhang2", "thm3": "zhang3"}[
            p["which"]]
        extra = ["--q", f17(p["q"])]
        if "p" in p:
            extra += ["--p", f17(p["p"])]
        return ["--ineq", ineq] + extra + argv
    return None  # no eval equivalent (constants)


def test_suite_records_reproduce_through_eval():
    cfg = SuiteConfig("all", trials=2, seed=11)
    _, text = _suite_text(cfg)
    records = [json.loads(line) for line in text.splitlines()
               if not line.startswith('{"summary"')]
    assert len(records) == 2 * len(SUITE_NAMES)
    checked = 0
    for rec in records:
        argv = _flags_from_record(rec)
        if argv is None:
            continue
        code, out, err = _eval_code(argv)
        assert code in (0, 1), (rec["inequality"], err)
        redo = json.loads(out)
        assert redo["lhs"] == pytest.approx(rec["lhs"], rel=1e-12, abs=1e-12)
        assert redo["rhs"] == pytest.approx(rec["rhs"], rel=1e-12, abs=1e-12)
        assert redo["pass"] == rec["pass"]
        checked += 1
    assert checked == 2 * (len(SUITE_NAMES) - 1)


# -- module entry point -----------------------------------------------------

def test_module_invocation_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "gafrac", "eval", "--ineq", "zhang1",
         "--f", "x", "--a", "1", "--b", "3"],
        capture_output=True, text=True, timeout=120,
    )
    assert proc.returncode == 0, proc.stderr
    record = json.loads(proc.stdout)
    assert record["pass"] is True
    assert record["slack"] == 0.0
