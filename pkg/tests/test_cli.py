import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from ncloc.cli.main import main
from ncloc.cli.syntax import (
    Ident,
    JobSyntaxError,
    ListV,
    Num,
    Poly,
    classify,
    format_job,
    format_value,
    parse_job,
    parse_value,
)
from ncloc.cli.tasks import HANDLERS

JOBS = Path(__file__).resolve().parent.parent / "jobs"
JOB_FILES = sorted(JOBS.glob("*.job"))


def strip_timing(report):
    for t in report["tasks"]:
        t.pop("elapsed_ms", None)
    return report


def test_job_corpus_present():
    assert len([p for p in JOB_FILES if p.name[:2].isdigit()]) == 20


@pytest.mark.parametrize("path", JOB_FILES, ids=lambda p: p.name)
def test_job_round_trip(path):
    job = parse_job(path.read_text())
    printed = format_job(job)
    assert parse_job(printed) == job
    assert format_job(parse_job(printed)) == printed
    assert all(t.kind in HANDLERS for t in job.tasks)


def test_parse_ring_and_task():
    job = parse_job("ring R { gens a, b; rel b*a -> 1/2*a*b; order b > a; domain; }\n"
                    "task ore-check(R, S=[a], bound=3)")
    r = job.ring("R")
    assert r.gens == ("a", "b") and r.order == ("b", "a") and r.domain
    assert r.rels[0][0] == ("b", "a")
    assert r.rels[0][1] == Poly(((Fraction(1, 2), ("a", "b")),))
    t = job.tasks[0]
    assert t.kind == "ore-check"
    assert t.kw("S") == ListV((Ident("a"),)) and t.kw("bound") == Num(Fraction(3))


def test_syntax_error_location():
    with pytest.raises(JobSyntaxError) as err:
        parse_job("ring R {\n  gens a;\n  rel a -> ;\n}")
    assert (err.value.line, err.value.column) == (3, 12)
    assert "line 3, column 12" in str(err.value)


def test_bad_character():
    with pytest.raises(JobSyntaxError) as err:
        parse_job("task normal-form(R, a $ b);")
    assert err.value.column == 23


def test_positional_after_keyword_rejected():
    with pytest.raises(JobSyntaxError):
        parse_job("task qdet(QQ, seed=1, 2);")


def test_exit_codes(tmp_path, capsys):
    assert main([]) == 2
    bad = tmp_path / "bad.job"
    bad.write_text("task (")
    assert main(["run", str(bad)]) == 2
    assert "syntax error" in capsys.readouterr().err
    assert main(["run", str(tmp_path / "missing.job")]) == 2
    fail = tmp_path / "fail.job"
    fail.write_text("task normal-form(Nowhere, a);")
    assert main(["run", str(fail), "--json", str(tmp_path / "r.json")]) == 1
    rec = json.loads((tmp_path / "r.json").read_text())["tasks"][0]
    assert rec["status"] == "fail" and "unknown ring" in rec["error"]
    ok = tmp_path / "ok.job"
    ok.write_text("task normal-form(qplane, a*b);")
    assert main(["run", str(ok)]) == 0


def test_unknown_kind_is_a_failure_not_a_crash(tmp_path):
    job = tmp_path / "k.job"
    job.write_text("task frobnicate(1);")
    assert main(["run", str(job), "--json", str(tmp_path / "o.json")]) == 1
    assert main(["check", str(job)]) == 2


def test_check_and_print(capsys):
    path = str(JOBS / "01_qplane_normal_forms.job")
    assert main(["check", path]) == 0
    assert capsys.readouterr().out.startswith("ok:")
    assert main(["check", path, "--print"]) == 0
    assert parse_job(capsys.readouterr().out) == parse_job(Path(path).read_text())


def test_report_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    demo = str(JOBS / "demo.job")
    assert main(["run", demo, "--json", str(a)]) == 1
    assert main(["run", demo, "--json", str(b)]) == 1
    ra, rb = strip_timing(json.loads(a.read_text())), strip_timing(json.loads(b.read_text()))
    assert ra == rb
    assert ra["summary"] == {"ok": 6, "fail": 1, "inconclusive": 0}
    assert [t["status"] for t in ra["tasks"]][-1] == "fail"


def test_suite_command(tmp_path):
    out = tmp_path / "s.json"
    assert main(["suite", "--n", "3", "--reps", "2", "--json", str(out)]) == 0
    rec = json.loads(out.read_text())["tasks"][0]
    assert rec["kind"] == "suite" and rec["status"] == "ok"


def test_bounded_absence_is_inconclusive(tmp_path):
    job = tmp_path / "b.job"
    job.write_text("task ore-witness(counterexample, S=[D], s=D*D, r=z1, bound=2);")
    out = tmp_path / "b.json"
    assert main(["run", str(job), "--json", str(out)]) == 0
    assert json.loads(out.read_text())["tasks"][0]["status"] == "inconclusive"


# --- printer / parser round trip on random values ----------------------------

names = st.sampled_from(["a", "b", "x", "z1", "D", "x_inv"])
coeffs = st.fractions(min_value=-20, max_value=20, max_denominator=6).filter(lambda c: c != 0)
words = st.lists(names, min_size=0, max_size=3).map(tuple)
polys = st.lists(st.tuples(coeffs, words), min_size=1, max_size=4).map(lambda ts: classify(Poly(tuple(ts))))
values = st.recursive(polys, lambda inner: st.lists(inner, max_size=3).map(lambda xs: ListV(tuple(xs))),
                      max_leaves=8)


@given(values)
def test_value_round_trip(v):
    assert parse_value(format_value(v)) == v


@given(st.fractions(max_denominator=50))
def test_number_round_trip(c):
    assert parse_value(format_value(Num(c))) == Num(c)


def test_json_to_stdout_writes_no_file(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    job = tmp_path / "j.job"
    job.write_text("task normal-form(qplane, a*b);")
    assert main(["run", str(job), "--json", "-"]) == 0
    assert json.loads(capsys.readouterr().out)["summary"]["ok"] == 1
    assert not (tmp_path / "-").exists()
