import io
import json
import os
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra import numpy as hnp

from covarray import ArrayMatrix, build_a_opt, field_of_order, make_field
from covarray.cli import emit_bounds, main
from covarray.errors import ParseError
from covarray.io import format_array, parse_array, read_array, write_array

GOLDEN = Path(__file__).parent / "golden"
REGEN = os.environ.get("COVARRAY_REGEN_GOLDEN") == "1"


def run(*argv):
    buf = io.StringIO()
    code = main([str(a) for a in argv], stdout=buf)
    return code, buf.getvalue()


@pytest.fixture
def fano(tmp_path):
    path = tmp_path / "fano.ca"
    write_array(build_a_opt(make_field(2), 3), path)
    return path


@pytest.fixture
def random_file(tmp_path):
    path = tmp_path / "rand.ca"
    assert run("construct", "random", "--v", 3, "--n", 12, "--k", 9, "--seed", 5, "-o", path)[0] == 0
    return path


# ---------------------------------------------------------------- file format

def test_roundtrip_a_opt_3_2(tmp_path):
    a = build_a_opt(make_field(3), 2)
    path = tmp_path / "a.ca"
    write_array(a, path)
    b = read_array(path)
    assert b == a and b.shape == (9, 4) and b.v == 3
    assert path.read_text(encoding="ascii") == format_array(a)
    assert format_array(a).splitlines()[0] == "CA 9 4 3"


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 5).flatmap(lambda v: st.tuples(
    st.just(v), hnp.arrays(np.int64, st.tuples(st.integers(1, 8), st.integers(1, 6)),
                           elements=st.integers(0, v - 1)))))
def test_roundtrip_property(case):
    v, data = case
    a = ArrayMatrix(data, v)
    text = format_array(a)
    assert parse_array(text) == a and format_array(parse_array(text)) == text


def test_comments_ignored():
    plain = "CA 2 2 2\n0 1\n1 0\n"
    commented = "# leading\nCA 2 2 2\n# between\n0 1\n  # indented\n1 0\n# trailing\n"
    assert parse_array(commented) == parse_array(plain)


@pytest.mark.parametrize("text,line,fragment", [
    ("CA 4 3 2\n0 0 0\n0 1 2\n1 0 1\n1 1 0\n", 3, "row 2"),
    ("CA 2 3 2\n0 0 0\n0 1\n", 3, "row 2 has 2 entries"),
    ("CB 2 3 2\n0 0 0\n0 1 1\n", 1, "header"),
    ("CA x 3 2\n0 0 0\n", 1, "non-integer header"),
    ("CA 2 3 1\n0 0 0\n0 0 0\n", 1, "v >= 2"),
    ("CA 3 2 2\n0 0\n1 1\n", 3, "header declares 3"),
    ("CA 1 2 2\n0 0\n1 1\n", 3, "more than"),
    ("CA 1 2 2\n0 a\n", 2, "non-integer symbol"),
    ("CA 1 2 2\n0 1", 2, "trailing newline"),
    ("", 1, "trailing newline"),
    ("# only a comment\n", 1, "empty"),
])
def test_parse_errors(text, line, fragment):
    with pytest.raises(ParseError) as info:
        parse_array(text)
    assert info.value.line == line and fragment in info.value.reason


# ---------------------------------------------------------------- CLI behavior

def test_construct_then_verify(tmp_path):
    path = tmp_path / "a.ca"
    code, out = run("construct", "a-opt", "--q", 2, "--t", 2, "-o", path)
    assert code == 0 and "4x3" in out
    code, out = run("verify", path, "--t", 2)
    assert code == 0 and out == "covering: true\n"


def test_verify_failure_reports_witness(fano):
    code, out = run("verify", fano, "--t", 3)
    assert code == 1 and out == "covering: false\nuncovered: 0 1 2\n"


def test_coverage_fano_json(fano):
    code, out = run("coverage", fano, "--t", 3, "--json")
    doc = json.loads(out)
    assert code == 0 and (doc["covered"], doc["total"]) == (28, 35) and len(doc["uncovered"]) == 7


def test_build_example(tmp_path):
    path = tmp_path / "out.ca"
    code, out = run("build", "--t", 2, "--k", 10, "--v", 2, "--seed", 7, "-o", path)
    assert code == 0
    assert read_array(path).shape == (16, 10)
    doc = json.loads(out)
    assert doc["plan"]["r"] == 4 and doc["verified"] is True and "wall_clock_s" not in doc


def test_build_report_and_timing(tmp_path):
    report = tmp_path / "r.json"
    code, out = run("build", "--t", 2, "--k", 6, "--v", 3, "--seed", 1, "--timing",
                    "--report", report, "-o", tmp_path / "o.ca")
    assert code == 0 and "wall_clock_s" in json.loads(report.read_text())


def test_build_gave_up_exit_1(tmp_path):
    code, _ = run("build", "--t", 2, "--k", 40, "--v", 2, "--seed", 0, "--max-attempts", 1,
                  "-o", tmp_path / "o.ca")
    assert code == 1 and not (tmp_path / "o.ca").exists()


def test_emit_bounds_examples():
    doc = emit_bounds(2, 10, 2)
    assert doc["can_new"] == 16 and doc["can_exact_katona"] == 6
    assert emit_bounds(3, 8, 2)["can_new"] == 80
    doc = emit_bounds(2, 10, 6)
    assert "can_new" not in doc and doc["next_prime_power"] == 7
    assert doc["can_gss"]["kind"] == "leading_term"


@pytest.mark.parametrize("argv", [
    ["bounds", "--t", "2", "--k", "10", "--v", "1"],
    ["bounds", "--t", "3", "--k", "2", "--v", "2"],
    ["build", "--t", "2", "--k", "10", "--v", "2", "--seed", "1", "--almost", "-o", "x.ca"],
    ["build", "--t", "2", "--k", "10", "--v", "2", "--seed", "1", "--almost", "--epsilon", "2",
     "-o", "x.ca"],
    ["construct", "a-opt", "--q", "6", "--t", "2"],
    ["construct", "random", "--v", "2", "--n", "3", "--k", "3"],
    ["verify", "does-not-exist.ca", "--t", "2"],
    ["lagrangian", "--t", "2", "--v", "3", "--seed", "0"],
    ["--threads", "0", "bounds", "--t", "2", "--k", "3", "--v", "2"],
    ["frobnicate"],
    ["build", "--t", "2"],
])
def test_usage_errors_exit_2(argv, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert run(*argv)[0] == 2


def test_parse_error_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.ca"
    bad.write_text("CA 4 3 2\n0 0 0\n0 1 2\n1 0 1\n1 1 0\n")
    assert run("verify", bad, "--t", 2)[0] == 2
    assert "line 3" in capsys.readouterr().err


def test_blow_up_plan_file(tmp_path):
    plan = tmp_path / "plan.json"
    code, out = run("construct", "blow-up", "--q", 2, "--t", 2, "--k", 7, "--mode", "random",
                    "--seed", 4, "--plan", plan)
    assert code == 0 and parse_array(out).shape == (4, 7)
    doc = json.loads(plan.read_text())
    assert doc["mode"] == "random" and len(doc["assignment"]) == 7


def test_construct_blow_up_from_input(tmp_path):
    base = tmp_path / "base.ca"
    write_array(build_a_opt(field_of_order(3), 2), base)
    code, out = run("construct", "blow-up", "--input", base, "--k", 8)
    assert code == 0 and parse_array(out).shape == (9, 8)


# ---------------------------------------------------------------- golden files

def golden_cases(fano, random_file, tmp_path):
    out = tmp_path / "built.ca"
    return {
        "construct_a_opt.txt": ["construct", "a-opt", "--q", 2, "--t", 3],
        "construct_blow_up.txt": ["construct", "blow-up", "--q", 3, "--t", 2, "--k", 10,
                                  "--mode", "random", "--seed", 11],
        "verify.json": ["verify", fano, "--t", 3, "--json"],
        "coverage.json": ["coverage", fano, "--t", 3, "--json"],
        "coverage_sampled.json": ["coverage", random_file, "--t", 3, "--samples", 500,
                                  "--seed", 2, "--json"],
        "build.json": ["build", "--t", 2, "--k", 10, "--v", 2, "--seed", 7, "-o", out],
        "build_resample.json": ["build", "--t", 3, "--k", 12, "--v", 2, "--seed", 3,
                                "--strategy", "resample", "-o", out],
        "build_almost.json": ["build", "--t", 2, "--k", 12, "--v", 6, "--seed", 5, "--almost",
                              "--epsilon", "1/2", "-o", out],
        "bounds.json": ["bounds", "--t", 2, "--k", 10, "--v", 2, "--epsilon", "1/100"],
        "bounds_non_prime_power.json": ["bounds", "--t", 3, "--k", 20, "--v", 6],
        "lagrangian.json": ["lagrangian", "--t", 2, "--v", 2, "--restarts", 10, "--seed", 0],
    }


def test_golden_outputs(fano, random_file, tmp_path):
    GOLDEN.mkdir(exist_ok=True)
    for name, argv in golden_cases(fano, random_file, tmp_path).items():
        code, out = run(*argv)
        assert code in (0, 1), name
        path = GOLDEN / name
        if REGEN:
            path.write_text(out, encoding="ascii")
        assert path.exists(), f"missing golden file {name}; rerun with COVARRAY_REGEN_GOLDEN=1"
        assert out == path.read_text(encoding="ascii"), name


@pytest.mark.parametrize("threads", ["1", "4"])
def test_outputs_identical_across_threads_and_runs(fano, random_file, tmp_path, threads):
    for name, argv in golden_cases(fano, random_file, tmp_path).items():
        first = run("--threads", threads, *argv)
        second = run("--threads", threads, *argv)
        assert first == second == run(*argv), name
    built = tmp_path / "built.ca"
    run("--threads", threads, "build", "--t", 3, "--k", 9, "--v", 3, "--seed", 8, "-o", built)
    data = built.read_bytes()
    run("build", "--t", 3, "--k", 9, "--v", 3, "--seed", 8, "-o", built)
    assert built.read_bytes() == data
