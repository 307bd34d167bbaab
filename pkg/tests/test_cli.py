import json

import pytest

from torickahler.cli import RunReport, dispatch, emit


def run(capsys, *argv):
    code = dispatch(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_verify_catalog_passes(capsys):
    code, out = run(capsys, "verify-catalog", "--dims", "2..3", "--tol", "1e-9")
    assert code == 0
    payload = json.loads(out)
    assert payload["overall"] == "pass"
    names = [r["name"] for r in payload["results"]]
    assert any("fubini_study" in n for n in names)
    assert any("burns_simanca" in n for n in names)
    assert all(r["status"] == "pass" for r in payload["results"])


def test_verify_catalog_reports_failure_with_exit_one(capsys):
    code, out = run(capsys, "verify-catalog", "--dims", "2..2", "--tol", "1e-30")
    assert code == 1
    payload = json.loads(out)
    assert payload["overall"] == "fail"


def test_exit_zero_never_with_failed_check(capsys):
    for args in (["verify-catalog", "--dims", "2..2"], ["verify-catalog", "--dims", "2..2", "--tol", "1e-30"]):
        code, out = run(capsys, *args)
        payload = json.loads(out)
        failed = [r for r in payload["results"] if r["status"] == "fail"]
        assert (code == 0) == (not failed)


def test_derive_blowup_dim3(capsys):
    code, out = run(capsys, "derive", "--polytope", "blowup", "--dim", "3")
    assert code == 0
    payload = json.loads(out)
    results = {r["name"]: r for r in payload["results"]}
    assert results["A"]["measured"] == 2
    assert results["B"]["measured"] == -1
    assert results["quotient_coefficients"]["measured"] == [1, 1, -1]


def test_derive_rejects_other_polytopes(capsys):
    code, _ = run(capsys, "derive", "--polytope", "simplex", "--dim", "3")
    assert code == 2


def test_curvature_reduced_value(capsys):
    code, out = run(capsys, "curvature", "--potential", "fubini_study", "--dim", "2", "--t", "0.3")
    assert code == 0
    payload = json.loads(out)
    assert payload["results"][0]["measured"] == pytest.approx(6.0, abs=1e-9)


def test_curvature_requires_some_input(capsys):
    code, _ = run(capsys, "curvature", "--potential", "flat", "--dim", "2")
    assert code == 2


def test_curvature_point_evaluation(capsys):
    code, out = run(capsys, "curvature", "--potential", "burns_simanca", "--dim", "2", "--point", "1.0,1.1")
    assert code == 0
    payload = json.loads(out)
    assert payload["results"][0]["measured"] == pytest.approx(0.0, abs=1e-4)


def test_legendre_roundtrip_command(capsys):
    code, out = run(capsys, "legendre", "--potential", "fubini_study", "--dim", "2", "--samples", "10")
    assert code == 0
    assert json.loads(out)["overall"] == "pass"


def test_admissible_sweep(capsys):
    code, out = run(capsys, "admissible", "--potential", "fubini_study", "--t-range", "0.01..0.99")
    assert code == 0
    assert json.loads(out)["overall"] == "pass"


def test_decay_csv_contract(capsys):
    code, out = run(
        capsys, "decay", "--dim", "2", "--u-max", "1e5", "--samples", "16", "--format", "csv"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "u,deviation"
    data = [l for l in lines[1:] if not l.startswith("#")]
    assert len(data) == 16
    for line in data:
        u, dev = line.split(",")
        float(u), float(dev)
    assert any("fitted_slope" in l for l in lines if l.startswith("#"))


def test_decay_json_slope(capsys):
    code, out = run(capsys, "decay", "--dim", "3", "--samples", "16")
    assert code == 0
    payload = json.loads(out)
    slope = payload["results"][0]
    assert slope["measured"] == pytest.approx(-2.0, abs=0.1)


def test_decay_output_file(tmp_path, capsys):
    target = tmp_path / "scan.csv"
    code, _ = run(
        capsys, "decay", "--dim", "2", "--samples", "16", "--format", "csv", "--output", str(target)
    )
    assert code == 0
    assert target.read_text().splitlines()[0] == "u,deviation"


def test_unwritable_destination(capsys):
    code, _ = run(
        capsys, "decay", "--dim", "2", "--samples", "16", "--output", "/nonexistent/dir/out.json"
    )
    assert code == 2


def test_unknown_subcommand(capsys):
    assert dispatch(["frobnicate"]) == 2


def test_malformed_flag(capsys):
    assert dispatch(["decay", "--dim", "not-a-number"]) == 2


def test_reports_are_deterministic(capsys):
    _, first = run(capsys, "verify-catalog", "--dims", "2..3", "--seed", "11")
    _, second = run(capsys, "verify-catalog", "--dims", "2..3", "--seed", "11")
    assert first == second


def test_empty_report_is_valid_json():
    report = RunReport("noop", {})
    assert report.overall == "pass"
    emit(report, "json", None)


def test_emit_rejects_unknown_format():
    with pytest.raises(ValueError):
        emit(RunReport("noop", {}), "yaml", None)
