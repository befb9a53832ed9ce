import io
import json

import pytest

from twisted_zeta.cli import EXIT_BITS, EXIT_MATH, EXIT_OK, EXIT_SCHEMA, run


def invoke(tmp_path, command, doc, *flags, raw=None):
    path = tmp_path / "input.json"
    path.write_text(raw if raw is not None else json.dumps(doc))
    out, err = io.StringIO(), io.StringIO()
    code = run([command, str(path), *flags], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def invoke_json(tmp_path, command, doc, *flags):
    code, out, err = invoke(tmp_path, command, doc, "--format", "json", *flags)
    assert code == EXIT_OK, err
    return json.loads(out)


def test_solenoid_boundary_report(tmp_path):
    code, out, _ = invoke(tmp_path, "analyze-solenoid", {"S0": [3], "xi": "2"}, "--n-max", "6")
    assert code == EXIT_OK
    assert "NATURAL_BOUNDARY" in out and "1, 1, 7, 5, 31, 7" in out
    assert "criterion" in out
    data = invoke_json(tmp_path, "analyze-solenoid", {"S0": [3], "xi": "2"}, "--n-max", "6")
    assert data["verdict"]["tag"] == "NATURAL_BOUNDARY"
    assert data["cokernel_oracle_agrees"] is True


def test_solenoid_rational_report(tmp_path):
    data = invoke_json(tmp_path, "analyze-solenoid", {"primes": [2], "xi": 2})
    assert data["verdict"]["tag"] == "RATIONAL"
    assert data["closed_form"] == "(1 - z) / (1 - 2*z)"


def test_fgab_report(tmp_path):
    data = invoke_json(tmp_path, "analyze-fgab", {"rank": 1, "A": [[2]]})
    assert data["closed_form"] == "(1 - z) / (1 - 2*z)"
    assert data["functional_equation"]["epsilon"] == "2" and data["functional_equation"]["holds"]
    assert data["sequence"][:5] == ["1", "3", "7", "15", "31"]
    assert data["reductions"]["eventual_image"]["preserves_sequence"]


def test_group_and_map_reports(tmp_path):
    data = invoke_json(tmp_path, "analyze-group", {"invariants": [5], "C": [[4]]})
    assert all(row["equal"] for row in data["tbft"])
    assert data["periodic_product"]["P"] == {"1": "1", "2": "4"}
    assert data["periodic_product"]["matches_series"]
    data = invoke_json(tmp_path, "analyze-map", {"table": [0, 2, 1, 1]})
    assert data["cycle_lengths"] == [1, 2] and data["transient"] == 1


def test_check_congruence_failure_is_not_an_error(tmp_path):
    code, out, _ = invoke(tmp_path, "check-congruence", [1, 2])
    assert code == EXIT_OK and "FAIL at n=2" in out
    code, out, _ = invoke(tmp_path, "check-congruence", {"values": [1, 3, 7, 15]})
    assert code == EXIT_OK and "PASS" in out


@pytest.mark.parametrize(
    "command, doc, raw",
    [
        ("check-congruence", None, "{not json"),
        ("analyze-fgab", {"rank": "one", "A": [[2]]}, None),
        ("analyze-solenoid", {"S0": [3]}, None),
        ("analyze-solenoid", {"S0": [4], "xi": 2}, None),
        ("analyze-map", {"table": "abc"}, None),
    ],
)
def test_schema_errors_exit_2(tmp_path, command, doc, raw):
    code, out, err = invoke(tmp_path, command, doc, raw=raw)
    assert code == EXIT_SCHEMA and out == "" and err


def test_missing_file_is_schema_error(tmp_path):
    assert run(["analyze-map", str(tmp_path / "nope.json")], stdout=io.StringIO(), stderr=io.StringIO()) == 2


def test_precondition_violation_exit_3(tmp_path):
    code, _, err = invoke(tmp_path, "analyze-fgab", {"rank": 1, "A": [[1]]})
    assert code == EXIT_MATH and "precondition" in err
    code, _, _ = invoke(tmp_path, "analyze-fgab", {"rank": 2, "A": [[0, -1], [1, 0]]})
    assert code == EXIT_MATH


def test_bit_limit_exit_4(tmp_path, monkeypatch):
    monkeypatch.setenv("TWISTED_ZETA_MAX_BITS", "8")
    code, _, err = invoke(tmp_path, "analyze-fgab", {"rank": 1, "A": [[2]]}, "--n-max", "12")
    assert code == EXIT_BITS and "TWISTED_ZETA_MAX_BITS" in err


def test_json_output_is_deterministic(tmp_path):
    first = invoke(tmp_path, "analyze-solenoid", {"S0": [3], "xi": "2"}, "--format", "json")[1]
    second = invoke(tmp_path, "analyze-solenoid", {"S0": [3], "xi": "2"}, "--format", "json")[1]
    assert first == second and first.endswith("\n")


def test_report_round_trips_through_check_congruence(tmp_path):
    report = invoke_json(tmp_path, "analyze-fgab", {"rank": 2, "A": [[2, 1], [1, 1]]})
    code, out, _ = invoke(tmp_path, "check-congruence", report)
    assert code == EXIT_OK and "PASS" in out


def test_flags_override_document_options(tmp_path):
    data = invoke_json(tmp_path, "analyze-map", {"table": [1, 0], "N": 3}, "--n-max", "5")
    assert len(data["sequence"]) == 5
    data = invoke_json(tmp_path, "analyze-map", {"table": [1, 0], "N": 3})
    assert len(data["sequence"]) == 3
