"""CLI contract: subcommands, exit codes, JSON schema, determinism."""

import json
import subprocess
import sys
from pathlib import Path

import pytest
from jsonschema import Draft202012Validator

from hypoint import cli

SCHEMA = json.loads(
    (Path(__file__).resolve().parent.parent / "schemas" / "cli_output.schema.json").read_text()
)
VALIDATOR = Draft202012Validator(SCHEMA)


def run(argv, capsys):
    """Invoke main in process; validate any JSON line against the schema."""
    code = cli.main(argv)
    out = capsys.readouterr().out
    payload = None
    if "--output" not in argv or argv[argv.index("--output") + 1] == "json":
        payload = json.loads(out)
        VALIDATOR.validate(payload)
    return code, out, payload


# --- encode ---------------------------------------------------------------


def test_encode_three_point_instance(capsys):
    code, _, payload = run(
        ["encode", "--field", "11", "--curve", "g1:n=3,a=1,b=1", "--t", "2", "--u", "3"], capsys
    )
    assert code == 0 and payload == {"x": "3", "y": "3"}


def test_encode_even_degree_fixed_point(capsys):
    code, _, payload = run(["encode", "--field", "11", "--curve", "g1:n=4,a=2,b=6"], capsys)
    assert code == 0 and payload == {"x": "8", "y": "9"}


def test_encode_not_prime_exits_1(capsys):
    code, _, payload = run(
        ["encode", "--field", "15", "--curve", "g1:n=3,a=1,b=1", "--t", "2", "--u", "3"], capsys
    )
    assert code == 1 and payload["error"] == "NotPrime"


def test_encode_domain_exclusion_exits_2(capsys):
    code, _, payload = run(
        ["encode", "--field", "11", "--curve", "g1:n=3,a=1,b=1", "--t", "0", "--u", "3"], capsys
    )
    assert code == 2 and payload["error"] == "DomainExcluded"


def test_encode_usage_errors(capsys):
    code, _, payload = run(["encode", "--field", "11", "--curve", "g1:n=3,a=1,b=1", "--t", "2"], capsys)
    assert code == 1 and payload["error"] == "UsageError"
    code, _, payload = run(
        ["encode", "--field", "11", "--curve", "g1:n=4,a=2,b=6", "--t", "1", "--u", "1"], capsys
    )
    assert code == 1 and payload["error"] == "UsageError"
    code, _, payload = run(["encode", "--field", "11", "--curve", "g1:n=3,a=0,b=1", "--t", "2", "--u", "3"], capsys)
    assert code == 1


def test_encode_extension_field(capsys):
    code, _, payload = run(
        ["encode", "--field", "3^2:1,0,1", "--curve", "g1:n=3,a=0,1,b=1,1", "--t", "1,1", "--u", "0,2"],
        capsys,
    )
    assert code == 0 and set(payload) == {"x", "y"}


def test_encode_base_point_short_circuit(capsys):
    # g(2) = 0 over F_11: the root itself comes back with y = 0
    code, _, payload = run(
        ["encode", "--field", "11", "--curve", "g1:n=3,a=1,b=1", "--t", "5", "--u", "2"], capsys
    )
    assert code == 0 and payload == {"x": "2", "y": "0"}


# --- sqrt -----------------------------------------------------------------


@pytest.mark.parametrize("x,expect", [("5", "4"), ("2", None), ("0", "0")])
def test_sqrt_instances(x, expect, capsys):
    code, _, payload = run(["sqrt", "--field", "11", "--x", x], capsys)
    assert code == 0 and payload == {"sqrt": expect}


def test_sqrt_extension_field(capsys):
    code, _, payload = run(["sqrt", "--field", "3^2:1,0,1", "--x", "2"], capsys)
    assert code == 0 and payload == {"sqrt": "0,1"}


# --- identities -------------------------------------------------------------


def test_identities_full_suite(capsys):
    code, _, payload = run(["identities", "--n-min", "3", "--n-max", "4"], capsys)
    assert code == 0 and payload["all_certified"]
    names = [row["name"] for row in payload["identities"]]
    assert "surface-curve g1 m=1 n=1" in names
    assert "two-point g2 n=3" in names
    assert "three-point g1 n=3" in names
    assert "quartic three-point x^4 + 1" in names
    assert all(row["status"] == "certified" for row in payload["identities"])


def test_identities_erratum_check(capsys):
    code, _, payload = run(["identities", "--n-min", "3", "--n-max", "4", "--erratum-check"], capsys)
    assert code == 0 and payload["all_certified"]
    flagged = [r for r in payload["identities"] if "first-family value term" in r["name"]]
    assert len(flagged) == 2
    assert all(r["status"] == "failed_as_expected" for r in flagged)
    assert all("suspected erratum" in r["note"] for r in flagged)


def test_identities_range_validation(capsys):
    code, _, payload = run(["identities", "--n-min", "5", "--n-max", "3"], capsys)
    assert code == 1 and payload["error"] == "UsageError"
    code, _, payload = run(["identities", "--n-min", "2", "--n-max", "9"], capsys)
    assert code == 1


def test_identities_failure_exits_3(capsys, monkeypatch):
    rows = [("forced failure", lambda: False, "pass")]
    monkeypatch.setattr(cli, "_identity_rows", lambda *a: rows)
    code, _, payload = run(["identities"], capsys)
    assert code == 3 and not payload["all_certified"]
    assert payload["identities"][0]["status"] == "failed"


def test_identities_unexpected_pass_exits_3(capsys, monkeypatch):
    rows = [("forced pass", lambda: True, "fail")]
    monkeypatch.setattr(cli, "_identity_rows", lambda *a: rows)
    code, _, payload = run(["identities"], capsys)
    assert code == 3
    assert payload["identities"][0]["status"] == "unexpectedly_certified"


def test_identities_text_mode(capsys):
    code, out, _ = run(["identities", "--n-min", "3", "--n-max", "3", "--output", "text"], capsys)
    assert code == 0
    assert "PASS two-point g1 n=3" in out
    assert "all_certified: True" in out


# --- survey -----------------------------------------------------------------


def test_survey_report(capsys):
    code, _, payload = run(["survey", "--field", "11", "--curve", "g1:n=3,a=1,b=1"], capsys)
    assert code == 0
    assert payload["size_T"] == "92" and payload["bound"] == "64"
    assert payload["bound_applicable"] and payload["bound_holds"]


def test_survey_bound_not_applicable_branch(capsys):
    code, _, payload = run(["survey", "--field", "3", "--curve", "g1:n=3,a=1,b=1"], capsys)
    assert code == 0 and payload["bound_applicable"] is False


def test_survey_field_too_large_exits_2(capsys):
    code, _, payload = run(
        ["survey", "--field", "101", "--curve", "g1:n=3,a=1,b=1", "--max-q", "50"], capsys
    )
    assert code == 2 and payload["error"] == "FieldTooLarge"


def test_survey_env_cap_and_flag_precedence(capsys, monkeypatch):
    monkeypatch.setenv("ULAS_MAX_Q", "50")
    code, _, payload = run(["survey", "--field", "101", "--curve", "g1:n=3,a=1,b=1"], capsys)
    assert code == 2 and payload["error"] == "FieldTooLarge"
    code, _, payload = run(
        ["survey", "--field", "101", "--curve", "g1:n=3,a=1,b=1", "--max-q", "150"], capsys
    )
    assert code == 0 and payload["q"] == "101"
    monkeypatch.setenv("ULAS_MAX_Q", "oops")
    code, _, payload = run(["survey", "--field", "11", "--curve", "g1:n=3,a=1,b=1"], capsys)
    assert code == 1 and payload["error"] == "UsageError"


def test_survey_sweep_mode(capsys):
    code, _, payload = run(
        ["survey", "--field", "13", "--family", "g1", "--n", "3", "--samples", "3", "--seed", "7"],
        capsys,
    )
    assert code == 0
    assert payload["all_sound"] and payload["all_bounds_hold"]
    assert len(payload["sweep"]) == 3


def test_survey_sweep_flag_validation(capsys):
    code, _, payload = run(
        ["survey", "--field", "13", "--family", "g1", "--n", "3", "--samples", "3"], capsys
    )
    assert code == 1 and payload["error"] == "UsageError"
    code, _, payload = run(
        ["survey", "--field", "13", "--curve", "g1:n=3,a=1,b=1", "--seed", "1",
         "--family", "g1", "--n", "3", "--samples", "1"],
        capsys,
    )
    assert code == 1
    code, _, payload = run(
        ["survey", "--field", "3^2:1,0,1", "--family", "g1", "--n", "3",
         "--samples", "1", "--seed", "1"],
        capsys,
    )
    assert code == 1
    code, _, payload = run(["survey", "--field", "13"], capsys)
    assert code == 1


# --- cross-cutting -----------------------------------------------------------


def test_no_subcommand_is_usage_error(capsys):
    code, _, payload = run([], capsys)
    assert code == 1 and payload["error"] == "UsageError"


def test_unknown_flag_is_usage_error(capsys):
    code, _, payload = run(["sqrt", "--field", "11", "--x", "5", "--bogus"], capsys)
    assert code == 1 and payload["error"] == "UsageError"


@pytest.mark.parametrize(
    "argv",
    [
        ["encode", "--field", "11", "--curve", "g1:n=3,a=1,b=1", "--t", "2", "--u", "3"],
        ["sqrt", "--field", "11", "--x", "5"],
        ["identities", "--n-min", "3", "--n-max", "3"],
        ["survey", "--field", "11", "--curve", "g1:n=3,a=1,b=1"],
        ["survey", "--field", "13", "--family", "g2", "--n", "5", "--samples", "2", "--seed", "3"],
    ],
    ids=["encode", "sqrt", "identities", "survey", "sweep"],
)
def test_byte_identical_reruns(argv, capsys):
    code1, out1, _ = run(argv, capsys)
    code2, out2, _ = run(argv, capsys)
    assert (code1, out1) == (code2, out2)


def test_console_script_installed():
    proc = subprocess.run(
        [sys.executable, "-m", "hypoint.cli", "sqrt", "--field", "11", "--x", "5"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"sqrt": "4"}


def test_text_output_has_no_json(capsys):
    code, out, _ = run(
        ["encode", "--field", "11", "--curve", "g1:n=3,a=1,b=1", "--t", "2", "--u", "3",
         "--output", "text"],
        capsys,
    )
    assert code == 0
    assert "{" not in out and "x: 3" in out and "y: 3" in out
