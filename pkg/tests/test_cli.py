"""End to end tests for the command line interface.

Every test drives the installed module through a real subprocess so that
argument parsing, report serialization, exit codes, and the stdout/stderr
split are exercised exactly as a user sees them.
"""

import json
import subprocess
import sys

import jsonschema
import pytest

from ffstick.report import load_schema


def run_cli(*args, check=False):
    proc = subprocess.run(
        [sys.executable, "-m", "ffstick.cli", *args],
        capture_output=True,
        text=True,
    )
    if check and proc.returncode != 0:
        raise AssertionError(f"cli failed ({proc.returncode}): {proc.stderr}")
    return proc


def report_of(proc):
    return json.loads(proc.stdout)


def test_stick_q_quadratic_modulus():
    proc = run_cli("stick", "q", "--p", "2", "--m", "1", "--ideal", "1,1,1", check=True)
    doc = report_of(proc)
    assert doc["summary"] == {"failed": 0, "total": 1}
    rec = doc["checks"][0]
    assert rec["status"] == "pass"
    gammas = rec["details"]["gammas"]
    # gamma_0 is the class of 1, gamma_1 the sum of the two degree-1 classes
    assert gammas[0]["coeffs"] == [[[1], 1]]
    assert gammas[1]["coeffs"] == [[[0, 1], 1], [[1, 1], 1]]
    assert rec["details"]["violations"] == []


def test_hecke_phi_linear_determinant():
    proc = run_cli("hecke", "phi", "--p", "3", "--m", "1", "--g", "0,1", "--n", "2",
                   check=True)
    details = report_of(proc)["checks"][0]["details"]
    assert details["value"] == 4
    assert details["closed"] == details["enum"] == 4


def test_no_arguments_is_usage_error():
    proc = run_cli()
    assert proc.returncode == 2


def test_unknown_subcommand_is_usage_error():
    proc = run_cli("stick", "frobenius")
    assert proc.returncode == 2


def test_validation_error_exits_two_with_empty_stdout():
    proc = run_cli("stick", "q", "--p", "4", "--m", "1", "--ideal", "1,1")
    assert proc.returncode == 2
    assert proc.stdout == ""
    assert "prime" in proc.stderr


def test_nonmonic_ideal_rejected():
    proc = run_cli("carlitz", "psi", "--p", "3", "--m", "1", "--ideal", "0,1,2")
    assert proc.returncode == 2


def test_reports_validate_against_schema():
    schema = load_schema()
    commands = [
        ("stick", "q", "--p", "3", "--m", "1", "--ideal", "0,2,1"),
        ("stick", "theta", "--p", "3", "--m", "1", "--ideal", "0,2,1", "--n", "2"),
        ("stick", "verify", "--p", "2", "--m", "1", "--ideal", "1,1,1"),
        ("hecke", "phi", "--p", "2", "--m", "1", "--g", "0,0,1", "--n", "2"),
        ("hecke", "dcount", "--p", "2", "--m", "1", "--chain", "0,0,1;0,1"),
        ("hecke", "newton", "--p", "2", "--m", "1", "--x", "0,1", "--n", "2", "--r", "2"),
        ("hecke", "mult", "--p", "2", "--m", "1", "--chain", "0,1", "--chain2", "1,1"),
        ("carlitz", "psi", "--p", "2", "--m", "1", "--ideal", "0,0,1"),
        ("carlitz", "example39", "--p", "3", "--m", "1", "--ideal", "0,2,1"),
    ]
    for cmd in commands:
        doc = report_of(run_cli(*cmd, check=True))
        jsonschema.validate(doc, schema)
        assert doc["summary"]["failed"] == 0


def test_stderr_carries_timing_stdout_stays_clean():
    proc = run_cli("stick", "verify", "--p", "2", "--m", "1", "--ideal", "0,1",
                   check=True)
    assert "[time]" in proc.stderr
    assert "[time]" not in proc.stdout
    json.loads(proc.stdout)


def test_json_flag_writes_file(tmp_path):
    out = tmp_path / "report.json"
    proc = run_cli("hecke", "phi", "--p", "2", "--m", "1", "--g", "0,1", "--n", "3",
                   "--json", str(out), check=True)
    assert proc.stdout == ""
    doc = json.loads(out.read_text())
    assert doc["checks"][0]["details"]["value"] == 7


def test_theta_reports_frobenius_degree():
    proc = run_cli("stick", "theta", "--p", "3", "--m", "1", "--ideal", "0,2,1",
                   "--n", "3", check=True)
    details = report_of(proc)["checks"][0]["details"]
    assert details["F_degree"] == 3  # n * d with d = 1 for a quadratic modulus


def test_seeded_commands_are_deterministic():
    args = ("hecke", "newton", "--p", "2", "--m", "1", "--x", "0,1",
            "--n", "2", "--r", "3", "--seed", "41")
    first = run_cli(*args, check=True)
    second = run_cli(*args, check=True)
    assert first.stdout == second.stdout


def test_newton_fault_injection_fails_with_witness():
    proc = run_cli("hecke", "newton", "--p", "2", "--m", "1", "--x", "0,1",
                   "--n", "2", "--r", "2", "--inject-fault", "newton")
    assert proc.returncode == 1
    doc = report_of(proc)
    rec = doc["checks"][0]
    assert rec["status"] == "fail"
    assert "witness" in rec["details"]
    assert "lattice" in rec["details"]["witness"]


def test_coprime_rejection_in_mult():
    proc = run_cli("hecke", "mult", "--p", "2", "--m", "1",
                   "--chain", "0,1", "--chain2", "0,0,1")
    assert proc.returncode == 2


def test_verify_all_reduced_run_deterministic_and_valid():
    args = ("verify-all", "--seed", "13", "--pairs", "1", "--newton-budget", "200")
    first = run_cli(*args, check=True)
    second = run_cli(*args, check=True)
    assert first.stdout == second.stdout
    doc = report_of(first)
    jsonschema.validate(doc, load_schema())
    assert doc["summary"]["failed"] == 0
    ids = [c["check_id"] for c in doc["checks"]]
    assert ids == sorted(ids)
    prefixes = {"lseries", "hecke", "carlitz"}
    assert {i.split(".")[0] for i in ids} == prefixes
    # the tight budget must leave a visible record of skipped Newton cases
    ident = next(c for c in doc["checks"] if c["check_id"] == "hecke.newton_qbinom_identity")
    assert ident["details"]["skipped_over_budget"]


def test_verify_all_seed_changes_sampled_sections():
    a = report_of(run_cli("verify-all", "--seed", "1", "--pairs", "1",
                          "--newton-budget", "0", check=True))
    b = report_of(run_cli("verify-all", "--seed", "2", "--pairs", "1",
                          "--newton-budget", "0", check=True))
    assert a["config"]["seed"] == 1 and b["config"]["seed"] == 2
    assert a["summary"]["failed"] == b["summary"]["failed"] == 0


def test_workbench_threads_echoed(monkeypatch):
    import os
    env = dict(os.environ, WORKBENCH_THREADS="8")
    proc = subprocess.run(
        [sys.executable, "-m", "ffstick.cli", "hecke", "phi", "--p", "2", "--m", "1",
         "--g", "0,1", "--n", "2"],
        capture_output=True, text=True, env=env,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["config"]["workbench_threads"] == 8
