"""End-to-end tests of the command-line driver.

Each test calls ``run(argv)`` directly and inspects the exit status plus the
captured stdout/stderr.  Stdout carries the machine-readable JSON (or DOT), so
the goldens here double as a compatibility contract for downstream consumers.
"""

from __future__ import annotations

import json

import pytest

from spincheck import cli
from spincheck.report import VerificationReport


def invoke(capsys, *argv):
    code = cli.run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def invoke_json(capsys, *argv):
    code, out, err = invoke(capsys, *argv)
    return code, json.loads(out), err


# ---------------------------------------------------------------------------
# construction subcommands


def test_bratteli_json_golden(capsys):
    code, payload, _ = invoke_json(
        capsys, "bratteli", "--family", "B", "--rank", "1", "--levels", "3")
    assert code == 0
    assert payload == {
        "command": "bratteli",
        "family": "B",
        "rank": 1,
        "levels": [
            {"(1/2)": 1},
            {"(1)": 1, "(0)": 1},
            {"(3/2)": 1, "(1/2)": 2},
        ],
    }


def test_bratteli_dot(capsys):
    code, out, _ = invoke(
        capsys, "bratteli", "--family", "B", "--rank", "1", "--levels", "2",
        "--dot")
    assert code == 0
    assert out.startswith("digraph")
    assert '"L1:(1/2)" -> "L2:(1)"' in out


def test_qdim_golden(capsys):
    code, payload, err = invoke_json(
        capsys, "qdim", "--family", "B", "--rank", "1", "--label", "1/2")
    assert code == 0
    assert payload == {
        "command": "qdim",
        "family": "B",
        "rank": 1,
        "label": "(1/2)",
        "qdim": "q^(1/2)+q^(-1/2)",
        "classical_dimension": 2,
    }
    assert "qdim" in err


def test_eigen_even_rank_two(capsys):
    code, payload, _ = invoke_json(
        capsys, "eigen", "--rank", "2", "--parity", "even")
    assert code == 0
    assert payload["command"] == "eigen"
    assert payload["module_dimension"] == 4
    assert payload["eigenvalues"] == ["q+q^(-1)", "1", "0", "-1",
                                      "-q-q^(-1)"]
    assert payload["label_heights"] == [0, 3, 2, 1, 4]
    assert len(payload["labels"]) == 5


def test_eigen_odd_has_no_labels(capsys):
    code, payload, _ = invoke_json(
        capsys, "eigen", "--rank", "1", "--parity", "odd")
    assert code == 0
    assert payload["module_dimension"] == 4
    assert "label_heights" not in payload
    assert payload["eigenvalues"][0] == "(q^(3/2)+q^(1/2)+q^(-1/2))/(q+1)"


def test_threads_flag_is_accepted(capsys):
    code, payload, _ = invoke_json(
        capsys, "--threads", "4", "eigen", "--rank", "1", "--parity", "even")
    assert code == 0
    assert payload["command"] == "eigen"


# ---------------------------------------------------------------------------
# verification subcommands


def test_verify_commute_passes(capsys):
    code, payload, err = invoke_json(
        capsys, "verify", "--suite", "commute", "--rank", "1",
        "--parity", "even")
    assert code == 0
    assert payload["pass"] is True
    assert payload["reports"][0]["suite"] == "commutation"
    assert all(ch["pass"] for ch in payload["reports"][0]["checks"])
    assert "checks passed" in err


def test_verify_coideal_at_point(capsys):
    code, payload, _ = invoke_json(
        capsys, "verify", "--suite", "coideal", "--rank", "1",
        "--parity", "odd", "--q", "5/2")
    assert code == 0
    names = [ch["name"] for ch in payload["reports"][0]["checks"]]
    assert "adjacent_cubic" in names


def test_verify_failure_exits_one(capsys, monkeypatch):
    bad = VerificationReport("trace", {})
    bad.add("product_trace_multiplicativity", False, "forced failure")
    monkeypatch.setattr(cli, "markov_property_check", lambda k: bad)
    code, payload, err = invoke_json(
        capsys, "verify", "--suite", "trace", "--rank", "1")
    assert code == 1
    assert payload["pass"] is False
    assert "FAIL" in err


# ---------------------------------------------------------------------------
# usage errors


@pytest.mark.parametrize("argv", [
    ("frobnicate",),                                     # unknown subcommand
    ("bratteli", "--family", "B"),                       # missing required
    ("qdim", "--family", "Z", "--rank", "1", "--label", "0"),
    ("verify", "--suite", "coideal", "--q", "3/2", "--symbolic"),
    ("verify", "--suite", "coideal", "--q", "zebra"),    # unparsable q
    ("qdim", "--family", "B", "--rank", "1", "--label", "x"),
    ("qdim", "--family", "D", "--rank", "2", "--label", "1"),  # rank mismatch
    ("eigen", "--rank", "9", "--parity", "even"),        # rank guard
    ("verify", "--suite", "coideal", "--rank", "2", "--parity", "odd",
     "--symbolic"),                                      # size guard
])
def test_usage_errors_exit_two(capsys, argv):
    code = cli.run(list(argv))
    capsys.readouterr()
    assert code == 2


def test_no_subcommand_prints_usage(capsys):
    code, out, err = invoke(capsys)
    assert code == 2
    assert out == ""
    assert "usage" in err


def test_guard_refusal_reports_reason(capsys):
    code, out, err = invoke(
        capsys, "verify", "--suite", "coideal", "--rank", "2",
        "--parity", "odd", "--symbolic")
    assert code == 2
    assert out == ""
    assert err.startswith("error:")
