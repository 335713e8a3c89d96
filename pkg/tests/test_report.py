"""The report container: check recording, witnesses, JSON shape."""

from __future__ import annotations

from spincheck.report import VerificationReport


def test_record_outcomes():
    rep = VerificationReport("demo", {"k": 1})
    rep.record("truthy", lambda: True)
    rep.record("none_counts_as_pass", lambda: None)
    rep.record("falsy", lambda: False)
    rep.record("witness_string", lambda: "entry (0,1) differs")
    rep.record("raises", lambda: 1 // 0)
    assert [c.passed for c in rep.checks] == [True, True, False, False, False]
    assert rep.checks[3].witness == "entry (0,1) differs"
    assert "ZeroDivisionError" in rep.checks[4].witness
    assert not rep.passed


def test_as_json_shape():
    rep = VerificationReport("demo", {"k": 2})
    rep.add("fine", True)
    rep.add("broken", False, "because")
    out = rep.as_json()
    assert out == {
        "suite": "demo",
        "params": {"k": 2},
        "checks": [
            {"name": "fine", "pass": True},
            {"name": "broken", "pass": False, "witness": "because"},
        ],
        "pass": False,
    }


def test_summary_marks_failures():
    rep = VerificationReport("demo")
    rep.add("good", True)
    rep.add("bad", False, "look here")
    text = rep.summary()
    assert "1/2 checks passed" in text
    assert "FAIL bad  -- look here" in text


def test_empty_report_passes():
    assert VerificationReport("empty").passed
