import json

import pytest

from lptkit.checks import Recorder, canonical_json, ensure, ensure_true, recording
from lptkit.errors import BoundViolation
from lptkit.report import build_report, dumps_report, format_csv, read_report, write_report


def test_ensure_margins_and_recording():
    rec = Recorder()
    with recording(rec):
        assert ensure("a", 2, "<=", 5) == 3
        assert ensure("b", 5, ">=", 2) == 3
        ensure("c", 4, "==", 4)
        ensure_true("d", True)
        with pytest.raises(BoundViolation) as exc:
            ensure("e", 6, "<=", 5, witness={"why": "demo"})
    assert exc.value.check_id == "e" and exc.value.witness == {"why": "demo"}
    assert rec.total == 5 and len(rec.failures) == 1 and not rec.ok
    assert rec.summary["a"]["min_margin"] == 3


def test_float_slack_in_passing_direction():
    ensure("slack", 1.0 + 1e-12, "<=", 1.0)
    with pytest.raises(BoundViolation):
        ensure("slack", 1.0 + 1e-6, "<=", 1.0)


def test_digest_is_order_sensitive_and_stable():
    def run(values):
        rec = Recorder()
        with recording(rec):
            for v in values:
                ensure("x", v, "<=", 10)
        return rec.records_digest()

    assert run([1, 2]) == run([1, 2])
    assert run([1, 2]) != run([2, 1])
    assert canonical_json({"b": {1, 0}, "a": 0.1}) == '{"a":0.1,"b":[0,1]}'


def test_report_round_trip(tmp_path):
    rec = Recorder()
    with recording(rec):
        ensure("x", 1, "<=", 2)
    report = build_report("demo", {"n": 3}, rec, {"value": 1})
    path = tmp_path / "r.json"
    write_report(path, report)
    assert path.read_text() == dumps_report(report)
    data = json.loads(path.read_text())
    data["unknown_field"] = 1
    path.write_text(json.dumps(data))
    stored = read_report(path)
    assert stored.ok and stored.command == "demo" and stored.digest == rec.records_digest()


def test_csv_format():
    text = format_csv([{"instance": "A_", "n": 2, "margin": 1.5, "extra": "ignored"}])
    header, row = text.splitlines()
    assert header.startswith("instance,n,m,kind")
    assert row.split(",")[0] == "A_" and "1.500000" in row and "ignored" not in row
