"""JSON run reports and CSV sweep summaries."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .checks import Recorder, _jsonable

SCHEMA_VERSION = 1
CSV_HEADER = ("instance", "n", "m", "kind", "ell", "lpt_exact", "S_size", "branch", "bound", "margin", "ms")


def build_report(command: str, instance: dict, recorder: Recorder, results, *, timing: dict | None = None) -> dict:
    report = {
        "schema_version": SCHEMA_VERSION,
        "engine_version": __version__,
        "command": command,
        "instance": instance,
        "results": results,
        "checks": {
            "total": recorder.total,
            "failed": len(recorder.failures),
            "ok": recorder.ok,
            "digest": recorder.records_digest(),
            "summary": {k: recorder.summary[k] for k in sorted(recorder.summary)},
        },
        "records": [r.to_dict() for r in recorder.details],
        "failures": [r.to_dict() for r in recorder.failures],
    }
    if timing is not None:
        report["timing"] = timing
    return _jsonable(report)


def dumps_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def write_report(path, report: dict):
    Path(path).write_text(dumps_report(report))


@dataclass
class StoredReport:
    """The fields of a stored report this version understands; others are ignored."""

    schema_version: int
    engine_version: str
    command: str
    ok: bool
    digest: str
    results: object = None
    instance: dict = field(default_factory=dict)


def read_report(path) -> StoredReport:
    data = json.loads(Path(path).read_text())
    checks = data.get("checks", {})
    return StoredReport(
        schema_version=data.get("schema_version", 0),
        engine_version=data.get("engine_version", ""),
        command=data.get("command", ""),
        ok=bool(checks.get("ok", False)),
        digest=checks.get("digest", ""),
        results=data.get("results"),
        instance=data.get("instance", {}),
    )


def format_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for row in rows:
        w.writerow([_cell(row.get(k, "")) for k in CSV_HEADER])
    return buf.getvalue()


def _cell(v):
    if isinstance(v, float):
        return f"{v:.6f}"
    return v


def write_csv(path, rows):
    Path(path).write_text(format_csv(rows))
