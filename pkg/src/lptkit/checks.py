"""Bound assertions that leave a trace.

Every engine routes its numeric guarantees through :func:`ensure`.  When a
:class:`Recorder` is active (see :func:`recording`) each call appends a
record; a failed check raises :class:`BoundViolation` either way.
"""

from __future__ import annotations

import contextlib
import contextvars
import hashlib
import json
import math
from dataclasses import dataclass, field

from .errors import BoundViolation

SLACK = 1e-9

_active: contextvars.ContextVar["Recorder | None"] = contextvars.ContextVar(
    "lptkit_recorder", default=None
)


def _jsonable(obj):
    if isinstance(obj, (set, frozenset)):
        return sorted(_jsonable(x) for x in obj)
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, float):
        if math.isnan(obj) or math.isinf(obj):
            return str(obj)
        return round(obj, 12)
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    return obj


def canonical_json(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, separators=(",", ":"))


def digest(obj) -> str:
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()[:16]


@dataclass
class Record:
    check: str
    inputs_digest: str
    value: float
    op: str
    bound: float
    margin: float
    passed: bool
    outputs: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "check": self.check,
            "inputs_digest": self.inputs_digest,
            "value": _jsonable(self.value),
            "op": self.op,
            "bound": _jsonable(self.bound),
            "margin": _jsonable(self.margin),
            "passed": self.passed,
            "outputs": _jsonable(self.outputs),
        }


class Recorder:
    """Collects check records; keeps per-check aggregates and a capped detail list."""

    def __init__(self, max_details=2000):
        self.max_details = max_details
        self.details: list[Record] = []
        self.failures: list[Record] = []
        self.summary: dict[str, dict] = {}
        self._hash = hashlib.sha256()

    def add(self, rec: Record):
        self._hash.update(canonical_json(rec.to_dict()).encode())
        agg = self.summary.setdefault(
            rec.check, {"count": 0, "failed": 0, "min_margin": None}
        )
        agg["count"] += 1
        if not rec.passed:
            agg["failed"] += 1
            self.failures.append(rec)
        if agg["min_margin"] is None or rec.margin < agg["min_margin"]:
            agg["min_margin"] = rec.margin
        if len(self.details) < self.max_details:
            self.details.append(rec)

    def extend(self, records):
        for r in records:
            self.add(r)

    @property
    def total(self):
        return sum(a["count"] for a in self.summary.values())

    @property
    def ok(self):
        return not self.failures

    def records_digest(self):
        return self._hash.hexdigest()[:16]


@contextlib.contextmanager
def recording(recorder: Recorder | None = None):
    rec = recorder if recorder is not None else Recorder()
    token = _active.set(rec)
    try:
        yield rec
    finally:
        _active.reset(token)


def ensure(check_id, value, op, bound, *, inputs=None, outputs=None, witness=None, raise_on_fail=True):
    """Assert ``value op bound`` with float slack in the passing direction.

    ``op`` is one of ``"<="``, ``">="``, ``"=="``.  Returns the margin.
    """
    if op == "<=":
        margin = bound - value
        passed = value <= bound + SLACK
    elif op == ">=":
        margin = value - bound
        passed = value >= bound - SLACK
    elif op == "==":
        margin = -abs(value - bound)
        passed = abs(value - bound) <= SLACK
    else:
        raise ValueError(f"unknown comparison {op!r}")
    rec = _active.get()
    if rec is not None:
        rec.add(
            Record(
                check=check_id,
                inputs_digest=digest(inputs if inputs is not None else {}),
                value=value,
                op=op,
                bound=bound,
                margin=margin,
                passed=passed,
                outputs=outputs or {},
            )
        )
    if not passed and raise_on_fail:
        raise BoundViolation(
            check_id, f"{value} {op} {bound} failed", witness or outputs or {}
        )
    return margin


def ensure_true(check_id, cond, *, inputs=None, outputs=None, witness=None):
    return ensure(
        check_id, 1 if cond else 0, ">=", 1, inputs=inputs, outputs=outputs, witness=witness
    )
