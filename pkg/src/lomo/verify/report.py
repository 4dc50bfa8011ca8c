from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np


def _clean(obj):
    """Make nested results JSON-safe: numpy scalars to Python, inf/nan to strings."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_clean(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return obj


@dataclass
class VerificationReport:
    check_id: str
    anchor: str
    parameters: dict = field(default_factory=dict)
    constants: dict = field(default_factory=dict)
    quantiles: dict = field(default_factory=dict)
    drift: dict = field(default_factory=dict)
    verdict: bool = False
    details: dict = field(default_factory=dict)
    runtime: float = 0.0

    def to_dict(self) -> dict:
        """Everything except the runtime, which lives with the timestamp."""
        return _clean({
            "check_id": self.check_id,
            "anchor": self.anchor,
            "parameters": self.parameters,
            "constants": self.constants,
            "quantiles": self.quantiles,
            "drift": self.drift,
            "verdict": "pass" if self.verdict else "fail",
            "details": self.details,
        })

    def summary(self) -> str:
        consts = ", ".join(f"{k}={v:.4g}" for k, v in self.constants.items()
                           if isinstance(v, (int, float)))
        return f"[{'PASS' if self.verdict else 'FAIL'}] {self.check_id}: {consts}"


def bundle(reports: list[VerificationReport], config: dict | None = None) -> dict:
    """One JSON document for a run. ``timestamp`` is the only run-dependent field."""
    return {
        "config": _clean(config or {}),
        "passed": all(r.verdict for r in reports),
        "reports": [r.to_dict() for r in reports],
        "timestamp": {
            "created": datetime.now(timezone.utc).isoformat(),
            "runtime_s": {r.check_id: round(r.runtime, 6) for r in reports},
        },
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


def to_csv(reports: list[VerificationReport]) -> str:
    """Flat table: one row per check and named constant."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["check_id", "verdict", "quantity", "value"])
    for r in reports:
        for group in ("constants", "drift", "quantiles"):
            for k, v in sorted(getattr(r, group).items()):
                w.writerow([r.check_id, "pass" if r.verdict else "fail", f"{group}.{k}", _clean(v)])
    return buf.getvalue()
