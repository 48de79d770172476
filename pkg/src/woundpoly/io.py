"""Curve JSON, report CSV and search-trace serialisation."""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable

from .bounds import CSV_FIELDS, BoundReport
from .curve import WoundPolygon, validate
from .errors import BadParameters
from .search import SearchConfig, SearchTrace


def curve_to_dict(C: WoundPolygon) -> dict:
    return {
        "k": C.k,
        "vertices": [{"phi": float(p), "rho": float(r)} for p, r in zip(C.phi, C.rho)],
    }


def curve_from_dict(d: dict, allow_flat: bool = False) -> WoundPolygon:
    try:
        k = d["k"]
        raw = [(v["phi"], v["rho"]) for v in d["vertices"]]
    except (KeyError, TypeError) as exc:
        raise BadParameters(f"malformed curve JSON: {exc}") from exc
    return validate(raw, k, allow_flat=allow_flat)


def dumps_curve(C: WoundPolygon) -> str:
    return json.dumps(curve_to_dict(C))


def loads_curve(text: str, allow_flat: bool = False) -> WoundPolygon:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadParameters(f"invalid JSON: {exc}") from exc
    return curve_from_dict(d, allow_flat=allow_flat)


def reports_to_csv(reports: Iterable[BoundReport], digits: int = 12) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        w.writerow(r.csv_row(digits))
    return buf.getvalue()


def trace_to_dict(t: SearchTrace) -> dict:
    return {
        "restart": t.restart,
        "iterations": t.iterations,
        "start_value": t.start_value,
        "best_value": t.best_value,
        "accepted": t.accepted,
        "rejected": t.rejected,
        "history": list(t.history),
        "best_curve": curve_to_dict(t.best_curve),
    }


def traces_to_json(config: SearchConfig, traces: list[SearchTrace], start: WoundPolygon) -> str:
    best = min(traces, key=lambda t: (t.best_value, t.restart))
    return json.dumps(
        {
            "config": config.to_dict(),
            "start": curve_to_dict(start),
            "best_restart": best.restart,
            "best_value": best.best_value,
            "restarts": [trace_to_dict(t) for t in traces],
        }
    )


def traces_to_csv(traces: list[SearchTrace], digits: int = 12) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["restart", "start_value", "best_value", "iterations", "accepted", "rejected"])
    fmt = f"{{:.{digits}g}}"
    for t in traces:
        w.writerow([t.restart, fmt.format(t.start_value), fmt.format(t.best_value),
                    t.iterations, t.accepted, t.rejected])
    return buf.getvalue()
