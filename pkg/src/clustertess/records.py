"""Newline-delimited records: one JSON object per replication.

Coordinates are written as 17-significant-digit decimals, which
round-trip IEEE doubles exactly, and dictionary keys keep a fixed
order, so identical runs produce byte-identical files.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from typing import Iterable, List, Optional, Tuple

import numpy as np

from .clusterprops import ClusterConfiguration
from .geometry import Cluster
from .pointproc import PointConfiguration, Window
from .tessellation import TessellationReport


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"records hold finite numbers only, got {x}")
    return format(float(x), ".17g")


def dumps_value(value) -> str:
    """Serialize to JSON text with deterministic float formatting."""
    if value is None:
        return "null"
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _fmt_float(float(value))
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        return "{" + ",".join(f"{json.dumps(str(k))}:{dumps_value(v)}" for k, v in value.items()) + "}"
    if isinstance(value, (list, tuple, np.ndarray)):
        return "[" + ",".join(dumps_value(v) for v in value) + "]"
    raise TypeError(f"cannot serialize {type(value)!r}")


def window_to_dict(window: Window) -> dict:
    return {
        "low": list(window.low),
        "high": list(window.high),
        "buffer_margin": float(window.buffer_margin),
    }


def window_from_dict(data: dict) -> Window:
    return Window(tuple(data["low"]), tuple(data["high"]), float(data["buffer_margin"]))


def report_to_dict(report: TessellationReport) -> dict:
    return {
        "face_to_face": report.face_to_face,
        "violations": [list(v) for v in report.violations],
        "simplicial": report.simplicial,
        "covered_fraction": report.covered_fraction,
        "coverage_se": report.coverage_se,
        "holes_detected": report.holes_detected,
    }


def report_from_dict(data: dict) -> TessellationReport:
    return TessellationReport(
        face_to_face=data.get("face_to_face"),
        violations=tuple((int(i), int(j)) for i, j in data.get("violations", [])),
        simplicial=data.get("simplicial"),
        covered_fraction=data.get("covered_fraction"),
        coverage_se=data.get("coverage_se"),
        holes_detected=data.get("holes_detected"),
    )


def make_record(
    replication: int,
    eta: PointConfiguration,
    clusters: Optional[ClusterConfiguration] = None,
    report: Optional[TessellationReport] = None,
) -> dict:
    record = {
        "replication": int(replication),
        "window": window_to_dict(eta.window),
        "points": [[float(c) for c in p] for p in eta.points],
        "multiplicities": [int(m) for m in eta.multiplicities],
        "clusters": None,
        "report": None,
    }
    if clusters is not None:
        record["clusters"] = [
            {
                "points": [[float(c) for c in p] for p in cl.points],
                "boundary_uncertain": bool(u),
            }
            for cl, u in zip(clusters.clusters, clusters.boundary_uncertain)
        ]
    if report is not None:
        record["report"] = report_to_dict(report)
    return record


def record_to_objects(
    record: dict,
) -> Tuple[PointConfiguration, Optional[ClusterConfiguration], Optional[TessellationReport]]:
    window = window_from_dict(record["window"])
    eta = PointConfiguration(record["points"], record["multiplicities"], window)
    clusters = None
    if record.get("clusters") is not None:
        clusters = ClusterConfiguration(
            [Cluster(c["points"]) for c in record["clusters"]],
            [bool(c["boundary_uncertain"]) for c in record["clusters"]],
            window,
        )
    report = None
    if record.get("report") is not None:
        report = report_from_dict(record["report"])
    return eta, clusters, report


def dump_records(records: Iterable[dict]) -> str:
    return "".join(dumps_value(r) + "\n" for r in records)


def parse_records(text: str) -> List[dict]:
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def write_text_atomic(path: str, text: str) -> None:
    """Write via a sibling temp file and rename; nothing is left behind
    on failure."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(prefix=".clustertess-", dir=directory)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def read_records_file(path: str) -> List[dict]:
    with open(path, "r") as fh:
        return parse_records(fh.read())
