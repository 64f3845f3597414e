"""Versioned JSON report envelope, CSV summaries and the shipped JSON schemas."""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from importlib import resources
from typing import Any, Dict, List, Optional

SCHEMA_VERSION = "1.0"
COMMANDS = ("construct", "rho", "detect", "enumerate", "spex", "turan", "verify")


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="milliseconds")


@dataclass
class RunConfig:
    """Echo of the resolved invocation: command, flags, tolerance and workers."""

    command: str
    flags: Dict[str, Any] = field(default_factory=dict)
    tol: Optional[float] = None
    workers: int = 1
    out: Optional[str] = None
    csv: Optional[str] = None
    log_level: str = "WARNING"

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "flags": dict(sorted(self.flags.items())),
            "tol": self.tol,
            "workers": self.workers,
            "out": self.out,
            "csv": self.csv,
            "logLevel": self.log_level,
        }


@dataclass
class ReportEnvelope:
    command: str
    config: RunConfig
    payload: Any = None
    started_at: str = field(default_factory=_now)
    finished_at: Optional[str] = None
    wall_time: Optional[float] = None
    _t0: float = field(default_factory=time.perf_counter, repr=False)

    def finish(self, payload: Any) -> "ReportEnvelope":
        self.payload = payload
        self.finished_at = _now()
        self.wall_time = round(time.perf_counter() - self._t0, 6)
        return self

    def to_dict(self) -> dict:
        return {
            "schemaVersion": SCHEMA_VERSION,
            "command": self.command,
            "config": self.config.to_dict(),
            "startedAt": self.started_at,
            "finishedAt": self.finished_at,
            "wallTime": self.wall_time,
            "payload": self.payload,
        }


def dumps(obj: Any) -> str:
    """Canonical JSON text: sorted keys, compact separators."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def payload_bytes(envelope: dict) -> bytes:
    """The deterministic part of a report, for byte comparisons."""
    return dumps(envelope["payload"]).encode()


def load_schema(name: str) -> dict:
    """Load ``schemas/<name>.json`` shipped with the package."""
    text = resources.files("spexgraph").joinpath("schemas", f"{name}.json").read_text()
    return json.loads(text)


def validate(envelope: dict) -> None:
    """Validate an envelope and its payload; raises ``jsonschema.ValidationError``."""
    import jsonschema

    jsonschema.validate(envelope, load_schema("envelope"))
    jsonschema.validate(envelope["payload"], load_schema(envelope["command"]))


# CSV summaries ----------------------------------------------------------------------

def csv_rows(command: str, payload: dict) -> List[List[Any]]:
    """Flat rows for the spreadsheet summary of ``payload``; first row is the header."""
    if command == "verify":
        rows = [["theorem", "n", "status", "margin", "extremalGraph6", "notes"]]
        tid = payload["theorem"]["id"]
        rows += [[tid, e["n"], e["status"], e["margin"], e["extremalGraph6"], e["notes"]]
                 for e in payload["perN"]]
        return rows
    if command == "spex":
        return [["n", "predicate", "mode", "objective", "best", "m", "visited", "budgetExhausted"],
                [payload["n"], payload["predicate"], payload["mode"], payload["objective"],
                 payload["best"], payload["m"], payload["visited"], payload["budgetExhausted"]]]
    if command == "turan":
        return [["n", "predicate", "maxEdges", "extremalCount", "visited"],
                [payload["n"], payload["predicate"], payload["maxEdges"],
                 len(payload["extremal"]), payload["visited"]]]
    recs = payload["records"]
    if command == "rho":
        return [["graph6", "n", "m", "rho", "iterations"]] + [
            [r["graph6"], r["n"], r["m"], r["rho"], r["iterations"]] for r in recs]
    if command == "detect":
        return [["graph6", "what", "result", "nodesExplored"]] + [
            [r["graph6"], r["what"], r["result"], r["nodesExplored"]] for r in recs]
    return [["graph6", "n", "m"]] + [[r["graph6"], r["n"], r["m"]] for r in recs]


def to_csv(command: str, payload: dict) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(csv_rows(command, payload))
    return buf.getvalue()


__all__ = [
    "SCHEMA_VERSION",
    "COMMANDS",
    "RunConfig",
    "ReportEnvelope",
    "dumps",
    "payload_bytes",
    "load_schema",
    "validate",
    "csv_rows",
    "to_csv",
]
