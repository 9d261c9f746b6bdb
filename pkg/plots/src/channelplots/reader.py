"""Reading and filtering the sweep CSV.

The file contract (written by the reconstruction harness) is one header
line followed by one row per (method, trial):

    method,scenario,n_qubits,noise_kind,time_constant,target_pattern,
    trial,gate_error,process_error,avg_error,unitarity_error,status,
    min_spectral_gap

Error fields are empty when status is not "ok". This module never
mutates or reorders the file.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

from .errors import EmptySelection, MissingColumn

REQUIRED_COLUMNS = (
    "method", "scenario", "n_qubits", "noise_kind", "time_constant",
    "target_pattern", "trial", "gate_error", "process_error", "avg_error",
    "unitarity_error", "status", "min_spectral_gap",
)

STATUS_OK = "ok"

# filter keys that select rows by string equality
_STRING_KEYS = ("method", "scenario", "noise_kind", "target_pattern", "status")


@dataclass(frozen=True)
class SweepRow:
    method: str
    scenario: str
    n_qubits: int
    noise_kind: str
    time_constant: float
    target_pattern: str
    trial: int
    gate_error: float | None
    unitarity_error: float | None
    status: str

    @property
    def ok(self) -> bool:
        return self.status == STATUS_OK


def _opt_float(text: str) -> float | None:
    return float(text) if text else None


def read_rows(path) -> list[SweepRow]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in REQUIRED_COLUMNS if c not in header]
        if missing:
            raise MissingColumn(
                f"{path} lacks required column(s): {', '.join(missing)}")
        rows = []
        for raw in reader:
            rows.append(SweepRow(
                method=raw["method"],
                scenario=raw["scenario"],
                n_qubits=int(raw["n_qubits"]),
                noise_kind=raw["noise_kind"],
                time_constant=float(raw["time_constant"]),
                target_pattern=raw["target_pattern"],
                trial=int(raw["trial"]),
                gate_error=_opt_float(raw["gate_error"]),
                unitarity_error=_opt_float(raw["unitarity_error"]),
                status=raw["status"],
            ))
    return rows


def apply_filters(rows: list[SweepRow], filters: dict) -> list[SweepRow]:
    """Keep rows matching every filter; unknown keys are rejected.

    String keys compare exactly; "n_qubits" takes an integer;
    "time_constant" takes one value or a comma-separated list.
    """
    for key in filters:
        if key not in _STRING_KEYS + ("n_qubits", "time_constant"):
            raise EmptySelection(f"unknown filter key {key!r}")
    out = rows
    for key, value in filters.items():
        if key in _STRING_KEYS:
            out = [r for r in out if getattr(r, key) == value]
        elif key == "n_qubits":
            out = [r for r in out if r.n_qubits == int(value)]
        else:
            wanted = {float(v) for v in str(value).split(",")}
            out = [r for r in out if r.time_constant in wanted]
    return out
