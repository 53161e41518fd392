"""Two-setting / two-outcome behavior tables and their on-disk format.

A behavior table stores P(a, b | x, y) for settings x, y in {0, 1} and
outcomes a, b in {+1, -1}.  Outcome index 0 means +1.  The flat serialization
order is lexicographic in (x, y, a, b) with b varying fastest, which is also
the order of the 16-entry ``px`` list in the JSON file format::

    {"settings": [2, 2], "outcomes": [2, 2], "px": [p0000, p0001, ...]}

``px`` is mandatory; ``settings`` and ``outcomes`` are validated when present
and must equal [2, 2].  Unknown keys (e.g. ``meta``) are ignored on load.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

FLAT_LENGTH = 16


class TableFormatError(ValueError):
    """A behavior-table file or array failed parsing or validation."""


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class BehaviorTable:
    """Probabilities indexed [x][y][a][b] with outcome index 0 = +1."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        probs = np.array(self.probs, dtype=float)
        if probs.shape != (2, 2, 2, 2):
            raise TableFormatError(f"behavior table must have shape (2,2,2,2), got {probs.shape}")
        if not np.all(np.isfinite(probs)):
            raise TableFormatError("behavior table contains non-finite entries")
        object.__setattr__(self, "probs", _freeze(probs))

    @classmethod
    def uniform(cls) -> "BehaviorTable":
        return cls(np.full((2, 2, 2, 2), 0.25))

    @classmethod
    def from_flat(cls, values: object) -> "BehaviorTable":
        flat = np.array(values, dtype=float).reshape(-1)
        if flat.size != FLAT_LENGTH:
            raise TableFormatError(f"flat behavior table must have 16 entries, got {flat.size}")
        return cls(flat.reshape(2, 2, 2, 2))

    def to_flat(self) -> list[float]:
        return [float(v) for v in self.probs.reshape(-1)]

    def setting_distribution(self, x: int, y: int) -> np.ndarray:
        """The 2x2 outcome distribution for one setting pair."""
        return self.probs[x, y]

    def correlator(self, x: int, y: int) -> float:
        """E(x, y) = P(++) - P(+-) - P(-+) + P(--)."""
        p = self.probs[x, y]
        return float(p[0, 0] - p[0, 1] - p[1, 0] + p[1, 1])

    def normalization_defect(self) -> float:
        """Largest deviation of a per-setting total from 1."""
        return float(np.max(np.abs(self.probs.sum(axis=(2, 3)) - 1.0)))

    def min_entry(self) -> float:
        return float(self.probs.min())

    def signaling_defect(self) -> float:
        """How much one side's marginals depend on the other side's setting."""
        marg_a = self.probs.sum(axis=3)  # [x][y][a]
        marg_b = self.probs.sum(axis=2)  # [x][y][b]
        defect_a = np.max(np.abs(marg_a[:, 0, :] - marg_a[:, 1, :]))
        defect_b = np.max(np.abs(marg_b[0, :, :] - marg_b[1, :, :]))
        return float(max(defect_a, defect_b))

    def is_no_signaling(self, tol: float = 1e-8) -> bool:
        return self.signaling_defect() <= tol

    def validate(self, normalization_tol: float = 1e-6, negativity_tol: float = 1e-12) -> None:
        """Raise :class:`TableFormatError` unless entries and totals are sound."""
        if self.min_entry() < -negativity_tol:
            raise TableFormatError(f"behavior table has negative entry {self.min_entry()}")
        defect = self.normalization_defect()
        if defect > normalization_tol:
            raise TableFormatError(f"per-setting totals deviate from 1 by {defect}")


def table_to_json(table: BehaviorTable, meta: dict | None = None) -> str:
    """Serialize a table to the canonical JSON format (exact float round trip)."""
    payload: dict = {"settings": [2, 2], "outcomes": [2, 2], "px": table.to_flat()}
    if meta:
        payload["meta"] = meta
    return json.dumps(payload, indent=2) + "\n"


def table_from_json(text: str) -> BehaviorTable:
    """Parse and validate the canonical JSON format."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TableFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise TableFormatError("table file must contain a JSON object")
    for key in ("settings", "outcomes"):
        if key in payload and list(payload[key]) != [2, 2]:
            raise TableFormatError(f"unsupported {key} {payload[key]}; only [2, 2] scenarios")
    if "px" not in payload:
        raise TableFormatError("table file is missing the 'px' probability list")
    px = payload["px"]
    if not isinstance(px, list) or len(px) != FLAT_LENGTH:
        raise TableFormatError("'px' must be a list of 16 probabilities")
    try:
        table = BehaviorTable.from_flat([float(v) for v in px])
    except (TypeError, ValueError) as exc:
        raise TableFormatError(f"'px' entries are not all numeric: {exc}") from exc
    table.validate()
    return table


def save_table(table: BehaviorTable, path: str | Path, meta: dict | None = None) -> None:
    Path(path).write_text(table_to_json(table, meta=meta), encoding="utf-8")


def load_table(path: str | Path) -> BehaviorTable:
    return table_from_json(Path(path).read_text(encoding="utf-8"))
