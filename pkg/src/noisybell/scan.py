"""Closed-form parameter scans, threshold verification and gap reports.

Everything here evaluates closed forms only, so scans stay cheap at any
dimension.  Output is deterministic: records are ordered by (N, F) and reals
are printed with 12 significant digits, which is diff-stable and hides the
last-bit float noise of grid generation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .chsh import chsh_closed_form, violation_threshold
from .sequential import success_probability
from .states import is_separable_family

CSV_HEADER = "N,F,S,violates,threshold,separable,gap,success_prob"

# Strict-violation margin: S must clear 2 by more than accumulated round-off.
VIOLATION_MARGIN = 1e-12


@dataclass(frozen=True)
class ScanRecord:
    """Classification of one (N, F) grid point."""

    dim: int
    noise: float
    s_value: float
    violates: bool
    threshold: float
    separable: bool
    gap: bool
    success_prob: float


def format_real(value: float) -> str:
    return f"{value:.12g}"


def scan_record(n: int, noise: float) -> ScanRecord:
    """Evaluate the closed forms and derive the consistency flags."""
    s_value = chsh_closed_form(n, noise)
    threshold = violation_threshold(n)
    separable = is_separable_family(n, noise)
    return ScanRecord(
        dim=n,
        noise=noise,
        s_value=s_value,
        violates=s_value > 2.0 + VIOLATION_MARGIN,
        threshold=threshold,
        separable=separable,
        gap=noise >= threshold and not separable,
        success_prob=success_probability(n, noise),
    )


def noise_grid(f_min: float, f_max: float, f_step: float) -> list[float]:
    """Inclusive grid f_min, f_min + step, ... clamped into [f_min, f_max]."""
    if f_step <= 0.0:
        raise ValueError(f"grid step must be positive, got {f_step}")
    if not (0.0 <= f_min <= f_max <= 1.0):
        raise ValueError(f"noise range [{f_min}, {f_max}] must lie inside [0, 1]")
    steps = int((f_max - f_min) / f_step + 1e-9)
    return [min(f_min + k * f_step, f_max) for k in range(steps + 1)]


def scan_grid(dims: list[int], f_min: float, f_max: float, f_step: float) -> list[ScanRecord]:
    grid = noise_grid(f_min, f_max, f_step)
    return [scan_record(n, f) for n in sorted(dims) for f in grid]


def bisect_threshold(n: int, tol: float = 1e-12) -> float:
    """Root of chsh_closed_form(n, F) = 2 in F, by bisection.

    Independent check of :func:`violation_threshold`; the closed form is
    strictly decreasing in F, from 2*sqrt(2) at F=0 to 0 at F=1.
    """
    lo, hi = 0.0, 1.0
    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = (lo + hi) / 2.0
        if chsh_closed_form(n, mid) > 2.0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


def threshold_rows(dims: list[int]) -> list[dict]:
    rows = []
    for n in sorted(dims):
        closed = violation_threshold(n)
        root = bisect_threshold(n)
        rows.append(
            {
                "N": n,
                "threshold_closed_form": closed,
                "bisection_root": root,
                "abs_diff": abs(closed - root),
            }
        )
    return rows


def gap_rows(dims: list[int]) -> list[dict]:
    """Noise intervals where the state is entangled but does not violate CHSH."""
    rows = []
    for n in sorted(dims):
        lo = violation_threshold(n)
        hi = n / (n + 1)
        rows.append({"N": n, "gap_lo": lo, "gap_hi": hi, "width": hi - lo})
    return rows


def records_to_csv(records: list[ScanRecord]) -> str:
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            ",".join(
                [
                    str(r.dim),
                    format_real(r.noise),
                    format_real(r.s_value),
                    _bool_str(r.violates),
                    format_real(r.threshold),
                    _bool_str(r.separable),
                    _bool_str(r.gap),
                    format_real(r.success_prob),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def records_to_json(records: list[ScanRecord]) -> str:
    payload = [
        {
            "N": r.dim,
            "F": _rounded(r.noise),
            "S": _rounded(r.s_value),
            "violates": r.violates,
            "threshold": _rounded(r.threshold),
            "separable": r.separable,
            "gap": r.gap,
            "success_prob": _rounded(r.success_prob),
        }
        for r in records
    ]
    return json.dumps(payload, indent=2) + "\n"


def rows_to_csv(rows: list[dict]) -> str:
    if not rows:
        return "\n"
    header = list(rows[0].keys())
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_cell(row[key]) for key in header))
    return "\n".join(lines) + "\n"


def rows_to_json(rows: list[dict]) -> str:
    cleaned = [{k: (_rounded(v) if isinstance(v, float) else v) for k, v in row.items()} for row in rows]
    return json.dumps(cleaned, indent=2) + "\n"


def _bool_str(flag: bool) -> str:
    return "true" if flag else "false"


def _cell(value: object) -> str:
    if isinstance(value, bool):
        return _bool_str(value)
    if isinstance(value, float):
        return format_real(value)
    return str(value)


def _rounded(value: float) -> float:
    return float(format_real(value))
