"""Cell-level matching rate and timed evaluation runs."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, replace
from typing import Callable

from .errors import EvaluationAborted, ShapeMismatch
from .table import Table


@dataclass(frozen=True)
class EvalReport:
    rate: float
    per_column: "dict[str, float]"
    m: int
    n: int
    mismatches: int
    latency_s: float = 0.0

    def to_wire(self) -> dict:
        return {
            "rate": self.rate,
            "per_column": self.per_column,
            "m": self.m,
            "n": self.n,
            "mismatches": self.mismatches,
            "latency_s": self.latency_s,
        }

    def render(self) -> str:
        lines = [
            f"cell-level matching rate: {self.rate * 100:.1f}%",
            f"rows: {self.m}",
            f"columns: {self.n}",
            f"mismatched cells: {self.mismatches}",
            f"latency: {self.latency_s:.3f}s",
        ]
        for name, value in self.per_column.items():
            lines.append(f"  {name}: {value * 100:.1f}%")
        return "\n".join(lines)

    def render_json(self) -> str:
        return json.dumps(self.to_wire(), ensure_ascii=False)


def _cells_equal(a: "str | None", b: "str | None") -> bool:
    if a is None or b is None:
        return a is b
    return a.rstrip() == b.rstrip()


def cell_match_rate(t_clean: Table, t_gt: Table, per_row_denominator: bool = False) -> EvalReport:
    """Fraction of cells equal between the cleaned table and the ground
    truth (missing only matches missing; trailing whitespace ignored).

    Columns are matched by name, order-insensitively. The denominator is
    the cell count m*n; ``per_row_denominator`` switches to dividing the
    raw match count by m alone, for comparison with reports that sum
    column rates instead of averaging them.
    """
    if set(t_clean.columns) != set(t_gt.columns):
        raise ShapeMismatch(
            f"column names differ: {sorted(t_clean.columns)} vs {sorted(t_gt.columns)}"
        )
    if t_clean.m != t_gt.m:
        raise ShapeMismatch(f"row counts differ: {t_clean.m} vs {t_gt.m}")

    m, n = t_clean.m, t_clean.n
    per_column: dict[str, float] = {}
    total_matches = 0
    for name in t_clean.columns:
        ours = t_clean.column_values(name)
        theirs = t_gt.column_values(name)
        matches = sum(1 for a, b in zip(ours, theirs) if _cells_equal(a, b))
        per_column[name] = matches / m if m else 1.0
        total_matches += matches

    cells = m * n
    mismatches = cells - total_matches
    if per_row_denominator:
        rate = total_matches / m if m else 1.0
    else:
        rate = total_matches / cells if cells else 1.0
    return EvalReport(rate, per_column, m, n, mismatches)


def evaluate_run(
    table: Table, runner: "Callable[[Table], Table]", t_gt: Table
) -> EvalReport:
    """Time the standardization procedure with a monotonic clock, then
    score its output; ground-truth loading stays outside the clock."""
    start = time.perf_counter()
    try:
        cleaned = runner(table)
    except Exception as exc:
        raise EvaluationAborted(exc, time.perf_counter() - start) from exc
    latency = time.perf_counter() - start
    report = cell_match_rate(cleaned, t_gt)
    return replace(report, latency_s=latency)
