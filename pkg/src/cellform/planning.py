"""The declarative cleaning plan: wire format, validation, synthesis, and
execution.

A plan is a JSON array of steps ``{"function", "column", "target_format"?}``
with no other keys allowed; it is what the plan-generator agent emits in
place of procedural code.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .annotator import AnnotationResult
from .coltypes import ColumnType
from .errors import BadTargetFormat, ExecutionError, MalformedPlan, StandardizeError
from .standardizers import (
    CleanOptions,
    DEFAULT_OPTIONS,
    DateFormat,
    FUNCTION_NAMES,
    TYPE_FOR_FUNCTION,
    clean_column,
)
from .table import Table


@dataclass(frozen=True)
class PlanStep:
    function: str
    column: str
    target_format: "str | None" = None

    def to_wire(self) -> dict:
        step: dict = {"function": self.function, "column": self.column}
        if self.target_format is not None:
            step["target_format"] = self.target_format
        return step


@dataclass(frozen=True)
class CleaningPlan:
    steps: tuple[PlanStep, ...]

    def to_wire(self) -> list:
        return [step.to_wire() for step in self.steps]

    def render(self) -> str:
        return json.dumps(self.to_wire(), ensure_ascii=False, indent=1)


_ALLOWED_KEYS = {"function", "column", "target_format"}
_FENCE = re.compile(r"```(?:json)?\s*\n(.*?)```", re.DOTALL)


def _extract_json_array(reply: str) -> list:
    candidates = [reply.strip()]
    candidates.extend(m.group(1).strip() for m in _FENCE.finditer(reply))
    decoder = json.JSONDecoder()
    for text in candidates:
        try:
            value = json.loads(text)
            if isinstance(value, list):
                return value
        except ValueError:
            pass
    # Fall back to scanning for the first parseable array in the prose.
    for idx in (m.start() for m in re.finditer(r"\[", reply)):
        try:
            value, _ = decoder.raw_decode(reply, idx)
        except ValueError:
            continue
        if isinstance(value, list):
            return value
    raise MalformedPlan("reply contains no JSON step array")


def validate_steps(
    raw_steps: list,
    table: Table,
    annotations: "AnnotationResult | None" = None,
) -> CleaningPlan:
    """Check a decoded step array against the wire contract and, when
    annotations are given, against them (a step must target an annotated,
    non-unknown column with the matching clean function)."""
    steps: list[PlanStep] = []
    seen_columns: set[str] = set()
    for i, raw in enumerate(raw_steps):
        if not isinstance(raw, dict):
            raise MalformedPlan(f"step {i} is not an object")
        extra = set(raw) - _ALLOWED_KEYS
        if extra:
            raise MalformedPlan(f"step {i} has unknown fields: {sorted(extra)}")
        function = raw.get("function")
        column = raw.get("column")
        if not isinstance(function, str) or not isinstance(column, str):
            raise MalformedPlan(f"step {i} needs string 'function' and 'column'")
        if function not in TYPE_FOR_FUNCTION:
            raise MalformedPlan(f"step {i} names unknown function {function!r}")
        if column not in table.columns:
            raise MalformedPlan(f"step {i} targets nonexistent column {column!r}")
        if column in seen_columns:
            raise MalformedPlan(f"column {column!r} appears in more than one step")
        seen_columns.add(column)
        target_format = raw.get("target_format")
        if target_format is not None:
            if not isinstance(target_format, str):
                raise MalformedPlan(f"step {i} target_format must be a string")
            if TYPE_FOR_FUNCTION[function] is not ColumnType.DATE:
                raise MalformedPlan(f"step {i}: only clean_date takes a target_format")
            try:
                DateFormat.parse(target_format)
            except BadTargetFormat as exc:
                raise MalformedPlan(f"step {i}: {exc}") from exc
        if annotations is not None:
            annotated = annotations.assignments.get(column)
            if annotated is None or annotated is ColumnType.UNKNOWN:
                raise MalformedPlan(f"step {i} targets unannotated column {column!r}")
            if TYPE_FOR_FUNCTION[function] is not annotated:
                raise MalformedPlan(
                    f"step {i}: {function} does not match column {column!r} "
                    f"annotated as {annotated.value}"
                )
        steps.append(PlanStep(function, column, target_format))
    return CleaningPlan(tuple(steps))


def parse_plan(
    reply: str,
    table: Table,
    annotations: "AnnotationResult | None" = None,
) -> CleaningPlan:
    """Extract the step array from a reply (tolerating prose and code
    fences) and validate it."""
    return validate_steps(_extract_json_array(reply), table, annotations)


def synthesize_steps(
    annotations: "dict[str, ColumnType]",
    required_formats: "dict[str, str]",
    requirements: str = "",
) -> list:
    """Build the default wire-format step list for a set of annotations:
    one step per known-typed column, date formats taken from explicit
    per-column requirements or mined out of the free-form requirement
    text."""
    requirement_format = extract_date_format(requirements)
    steps = []
    for column, ctype in annotations.items():
        if ctype is ColumnType.UNKNOWN:
            continue
        step: dict = {"function": FUNCTION_NAMES[ctype], "column": column}
        if ctype is ColumnType.DATE:
            fmt = required_formats.get(column) or requirement_format
            if fmt:
                step["target_format"] = fmt
        steps.append(step)
    return steps


def extract_date_format(text: str) -> "str | None":
    """Find a date-format pattern written inside free-form text, preferring
    the longest window that parses."""
    tokens = text.split()
    for size in (2, 1):
        for i in range(len(tokens) - size + 1):
            window = " ".join(tokens[i : i + size]).strip("\"'.,;:()")
            if not window:
                continue
            try:
                DateFormat.parse(window)
            except BadTargetFormat:
                continue
            return window
    return None


def execute_plan(plan: CleaningPlan, table: Table, options: CleanOptions = DEFAULT_OPTIONS) -> Table:
    """Apply the plan's clean functions column by column, in order."""
    result = table
    for step in plan.steps:
        try:
            result = clean_column(
                result,
                step.column,
                TYPE_FOR_FUNCTION[step.function],
                step.target_format,
                options,
            )
        except StandardizeError as exc:
            raise ExecutionError(f"step for column {step.column!r} failed: {exc}") from exc
    return result
