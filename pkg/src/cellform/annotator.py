"""Column type annotation: deterministic validator voting, plus the prompt
builder and reply parser for the LLM round."""
from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources

from .coltypes import ColumnType
from .errors import EmptyCandidates, MalformedAnnotation
from .standardizers import CleanOptions, DEFAULT_OPTIONS, validate
from .table import Table, sample_rows

UNKNOWN_LABEL = "I do not know"

DEFAULT_SAMPLE_SIZE = 100
DEFAULT_THRESHOLD = 0.8


def _load_template(name: str) -> str:
    return resources.files("cellform.prompts").joinpath(name).read_text(encoding="utf-8")


@dataclass(frozen=True)
class CandidateTypes:
    """Ordered candidate set; order doubles as the voting tie-break."""

    candidates: tuple[ColumnType, ...] = ColumnType.cleanable()

    def __post_init__(self):
        if not self.candidates:
            raise EmptyCandidates("need at least one candidate type")
        if ColumnType.UNKNOWN in self.candidates:
            raise ValueError("unknown is not a candidate")
        if len(set(self.candidates)) != len(self.candidates):
            raise ValueError("duplicate candidate")

    @classmethod
    def from_labels(cls, labels: "list[str] | str") -> "CandidateTypes":
        if isinstance(labels, str):
            labels = [piece for piece in labels.split(",") if piece.strip()]
        return cls(tuple(ColumnType.from_label(label) for label in labels))

    def labels(self) -> str:
        return ", ".join(t.value for t in self.candidates)


@dataclass(frozen=True)
class AnnotationResult:
    assignments: "dict[str, ColumnType]"
    source: str  # "rules" or "llm"

    def render(self) -> str:
        """The "**name: class**" block announced in the prompt."""
        lines = []
        for name, ctype in self.assignments.items():
            label = UNKNOWN_LABEL if ctype is ColumnType.UNKNOWN else ctype.value
            lines.append(f"**{name}: {label}**")
        return "\n".join(lines)


def infer_types_rules(
    table: Table,
    candidates: CandidateTypes = CandidateTypes(),
    sample_size: int = DEFAULT_SAMPLE_SIZE,
    threshold: float = DEFAULT_THRESHOLD,
    options: CleanOptions = DEFAULT_OPTIONS,
) -> AnnotationResult:
    """Vote each column's type by running validators over a sample prefix.

    The best candidate wins if its pass fraction reaches the threshold;
    ties go to the earlier candidate. Columns with no evidence stay
    unknown.
    """
    if sample_size < 1:
        raise ValueError("sample_size must be >= 1")
    if not 0 < threshold <= 1:
        raise ValueError("threshold must be in (0, 1]")
    assignments: dict[str, ColumnType] = {}
    for name in table.columns:
        values = [v for v in table.column_values(name) if v is not None][:sample_size]
        best = ColumnType.UNKNOWN
        best_fraction = 0.0
        if values:
            for candidate in candidates.candidates:
                passed = sum(1 for v in values if validate(v, candidate, options))
                fraction = passed / len(values)
                if fraction >= threshold and fraction > best_fraction:
                    best, best_fraction = candidate, fraction
        assignments[name] = best
    return AnnotationResult(assignments, source="rules")


def build_annotator_prompt(
    table: Table,
    candidates: CandidateTypes = CandidateTypes(),
    sample_size: int = DEFAULT_SAMPLE_SIZE,
) -> str:
    template = _load_template("annotator.txt")
    return template.replace("{candidate_column_types}", candidates.labels()).replace(
        "{df}", sample_rows(table, sample_size)
    )


_REPLY_LINE = re.compile(r"^\**\s*(.+?)\s*:\s*(.+?)\s*\**\s*$")


def parse_annotation_reply(
    reply: str,
    columns: "list[str] | tuple[str, ...]",
    candidates: CandidateTypes = CandidateTypes(),
) -> AnnotationResult:
    """Pull "name: class" pairs out of the reply, tolerating ** markers and
    surrounding prose. Every column must be covered by a candidate class or
    "I do not know"."""
    by_label = {t.value.lower(): t for t in candidates.candidates}
    assignments: dict[str, ColumnType] = {}
    remaining = set(columns)
    for line in reply.splitlines():
        m = _REPLY_LINE.match(line.strip())
        if not m:
            continue
        name, label = m.group(1).strip("* "), m.group(2).strip("* ")
        if name not in remaining:
            continue
        lowered = label.lower().rstrip(".!")
        if lowered == UNKNOWN_LABEL.lower():
            ctype = ColumnType.UNKNOWN
        elif lowered in by_label:
            ctype = by_label[lowered]
        else:
            raise MalformedAnnotation(f"class {label!r} for column {name!r} is not a candidate")
        assignments[name] = ctype
        remaining.discard(name)
    if remaining:
        raise MalformedAnnotation(f"columns left unclassified: {sorted(remaining)}")
    # Keep table column order regardless of reply order.
    ordered = {name: assignments[name] for name in columns}
    return AnnotationResult(ordered, source="llm")
