"""In-memory table of text cells.

Cells are either a ``str`` or ``None`` (the missing sentinel). The
configured nan-token is mapped to ``None`` on load and written back out on
save, so a text cell never holds the token itself after ingestion.
Tables are immutable values; every operation returns a new table or a
read-only view.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import BinaryIO, Iterable, NamedTuple

from .errors import DuplicateHeader, EmptyHeaderName, EmptyInput, IoFailure, RaggedRow


@dataclass(frozen=True)
class IngestOptions:
    """Knobs shared by load/save. ``nan_token`` defaults to the empty field;
    pass "NaN" to spell missing values out literally."""

    nan_token: str = ""


@dataclass(frozen=True)
class Table:
    columns: tuple[str, ...]
    rows: tuple[tuple["str | None", ...], ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not self.columns:
            raise EmptyInput("a table needs at least one column")
        seen: set[str] = set()
        for name in self.columns:
            if not name:
                raise EmptyHeaderName("column names must be non-empty")
            if name in seen:
                raise DuplicateHeader(name)
            seen.add(name)
        for i, row in enumerate(self.rows):
            if len(row) != len(self.columns):
                raise RaggedRow(i, len(self.columns), len(row))

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.columns)

    def column_index(self, name: str) -> int:
        try:
            return self.columns.index(name)
        except ValueError:
            raise KeyError(name) from None

    def column_values(self, name: str) -> tuple["str | None", ...]:
        idx = self.column_index(name)
        return tuple(row[idx] for row in self.rows)

    def replace_column(self, name: str, values: Iterable["str | None"]) -> "Table":
        idx = self.column_index(name)
        new_values = tuple(values)
        if len(new_values) != self.m:
            raise ValueError("replacement column length mismatch")
        rows = tuple(
            row[:idx] + (new_values[i],) + row[idx + 1 :] for i, row in enumerate(self.rows)
        )
        return Table(self.columns, rows)


class TableInfo(NamedTuple):
    rows: int
    cols: int
    columns: tuple[str, ...]


def load_csv(source: "BinaryIO | bytes | str", options: IngestOptions | None = None) -> Table:
    """Read an RFC-4180-style CSV (UTF-8, header row required).

    Cells equal to the nan-token become missing; ragged rows are rejected.
    """
    options = options or IngestOptions()
    if isinstance(source, bytes):
        text = source.decode("utf-8-sig")
    elif isinstance(source, str):
        text = source.lstrip("﻿")
    else:
        try:
            text = source.read().decode("utf-8-sig")
        except OSError as exc:
            raise IoFailure(str(exc)) from exc

    reader = csv.reader(io.StringIO(text, newline=""))
    records = [row for row in reader]
    if not records or records[0] == []:
        raise EmptyInput("no header row")
    header = records[0]
    body = records[1:]
    # A trailing newline yields no extra record with csv.reader; empty lines do.
    rows: list[tuple["str | None", ...]] = []
    for i, rec in enumerate(body):
        if len(rec) != len(header):
            raise RaggedRow(i, len(header), len(rec))
        rows.append(tuple(None if cell == options.nan_token else cell for cell in rec))
    return Table(tuple(header), tuple(rows))


def save_csv(table: Table, sink: BinaryIO, options: IngestOptions | None = None) -> None:
    """Write the table back out; ``load_csv(save_csv(t)) == t`` cell-for-cell."""
    options = options or IngestOptions()
    try:
        sink.write(dumps_csv(table, options).encode("utf-8"))
    except OSError as exc:
        raise IoFailure(str(exc)) from exc


def dumps_csv(table: Table, options: IngestOptions | None = None) -> str:
    options = options or IngestOptions()
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([options.nan_token if cell is None else cell for cell in row])
    return buf.getvalue()


def sample_rows(table: Table, k: int, options: IngestOptions | None = None) -> str:
    """CSV-shaped serialization of the first min(k, m) rows, header included.

    Deterministic, so prompts built from it are cache-stable.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    head = Table(table.columns, table.rows[: min(k, table.m)])
    return dumps_csv(head, options)


def table_info(table: Table) -> TableInfo:
    return TableInfo(table.m, table.n, table.columns)
