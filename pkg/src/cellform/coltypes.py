"""The supported semantic column types."""
from __future__ import annotations

from enum import Enum


class ColumnType(str, Enum):
    DATE = "date"
    ADDRESS = "address"
    PHONE_NUMBER = "phone_number"
    LOCATION = "location"
    IP = "ip"
    URL = "url"
    DURATION = "duration"
    TEMPERATURE = "temperature"
    COLOR = "color"
    NAME = "name"
    UNKNOWN = "unknown"

    @classmethod
    def cleanable(cls) -> tuple["ColumnType", ...]:
        """Every type with a clean function, in declaration order (the
        annotator's tie-break order)."""
        return tuple(t for t in cls if t is not cls.UNKNOWN)

    @classmethod
    def from_label(cls, label: str) -> "ColumnType":
        lowered = label.strip().lower()
        for t in cls:
            if t.value == lowered:
                return t
        raise ValueError(f"unknown column type label: {label!r}")
