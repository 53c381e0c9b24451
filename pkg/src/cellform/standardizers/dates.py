"""Datetime standardization.

A messy datetime string goes through the usual three moves: split it into
tokens, validate every token (month names, numeric ranges, meridiem), then
recombine the components into the caller's target format. Anything that
fails validation comes back as missing rather than raising.
"""
from __future__ import annotations

import datetime
import re
from dataclasses import dataclass

from ..errors import BadTargetFormat

MONTHS = {
    "jan": 1, "january": 1,
    "feb": 2, "february": 2,
    "mar": 3, "march": 3,
    "apr": 4, "april": 4,
    "may": 5,
    "jun": 6, "june": 6,
    "jul": 7, "july": 7,
    "aug": 8, "august": 8,
    "sep": 9, "sept": 9, "september": 9,
    "oct": 10, "october": 10,
    "nov": 11, "november": 11,
    "dec": 12, "december": 12,
}

WEEKDAYS = {
    "mon", "monday", "tue", "tues", "tuesday", "wed", "weds", "wednesday",
    "thu", "thur", "thurs", "thursday", "fri", "friday", "sat", "saturday",
    "sun", "sunday",
}

# Era and filler tokens dropped during the split; "bc" is handled separately
# because there is no negative-year output format.
FILLERS = {"ad", "at", "on", "t", "utc", "gmt", "z"}

MERIDIEM = {"am": "am", "a": "am", "pm": "pm", "p": "pm"}

# Compact "+0500" offsets are only recognized right after a digit so a
# trailing "-2011" year is never mistaken for one.
_TZ_SUFFIX = re.compile(
    r"(?:\s*[+-]\d{2}:\d{2}|(?<=\d)[+-]\d{4}|\s*\b(?:utc|gmt)|(?<=\d)z)\s*$", re.IGNORECASE
)
_TIME = re.compile(r"(?<![\d:])(\d{1,2}):(\d{2})(?::(\d{2}))?(?![\d:])")
_ORDINAL = re.compile(r"(?<=\d)(st|nd|rd|th)\b", re.IGNORECASE)
_MERIDIEM_DOTTED = re.compile(r"\b([ap])\.\s?m\.?", re.IGNORECASE)
_SEPARATORS = re.compile(r"[ ,./\-:]+")
_CASE_OR_KIND_BOUNDARY = re.compile(r"(?<=\d)(?=[A-Za-z])|(?<=[A-Za-z])(?=\d)|(?<=[a-z])(?=[A-Z])")


@dataclass(frozen=True)
class DateFormat:
    """A parsed target format: literal pieces interleaved with component
    tokens. In the pattern string, MM before the first hour token means
    month and after it means minute; case is not significant."""

    pattern: str
    parts: tuple[tuple[str, str], ...]  # (kind, text); kind "lit" or a field name

    FIELDS = ("year", "month", "day", "hour", "minute", "second")

    @classmethod
    def parse(cls, pattern: str) -> "DateFormat":
        parts: list[tuple[str, str]] = []
        seen_hour = False
        fields_used: list[str] = []
        for run in re.finditer(r"[A-Za-z]+|[^A-Za-z]+", pattern):
            text = run.group(0)
            if not text[0].isalpha():
                parts.append(("lit", text))
                continue
            token = text.upper()
            if token == "YYYY":
                field = "year"
            elif token == "DD":
                field = "day"
            elif token == "HH":
                field = "hour"
                seen_hour = True
            elif token == "SS":
                field = "second"
            elif token == "MM":
                field = "minute" if seen_hour else "month"
            else:
                raise BadTargetFormat(f"unrecognized token {text!r} in {pattern!r}")
            if field in fields_used:
                raise BadTargetFormat(f"duplicate {field} token in {pattern!r}")
            fields_used.append(field)
            parts.append((field, text))
        for required in ("year", "month", "day"):
            if required not in fields_used:
                raise BadTargetFormat(f"{pattern!r} lacks a {required} token")
        return cls(pattern, tuple(parts))

    def render(self, c: "DateComponents") -> str:
        values = {
            "year": f"{c.year:04d}",
            "month": f"{c.month:02d}",
            "day": f"{c.day:02d}",
            "hour": f"{c.hour:02d}",
            "minute": f"{c.minute:02d}",
            "second": f"{c.second:02d}",
        }
        return "".join(text if kind == "lit" else values[kind] for kind, text in self.parts)

    def matcher(self) -> re.Pattern:
        """Regex an output of render() must match; used by shape tests."""
        pieces = []
        for kind, text in self.parts:
            if kind == "lit":
                pieces.append(re.escape(text))
            elif kind == "year":
                pieces.append(r"\d{4}")
            else:
                pieces.append(r"\d{2}")
        return re.compile("^" + "".join(pieces) + "$")


DEFAULT_DATE_FORMAT = "YYYY-MM-DD hh:mm:ss"


@dataclass(frozen=True)
class DateComponents:
    year: int
    month: int
    day: int
    hour: int = 0
    minute: int = 0
    second: int = 0


def _split(value: str) -> "tuple[list[str], tuple[int, int, int | None] | None] | None":
    """Tokenize; returns (tokens, time) or None when the string cannot even
    be tokenized (duplicate clock patterns)."""
    text = _TZ_SUFFIX.sub("", value.strip())
    text = _MERIDIEM_DOTTED.sub(lambda m: m.group(1) + "m", text)
    text = _ORDINAL.sub("", text)

    times = _TIME.findall(text)
    if len(times) > 1:
        return None
    time_parts: "tuple[int, int, int | None] | None" = None
    if times:
        h, mi, s = times[0]
        time_parts = (int(h), int(mi), int(s) if s else None)
        text = _TIME.sub(" ", text, count=1)

    tokens: list[str] = []
    for chunk in _SEPARATORS.split(text):
        if not chunk:
            continue
        tokens.extend(t for t in _CASE_OR_KIND_BOUNDARY.split(chunk) if t)
    return tokens, time_parts


def _assign_date_numbers(
    numbers: list[str], month: "int | None", day_month_order: bool
) -> "tuple[int | None, int | None, int | None] | None":
    """Map leftover numeric tokens onto (year, month, day). Returns None on
    an arrangement no calendar reading supports."""
    year: "int | None" = None
    four_digit = [n for n in numbers if len(n) == 4]
    if len(four_digit) > 1:
        return None
    if four_digit:
        year = int(four_digit[0])
        year_pos = numbers.index(four_digit[0])
        rest = [n for i, n in enumerate(numbers) if i != year_pos]
    else:
        year_pos = -1
        rest = list(numbers)

    day: "int | None" = None
    if month is not None:
        # Month is named; remaining numbers are day and, optionally, a year.
        if len(rest) > 2 - (0 if year is None else 1):
            return None
        if rest:
            day = int(rest[0])
        if len(rest) == 2 and year is None:
            year = _expand_two_digit_year(rest[1])
            if year is None:
                return None
        return year, month, day

    if year is None and len(rest) == 3:
        year = _expand_two_digit_year(rest[2])
        if year is None:
            return None
        rest = rest[:2]
    if len(rest) > 2:
        return None
    if len(rest) == 2:
        if year is not None and year_pos == 0:
            first, second = int(rest[0]), int(rest[1])  # ISO order after year
            month, day = first, second
        else:
            a, b = int(rest[0]), int(rest[1])
            month, day = (b, a) if day_month_order else (a, b)
            if year is None:
                return None  # bare pair like "12/25" needs the reference year
        if month > 12 and day <= 12:
            month, day = day, month
    elif len(rest) == 1:
        return None  # a lone day or month is not a date
    return year, month, day


def _expand_two_digit_year(token: str) -> "int | None":
    if len(token) == 3:
        return None
    value = int(token)
    if len(token) == 4:
        return value
    return value + (2000 if value <= 68 else 1900)


def parse_date(
    value: str,
    *,
    day_month_order: bool = False,
    reference_year: "int | None" = None,
) -> "DateComponents | None":
    split = _split(value)
    if split is None:
        return None
    tokens, time_parts = split

    month: "int | None" = None
    meridiem: "str | None" = None
    numbers: list[str] = []
    for token in tokens:
        lowered = token.lower()
        if lowered in WEEKDAYS or lowered in FILLERS:
            continue
        if lowered == "bc":
            return None
        if lowered in MONTHS:
            if month is not None:
                return None
            month = MONTHS[lowered]
        elif lowered in MERIDIEM:
            if meridiem is not None or time_parts is None:
                return None
            meridiem = MERIDIEM[lowered]
        elif token.isdigit():
            numbers.append(token)
        else:
            return None

    # Special case: bare year-pair like "12/25" with a reference year.
    if reference_year is not None and month is None and len(numbers) == 2 and all(
        len(n) != 4 for n in numbers
    ):
        a, b = int(numbers[0]), int(numbers[1])
        m, d = (b, a) if day_month_order else (a, b)
        if m > 12 and d <= 12:
            m, d = d, m
        assigned = (None, m, d)
    else:
        assigned = _assign_date_numbers(numbers, month, day_month_order)
        if assigned is None:
            return None
    year, month, day = assigned
    if year is None:
        year = reference_year
    if year is None or month is None or day is None:
        return None

    hour = minute = second = 0
    if time_parts is not None:
        hour, minute, second = time_parts[0], time_parts[1], time_parts[2] or 0
    if meridiem is not None:
        if not 1 <= hour <= 12:
            return None
        if meridiem == "pm" and hour != 12:
            hour += 12
        elif meridiem == "am" and hour == 12:
            hour = 0

    if not (1 <= year <= 9999 and 0 <= hour <= 23 and 0 <= minute <= 59 and 0 <= second <= 59):
        return None
    try:
        datetime.date(year, month, day)
    except ValueError:
        return None
    return DateComponents(year, month, day, hour, minute, second)


def clean_date(
    value: "str | None",
    target_format: "str | DateFormat | None" = None,
    *,
    day_month_order: bool = False,
    reference_year: "int | None" = None,
) -> "str | None":
    """Standardize one datetime cell into ``target_format`` (default
    "YYYY-MM-DD hh:mm:ss"); unrecognizable or calendar-invalid input is
    missing."""
    fmt = (
        target_format
        if isinstance(target_format, DateFormat)
        else DateFormat.parse(target_format or DEFAULT_DATE_FORMAT)
    )
    if value is None:
        return None
    components = parse_date(
        value, day_month_order=day_month_order, reference_year=reference_year
    )
    if components is None:
        return None
    return fmt.render(components)
