"""Duration and temperature standardization."""
from __future__ import annotations

import re
from decimal import ROUND_HALF_UP, Decimal

_CLOCK = re.compile(r"^(\d+):([0-5]\d)(?::([0-5]\d))?$")
_QUANTITY = re.compile(r"(\d+(?:\.\d+)?)\s*([a-z]+)")
_QUANTITY_SHAPE = re.compile(r"^(?:\s*\d+(?:\.\d+)?\s*[a-z]+\s*,?)+\s*$")

_UNIT_SECONDS = {
    "h": 3600, "hr": 3600, "hrs": 3600, "hour": 3600, "hours": 3600,
    "m": 60, "min": 60, "mins": 60, "minute": 60, "minutes": 60,
    "s": 1, "sec": 1, "secs": 1, "second": 1, "seconds": 1,
}


def clean_duration(value: "str | None") -> "str | None":
    """Normalize to zero-padded "hh:mm:ss"; hours widen past two digits as
    needed. Accepts clock forms and descending unit-suffixed quantities."""
    if value is None:
        return None
    text = value.strip().lower()
    if not text:
        return None

    clock = _CLOCK.match(text)
    if clock:
        h, m, s = clock.groups()
        total = int(h) * 3600 + int(m) * 60 + int(s or 0)
        return _render_duration(total)

    if not _QUANTITY_SHAPE.match(text):
        return None
    seen_scales: list[int] = []
    total_seconds = Decimal(0)
    for amount, unit in _QUANTITY.findall(text):
        scale = _UNIT_SECONDS.get(unit)
        if scale is None:
            return None
        if seen_scales and scale >= seen_scales[-1]:
            return None  # units must strictly descend, no repeats
        seen_scales.append(scale)
        total_seconds += Decimal(amount) * scale
    total = int(total_seconds.quantize(Decimal(1), rounding=ROUND_HALF_UP))
    return _render_duration(total)


def _render_duration(total: int) -> str:
    return f"{total // 3600:02d}:{total % 3600 // 60:02d}:{total % 60:02d}"


_TEMPERATURE = re.compile(
    r"^([+-]?\d+(?:\.\d+)?)\s*"
    r"(℃|℉|°\s*[cfk]|celsius|fahrenheit|kelvins?|[cfk])?$",
    re.IGNORECASE,
)

CELSIUS_SIGN = "℃"


def clean_temperature(value: "str | None") -> "str | None":
    """Convert to Celsius and emit "{number}℃" with up to two decimals
    (half-up, trailing zeros trimmed). A bare number reads as Celsius."""
    if value is None:
        return None
    m = _TEMPERATURE.match(value.strip())
    if not m:
        return None
    number = Decimal(m.group(1))
    unit = (m.group(2) or "c").lower().lstrip("°").strip()
    if unit in ("℃", "celsius") or unit == "c":
        celsius = number
    elif unit in ("℉", "fahrenheit") or unit == "f":
        celsius = (number - 32) * 5 / 9
    else:  # kelvin
        celsius = number - Decimal("273.15")
    rendered = str(celsius.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))
    if "." in rendered:
        rendered = rendered.rstrip("0").rstrip(".")
    if rendered == "-0":
        rendered = "0"
    return rendered + CELSIUS_SIGN
