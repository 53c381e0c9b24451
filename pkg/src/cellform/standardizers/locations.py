"""Latitude/longitude standardization to "(lat,lon)".

The numeric literals are preserved digit-for-digit; only signs, hemisphere
letters, the degree symbol, and spacing are normalized away.
"""
from __future__ import annotations

import re

_COMPONENT = re.compile(
    r"^(?:([NSEWnsew])\s*)?([+-]?)(\d+(?:\.\d+)?)\s*°?\s*([NSEWnsew])?$"
)
_PAIR_COMMA = re.compile(r"^([^,]+),([^,]+)$")
_PAIR_SPACE = re.compile(r"^(\S+(?:\s\S+)?)\s+(\S+(?:\s\S+)?)$")


def _parse_component(text: str, axis: str) -> "str | None":
    """Return the signed digit string, or None. ``axis`` is "lat" or "lon"."""
    m = _COMPONENT.match(text.strip())
    if not m:
        return None
    hem_pre, sign, digits, hem_post = m.groups()
    if hem_pre and hem_post:
        return None
    hemisphere = (hem_pre or hem_post or "").upper()
    if hemisphere:
        if sign:
            return None  # a signed number with a hemisphere is ambiguous
        if axis == "lat" and hemisphere not in "NS":
            return None
        if axis == "lon" and hemisphere not in "EW":
            return None
    negative = sign == "-" or hemisphere in ("S", "W")
    bound = 90.0 if axis == "lat" else 180.0
    if float(digits) > bound:
        return None
    return ("-" if negative else "") + digits


def clean_location(value: "str | None") -> "str | None":
    if value is None:
        return None
    text = " ".join(value.split())
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1].strip()
    pair = _PAIR_COMMA.match(text)
    if pair is None:
        pair = _PAIR_SPACE.match(text)
    if pair is None:
        return None
    lat = _parse_component(pair.group(1), "lat")
    lon = _parse_component(pair.group(2), "lon")
    if lat is None or lon is None:
        return None
    return f"({lat},{lon})"
