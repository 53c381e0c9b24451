"""US-shaped street address standardization.

Comma-separated segments are matched against a fixed slot grammar
(house number, street, city, USPS state code, zip, country, unit) and the
recognized parts are re-emitted in one canonical order, skipping whatever
is absent. The grammar is deliberately strict: a value with fewer than two
recognized parts, or with no anchoring part (house number, unit, state, or
zip), is treated as not-an-address.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

USPS_STATES = {
    "AL", "AK", "AZ", "AR", "CA", "CO", "CT", "DE", "FL", "GA", "HI", "ID",
    "IL", "IN", "IA", "KS", "KY", "LA", "ME", "MD", "MA", "MI", "MN", "MS",
    "MO", "MT", "NE", "NV", "NH", "NJ", "NM", "NY", "NC", "ND", "OH", "OK",
    "OR", "PA", "RI", "SC", "SD", "TN", "TX", "UT", "VT", "VA", "WA", "WV",
    "WI", "WY", "DC", "AS", "GU", "MP", "PR", "VI", "AA", "AE", "AP",
}

STREET_SUFFIXES = {
    "st", "street", "ave", "avenue", "av", "rd", "road", "blvd", "boulevard",
    "dr", "drive", "ln", "lane", "way", "ct", "court", "pl", "place", "ter",
    "terrace", "cir", "circle", "pkwy", "parkway", "hwy", "highway", "sq",
    "square", "trl", "trail", "aly", "alley", "loop", "run", "row", "walk",
    "bend", "crossing", "pike", "plaza",
}

COUNTRIES = {
    "usa": "USA", "us": "US", "u.s.": "U.S.", "u.s.a.": "U.S.A.",
    "united states": "United States",
    "united states of america": "United States of America",
}

_UNIT = re.compile(
    r"(?:\b(?:apt|apartment|unit)\b\.?\s*#?\s*|#\s*)([A-Za-z0-9-]+)", re.IGNORECASE
)
_HOUSE_STREET = re.compile(r"^(\d+[A-Za-z]?)\s+(.+)$")
_BARE_HOUSE = re.compile(r"^\d{1,6}[A-Za-z]?$")
_STATE_ZIP = re.compile(r"^([A-Za-z]{2})\s+(\d{5}(?:-\d{4})?)$")
_ZIP = re.compile(r"^\d{5}(?:-\d{4})?$")
_CITY = re.compile(r"^[A-Za-z][A-Za-z .'\-]*$")


@dataclass
class AddressComponents:
    apartment: "str | None" = None
    house_number: "str | None" = None
    street_name: "str | None" = None
    city: "str | None" = None
    state: "str | None" = None
    country: "str | None" = None
    zipcode: "str | None" = None

    def present(self) -> list[str]:
        return [f for f in vars(self).values() if f is not None]

    def anchored(self) -> bool:
        return any(
            f is not None
            for f in (self.apartment, self.house_number, self.state, self.zipcode)
        )


def _is_street(text: str) -> bool:
    words = text.split()
    if not words:
        return False
    if words[-1].rstrip(".").lower() not in STREET_SUFFIXES:
        return False
    return any(w.isalpha() and len(w) >= 2 for w in words)


def parse_address(value: str) -> "AddressComponents | None":
    text = " ".join(value.split())
    parts = AddressComponents()

    unit = _UNIT.search(text)
    if unit:
        parts.apartment = unit.group(1)
        text = (text[: unit.start()] + " " + text[unit.end() :]).strip(" ,")

    segments = [seg.strip() for seg in text.split(",")]
    segments = [seg for seg in segments if seg]
    for pos, seg in enumerate(segments):
        state_zip = _STATE_ZIP.match(seg)
        if state_zip and state_zip.group(1).upper() in USPS_STATES and not parts.state:
            parts.state = state_zip.group(1).upper()
            parts.zipcode = state_zip.group(2)
            continue
        if len(seg) == 2 and seg.upper() in USPS_STATES and not parts.state:
            parts.state = seg.upper()
            continue
        if _ZIP.match(seg) and pos > 0 and not parts.zipcode:
            parts.zipcode = seg
            continue
        if seg.lower() in COUNTRIES and not parts.country:
            parts.country = seg
            continue
        if pos == 0 and not parts.street_name:
            inline = _HOUSE_STREET.match(seg)
            if inline and _is_street(inline.group(2)):
                parts.house_number = inline.group(1)
                parts.street_name = inline.group(2)
                continue
            if _BARE_HOUSE.match(seg):
                parts.house_number = seg
                continue
        if not parts.street_name and not parts.city and _is_street(seg):
            parts.street_name = seg
            continue
        if not parts.city and len(seg) >= 2 and _CITY.match(seg):
            parts.city = seg
            continue
        return None  # segment fits no open slot

    if len(parts.present()) < 2 or not parts.anchored():
        return None
    return parts


def render_address(parts: AddressComponents) -> str:
    pieces: list[str] = []
    if parts.apartment:
        pieces.append(f"Apt {parts.apartment}")
    for field in (
        parts.house_number,
        parts.street_name,
        parts.city,
        parts.state,
        parts.country,
        parts.zipcode,
    ):
        if field:
            pieces.append(field)
    return ", ".join(pieces)


def clean_address(value: "str | None") -> "str | None":
    if value is None:
        return None
    parts = parse_address(value)
    if parts is None:
        return None
    return render_address(parts)
