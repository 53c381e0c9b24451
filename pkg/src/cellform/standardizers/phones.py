"""Phone number standardization to E.164 ("+" then 2-15 digits)."""
from __future__ import annotations

import re

_PUNCTUATION = re.compile(r"[\s().\-/]")
_COUNTRY_CODE = re.compile(r"^[1-9]\d{0,2}$")

# A national significant number shorter than this cannot be dialed anywhere;
# it is what makes a stray "12" come back missing instead of "+112".
MIN_NATIONAL_DIGITS = 7


def clean_phone_number(value: "str | None", default_country_code: str = "1") -> "str | None":
    if value is None:
        return None
    code = default_country_code.lstrip("+")
    if not _COUNTRY_CODE.match(code):
        raise ValueError(f"bad default country code: {default_country_code!r}")

    text = _PUNCTUATION.sub("", value.strip())
    has_plus = text.startswith("+")
    if has_plus:
        text = text[1:]
    if not text.isdigit():
        return None

    if has_plus:
        number = text
    elif text.startswith("00") and len(text) > 2:
        number = text[2:]  # international dialing prefix
    elif text.startswith(code) and len(text) - len(code) >= MIN_NATIONAL_DIGITS:
        number = text
    else:
        if len(text) < MIN_NATIONAL_DIGITS:
            return None
        number = code + text

    if not 2 <= len(number) <= 15 or number[0] == "0":
        return None
    return "+" + number
