"""Person name standardization to "firstname lastname"."""
from __future__ import annotations


def clean_name(value: "str | None") -> "str | None":
    """Swap a single "lastname, firstname" into "firstname lastname";
    keep an already first-last name unchanged. Letter case is preserved.

    A value needs at least two name words (each containing a letter) to
    count as a name, so bare tokens never masquerade as one.
    """
    if value is None:
        return None
    text = " ".join(value.split())
    if not text:
        return None
    commas = text.count(",")
    if commas > 1:
        return None
    if commas == 1:
        last, _, first = text.partition(",")
        last, first = last.strip(), first.strip()
        if not last or not first:
            return None
        text = " ".join(f"{first} {last}".split())
    words = text.split()
    if len(words) < 2:
        return None
    if not all(any(ch.isalpha() for ch in w) for w in words):
        return None
    return text
