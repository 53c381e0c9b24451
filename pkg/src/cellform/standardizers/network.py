"""IP address and URL standardization."""
from __future__ import annotations

import ipaddress
import json
import re
from urllib.parse import urlsplit

_V4 = re.compile(r"^\d{1,3}(\.\d{1,3}){3}$")
_PREFIX = re.compile(r"^\d{1,3}$")


def clean_ip(value: "str | None") -> "str | None":
    """Canonicalize an IPv4/IPv6 address, dropping any "/prefix" suffix.

    IPv4 octets lose leading zeros; IPv6 collapses to its shortest
    lowercase form.
    """
    if value is None:
        return None
    text = value.strip()
    if "/" in text:
        text, _, prefix = text.partition("/")
        if not _PREFIX.match(prefix):
            return None
    if _V4.match(text):
        octets = [int(p) for p in text.split(".")]
        if any(o > 255 for o in octets):
            return None
        return ".".join(str(o) for o in octets)
    try:
        return str(ipaddress.IPv6Address(text))
    except ValueError:
        return None


_URL_KEYS = ["scheme", "host", "url_clean", "queries"]


def _emit_url(scheme: str, host: str, url_clean: str, queries: "dict[str, str]") -> str:
    payload = {"scheme": scheme, "host": host, "url_clean": url_clean, "queries": queries}
    return json.dumps(payload, separators=(",", ":"), ensure_ascii=False)


def _reparse_canonical(text: str) -> "str | None":
    """Accept this cleaner's own JSON output so re-cleaning is a no-op."""
    try:
        obj = json.loads(text)
    except ValueError:
        return None
    if not isinstance(obj, dict) or list(obj.keys()) != _URL_KEYS:
        return None
    scheme, host, url_clean, queries = (obj[k] for k in _URL_KEYS)
    if not all(isinstance(v, str) and v for v in (scheme, host, url_clean)):
        return None
    if not isinstance(queries, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in queries.items()
    ):
        return None
    return _emit_url(scheme.lower(), host.lower(), url_clean, queries)


def _parse_queries(query: str) -> "dict[str, str]":
    """Split the raw query string, keeping parameter order; a repeated key
    keeps its last value."""
    queries: dict[str, str] = {}
    if not query:
        return queries
    for piece in query.split("&"):
        if not piece:
            continue
        key, _, val = piece.partition("=")
        queries[key] = val
    return queries


def clean_url(value: "str | None") -> "str | None":
    if value is None:
        return None
    text = value.strip()
    if text.startswith("{"):
        return _reparse_canonical(text)
    parts = urlsplit(text)
    scheme = parts.scheme.lower()
    try:
        host = parts.hostname
    except ValueError:
        return None
    if not scheme or not host:
        return None
    url_clean = f"{scheme}://{host}{parts.path}"
    return _emit_url(scheme, host, url_clean, _parse_queries(parts.query))
