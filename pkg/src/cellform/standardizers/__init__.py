"""Typed clean functions behind one declarative surface.

Every supported column type maps to exactly one clean function; all of
them are pure, treat missing as missing, and turn anything invalid into
missing rather than raising. ``clean_column`` lifts a clean function over
one table column; ``validate`` answers whether a single value would
survive cleaning.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..coltypes import ColumnType
from ..errors import BadTargetFormat, UnknownColumn, UnsupportedType
from ..table import Table
from .addresses import AddressComponents, clean_address, parse_address
from .colors import clean_color
from .dates import DEFAULT_DATE_FORMAT, DateComponents, DateFormat, clean_date, parse_date
from .locations import clean_location
from .names import clean_name
from .network import clean_ip, clean_url
from .phones import clean_phone_number
from .units import CELSIUS_SIGN, clean_duration, clean_temperature

__all__ = [
    "AddressComponents",
    "CELSIUS_SIGN",
    "CleanOptions",
    "DEFAULT_DATE_FORMAT",
    "DateComponents",
    "DateFormat",
    "FUNCTION_NAMES",
    "TYPE_FOR_FUNCTION",
    "clean_address",
    "clean_cell",
    "clean_color",
    "clean_column",
    "clean_date",
    "clean_duration",
    "clean_ip",
    "clean_location",
    "clean_name",
    "clean_phone_number",
    "clean_temperature",
    "clean_url",
    "parse_address",
    "parse_date",
    "validate",
]


@dataclass(frozen=True)
class CleanOptions:
    """Shared standardization knobs.

    ``default_country_code`` backs bare national phone numbers; dates use
    ``day_month_order`` to break a/b/c ambiguity and ``reference_year`` to
    fill year-less values (left unset, those stay missing).
    """

    default_country_code: str = "1"
    day_month_order: bool = False
    reference_year: "int | None" = None


DEFAULT_OPTIONS = CleanOptions()

FUNCTION_NAMES = {
    ColumnType.DATE: "clean_date",
    ColumnType.ADDRESS: "clean_address",
    ColumnType.PHONE_NUMBER: "clean_phone_number",
    ColumnType.LOCATION: "clean_location",
    ColumnType.IP: "clean_ip",
    ColumnType.URL: "clean_url",
    ColumnType.DURATION: "clean_duration",
    ColumnType.TEMPERATURE: "clean_temperature",
    ColumnType.COLOR: "clean_color",
    ColumnType.NAME: "clean_name",
}

TYPE_FOR_FUNCTION = {name: ctype for ctype, name in FUNCTION_NAMES.items()}


def clean_cell(
    value: "str | None",
    column_type: ColumnType,
    target_format: "str | DateFormat | None" = None,
    options: CleanOptions = DEFAULT_OPTIONS,
) -> "str | None":
    """Apply one type's clean function to one cell."""
    if column_type is ColumnType.UNKNOWN:
        raise UnsupportedType("cannot clean a column of unknown type")
    if column_type is ColumnType.DATE:
        return clean_date(
            value,
            target_format,
            day_month_order=options.day_month_order,
            reference_year=options.reference_year,
        )
    if target_format:
        raise BadTargetFormat(f"{column_type.value} columns take no target format")
    if column_type is ColumnType.ADDRESS:
        return clean_address(value)
    if column_type is ColumnType.PHONE_NUMBER:
        return clean_phone_number(value, options.default_country_code)
    if column_type is ColumnType.LOCATION:
        return clean_location(value)
    if column_type is ColumnType.IP:
        return clean_ip(value)
    if column_type is ColumnType.URL:
        return clean_url(value)
    if column_type is ColumnType.DURATION:
        return clean_duration(value)
    if column_type is ColumnType.TEMPERATURE:
        return clean_temperature(value)
    if column_type is ColumnType.COLOR:
        return clean_color(value)
    return clean_name(value)


def clean_column(
    table: Table,
    column_name: str,
    column_type: ColumnType,
    target_format: "str | None" = None,
    options: CleanOptions = DEFAULT_OPTIONS,
) -> Table:
    """Standardize one column, leaving every other cell untouched.

    Invalid cells become missing; row count and column order are
    preserved.
    """
    if column_name not in table.columns:
        raise UnknownColumn(column_name)
    if column_type is ColumnType.UNKNOWN:
        raise UnsupportedType("cannot clean a column of unknown type")
    fmt: "DateFormat | None" = None
    if column_type is ColumnType.DATE:
        fmt = DateFormat.parse(target_format or DEFAULT_DATE_FORMAT)
    elif target_format:
        raise BadTargetFormat(f"{column_type.value} columns take no target format")
    cleaned = [
        clean_cell(value, column_type, fmt, options)
        for value in table.column_values(column_name)
    ]
    return table.replace_column(column_name, cleaned)


def validate(value: str, column_type: ColumnType, options: CleanOptions = DEFAULT_OPTIONS) -> bool:
    """True iff the type's clean function would keep the value."""
    if column_type is ColumnType.UNKNOWN:
        raise UnsupportedType("cannot validate against the unknown type")
    return clean_cell(value, column_type, None, options) is not None
