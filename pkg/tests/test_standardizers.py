from __future__ import annotations

import json
import random
import re

import pytest

from cellform.coltypes import ColumnType
from cellform.errors import BadTargetFormat, UnknownColumn, UnsupportedType
from cellform.standardizers import (
    CleanOptions,
    clean_address,
    clean_cell,
    clean_color,
    clean_column,
    clean_duration,
    clean_ip,
    clean_location,
    clean_name,
    clean_phone_number,
    clean_temperature,
    clean_url,
    validate,
)
from cellform.table import Table

from generators import GENERATORS


class TestAddress:
    def test_full_form_reordered(self):
        assert (
            clean_address("123 Main St Apt 4B, Baton Rouge, LA 70802, USA")
            == "Apt 4B, 123, Main St, Baton Rouge, LA, USA, 70802"
        )

    def test_missing_parts_skipped(self):
        assert (
            clean_address("456 Oak Avenue, Springfield, IL 62704")
            == "456, Oak Avenue, Springfield, IL, 62704"
        )

    def test_unparseable_is_missing(self):
        assert clean_address("!!!") is None

    def test_single_word_is_missing(self):
        assert clean_address("xyzzy") is None

    def test_name_shaped_value_is_missing(self):
        assert clean_address("Smith, John") is None

    def test_city_state_zip_without_street(self):
        assert clean_address("Baton Rouge, LA 70802") == "Baton Rouge, LA, 70802"

    def test_unit_spellings_normalize_to_apt(self):
        assert clean_address("22 Cedar Ln Apartment 9, Portland, OR 97205") == (
            "Apt 9, 22, Cedar Ln, Portland, OR, 97205"
        )
        assert clean_address("22 Cedar Ln # 9, Portland, OR 97205") == (
            "Apt 9, 22, Cedar Ln, Portland, OR, 97205"
        )

    def test_zip_plus_four(self):
        assert clean_address("1 Elm Street, Columbus, OH 43085-1234").endswith("43085-1234")

    def test_unknown_state_code_fails_the_segment(self):
        assert clean_address("456 Oak Avenue, Springfield, XX 62704") is None


class TestPhone:
    def test_national_with_default_region(self):
        assert clean_phone_number("(415) 555-2671") == "+14155552671"

    def test_international_kept(self):
        assert clean_phone_number("+44 20 7946 0958") == "+442079460958"

    def test_too_short_is_missing(self):
        assert clean_phone_number("12") is None

    def test_leading_country_code_not_doubled(self):
        assert clean_phone_number("1-415-555-2671") == "+14155552671"

    def test_double_zero_prefix(self):
        assert clean_phone_number("0044 20 7946 0958") == "+442079460958"

    def test_letters_are_missing(self):
        assert clean_phone_number("555-CALL-NOW") is None

    def test_leading_zero_after_plus_is_missing(self):
        assert clean_phone_number("+0123456789") is None

    def test_other_default_region(self):
        assert clean_phone_number("20 7946 0958", default_country_code="+44") == "+442079460958"


class TestLocation:
    def test_hemisphere_negation(self):
        assert clean_location("40.7128° N, 74.0060° W") == "(40.7128,-74.0060)"

    def test_canonicalizes_spacing_only(self):
        assert clean_location("(12.5, -3.25)") == "(12.5,-3.25)"

    def test_latitude_bound(self):
        assert clean_location("91.0, 0.0") is None

    def test_longitude_bound(self):
        assert clean_location("0.0, 180.5") is None

    def test_leading_hemisphere(self):
        assert clean_location("N 40.7128, W 74.0060") == "(40.7128,-74.0060)"

    def test_sign_with_hemisphere_is_ambiguous(self):
        assert clean_location("-40.7128 S, 74 W") is None

    def test_hemisphere_on_wrong_axis(self):
        assert clean_location("40.7128 E, 74.0060 W") is None

    def test_space_separated_pair(self):
        assert clean_location("40.7128 -74.0060") == "(40.7128,-74.0060)"


class TestIp:
    def test_mask_stripped(self):
        assert clean_ip("192.168.1.1/24") == "192.168.1.1"

    def test_octet_range(self):
        assert clean_ip("256.1.1.1") is None

    def test_ipv6_lowercased_and_compressed(self):
        assert clean_ip("2001:DB8::1") == "2001:db8::1"
        assert clean_ip("2001:0db8:0000:0000:0000:0000:0000:0001") == "2001:db8::1"

    def test_leading_zero_octets(self):
        assert clean_ip("192.168.001.001") == "192.168.1.1"

    def test_not_an_ip(self):
        assert clean_ip("10.0.0") is None
        assert clean_ip("banana") is None


class TestUrl:
    def test_example_object(self):
        assert clean_url("HTTP://www.Example.com/path?key1=value1&key2=value2") == (
            '{"scheme":"http","host":"www.example.com",'
            '"url_clean":"http://www.example.com/path",'
            '"queries":{"key1":"value1","key2":"value2"}}'
        )

    def test_minimal(self):
        assert clean_url("https://a.b/c") == (
            '{"scheme":"https","host":"a.b","url_clean":"https://a.b/c","queries":{}}'
        )

    def test_no_scheme_is_missing(self):
        assert clean_url("not a url") is None
        assert clean_url("www.example.com/path") is None

    def test_duplicate_keys_keep_last_value(self):
        cleaned = clean_url("http://h/?q=1&q=2")
        assert json.loads(cleaned)["queries"] == {"q": "2"}

    def test_key_order_preserved(self):
        cleaned = clean_url("http://h/?b=2&a=1")
        assert list(json.loads(cleaned)["queries"]) == ["b", "a"]

    def test_own_output_accepted(self):
        once = clean_url("https://a.b/c?x=1")
        assert clean_url(once) == once


class TestDuration:
    def test_unit_combination(self):
        assert clean_duration("1h 30m") == "01:30:00"

    def test_single_unit(self):
        assert clean_duration("90 seconds") == "00:01:30"

    def test_unparseable(self):
        assert clean_duration("banana") is None

    def test_clock_form(self):
        assert clean_duration("1:30") == "01:30:00"
        assert clean_duration("100:00:59") == "100:00:59"

    def test_units_must_descend(self):
        assert clean_duration("30m 1h") is None
        assert clean_duration("1h 2h") is None

    def test_negative_is_missing(self):
        assert clean_duration("-5m") is None

    def test_bare_number_is_missing(self):
        assert clean_duration("90") is None

    def test_fractional_quantities(self):
        assert clean_duration("1.5h") == "01:30:00"


class TestTemperature:
    def test_fahrenheit(self):
        assert clean_temperature("73.4 F") == "23℃"

    def test_celsius_identity(self):
        assert clean_temperature("23°C") == "23℃"

    def test_kelvin(self):
        assert clean_temperature("300K") == "26.85℃"

    def test_bare_number_reads_celsius(self):
        assert clean_temperature("23.5") == "23.5℃"

    def test_rounding_half_up_two_decimals(self):
        assert clean_temperature("23.455 C") == "23.46℃"
        assert clean_temperature("23.004 C") == "23℃"

    def test_negative_zero_collapses(self):
        assert clean_temperature("-0.001 C") == "0℃"

    def test_own_output_accepted(self):
        assert clean_temperature("26.85℃") == "26.85℃"

    def test_word_units(self):
        assert clean_temperature("-40 fahrenheit") == "-40℃"
        assert clean_temperature("0 kelvin") == "-273.15℃"

    def test_unparseable(self):
        assert clean_temperature("hot") is None


class TestColor:
    def test_rgb_function(self):
        assert clean_color("rgb(161, 178, 195)") == "#a1b2c3"

    def test_hex_lowercased(self):
        assert clean_color("#A1B2C3") == "#a1b2c3"

    def test_named(self):
        assert clean_color("red") == "#ff0000"
        assert clean_color("RebeccaPurple") == "#663399"

    def test_short_hex_expands(self):
        assert clean_color("#abc") == "#aabbcc"

    def test_rgb_out_of_range(self):
        assert clean_color("rgb(300, 0, 0)") is None

    def test_unknown_name(self):
        assert clean_color("blurple") is None


class TestName:
    def test_comma_swap(self):
        assert clean_name("Smith, John") == "John Smith"

    def test_already_first_last_unchanged(self):
        assert clean_name("John Smith") == "John Smith"

    def test_whitespace_collapsed(self):
        assert clean_name("  Ada   Lovelace ") == "Ada Lovelace"

    def test_single_word_is_missing(self):
        assert clean_name("xyzzy") is None

    def test_two_commas_is_missing(self):
        assert clean_name("a, b, c") is None

    def test_case_preserved(self):
        assert clean_name("dijkstra, edsger") == "edsger dijkstra"

    def test_numeric_words_are_missing(self):
        assert clean_name("123 456") is None


SHAPE_PATTERNS = {
    ColumnType.PHONE_NUMBER: re.compile(r"^\+[1-9][0-9]{1,14}$"),
    ColumnType.COLOR: re.compile(r"^#[0-9a-f]{6}$"),
    ColumnType.DURATION: re.compile(r"^[0-9]{2,}:[0-5][0-9]:[0-5][0-9]$"),
    ColumnType.TEMPERATURE: re.compile(r"^-?[0-9]+(\.[0-9]+)?℃$"),
    ColumnType.LOCATION: re.compile(r"^\(-?[0-9]+(\.[0-9]+)?,-?[0-9]+(\.[0-9]+)?\)$"),
}


def test_missing_absorbing_for_every_type():
    for ctype in ColumnType.cleanable():
        assert clean_cell(None, ctype) is None


def test_validate_matches_cleaner_over_generated_inputs():
    rng = random.Random(7)
    for ctype, generate in GENERATORS.items():
        for _ in range(50):
            value = generate(rng)
            assert validate(value, ctype) == (clean_cell(value, ctype) is not None)


def test_validate_cross_examples():
    assert validate("little cat", ColumnType.DATE) is False
    assert validate("#a1b2c3", ColumnType.COLOR) is True


def test_validate_unknown_type_rejected():
    with pytest.raises(UnsupportedType):
        validate("x", ColumnType.UNKNOWN)


def test_idempotence_and_shape_sample():
    rng = random.Random(11)
    for ctype, generate in GENERATORS.items():
        pattern = SHAPE_PATTERNS.get(ctype)
        for _ in range(60):
            once = clean_cell(generate(rng), ctype)
            assert once is not None
            assert clean_cell(once, ctype) == once
            if pattern:
                assert pattern.match(once), (ctype, once)


class TestCleanColumn:
    def test_only_named_column_changes(self, demo_table):
        cleaned = clean_column(demo_table, "Admission Date", ColumnType.DATE)
        assert cleaned.column_values("Address") == demo_table.column_values("Address")
        assert cleaned.columns == demo_table.columns
        assert cleaned.m == demo_table.m
        assert all(v and v.startswith(("19", "20")) for v in cleaned.column_values("Admission Date"))

    def test_unknown_column(self, demo_table):
        with pytest.raises(UnknownColumn):
            clean_column(demo_table, "nope", ColumnType.DATE)

    def test_unknown_type(self, demo_table):
        with pytest.raises(UnsupportedType):
            clean_column(demo_table, "Address", ColumnType.UNKNOWN)

    def test_format_on_non_date_rejected(self, demo_table):
        with pytest.raises(BadTargetFormat):
            clean_column(demo_table, "Address", ColumnType.ADDRESS, "MM/DD/YYYY")

    def test_invalid_cells_become_missing(self):
        table = Table(("t",), (("73.4 F",), ("oops",), (None,)))
        cleaned = clean_column(table, "t", ColumnType.TEMPERATURE)
        assert cleaned.column_values("t") == ("23℃", None, None)

    def test_double_application_is_stable(self, demo_table):
        fmt = "MM/DD/YYYY HH:MM:SS"
        once = clean_column(demo_table, "Admission Date", ColumnType.DATE, fmt)
        twice = clean_column(once, "Admission Date", ColumnType.DATE, fmt)
        assert once == twice

    def test_custom_options(self):
        table = Table(("p",), (("020 7946 0958",),))
        cleaned = clean_column(
            table, "p", ColumnType.PHONE_NUMBER, options=CleanOptions(default_country_code="44")
        )
        assert cleaned.rows[0][0] == "+4402079460958"
