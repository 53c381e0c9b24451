from __future__ import annotations

import random

import pytest

from cellform.errors import BadTargetFormat
from cellform.standardizers import DateFormat, clean_date

from generators import messy_date

ISO = "YYYY-MM-DD hh:mm:ss"

GOLDEN = [
    ("Thu Sep 25 10:36:28 2003", "2003-09-25 10:36:28"),
    ("1996.07.10 AD at 15:08:56", "1996-07-10 15:08:56"),
    ("2011-12-08 3:50:00 PM", "2011-12-08 15:50:00"),
    ("2:30pDec 27", None),
    ("06:45 AM Sun 25-Dec-2011", "2011-12-25 06:45:00"),
]


@pytest.mark.parametrize("raw,expected", GOLDEN)
def test_golden_vectors(raw, expected):
    assert clean_date(raw, ISO) == expected


def test_invalid_text_is_missing():
    assert clean_date("little cat", ISO) is None


def test_missing_is_absorbing():
    assert clean_date(None, ISO) is None


def test_format_mm_is_month_before_hour_and_minute_after():
    assert clean_date("Thu Sep 25 10:36:28 2003", "MM/DD/YYYY HH:MM:SS") == "09/25/2003 10:36:28"


def test_lower_and_upper_time_tokens_equivalent():
    raw = "Thu Sep 25 10:36:28 2003"
    assert clean_date(raw, "YYYY-MM-DD hh:mm:ss") == clean_date(raw, "YYYY-MM-DD HH:MM:SS")


@pytest.mark.parametrize(
    "pattern",
    ["MM-DD", "YYYY-MM", "YYYY-QQ-DD", "YY-MM-DD", "YYYY-MM-DD HH:MM:SS extra YYYY"],
)
def test_bad_target_formats_rejected(pattern):
    with pytest.raises(BadTargetFormat):
        DateFormat.parse(pattern)


def test_time_tokens_optional_in_format():
    assert clean_date("Sep 25 2003", "YYYY/MM/DD") == "2003/09/25"


def test_missing_time_defaults_to_zeros():
    assert clean_date("Sep 25 2003", ISO) == "2003-09-25 00:00:00"


def test_date_without_year_needs_reference():
    assert clean_date("2:30pDec 27", ISO) is None
    assert clean_date("2:30pDec 27", ISO, reference_year=2011) == "2011-12-27 14:30:00"


def test_two_digit_year_pivot():
    assert clean_date("12/25/68", ISO) == "2068-12-25 00:00:00"
    assert clean_date("12/25/69", ISO) == "1969-12-25 00:00:00"


def test_day_month_order_option():
    assert clean_date("03/04/2020", ISO) == "2020-03-04 00:00:00"
    assert clean_date("03/04/2020", ISO, day_month_order=True) == "2020-04-03 00:00:00"


def test_unambiguous_numeric_swap():
    # month 25 is impossible, so the reading flips regardless of the option
    assert clean_date("25/12/2003", ISO) == "2003-12-25 00:00:00"


def test_meridiem_folding():
    assert clean_date("Dec 8 2011 12:00:00 AM", ISO) == "2011-12-08 00:00:00"
    assert clean_date("Dec 8 2011 12:00:00 PM", ISO) == "2011-12-08 12:00:00"
    assert clean_date("Dec 8 2011 1:05:00 pm", ISO) == "2011-12-08 13:05:00"
    assert clean_date("Dec 8 2011 10:30 a.m.", ISO) == "2011-12-08 10:30:00"


def test_meridiem_out_of_range_hour_is_missing():
    assert clean_date("Dec 8 2011 13:00:00 PM", ISO) is None
    assert clean_date("Dec 8 2011 0:30:00 AM", ISO) is None


def test_calendar_validation_with_leap_years():
    assert clean_date("Feb 29 2024", ISO) == "2024-02-29 00:00:00"
    assert clean_date("Feb 29 2023", ISO) is None
    assert clean_date("Apr 31 2020", ISO) is None


def test_timezone_tokens_dropped():
    assert clean_date("2011-12-08T15:50:00Z", ISO) == "2011-12-08 15:50:00"
    assert clean_date("2011-12-08 15:50:00+05:00", ISO) == "2011-12-08 15:50:00"
    assert clean_date("2011-12-08 15:50:00 UTC", ISO) == "2011-12-08 15:50:00"


def test_bc_era_is_missing():
    assert clean_date("44 BC Mar 15", ISO) is None


def test_ordinal_days():
    assert clean_date("December 25th, 2011", ISO) == "2011-12-25 00:00:00"


def test_stray_tokens_invalidate():
    assert clean_date("Sep 25 2003 banana", ISO) is None
    assert clean_date("Sep 25 2003 17", ISO) is None  # unassignable extra number
    assert clean_date("2003 2004 Sep 25", ISO) is None  # two years


def test_time_only_is_missing():
    assert clean_date("10:36:28", ISO) is None


def test_idempotence_over_random_inputs():
    rng = random.Random(42)
    fmt = DateFormat.parse(ISO)
    for _ in range(300):
        raw = messy_date(rng)
        once = clean_date(raw, fmt)
        assert once is not None, raw
        assert clean_date(once, fmt) == once
        assert fmt.matcher().match(once), once
