"""Calendar-indexed daily temperature series.

The modeling conventions live here: series are strictly date-ordered,
leap days (Feb 29) are removed before any fitting, and after stripping
the series must be gap-free with exactly 365 observations per full year.
The day index ``t`` is the 0-based position within the leap-stripped
series, and the seasonal phase of index t is 2*pi*t/365 with no leap
adjustment.
"""

from __future__ import annotations

import csv
import datetime as dt
import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError

DAYS_PER_YEAR = 365

# Sanity bounds for daily average temperature in degrees Celsius.
TEMP_MIN_C = -90.0
TEMP_MAX_C = 60.0

CSV_HEADER = ("date", "t_avg_c", "precip_mm")


@dataclass(frozen=True, eq=False)
class TemperatureSeries:
    """Ordered daily temperature records, optionally with precipitation.

    ``dates`` are strictly increasing calendar days; ``temps`` is a float
    array of the same length in degrees Celsius; ``precip`` (mm) is either
    None or a parallel non-negative float array.
    """

    dates: tuple[dt.date, ...]
    temps: np.ndarray
    precip: np.ndarray | None = None

    def __post_init__(self):
        temps = np.asarray(self.temps, dtype=float)
        temps.flags.writeable = False
        object.__setattr__(self, "temps", temps)
        if len(self.dates) != temps.size:
            raise InputError("dates and temperatures have different lengths")
        if temps.size == 0:
            raise InputError("empty series")
        if not np.all(np.isfinite(temps)):
            raise InputError("non-finite temperature value")
        if temps.min() < TEMP_MIN_C or temps.max() > TEMP_MAX_C:
            raise InputError(
                f"temperature outside sane range [{TEMP_MIN_C}, {TEMP_MAX_C}] degC")
        for a, b in zip(self.dates, self.dates[1:]):
            if a >= b:
                raise InputError(f"dates not strictly increasing at {b}")
        if self.precip is not None:
            precip = np.asarray(self.precip, dtype=float)
            precip.flags.writeable = False
            object.__setattr__(self, "precip", precip)
            if precip.size != temps.size:
                raise InputError("precipitation length mismatch")
            if not np.all(np.isfinite(precip)):
                raise InputError("non-finite precipitation value")
            if precip.min() < 0:
                raise InputError("negative precipitation")

    def __len__(self) -> int:
        return self.temps.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, TemperatureSeries):
            return NotImplemented
        if self.dates != other.dates:
            return False
        if not np.array_equal(self.temps, other.temps):
            return False
        if (self.precip is None) != (other.precip is None):
            return False
        return self.precip is None or np.array_equal(self.precip, other.precip)


def next_calendar_day(d: dt.date) -> dt.date:
    """The next calendar day, skipping February 29."""
    n = d + dt.timedelta(days=1)
    if n.month == 2 and n.day == 29:
        n += dt.timedelta(days=1)
    return n


def parse_csv(text: str) -> TemperatureSeries:
    """Parse a `date,t_avg_c[,precip_mm]` CSV into a TemperatureSeries.

    Dates must be ISO-8601 and strictly increasing. Every parse failure
    raises InputError naming the 1-based line number. Leap days are kept;
    use :func:`strip_leap_days` before fitting.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise InputError("empty input, expected header", line=1) from None
    header = [h.strip() for h in header]
    if header not in (list(CSV_HEADER[:2]), list(CSV_HEADER)):
        raise InputError(
            "expected header 'date,t_avg_c[,precip_mm]', got "
            f"{','.join(header)!r}", line=1)
    has_precip = len(header) == 3

    dates: list[dt.date] = []
    temps: list[float] = []
    precip: list[float] = []
    prev: dt.date | None = None
    for row in reader:
        lineno = reader.line_num
        if not row:
            continue
        if len(row) != len(header):
            raise InputError(
                f"expected {len(header)} fields, got {len(row)}", line=lineno)
        try:
            date = dt.date.fromisoformat(row[0].strip())
        except ValueError:
            raise InputError(f"unparsable date {row[0]!r}", line=lineno) from None
        if prev is not None:
            if date == prev:
                raise InputError(f"duplicate date {date}", line=lineno)
            if date < prev:
                raise InputError(f"out-of-order date {date}", line=lineno)
        prev = date
        temps.append(_parse_number(row[1], "temperature", lineno))
        if has_precip:
            precip.append(_parse_number(row[2], "precipitation", lineno))
        dates.append(date)

    if not dates:
        raise InputError("no data rows")
    return TemperatureSeries(
        dates=tuple(dates),
        temps=np.array(temps),
        precip=np.array(precip) if has_precip else None,
    )


def _parse_number(fieldtext: str, what: str, lineno: int) -> float:
    fieldtext = fieldtext.strip()
    if not fieldtext:
        raise InputError(f"missing {what} value", line=lineno)
    try:
        value = float(fieldtext)
    except ValueError:
        raise InputError(f"unparsable {what} {fieldtext!r}", line=lineno) from None
    if not math.isfinite(value):
        raise InputError(f"non-finite {what} {fieldtext!r}", line=lineno)
    return value


def serialize_csv(series: TemperatureSeries) -> str:
    """Inverse of :func:`parse_csv`; round-trips exactly."""
    has_precip = series.precip is not None
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER if has_precip else CSV_HEADER[:2])
    for i, date in enumerate(series.dates):
        row = [date.isoformat(), repr(float(series.temps[i]))]
        if has_precip:
            row.append(repr(float(series.precip[i])))
        writer.writerow(row)
    return out.getvalue()


def strip_leap_days(series: TemperatureSeries) -> TemperatureSeries:
    """Remove all Feb 29 records and verify the result is gap-free.

    Consecutive records in the returned series differ by exactly one
    calendar day with Feb 29 skipped. Any other gap raises InputError.
    Idempotent.
    """
    keep = [i for i, d in enumerate(series.dates)
            if not (d.month == 2 and d.day == 29)]
    dates = tuple(series.dates[i] for i in keep)
    stripped = TemperatureSeries(
        dates=dates,
        temps=series.temps[keep],
        precip=None if series.precip is None else series.precip[keep],
    )
    for a, b in zip(dates, dates[1:]):
        expected = next_calendar_day(a)
        if b != expected:
            raise InputError(
                f"gap in series: expected {expected} after {a}, got {b}")
    return stripped


def seasonal_basis(t: float) -> tuple[float, float]:
    """(sin, cos) of the annual phase 2*pi*t/365 at day index t."""
    phase = 2.0 * math.pi * t / DAYS_PER_YEAR
    return math.sin(phase), math.cos(phase)


def month_slices(series: TemperatureSeries) -> list[tuple[int, int, slice]]:
    """Consecutive (year, month, slice) runs of the series records.

    Months are contiguous index ranges because the series is date-ordered;
    for a gap-free series each run covers one calendar month.
    """
    out: list[tuple[int, int, slice]] = []
    start = 0
    for i in range(1, len(series) + 1):
        if i == len(series) or (series.dates[i].year, series.dates[i].month) != (
                series.dates[start].year, series.dates[start].month):
            d = series.dates[start]
            out.append((d.year, d.month, slice(start, i)))
            start = i
    return out
