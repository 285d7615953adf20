# -*- coding: utf-8 -*-
#
# Copyright (C) 2024 pvdisagg developers
#
#    This program is free software: you can redistribute it and/or modify
#    it under the terms of the GNU General Public License as published by
#    the Free Software Foundation, either version 3 of the License, or
#    (at your option) any later version.
#
#    This program is distributed in the hope that it will be useful,
#    but WITHOUT ANY WARRANTY; without even the implied warranty of
#    MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
#    GNU General Public License for more details.
#
#    You should have received a copy of the GNU General Public License
#    along with this program.  If not, see <http://www.gnu.org/licenses/>.
#
"""
    pvdisagg.data.ingest

    Readers for the meter and weather source files and the assembly of
    aligned prosumer-day samples.

    Meter files carry one row per (customer, category, date) with the 48
    half-hour readings in columns v1..v48. Weather files carry one row per
    timestamp with ghi, dni and dhi columns at hourly or half-hourly cadence.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""
import re
from collections import OrderedDict, namedtuple
from datetime import datetime, timedelta
from logging import getLogger

import numpy as np
import pandas as pd

from .samples import DailySample, MeterRecord, ProsumerSplit, make_weather, quantize
from ..constants import CONTROLLED_LOAD, GENERAL_CONSUMPTION, GROSS_GENERATION, METER_CATEGORIES, \
    METER_ID_COLUMNS, SLOTS_PER_DAY, WEATHER_CHANNELS, WEATHER_COLUMNS
from ..exceptions import ConfigError, DataFormatError, DataParseError, DuplicateRecordError, ValidationError

LOG = getLogger(__name__)

VALUE_COLUMNS = ['v%d' % (i + 1) for i in range(SLOTS_PER_DAY)]

WeatherRecords = namedtuple('WeatherRecords', ('days', 'dropped'))

AssembledDays = namedtuple('AssembledDays', ('samples', 'dropped_meter', 'dropped_weather'))


def _read_frame(path):
    """Read a CSV as strings, turning pandas errors into format errors."""
    try:
        return pd.read_csv(path, dtype=str, keep_default_na=False, index_col=False, skipinitialspace=True)
    except pd.errors.EmptyDataError:
        raise DataFormatError('%s is empty, a header row is required.' % path, line=1)
    except pd.errors.ParserError as ex:
        match = re.search(r'line (\d+)', str(ex))
        raise DataFormatError('%s: %s' % (path, ex), line=int(match.group(1)) if match else None)


def _missing_cell(frame, path):
    """Raise for the first row with a missing cell."""
    blank = frame.isna() | (frame == '')
    if blank.values.any():
        row = int(np.argmax(blank.values.any(axis=1)))
        col = frame.columns[int(np.argmax(blank.values[row]))]
        raise DataFormatError('%s: missing value in column %s.' % (path, col), line=row + 2)


def _numeric(frame, columns, path):
    """Convert columns to float64, reporting the first bad cell."""
    raw = frame[columns]
    values = raw.apply(pd.to_numeric, errors='coerce')
    bad = values.isna() | ~np.isfinite(values)
    if bad.values.any():
        row = int(np.argmax(bad.values.any(axis=1)))
        col = columns[int(np.argmax(bad.values[row]))]
        raise DataParseError('%s: cannot read %r as a number.' % (path, raw.iloc[row][col]), row=row + 2, col=col)
    return values.to_numpy(dtype=np.float64)


def _parse_date(text, line, path):
    try:
        return datetime.strptime(text.strip(), '%Y-%m-%d').date()
    except ValueError:
        raise DataParseError('%s: %r is not a YYYY-MM-DD date.' % (path, text), row=line, col='date')


def load_meter_csv(path):
    """Parse a half-hourly meter file.

    :param path: meter CSV path
    :type path: str
    :return: records sorted by (prosumer, date, category)
    :rtype: list
    """
    frame = _read_frame(path)
    frame.columns = [str(c).strip() for c in frame.columns]

    missing = [c for c in METER_ID_COLUMNS if c not in frame.columns]
    if missing:
        raise DataFormatError('%s: missing columns %s.' % (path, missing), line=1)

    value_columns = [c for c in frame.columns if re.match(r'^v\d+$', c)]
    if value_columns != VALUE_COLUMNS:
        raise DataFormatError('%s: expected %s value columns v1..v%s, found %s.'
                              % (path, SLOTS_PER_DAY, SLOTS_PER_DAY, len(value_columns)), line=1)

    if frame.empty:
        return []

    frame = frame[METER_ID_COLUMNS + VALUE_COLUMNS]
    _missing_cell(frame, path)
    values = _numeric(frame, VALUE_COLUMNS, path)

    records = []
    seen = set()
    for index, (customer, category, date_text) in enumerate(frame[METER_ID_COLUMNS].itertuples(index=False)):
        line = index + 2
        category = category.strip().upper()
        if category not in METER_CATEGORIES:
            raise DataFormatError('%s: unknown category %r, expected one of %s.'
                                  % (path, category, METER_CATEGORIES), line=line)
        key = (customer.strip(), _parse_date(date_text, line, path), category)
        if key in seen:
            raise DuplicateRecordError('%s line %s: duplicate record for prosumer %s, date %s, category %s.'
                                       % (path, line, key[0], key[1], key[2]))
        seen.add(key)
        records.append(MeterRecord(key[0], key[1], key[2], quantize(values[index])))

    records.sort(key=lambda r: (r.prosumer_id, r.date, r.category))
    LOG.debug('Read %s meter records from %s.', len(records), path)
    return records


def _fill_single_gaps(values):
    """Linearly fill isolated interior gaps; longer or edge gaps stay NaN."""
    values = values.copy()
    for i in range(1, len(values) - 1):
        if np.isnan(values[i]) and not np.isnan(values[i - 1]) and not np.isnan(values[i + 1]):
            values[i] = 0.5 * (values[i - 1] + values[i + 1])
    return values


def upsample_hourly(hourly):
    """Map 24 hourly values onto 48 half-hour slots.

    Slot 2h takes hour h, slot 2h+1 is the midpoint of hours h and h+1, and
    the final slot holds the last hour.

    :param hourly: 24 values
    :rtype: numpy.ndarray
    """
    hourly = np.asarray(hourly, dtype=np.float64)
    slots = np.empty(2 * len(hourly))
    slots[0::2] = hourly
    slots[1:-1:2] = 0.5 * (hourly[:-1] + hourly[1:])
    slots[-1] = hourly[-1]
    return slots


def load_weather_csv(path):
    """Parse a weather file into one WeatherDay per calendar day.

    The cadence is hourly when no timestamp falls on a half hour. Days with
    gaps that cannot be bridged by a single interpolated value are dropped.

    :param path: weather CSV path
    :type path: str
    :return: days keyed by date in calendar order and the dropped day count
    :rtype: WeatherRecords
    """
    frame = _read_frame(path)
    frame.columns = [str(c).strip().lower() for c in frame.columns]

    missing = [c for c in WEATHER_COLUMNS if c not in frame.columns]
    if missing:
        raise DataFormatError('%s: missing columns %s.' % (path, missing), line=1)
    if frame.empty:
        return WeatherRecords(OrderedDict(), 0)

    frame = frame[WEATHER_COLUMNS]
    _missing_cell(frame, path)
    values = _numeric(frame, WEATHER_CHANNELS, path)

    negative = values < 0
    if negative.any():
        row = int(np.argmax(negative.any(axis=1)))
        col = int(np.argmax(negative[row]))
        raise ValidationError('%s line %s: negative %s irradiance %s.'
                              % (path, row + 2, WEATHER_CHANNELS[col], values[row, col]))

    stamps = []
    for index, text in enumerate(frame['timestamp']):
        try:
            stamp = pd.Timestamp(text.strip())
        except ValueError:
            raise DataParseError('%s: %r is not an ISO-8601 timestamp.' % (path, text), row=index + 2, col='timestamp')
        if stamp.tzinfo is not None:
            stamp = stamp.tz_localize(None)
        if stamp.second or stamp.minute not in (0, 30):
            raise DataFormatError('%s: timestamp %s is not on an hour or half-hour.' % (path, text), line=index + 2)
        stamps.append(stamp)

    hourly = not any(s.minute == 30 for s in stamps)
    per_day = 24 if hourly else SLOTS_PER_DAY

    grid = OrderedDict()
    for index, stamp in enumerate(stamps):
        day = stamp.date()
        slot = stamp.hour if hourly else 2 * stamp.hour + stamp.minute // 30
        block = grid.setdefault(day, np.full((per_day, len(WEATHER_CHANNELS)), np.nan))
        if not np.isnan(block[slot, 0]):
            raise DuplicateRecordError('%s line %s: duplicate timestamp %s.' % (path, index + 2, stamp))
        block[slot] = values[index]

    days = OrderedDict()
    dropped = 0
    for day in sorted(grid):
        block = np.column_stack([_fill_single_gaps(grid[day][:, j]) for j in range(len(WEATHER_CHANNELS))])
        if np.isnan(block).any():
            dropped += 1
            continue
        if hourly:
            block = np.column_stack([upsample_hourly(block[:, j]) for j in range(len(WEATHER_CHANNELS))])
        channels = dict(zip(WEATHER_CHANNELS, block.T))
        days[day] = make_weather(channels['dni'], channels['dhi'], channels['ghi'])

    if dropped:
        LOG.warning('Dropped %s weather day(s) from %s with unrecoverable gaps.', dropped, path)
    return WeatherRecords(days, dropped)


def _daily_totals(records):
    """Mean daily consumption and generation per prosumer."""
    consumption = OrderedDict()
    generation = OrderedDict()
    for record in records:
        target = generation if record.category == GROSS_GENERATION else consumption
        per_day = target.setdefault(record.prosumer_id, OrderedDict())
        per_day[record.date] = per_day.get(record.date, 0.0) + float(np.sum(record.values))
    return consumption, generation


def percentile_filter(records, low=1.0, high=99.0):
    """Drop prosumers with extreme first-year consumption or generation.

    The first year spans 365 days from the earliest record. A prosumer is
    dropped when its mean daily consumption or mean daily generation lies
    outside the [low, high] nearest-rank percentile band over prosumers.

    :param records: meter records
    :type records: list
    :param low: lower percentile
    :type low: float
    :param high: upper percentile
    :type high: float
    :return: kept records and the sorted list of dropped prosumer ids
    :rtype: tuple
    """
    if not records:
        return [], []
    start = min(r.date for r in records)
    first_year = [r for r in records if r.date < start + timedelta(days=365)]
    consumption, generation = _daily_totals(first_year)

    dropped = set()
    for totals in (consumption, generation):
        if not totals:
            continue
        ids = sorted(totals)
        means = np.array([np.mean(list(totals[i].values())) for i in ids])
        lower = np.percentile(means, low, method='lower')
        upper = np.percentile(means, high, method='higher')
        dropped.update(i for i, m in zip(ids, means) if m < lower or m > upper)

    if dropped:
        LOG.warning('Percentile filter dropped %s prosumer(s): %s', len(dropped), sorted(dropped))
    return [r for r in records if r.prosumer_id not in dropped], sorted(dropped)


def make_prosumer_split(prosumer_ids, p2_fraction=0.0, seed=0, type1=None, type2=None):
    """Assign prosumers to the Type 1 and Type 2 sets.

    Explicit type1/type2 lists win; an id listed in only one of them puts
    every other prosumer into the other set. Otherwise a seeded share of
    p2_fraction goes to Type 2.

    :rtype: ProsumerSplit
    """
    ids = sorted(set(prosumer_ids))
    type1, type2 = list(type1 or []), list(type2 or [])
    if type1 or type2:
        if not type2:
            type2 = [i for i in ids if i not in type1]
        if not type1:
            type1 = [i for i in ids if i not in type2]
        return ProsumerSplit(type1, type2)

    n_p2 = int(round(p2_fraction * len(ids)))
    order = np.random.default_rng(seed).permutation(len(ids))
    p2 = [ids[i] for i in sorted(order[:n_p2])]
    return ProsumerSplit([i for i in ids if i not in p2], p2)


def assemble_days(meter_records, weather_days, split):
    """Join meter and weather data into prosumer-day samples.

    net_load is general consumption plus controlled load minus gross
    generation; a missing controlled load row counts as zero. Type 1
    prosumers carry their gross generation as pv_truth.

    :param meter_records: records from load_meter_csv
    :type meter_records: list
    :param weather_days: WeatherDay by date
    :type weather_days: dict
    :param split: prosumer types
    :type split: ProsumerSplit
    :return: samples sorted by (prosumer, date) and drop counts
    :rtype: AssembledDays
    """
    grouped = OrderedDict()
    for record in sorted(meter_records, key=lambda r: (r.prosumer_id, r.date, r.category)):
        grouped.setdefault((record.prosumer_id, record.date), {})[record.category] = record.values

    unknown = sorted(set(pid for pid, _ in grouped) - split.p1 - split.p2)
    if unknown:
        raise ConfigError('Prosumers %s are in neither the type 1 nor the type 2 set.' % unknown)

    samples = []
    dropped_meter = 0
    dropped_weather = 0
    zeros = np.zeros(SLOTS_PER_DAY)
    for (prosumer_id, day), series in grouped.items():
        type1 = prosumer_id in split.p1
        if GENERAL_CONSUMPTION not in series or (type1 and GROSS_GENERATION not in series):
            dropped_meter += 1
            continue
        if day not in weather_days:
            dropped_weather += 1
            continue
        generation = series.get(GROSS_GENERATION, zeros)
        consumption = series[GENERAL_CONSUMPTION] + series.get(CONTROLLED_LOAD, zeros)
        samples.append(DailySample(prosumer_id, day, weather_days[day],
                                   quantize(consumption - generation),
                                   generation.copy() if type1 else None))

    if dropped_meter:
        LOG.warning('Dropped %s prosumer-day(s) with incomplete meter categories.', dropped_meter)
    if dropped_weather:
        LOG.warning('Dropped %s prosumer-day(s) without weather coverage.', dropped_weather)
    return AssembledDays(samples, dropped_meter, dropped_weather)
