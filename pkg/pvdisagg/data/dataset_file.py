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
    pvdisagg.data.dataset_file

    The canonical dataset file written by ingest and synth and read by every
    other command. It is a CSV document preceded by a commented header:

        # pvdisagg-dataset
        # version=1
        # T=48
        # units=kWh per half-hour slot; irradiance W/m2
        # dataset_id=<id>
        prosumer_id,date,has_truth,net_load_1..48,pv_1..48,dni_1..48,dhi_1..48,ghi_1..48

    Floats are written in their shortest round-trip form and read back with
    round-trip precision, so reading and re-writing a file is byte stable.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""
import hashlib
from collections import namedtuple
from datetime import datetime

import numpy as np
import pandas as pd

from .samples import DailySample, make_weather, sort_samples, validate_sample
from ..constants import DATASET_MAGIC, DATASET_SCHEMA_VERSION, SLOTS_PER_DAY, WEATHER_CHANNELS
from ..exceptions import DataFormatError

Dataset = namedtuple('Dataset', ('samples', 'dataset_id'))

UNITS = 'kWh per half-hour slot; irradiance W/m2'
SERIES_PREFIXES = ['net_load', 'pv'] + WEATHER_CHANNELS


def series_columns(prefix, length=SLOTS_PER_DAY):
    return ['%s_%d' % (prefix, i + 1) for i in range(length)]


def dataset_columns(length=SLOTS_PER_DAY):
    columns = ['prosumer_id', 'date', 'has_truth']
    for prefix in SERIES_PREFIXES:
        columns.extend(series_columns(prefix, length))
    return columns


def _frame(samples):
    samples = sort_samples(samples)
    n = len(samples)
    blocks = {
        'net_load': np.array([s.net_load for s in samples]).reshape(n, SLOTS_PER_DAY),
        'pv': np.array([s.pv_truth if s.pv_truth is not None else np.full(SLOTS_PER_DAY, np.nan)
                        for s in samples]).reshape(n, SLOTS_PER_DAY)
    }
    for channel in WEATHER_CHANNELS:
        blocks[channel] = np.array([getattr(s.weather, channel) for s in samples]).reshape(n, SLOTS_PER_DAY)

    frame = pd.DataFrame({
        'prosumer_id': [s.prosumer_id for s in samples],
        'date': [s.date.isoformat() for s in samples],
        'has_truth': [int(s.pv_truth is not None) for s in samples]
    })
    parts = [frame] + [pd.DataFrame(blocks[p], columns=series_columns(p)) for p in SERIES_PREFIXES]
    return pd.concat(parts, axis=1)


def write_dataset(path, samples, dataset_id=None):
    """Write samples to the canonical dataset file.

    :param path: output path
    :type path: str
    :param samples: daily samples, written sorted by (prosumer, date)
    :type samples: list
    :param dataset_id: identifier, defaults to a digest of the records
    :type dataset_id: str
    :return: the dataset id written
    :rtype: str
    """
    body = _frame(samples).to_csv(index=False)
    if dataset_id is None:
        dataset_id = hashlib.sha256(body.encode('utf-8')).hexdigest()[:12]
    header = [
        DATASET_MAGIC,
        '# version=%s' % DATASET_SCHEMA_VERSION,
        '# T=%s' % SLOTS_PER_DAY,
        '# units=%s' % UNITS,
        '# dataset_id=%s' % dataset_id
    ]
    with open(path, 'w', encoding='utf-8', newline='') as f:
        f.write('\n'.join(header) + '\n')
        f.write(body)
    return dataset_id


def _read_header(path):
    meta = {}
    lines = 0
    with open(path, encoding='utf-8') as f:
        first = f.readline().rstrip('\n')
        if first.strip() != DATASET_MAGIC:
            raise DataFormatError('%s is not a pvdisagg dataset file.' % path, line=1)
        lines = 1
        for raw in f:
            if not raw.startswith('#'):
                break
            lines += 1
            key, _, value = raw[1:].strip().partition('=')
            meta[key.strip()] = value.strip()

    if meta.get('version') != str(DATASET_SCHEMA_VERSION):
        raise DataFormatError('%s has dataset version %s, expected %s.'
                              % (path, meta.get('version'), DATASET_SCHEMA_VERSION), line=2)
    if meta.get('T') != str(SLOTS_PER_DAY):
        raise DataFormatError('%s has T=%s, expected %s.' % (path, meta.get('T'), SLOTS_PER_DAY), line=3)
    return meta, lines


def read_dataset(path):
    """Read a canonical dataset file.

    :param path: dataset path
    :type path: str
    :rtype: Dataset
    """
    meta, header_lines = _read_header(path)
    try:
        frame = pd.read_csv(path, skiprows=header_lines, dtype={'prosumer_id': str, 'date': str},
                            float_precision='round_trip')
    except (pd.errors.EmptyDataError, pd.errors.ParserError) as ex:
        raise DataFormatError('%s: %s' % (path, ex), line=header_lines + 1)

    missing = [c for c in dataset_columns() if c not in frame.columns]
    if missing:
        raise DataFormatError('%s: missing columns %s.' % (path, missing[:5]), line=header_lines + 1)

    blocks = {p: frame[series_columns(p)].to_numpy(dtype=np.float64) for p in SERIES_PREFIXES}
    samples = []
    for i, (prosumer_id, day, truth) in enumerate(frame[['prosumer_id', 'date', 'has_truth']].itertuples(index=False)):
        try:
            day = datetime.strptime(day, '%Y-%m-%d').date()
        except (TypeError, ValueError):
            raise DataFormatError('%s: bad date %r.' % (path, day), line=header_lines + i + 2)
        weather = make_weather(*[blocks[c][i] for c in WEATHER_CHANNELS])
        sample = DailySample(prosumer_id, day, weather, blocks['net_load'][i],
                             blocks['pv'][i] if int(truth) else None)
        samples.append(validate_sample(sample))

    return Dataset(samples, meta.get('dataset_id', ''))
