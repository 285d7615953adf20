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
    pvdisagg.data.samples

    The record types flowing through the data pipeline.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""
from collections import namedtuple

import numpy as np

from ..constants import KWH_QUANTUM, SLOTS_PER_DAY, WEATHER_CHANNELS
from ..exceptions import ValidationError

WeatherDay = namedtuple('WeatherDay', ('dni', 'dhi', 'ghi'))

DailySample = namedtuple('DailySample', ('prosumer_id', 'date', 'weather', 'net_load', 'pv_truth'))

MeterRecord = namedtuple('MeterRecord', ('prosumer_id', 'date', 'category', 'values'))


class ProsumerSplit(namedtuple('ProsumerSplit', ('p1', 'p2'))):
    """Type 1 (PV observed) and Type 2 (net load only) prosumer ids."""

    __slots__ = ()

    def __new__(cls, p1, p2):
        p1, p2 = frozenset(p1), frozenset(p2)
        overlap = p1 & p2
        if overlap:
            raise ValidationError('Prosumers %s are listed as both type 1 and type 2.' % sorted(overlap))
        return super(ProsumerSplit, cls).__new__(cls, p1, p2)

    def type_of(self, prosumer_id):
        """Return 1 or 2, or None for an unknown prosumer."""
        if prosumer_id in self.p1:
            return 1
        if prosumer_id in self.p2:
            return 2
        return None


def quantize(values):
    """Snap kWh values onto the KWH_QUANTUM grid.

    :param values: array like of kWh values
    :return: float64 array on the grid
    :rtype: numpy.ndarray
    """
    values = np.asarray(values, dtype=np.float64)
    return np.round(values / KWH_QUANTUM) * KWH_QUANTUM


def has_truth(sample):
    return sample.pv_truth is not None


def make_weather(dni, dhi, ghi):
    """Build a WeatherDay of float64 arrays."""
    return WeatherDay(np.asarray(dni, dtype=np.float64),
                      np.asarray(dhi, dtype=np.float64),
                      np.asarray(ghi, dtype=np.float64))


def _check_series(series, label, sample, length):
    series = np.asarray(series)
    if series.ndim != 1 or series.shape[0] != length:
        raise ValidationError('%s of prosumer %s on %s has shape %s, expected (%s,).'
                              % (label, sample.prosumer_id, sample.date, series.shape, length))
    if not np.isfinite(series).all():
        raise ValidationError('%s of prosumer %s on %s holds non-finite values.'
                              % (label, sample.prosumer_id, sample.date))
    return series


def validate_sample(sample, length=SLOTS_PER_DAY, raw=True):
    """Check a daily sample against its invariants.

    :param sample: sample to check
    :type sample: DailySample
    :param length: expected series length
    :type length: int
    :param raw: when True the irradiance must be non-negative; normalized
        samples skip that check
    :type raw: bool
    :return: the sample itself
    :rtype: DailySample
    """
    _check_series(sample.net_load, 'net_load', sample, length)
    for channel in WEATHER_CHANNELS:
        values = _check_series(getattr(sample.weather, channel), channel, sample, length)
        if raw and (values < 0).any():
            raise ValidationError('%s of prosumer %s on %s is negative.' % (channel, sample.prosumer_id, sample.date))
    if sample.pv_truth is not None:
        truth = _check_series(sample.pv_truth, 'pv_truth', sample, length)
        if (truth < 0).any():
            raise ValidationError('pv_truth of prosumer %s on %s is negative.' % (sample.prosumer_id, sample.date))
    return sample


def sort_samples(samples):
    return sorted(samples, key=lambda s: (s.prosumer_id, s.date))
