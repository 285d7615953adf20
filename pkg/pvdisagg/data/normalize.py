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
    pvdisagg.data.normalize

    Per-channel Z-score normalization of the model inputs. PV targets are
    never normalized.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""
from collections import namedtuple

import numpy as np

from .samples import WeatherDay
from ..constants import INPUT_CHANNELS, WEATHER_CHANNELS
from ..exceptions import NormalizationError


class NormStats(namedtuple('NormStats', ('mean', 'std'))):
    """Mean and population std per input channel, keyed by channel name."""

    __slots__ = ()

    def to_dict(self):
        return {'mean': dict(self.mean), 'std': dict(self.std)}

    @classmethod
    def from_dict(cls, data):
        try:
            return cls({c: float(data['mean'][c]) for c in INPUT_CHANNELS},
                       {c: float(data['std'][c]) for c in INPUT_CHANNELS})
        except (KeyError, TypeError, ValueError) as ex:
            raise NormalizationError('Malformed normalization statistics: %s' % ex)


def _channel(sample, channel):
    if channel == 'net_load':
        return sample.net_load
    return getattr(sample.weather, channel)


def zscore_fit(samples):
    """Fit NormStats on training samples.

    :param samples: training samples
    :type samples: list
    :rtype: NormStats
    """
    if not samples:
        raise NormalizationError('Cannot fit normalization statistics on an empty sample set.')
    mean, std = {}, {}
    for channel in INPUT_CHANNELS:
        values = np.concatenate([np.asarray(_channel(s, channel), dtype=np.float64) for s in samples])
        mean[channel] = float(np.mean(values))
        std[channel] = float(np.std(values))
        if not std[channel] > 0:
            raise NormalizationError('Channel %s has zero variance over the training samples.' % channel)
    return NormStats(mean, std)


def _transform(sample, stats, func):
    weather = WeatherDay(*[func(getattr(sample.weather, c), c) for c in WEATHER_CHANNELS])
    return sample._replace(net_load=func(sample.net_load, 'net_load'), weather=weather)


def zscore_apply(sample, stats):
    """Return the sample with (x - mean) / std applied to every input channel."""
    return _transform(sample, stats,
                      lambda x, c: (np.asarray(x, dtype=np.float64) - stats.mean[c]) / stats.std[c])


def zscore_invert(sample, stats):
    """Inverse of zscore_apply."""
    return _transform(sample, stats,
                      lambda x, c: np.asarray(x, dtype=np.float64) * stats.std[c] + stats.mean[c])
