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
    pvdisagg.data.splits

    Train/test and train/validation partitions of a sample list.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""
import math

import numpy as np

from ..constants import SPLIT_MODES
from ..exceptions import ValidationError


def _last_dates(samples, fraction):
    """The latest share of distinct dates, at least one when fraction > 0."""
    dates = sorted(set(s.date for s in samples))
    if fraction <= 0 or len(dates) < 2:
        return set()
    count = min(len(dates) - 1, max(1, int(round(fraction * len(dates)))))
    return set(dates[-count:])


def split_samples(samples, split_by='prosumer', test_fraction=0.2, seed=0):
    """Split samples into train and test lists.

    prosumer: a seeded share of prosumer ids goes to test.
    date: the latest share of calendar days goes to test.

    :return: (train, test), each keeping the input order
    :rtype: tuple
    """
    if split_by not in SPLIT_MODES:
        raise ValidationError('Unknown split mode %s, expected one of %s.' % (split_by, SPLIT_MODES))

    if split_by == 'date':
        held = _last_dates(samples, test_fraction)
        return [s for s in samples if s.date not in held], [s for s in samples if s.date in held]

    ids = sorted(set(s.prosumer_id for s in samples))
    if len(ids) < 2:
        raise ValidationError('Splitting by prosumer needs at least two prosumers, found %s.' % len(ids))
    count = min(len(ids) - 1, max(1, int(math.floor(test_fraction * len(ids) + 0.5))))
    order = np.random.default_rng(seed).permutation(len(ids))
    held = set(ids[i] for i in order[:count])
    return [s for s in samples if s.prosumer_id not in held], [s for s in samples if s.prosumer_id in held]


def holdout_validation(samples, fraction=0.1):
    """Hold out the latest share of training days for model selection.

    :return: (fit, validation)
    :rtype: tuple
    """
    held = _last_dates(samples, fraction)
    return [s for s in samples if s.date not in held], [s for s in samples if s.date in held]
