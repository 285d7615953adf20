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
    pvdisagg.data.seasons

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""
from collections import OrderedDict

from ..constants import HEMISPHERES, SEASON_MONTHS, SEASONS
from ..exceptions import ValidationError


def season_of(day, hemisphere='southern'):
    """Meteorological season of a date."""
    if hemisphere not in HEMISPHERES:
        raise ValidationError('Unknown hemisphere %s, expected one of %s.' % (hemisphere, HEMISPHERES))
    return SEASON_MONTHS[hemisphere][day.month]


def seasonal_split(samples, hemisphere='southern'):
    """Partition samples by season, keeping their order within each season.

    :return: every season in Summer, Autumn, Winter, Spring order, possibly empty
    :rtype: OrderedDict
    """
    parts = OrderedDict((season, []) for season in SEASONS)
    for sample in samples:
        parts[season_of(sample.date, hemisphere)].append(sample)
    return parts
