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
    Pykwalify extensions module.

    Module containing custom validation functions used for schema checking.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""

from pvdisagg.constants import HEMISPHERES, SPLIT_MODES, TOKEN_LAYOUTS


def increasing_kernels(value, rule_obj, path):
    """Verify the pooling kernel sizes are non-empty and strictly increasing."""
    if not value:
        raise AssertionError('%s needs at least one kernel size.' % path.split('/')[-1])
    if any(b <= a for a, b in zip(value[:-1], value[1:])):
        raise AssertionError(
            '%s must be strictly increasing, got %s.' % (path.split('/')[-1], value)
        )
    return True


def valid_token_layout(value, rule_obj, path):
    """Verify the attention token layout is a valid selection."""
    if value not in TOKEN_LAYOUTS:
        raise AssertionError(
            'Token layout %s is invalid.\n'
            'Available layouts %s' % (value, TOKEN_LAYOUTS)
        )
    return True


def valid_hemisphere(value, rule_obj, path):
    """Verify the hemisphere is a valid selection."""
    if value not in HEMISPHERES:
        raise AssertionError(
            'Hemisphere %s is invalid.\n'
            'Available hemispheres %s' % (value, HEMISPHERES)
        )
    return True


def valid_split_mode(value, rule_obj, path):
    """Verify the train/test split mode is a valid selection."""
    if value not in SPLIT_MODES:
        raise AssertionError(
            'Split mode %s is invalid.\n'
            'Available modes %s' % (value, SPLIT_MODES)
        )
    return True
