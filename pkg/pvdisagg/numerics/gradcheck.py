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
    pvdisagg.numerics.gradcheck

    Central finite-difference helpers used to check analytic gradients.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""
import numpy as np

DEFAULT_STEP = 1e-5


def numerical_gradient(func, value, step=DEFAULT_STEP, entries=None):
    """Central difference gradient of a scalar function of one matrix.

    :param func: callable taking a 2-D array and returning a float
    :type func: callable
    :param value: point to differentiate at (left untouched)
    :type value: numpy.ndarray
    :param step: finite-difference step
    :type step: float
    :param entries: optional iterable of (row, col) indices to check, the
        remaining entries are left at zero
    :type entries: iterable
    :return: gradient estimate of the same shape as value
    :rtype: numpy.ndarray
    """
    point = np.array(value, dtype=np.float64, copy=True)
    grad = np.zeros_like(point)
    if entries is None:
        entries = np.ndindex(*point.shape)

    for index in entries:
        index = tuple(index)
        saved = point[index]
        point[index] = saved + step
        upper = float(func(point))
        point[index] = saved - step
        lower = float(func(point))
        point[index] = saved
        grad[index] = (upper - lower) / (2.0 * step)
    return grad


def relative_error(analytic, numeric, floor=1e-6):
    """Largest elementwise relative error where either gradient exceeds floor.

    Entries where both magnitudes are at or below floor are ignored, which
    keeps float noise around zero gradients from dominating.

    :rtype: float
    """
    analytic = np.asarray(analytic, dtype=np.float64)
    numeric = np.asarray(numeric, dtype=np.float64)
    scale = np.maximum(np.abs(analytic), np.abs(numeric))
    mask = scale > floor
    if not mask.any():
        return 0.0
    return float(np.max(np.abs(analytic - numeric)[mask] / scale[mask]))
