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
    pvdisagg.evaluation.metrics

    Error metrics of one day in kWh.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""
import numpy as np
from sklearn.metrics import mean_absolute_error, mean_squared_error

from ..exceptions import ShapeError


def _pair(pred, truth):
    pred = np.asarray(pred, dtype=np.float64).ravel()
    truth = np.asarray(truth, dtype=np.float64).ravel()
    if pred.shape != truth.shape:
        raise ShapeError('prediction %s and truth %s lengths differ.' % (pred.shape, truth.shape))
    if pred.size == 0:
        raise ShapeError('Cannot score an empty series.')
    return pred, truth


def mae(pred, truth):
    """Mean absolute error of one series."""
    pred, truth = _pair(pred, truth)
    return float(mean_absolute_error(truth, pred))


def rmse(pred, truth):
    """Root mean squared error of one series."""
    pred, truth = _pair(pred, truth)
    return float(np.sqrt(mean_squared_error(truth, pred)))


def day_metrics(preds, truths):
    """Per-day MAE and RMSE arrays, in input order.

    :param preds: predicted series, one per day
    :param truths: true series, one per day
    :rtype: tuple
    """
    preds, truths = list(preds), list(truths)
    if len(preds) != len(truths):
        raise ShapeError('%s predictions for %s days.' % (len(preds), len(truths)))
    return (np.array([mae(p, t) for p, t in zip(preds, truths)]),
            np.array([rmse(p, t) for p, t in zip(preds, truths)]))
