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
    pvdisagg.evaluation

    Metrics, baselines and reports.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""
from .metrics import day_metrics, mae, rmse
from .baselines import KNNBaseline, MeanBaseline, input_features, knn_baseline, mean_baseline, select_knn_k
from .report import SeasonReport, aggregate_runs, emit_day_series, prediction_frame, season_metrics, \
    season_report, write_predictions

__all__ = [
    'day_metrics',
    'mae',
    'rmse',
    'KNNBaseline',
    'MeanBaseline',
    'input_features',
    'knn_baseline',
    'mean_baseline',
    'select_knn_k',
    'SeasonReport',
    'aggregate_runs',
    'emit_day_series',
    'prediction_frame',
    'season_metrics',
    'season_report',
    'write_predictions'
]
