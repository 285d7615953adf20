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
    pvdisagg.data

    Ingestion, assembly, normalization, seasonal partitioning, synthetic
    generation and the canonical dataset file.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""
from .samples import DailySample, MeterRecord, ProsumerSplit, WeatherDay, has_truth, make_weather, quantize, \
    sort_samples, validate_sample
from .ingest import assemble_days, load_meter_csv, load_weather_csv, make_prosumer_split, percentile_filter
from .normalize import NormStats, zscore_apply, zscore_fit, zscore_invert
from .seasons import season_of, seasonal_split
from .synth import synth_generate
from .dataset_file import Dataset, read_dataset, write_dataset
from .splits import holdout_validation, split_samples

__all__ = [
    'DailySample',
    'MeterRecord',
    'ProsumerSplit',
    'WeatherDay',
    'has_truth',
    'make_weather',
    'quantize',
    'sort_samples',
    'validate_sample',
    'assemble_days',
    'load_meter_csv',
    'load_weather_csv',
    'make_prosumer_split',
    'percentile_filter',
    'NormStats',
    'zscore_apply',
    'zscore_fit',
    'zscore_invert',
    'season_of',
    'seasonal_split',
    'synth_generate',
    'Dataset',
    'read_dataset',
    'write_dataset',
    'holdout_validation',
    'split_samples'
]
