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
    pvdisagg.constants

    A module containing all constants used throughout the pvdisagg code base.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.

"""
import os
import tempfile

CONFIG_SCHEMA = os.path.join(os.path.dirname(__file__), "files", "schema.yml")
SCHEMA_EXT = os.path.join(os.path.dirname(__file__), 'files/extensions.py')
DATA_FOLDER = os.path.join(tempfile.gettempdir(), 'pvdisagg')

# half-hour slots per day
SLOTS_PER_DAY = 48

# every kWh series is snapped onto this dyadic grid, sums of grid values
# below 2**21 kWh are exact in float64
KWH_QUANTUM = 2.0 ** -32

INPUT_CHANNELS = ['net_load', 'dni', 'dhi', 'ghi']
WEATHER_CHANNELS = ['dni', 'dhi', 'ghi']

# meter consumption categories
GENERAL_CONSUMPTION = 'GC'
CONTROLLED_LOAD = 'CL'
GROSS_GENERATION = 'GG'
METER_CATEGORIES = [GENERAL_CONSUMPTION, CONTROLLED_LOAD, GROSS_GENERATION]

METER_ID_COLUMNS = ['customer_id', 'category', 'date']
WEATHER_COLUMNS = ['timestamp', 'ghi', 'dni', 'dhi']

DATASET_SCHEMA_VERSION = 1
DATASET_MAGIC = '# pvdisagg-dataset'

CHECKPOINT_SCHEMA_VERSION = 1
CHECKPOINT_META = 'meta.json'
# fixed member timestamp keeps checkpoint bytes reproducible
CHECKPOINT_DATE_TIME = (1980, 1, 1, 0, 0, 0)

SEASONS = ['Summer', 'Autumn', 'Winter', 'Spring']
HEMISPHERES = ['southern', 'northern']

# month -> season
SEASON_MONTHS = {
    'southern': {12: 'Summer', 1: 'Summer', 2: 'Summer',
                 3: 'Autumn', 4: 'Autumn', 5: 'Autumn',
                 6: 'Winter', 7: 'Winter', 8: 'Winter',
                 9: 'Spring', 10: 'Spring', 11: 'Spring'},
    'northern': {12: 'Winter', 1: 'Winter', 2: 'Winter',
                 3: 'Spring', 4: 'Spring', 5: 'Spring',
                 6: 'Summer', 7: 'Summer', 8: 'Summer',
                 9: 'Autumn', 10: 'Autumn', 11: 'Autumn'}
}

METHOD_PROPOSED = 'Proposed'
METHOD_KNN = 'KNN'
METHOD_MEAN = 'MeanBaseline'
METHODS = [METHOD_PROPOSED, METHOD_KNN, METHOD_MEAN]

REPORT_COLUMNS = ['season', 'method', 'mae_kwh', 'rmse_kwh', 'mae_std', 'rmse_std', 'n_days']
HISTORY_COLUMNS = ['epoch', 'train_loss', 'val_mae', 'val_rmse']
PREDICT_COLUMNS = ['prosumer_id', 'date', 'slot', 'net_load_kwh', 'pv_estimate_kwh', 'consumption_kwh']

AGGREGATION = 'mean over prosumer-days, then over repeats'

TOKEN_LAYOUTS = ['time', 'channel']
SPLIT_MODES = ['prosumer', 'date']

# run directory artifacts
RUN_CONFIG_FILE = 'run.cfg'
RUN_HISTORY_FILE = 'history.csv'
RUN_CHECKPOINT_FILE = 'checkpoint.npz'
REPORT_CSV_FILE = 'report.csv'
REPORT_TABLE_FILE = 'report.txt'
DAY_SERIES_FILE = 'day_series.csv'

LOGLEVEL_CHOICES = [
    "debug",
    "info"
]

# blaster task names
TASKLIST = [
    "repeat"
]

COMMANDS = [
    "ingest",
    "synth",
    "train",
    "eval",
    "predict",
    "report"
]

# Default config, grouped by section. The type of every default is the
# type a user supplied value gets coerced to.
DEFAULT_CONFIG = {
    'defaults': {
        'log_level': 'info',
        'data_folder': DATA_FOLDER,
        'seed': 0,
        'threads': 1
    },
    'hi': {
        'kernel_sizes': [1, 2, 4, 8],
        'mlp_hidden': [64, 64],
        'embed_dim': 64
    },
    'attention': {
        'heads': 4,
        'head_dim': 16,
        'model_dim': 64,
        'output_hidden': 128,
        'token_layout': 'time'
    },
    'model': {
        'pred_hidden': 128,
        'series_length': SLOTS_PER_DAY
    },
    'train': {
        'learning_rate': 1e-3,
        'epochs': 100,
        'batch_size': 32,
        'repeats': 5,
        'beta1': 0.9,
        'beta2': 0.999,
        'epsilon': 1e-8,
        'patience': 15,
        'validation_fraction': 0.1
    },
    'data': {
        'split_by': 'prosumer',
        'test_fraction': 0.2,
        'hemisphere': 'southern',
        'percentile_low': 1.0,
        'percentile_high': 99.0,
        'p2_fraction': 0.0,
        'type1_prosumers': [],
        'type2_prosumers': []
    },
    'evaluation': {
        'knn_k': 5,
        'knn_candidates': [1, 3, 5, 10]
    }
}

# Default config sections
DEFAULT_CONFIG_SECTIONS = ['defaults', 'hi', 'attention', 'model', 'train', 'data', 'evaluation']

# Default logging config for pvdisagg
LOGGING_CONFIG = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'default': {
            'format': ''
        },
        'debug': {
            'format': ''
        },
    },
    'filters': {
        'exception': {
            '()': 'pvdisagg.core.LoggerMixin.ExceptionFilter',
        }
    },
    'handlers': {
        'file': {
            'class': 'logging.FileHandler',
            'level': 'INFO',
            'formatter': 'default',
            'filename': '',
            'encoding': 'utf-8',
        },
        'console': {
            'level': 'INFO',
            'class': 'logging.StreamHandler',
            'formatter': 'default',
            'filters': ['exception']
        }
    },
    'loggers': {
        'blaster': {'handlers': ['console', 'file'],
                    'level': 'INFO',
                    'propagate': False},
    }
}
