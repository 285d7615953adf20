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
    tests.fixtures

    Module containing commonly used pytest fixtures.

    How to add a new common fixture for use by all pytests?
        1. Add your fixture to this module
        2. Import the fixture in the conftest module
        3. Inside your test module, you will be able to access the fixture
        (no need to import fixture - conftest handles everything)

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""

import os
from datetime import date

import numpy as np
import pytest

from pvdisagg.data.normalize import zscore_fit
from pvdisagg.data.samples import DailySample, make_weather
from pvdisagg.data.synth import synth_generate
from pvdisagg.models.fusion import ModelConfig, init_params
from pvdisagg.training.trainer import TrainConfig
from pvdisagg.utils.config import Config

os.environ['PVDISAGG_SETTINGS'] = '../assets/pvdisagg.cfg'

SMALL_MODEL = {
    'hi': {'kernel_sizes': [1, 2, 4], 'mlp_hidden': [8], 'embed_dim': 8},
    'attention': {'heads': 2, 'head_dim': 4, 'model_dim': 8, 'output_hidden': 16, 'token_layout': 'time'},
    'model': {'pred_hidden': 16}
}


@pytest.fixture
def config():
    config = Config()
    config.load()
    return config


@pytest.fixture
def model_cfg():
    return ModelConfig.from_dict(SMALL_MODEL)


@pytest.fixture
def channel_model_cfg():
    layout = dict(SMALL_MODEL)
    layout['attention'] = dict(SMALL_MODEL['attention'], token_layout='channel')
    return ModelConfig.from_dict(layout)


@pytest.fixture
def params(model_cfg):
    return init_params(model_cfg, seed=0)


@pytest.fixture
def train_cfg():
    return TrainConfig(learning_rate=0.01, epochs=2, batch_size=4, seed=0, repeats=2, beta1=0.9, beta2=0.999,
                       epsilon=1e-8, patience=5, validation_fraction=0.2, threads=1)


@pytest.fixture(scope='class')
def synth_world():
    return synth_generate(4, 10, seed=3)


@pytest.fixture
def synth_samples(synth_world):
    return list(synth_world.samples)


@pytest.fixture
def norm_stats(synth_samples):
    return zscore_fit(synth_samples)


@pytest.fixture
def sample():
    slots = np.arange(48, dtype=np.float64)
    ghi = np.clip(800.0 * np.sin(np.pi * (slots - 12) / 28.0), 0.0, None)
    weather = make_weather(0.6 * ghi, 0.4 * ghi, ghi)
    pv = ghi / 1000.0
    return DailySample('P1', date(2011, 1, 15), weather, 0.5 - pv, pv)


@pytest.fixture
def data_folder(tmp_path):
    folder = tmp_path / 'data'
    folder.mkdir()
    return str(folder)
