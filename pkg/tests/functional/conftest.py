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
    tests.conftest

    Module containing hooks used by all tests.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""

import os

import pytest

from fixtures import config, model_cfg, channel_model_cfg, params, train_cfg, synth_world, synth_samples, \
    norm_stats, sample, data_folder

__all__ = [
    config,
    model_cfg,
    channel_model_cfg,
    params,
    train_cfg,
    synth_world,
    synth_samples,
    norm_stats,
    sample,
    data_folder
]


@pytest.fixture(scope='session', autouse=True)
def _run_from_tests_dir():
    # tests reference ../assets relative to tests/functional (tox changedir)
    cwd = os.getcwd()
    os.chdir(os.path.dirname(os.path.abspath(__file__)))
    yield
    os.chdir(cwd)
