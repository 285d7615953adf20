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
    pvdisagg.training

    Optimizer, trainer and repeated runs.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""
from .optimizer import AdamConfig, AdamState, adam_init, adam_step, parameter_group
from .trainer import TrainConfig, TrainHistory, TrainResult, batch_gradients, epoch_permutation, \
    sample_gradient, train, validation_metrics

__all__ = [
    'AdamConfig',
    'AdamState',
    'adam_init',
    'adam_step',
    'parameter_group',
    'TrainConfig',
    'TrainHistory',
    'TrainResult',
    'batch_gradients',
    'epoch_permutation',
    'sample_gradient',
    'train',
    'validation_metrics'
]
