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
    pvdisagg.training.optimizer

    Adam with bias correction over named parameter arrays. Steps are pure:
    the inputs are never modified.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""
from collections import OrderedDict, namedtuple

import numpy as np

from ..exceptions import TrainingError

AdamState = namedtuple('AdamState', ('step', 'm', 'v'))

AdamConfig = namedtuple('AdamConfig', ('learning_rate', 'beta1', 'beta2', 'epsilon'))


def parameter_group(name):
    """'hi.scale0.layer1.weight' -> 'hi.scale0'."""
    return '.'.join(name.split('.')[:2])


def adam_init(params):
    """Zero moments for every named parameter."""
    return AdamState(0,
                     OrderedDict((k, np.zeros_like(v)) for k, v in params.items()),
                     OrderedDict((k, np.zeros_like(v)) for k, v in params.items()))


def adam_step(params, grads, state, cfg):
    """One Adam update.

    :param params: name -> array
    :type params: OrderedDict
    :param grads: name -> gradient of the same shape
    :type grads: dict
    :param state: moments from the previous step
    :type state: AdamState
    :param cfg: anything with learning_rate, beta1, beta2 and epsilon
    :return: updated parameters and state
    :rtype: tuple
    """
    for name in params:
        if not np.isfinite(grads[name]).all():
            raise TrainingError('Non-finite gradient in parameter group %s (%s).' % (parameter_group(name), name))

    step = state.step + 1
    correction1 = 1.0 - cfg.beta1 ** step
    correction2 = 1.0 - cfg.beta2 ** step

    new_params, new_m, new_v = OrderedDict(), OrderedDict(), OrderedDict()
    for name, value in params.items():
        g = grads[name]
        m = cfg.beta1 * state.m[name] + (1.0 - cfg.beta1) * g
        v = cfg.beta2 * state.v[name] + (1.0 - cfg.beta2) * (g * g)
        update = cfg.learning_rate * (m / correction1) / (np.sqrt(v / correction2) + cfg.epsilon)
        new_params[name] = value - update
        new_m[name] = m
        new_v[name] = v
    return new_params, AdamState(step, new_m, new_v)
