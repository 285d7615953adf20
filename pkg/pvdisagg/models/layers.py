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
    pvdisagg.models.layers

    Dense layers and multi-layer perceptrons on row vectors: y = x W + b.

    Layer fields hold numpy arrays at rest and graph nodes while a
    gradient is being taken; the forward functions accept either.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""
from collections import namedtuple

import numpy as np

from ..numerics import add_bias, matmul, relu

Layer = namedtuple('Layer', ('weight', 'bias'))


def glorot_uniform(rng, fan_in, fan_out):
    """Uniform weights in +/- sqrt(6 / (fan_in + fan_out))."""
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=(fan_in, fan_out))


def init_mlp(rng, sizes):
    """Initialise an MLP with the given layer widths, input first.

    :param rng: numpy random generator
    :type rng: numpy.random.Generator
    :param sizes: [input, hidden..., output]
    :type sizes: list
    :rtype: tuple
    """
    return tuple(Layer(glorot_uniform(rng, fan_in, fan_out), np.zeros((1, fan_out)))
                 for fan_in, fan_out in zip(sizes[:-1], sizes[1:]))


def dense(x, layer):
    return add_bias(matmul(x, layer.weight), layer.bias)


def mlp_forward(x, layers):
    """ReLU on every hidden layer, linear output."""
    for layer in layers[:-1]:
        x = relu(dense(x, layer))
    return dense(x, layers[-1])
