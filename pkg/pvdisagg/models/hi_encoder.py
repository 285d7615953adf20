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
    pvdisagg.models.hi_encoder

    Hierarchical interpolation encoder for the daily net load.

    Every scale max-pools the load with its own kernel, maps the coarse
    series through a scale-specific MLP to a coefficient vector, and the
    load embedding is the sum of those vectors weighted by one learnable
    scalar per scale.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""
import math
from collections import namedtuple

import numpy as np

from .layers import init_mlp, mlp_forward
from ..constants import SLOTS_PER_DAY
from ..exceptions import ConfigError, ShapeError
from ..numerics import add, as_node, maxpool1d, mul_scalar, slice_cols

HIParams = namedtuple('HIParams', ('mlps', 'scale_weights'))


class HIConfig(namedtuple('HIConfig', ('kernel_sizes', 'mlp_hidden', 'embed_dim'))):
    """Kernel sizes, hidden widths of every scale MLP and the embedding width."""

    __slots__ = ()

    @property
    def scales(self):
        return len(self.kernel_sizes)

    def pooled_length(self, kernel, series_length=SLOTS_PER_DAY):
        return int(math.ceil(series_length / float(kernel)))

    def mlp_sizes(self, kernel, series_length=SLOTS_PER_DAY):
        return [self.pooled_length(kernel, series_length)] + list(self.mlp_hidden) + [self.embed_dim]

    def validate(self, series_length=SLOTS_PER_DAY):
        kernels = list(self.kernel_sizes)
        if not kernels:
            raise ConfigError('hi.kernel_sizes needs at least one kernel.')
        if any(k < 1 or k > series_length for k in kernels):
            raise ConfigError('hi.kernel_sizes must lie in [1, %s], got %s.' % (series_length, kernels))
        if any(b <= a for a, b in zip(kernels, kernels[1:])):
            raise ConfigError('hi.kernel_sizes must be strictly increasing, got %s.' % kernels)
        if self.embed_dim < 1 or any(h < 1 for h in self.mlp_hidden):
            raise ConfigError('hi.embed_dim and hi.mlp_hidden widths must be >= 1.')
        return self


def init_hi_params(cfg, rng, series_length=SLOTS_PER_DAY):
    mlps = tuple(init_mlp(rng, cfg.mlp_sizes(k, series_length)) for k in cfg.kernel_sizes)
    return HIParams(mlps, np.full((1, cfg.scales), 1.0 / cfg.scales))


def hi_subsample(load, kernel):
    """Max-pool the load with stride equal to the kernel."""
    return maxpool1d(as_node(load), kernel)


def hi_coefficients(subsampled, layers):
    """Coefficient vector of one scale from its pooled series."""
    return mlp_forward(as_node(subsampled), layers)


def hi_embed(load, cfg, params):
    """Load embedding: sum over scales of a_s times the scale coefficients.

    :param load: 1xT net load row (normalized)
    :param cfg: encoder configuration
    :type cfg: HIConfig
    :param params: encoder parameters
    :type params: HIParams
    :return: 1 x embed_dim node
    """
    load = as_node(load)
    if load.shape[0] != 1:
        raise ShapeError('hi_embed needs a single 1xT row, got %s.' % (load.shape,))
    if len(params.mlps) != cfg.scales:
        raise ShapeError('hi_embed has %s scale MLPs for %s kernels.' % (len(params.mlps), cfg.scales))

    weights = as_node(params.scale_weights)
    embedding = None
    for s, kernel in enumerate(cfg.kernel_sizes):
        theta = hi_coefficients(hi_subsample(load, kernel), params.mlps[s])
        term = mul_scalar(slice_cols(weights, s, s + 1), theta)
        embedding = term if embedding is None else add(embedding, term)
    return embedding
