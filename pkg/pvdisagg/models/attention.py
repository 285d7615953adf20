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
    pvdisagg.models.attention

    Multi-head self-attention over the irradiance of one day.

    With the time layout every half-hour slot is a token carrying the
    (dni, dhi, ghi) triple. The channel layout turns each irradiance series
    into one token of T features instead. Head outputs are concatenated
    per token, flattened and mapped by an output MLP to the weather
    embedding. No positional encoding is used.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""
from collections import namedtuple

import numpy as np

from .layers import glorot_uniform, init_mlp, mlp_forward
from ..constants import SLOTS_PER_DAY, TOKEN_LAYOUTS, WEATHER_CHANNELS
from ..exceptions import ConfigError, ShapeError
from ..numerics import as_node, concat_cols, flatten, matmul, scale, softmax_rows, transpose

HeadParams = namedtuple('HeadParams', ('query', 'key', 'value'))

AttentionParams = namedtuple('AttentionParams', ('heads', 'output'))


class AttentionConfig(namedtuple('AttentionConfig',
                                 ('heads', 'head_dim', 'model_dim', 'output_hidden', 'token_layout'))):
    """Head count, per-head width, embedding width, f_O hidden width and token layout."""

    __slots__ = ()

    def token_shape(self, series_length=SLOTS_PER_DAY):
        """(tokens, features) of the tokenized day."""
        if self.token_layout == 'channel':
            return len(WEATHER_CHANNELS), series_length
        return series_length, len(WEATHER_CHANNELS)

    def output_sizes(self, series_length=SLOTS_PER_DAY):
        tokens = self.token_shape(series_length)[0]
        return [tokens * self.heads * self.head_dim, self.output_hidden, self.model_dim]

    def validate(self):
        if self.heads < 1 or self.head_dim < 1:
            raise ConfigError('attention.heads and attention.head_dim must be >= 1.')
        if self.model_dim < 1 or self.output_hidden < 1:
            raise ConfigError('attention.model_dim and attention.output_hidden must be >= 1.')
        if self.token_layout not in TOKEN_LAYOUTS:
            raise ConfigError('attention.token_layout must be one of %s, got %s.'
                              % (TOKEN_LAYOUTS, self.token_layout))
        return self


def init_attention_params(cfg, rng, series_length=SLOTS_PER_DAY):
    features = cfg.token_shape(series_length)[1]
    heads = tuple(HeadParams(*[glorot_uniform(rng, features, cfg.head_dim) for _ in range(3)])
                  for _ in range(cfg.heads))
    return AttentionParams(heads, init_mlp(rng, cfg.output_sizes(series_length)))


def tokenize_weather(weather, layout='time'):
    """Stack the irradiance series into a token matrix.

    :param weather: one day of irradiance
    :type weather: WeatherDay
    :param layout: 'time' gives T x 3 with row t = (dni, dhi, ghi), 'channel'
        gives its 3 x T transpose
    :rtype: numpy.ndarray
    """
    tokens = np.column_stack([np.asarray(getattr(weather, c), dtype=np.float64) for c in WEATHER_CHANNELS])
    if layout == 'channel':
        return tokens.T.copy()
    if layout != 'time':
        raise ConfigError('Unknown token layout %s, expected one of %s.' % (layout, TOKEN_LAYOUTS))
    return tokens


def project_qkv(tokens, head):
    """Row-wise query, key and value projections of one head."""
    tokens = as_node(tokens)
    return matmul(tokens, head.query), matmul(tokens, head.key), matmul(tokens, head.value)


def attention_weights(query, key):
    """softmax(Q K^T / sqrt(d_h)), one row per query token."""
    query, key = as_node(query), as_node(key)
    if query.shape[1] != key.shape[1]:
        raise ShapeError('query %s and key %s widths differ.' % (query.shape, key.shape))
    return softmax_rows(scale(matmul(query, transpose(key)), 1.0 / np.sqrt(query.shape[1])))


def attention_head(query, key, value):
    """Scaled dot-product attention of one head."""
    value = as_node(value)
    weights = attention_weights(query, key)
    if weights.shape[1] != value.shape[0]:
        raise ShapeError('attention over %s keys cannot mix %s values.' % (weights.shape[1], value.shape))
    return matmul(weights, value)


def weather_embed(weather, cfg, params):
    """Weather embedding of one day.

    :param weather: normalized irradiance
    :type weather: WeatherDay
    :param cfg: attention configuration
    :type cfg: AttentionConfig
    :param params: attention parameters
    :type params: AttentionParams
    :return: 1 x model_dim node
    """
    tokens = tokenize_weather(weather, cfg.token_layout)
    heads = [attention_head(*project_qkv(tokens, head)) for head in params.heads]
    return mlp_forward(flatten(concat_cols(heads)), params.output)
