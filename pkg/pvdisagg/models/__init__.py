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
    pvdisagg.models

    The hierarchical-interpolation load encoder, the multi-head attention
    weather encoder and the fusion model built on them.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""
from .layers import Layer, dense, glorot_uniform, init_mlp, mlp_forward
from .hi_encoder import HIConfig, HIParams, hi_coefficients, hi_embed, hi_subsample
from .attention import AttentionConfig, AttentionParams, HeadParams, attention_head, attention_weights, \
    project_qkv, tokenize_weather, weather_embed
from .fusion import ModelConfig, ModelParams, Prediction, batch_loss, bind, consumption_from, day_loss, \
    forward_day, from_named, fuse, init_params, named_parameters, parameter_shapes, predict_day
from .checkpoint import Checkpoint, load_checkpoint, save_checkpoint

__all__ = [
    'Layer',
    'dense',
    'glorot_uniform',
    'init_mlp',
    'mlp_forward',
    'HIConfig',
    'HIParams',
    'hi_coefficients',
    'hi_embed',
    'hi_subsample',
    'AttentionConfig',
    'AttentionParams',
    'HeadParams',
    'attention_head',
    'attention_weights',
    'project_qkv',
    'tokenize_weather',
    'weather_embed',
    'ModelConfig',
    'ModelParams',
    'Prediction',
    'batch_loss',
    'bind',
    'consumption_from',
    'day_loss',
    'forward_day',
    'from_named',
    'fuse',
    'init_params',
    'named_parameters',
    'parameter_shapes',
    'predict_day',
    'Checkpoint',
    'load_checkpoint',
    'save_checkpoint'
]
