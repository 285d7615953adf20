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
    pvdisagg.models.fusion

    The complete disaggregation model. The load and weather embeddings are
    concatenated and a prediction MLP followed by ReLU yields the PV
    estimate of every slot in kWh. Inputs are Z-scored, targets are not.

    Parameters travel either as a ModelParams tree or as an ordered mapping
    of dotted names to arrays (used by the optimizer and the checkpoint):

        hi.scale{s}.layer{i}.weight, hi.scale{s}.layer{i}.bias, hi.scale_weights
        attn.head{h}.query, attn.head{h}.key, attn.head{h}.value
        attn.output.layer{i}.weight, attn.output.layer{i}.bias
        pred.layer{i}.weight, pred.layer{i}.bias

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""
from collections import OrderedDict, namedtuple
from functools import reduce

import numpy as np

from .attention import AttentionConfig, AttentionParams, HeadParams, init_attention_params, weather_embed
from .hi_encoder import HIConfig, HIParams, hi_embed, init_hi_params
from .layers import Layer, init_mlp, mlp_forward
from ..constants import DEFAULT_CONFIG, SLOTS_PER_DAY
from ..data.normalize import zscore_apply
from ..data.samples import quantize, validate_sample
from ..exceptions import ConfigError, ContractError, ParameterError, ShapeError
from ..numerics import Node, add, as_matrix, as_node, concat_cols, mse, relu, scale

ModelParams = namedtuple('ModelParams', ('hi', 'attn', 'pred'))

Prediction = namedtuple('Prediction', ('ghat', 'date', 'prosumer_id'))


class ModelConfig(namedtuple('ModelConfig', ('hi', 'attention', 'pred_hidden', 'series_length'))):
    """Configuration of the whole model."""

    __slots__ = ()

    @property
    def fused_dim(self):
        return self.hi.embed_dim + self.attention.model_dim

    def pred_sizes(self):
        return [self.fused_dim, self.pred_hidden, self.series_length]

    def validate(self):
        if self.series_length != SLOTS_PER_DAY:
            raise ConfigError('model.series_length must be %s, got %s.' % (SLOTS_PER_DAY, self.series_length))
        if self.pred_hidden < 1:
            raise ConfigError('model.pred_hidden must be >= 1, got %s.' % self.pred_hidden)
        self.hi.validate(self.series_length)
        self.attention.validate()
        return self

    def to_dict(self):
        return {
            'hi': {'kernel_sizes': list(self.hi.kernel_sizes), 'mlp_hidden': list(self.hi.mlp_hidden),
                   'embed_dim': self.hi.embed_dim},
            'attention': dict(self.attention._asdict()),
            'model': {'pred_hidden': self.pred_hidden, 'series_length': self.series_length}
        }

    @classmethod
    def from_dict(cls, config):
        """Build from a mapping with hi, attention and model sections.

        Missing keys fall back to the defaults.
        """
        def section(name):
            merged = dict(DEFAULT_CONFIG[name])
            merged.update(config.get(name, {}))
            return merged

        hi, attention, model = section('hi'), section('attention'), section('model')
        return cls(HIConfig(tuple(int(k) for k in hi['kernel_sizes']), tuple(int(h) for h in hi['mlp_hidden']),
                            int(hi['embed_dim'])),
                   AttentionConfig(int(attention['heads']), int(attention['head_dim']),
                                   int(attention['model_dim']), int(attention['output_hidden']),
                                   str(attention['token_layout'])),
                   int(model['pred_hidden']), int(model['series_length'])).validate()


def init_params(cfg, seed=0):
    """Glorot-initialised parameters, deterministic in the seed.

    :type cfg: ModelConfig
    :rtype: ModelParams
    """
    rng = np.random.default_rng(seed)
    hi = init_hi_params(cfg.hi, rng, cfg.series_length)
    attn = init_attention_params(cfg.attention, rng, cfg.series_length)
    return ModelParams(hi, attn, init_mlp(rng, cfg.pred_sizes()))


def _layers(prefix, layers):
    for i, layer in enumerate(layers):
        yield '%s.layer%d.weight' % (prefix, i), layer.weight
        yield '%s.layer%d.bias' % (prefix, i), layer.bias


def named_parameters(params):
    """Flatten a parameter tree into an ordered name -> value mapping."""
    named = OrderedDict()
    for s, mlp in enumerate(params.hi.mlps):
        named.update(_layers('hi.scale%d' % s, mlp))
    named['hi.scale_weights'] = params.hi.scale_weights
    for h, head in enumerate(params.attn.heads):
        for field in HeadParams._fields:
            named['attn.head%d.%s' % (h, field)] = getattr(head, field)
    named.update(_layers('attn.output', params.attn.output))
    named.update(_layers('pred', params.pred))
    return named


def _layer_shapes(prefix, sizes):
    for i, (fan_in, fan_out) in enumerate(zip(sizes[:-1], sizes[1:])):
        yield '%s.layer%d.weight' % (prefix, i), (fan_in, fan_out)
        yield '%s.layer%d.bias' % (prefix, i), (1, fan_out)


def parameter_shapes(cfg):
    """Expected name -> shape mapping for a configuration, in named_parameters order."""
    length = cfg.series_length
    shapes = OrderedDict()
    for s, kernel in enumerate(cfg.hi.kernel_sizes):
        shapes.update(_layer_shapes('hi.scale%d' % s, cfg.hi.mlp_sizes(kernel, length)))
    shapes['hi.scale_weights'] = (1, cfg.hi.scales)
    features = cfg.attention.token_shape(length)[1]
    for h in range(cfg.attention.heads):
        for field in HeadParams._fields:
            shapes['attn.head%d.%s' % (h, field)] = (features, cfg.attention.head_dim)
    shapes.update(_layer_shapes('attn.output', cfg.attention.output_sizes(length)))
    shapes.update(_layer_shapes('pred', cfg.pred_sizes()))
    return shapes


def from_named(named, cfg):
    """Rebuild a parameter tree from a name -> value mapping.

    Values may be arrays or graph nodes. Missing names and wrong shapes are
    rejected.

    :rtype: ModelParams
    """
    shapes = parameter_shapes(cfg)
    missing = [name for name in shapes if name not in named]
    if missing:
        raise ParameterError('Missing model parameters: %s' % missing[:5])
    extra = [name for name in named if name not in shapes]
    if extra:
        raise ParameterError('Unexpected model parameters: %s' % extra[:5])
    for name, shape in shapes.items():
        if tuple(named[name].shape) != tuple(shape):
            raise ShapeError('Parameter %s has shape %s, expected %s.' % (name, tuple(named[name].shape), shape))

    def layers(prefix, count):
        return tuple(Layer(named['%s.layer%d.weight' % (prefix, i)], named['%s.layer%d.bias' % (prefix, i)])
                     for i in range(count))

    hi_depth = len(cfg.hi.mlp_hidden) + 1
    hi = HIParams(tuple(layers('hi.scale%d' % s, hi_depth) for s in range(cfg.hi.scales)),
                  named['hi.scale_weights'])
    heads = tuple(HeadParams(*[named['attn.head%d.%s' % (h, f)] for f in HeadParams._fields])
                  for h in range(cfg.attention.heads))
    attn = AttentionParams(heads, layers('attn.output', 2))
    return ModelParams(hi, attn, layers('pred', 2))


def bind(params, cfg):
    """Wrap every parameter in a fresh named leaf node.

    :return: the node tree and the ordered name -> node mapping
    :rtype: tuple
    """
    nodes = OrderedDict((name, Node(np.array(value, dtype=np.float64), name=name))
                        for name, value in named_parameters(params).items())
    return from_named(nodes, cfg), nodes


def fuse(e_load, e_weather):
    """[load embedding | weather embedding]."""
    return concat_cols([e_load, e_weather])


def forward_day(net_load, weather, cfg, params):
    """PV estimate node of one day from normalized inputs.

    :param net_load: normalized net load series
    :param weather: normalized irradiance
    :type weather: WeatherDay
    :type cfg: ModelConfig
    :type params: ModelParams
    :return: 1xT node, non-negative
    """
    fused = fuse(hi_embed(as_matrix(net_load), cfg.hi, params.hi),
                 weather_embed(weather, cfg.attention, params.attn))
    return relu(mlp_forward(fused, params.pred))


def predict_day(sample, params, cfg, norm_stats=None):
    """Predict the PV generation of one raw prosumer-day.

    :param sample: raw sample, the ground truth is not needed
    :type sample: DailySample
    :param params: model parameters
    :type params: ModelParams
    :param cfg: model configuration
    :type cfg: ModelConfig
    :param norm_stats: input statistics, None feeds the raw inputs
    :type norm_stats: NormStats
    :rtype: Prediction
    """
    validate_sample(sample, cfg.series_length)
    if norm_stats is not None:
        sample = zscore_apply(sample, norm_stats)
    ghat = forward_day(sample.net_load, sample.weather, cfg, params)
    return Prediction(quantize(ghat.value[0]), sample.date, sample.prosumer_id)


def day_loss(pred, truth):
    """Mean squared error of one day, a 1x1 node.

    :param pred: a Prediction or the ghat node of forward_day
    :param truth: true PV series
    """
    ghat = pred.ghat if isinstance(pred, Prediction) else pred
    return mse(ghat, truth)


def batch_loss(losses):
    """Mean of per-day loss nodes."""
    losses = list(losses)
    if not losses:
        raise ContractError('batch_loss needs at least one day.')
    return scale(reduce(add, losses), 1.0 / len(losses))


def consumption_from(net_load, ghat):
    """Consumption estimate: net load plus estimated generation."""
    net_load = np.asarray(net_load, dtype=np.float64)
    ghat = np.asarray(ghat, dtype=np.float64)
    if net_load.shape != ghat.shape:
        raise ShapeError('net load %s and PV estimate %s shapes differ.' % (net_load.shape, ghat.shape))
    return net_load + ghat
