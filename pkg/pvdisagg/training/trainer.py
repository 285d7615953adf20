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
    pvdisagg.training.trainer

    Supervised training of the fusion model on prosumer-days with PV truth.

    The latest share of training days is held out for model selection and
    the parameters with the best validation MAE are returned. Every epoch
    visits the samples in a permutation drawn from a counter-based
    generator keyed by (seed, epoch). Per-sample gradients may be computed
    on worker threads; they are always reduced in sample order so results
    do not depend on the thread count.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""
import time
from collections import OrderedDict, namedtuple
from concurrent.futures import ThreadPoolExecutor
from logging import getLogger

import numpy as np
import pandas as pd

from .optimizer import adam_init, adam_step
from ..constants import HISTORY_COLUMNS
from ..data.normalize import zscore_apply, zscore_fit
from ..data.samples import has_truth
from ..data.splits import holdout_validation
from ..evaluation.metrics import mae, rmse
from ..exceptions import ConfigError, TrainingError
from ..models.fusion import day_loss, forward_day, from_named, init_params, named_parameters, predict_day
from ..numerics import Node, backward

LOG = getLogger(__name__)

TrainResult = namedtuple('TrainResult', ('params', 'history', 'norm_stats', 'validation', 'best_epoch'))


class TrainConfig(namedtuple('TrainConfig', ('learning_rate', 'epochs', 'batch_size', 'seed', 'repeats', 'beta1',
                                             'beta2', 'epsilon', 'patience', 'validation_fraction', 'threads'))):
    """Optimizer, schedule and reproducibility settings of a training run."""

    __slots__ = ()

    @classmethod
    def from_config(cls, config):
        """Build from a pvdisagg Config (train and defaults sections)."""
        train = config['train']
        return cls(float(train['learning_rate']), int(train['epochs']), int(train['batch_size']),
                   int(config['defaults']['seed']), int(train['repeats']), float(train['beta1']),
                   float(train['beta2']), float(train['epsilon']), int(train['patience']),
                   float(train['validation_fraction']), int(config['defaults']['threads'])).validate()

    def validate(self):
        # a zero learning rate is accepted as a null-update audit run
        if not self.learning_rate >= 0:
            raise ConfigError('train.learning_rate must be >= 0, got %s.' % self.learning_rate)
        if self.epochs < 1:
            raise ConfigError('train.epochs must be >= 1, got %s.' % self.epochs)
        if self.batch_size < 1:
            raise ConfigError('train.batch_size must be >= 1, got %s.' % self.batch_size)
        if self.repeats < 1:
            raise ConfigError('train.repeats must be >= 1, got %s.' % self.repeats)
        if not (0 <= self.beta1 < 1 and 0 <= self.beta2 < 1):
            raise ConfigError('train.beta1 and train.beta2 must lie in [0, 1).')
        if not self.epsilon > 0:
            raise ConfigError('train.epsilon must be > 0, got %s.' % self.epsilon)
        if self.patience < 1:
            raise ConfigError('train.patience must be >= 1, got %s.' % self.patience)
        if not 0 <= self.validation_fraction < 1:
            raise ConfigError('train.validation_fraction must lie in [0, 1), got %s.' % self.validation_fraction)
        if self.seed < 0:
            raise ConfigError('defaults.seed must be >= 0, got %s.' % self.seed)
        if self.threads < 1:
            raise ConfigError('defaults.threads must be >= 1, got %s.' % self.threads)
        return self


class TrainHistory(object):
    """Per-epoch training loss, validation metrics and wall clock."""

    def __init__(self):
        self.epoch = []
        self.train_loss = []
        self.val_mae = []
        self.val_rmse = []
        self.wall_clock = []

    def __len__(self):
        return len(self.epoch)

    def append(self, epoch, train_loss, val_mae, val_rmse, wall_clock):
        self.epoch.append(epoch)
        self.train_loss.append(train_loss)
        self.val_mae.append(val_mae)
        self.val_rmse.append(val_rmse)
        self.wall_clock.append(wall_clock)

    def to_frame(self):
        """History without the wall clock, which differs between runs."""
        return pd.DataFrame(OrderedDict(zip(HISTORY_COLUMNS, [self.epoch, self.train_loss,
                                                              self.val_mae, self.val_rmse])))

    def write_csv(self, path):
        self.to_frame().to_csv(path, index=False)


def epoch_permutation(seed, epoch, count):
    """Sample order of one epoch."""
    return np.random.Generator(np.random.Philox(key=seed, counter=epoch)).permutation(count)


def sample_gradient(named, item, model_cfg):
    """Loss and gradients of one normalized sample.

    Every call binds fresh leaf nodes, so concurrent calls share no state.

    :param named: name -> parameter array
    :param item: (net_load, weather, pv_truth) with normalized inputs
    :return: loss value and name -> gradient
    :rtype: tuple
    """
    nodes = OrderedDict((name, Node(value, name=name)) for name, value in named.items())
    net_load, weather, truth = item
    loss = day_loss(forward_day(net_load, weather, model_cfg, from_named(nodes, model_cfg)), truth)
    backward(loss)
    return float(loss.value[0, 0]), OrderedDict((name, node.grad) for name, node in nodes.items())


def batch_gradients(named, batch, model_cfg, executor=None):
    """Mean loss and mean gradients over a batch, reduced in batch order."""
    if executor is None:
        results = [sample_gradient(named, item, model_cfg) for item in batch]
    else:
        results = list(executor.map(lambda item: sample_gradient(named, item, model_cfg), batch))

    grads = OrderedDict((name, np.zeros_like(value)) for name, value in named.items())
    total = 0.0
    for loss, sample_grads in results:
        total += loss
        for name in grads:
            grads[name] += sample_grads[name]
    count = float(len(batch))
    for name in grads:
        grads[name] /= count
    return total / count, grads


def validation_metrics(params, model_cfg, samples, norm_stats):
    """Mean per-day MAE and RMSE of the model on samples with truth.

    :rtype: tuple
    """
    if not samples:
        return float('nan'), float('nan')
    maes, rmses = [], []
    for sample in samples:
        ghat = predict_day(sample, params, model_cfg, norm_stats).ghat
        maes.append(mae(ghat, sample.pv_truth))
        rmses.append(rmse(ghat, sample.pv_truth))
    return float(np.mean(maes)), float(np.mean(rmses))


def _prepare(samples, norm_stats):
    prepared = []
    for sample in samples:
        normed = zscore_apply(sample, norm_stats)
        prepared.append((normed.net_load, normed.weather, np.asarray(sample.pv_truth, dtype=np.float64)))
    return prepared


def train(samples, model_cfg, train_cfg, norm_stats=None):
    """Train the model.

    :param samples: prosumer-days with PV truth
    :type samples: list
    :param model_cfg: model configuration
    :type model_cfg: ModelConfig
    :param train_cfg: training configuration
    :type train_cfg: TrainConfig
    :param norm_stats: input statistics, fit on the non-validation days when None
    :type norm_stats: NormStats
    :return: best parameters, history, statistics, validation samples and best epoch
    :rtype: TrainResult
    """
    if not samples:
        raise TrainingError('Cannot train on an empty dataset.')
    missing = [s for s in samples if not has_truth(s)]
    if missing:
        raise TrainingError('%s training sample(s) lack PV truth, e.g. prosumer %s on %s.'
                            % (len(missing), missing[0].prosumer_id, missing[0].date))

    fit, validation = holdout_validation(samples, train_cfg.validation_fraction)
    if not fit:
        raise TrainingError('No training days left after holding out the validation slice.')
    if norm_stats is None:
        norm_stats = zscore_fit(fit)

    truths = np.array([s.pv_truth for s in fit])
    if (truths == truths[0]).all():
        LOG.warning('All %s training targets are identical; the model can only learn a constant.', len(fit))

    prepared = _prepare(fit, norm_stats)
    params = init_params(model_cfg, train_cfg.seed)
    named = named_parameters(params)
    state = adam_init(named)
    history = TrainHistory()

    best_metric, best_named, best_epoch, stale = np.inf, named, 0, 0
    LOG.info('Training on %s days, validating on %s days.', len(fit), len(validation))

    executor = ThreadPoolExecutor(max_workers=train_cfg.threads) if train_cfg.threads > 1 else None
    try:
        for epoch in range(1, train_cfg.epochs + 1):
            started = time.time()
            order = epoch_permutation(train_cfg.seed, epoch, len(prepared))
            epoch_loss = 0.0
            for start in range(0, len(order), train_cfg.batch_size):
                batch = [prepared[i] for i in order[start:start + train_cfg.batch_size]]
                loss, grads = batch_gradients(named, batch, model_cfg, executor)
                named, state = adam_step(named, grads, state, train_cfg)
                epoch_loss += loss * len(batch)
            epoch_loss /= len(prepared)

            current = from_named(named, model_cfg)
            val_mae, val_rmse = validation_metrics(current, model_cfg, validation, norm_stats)
            history.append(epoch, epoch_loss, val_mae, val_rmse, time.time() - started)
            LOG.info('epoch %3d  train_loss %.6f  val_mae %.6f  val_rmse %.6f', epoch, epoch_loss, val_mae, val_rmse)

            metric = val_mae if validation else epoch_loss
            if metric < best_metric:
                best_metric, best_named, best_epoch, stale = metric, named, epoch, 0
            else:
                stale += 1
                if stale >= train_cfg.patience:
                    LOG.info('No improvement for %s epochs, stopping after epoch %s.', stale, epoch)
                    break
    finally:
        if executor is not None:
            executor.shutdown()

    LOG.info('Best epoch %s.', best_epoch)
    return TrainResult(from_named(best_named, model_cfg), history, norm_stats, validation, best_epoch)
