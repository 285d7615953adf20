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
    tests.test_training

    Unit tests for the Adam optimizer, the training loop and the repeated
    runs.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""

from collections import OrderedDict

import mock
import numpy as np
import pytest

from pvdisagg.constants import HISTORY_COLUMNS, METHODS, REPORT_COLUMNS
from pvdisagg.data.normalize import zscore_apply, zscore_fit
from pvdisagg.exceptions import ConfigError, TrainingError
from pvdisagg.models.fusion import init_params, named_parameters
from pvdisagg.training.optimizer import AdamConfig, adam_init, adam_step, parameter_group
from pvdisagg.training.repeats import repeat_seeds, repeated_runs
from pvdisagg.training.trainer import TrainConfig, TrainHistory, batch_gradients, epoch_permutation, \
    sample_gradient, train, validation_metrics


def same_params(a, b):
    a, b = named_parameters(a), named_parameters(b)
    return list(a) == list(b) and all(np.array_equal(a[name], b[name]) for name in a)


def prepared(samples):
    stats = zscore_fit(samples)
    return [(n.net_load, n.weather, s.pv_truth) for n, s in zip([zscore_apply(s, stats) for s in samples], samples)]


class TestAdam(object):
    @staticmethod
    def test_first_step():
        params = OrderedDict([('w', np.array([[1.0]]))])
        grads = {'w': np.array([[0.5]])}
        new, state = adam_step(params, grads, adam_init(params), AdamConfig(0.1, 0.9, 0.999, 1e-8))
        assert state.step == 1
        assert new['w'][0, 0] == pytest.approx(0.9, abs=1e-7)

    @staticmethod
    def test_step_is_pure():
        params = OrderedDict([('w', np.array([[1.0, 2.0]]))])
        state = adam_init(params)
        adam_step(params, {'w': np.ones((1, 2))}, state, AdamConfig(0.1, 0.9, 0.999, 1e-8))
        assert np.array_equal(params['w'], [[1.0, 2.0]])
        assert not state.m['w'].any()

    @staticmethod
    def test_zero_learning_rate():
        params = OrderedDict([('w', np.array([[0.3, -0.7]]))])
        new, _ = adam_step(params, {'w': np.array([[5.0, -1.0]])}, adam_init(params), AdamConfig(0.0, 0.9, 0.999, 1e-8))
        assert np.array_equal(new['w'], params['w'])

    @staticmethod
    def test_non_finite_gradient():
        params = OrderedDict([('hi.scale0.layer0.weight', np.zeros((1, 1)))])
        with pytest.raises(TrainingError) as ex:
            adam_step(params, {'hi.scale0.layer0.weight': np.array([[np.inf]])}, adam_init(params),
                      AdamConfig(0.1, 0.9, 0.999, 1e-8))
        assert 'hi.scale0' in ex.value.message

    @staticmethod
    def test_parameter_group():
        assert parameter_group('attn.head1.query') == 'attn.head1'
        assert parameter_group('hi.scale_weights') == 'hi.scale_weights'


class TestTrainConfig(object):
    @staticmethod
    def test_from_config(config):
        cfg = TrainConfig.from_config(config)
        assert (cfg.learning_rate, cfg.epochs, cfg.batch_size, cfg.repeats) == (0.01, 2, 8, 2)
        assert (cfg.seed, cfg.threads, cfg.validation_fraction) == (0, 1, 0.2)

    @staticmethod
    def test_zero_learning_rate_allowed(train_cfg):
        assert train_cfg._replace(learning_rate=0.0).validate().learning_rate == 0.0

    @staticmethod
    @pytest.mark.parametrize('field, value', [('learning_rate', -0.1), ('epochs', 0), ('batch_size', 0),
                                              ('repeats', 0), ('beta1', 1.0), ('epsilon', 0.0),
                                              ('patience', 0), ('validation_fraction', 1.0), ('threads', 0)])
    def test_rejects(train_cfg, field, value):
        with pytest.raises(ConfigError):
            train_cfg._replace(**{field: value}).validate()


class TestTrainer(object):
    @staticmethod
    def test_epoch_permutation():
        a = epoch_permutation(3, 1, 10)
        assert sorted(a) == list(range(10))
        assert np.array_equal(a, epoch_permutation(3, 1, 10))
        assert not np.array_equal(a, epoch_permutation(3, 2, 10))

    @staticmethod
    def test_history_frame():
        history = TrainHistory()
        history.append(1, 0.5, 0.2, 0.3, 12.0)
        frame = history.to_frame()
        assert list(frame.columns) == HISTORY_COLUMNS
        assert len(history) == 1

    @staticmethod
    def test_batch_of_one_matches_sample(model_cfg, params, synth_samples):
        named = named_parameters(params)
        item = prepared(synth_samples)[0]
        loss, grads = sample_gradient(named, item, model_cfg)
        batch_loss, batch_grads = batch_gradients(named, [item], model_cfg)
        assert loss == batch_loss
        assert all(np.array_equal(grads[name], batch_grads[name]) for name in grads)

    @staticmethod
    def test_batch_gradients_are_means(model_cfg, params, synth_samples):
        named = named_parameters(params)
        items = prepared(synth_samples)[:2]
        first = sample_gradient(named, items[0], model_cfg)
        second = sample_gradient(named, items[1], model_cfg)
        loss, grads = batch_gradients(named, items, model_cfg)
        assert loss == pytest.approx((first[0] + second[0]) / 2.0)
        expected = (first[1]['pred.layer1.bias'] + second[1]['pred.layer1.bias']) / 2
        assert np.allclose(grads['pred.layer1.bias'], expected)

    @staticmethod
    def test_train(model_cfg, train_cfg, synth_samples):
        result = train(synth_samples, model_cfg, train_cfg)
        assert len(result.history) == 2
        assert list(result.history.to_frame().columns) == HISTORY_COLUMNS
        assert result.best_epoch in (1, 2)
        assert len(result.validation) == 8
        assert all(np.isfinite(result.history.train_loss))

    @staticmethod
    def test_zero_learning_rate_keeps_init(model_cfg, train_cfg, synth_samples):
        result = train(synth_samples, model_cfg, train_cfg._replace(learning_rate=0.0))
        assert same_params(result.params, init_params(model_cfg, train_cfg.seed))

    @staticmethod
    def test_reproducible(model_cfg, train_cfg, synth_samples):
        a = train(synth_samples, model_cfg, train_cfg)
        b = train(synth_samples, model_cfg, train_cfg)
        assert same_params(a.params, b.params)
        assert a.history.to_frame().equals(b.history.to_frame())

    @staticmethod
    def test_threads_do_not_change_result(model_cfg, train_cfg, synth_samples):
        serial = train(synth_samples, model_cfg, train_cfg)
        threaded = train(synth_samples, model_cfg, train_cfg._replace(threads=2))
        assert same_params(serial.params, threaded.params)
        assert serial.history.to_frame().equals(threaded.history.to_frame())

    @staticmethod
    def test_seed_changes_result(model_cfg, train_cfg, synth_samples):
        a = train(synth_samples, model_cfg, train_cfg)
        b = train(synth_samples, model_cfg, train_cfg._replace(seed=1))
        assert not same_params(a.params, b.params)

    @staticmethod
    def test_validation_metrics_match_history(model_cfg, train_cfg, synth_samples):
        result = train(synth_samples, model_cfg, train_cfg)
        val_mae, val_rmse = validation_metrics(result.params, model_cfg, result.validation, result.norm_stats)
        assert val_mae == result.history.val_mae[result.best_epoch - 1]
        assert val_rmse == result.history.val_rmse[result.best_epoch - 1]

    @staticmethod
    def test_validation_metrics_empty(model_cfg, params, norm_stats):
        assert all(np.isnan(validation_metrics(params, model_cfg, [], norm_stats)))

    @staticmethod
    def test_without_validation_uses_train_loss(model_cfg, train_cfg, synth_samples):
        result = train(synth_samples, model_cfg, train_cfg._replace(validation_fraction=0.0))
        assert result.validation == []
        losses = result.history.train_loss
        assert result.best_epoch == int(np.argmin(losses)) + 1

    @staticmethod
    def test_patience_stops_early(model_cfg, train_cfg, synth_samples):
        result = train(synth_samples, model_cfg, train_cfg._replace(learning_rate=0.0, epochs=5, patience=1))
        assert len(result.history) == 2
        assert result.best_epoch == 1

    @staticmethod
    def test_empty(model_cfg, train_cfg):
        with pytest.raises(TrainingError):
            train([], model_cfg, train_cfg)

    @staticmethod
    def test_missing_truth(model_cfg, train_cfg, synth_samples):
        samples = [synth_samples[0]._replace(pv_truth=None)] + synth_samples[1:]
        with pytest.raises(TrainingError):
            train(samples, model_cfg, train_cfg)


class TestRepeats(object):
    @staticmethod
    def test_repeat_seeds():
        assert repeat_seeds(7, 3) == [7, 8, 9]

    @staticmethod
    def test_repeat_seeds_rejects_zero():
        with pytest.raises(TrainingError):
            repeat_seeds(0, 0)

    @staticmethod
    def test_repeated_runs(model_cfg, train_cfg, synth_samples):
        result = repeated_runs(synth_samples, model_cfg, train_cfg, 'prosumer', 0.25, knn_k=3,
                               knn_candidates=(1, 3), dataset_id='abc')
        assert [run['seed'] for run in result.runs] == [0, 1]
        assert list(result.report.frame.columns) == REPORT_COLUMNS
        assert list(result.report.frame.method) == METHODS
        assert list(result.report.frame.season) == ['Summer'] * 3
        assert result.report.repeats == 2
        assert result.report.dataset_id == 'abc'
        assert len(set(s.prosumer_id for s in result.test_samples)) == 1

    @staticmethod
    def test_repeated_runs_explicit_seeds(model_cfg, train_cfg, synth_samples):
        result = repeated_runs(synth_samples, model_cfg, train_cfg._replace(epochs=1), 'date', 0.2,
                               knn_candidates=(1,), seeds=[5])
        assert [run['seed'] for run in result.runs] == [5]
        assert (result.report.frame.mae_std == 0.0).all()

    @staticmethod
    def test_concurrent_matches_serial(model_cfg, train_cfg, synth_samples):
        serial = repeated_runs(synth_samples, model_cfg, train_cfg, 'prosumer', 0.25, knn_candidates=(1, 3))
        concurrent = repeated_runs(synth_samples, model_cfg, train_cfg._replace(threads=2), 'prosumer', 0.25,
                                   knn_candidates=(1, 3))
        assert serial.report.frame.equals(concurrent.report.frame)

    @staticmethod
    @mock.patch('pvdisagg.tasks.repeat.train')
    def test_task_failure(mock_train, model_cfg, train_cfg, synth_samples):
        mock_train.side_effect = TrainingError('boom')
        with pytest.raises(TrainingError):
            repeated_runs(synth_samples, model_cfg, train_cfg._replace(repeats=1), 'prosumer', 0.25)
