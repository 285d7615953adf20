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
    pvdisagg.evaluation.baselines

    Reference estimators the model is compared against.

    KNN regresses the PV series of a day as the mean of the PV truth of the
    k training days whose inputs (net load, DNI, DHI and GHI, concatenated
    into 4T features) lie closest in Euclidean distance. The mean baseline
    predicts the slot-wise mean training day for every query.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""
from logging import getLogger

import numpy as np
from sklearn.neighbors import KNeighborsRegressor

from .metrics import mae
from ..constants import WEATHER_CHANNELS
from ..data.normalize import zscore_apply
from ..data.samples import has_truth
from ..exceptions import EvaluationError

LOG = getLogger(__name__)


def input_features(sample, norm_stats=None):
    """net_load | dni | dhi | ghi of one day, normalized when stats are given."""
    if norm_stats is not None:
        sample = zscore_apply(sample, norm_stats)
    return np.concatenate([np.asarray(sample.net_load, dtype=np.float64)] +
                          [np.asarray(getattr(sample.weather, c), dtype=np.float64) for c in WEATHER_CHANNELS])


def _truths(samples):
    if not samples:
        raise EvaluationError('Baselines need a non-empty training set.')
    if not all(has_truth(s) for s in samples):
        raise EvaluationError('Baseline training samples must carry PV truth.')
    return np.array([s.pv_truth for s in samples], dtype=np.float64)


class KNNBaseline(object):
    """k-nearest-neighbour regression of the daily PV series."""

    def __init__(self, k=5, norm_stats=None):
        if k < 1:
            raise EvaluationError('KNN needs k >= 1, got %s.' % k)
        self.k = k
        self.norm_stats = norm_stats
        self._model = None

    def fit(self, samples):
        """Index the training days.

        :param samples: training samples with PV truth
        :type samples: list
        :rtype: KNNBaseline
        """
        truths = _truths(samples)
        if self.k > len(samples):
            raise EvaluationError('KNN k=%s exceeds the %s training days.' % (self.k, len(samples)))
        features = np.array([input_features(s, self.norm_stats) for s in samples])
        self._model = KNeighborsRegressor(n_neighbors=self.k, weights='uniform', algorithm='brute',
                                          metric='euclidean').fit(features, truths)
        return self

    def predict(self, sample):
        return self.predict_many([sample])[0]

    def predict_many(self, samples):
        if self._model is None:
            raise EvaluationError('KNN baseline used before fit.')
        if not samples:
            return []
        features = np.array([input_features(s, self.norm_stats) for s in samples])
        return list(self._model.predict(features))


class MeanBaseline(object):
    """Slot-wise mean of the training PV truth."""

    def __init__(self):
        self.mean = None

    def fit(self, samples):
        self.mean = _truths(samples).mean(axis=0)
        return self

    def predict(self, sample):
        if self.mean is None:
            raise EvaluationError('Mean baseline used before fit.')
        return self.mean.copy()

    def predict_many(self, samples):
        return [self.predict(s) for s in samples]


def knn_baseline(train, query, k, norm_stats=None):
    """Predicted PV series of one query day.

    :param train: training samples with PV truth
    :param query: day to predict
    :param k: neighbour count, 1 <= k <= len(train)
    :param norm_stats: statistics for the input features, None for raw inputs
    :rtype: numpy.ndarray
    """
    return KNNBaseline(k, norm_stats).fit(train).predict(query)


def mean_baseline(train):
    """Slot-wise mean training day."""
    return MeanBaseline().fit(train).mean.copy()


def select_knn_k(train, validation, candidates, default, norm_stats=None):
    """Pick k by the mean per-day validation MAE.

    Candidates larger than the training set are skipped; ties keep the
    smaller k. Without validation days the default is used.

    :rtype: int
    """
    if not train:
        raise EvaluationError('Cannot select k without training days.')
    usable = sorted(k for k in set(int(c) for c in candidates) if 1 <= k <= len(train))
    if not validation or not usable:
        k = max(1, min(int(default), len(train)))
        LOG.info('Using KNN k=%s without validation-based selection.', k)
        return k

    best_k, best_mae = None, np.inf
    for k in usable:
        model = KNNBaseline(k, norm_stats).fit(train)
        score = float(np.mean([mae(pred, s.pv_truth)
                               for pred, s in zip(model.predict_many(validation), validation)]))
        LOG.debug('KNN k=%s validation MAE %.6f', k, score)
        if score < best_mae:
            best_k, best_mae = k, score
    LOG.info('Selected KNN k=%s (validation MAE %.6f).', best_k, best_mae)
    return best_k
