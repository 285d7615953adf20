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
    pvdisagg.tasks.repeat

    One repeat of the seasonal evaluation: train with the repeat's seed,
    then score the model and both baselines on the held-out days.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""
from ..constants import METHOD_KNN, METHOD_MEAN, METHOD_PROPOSED
from ..core import PVDisaggTask
from ..evaluation.baselines import KNNBaseline, MeanBaseline, select_knn_k
from ..evaluation.report import season_metrics
from ..models.fusion import predict_day
from ..training.trainer import train


class RepeatTask(PVDisaggTask):
    """Repeat task."""
    __task_name__ = 'repeat'

    def __init__(self, train_samples, test_samples, model_cfg, train_cfg, hemisphere='southern', knn_k=5,
                 knn_candidates=(1, 3, 5, 10), **kwargs):
        """Constructor.

        :param train_samples: training days with PV truth
        :type train_samples: list
        :param test_samples: held-out days with PV truth
        :type test_samples: list
        :param model_cfg: model configuration
        :type model_cfg: ModelConfig
        :param train_cfg: training configuration carrying this repeat's seed
        :type train_cfg: TrainConfig
        :param hemisphere: hemisphere of the test sites
        :type hemisphere: str
        :param knn_k: KNN k used when no validation days exist
        :type knn_k: int
        :param knn_candidates: k values tried on the validation days
        :type knn_candidates: tuple
        :param kwargs: additional keyword arguments
        :type kwargs: dict
        """
        super(RepeatTask, self).__init__(**kwargs)
        self.train_samples = train_samples
        self.test_samples = test_samples
        self.model_cfg = model_cfg
        self.train_cfg = train_cfg
        self.hemisphere = hemisphere
        self.knn_k = knn_k
        self.knn_candidates = knn_candidates

    def run(self):
        """Run.

        This method is the main entry point to the task.

        :return: seed, history, best epoch, chosen k and season metrics
        :rtype: dict
        """
        self.logger.info('Running %s with seed %s.', self.name, self.train_cfg.seed)
        try:
            result = train(self.train_samples, self.model_cfg, self.train_cfg)

            held = set((s.prosumer_id, s.date) for s in result.validation)
            fit = [s for s in self.train_samples if (s.prosumer_id, s.date) not in held]
            k = select_knn_k(fit, result.validation, self.knn_candidates, self.knn_k, result.norm_stats)
            knn = KNNBaseline(k, result.norm_stats).fit(fit)
            mean = MeanBaseline().fit(fit)

            predictions = {
                METHOD_PROPOSED: [predict_day(s, result.params, self.model_cfg, result.norm_stats).ghat
                                  for s in self.test_samples],
                METHOD_KNN: knn.predict_many(self.test_samples),
                METHOD_MEAN: mean.predict_many(self.test_samples)
            }
            metrics = season_metrics(self.test_samples, predictions, self.hemisphere)
        except Exception as ex:
            self.logger.error('Failed to run %s' % self.name)
            stackmsg = self.get_formatted_traceback()
            self.logger.error(ex)
            self.logger.error(stackmsg)
            raise

        return {
            'seed': self.train_cfg.seed,
            'history': result.history,
            'best_epoch': result.best_epoch,
            'knn_k': k,
            'metrics': metrics
        }
