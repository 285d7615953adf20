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
    pvdisagg.training.repeats

    Repeated train/evaluate runs with consecutive seeds, run as a blaster
    pipeline of repeat tasks. The train/test split is drawn once from the
    base seed, so repeats differ only in initialization and shuffling.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""
from collections import namedtuple
from logging import getLogger

import blaster

from ..data.samples import has_truth, sort_samples
from ..data.splits import split_samples
from ..evaluation.report import aggregate_runs
from ..exceptions import TrainingError
from ..helpers import chunk_list
from ..utils.pipeline import PipelineBuilder

LOG = getLogger(__name__)

RepeatResult = namedtuple('RepeatResult', ('report', 'runs', 'train_samples', 'test_samples'))


def repeat_seeds(seed, repeats):
    """seed, seed + 1, ... for every repeat."""
    if repeats < 1:
        raise TrainingError('repeats must be >= 1, got %s.' % repeats)
    return [seed + i for i in range(repeats)]


def _run_pipeline(pipeline, workers):
    """Blast off the pipeline, at most workers tasks at a time.

    :return: task results ordered by task name
    :rtype: list
    """
    data = []
    for tasks in chunk_list(pipeline.tasks, workers):
        blast = blaster.Blaster(tasks)
        try:
            data.extend(blast.blastoff(
                serial=workers == 1 or not pipeline.type.__concurrent__,
                raise_on_failure=True
            ))
        except Exception as ex:
            raise TrainingError('One or more %s tasks failed: %s' % (pipeline.name, ex))
    return sorted(data, key=lambda task: task['name'])


def repeated_runs(samples, model_cfg, train_cfg, split_by='prosumer', test_fraction=0.2, hemisphere='southern',
                  knn_k=5, knn_candidates=(1, 3, 5, 10), seeds=None, dataset_id=None):
    """Train and evaluate once per seed and aggregate the season metrics.

    :param samples: prosumer-days with PV truth; days without truth are ignored
    :type samples: list
    :param model_cfg: model configuration
    :type model_cfg: ModelConfig
    :param train_cfg: training configuration, its seed is the base seed
    :type train_cfg: TrainConfig
    :param split_by: prosumer or date
    :type split_by: str
    :param test_fraction: share of prosumers or days held out for testing
    :type test_fraction: float
    :param hemisphere: hemisphere used to assign seasons
    :type hemisphere: str
    :param knn_k: fallback KNN k
    :type knn_k: int
    :param knn_candidates: KNN k values tried on the validation days
    :type knn_candidates: tuple
    :param seeds: explicit per-repeat seeds, defaults to consecutive seeds
    :type seeds: list
    :param dataset_id: id recorded in the report metadata
    :type dataset_id: str
    :rtype: RepeatResult
    """
    seeds = list(seeds) if seeds is not None else repeat_seeds(train_cfg.seed, train_cfg.repeats)
    if not seeds:
        raise TrainingError('At least one repeat is required.')

    labelled = sort_samples([s for s in samples if has_truth(s)])
    if len(labelled) < len(samples):
        LOG.info('Ignoring %s day(s) without PV truth.', len(samples) - len(labelled))
    train_samples, test_samples = split_samples(labelled, split_by, test_fraction, train_cfg.seed)
    if not train_samples or not test_samples:
        raise TrainingError('The %s split left %s training and %s test days.'
                            % (split_by, len(train_samples), len(test_samples)))
    LOG.info('Split by %s: %s training days, %s test days, %s repeat(s).',
             split_by, len(train_samples), len(test_samples), len(seeds))

    workers = max(1, train_cfg.threads)
    # concurrent repeats train single threaded
    inner_threads = train_cfg.threads if workers == 1 or len(seeds) == 1 else 1

    units = [{
        'name': 'repeat-%02d' % i,
        'train_samples': train_samples,
        'test_samples': test_samples,
        'model_cfg': model_cfg,
        'train_cfg': train_cfg._replace(seed=seed, threads=inner_threads),
        'hemisphere': hemisphere,
        'knn_k': knn_k,
        'knn_candidates': tuple(knn_candidates)
    } for i, seed in enumerate(seeds)]

    pipe_builder = PipelineBuilder('repeat')
    pipeline = pipe_builder.build(units)

    if len(seeds) == 1:
        workers = 1
    runs = [task['methods'][0]['rvalue'] for task in _run_pipeline(pipeline, workers)]
    report = aggregate_runs([run['metrics'] for run in runs], seed=train_cfg.seed, dataset_id=dataset_id)
    return RepeatResult(report, runs, train_samples, test_samples)
