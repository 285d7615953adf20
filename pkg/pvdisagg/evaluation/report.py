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
    pvdisagg.evaluation.report

    Seasonal comparison of the model against the baselines, the two-day
    series export and the prediction CSV.

    Metrics are aggregated in a fixed order: the MAE and RMSE of every
    prosumer-day first, their mean within each (season, method), then the
    mean and population standard deviation over repeats.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""
import datetime
from collections import OrderedDict
from logging import getLogger

import numpy as np
import pandas as pd

from .metrics import day_metrics
from ..constants import AGGREGATION, METHODS, PREDICT_COLUMNS, REPORT_COLUMNS, SEASONS, SLOTS_PER_DAY
from ..data.samples import has_truth
from ..data.seasons import season_of
from ..exceptions import EvaluationError, ValidationError
from ..models.fusion import consumption_from

LOG = getLogger(__name__)


class SeasonReport(object):
    """One row per (season, method) plus the run metadata."""

    def __init__(self, rows, seed=None, repeats=1, dataset_id=None):
        """Constructor.

        :param rows: dicts keyed by REPORT_COLUMNS
        :type rows: list
        :param seed: base seed of the run
        :type seed: int
        :param repeats: number of repeats aggregated
        :type repeats: int
        :param dataset_id: id of the evaluated dataset
        :type dataset_id: str
        """
        self.frame = pd.DataFrame(rows, columns=REPORT_COLUMNS)
        self.seed = seed
        self.repeats = repeats
        self.dataset_id = dataset_id
        self.aggregation = AGGREGATION

    def __len__(self):
        return len(self.frame)

    @property
    def metadata(self):
        return OrderedDict([('seed', self.seed), ('repeats', self.repeats),
                            ('dataset_id', self.dataset_id), ('aggregation', self.aggregation)])

    def row(self, season, method):
        match = self.frame[(self.frame.season == season) & (self.frame.method == method)]
        if match.empty:
            raise EvaluationError('No report row for %s / %s.' % (season, method))
        return match.iloc[0]

    def write_csv(self, path):
        self.frame.to_csv(path, index=False)

    def render_table(self):
        """Aligned plain-text table headed by the run metadata."""
        lines = ['%-12s: %s' % (key, value) for key, value in self.metadata.items()]
        lines.append('')
        if self.frame.empty:
            lines.append('(no rows)')
        else:
            lines.append(self.frame.to_string(index=False, float_format=lambda v: '%.4f' % v))
        return '\n'.join(lines) + '\n'


def season_metrics(samples, predictions, hemisphere='southern'):
    """Mean per-day MAE and RMSE per season and method for one run.

    :param samples: test samples with PV truth
    :type samples: list
    :param predictions: method -> predicted series aligned with samples
    :type predictions: dict
    :param hemisphere: hemisphere used to map dates to seasons
    :type hemisphere: str
    :return: season -> method -> (mae, rmse, n_days), empty seasons omitted
    :rtype: OrderedDict
    """
    missing = [s for s in samples if not has_truth(s)]
    if missing:
        raise EvaluationError('Evaluation needs PV truth; %s sample(s) have none, use predict instead.'
                              % len(missing))

    seasons = [season_of(s.date, hemisphere) for s in samples]
    result = OrderedDict()
    for season in SEASONS:
        index = [i for i, name in enumerate(seasons) if name == season]
        if not index:
            LOG.warning('No test days in %s, omitting its rows.', season)
            continue
        result[season] = OrderedDict()
        for method in [m for m in METHODS if m in predictions] + [m for m in predictions if m not in METHODS]:
            maes, rmses = day_metrics([predictions[method][i] for i in index],
                                      [samples[i].pv_truth for i in index])
            result[season][method] = (float(np.mean(maes)), float(np.mean(rmses)), len(index))
    return result


def aggregate_runs(runs, seed=None, dataset_id=None):
    """Combine the season_metrics of every repeat into a SeasonReport.

    :param runs: season_metrics results in repeat order
    :type runs: list
    :rtype: SeasonReport
    """
    if not runs:
        raise EvaluationError('Nothing to aggregate.')
    rows = []
    for season in SEASONS:
        if season not in runs[0]:
            continue
        for method in runs[0][season]:
            values = np.array([run[season][method][:2] for run in runs], dtype=np.float64)
            rows.append(OrderedDict([
                ('season', season),
                ('method', method),
                ('mae_kwh', float(values[:, 0].mean())),
                ('rmse_kwh', float(values[:, 1].mean())),
                ('mae_std', float(values[:, 0].std())),
                ('rmse_std', float(values[:, 1].std())),
                ('n_days', int(runs[0][season][method][2]))
            ]))
    return SeasonReport(rows, seed=seed, repeats=len(runs), dataset_id=dataset_id)


def season_report(samples, predictions, hemisphere='southern', seed=None, dataset_id=None):
    """SeasonReport of a single run."""
    return aggregate_runs([season_metrics(samples, predictions, hemisphere)], seed, dataset_id)


def emit_day_series(samples, predictions, path=None):
    """Truth and every method's estimate over two consecutive days.

    :param samples: two samples of one prosumer on consecutive dates
    :type samples: list
    :param predictions: method -> two predicted series aligned with samples
    :type predictions: dict
    :param path: CSV path, nothing is written when None
    :type path: str
    :return: 2T rows of date, slot, truth and one column per method
    :rtype: pandas.DataFrame
    """
    samples = list(samples)
    if len(samples) != 2:
        raise ValidationError('The day series needs exactly two days, got %s.' % len(samples))
    first, second = samples
    if first.prosumer_id != second.prosumer_id:
        raise ValidationError('The two days belong to different prosumers (%s, %s).'
                              % (first.prosumer_id, second.prosumer_id))
    if second.date - first.date != datetime.timedelta(days=1):
        raise ValidationError('%s and %s are not consecutive dates.' % (first.date, second.date))
    if not (has_truth(first) and has_truth(second)):
        raise ValidationError('The day series needs PV truth for both days.')

    columns = OrderedDict()
    columns['date'] = [str(s.date) for s in samples for _ in range(SLOTS_PER_DAY)]
    columns['slot'] = list(range(SLOTS_PER_DAY)) * 2
    columns['truth'] = np.concatenate([np.asarray(s.pv_truth, dtype=np.float64) for s in samples])
    for method, series in predictions.items():
        if len(series) != 2:
            raise ValidationError('Method %s has %s series for two days.' % (method, len(series)))
        columns[method] = np.concatenate([np.asarray(p, dtype=np.float64) for p in series])
    frame = pd.DataFrame(columns)
    if path is not None:
        frame.to_csv(path, index=False)
    return frame


def prediction_frame(samples, estimates):
    """Long-form PV and consumption estimates, one row per slot.

    :param samples: predicted days
    :param estimates: PV estimate series aligned with samples
    :rtype: pandas.DataFrame
    """
    rows = OrderedDict((column, []) for column in PREDICT_COLUMNS)
    for sample, ghat in zip(samples, estimates):
        consumption = consumption_from(sample.net_load, ghat)
        rows['prosumer_id'].extend([sample.prosumer_id] * SLOTS_PER_DAY)
        rows['date'].extend([str(sample.date)] * SLOTS_PER_DAY)
        rows['slot'].extend(range(SLOTS_PER_DAY))
        rows['net_load_kwh'].extend(np.asarray(sample.net_load, dtype=np.float64))
        rows['pv_estimate_kwh'].extend(np.asarray(ghat, dtype=np.float64))
        rows['consumption_kwh'].extend(consumption)
    return pd.DataFrame(rows, columns=PREDICT_COLUMNS)


def write_predictions(path, samples, estimates):
    prediction_frame(samples, estimates).to_csv(path, index=False)
