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
    pvdisagg.pvdisagg

    The central object driving ingestion, synthesis, training, evaluation,
    prediction and the repeated seasonal report.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""
import datetime
import errno
import os
from collections import OrderedDict

from . import __name__ as __pvdisagg_name__
from .constants import DAY_SERIES_FILE, METHOD_KNN, METHOD_MEAN, METHOD_PROPOSED, REPORT_CSV_FILE, \
    REPORT_TABLE_FILE, RUN_CHECKPOINT_FILE, RUN_CONFIG_FILE, RUN_HISTORY_FILE
from .core import LoggerMixin, TimeMixin
from .data.dataset_file import read_dataset, write_dataset
from .data.ingest import assemble_days, load_meter_csv, load_weather_csv, make_prosumer_split, percentile_filter
from .data.samples import has_truth, sort_samples
from .data.splits import holdout_validation, split_samples
from .data.synth import DEFAULT_START, synth_generate
from .evaluation.baselines import KNNBaseline, MeanBaseline, select_knn_k
from .evaluation.report import emit_day_series, season_report, write_predictions
from .exceptions import DataError, EvaluationError, PVDisaggError, TrainingError, ValidationError
from .helpers import ensure_folder, file_mgmt
from .models.checkpoint import load_checkpoint, save_checkpoint
from .models.fusion import ModelConfig, predict_day
from .training.repeats import repeated_runs
from .training.trainer import TrainConfig, train
from .utils.config import Config


def _keys(samples):
    return [[s.prosumer_id, str(s.date)] for s in samples]


class PVDisagg(LoggerMixin, TimeMixin):
    """
    The PVDisagg object acts as the central object. It owns the effective
    configuration and exposes one method per command line subcommand so the
    whole pipeline is usable as a library:

    1. ingest - meter and weather CSVs to the canonical dataset file.
    2. synth - a seeded synthetic dataset.
    3. train - a run directory with config snapshot, history and checkpoint.
    4. evaluate - the seasonal report of one checkpoint.
    5. predict - PV and consumption estimates for every day of a dataset.
    6. report - repeated train/evaluate runs aggregated per season.
    """

    def __init__(self, config_file=None, log_level=None, data_folder=None, seed=None, threads=None,
                 overrides=None):
        """Constructor.

        :param config_file: extra config file, applied after the standard locations
        :type config_file: str
        :param log_level: logging level
        :type log_level: str
        :param data_folder: folder path for logs and runtime files
        :type data_folder: str
        :param seed: base seed
        :type seed: int
        :param threads: worker cap, 1 forces serial execution
        :type threads: int
        :param overrides: (section, option) -> value applied last
        :type overrides: dict
        """
        self.config = Config()
        self.config.load(config_file)

        self.config.override('defaults', 'log_level', log_level)
        self.config.override('defaults', 'data_folder', data_folder)
        self.config.override('defaults', 'seed', seed)
        self.config.override('defaults', 'threads', threads)
        for (section, option), value in (overrides or {}).items():
            self.config.override(section, option, value)
        self.config.validate()

        # every config violation surfaces here, before any compute
        self.model_cfg = ModelConfig.from_dict(self.config)
        self.train_cfg = TrainConfig.from_config(self.config)

        self.data_folder = self.config['defaults']['data_folder']
        try:
            if not os.path.exists(self.data_folder):
                os.makedirs(self.data_folder)
        except (OSError, IOError) as ex:
            if ex.errno == errno.EACCES:
                raise PVDisaggError("You don't have permission to create the data folder.")
            raise PVDisaggError('Error creating data folder - {0}'.format(ex))

        # configure loggers
        self.create_logger(__pvdisagg_name__, self.config)

    @property
    def seed(self):
        return self.config['defaults']['seed']

    def _print_header(self, command, **details):
        self.start()
        self.logger.info('\n')
        self.logger.info(('PVDISAGG %s (START)' % command.upper()).center(79))
        self.logger.info('-' * 79)
        self.logger.info(' * Data Folder           : %s' % self.data_folder)
        self.logger.info(' * Log Level             : %s' % self.config['defaults']['log_level'])
        self.logger.info(' * Seed                  : %s' % self.seed)
        self.logger.info(' * Threads               : %s' % self.config['defaults']['threads'])
        for key, value in details.items():
            self.logger.info(' * %-22s: %s' % (key.replace('_', ' ').title(), value))
        self.logger.info('-' * 79 + '\n')

    def _print_footer(self, command, **details):
        self.end()
        self.logger.info('\n')
        self.logger.info(('PVDISAGG %s (END)' % command.upper()).center(79))
        self.logger.info('-' * 79)
        self.logger.info(' * Duration              : %dh:%dm:%ds' % (self.hours, self.minutes, self.seconds))
        for key, value in details.items():
            self.logger.info(' * %-22s: %s' % (key.replace('_', ' ').title(), value))
        self.logger.info('-' * 79 + '\n')

    def _read_labelled(self, dataset):
        data = read_dataset(dataset)
        labelled = [s for s in data.samples if has_truth(s)]
        return data, labelled

    def ingest(self, meter_csv, weather_csv, out):
        """Build the canonical dataset from a meter CSV and a weather CSV.

        :return: ingestion summary
        :rtype: OrderedDict
        """
        self._print_header('ingest', meter=meter_csv, weather=weather_csv, out=out)
        data_cfg = self.config['data']

        try:
            records = load_meter_csv(meter_csv)
            weather = load_weather_csv(weather_csv)
            kept, filtered = percentile_filter(records, data_cfg['percentile_low'], data_cfg['percentile_high'])
            split = make_prosumer_split([r.prosumer_id for r in kept], data_cfg['p2_fraction'], self.seed,
                                        data_cfg['type1_prosumers'], data_cfg['type2_prosumers'])
            assembled = assemble_days(kept, weather.days, split)
        except DataError as ex:
            self.logger.error('Rejected input data (meter %s, weather %s), no dataset written: %s',
                              meter_csv, weather_csv, ex)
            raise
        dataset_id = write_dataset(out, assembled.samples)

        summary = OrderedDict([
            ('dataset_id', dataset_id),
            ('days_kept', len(assembled.samples)),
            ('days_dropped_meter', assembled.dropped_meter),
            ('days_dropped_weather', assembled.dropped_weather),
            ('weather_days_dropped', weather.dropped),
            ('prosumers_filtered', list(filtered)),
            ('type1_prosumers', len(split.p1)),
            ('type2_prosumers', len(split.p2))
        ])
        file_mgmt('w', os.path.splitext(out)[0] + '.summary.yml', summary)
        self._print_footer('ingest', **summary)
        return summary

    def passthrough(self, dataset, out):
        """Re-serialize a canonical dataset, keeping its id."""
        self._print_header('ingest', dataset=dataset, out=out)
        data = read_dataset(dataset)
        dataset_id = write_dataset(out, data.samples, data.dataset_id or None)
        self._print_footer('ingest', dataset_id=dataset_id, days_kept=len(data.samples))
        return dataset_id

    def synth(self, n_prosumers, n_days, out, start_date=None):
        """Write a seeded synthetic dataset.

        :return: dataset id
        :rtype: str
        """
        self._print_header('synth', prosumers=n_prosumers, days=n_days, out=out)
        world = synth_generate(n_prosumers, n_days, self.seed, start_date or DEFAULT_START)
        dataset_id = write_dataset(out, world.samples)
        self._print_footer('synth', dataset_id=dataset_id, samples=len(world.samples))
        return dataset_id

    def train(self, dataset, out_dir):
        """Train on the training part of the configured split.

        :return: run directory
        :rtype: str
        """
        self._print_header('train', dataset=dataset, out=out_dir)
        data, labelled = self._read_labelled(dataset)
        if not labelled:
            raise TrainingError('Dataset %s has no days with PV truth to train on.' % dataset)

        data_cfg = self.config['data']
        train_samples, test_samples = split_samples(sort_samples(labelled), data_cfg['split_by'],
                                                    data_cfg['test_fraction'], self.seed)
        result = train(train_samples, self.model_cfg, self.train_cfg)

        ensure_folder(out_dir)
        self.config.write_snapshot(os.path.join(out_dir, RUN_CONFIG_FILE))
        result.history.write_csv(os.path.join(out_dir, RUN_HISTORY_FILE))
        meta = {
            'seed': self.seed,
            'dataset_id': data.dataset_id,
            'best_epoch': result.best_epoch,
            'split': {'split_by': data_cfg['split_by'], 'test_fraction': data_cfg['test_fraction'],
                      'test_days': len(test_samples), 'validation_fraction': self.train_cfg.validation_fraction},
            'validation': _keys(result.validation)
        }
        save_checkpoint(os.path.join(out_dir, RUN_CHECKPOINT_FILE), result.params, self.model_cfg,
                        result.norm_stats, meta)
        self._print_footer('train', epochs_run=len(result.history), best_epoch=result.best_epoch,
                           run_directory=out_dir)
        return out_dir

    def _eval_split(self, data, labelled, checkpoint):
        """Training days, test days and validation fraction for evaluating a checkpoint.

        A checkpoint trained on this dataset is scored on its own held-out
        days and its baselines are tuned on the validation fraction recorded
        at training time. Any other dataset is scored whole, without baselines.
        """
        meta = checkpoint.meta
        if meta.get('dataset_id') and meta.get('dataset_id') == data.dataset_id:
            split = meta.get('split', {})
            train_samples, test_samples = split_samples(sort_samples(labelled), split.get('split_by', 'prosumer'),
                                                        split.get('test_fraction', 0.2), meta.get('seed', 0))
            return train_samples, test_samples, split.get('validation_fraction',
                                                          self.train_cfg.validation_fraction)
        self.logger.warning('Dataset %s was not used to train the checkpoint; scoring every day and '
                            'skipping the baselines.', data.dataset_id)
        return [], sort_samples(labelled), None

    def evaluate(self, dataset, checkpoint_path, out_dir, day_series=None):
        """Seasonal report of a checkpoint against the baselines.

        :param day_series: optional (prosumer_id, first date) of a two-day series export
        :type day_series: tuple
        :rtype: SeasonReport
        """
        self._print_header('eval', dataset=dataset, checkpoint=checkpoint_path, out=out_dir)
        data = read_dataset(dataset)
        if not data.samples or not all(has_truth(s) for s in data.samples):
            raise EvaluationError('Dataset %s has days without PV truth; evaluation needs truth, '
                                  'use predict for type 2 prosumers.' % dataset)
        checkpoint = load_checkpoint(checkpoint_path)
        train_samples, test_samples, validation_fraction = self._eval_split(data, data.samples, checkpoint)

        def proposed(samples):
            return [predict_day(s, checkpoint.params, checkpoint.model_cfg, checkpoint.norm_stats).ghat
                    for s in samples]

        methods = OrderedDict([(METHOD_PROPOSED, proposed)])
        if train_samples:
            fit, validation = holdout_validation(train_samples, validation_fraction)
            eval_cfg = self.config['evaluation']
            k = select_knn_k(fit, validation, eval_cfg['knn_candidates'], eval_cfg['knn_k'],
                             checkpoint.norm_stats)
            methods[METHOD_KNN] = KNNBaseline(k, checkpoint.norm_stats).fit(fit).predict_many
            methods[METHOD_MEAN] = MeanBaseline().fit(fit).predict_many

        predictions = OrderedDict((name, method(test_samples)) for name, method in methods.items())
        report = season_report(test_samples, predictions, self.config['data']['hemisphere'], self.seed,
                               data.dataset_id)

        ensure_folder(out_dir)
        report.write_csv(os.path.join(out_dir, REPORT_CSV_FILE))
        file_mgmt('w', os.path.join(out_dir, REPORT_TABLE_FILE), report.render_table())

        if day_series is not None:
            self._day_series(data.samples, day_series, methods, os.path.join(out_dir, DAY_SERIES_FILE))

        self._print_footer('eval', rows=len(report), out=out_dir)
        return report

    @staticmethod
    def _day_series(samples, day_series, methods, path):
        prosumer_id, first = day_series
        wanted = [first, first + datetime.timedelta(days=1)]
        days = OrderedDict(((s.prosumer_id, s.date), s) for s in samples)
        missing = [str(d) for d in wanted if (prosumer_id, d) not in days]
        if missing:
            raise ValidationError('Prosumer %s has no data on %s.' % (prosumer_id, ', '.join(missing)))
        pair = [days[(prosumer_id, d)] for d in wanted]
        return emit_day_series(pair, OrderedDict((name, method(pair)) for name, method in methods.items()), path)

    def predict(self, dataset, checkpoint_path, out):
        """PV and consumption estimates for every day in the dataset.

        :return: number of predicted days
        :rtype: int
        """
        self._print_header('predict', dataset=dataset, checkpoint=checkpoint_path, out=out)
        data = read_dataset(dataset)
        checkpoint = load_checkpoint(checkpoint_path)
        samples = sort_samples(data.samples)
        estimates = [predict_day(s, checkpoint.params, checkpoint.model_cfg, checkpoint.norm_stats).ghat
                     for s in samples]
        write_predictions(out, samples, estimates)
        self._print_footer('predict', days=len(samples), out=out)
        return len(samples)

    def report(self, dataset, out_dir, repeats=None):
        """Repeated train/evaluate runs aggregated per season.

        :rtype: RepeatResult
        """
        train_cfg = self.train_cfg if repeats is None else self.train_cfg._replace(repeats=repeats).validate()
        self._print_header('report', dataset=dataset, repeats=train_cfg.repeats, out=out_dir)
        data, labelled = self._read_labelled(dataset)
        if not labelled:
            raise EvaluationError('Dataset %s has no days with PV truth to report on.' % dataset)

        data_cfg, eval_cfg = self.config['data'], self.config['evaluation']
        result = repeated_runs(labelled, self.model_cfg, train_cfg, data_cfg['split_by'],
                               data_cfg['test_fraction'], data_cfg['hemisphere'], eval_cfg['knn_k'],
                               eval_cfg['knn_candidates'], dataset_id=data.dataset_id)

        ensure_folder(out_dir)
        result.report.write_csv(os.path.join(out_dir, REPORT_CSV_FILE))
        file_mgmt('w', os.path.join(out_dir, REPORT_TABLE_FILE), result.report.render_table())
        self.config.write_snapshot(os.path.join(out_dir, RUN_CONFIG_FILE))
        runs = []
        for i, run in enumerate(result.runs):
            run['history'].write_csv(os.path.join(out_dir, 'history-repeat-%02d.csv' % i))
            runs.append(OrderedDict([('seed', int(run['seed'])), ('best_epoch', int(run['best_epoch'])),
                                     ('knn_k', int(run['knn_k']))]))
        file_mgmt('w', os.path.join(out_dir, 'runs.yml'), runs)

        self._print_footer('report', rows=len(result.report), out=out_dir)
        return result
