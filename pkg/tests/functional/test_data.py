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
    tests.test_data

    Unit tests for ingestion, normalization, seasons, splits, synthetic data
    and the canonical dataset file.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""

from datetime import date, timedelta

import numpy as np
import pytest

from pvdisagg.constants import KWH_QUANTUM, SEASONS
from pvdisagg.data.dataset_file import dataset_columns, read_dataset, write_dataset
from pvdisagg.data.ingest import assemble_days, load_meter_csv, load_weather_csv, make_prosumer_split, \
    percentile_filter, upsample_hourly
from pvdisagg.data.normalize import NormStats, zscore_apply, zscore_fit, zscore_invert
from pvdisagg.data.samples import DailySample, MeterRecord, ProsumerSplit, make_weather, quantize, \
    sort_samples, validate_sample
from pvdisagg.data.seasons import season_of, seasonal_split
from pvdisagg.data.splits import holdout_validation, split_samples
from pvdisagg.data.synth import clear_sky_profile, synth_generate, synth_pv, synth_weather
from pvdisagg.exceptions import DataFormatError, DataParseError, DuplicateRecordError, NormalizationError, \
    ValidationError


@pytest.fixture(scope='class')
def meter_records():
    return load_meter_csv('../assets/meter.csv')


@pytest.fixture(scope='class')
def weather_days():
    return load_weather_csv('../assets/weather_hourly.csv').days


def on_grid(values):
    steps = np.asarray(values) / KWH_QUANTUM
    return np.array_equal(steps, np.round(steps))


def flat_day(prosumer_id, day, level=1.0, pv=0.5):
    ghi = np.linspace(0.0, 900.0, 48)
    return DailySample(prosumer_id, day, make_weather(0.5 * ghi, 0.25 * ghi, ghi),
                       np.full(48, level) + np.linspace(0.0, 0.1, 48), np.full(48, pv))


class TestSamples(object):
    @staticmethod
    def test_quantize_snaps_to_grid():
        values = quantize([0.1, 1.0 / 3.0, -2.7])
        assert on_grid(values)
        assert np.allclose(values, [0.1, 1.0 / 3.0, -2.7], atol=KWH_QUANTUM)

    @staticmethod
    def test_validate_rejects_length(sample):
        with pytest.raises(ValidationError):
            validate_sample(sample._replace(net_load=np.zeros(47)))

    @staticmethod
    def test_validate_rejects_non_finite(sample):
        with pytest.raises(ValidationError):
            validate_sample(sample._replace(net_load=np.full(48, np.nan)))

    @staticmethod
    def test_validate_rejects_negative_irradiance(sample):
        weather = sample.weather._replace(ghi=sample.weather.ghi - 1000.0)
        with pytest.raises(ValidationError):
            validate_sample(sample._replace(weather=weather))

    @staticmethod
    def test_validate_allows_negative_when_normalized(sample):
        weather = sample.weather._replace(ghi=sample.weather.ghi - 1000.0)
        assert validate_sample(sample._replace(weather=weather), raw=False)

    @staticmethod
    def test_validate_rejects_negative_truth(sample):
        with pytest.raises(ValidationError):
            validate_sample(sample._replace(pv_truth=-np.ones(48)))

    @staticmethod
    def test_split_rejects_overlap():
        with pytest.raises(ValidationError):
            ProsumerSplit(['A', 'B'], ['B'])

    @staticmethod
    def test_split_type_of():
        split = ProsumerSplit(['A'], ['B'])
        assert (split.type_of('A'), split.type_of('B'), split.type_of('C')) == (1, 2, None)

    @staticmethod
    def test_sort_samples():
        days = [flat_day('B', date(2011, 1, 1)), flat_day('A', date(2011, 1, 2)), flat_day('A', date(2011, 1, 1))]
        assert [(s.prosumer_id, s.date.day) for s in sort_samples(days)] == [('A', 1), ('A', 2), ('B', 1)]


class TestIngest(object):
    @staticmethod
    def test_meter_records(meter_records):
        assert len(meter_records) == 12
        assert meter_records[0].prosumer_id == 'P1'
        assert meter_records[0].category == 'CL'
        assert all(r.values.shape == (48,) for r in meter_records)

    @staticmethod
    def test_meter_wrong_value_columns():
        with pytest.raises(DataFormatError) as ex:
            load_meter_csv('../assets/meter_47.csv')
        assert ex.value.line == 1
        assert 'found 47' in ex.value.message

    @staticmethod
    def test_meter_duplicate():
        with pytest.raises(DuplicateRecordError):
            load_meter_csv('../assets/meter_duplicate.csv')

    @staticmethod
    def test_meter_unknown_category():
        with pytest.raises(DataFormatError) as ex:
            load_meter_csv('../assets/meter_category.csv')
        assert ex.value.line == 2

    @staticmethod
    def test_meter_non_numeric():
        with pytest.raises(DataParseError) as ex:
            load_meter_csv('../assets/meter_text.csv')
        assert ex.value.row == 2
        assert ex.value.col == 'v48'

    @staticmethod
    def test_weather_hourly_upsampled(weather_days):
        assert list(weather_days) == [date(2011, 1, 1), date(2011, 1, 2)]
        day = weather_days[date(2011, 1, 1)]
        assert day.ghi.shape == (48,)
        assert (day.ghi[2], day.ghi[3], day.ghi[46], day.ghi[47]) == (10.0, 15.0, 230.0, 230.0)
        assert day.dni[3] == 7.5

    @staticmethod
    def test_weather_half_hourly_gaps():
        records = load_weather_csv('../assets/weather_halfhourly.csv')
        assert list(records.days) == [date(2011, 1, 1)]
        assert records.dropped == 1
        day = records.days[date(2011, 1, 1)]
        assert (day.ghi[10], day.dni[10], day.dhi[10]) == (40.0, 20.0, 10.0)

    @staticmethod
    def test_weather_negative():
        with pytest.raises(ValidationError):
            load_weather_csv('../assets/weather_negative.csv')

    @staticmethod
    def test_upsample_hourly():
        assert np.array_equal(upsample_hourly([0.0, 2.0, 4.0]), [0.0, 1.0, 2.0, 3.0, 4.0, 4.0])

    @staticmethod
    def test_upsample_hourly_midpoint():
        slots = upsample_hourly([0.0, 100.0] + [0.0] * 22)
        assert len(slots) == 48
        assert slots[1] == 50.0
        assert slots[0] == 0.0 and slots[2] == 100.0

    @staticmethod
    def test_assemble_days(meter_records, weather_days):
        split = make_prosumer_split([r.prosumer_id for r in meter_records])
        assembled = assemble_days(meter_records, weather_days, split)
        assert [(s.prosumer_id, s.date.day) for s in assembled.samples] == [('P1', 1), ('P1', 2), ('P2', 1), ('P2', 2)]
        assert assembled.dropped_meter == 1
        assert assembled.dropped_weather == 1
        first = assembled.samples[0]
        assert np.all(first.net_load == 0.625)
        assert np.all(first.pv_truth == 0.125)

    @staticmethod
    def test_assemble_closure(meter_records, weather_days):
        split = make_prosumer_split([r.prosumer_id for r in meter_records])
        consumption = {}
        for r in meter_records:
            if r.category != 'GG':
                consumption[(r.prosumer_id, r.date)] = consumption.get((r.prosumer_id, r.date), 0.0) + r.values
        for s in assemble_days(meter_records, weather_days, split).samples:
            assert np.all(np.abs(s.net_load + s.pv_truth - consumption[(s.prosumer_id, s.date)]) <= 1e-9)

    @staticmethod
    def test_assemble_type2(meter_records, weather_days):
        split = make_prosumer_split([r.prosumer_id for r in meter_records], type2=['P3'])
        samples = assemble_days(meter_records, weather_days, split).samples
        p3 = [s for s in samples if s.prosumer_id == 'P3']
        assert len(samples) == 5
        assert p3[0].pv_truth is None
        assert np.all(p3[0].net_load == 0.75)

    @staticmethod
    def test_percentile_filter():
        start = date(2011, 1, 1)
        records = [MeterRecord(pid, start + timedelta(days=d), 'GC', np.full(48, level / 48.0))
                   for pid, level in zip('ABCDE', [1.0, 2.0, 3.0, 4.0, 5.0]) for d in range(3)]
        kept, dropped = percentile_filter(records, 25.0, 75.0)
        assert dropped == ['A', 'E']
        assert sorted(set(r.prosumer_id for r in kept)) == ['B', 'C', 'D']

    @staticmethod
    def test_percentile_filter_uses_first_year():
        start = date(2011, 1, 1)
        records = [MeterRecord(pid, start, 'GC', np.full(48, level)) for pid, level in zip('ABC', [1.0, 2.0, 3.0])]
        records.append(MeterRecord('C', start + timedelta(days=400), 'GC', np.full(48, 100.0)))
        kept, dropped = percentile_filter(records, 0.0, 100.0)
        assert dropped == []
        assert len(kept) == 4

    @staticmethod
    def test_prosumer_split_fraction():
        ids = ['A', 'B', 'C', 'D']
        split = make_prosumer_split(ids, p2_fraction=0.5, seed=1)
        assert len(split.p2) == 2
        assert split.p1 | split.p2 == set(ids)
        assert make_prosumer_split(ids, p2_fraction=0.5, seed=1) == split

    @staticmethod
    def test_prosumer_split_explicit():
        split = make_prosumer_split(['A', 'B', 'C'], type1=['A'])
        assert split.p1 == {'A'}
        assert split.p2 == {'B', 'C'}


class TestNormalize(object):
    @staticmethod
    def test_zscore_standardizes(synth_samples):
        stats = zscore_fit(synth_samples)
        normed = [zscore_apply(s, stats) for s in synth_samples]
        for channel in ['dni', 'dhi', 'ghi']:
            values = np.concatenate([getattr(s.weather, channel) for s in normed])
            assert abs(values.mean()) < 1e-9
            assert abs(values.std() - 1.0) < 1e-9
        loads = np.concatenate([s.net_load for s in normed])
        assert abs(loads.mean()) < 1e-9

    @staticmethod
    def test_zscore_invert(synth_samples):
        stats = zscore_fit(synth_samples)
        restored = zscore_invert(zscore_apply(synth_samples[0], stats), stats)
        assert np.allclose(restored.net_load, synth_samples[0].net_load)
        assert np.allclose(restored.weather.ghi, synth_samples[0].weather.ghi)

    @staticmethod
    def test_zscore_keeps_truth(synth_samples):
        stats = zscore_fit(synth_samples)
        assert np.array_equal(zscore_apply(synth_samples[0], stats).pv_truth, synth_samples[0].pv_truth)

    @staticmethod
    def test_zero_variance():
        day = flat_day('A', date(2011, 1, 1))
        flat = day._replace(weather=make_weather(np.ones(48), np.ones(48), np.ones(48)))
        with pytest.raises(NormalizationError):
            zscore_fit([flat])

    @staticmethod
    def test_empty():
        with pytest.raises(NormalizationError):
            zscore_fit([])

    @staticmethod
    def test_stats_round_trip(synth_samples):
        stats = zscore_fit(synth_samples)
        assert NormStats.from_dict(stats.to_dict()) == stats

    @staticmethod
    def test_stats_malformed():
        with pytest.raises(NormalizationError):
            NormStats.from_dict({'mean': {}})


class TestSeasons(object):
    @staticmethod
    def test_southern():
        assert season_of(date(2011, 1, 15)) == 'Summer'
        assert season_of(date(2011, 7, 1)) == 'Winter'
        assert season_of(date(2011, 4, 1)) == 'Autumn'
        assert season_of(date(2011, 10, 1)) == 'Spring'

    @staticmethod
    def test_northern():
        assert season_of(date(2011, 1, 15), 'northern') == 'Winter'
        assert season_of(date(2011, 7, 1), 'northern') == 'Summer'

    @staticmethod
    def test_unknown_hemisphere():
        with pytest.raises(ValidationError):
            season_of(date(2011, 1, 1), 'eastern')

    @staticmethod
    def test_seasonal_split():
        days = [flat_day('A', date(2011, m, 1)) for m in [1, 2, 7]]
        parts = seasonal_split(days)
        assert list(parts) == SEASONS
        assert [len(parts[s]) for s in SEASONS] == [2, 0, 1, 0]


class TestSynth(object):
    @staticmethod
    def test_closure_is_exact(synth_world):
        for s in synth_world.samples:
            assert np.all(s.net_load + s.pv_truth - synth_world.consumption[(s.prosumer_id, s.date)] == 0.0)

    @staticmethod
    def test_on_grid(synth_world):
        assert all(on_grid(s.net_load) and on_grid(s.pv_truth) for s in synth_world.samples)

    @staticmethod
    def test_shape_and_order(synth_world):
        assert len(synth_world.samples) == 40
        keys = [(s.prosumer_id, s.date) for s in synth_world.samples]
        assert keys == sorted(keys)
        assert synth_world.samples[0].date == date(2011, 1, 1)

    @staticmethod
    def test_night_has_no_pv(synth_world):
        night = clear_sky_profile() == 0
        assert all(not s.pv_truth[night].any() for s in synth_world.samples)

    @staticmethod
    def test_seeded():
        a = synth_generate(2, 3, seed=9)
        b = synth_generate(2, 3, seed=9)
        assert all(np.array_equal(x.net_load, y.net_load) for x, y in zip(a.samples, b.samples))

    @staticmethod
    def test_overcast_day_has_no_pv():
        weather = synth_weather(date(2011, 1, 15), 0.0)
        assert not weather.ghi.any()
        assert not synth_pv(2.5, weather).any()

    @staticmethod
    def test_pv_only_in_daylight_slots():
        pv = synth_pv(3.0, synth_weather(date(2011, 1, 15), 1.0))
        assert not pv[:12].any()
        assert not pv[40:].any()
        assert (pv[12:40] > 0).all()

    @staticmethod
    def test_seed_changes_cloudiness():
        a = synth_generate(2, 5, seed=1)
        b = synth_generate(2, 5, seed=2)
        assert not np.array_equal(a.cloudiness, b.cloudiness)

    @staticmethod
    def test_same_seed_writes_identical_files(tmp_path):
        first, second = str(tmp_path / 'a.csv'), str(tmp_path / 'b.csv')
        write_dataset(first, synth_generate(2, 3, seed=9).samples)
        write_dataset(second, synth_generate(2, 3, seed=9).samples)
        with open(first, 'rb') as f, open(second, 'rb') as g:
            assert f.read() == g.read()

    @staticmethod
    def test_rejects_empty():
        with pytest.raises(ValidationError):
            synth_generate(0, 3)


class TestDatasetFile(object):
    @staticmethod
    def test_write_read(tmp_path, synth_samples):
        path = str(tmp_path / 'data.csv')
        dataset_id = write_dataset(path, synth_samples)
        data = read_dataset(path)
        assert data.dataset_id == dataset_id
        assert len(data.samples) == len(synth_samples)
        for a, b in zip(data.samples, synth_samples):
            assert (a.prosumer_id, a.date) == (b.prosumer_id, b.date)
            assert np.array_equal(a.net_load, b.net_load)
            assert np.array_equal(a.pv_truth, b.pv_truth)
            assert np.array_equal(a.weather.dhi, b.weather.dhi)

    @staticmethod
    def test_rewrite_is_byte_stable(tmp_path, synth_samples):
        first, second = str(tmp_path / 'a.csv'), str(tmp_path / 'b.csv')
        dataset_id = write_dataset(first, synth_samples)
        write_dataset(second, read_dataset(first).samples, dataset_id)
        with open(first, 'rb') as a, open(second, 'rb') as b:
            assert a.read() == b.read()

    @staticmethod
    def test_header(tmp_path, synth_samples):
        path = str(tmp_path / 'data.csv')
        write_dataset(path, synth_samples, 'fixed-id')
        with open(path) as f:
            lines = f.read().splitlines()
        assert lines[:3] == ['# pvdisagg-dataset', '# version=1', '# T=48']
        assert lines[4] == '# dataset_id=fixed-id'
        assert lines[5].split(',') == dataset_columns()

    @staticmethod
    def test_missing_truth(tmp_path, synth_samples):
        path = str(tmp_path / 'data.csv')
        write_dataset(path, [synth_samples[0]._replace(pv_truth=None)] + synth_samples[1:])
        assert read_dataset(path).samples[0].pv_truth is None

    @staticmethod
    def test_bad_magic():
        with pytest.raises(DataFormatError) as ex:
            read_dataset('../assets/meter.csv')
        assert ex.value.line == 1

    @staticmethod
    def test_bad_version(tmp_path, synth_samples):
        path = str(tmp_path / 'data.csv')
        write_dataset(path, synth_samples)
        with open(path) as f:
            text = f.read().replace('# version=1', '# version=7')
        with open(path, 'w') as f:
            f.write(text)
        with pytest.raises(DataFormatError):
            read_dataset(path)


class TestSplits(object):
    @staticmethod
    def test_by_prosumer(synth_samples):
        train, test = split_samples(synth_samples, 'prosumer', 0.25, seed=0)
        train_ids = set(s.prosumer_id for s in train)
        test_ids = set(s.prosumer_id for s in test)
        assert len(test_ids) == 1
        assert not train_ids & test_ids
        assert len(train) + len(test) == len(synth_samples)

    @staticmethod
    def test_by_prosumer_is_seeded(synth_samples):
        first = split_samples(synth_samples, 'prosumer', 0.5, 2)[1]
        second = split_samples(synth_samples, 'prosumer', 0.5, 2)[1]
        assert [s.prosumer_id for s in first] == [s.prosumer_id for s in second]

    @staticmethod
    def test_by_date(synth_samples):
        train, test = split_samples(synth_samples, 'date', 0.2)
        assert max(s.date for s in train) < min(s.date for s in test)
        assert len(set(s.date for s in test)) == 2

    @staticmethod
    def test_single_prosumer():
        with pytest.raises(ValidationError):
            split_samples([flat_day('A', date(2011, 1, 1))], 'prosumer')

    @staticmethod
    def test_unknown_mode(synth_samples):
        with pytest.raises(ValidationError):
            split_samples(synth_samples, 'random')

    @staticmethod
    def test_holdout_validation(synth_samples):
        fit, validation = holdout_validation(synth_samples, 0.2)
        assert sorted(set(s.date for s in validation)) == [date(2011, 1, 9), date(2011, 1, 10)]
        assert len(fit) == 32

    @staticmethod
    def test_holdout_disabled(synth_samples):
        fit, validation = holdout_validation(synth_samples, 0.0)
        assert validation == []
        assert len(fit) == len(synth_samples)

    @staticmethod
    def test_holdout_keeps_one_training_day():
        days = [flat_day('A', date(2011, 1, d)) for d in (1, 2)]
        fit, validation = holdout_validation(days, 0.9)
        assert len(fit) == 1 and len(validation) == 1
