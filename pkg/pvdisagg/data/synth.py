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
    pvdisagg.data.synth

    A seeded synthetic world of prosumers with complete ground truth.

    Each day gets a cloudiness factor in [0, 1] which scales a clear-sky
    bell over the daylight slots 12..39, 0 being a fully overcast day. The
    diffuse share of GHI grows as the factor drops. Each prosumer has a PV capacity in [1, 3] kW
    and a household scale applied to a base load with morning and evening
    peaks plus noise. Every kWh series sits on the KWH_QUANTUM grid so the
    net load identity holds exactly.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""
from collections import OrderedDict, namedtuple
from datetime import date, timedelta

import numpy as np

from .samples import DailySample, make_weather, quantize
from ..constants import SLOTS_PER_DAY
from ..exceptions import ValidationError

PEAK_GHI = 1000.0
SUNRISE_SLOT = 12
SUNSET_SLOT = 39
# kWh per half-hour slot for 1 kW of capacity at PEAK_GHI
SLOT_HOURS = 0.5
DEFAULT_START = date(2011, 1, 1)

SynthWorld = namedtuple('SynthWorld', ('samples', 'consumption', 'capacities', 'cloudiness', 'start_date'))


def clear_sky_profile(slots=SLOTS_PER_DAY):
    """Unit bell over the daylight slots, zero at night."""
    t = np.arange(slots, dtype=np.float64)
    span = SUNSET_SLOT - SUNRISE_SLOT + 1
    bell = np.sin(np.pi * (t - SUNRISE_SLOT + 0.5) / span)
    bell[(t < SUNRISE_SLOT) | (t > SUNSET_SLOT)] = 0.0
    return np.clip(bell, 0.0, None)


def seasonal_peak(day):
    """Southern-hemisphere peak irradiance, highest mid January."""
    doy = day.timetuple().tm_yday
    return PEAK_GHI * (0.75 + 0.25 * np.cos(2.0 * np.pi * (doy - 15) / 365.0))


def household_profile(slots=SLOTS_PER_DAY):
    """Base load with a morning and a larger evening peak, in kWh per slot."""
    t = np.arange(slots, dtype=np.float64)
    morning = 0.3 * np.exp(-0.5 * ((t - 15.0) / 2.0) ** 2)
    evening = 0.5 * np.exp(-0.5 * ((t - 38.0) / 3.0) ** 2)
    return 0.2 + morning + evening


def synth_weather(day, cloudiness):
    """Irradiance of one day for a given cloudiness factor."""
    ghi = seasonal_peak(day) * cloudiness * clear_sky_profile()
    dhi = (1.0 - 0.8 * cloudiness) * ghi
    return make_weather(ghi - dhi, dhi, ghi)


def synth_pv(capacity, weather):
    """PV generation in kWh per slot for a capacity in kW."""
    return quantize(capacity * weather.ghi / PEAK_GHI * SLOT_HOURS)


def synth_generate(n_prosumers, n_days, seed=0, start_date=DEFAULT_START):
    """Generate a deterministic synthetic dataset.

    :param n_prosumers: number of prosumers
    :type n_prosumers: int
    :param n_days: number of consecutive days
    :type n_days: int
    :param seed: random seed
    :type seed: int
    :param start_date: first day
    :type start_date: datetime.date
    :return: samples sorted by (prosumer, date) plus the hidden truth
    :rtype: SynthWorld
    """
    if n_prosumers < 1 or n_days < 1:
        raise ValidationError('Synthetic data needs positive counts, got %s prosumers and %s days.'
                              % (n_prosumers, n_days))

    rng = np.random.default_rng(seed)
    cloudiness = rng.uniform(0.0, 1.0, size=n_days)
    capacities = rng.uniform(1.0, 3.0, size=n_prosumers)
    scales = rng.uniform(0.7, 1.3, size=n_prosumers)
    noise = rng.normal(0.0, 0.03, size=(n_prosumers, n_days, SLOTS_PER_DAY))

    profile = household_profile()
    days = [start_date + timedelta(days=d) for d in range(n_days)]
    weather = [synth_weather(day, cloudiness[d]) for d, day in enumerate(days)]

    ids = ['synth-%03d' % i for i in range(n_prosumers)]
    samples = []
    consumption = OrderedDict()
    for i, prosumer_id in enumerate(ids):
        for d, day in enumerate(days):
            pv = synth_pv(capacities[i], weather[d])
            used = quantize(np.clip(scales[i] * profile + noise[i, d], 0.01, None))
            consumption[(prosumer_id, day)] = used
            samples.append(DailySample(prosumer_id, day, weather[d], used - pv, pv))

    return SynthWorld(samples, consumption, OrderedDict(zip(ids, capacities)), cloudiness, start_date)
