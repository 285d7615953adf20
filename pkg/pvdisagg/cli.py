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
    pvdisagg.cli

    This module contains the code which creates pvdisagg's command line
    interface structure.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""
import datetime
import functools

import click

from . import __version__
from .constants import LOGLEVEL_CHOICES
from .exceptions import PVDisaggError
from .pvdisagg import PVDisagg


def print_header():
    click.echo("-" * 50, err=True)
    click.echo("pvdisagg v%s" % __version__, err=True)
    click.echo("Copyright (C) 2024, pvdisagg developers.", err=True)
    click.echo("-" * 50, err=True)


def common_options(func):
    """Options every subcommand accepts."""
    options = [
        click.option("-c", "--config", "config_file",
                     default=None,
                     metavar="",
                     type=click.Path(exists=True, dir_okay=False),
                     help="Config file applied after the standard locations."),
        click.option("--seed",
                     default=None,
                     type=int,
                     help="Base seed. (default=0)"),
        click.option("--threads",
                     default=None,
                     type=click.IntRange(min=1),
                     help="Worker cap, 1 forces serial execution. (default=1)"),
        click.option("--log-level",
                     type=click.Choice(LOGLEVEL_CHOICES),
                     default=None,
                     help="Select logging level. (default=info)"),
        click.option("-d", "--data-folder",
                     default=None,
                     metavar="",
                     help="Directory for pvdisagg logs and runtime files.")
    ]
    for option in reversed(options):
        func = option(func)
    return func


def handle_errors(func):
    """Report pvdisagg errors on stderr and exit non-zero."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return func(*args, **kwargs)
        except PVDisaggError as ex:
            click.echo('ERROR: %s' % ex.message, err=True)
            ctx.exit(1)
    return wrapper


def make_pvdisagg(config_file, seed, threads, log_level, data_folder, overrides=None):
    print_header()
    return PVDisagg(config_file=config_file, log_level=log_level, data_folder=data_folder, seed=seed,
                    threads=threads, overrides=overrides)


def parse_day_series(ctx, param, value):
    """PROSUMER:YYYY-MM-DD -> (prosumer, date)."""
    if value is None:
        return None
    prosumer_id, _, day = value.rpartition(':')
    try:
        if not prosumer_id:
            raise ValueError(value)
        return prosumer_id, datetime.datetime.strptime(day, '%Y-%m-%d').date()
    except ValueError:
        raise click.BadParameter('expected PROSUMER:YYYY-MM-DD, got %s' % value)


@click.group()
@click.option("-v", "--verbose", count=True,
              help="Add verbosity to the commands.")
@click.version_option(version=__version__)
def pvdisagg(verbose):
    """pvdisagg - behind-the-meter PV disaggregation.\n
       Estimates the solar generation hidden in a prosumer's net load from
       the net load itself and the local irradiance.
    """
    if verbose:
        click.echo('\n--- Verbose mode ON (verbosity %s)---\n' % verbose, err=True)


@pvdisagg.command()
@click.option("--meter", default=None, type=click.Path(exists=True, dir_okay=False),
              help="Half-hourly meter CSV.")
@click.option("--weather", default=None, type=click.Path(exists=True, dir_okay=False),
              help="Hourly or half-hourly irradiance CSV.")
@click.option("--dataset", default=None, type=click.Path(exists=True, dir_okay=False),
              help="Canonical dataset to re-serialize instead.")
@click.option("-o", "--out", required=True, type=click.Path(dir_okay=False),
              help="Output dataset file.")
@common_options
@handle_errors
def ingest(meter, weather, dataset, out, config_file, seed, threads, log_level, data_folder):
    """Build the canonical dataset from meter and weather files."""
    if dataset is None and (meter is None or weather is None):
        raise click.UsageError('ingest needs --meter and --weather, or --dataset.')
    if dataset is not None and (meter is not None or weather is not None):
        raise click.UsageError('--dataset cannot be combined with --meter/--weather.')

    pvd = make_pvdisagg(config_file, seed, threads, log_level, data_folder)
    if dataset is not None:
        pvd.passthrough(dataset, out)
    else:
        pvd.ingest(meter, weather, out)


@pvdisagg.command()
@click.option("--prosumers", required=True, type=click.IntRange(min=1),
              help="Number of prosumers.")
@click.option("--days", required=True, type=click.IntRange(min=1),
              help="Number of days per prosumer.")
@click.option("--start-date", default=None, type=click.DateTime(formats=['%Y-%m-%d']),
              help="First day. (default=2011-01-01)")
@click.option("-o", "--out", required=True, type=click.Path(dir_okay=False),
              help="Output dataset file.")
@common_options
@handle_errors
def synth(prosumers, days, start_date, out, config_file, seed, threads, log_level, data_folder):
    """Generate a synthetic dataset."""
    pvd = make_pvdisagg(config_file, seed, threads, log_level, data_folder)
    pvd.synth(prosumers, days, out, start_date.date() if start_date else None)


@pvdisagg.command()
@click.option("--dataset", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Canonical dataset.")
@click.option("-o", "--out", required=True, type=click.Path(file_okay=False),
              help="Run directory.")
@click.option("--epochs", default=None, type=click.IntRange(min=1),
              help="Override train.epochs.")
@common_options
@handle_errors
def train(dataset, out, epochs, config_file, seed, threads, log_level, data_folder):
    """Train the model and write a run directory."""
    pvd = make_pvdisagg(config_file, seed, threads, log_level, data_folder, {('train', 'epochs'): epochs})
    pvd.train(dataset, out)


@pvdisagg.command(name='eval')
@click.option("--dataset", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Canonical dataset with PV truth.")
@click.option("--checkpoint", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Checkpoint written by train.")
@click.option("-o", "--out", required=True, type=click.Path(file_okay=False),
              help="Report directory.")
@click.option("--day-series", default=None, callback=parse_day_series,
              help="Also export PROSUMER:YYYY-MM-DD and the following day.")
@common_options
@handle_errors
def evaluate(dataset, checkpoint, out, day_series, config_file, seed, threads, log_level, data_folder):
    """Score a checkpoint per season against the baselines."""
    pvd = make_pvdisagg(config_file, seed, threads, log_level, data_folder)
    pvd.evaluate(dataset, checkpoint, out, day_series)


@pvdisagg.command()
@click.option("--dataset", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Canonical dataset.")
@click.option("--checkpoint", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Checkpoint written by train.")
@click.option("-o", "--out", required=True, type=click.Path(dir_okay=False),
              help="Prediction CSV.")
@common_options
@handle_errors
def predict(dataset, checkpoint, out, config_file, seed, threads, log_level, data_folder):
    """Estimate PV generation and consumption for every day."""
    pvd = make_pvdisagg(config_file, seed, threads, log_level, data_folder)
    pvd.predict(dataset, checkpoint, out)


@pvdisagg.command()
@click.option("--dataset", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Canonical dataset with PV truth.")
@click.option("-o", "--out", required=True, type=click.Path(file_okay=False),
              help="Report directory.")
@click.option("--repeats", default=None, type=click.IntRange(min=1),
              help="Override train.repeats.")
@common_options
@handle_errors
def report(dataset, out, repeats, config_file, seed, threads, log_level, data_folder):
    """Repeat train and evaluate, aggregate per season."""
    pvd = make_pvdisagg(config_file, seed, threads, log_level, data_folder)
    pvd.report(dataset, out, repeats)
