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
    pvdisagg.core

    Module containing the core classes which pvdisagg tasks and the central
    pvdisagg object inherit.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""
import copy
import errno
import inspect
import os
from logging import CRITICAL, DEBUG, ERROR, INFO, WARNING
from logging import getLogger, Filter
from logging import config as log_config
from time import time
from traceback import format_exc

from .constants import LOGGING_CONFIG
from .exceptions import PVDisaggError, LoggerMixinError


class LoggerMixin(object):
    """Pvdisagg's logger mixin class.

    This class provides an easy interface for other classes throughout
    pvdisagg to utilize the pvdisagg logger.

    When a pvdisagg object is created, the pvdisagg logger will be created
    also. Allowing easy access to the logger as follows:

        pvd = PVDisagg()
        pvd.logger.info('pvdisagg!')

    Modules that want to use the logger per function and not per class can
    access it as follows:

        from logging import getLogger
        LOG = getLogger(__name__)
        LOG.info('pvdisagg!')
    """

    _DEBUG_LOG_FORMAT = ("%(asctime)s %(levelname)s [%(name)s.%(funcName)s:%(lineno)d] %(message)s")
    _INFO_LOG_FORMAT = ("%(asctime)s %(levelname)s %(message)s")

    _LOG_LEVELS = {
        'debug': DEBUG,
        'info': INFO,
        'warning': WARNING,
        'error': ERROR,
        'critical': CRITICAL
    }

    @classmethod
    def setup_logger(cls, name, file_path, log_level='info'):
        """Configure the named logger with the console and file handlers.

        :param name: logger name
        :type name: str
        :param file_path: log file path
        :type file_path: str
        :param log_level: one of the keys of _LOG_LEVELS
        :type log_level: str
        """
        logging_config = copy.deepcopy(LOGGING_CONFIG)

        logging_config['handlers']['file'].update({'filename': file_path})
        logging_config['formatters']['default'].update({'format': cls._INFO_LOG_FORMAT})
        logging_config['formatters']['debug'].update({'format': cls._DEBUG_LOG_FORMAT})

        if log_level == 'debug':
            for handler in logging_config['handlers']:
                logging_config['handlers'][handler].update({'formatter': 'debug'})
                logging_config['handlers'][handler].update({'level': cls._LOG_LEVELS[log_level]})

            for logger in logging_config['loggers']:
                logging_config['loggers'][logger].update({'level': cls._LOG_LEVELS[log_level]})

        logging_config['loggers'].update({name: {'handlers': ['console', 'file'],
                                                 'level': cls._LOG_LEVELS[log_level],
                                                 'propagate': False}})

        log_config.dictConfig(logging_config)

    @classmethod
    def create_logger(cls, name, config):
        """Create logger.

        The log file lives in the logs folder under the configured data
        folder.

        :param name: Name for the logger to create.
        :type name: str
        :param config: pvdisagg config object.
        :type config: dict
        """
        log_dir = os.path.join(config['defaults']['data_folder'], 'logs')

        try:
            if not os.path.exists(log_dir):
                os.makedirs(log_dir)
        except OSError as ex:
            msg = 'Unable to create %s directory' % log_dir
            if ex.errno == errno.EACCES:
                msg += ', permission denied.'
            else:
                msg += ', %s.' % ex
            raise LoggerMixinError(msg)

        full_path = os.path.join(log_dir, 'pvdisagg.log')

        cls.setup_logger(name, full_path, config['defaults']['log_level'])

    @property
    def logger(self):
        """Returns the logger of the module the caller lives in."""
        return getLogger(inspect.getmodule(inspect.stack()[1][0]).__name__)

    class ExceptionFilter(Filter):

        def filter(self, record):
            if record.getMessage().find('Traceback') != -1:
                return False
            else:
                return True


class TimeMixin(object):
    """Pvdisagg's time mixin class.

    This class provides an easy interface for other classes to save a start
    and end time. Once times are saved they can calculate the time delta
    between the two points in time.
    """
    _start_time = None
    _end_time = None
    _hours = 0
    _minutes = 0
    _seconds = 0

    def start(self):
        """Set the start time."""
        self._start_time = time()

    def end(self):
        """Set the end time."""
        self._end_time = time()

        # calculate time delta
        delta = self._end_time - self._start_time
        self.hours = delta // 3600
        delta = delta - 3600 * self.hours
        self.minutes = delta // 60
        self.seconds = delta - 60 * self.minutes

    @property
    def start_time(self):
        """Return the start time."""
        return self._start_time

    @start_time.setter
    def start_time(self, value):
        raise PVDisaggError('You cannot set the start time.')

    @property
    def end_time(self):
        """Return the end time."""
        return self._end_time

    @end_time.setter
    def end_time(self, value):
        raise PVDisaggError('You cannot set the end time.')

    @property
    def elapsed(self):
        """Return the seconds between start and end."""
        return self._end_time - self._start_time

    @property
    def hours(self):
        return self._hours

    @hours.setter
    def hours(self, value):
        self._hours = value

    @property
    def minutes(self):
        return self._minutes

    @minutes.setter
    def minutes(self, value):
        self._minutes = value

    @property
    def seconds(self):
        return self._seconds

    @seconds.setter
    def seconds(self, value):
        self._seconds = value


class PVDisaggTask(LoggerMixin, TimeMixin):
    """
    This is the base class for every task run through a blaster pipeline.
    All instances of this class can be found within the ~pvdisagg.tasks
    package.
    """

    __task_name__ = None
    __concurrent__ = True

    def __init__(self, name=None, **kwargs):
        if name is not None:
            self.name = name

    def run(self):
        pass

    def __str__(self):
        return self.name

    @staticmethod
    def get_formatted_traceback():
        """Get traceback when exception is raised.

        :return: Exception information.
        :rtype: str
        """
        return format_exc()
