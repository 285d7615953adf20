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
    pvdisagg.exceptions

    Module containing all custom exceptions used by pvdisagg.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""


class PVDisaggError(Exception):
    """Pvdisagg's base Exception class"""

    def __init__(self, message):
        """Constructor.

        :param message: error message
        :type message: str
        """
        super(PVDisaggError, self).__init__(message)
        self.message = message


class NumericsError(PVDisaggError):
    """Base class for matrix and autodiff exceptions."""

    def __init__(self, message):
        """Constructor.

        :param message: error message
        :type message: str
        """
        super(NumericsError, self).__init__(message)


class ShapeError(NumericsError):
    """Raised when operand shapes do not agree."""

    def __init__(self, message):
        """Constructor.

        :param message: error message
        :type message: str
        """
        super(ShapeError, self).__init__(message)


class ParameterError(NumericsError):
    """Raised when an operation parameter is out of range."""

    def __init__(self, message):
        """Constructor.

        :param message: error message
        :type message: str
        """
        super(ParameterError, self).__init__(message)


class ContractError(NumericsError):
    """Raised when a caller breaks an operation precondition."""

    def __init__(self, message):
        """Constructor.

        :param message: error message
        :type message: str
        """
        super(ContractError, self).__init__(message)


class DataError(PVDisaggError):
    """Base class for data pipeline exceptions."""

    def __init__(self, message):
        """Constructor.

        :param message: error message
        :type message: str
        """
        super(DataError, self).__init__(message)


class DataFormatError(DataError):
    """Raised when an input file does not have the expected layout."""

    def __init__(self, message, line=None):
        """Constructor.

        :param message: error message
        :type message: str
        :param line: 1-based line number of the offending row
        :type line: int
        """
        if line is not None:
            message = 'line %s: %s' % (line, message)
        super(DataFormatError, self).__init__(message)
        self.line = line


class DataParseError(DataError):
    """Raised when a cell cannot be converted to a number."""

    def __init__(self, message, row=None, col=None):
        """Constructor.

        :param message: error message
        :type message: str
        :param row: 1-based line number of the offending row
        :type row: int
        :param col: name of the offending column
        :type col: str
        """
        if row is not None:
            message = 'row %s, column %s: %s' % (row, col, message)
        super(DataParseError, self).__init__(message)
        self.row = row
        self.col = col


class DuplicateRecordError(DataError):
    """Raised when a (prosumer, date, category) appears twice."""

    def __init__(self, message):
        """Constructor.

        :param message: error message
        :type message: str
        """
        super(DuplicateRecordError, self).__init__(message)


class ValidationError(DataError):
    """Raised when a sample or record violates its invariants."""

    def __init__(self, message):
        """Constructor.

        :param message: error message
        :type message: str
        """
        super(ValidationError, self).__init__(message)


class NormalizationError(DataError):
    """Raised when normalization statistics cannot be fit."""

    def __init__(self, message):
        """Constructor.

        :param message: error message
        :type message: str
        """
        super(NormalizationError, self).__init__(message)


class ConfigError(PVDisaggError):
    """Raised on invalid or unknown configuration settings."""

    def __init__(self, message):
        """Constructor.

        :param message: error message
        :type message: str
        """
        super(ConfigError, self).__init__(message)


class TrainingError(PVDisaggError):
    """Base class for training exceptions."""

    def __init__(self, message):
        """Constructor.

        :param message: error message
        :type message: str
        """
        super(TrainingError, self).__init__(message)


class CheckpointError(PVDisaggError):
    """Raised when a checkpoint cannot be written or read back."""

    def __init__(self, message):
        """Constructor.

        :param message: error message
        :type message: str
        """
        super(CheckpointError, self).__init__(message)


class EvaluationError(PVDisaggError):
    """Base class for evaluation exceptions."""

    def __init__(self, message):
        """Constructor.

        :param message: error message
        :type message: str
        """
        super(EvaluationError, self).__init__(message)


class HelpersError(PVDisaggError):
    """Base class for pvdisagg helpers exceptions."""

    def __init__(self, message):
        """Constructor.

        :param message: error message
        :type message: str
        """
        super(HelpersError, self).__init__(message)


class LoggerMixinError(PVDisaggError):
    """Pvdisagg's logger mixin base exception class."""

    def __init__(self, message):
        """Constructor.

        :param message: error message
        :type message: str
        """
        super(LoggerMixinError, self).__init__(message)
