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
    pvdisagg.utils.config

    Pvdisagg's own config module for loading configuration settings defined
    by the user.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""
import copy
import os
from configparser import Error as ConfigParserError, RawConfigParser
from logging import getLogger

from pykwalify.errors import CoreError, SchemaError

from ..constants import CONFIG_SCHEMA, DEFAULT_CONFIG, DEFAULT_CONFIG_SECTIONS, SCHEMA_EXT
from ..exceptions import ConfigError
from ..helpers import schema_validator, template_render

LOG = getLogger(__name__)


def _coerce(section, key, value, default):
    """Convert a raw option value to the type of its default."""
    label = '%s.%s' % (section, key)
    if isinstance(default, list):
        if isinstance(value, (list, tuple)):
            items = list(value)
        else:
            items = [item.strip() for item in str(value).split(',') if item.strip()]
        item_type = type(default[0]) if default else str
        return [_coerce(section, key, item, item_type()) for item in items]
    try:
        if isinstance(default, bool):
            return str(value).strip().lower() in ['1', 'true', 'yes', 'on']
        if isinstance(default, int):
            return int(str(value).strip())
        if isinstance(default, float):
            return float(str(value).strip())
    except ValueError:
        raise ConfigError('%s: cannot convert %r to %s.' % (label, value, type(default).__name__))
    return str(value).strip()


class Config(dict):
    """The config class.

    Its desired state is for loading the configuration settings supplied by
    the user. The config object is based on pythons dictionary data
    structure, keyed by section and then by option.
    """

    def __init__(self):
        """Constructor."""
        super(Config, self).__init__(copy.deepcopy(DEFAULT_CONFIG))
        self.loaded_files = []

    def __set_section__(self, parser, section):
        """Set the options of one section, overriding defaults."""
        defaults = DEFAULT_CONFIG[section]
        for option in parser.options(section):
            if option not in defaults:
                raise ConfigError('Unknown option %s in section [%s].' % (option, section))
            self[section][option] = _coerce(section, option, parser.get(section, option), defaults[option])

    def read_file(self, filename):
        """Apply one INI file rendered through jinja with the environment."""
        parser = RawConfigParser()
        try:
            # read the string returned post rendering the jinja template
            parser.read_string(template_render(filename, os.environ))
        except ConfigParserError as ex:
            raise ConfigError('Unable to parse %s: %s' % (filename, ex))

        for section in parser.sections():
            if section not in DEFAULT_CONFIG_SECTIONS:
                raise ConfigError('Unknown section [%s] in %s.' % (section, filename))
            self.__set_section__(parser, section)
        self.loaded_files.append(filename)

    def load(self, config_file=None):
        """Load configuration settings.

        Configuration will be loaded from the following order:
            - /etc/pvdisagg/pvdisagg.cfg
            - ./pvdisagg.cfg
            - PVDISAGG_SETTINGS env variable setting the config file
            - the config file given on the command line
        """
        files = [
            '/etc/pvdisagg/pvdisagg.cfg',
            os.path.join(os.getcwd(), 'pvdisagg.cfg')
        ]

        if os.getenv('PVDISAGG_SETTINGS'):
            files.append(os.getenv('PVDISAGG_SETTINGS'))

        for filename in files:
            if not os.path.exists(filename):
                # file not found
                continue
            self.read_file(filename)

        if config_file is not None:
            if not os.path.exists(config_file):
                raise ConfigError('Config file %s not found.' % config_file)
            self.read_file(config_file)

        return self.validate()

    def override(self, section, option, value):
        """Set one option from a command line flag; None leaves it untouched."""
        if value is None:
            return
        if section not in DEFAULT_CONFIG or option not in DEFAULT_CONFIG[section]:
            raise ConfigError('Unknown option %s.%s.' % (section, option))
        self[section][option] = _coerce(section, option, value, DEFAULT_CONFIG[section][option])

    def validate(self):
        """Validate the typed settings against the schema.

        :return: the config
        :rtype: Config
        """
        try:
            schema_validator(schema_data={k: dict(v) for k, v in self.items()},
                             schema_files=[CONFIG_SCHEMA],
                             schema_ext_files=[SCHEMA_EXT])
        except (CoreError, SchemaError) as ex:
            raise ConfigError('Invalid configuration: %s' % ex.msg)
        except AssertionError as ex:
            # raised by the schema extension functions
            raise ConfigError('Invalid configuration: %s' % ex)

        data = self['data']
        if not data['percentile_low'] < data['percentile_high']:
            raise ConfigError('data.percentile_low must be below data.percentile_high.')
        overlap = set(data['type1_prosumers']) & set(data['type2_prosumers'])
        if overlap:
            raise ConfigError('data: prosumers %s are listed as both type 1 and type 2.' % sorted(overlap))
        return self

    def write_snapshot(self, path):
        """Write the effective configuration as an INI file."""
        parser = RawConfigParser()
        for section in DEFAULT_CONFIG_SECTIONS:
            parser.add_section(section)
            for option in DEFAULT_CONFIG[section]:
                value = self[section][option]
                if isinstance(value, list):
                    value = ', '.join(str(item) for item in value)
                parser.set(section, option, str(value))
        with open(path, 'w') as f_raw:
            parser.write(f_raw)
