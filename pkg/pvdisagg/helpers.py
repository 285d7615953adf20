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
    pvdisagg.helpers

    Module containing functions which are generic and used throughout the
    code base.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""
import inspect
import json
import os
import pkgutil
import sys
from collections import OrderedDict
from logging import getLogger

import jinja2
from pykwalify.core import Core
from pykwalify.errors import CoreError, SchemaError
from ruamel.yaml import YAML

from .exceptions import HelpersError

LOG = getLogger(__name__)


def get_core_tasks_classes():
    """
    Go through all modules within pvdisagg.tasks package and return
    the list of all tasks classes within it. All tasks within the
    pvdisagg.tasks module are considered valid task class to be added into
    the pipeline.

    :return: List of all valid tasks classes
    """
    from .core import PVDisaggTask
    from . import tasks

    prefix = tasks.__name__ + "."

    tasks_list = []

    for importer, modname, ispkg in pkgutil.iter_modules(tasks.__path__, prefix):
        clsmembers = inspect.getmembers(sys.modules[modname], inspect.isclass)
        for clsname, clsmember in clsmembers:
            if (clsmember is not PVDisaggTask) and issubclass(clsmember, PVDisaggTask) and \
                    clsmember not in tasks_list:
                tasks_list.append(clsmember)

    return tasks_list


def schema_validator(schema_data, schema_files, schema_ext_files=None):
    """Validate data against pykwalify schema files.

    :param schema_data: the data to validate
    :type schema_data: dict
    :param schema_files: the yaml schema files
    :type schema_files: list
    :param schema_ext_files: optional list of extension file paths
    :type schema_ext_files: list
    """
    c = Core(source_data=schema_data,
             schema_files=schema_files,
             extensions=schema_ext_files)

    try:
        c.validate(raise_exception=True)
    except (CoreError, SchemaError) as ex:
        LOG.error(ex.msg)
        raise


def file_mgmt(operation, file_path, content=None):
    """A generic function to manage files (read/write/delete).

    :param operation: File operation type to perform
    :type operation: str
    :param file_path: File name including path
    :type file_path: str
    :param content: Data to write to a file
    :type content: object
    :return: Data that was read from a file
    """
    yaml = YAML()
    yaml.default_flow_style = False
    yaml.representer.ignore_aliases = lambda *data: True
    yaml.Representer.add_representer(OrderedDict, yaml.Representer.represent_dict)

    file_ext = os.path.splitext(file_path)[-1]

    if operation in ['r', 'read']:
        if not os.path.exists(file_path):
            raise IOError("%s file not found!" % file_path)
        with open(file_path) as f_raw:
            if file_ext == ".json":
                return json.load(f_raw)
            elif file_ext in ['.yaml', '.yml']:
                return yaml.load(f_raw)
            return f_raw.read()
    elif operation in ['w', 'write']:
        with open(file_path, 'w') as f_raw:
            if file_ext == ".json":
                json.dump(content, f_raw, indent=4, sort_keys=True)
            elif file_ext in ['.yaml', '.yml']:
                yaml.dump(content, f_raw)
            else:
                f_raw.write(content)
    elif operation in ['d', 'delete']:
        if os.path.exists(file_path):
            os.unlink(file_path)
    else:
        raise HelpersError("Unknown file operation: %s." % operation)


def template_render(filepath, env_dict):
    """
    A function to do jinja templating given a file and a dictionary of key/vars

    :param filepath: path to a file
    :param env_dict: dictionary of key/values used for data substitution
    :return: stream of data with the templating complete
    :rtype: data stream
    """
    path, filename = os.path.split(os.path.abspath(filepath))
    return jinja2.Environment(loader=jinja2.FileSystemLoader(
        path), lstrip_blocks=True, trim_blocks=True).get_template(filename).render(env_dict)


def chunk_list(items, size):
    """Split a list into consecutive chunks of at most size items."""
    if size < 1:
        raise HelpersError('Chunk size must be >= 1, got %s.' % size)
    return [items[i:i + size] for i in range(0, len(items), size)]


def ensure_folder(path):
    """Create a folder (and its parents) when missing.

    :return: the folder path
    :rtype: str
    """
    try:
        if not os.path.isdir(path):
            os.makedirs(path)
    except OSError as ex:
        raise HelpersError('Unable to create folder %s: %s' % (path, ex))
    return path
