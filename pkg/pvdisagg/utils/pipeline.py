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
    pvdisagg.utils.pipeline

    Module containing the class for building pipelines of tasks for blaster
    to run.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""

from collections import namedtuple

from ..constants import TASKLIST
from ..exceptions import PVDisaggError
from ..helpers import get_core_tasks_classes


class PipelineBuilder(object):
    """
    Builds the pipeline of one pvdisagg task type. Every entry of the
    pipeline is a blaster task dict for one unit of work.
    """

    def __init__(self, name):
        """Constructor.

        :param name: pvdisagg task name
        :type name: str
        """
        self._name = name

        # pipelines are a tuple data structure consisting of a name, type and
        # list of tasks
        self.pipeline_template = namedtuple(
            'Pipeline', ('name', 'type', 'tasks'))

    @property
    def name(self):
        """Return the pipeline name"""
        return self._name

    def is_task_valid(self):
        """Check if the pipeline task name is valid for pvdisagg.

        :return: whether task is valid or not.
        :rtype: bool
        """
        try:
            TASKLIST.index(self.name)
        except ValueError:
            return False
        return True

    def task_cls_lookup(self):
        """Lookup the pipeline task class type.

        :return: the class associated for the pipeline task.
        :rtype: class
        """
        for cls in get_core_tasks_classes():
            if cls.__task_name__ == self.name:
                return cls
        raise PVDisaggError('Unable to lookup task %s class.' % self.name)

    def build(self, units):
        """Build the pipeline.

        :param units: one dict of task constructor arguments per unit of
            work, each holding a unique name
        :type units: list
        :return: pvdisagg pipeline
        :rtype: namedtuple
        """
        pipeline = self.pipeline_template(
            self.name,
            self.task_cls_lookup(),
            list()
        )

        for unit in units:
            task = dict(unit)
            task.update({'task': pipeline.type, 'methods': ['run']})
            # 0 disables the blaster timeout
            task.setdefault('timeout', 0)
            pipeline.tasks.append(task)

        return pipeline
