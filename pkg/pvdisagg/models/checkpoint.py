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
    pvdisagg.models.checkpoint

    Model checkpoints are .npz archives: one .npy member per named
    parameter plus a meta.json member with the schema version, the model
    configuration, the normalization statistics and run metadata. Members
    carry a fixed timestamp, so equal parameters give equal bytes.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""
import io
import json
import zipfile
from collections import OrderedDict, namedtuple

import numpy as np

from .fusion import ModelConfig, from_named, named_parameters
from ..constants import CHECKPOINT_DATE_TIME, CHECKPOINT_META, CHECKPOINT_SCHEMA_VERSION
from ..data.normalize import NormStats
from ..exceptions import CheckpointError, PVDisaggError

Checkpoint = namedtuple('Checkpoint', ('params', 'model_cfg', 'norm_stats', 'meta'))


def _member(name):
    info = zipfile.ZipInfo(name, date_time=CHECKPOINT_DATE_TIME)
    info.compress_type = zipfile.ZIP_STORED
    info.external_attr = 0o644 << 16
    return info


def save_checkpoint(path, params, model_cfg, norm_stats, meta=None):
    """Write a checkpoint.

    :param path: output .npz path
    :type path: str
    :param params: model parameters
    :type params: ModelParams
    :param model_cfg: model configuration
    :type model_cfg: ModelConfig
    :param norm_stats: input statistics the model was trained with
    :type norm_stats: NormStats
    :param meta: extra JSON serializable run metadata
    :type meta: dict
    """
    named = named_parameters(params)
    document = dict(meta or {})
    document.update({
        'version': CHECKPOINT_SCHEMA_VERSION,
        'model': model_cfg.to_dict(),
        'norm_stats': norm_stats.to_dict(),
        'parameters': list(named)
    })

    try:
        with zipfile.ZipFile(path, 'w') as archive:
            for name, value in named.items():
                buffer = io.BytesIO()
                np.lib.format.write_array(buffer, np.ascontiguousarray(value, dtype=np.float64),
                                          allow_pickle=False)
                archive.writestr(_member(name + '.npy'), buffer.getvalue())
            archive.writestr(_member(CHECKPOINT_META), json.dumps(document, indent=2, sort_keys=True))
    except (OSError, IOError) as ex:
        raise CheckpointError('Unable to write checkpoint %s: %s' % (path, ex))


def load_checkpoint(path):
    """Read a checkpoint written by save_checkpoint.

    :param path: .npz path
    :type path: str
    :rtype: Checkpoint
    """
    try:
        with zipfile.ZipFile(path) as archive:
            meta = json.loads(archive.read(CHECKPOINT_META).decode('utf-8'))
            if meta.get('version') != CHECKPOINT_SCHEMA_VERSION:
                raise CheckpointError('Checkpoint %s has version %s, expected %s.'
                                      % (path, meta.get('version'), CHECKPOINT_SCHEMA_VERSION))
            named = OrderedDict()
            for name in meta['parameters']:
                named[name] = np.lib.format.read_array(io.BytesIO(archive.read(name + '.npy')), allow_pickle=False)
    except CheckpointError:
        raise
    except (OSError, IOError, KeyError, ValueError, zipfile.BadZipFile) as ex:
        raise CheckpointError('Unable to read checkpoint %s: %s' % (path, ex))

    try:
        model_cfg = ModelConfig.from_dict(meta['model'])
        params = from_named(named, model_cfg)
        norm_stats = NormStats.from_dict(meta['norm_stats'])
    except PVDisaggError as ex:
        raise CheckpointError('Checkpoint %s is inconsistent: %s' % (path, ex.message))
    return Checkpoint(params, model_cfg, norm_stats, meta)
