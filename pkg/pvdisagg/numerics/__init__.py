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
    pvdisagg.numerics

    Dense float64 matrices with reverse-mode automatic differentiation.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""
from .graph import Node, as_matrix, as_node, backward, topological_order
from .ops import add, add_bias, concat_cols, flatten, matmul, maxpool1d, mse, mul_scalar, relu, scale, \
    slice_cols, softmax_rows, sum_all, transpose
from .gradcheck import numerical_gradient, relative_error

__all__ = [
    'Node',
    'as_matrix',
    'as_node',
    'backward',
    'topological_order',
    'add',
    'add_bias',
    'concat_cols',
    'flatten',
    'matmul',
    'maxpool1d',
    'mse',
    'mul_scalar',
    'relu',
    'scale',
    'slice_cols',
    'softmax_rows',
    'sum_all',
    'transpose',
    'numerical_gradient',
    'relative_error'
]
