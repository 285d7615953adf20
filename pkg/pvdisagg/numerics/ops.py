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
    pvdisagg.numerics.ops

    Differentiable matrix primitives. Every function accepts nodes or plain
    arrays (wrapped as constants) and returns a new node.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""
import math

import numpy as np

from .graph import Node, as_node, as_matrix
from ..exceptions import ParameterError, ShapeError


def matmul(a, b):
    """Matrix product a @ b."""
    a, b = as_node(a), as_node(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError('matmul inner dimensions differ: %s x %s.' % (a.shape, b.shape))
    out = Node(np.dot(a.value, b.value), (a, b), 'matmul')

    def _backward():
        a.grad += np.dot(out.grad, b.value.T)
        b.grad += np.dot(a.value.T, out.grad)
    out._backward = _backward

    return out


def add(a, b):
    """Elementwise sum of two equally shaped matrices."""
    a, b = as_node(a), as_node(b)
    if a.shape != b.shape:
        raise ShapeError('add shapes differ: %s and %s.' % (a.shape, b.shape))
    out = Node(a.value + b.value, (a, b), 'add')

    def _backward():
        a.grad += out.grad
        b.grad += out.grad
    out._backward = _backward

    return out


def add_bias(x, bias):
    """Add a 1xn bias row to every row of an mxn matrix."""
    x, bias = as_node(x), as_node(bias)
    if bias.shape != (1, x.shape[1]):
        raise ShapeError('bias shape %s does not fit input %s.' % (bias.shape, x.shape))
    out = Node(x.value + bias.value, (x, bias), 'add_bias')

    def _backward():
        x.grad += out.grad
        bias.grad += out.grad.sum(axis=0, keepdims=True)
    out._backward = _backward

    return out


def scale(x, factor):
    """Multiply by a constant real."""
    x = as_node(x)
    factor = float(factor)
    out = Node(x.value * factor, (x,), 'scale')

    def _backward():
        x.grad += out.grad * factor
    out._backward = _backward

    return out


def mul_scalar(s, x):
    """Multiply a matrix by a learnable 1x1 node."""
    s, x = as_node(s), as_node(x)
    if s.shape != (1, 1):
        raise ShapeError('mul_scalar needs a 1x1 factor, got %s.' % (s.shape,))
    out = Node(s.value[0, 0] * x.value, (s, x), 'mul_scalar')

    def _backward():
        s.grad += np.sum(out.grad * x.value)
        x.grad += s.value[0, 0] * out.grad
    out._backward = _backward

    return out


def relu(x):
    """Elementwise max(x, 0); the subgradient at 0 is 0."""
    x = as_node(x)
    mask = x.value > 0
    out = Node(np.where(mask, x.value, 0.0), (x,), 'relu')

    def _backward():
        x.grad += out.grad * mask
    out._backward = _backward

    return out


def softmax_rows(x):
    """Row-wise softmax stabilised by subtracting each row's max."""
    x = as_node(x)
    shifted = x.value - x.value.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    y = exp / exp.sum(axis=1, keepdims=True)
    out = Node(y, (x,), 'softmax_rows')

    def _backward():
        g = out.grad
        x.grad += y * (g - np.sum(g * y, axis=1, keepdims=True))
    out._backward = _backward

    return out


def maxpool1d(x, kernel):
    """Non-overlapping max pooling along each row.

    The stride equals the kernel and a final partial window is kept, so a
    row of length T becomes ceil(T / kernel). The gradient of each window
    goes to its first argmax.
    """
    x = as_node(x)
    kernel = int(kernel)
    if kernel < 1:
        raise ParameterError('maxpool1d kernel must be >= 1, got %s.' % kernel)

    rows, length = x.shape
    windows = int(math.ceil(length / float(kernel)))
    padded = np.full((rows, windows * kernel), -np.inf)
    padded[:, :length] = x.value
    blocks = padded.reshape(rows, windows, kernel)
    arg = blocks.argmax(axis=2)
    positions = arg + np.arange(windows) * kernel
    row_index = np.arange(rows)[:, None]
    out = Node(x.value[row_index, positions], (x,), 'maxpool1d')

    def _backward():
        np.add.at(x.grad, (np.broadcast_to(row_index, positions.shape), positions), out.grad)
    out._backward = _backward

    return out


def concat_cols(parts):
    """Append the columns of equally tall matrices in argument order."""
    parts = [as_node(p) for p in parts]
    if not parts:
        raise ShapeError('concat_cols needs at least one part.')
    rows = parts[0].shape[0]
    for p in parts:
        if p.shape[0] != rows:
            raise ShapeError('concat_cols row counts differ: %s.' % [q.shape for q in parts])
    out = Node(np.concatenate([p.value for p in parts], axis=1), parts, 'concat_cols')
    edges = np.cumsum([0] + [p.shape[1] for p in parts])

    def _backward():
        for p, lo, hi in zip(parts, edges[:-1], edges[1:]):
            p.grad += out.grad[:, lo:hi]
    out._backward = _backward

    return out


def slice_cols(x, start, stop):
    """Columns start..stop-1 of x."""
    x = as_node(x)
    if not 0 <= start < stop <= x.shape[1]:
        raise ShapeError('cannot slice columns %s:%s of %s.' % (start, stop, x.shape))
    out = Node(x.value[:, start:stop], (x,), 'slice_cols')

    def _backward():
        x.grad[:, start:stop] += out.grad
    out._backward = _backward

    return out


def transpose(x):
    x = as_node(x)
    out = Node(x.value.T, (x,), 'transpose')

    def _backward():
        x.grad += out.grad.T
    out._backward = _backward

    return out


def flatten(x):
    """Row-major flatten into a single 1x(m*n) row."""
    x = as_node(x)
    out = Node(x.value.reshape(1, -1), (x,), 'flatten')

    def _backward():
        x.grad += out.grad.reshape(x.shape)
    out._backward = _backward

    return out


def sum_all(x):
    """Sum of every entry as a 1x1 node."""
    x = as_node(x)
    out = Node(np.sum(x.value), (x,), 'sum_all')

    def _backward():
        x.grad += out.grad[0, 0]
    out._backward = _backward

    return out


def mse(pred, target):
    """Mean squared error against a constant target, differentiable in pred."""
    pred = as_node(pred)
    target = as_matrix(target)
    if pred.shape != target.shape:
        raise ShapeError('mse shapes differ: %s and %s.' % (pred.shape, target.shape))
    diff = pred.value - target
    out = Node(np.mean(diff * diff), (pred,), 'mse')

    def _backward():
        pred.grad += out.grad[0, 0] * 2.0 * diff / diff.size
    out._backward = _backward

    return out
