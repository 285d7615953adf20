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
    pvdisagg.numerics.graph

    Computation graph nodes and the reverse-mode sweep.

    Every node wraps a 2-D float64 matrix (a series of length T is a 1xT
    row). Primitives in ~pvdisagg.numerics.ops create new nodes and attach
    a closure that pushes the node's gradient to its parents.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""
import numpy as np

from ..exceptions import ContractError, NumericsError, ShapeError


def as_matrix(value):
    """Return value as a 2-D float64 array.

    Scalars become 1x1 and 1-D sequences become a single row.

    :param value: scalar, sequence or array
    :return: 2-D array
    :rtype: numpy.ndarray
    """
    value = np.asarray(value, dtype=np.float64)
    if value.ndim == 0:
        return value.reshape(1, 1)
    if value.ndim == 1:
        return value.reshape(1, -1)
    if value.ndim != 2:
        raise ShapeError('Expected at most 2 dimensions, got shape %s.' % (value.shape,))
    return value


class Node(object):
    """A value in the computation graph together with its gradient."""

    __slots__ = ('value', 'grad', 'op', 'parents', 'name', '_backward')

    def __init__(self, value, parents=(), op='leaf', name=None):
        """Constructor.

        :param value: matrix value
        :type value: array like
        :param parents: nodes this value was computed from
        :type parents: tuple
        :param op: tag of the primitive which produced the node
        :type op: str
        :param name: optional parameter name
        :type name: str
        """
        value = as_matrix(value)
        if not np.isfinite(value).all():
            raise NumericsError('Operation %s produced a non-finite value.' % op)
        self.value = value
        self.grad = np.zeros_like(value)
        self.op = op
        self.parents = tuple(parents)
        self.name = name
        self._backward = None

    @property
    def shape(self):
        return self.value.shape

    def __repr__(self):
        return 'Node(op=%s, shape=%s, name=%s)' % (self.op, self.shape, self.name)


def as_node(value):
    """Wrap a constant in a leaf node; nodes are returned untouched."""
    if isinstance(value, Node):
        return value
    return Node(value, op='const')


def topological_order(root):
    """Return every node reachable from root, parents before children.

    The walk is iterative so deep graphs do not hit the recursion limit.

    :param root: output node
    :type root: Node
    :rtype: list
    """
    order = []
    visited = set()
    stack = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            order.append(node)
            continue
        if id(node) in visited:
            continue
        visited.add(id(node))
        stack.append((node, True))
        for parent in node.parents:
            if id(parent) not in visited:
                stack.append((parent, False))
    return order


def backward(loss):
    """Fill the grad of every node reachable from a scalar loss.

    Gradients of reachable nodes are reset before the sweep, so calling it
    twice on the same graph gives the same result. Nodes not reachable
    from the loss keep a zero gradient.

    :param loss: 1x1 node
    :type loss: Node
    :return: nodes in topological order
    :rtype: list
    """
    if loss.shape != (1, 1):
        raise ContractError('backward needs a scalar loss, got shape %s.' % (loss.shape,))

    order = topological_order(loss)
    for node in order:
        node.grad = np.zeros_like(node.value)
    loss.grad = np.ones_like(loss.value)

    for node in reversed(order):
        if node._backward is not None:
            node._backward()
    return order
