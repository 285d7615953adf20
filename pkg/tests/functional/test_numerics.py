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
    tests.test_numerics

    Unit tests for the matrix primitives and reverse-mode gradients.

    :copyright: (c) 2024 pvdisagg developers.
    :license: GPLv3, see LICENSE for more details.
"""

import numpy as np
import pytest

from pvdisagg.exceptions import ContractError, NumericsError, ParameterError, ShapeError
from pvdisagg.numerics import Node, add, add_bias, as_matrix, backward, concat_cols, flatten, matmul, \
    maxpool1d, mse, mul_scalar, numerical_gradient, relative_error, relu, scale, slice_cols, softmax_rows, \
    sum_all, topological_order, transpose

CASES = range(20)
TOLERANCE = 1e-4


def gradcheck(build, values, seed):
    """Compare the analytic gradient of mse(build(inputs), target) with central differences."""
    rng = np.random.default_rng(1000 + seed)
    values = [np.asarray(v, dtype=np.float64) for v in values]
    target = rng.normal(size=build([Node(v) for v in values]).shape)

    nodes = [Node(v) for v in values]
    backward(mse(build(nodes), target))

    for j, value in enumerate(values):
        def func(point):
            args = list(values)
            args[j] = point
            return mse(build([Node(a) for a in args]), target).value[0, 0]

        numeric = numerical_gradient(func, value)
        assert relative_error(nodes[j].grad, numeric) < TOLERANCE


def shape(rng, low=1, high=5):
    return tuple(rng.integers(low, high, size=2))


def away_from_zero(rng, size):
    return rng.choice([-1.0, 1.0], size=size) * rng.uniform(0.1, 1.0, size=size)


class TestGradients(object):
    @staticmethod
    @pytest.mark.parametrize('seed', CASES)
    def test_matmul(seed):
        rng = np.random.default_rng(seed)
        m, k = shape(rng)
        n = rng.integers(1, 5)
        gradcheck(lambda x: matmul(x[0], x[1]), [rng.normal(size=(m, k)), rng.normal(size=(k, n))], seed)

    @staticmethod
    @pytest.mark.parametrize('seed', CASES)
    def test_add(seed):
        rng = np.random.default_rng(seed)
        size = shape(rng)
        gradcheck(lambda x: add(x[0], x[1]), [rng.normal(size=size), rng.normal(size=size)], seed)

    @staticmethod
    @pytest.mark.parametrize('seed', CASES)
    def test_add_bias(seed):
        rng = np.random.default_rng(seed)
        m, n = shape(rng)
        gradcheck(lambda x: add_bias(x[0], x[1]), [rng.normal(size=(m, n)), rng.normal(size=(1, n))], seed)

    @staticmethod
    @pytest.mark.parametrize('seed', CASES)
    def test_scale(seed):
        rng = np.random.default_rng(seed)
        factor = rng.normal()
        gradcheck(lambda x: scale(x[0], factor), [rng.normal(size=shape(rng))], seed)

    @staticmethod
    @pytest.mark.parametrize('seed', CASES)
    def test_mul_scalar(seed):
        rng = np.random.default_rng(seed)
        gradcheck(lambda x: mul_scalar(x[0], x[1]), [rng.normal(size=(1, 1)), rng.normal(size=shape(rng))], seed)

    @staticmethod
    @pytest.mark.parametrize('seed', CASES)
    def test_relu(seed):
        rng = np.random.default_rng(seed)
        gradcheck(lambda x: relu(x[0]), [away_from_zero(rng, shape(rng))], seed)

    @staticmethod
    @pytest.mark.parametrize('seed', CASES)
    def test_softmax_rows(seed):
        rng = np.random.default_rng(seed)
        gradcheck(lambda x: softmax_rows(x[0]), [rng.normal(size=shape(rng, 1, 6))], seed)

    @staticmethod
    @pytest.mark.parametrize('seed', CASES)
    def test_maxpool1d(seed):
        rng = np.random.default_rng(seed)
        rows, length = rng.integers(1, 4), rng.integers(1, 12)
        kernel = int(rng.integers(1, 5))
        distinct = (rng.permutation(rows * length) * 0.1).reshape(rows, length)
        gradcheck(lambda x: maxpool1d(x[0], kernel), [distinct], seed)

    @staticmethod
    @pytest.mark.parametrize('seed', CASES)
    def test_concat_cols(seed):
        rng = np.random.default_rng(seed)
        rows = rng.integers(1, 4)
        parts = [rng.normal(size=(rows, rng.integers(1, 4))) for _ in range(3)]
        gradcheck(lambda x: concat_cols(x), parts, seed)

    @staticmethod
    @pytest.mark.parametrize('seed', CASES)
    def test_slice_cols(seed):
        rng = np.random.default_rng(seed)
        m, n = shape(rng, 1, 6)
        start = int(rng.integers(0, n))
        stop = int(rng.integers(start + 1, n + 1))
        gradcheck(lambda x: slice_cols(x[0], start, stop), [rng.normal(size=(m, n))], seed)

    @staticmethod
    @pytest.mark.parametrize('seed', CASES)
    def test_transpose(seed):
        rng = np.random.default_rng(seed)
        gradcheck(lambda x: transpose(x[0]), [rng.normal(size=shape(rng))], seed)

    @staticmethod
    @pytest.mark.parametrize('seed', CASES)
    def test_flatten(seed):
        rng = np.random.default_rng(seed)
        gradcheck(lambda x: flatten(x[0]), [rng.normal(size=shape(rng))], seed)

    @staticmethod
    @pytest.mark.parametrize('seed', CASES)
    def test_sum_all(seed):
        rng = np.random.default_rng(seed)
        gradcheck(lambda x: sum_all(x[0]), [rng.normal(size=shape(rng))], seed)

    @staticmethod
    @pytest.mark.parametrize('seed', CASES)
    def test_mse(seed):
        rng = np.random.default_rng(seed)
        gradcheck(lambda x: x[0], [rng.normal(size=shape(rng))], seed)

    @staticmethod
    @pytest.mark.parametrize('seed', CASES)
    def test_composite(seed):
        rng = np.random.default_rng(seed)
        tokens, width = rng.integers(2, 6), rng.integers(1, 4)

        def attend(x):
            weights = softmax_rows(scale(matmul(x[0], transpose(x[1])), 0.5))
            return add_bias(matmul(weights, x[2]), x[3])

        values = [rng.normal(size=(tokens, width)), rng.normal(size=(tokens, width)),
                  rng.normal(size=(tokens, width)), rng.normal(size=(1, width))]
        gradcheck(attend, values, seed)


class TestGraph(object):
    @staticmethod
    def test_as_matrix_shapes():
        assert as_matrix(2.0).shape == (1, 1)
        assert as_matrix([1.0, 2.0, 3.0]).shape == (1, 3)
        assert as_matrix(np.zeros((2, 3))).shape == (2, 3)

    @staticmethod
    def test_as_matrix_rejects_3d():
        with pytest.raises(ShapeError):
            as_matrix(np.zeros((2, 2, 2)))

    @staticmethod
    def test_non_finite_value_raises():
        with pytest.raises(NumericsError):
            Node([1.0, np.nan])

    @staticmethod
    def test_backward_needs_scalar():
        with pytest.raises(ContractError):
            backward(Node(np.ones((2, 2))))

    @staticmethod
    def test_backward_twice_is_stable():
        x = Node([[1.0, -2.0, 3.0]])
        loss = mse(x, np.zeros((1, 3)))
        backward(loss)
        first = x.grad.copy()
        backward(loss)
        assert np.array_equal(first, x.grad)

    @staticmethod
    def test_shared_node_accumulates():
        x = Node([[1.0, 2.0]])
        backward(sum_all(add(x, x)))
        assert np.array_equal(x.grad, [[2.0, 2.0]])

    @staticmethod
    def test_unreachable_node_keeps_zero_grad():
        x = Node([[1.0]])
        unused = Node([[5.0]])
        backward(sum_all(scale(x, 3.0)))
        assert x.grad[0, 0] == 3.0
        assert unused.grad[0, 0] == 0.0

    @staticmethod
    def test_topological_order_parents_first():
        x = Node([[1.0]], name='x')
        y = scale(x, 2.0)
        z = add(y, x)
        order = topological_order(z)
        assert order.index(x) < order.index(y) < order.index(z)
        assert len(order) == 3


class TestPrimitives(object):
    @staticmethod
    def test_matmul_shape_mismatch():
        with pytest.raises(ShapeError):
            matmul(np.ones((2, 3)), np.ones((2, 3)))

    @staticmethod
    def test_add_bias_shape_mismatch():
        with pytest.raises(ShapeError):
            add_bias(np.ones((2, 3)), np.ones((1, 2)))

    @staticmethod
    def test_mul_scalar_needs_1x1():
        with pytest.raises(ShapeError):
            mul_scalar(np.ones((1, 2)), np.ones((2, 2)))

    @staticmethod
    def test_maxpool_keeps_partial_window():
        out = maxpool1d([[1.0, 5.0, 2.0, 4.0, 3.0]], 2)
        assert np.array_equal(out.value, [[5.0, 4.0, 3.0]])

    @staticmethod
    def test_maxpool_kernel_one_is_identity():
        x = np.array([[3.0, 1.0, 2.0]])
        assert np.array_equal(maxpool1d(x, 1).value, x)

    @staticmethod
    def test_maxpool_tie_goes_to_first():
        x = Node([[1.0, 1.0, 0.0, 0.0]])
        backward(sum_all(maxpool1d(x, 2)))
        assert np.array_equal(x.grad, [[1.0, 0.0, 1.0, 0.0]])

    @staticmethod
    def test_maxpool_rejects_bad_kernel():
        with pytest.raises(ParameterError):
            maxpool1d([[1.0, 2.0]], 0)

    @staticmethod
    def test_matmul_value():
        out = matmul([[1.0, 2.0], [3.0, 4.0]], [[5.0], [6.0]])
        assert np.array_equal(out.value, [[17.0], [39.0]])

    @staticmethod
    def test_softmax_rows_value():
        out = softmax_rows([[1.0, 2.0, 3.0]])
        assert np.allclose(out.value, [[0.09003, 0.24473, 0.66524]], atol=1e-5)

    @staticmethod
    def test_softmax_rows_shift_invariant():
        x = np.array([[1.0, 2.0, 3.0], [-0.5, 0.0, 4.0]])
        assert np.allclose(softmax_rows(x + 1000.0).value, softmax_rows(x).value, rtol=0.0, atol=1e-9)

    @staticmethod
    def test_maxpool_matches_window_loop():
        rng = np.random.default_rng(7)
        for length in range(1, 65):
            x = rng.normal(size=(2, length))
            for kernel in range(1, length + 1):
                out = maxpool1d(x, kernel).value
                expected = [[max(row[i:i + kernel]) for i in range(0, length, kernel)] for row in x]
                assert np.array_equal(out, expected)

    @staticmethod
    def test_relu_idempotent():
        x = np.random.default_rng(3).normal(size=(4, 5))
        once = relu(x).value
        assert np.array_equal(relu(once).value, once)
        assert (once >= 0).all()

    @staticmethod
    def test_softmax_rows_is_stable():
        out = softmax_rows([[1000.0, 1000.0], [-1000.0, 0.0]])
        assert np.allclose(out.value.sum(axis=1), 1.0, rtol=0.0, atol=1e-9)
        assert np.allclose(out.value[0], [0.5, 0.5], rtol=0.0, atol=1e-9)

    @staticmethod
    def test_relu_subgradient_at_zero():
        x = Node([[0.0, 1.0, -1.0]])
        backward(sum_all(relu(x)))
        assert np.array_equal(x.grad, [[0.0, 1.0, 0.0]])

    @staticmethod
    def test_slice_cols_bounds():
        with pytest.raises(ShapeError):
            slice_cols(np.ones((1, 3)), 2, 4)

    @staticmethod
    def test_flatten_is_row_major():
        assert np.array_equal(flatten([[1.0, 2.0], [3.0, 4.0]]).value, [[1.0, 2.0, 3.0, 4.0]])

    @staticmethod
    def test_concat_cols_row_mismatch():
        with pytest.raises(ShapeError):
            concat_cols([np.ones((1, 2)), np.ones((2, 2))])

    @staticmethod
    def test_mse_value():
        assert mse([[1.0, 3.0]], [[0.0, 0.0]]).value[0, 0] == 5.0


class TestGradcheckHelpers(object):
    @staticmethod
    def test_numerical_gradient_of_quadratic():
        grad = numerical_gradient(lambda p: float(np.sum(p ** 2)), np.array([[1.0, -2.0]]))
        assert np.allclose(grad, [[2.0, -4.0]], atol=1e-6)

    @staticmethod
    def test_numerical_gradient_entries_subset():
        grad = numerical_gradient(lambda p: float(np.sum(p)), np.zeros((2, 2)), entries=[(0, 1)])
        assert np.allclose(grad, [[0.0, 1.0], [0.0, 0.0]])

    @staticmethod
    def test_numerical_gradient_leaves_input_untouched():
        value = np.array([[1.0, 2.0]])
        numerical_gradient(lambda p: float(np.sum(p)), value)
        assert np.array_equal(value, [[1.0, 2.0]])

    @staticmethod
    def test_relative_error_ignores_tiny_entries():
        assert relative_error([[1e-9, 1.0]], [[0.0, 1.0]]) == 0.0

    @staticmethod
    def test_relative_error_value():
        assert relative_error([[2.0]], [[1.0]]) == pytest.approx(0.5)
