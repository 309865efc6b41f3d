#
# This file is part of LiteQOC.
#
# Copyright (c) 2024-2026 LiteQOC Developers
# SPDX-License-Identifier: BSD-2-Clause

import os
import tempfile
import unittest

import numpy as np

from liteqoc.common import *
from liteqoc.core.control import parametrize
from liteqoc.core.magnus import two_level
from liteqoc.frontend.problem import CostSpec, MagnusProblem
from liteqoc.frontend.optimizer import *

from test.test_problem import oscillator_problem


def pi_pulse_problem(cost=None, bounds=(-10.0, 10.0)):
    par = parametrize("piecewise_constant", 8, bounds, T=np.pi/2)
    return MagnusProblem(two_level(0.0), par, [1, 0], [0, 1], np.pi/2, 16, cost)


class NaNProblem:
    par = parametrize("piecewise_constant", 2)

    def cost(self, params):
        return np.nan

    def evaluate(self, params):
        return np.nan, np.zeros(2)

    def fidelity(self, params):
        return 0.0


class TestOptimizer(unittest.TestCase):
    def test_pure_regularization_goes_to_zero(self):
        problem = pi_pulse_problem(CostSpec(alpha=0.0, beta=1.0), bounds=(-1.0, 1.0))
        result  = optimize(problem, opts=OptOptions(max_iter=50, tol=1e-8, seed=0))
        self.assertLess(np.linalg.norm(result.params), 1e-6)
        self.assertEqual(result.termination, "gradient_tolerance")

    def test_pi_pulse(self):
        for method in opt_methods:
            result = optimize(pi_pulse_problem(), opts=OptOptions(max_iter=200, method=method, seed=1))
            self.assertGreater(result.fidelity, 0.999, method)
            self.assertAlmostEqual(result.cost, 1 - result.fidelity, places=12)

    def test_history(self):
        result = optimize(pi_pulse_problem(bounds=(-1.5, 1.5)), opts=OptOptions(max_iter=30, seed=2))
        costs  = result.cost_history
        self.assertEqual(len(costs), result.iterations + 1)
        self.assertTrue(all(b <= a for a, b in zip(costs, costs[1:])))
        self.assertTrue(np.all(np.abs(result.params) <= 1.5))
        # |θ| <= 1.5·π/2 < π: the bound is active at the optimum.
        np.testing.assert_allclose(np.abs(result.params), 1.5)

    def test_schrodinger_history(self):
        result = optimize(oscillator_problem(n_params=4, J=64, N=50), opts=OptOptions(max_iter=5, seed=0))
        costs  = result.cost_history
        self.assertTrue(all(b <= a for a, b in zip(costs, costs[1:])))
        self.assertLess(costs[-1], costs[0])

    def test_seed_determinism(self):
        opts = OptOptions(max_iter=20, seed=3)
        a = optimize(pi_pulse_problem(), opts=opts)
        b = optimize(pi_pulse_problem(), opts=opts)
        np.testing.assert_array_equal(a.params, b.params)
        self.assertEqual(a.cost_history, b.cost_history)

    def test_multistart(self):
        opts   = OptOptions(max_iter=3)
        best   = multistart(pi_pulse_problem(), opts=opts, seeds=(0, 1, 2))
        single = [optimize(pi_pulse_problem(), opts=OptOptions(max_iter=3, seed=s)).cost for s in (0, 1, 2)]
        self.assertAlmostEqual(best.cost, min(single))
        with self.assertRaises(ValidationError):
            multistart(pi_pulse_problem(), opts=opts, seeds=())

    def test_continuation(self):
        opts   = OptOptions(max_iter=50, seed=1, continuation=(0.1, 1.0))
        result = optimize(pi_pulse_problem(), opts=opts)
        self.assertGreater(result.fidelity, 0.999)

    def test_continuation_reports_unscaled_cost(self):
        problem = pi_pulse_problem()
        result  = optimize(problem, opts=OptOptions(max_iter=5, seed=1, continuation=(1.0, 100.0)))
        self.assertAlmostEqual(result.cost, problem.cost(result.params), places=12)
        self.assertAlmostEqual(result.cost, 1 - result.fidelity, places=12)

    def test_nan_aborts(self):
        with self.assertRaises(NumericalError):
            optimize(NaNProblem())

    def test_projected_gradient(self):
        bounds = (np.array([-1.0, -1.0]), np.array([1.0, 1.0]))
        self.assertEqual(projected_gradient_norm(np.array([1.0, 0.0]), np.array([-2.0, 0.0]), bounds), 0)
        self.assertAlmostEqual(projected_gradient_norm(np.array([1.0, 0.0]), np.array([0.5, 0.0]), bounds), 0.5)

    def test_options(self):
        with self.assertRaises(ValidationError):
            OptOptions(method="newton")
        with self.assertRaises(ValidationError):
            OptOptions(tol=0.0)
        with self.assertRaises(ValidationError):
            OptOptions(continuation=(0.0,))

    def test_iterations_csv(self):
        result = optimize(pi_pulse_problem(), opts=OptOptions(max_iter=5, seed=1))
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, "iterations.csv")
            result.write_iterations_csv(path)
            data = read_csv(path)
            self.assertEqual(list(data.dtype.names), iteration_columns)
            self.assertEqual(len(data), result.iterations + 1)
