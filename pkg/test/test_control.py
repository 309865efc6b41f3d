#
# This file is part of LiteQOC.
#
# Copyright (c) 2024-2026 LiteQOC Developers
# SPDX-License-Identifier: BSD-2-Clause

import unittest

import numpy as np

from liteqoc.common import *
from liteqoc.core.control import *


class TestControl(unittest.TestCase):
    def test_piecewise_constant(self):
        par = parametrize("piecewise_constant", 4, T=2.0)
        self.assertEqual(par.n_params, 4)
        eta = ControlSignal(par, [1.0, 2.0, 3.0, 4.0])
        np.testing.assert_allclose(eta([0.0, 0.6, 1.2, 1.9, 2.0]), [1.0, 2.0, 3.0, 4.0, 4.0])
        np.testing.assert_allclose(eta.step_values(2.0, 8), [1, 1, 2, 2, 3, 3, 4, 4])

    def test_truncated_fourier_real(self):
        par = parametrize("truncated_fourier", 3, T=2.0)
        self.assertEqual(par.n_params, 7)
        p   = np.random.default_rng(0).normal(size=7)
        t   = np.linspace(0, 2, 33)
        fs  = par.fourier_series(p)
        self.assertLess(np.max(np.abs(fs(t).imag)), 1e-12)
        np.testing.assert_allclose(par.sample(p, t), fs(t).real, atol=1e-12)
        with self.assertRaises(ValidationError):
            parametrize("piecewise_constant", 3).fourier_series(np.zeros(3))

    def test_project(self):
        bounds = (np.array([-1.0, 0.0]), np.array([1.0, 2.0]))
        x = project([3.0, -1.0], bounds)
        np.testing.assert_allclose(x, [1.0, 0.0])
        np.testing.assert_allclose(project(x, bounds), x)

    def test_initial(self):
        par = parametrize("piecewise_constant", 8, (-10.0, 10.0))
        np.testing.assert_allclose(par.initial(), 0.0)
        a, b = par.initial(3), par.initial(3)
        np.testing.assert_array_equal(a, b)
        self.assertTrue(np.all(np.abs(a) <= 1.0))
        self.assertFalse(np.allclose(a, par.initial(4)))
        shifted = parametrize("piecewise_constant", 2, (1.0, 3.0))
        np.testing.assert_allclose(shifted.initial(), 1.0)

    def test_blocks(self):
        par    = parametrize("piecewise_constant", 3, (-1.0, 1.0))
        blocks = ControlBlocks(par, 2)
        self.assertEqual(blocks.n_params, 6)
        np.testing.assert_array_equal(blocks.split(np.arange(6)), [[0, 1, 2], [3, 4, 5]])
        self.assertEqual(blocks.bounds[0].shape, (6,))

    def test_errors(self):
        with self.assertRaises(ValidationError):
            parametrize("spline", 3)
        with self.assertRaises(ValidationError):
            parametrize("piecewise_constant", 0)
        with self.assertRaises(ValidationError):
            parametrize("piecewise_constant", 2, (1.0, -1.0))
        with self.assertRaises(ValidationError):
            ControlSignal(parametrize("piecewise_constant", 2), [1.0])
