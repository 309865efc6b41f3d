#
# This file is part of LiteQOC.
#
# Copyright (c) 2024-2026 LiteQOC Developers
# SPDX-License-Identifier: BSD-2-Clause

import unittest

import numpy as np

from liteqoc.common import *
from liteqoc.core.grid import *


class TestGrid(unittest.TestCase):
    def test_grid_spacing(self):
        grid = make_grid(-1.0, 1.0, 5)
        self.assertAlmostEqual(grid.dx, 0.5)
        np.testing.assert_allclose(grid.nodes, [-1.0, -0.5, 0.0, 0.5, 1.0])
        self.assertAlmostEqual(np.sum(grid.weights), grid.length)
        self.assertAlmostEqual(grid.weights[0], 0.25)

    def test_periodic_grid_excludes_right_end(self):
        grid = make_periodic_grid(8)
        self.assertTrue(grid.periodic)
        self.assertAlmostEqual(grid.dx, 2*np.pi/8)
        self.assertAlmostEqual(grid.nodes[-1], np.pi - 2*np.pi/8)
        self.assertAlmostEqual(np.sum(grid.weights), 2*np.pi)

    def test_grid_errors(self):
        with self.assertRaises(ValidationError):
            make_grid(0.0, 1.0, 2)
        with self.assertRaises(ValidationError):
            make_grid(1.0, 0.0, 10)
        with self.assertRaises(ValidationError):
            make_periodic_grid(2)


class TestWavefunction(unittest.TestCase):
    def test_gaussian_normalized(self):
        grid = make_grid(-10.0, 10.0, 401)
        psi  = gaussian_packet(grid, 0.0, 1.0, 2.0)
        self.assertAlmostEqual(norm(psi), 1.0, places=12)

    def test_immutable(self):
        grid = make_grid(0.0, 1.0, 11)
        psi  = wavefunction_from(np.sin, grid)
        with self.assertRaises(ValueError):
            psi.values[3] = 0

    def test_inner_product_conjugate_linear(self):
        grid = make_grid(-5.0, 5.0, 201)
        a = gaussian_packet(grid, -1.0, 1.0, 1.0)
        b = gaussian_packet(grid, 0.5, 1.0, -2.0)
        self.assertAlmostEqual(inner_product(1j*a, b), -1j*inner_product(a, b))
        self.assertAlmostEqual(inner_product(a, 1j*b), 1j*inner_product(a, b))
        self.assertAlmostEqual(inner_product(a, b), np.conj(inner_product(b, a)))

    def test_cauchy_schwarz(self):
        grid = make_grid(-5.0, 5.0, 101)
        rng  = np.random.default_rng(0)
        for _ in range(50):
            a = Wavefunction(rng.normal(size=101) + 1j*rng.normal(size=101), grid)
            b = Wavefunction(rng.normal(size=101) + 1j*rng.normal(size=101), grid)
            self.assertLessEqual(abs(inner_product(a, b)), norm(a)*norm(b)*(1 + 1e-12))
        self.assertAlmostEqual(abs(inner_product(a, 2j*a)), norm(a)*norm(2j*a))

    def test_norm_converges(self):
        exact  = np.sqrt(0.5 + np.sin(2.0)/4)
        errors = [abs(norm(wavefunction_from(np.cos, make_grid(0.0, 1.0, J))) - exact) for J in (101, 201, 401)]
        self.assertGreater(errors[0]/errors[1], 3.5)
        self.assertGreater(errors[1]/errors[2], 3.5)

    def test_fidelity(self):
        grid = make_grid(-10.0, 10.0, 401)
        a = gaussian_packet(grid, 0.0, 1.0)
        self.assertAlmostEqual(fidelity(a, a.phase(0.7)), 1.0, places=12)
        with self.assertRaises(ValidationError):
            fidelity(a, 2*a)

    def test_grid_mismatch(self):
        a = gaussian_packet(make_grid(-10.0, 10.0, 401), 0.0, 1.0)
        b = gaussian_packet(make_grid(-10.0, 10.0, 201), 0.0, 1.0)
        with self.assertRaises(ValidationError):
            inner_product(a, b)
        with self.assertRaises(ValidationError):
            Wavefunction(np.zeros(3), a.grid)
