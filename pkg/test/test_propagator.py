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
from liteqoc.core.grid import *
from liteqoc.core.potentials import make_potential, PiecewiseCustom
from liteqoc.core.eigen import hamiltonian_matrix, eigenstates
from liteqoc.core.propagator import *

from test.model.analytic import free_gaussian, semidiscrete_evolve


def l2(grid, a, b):
    return np.sqrt(np.sum(grid.weights*np.abs(a - b)**2))


class TestStep(unittest.TestCase):
    def test_box_mode(self):
        grid = make_grid(0.0, np.pi, 201)
        pot  = PiecewiseCustom([0.0, np.pi], [0.0, 0.0])
        psi  = wavefunction_from(np.sin, grid).normalized()
        dt   = 0.01
        out  = cn_step(psi, pot, 0.0, dt)
        lam  = 4*np.sin(grid.dx/2)**2/grid.dx**2
        rot  = (1 - 0.5j*dt*lam)/(1 + 0.5j*dt*lam)
        self.assertLess(abs(norm(out) - 1), 1e-13)
        np.testing.assert_allclose(out.values, rot*psi.values, atol=1e-12)

    def test_errors(self):
        grid = make_grid(-5.0, 5.0, 101)
        pot  = make_potential("harmonic_driven", x_l=-5.0, x_r=5.0)
        psi  = gaussian_packet(grid, 0.0, 1.0)
        with self.assertRaises(ValidationError):
            cn_step(psi, pot, 0.0, 0.0)
        with self.assertRaises(ValidationError):
            cn_step(psi, pot, 0.0, 0.1, "periodic")
        with self.assertRaises(ValidationError):
            evolve(psi, pot, 0.0, 1.0, 0)
        with self.assertRaises(ValidationError):
            evolve(psi, pot, 0.0, 1.0, 10, "absorbing")


class TestEvolve(unittest.TestCase):
    def test_single_step(self):
        grid = make_grid(-5.0, 5.0, 101)
        pot  = make_potential("harmonic_driven", x_l=-5.0, x_r=5.0)
        psi  = gaussian_packet(grid, 1.0, 0.7, 1.0)
        traj = evolve(psi, pot, 0.3, 0.05, 1)
        ref  = cn_step(Wavefunction(traj.states[0], grid), pot, 0.3, 0.05)
        np.testing.assert_array_equal(traj.final.values, ref.values)

    def test_norm_conservation(self):
        grid = make_grid(-10.0, 10.0, 512)
        pot  = make_potential("harmonic_driven", x_l=-10.0, x_r=10.0)
        psi  = gaussian_packet(grid, 1.0, 1.0, 1.0)
        traj = evolve(psi, pot, np.sin, 5.0, 1000)
        n0   = np.sum(grid.weights*np.abs(traj.states[0])**2)
        drift = np.abs(np.sum(grid.weights*np.abs(traj.states)**2, axis=1) - n0)
        self.assertLess(np.max(drift), 1e-10)

    def test_time_reversal(self):
        grid = make_grid(-10.0, 10.0, 256)
        pot  = make_potential("harmonic_driven", x_l=-10.0, x_r=10.0)
        psi  = gaussian_packet(grid, 1.0, 1.0, 2.0)
        fwd  = evolve(psi, pot, 0.0, 1.0, 100).final
        back = evolve(Wavefunction(np.conj(fwd.values), grid), pot, 0.0, 1.0, 100).final
        start = psi.values.copy()
        start[[0, -1]] = 0
        np.testing.assert_allclose(np.conj(back.values), start, atol=1e-8)

    def test_eigenstate_preserved(self):
        grid   = make_grid(-10.0, 10.0, 256)
        pot    = make_potential("harmonic_driven", x_l=-10.0, x_r=10.0)
        ground = eigenstates(hamiltonian_matrix(pot, grid), 1).states[0]
        traj   = evolve(ground, pot, 0.0, 1.0, 200)
        self.assertGreater(fidelity(traj.final, ground), 1 - 1e-6)

    def test_periodic_eigenstate_preserved(self):
        pot    = make_potential("transmon", E_J=5.0, E_C=1.0, n_g=0.3)
        grid   = make_periodic_grid(128)
        ground = eigenstates(hamiltonian_matrix(pot, grid, "periodic"), 1).states[0]
        traj   = evolve(ground, pot, 0.0, 0.5, 50, "periodic")
        self.assertGreater(fidelity(traj.final, ground), 1 - 1e-8)

    def test_free_gaussian(self):
        grid = make_grid(-20.0, 20.0, 1024)
        pot  = PiecewiseCustom([-20.0, 20.0], [0.0, 0.0])
        psi  = gaussian_packet(grid, 0.0, 1.0)
        traj = evolve(psi, pot, 0.0, 1.0, 2000)
        self.assertLess(l2(grid, traj.final.values, free_gaussian(grid.nodes, 1.0)), 1e-3)

    def test_second_order_in_time(self):
        grid = make_grid(-15.0, 15.0, 301)
        pot  = PiecewiseCustom([-15.0, 15.0], [0.0, 0.0])
        psi  = gaussian_packet(grid, -3.0, 0.5, 3.0)
        H    = hamiltonian_matrix(pot, grid).toarray()
        ref  = np.zeros(grid.J, dtype=complex)
        ref[1:-1] = semidiscrete_evolve(H, psi.values[1:-1], 1.0)
        errors = [l2(grid, evolve(psi, pot, 0.0, 1.0, N).final.values, ref) for N in (200, 400, 800)]
        for coarse, fine in zip(errors, errors[1:]):
            self.assertGreater(coarse/fine, 3.4)
            self.assertLess(coarse/fine, 4.6)

    def test_tbc_needs_zero_offset_charge(self):
        pot  = make_potential("fluxonium", E_C=1.0, E_J=1.0, E_L=1.0, n_g=0.2)
        grid = make_grid(pot.x_l, pot.x_r, 101)
        psi  = gaussian_packet(grid, 0.0, 1.0)
        with self.assertRaises(ValidationError):
            evolve(psi, pot, 0.0, 1.0, 10, "tbc")


class TestTrajectory(unittest.TestCase):
    def test_snapshots_csv(self):
        grid = make_grid(-5.0, 5.0, 11)
        pot  = PiecewiseCustom([-5.0, 5.0], [0.0, 0.0])
        traj = evolve(gaussian_packet(grid, 0.0, 1.0), pot, 0.0, 1.0, 4)
        self.assertEqual(len(traj), 5)
        self.assertAlmostEqual(traj.dt, 0.25)
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, "snapshots.csv")
            traj.write_snapshots_csv(path, stride=2, config={"N": 4})
            with open(path) as f:
                self.assertTrue(f.readline().startswith("# liteqoc"))
                self.assertTrue(f.readline().startswith("# config"))
            data = read_csv(path)
            self.assertEqual(len(data), 3*grid.J)
            np.testing.assert_allclose(np.unique(data["t"]), [0.0, 0.5, 1.0])
            np.testing.assert_allclose(data["re"][-grid.J:], traj.final.values.real)
