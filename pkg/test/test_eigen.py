#
# This file is part of LiteQOC.
#
# Copyright (c) 2024-2026 LiteQOC Developers
# SPDX-License-Identifier: BSD-2-Clause

import unittest

import numpy as np

from liteqoc.common import *
from liteqoc.core.grid import make_grid, make_periodic_grid, gaussian_packet, norm
from liteqoc.core.potentials import make_potential, PiecewiseCustom
from liteqoc.core.eigen import *


def transmon_basis(ratio, J=512, n_g=0.0, k=3):
    pot  = make_potential("transmon", E_J=ratio, E_C=1.0, n_g=n_g)
    grid = make_periodic_grid(J)
    return pot, eigenstates(hamiltonian_matrix(pot, grid, "periodic"), k)


class TestEigen(unittest.TestCase):
    def test_box(self):
        grid  = make_grid(0.0, np.pi, 401)
        basis = eigenstates(hamiltonian_matrix(PiecewiseCustom([0.0, np.pi], [0.0, 0.0]), grid), 3)
        np.testing.assert_allclose(basis.energies, [1.0, 4.0, 9.0], rtol=1e-3)

    def test_oscillator(self):
        grid  = make_grid(-10.0, 10.0, 401)
        pot   = make_potential("harmonic_driven", x_l=-10.0, x_r=10.0)
        basis = eigenstates(hamiltonian_matrix(pot, grid), 6)
        np.testing.assert_allclose(np.diff(basis.energies), 2.0, rtol=1e-2)
        ground = basis.states[0].values
        self.assertLess(np.max(np.abs(ground.imag)), 1e-12)
        self.assertTrue(np.all(ground.real[1:-1] > -1e-10*np.max(ground.real)))
        c = expand_in_eigenbasis(basis.states[2], basis)
        np.testing.assert_allclose(np.abs(c), [0, 0, 1, 0, 0, 0], atol=1e-10)

    def test_refinement(self):
        pot = make_potential("harmonic_driven", x_l=-10.0, x_r=10.0)
        E   = [eigenstates(hamiltonian_matrix(pot, make_grid(-10.0, 10.0, J)), 5).energies for J in (401, 801)]
        self.assertLess(np.max(np.abs(E[1] - E[0])/E[1]), 5e-3)

    def test_residual(self):
        grid  = make_grid(-10.0, 10.0, 401)
        pot   = make_potential("harmonic_driven", x_l=-10.0, x_r=10.0)
        H     = hamiltonian_matrix(pot, grid)
        basis = eigenstates(H, 5)
        for E, phi in zip(basis.energies, basis.states):
            v = phi.values[1:-1]
            self.assertLess(np.linalg.norm(H.matrix @ v - E*v)/np.linalg.norm(v), 1e-7)

    def test_parseval(self):
        grid  = make_grid(-10.0, 10.0, 401)
        pot   = make_potential("harmonic_driven", x_l=-10.0, x_r=10.0)
        basis = eigenstates(hamiltonian_matrix(pot, grid), 6)
        rng   = np.random.default_rng(1)
        c     = rng.normal(size=6) + 1j*rng.normal(size=6)
        c    /= np.linalg.norm(c)
        psi   = sum((phi*ck for ck, phi in zip(c[1:], basis.states[1:])), basis.states[0]*c[0])
        np.testing.assert_allclose(expand_in_eigenbasis(psi, basis), c, atol=1e-10)
        self.assertAlmostEqual(np.sum(np.abs(expand_in_eigenbasis(psi, basis))**2), norm(psi)**2, places=10)
        # Bessel: a packet outside the span keeps only part of its norm.
        packet = gaussian_packet(grid, 2.0, 0.7, 1.0)
        self.assertLessEqual(np.sum(np.abs(expand_in_eigenbasis(packet, basis))**2), 1 + 1e-12)

    def test_offset_charge_periodicity(self):
        _, a = transmon_basis(5.0, J=256, n_g=0.3)
        _, b = transmon_basis(5.0, J=256, n_g=1.3)
        np.testing.assert_allclose(a.energies, b.energies, atol=1e-8)
        _, c = transmon_basis(5.0, J=256, n_g=0.0)
        _, d = transmon_basis(5.0, J=256, n_g=0.5)
        self.assertGreater(abs(c.energies[0] - d.energies[0]), 1e-6)

    def test_transmon_asymptotics(self):
        errors = []
        for ratio in [10.0, 30.0, 50.0, 100.0]:
            # n_g = 1/4: charge dispersion drops out of the 0-1 transition.
            pot, basis  = transmon_basis(ratio, n_g=0.25)
            names, rows = level_table(basis, pot)
            self.assertEqual(names, ["n", "E_numeric", "E_formula", "rel_error"])
            errors.append(rows[1, 3])
        self.assertLess(errors[2], 0.03)
        self.assertTrue(all(a > b for a, b in zip(errors, errors[1:])))

    def test_asymptotic_levels(self):
        p = make_potential("transmon", E_J=50.0, E_C=1.0).params
        self.assertAlmostEqual(transmon_asymptotic_levels(p, 0), 10.0 - 0.25)
        self.assertAlmostEqual(transmon_asymptotic_levels(p, 1) - transmon_asymptotic_levels(p, 0), 19.0)

    def test_level_table_generic(self):
        grid  = make_grid(0.0, np.pi, 101)
        pot   = PiecewiseCustom([0.0, np.pi], [0.0, 0.0])
        names, rows = level_table(eigenstates(hamiltonian_matrix(pot, grid), 4), pot, 2)
        self.assertEqual(names, ["n", "E_numeric"])
        self.assertEqual(rows.shape, (2, 2))

    def test_errors(self):
        pot = make_potential("transmon", E_J=5.0, E_C=1.0)
        with self.assertRaises(ValidationError):
            hamiltonian_matrix(pot, make_grid(-np.pi, np.pi, 64))
        box = PiecewiseCustom([0.0, 1.0], [0.0, 0.0])
        with self.assertRaises(ValidationError):
            hamiltonian_matrix(box, make_grid(0.0, 1.0, 64), "periodic")
        H = hamiltonian_matrix(box, make_grid(0.0, 1.0, 10))
        self.assertEqual(H.dim, 8)
        with self.assertRaises(ValidationError):
            eigenstates(H, 9)
