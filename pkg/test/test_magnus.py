#
# This file is part of LiteQOC.
#
# Copyright (c) 2024-2026 LiteQOC Developers
# SPDX-License-Identifier: BSD-2-Clause

import unittest

import numpy as np
import scipy.linalg

from liteqoc.common import *
from liteqoc.core.magnus import *

from test.model.analytic import rabi_population


def drive(t):
    return 2*np.sin(np.pi*t)


class TestMagnusExponent(unittest.TestCase):
    def test_constant_hamiltonian(self):
        sys   = two_level(1.3)
        omega = magnus_omega(sys, 0.7, 0.0, 0.1)
        np.testing.assert_allclose(omega, -1j*0.1*sys.hamiltonian(0.7), atol=1e-15)

    def test_commuting_family(self):
        sys = FiniteLevelSystem(np.zeros((2, 2)), [sigma_z])
        omega1, omega2 = magnus_terms(sys, control_function(np.sin), 0.2, 0.1)
        np.testing.assert_allclose(omega2, 0, atol=1e-15)
        integral = np.cos(0.2) - np.cos(0.3)
        np.testing.assert_allclose(omega1, -1j*integral*sigma_z, atol=1e-6)

    def test_reversal_flips_commutator(self):
        sys = two_level(1.0)
        t, delta = 0.3, 0.2
        fwd = magnus_terms(sys, control_function(drive), t, delta)[1]
        rev = magnus_terms(sys, control_function(lambda s: drive(2*t + delta - s)), t, delta)[1]
        self.assertGreater(np.linalg.norm(fwd), 0)
        np.testing.assert_allclose(rev, -fwd, atol=1e-14)

    def test_errors(self):
        with self.assertRaises(ValidationError):
            FiniteLevelSystem(np.array([[0, 1], [0, 0]]), [])
        with self.assertRaises(ValidationError):
            FiniteLevelSystem(np.zeros((2, 2)), [np.eye(3)])
        with self.assertRaisesRegex(ValidationError, "registered: 1, 2"):
            magnus_omega(two_level(), 0.0, 0.0, 0.1, order=3)
        with self.assertRaises(ValidationError):
            two_level(controls=("z",))


class TestMagnusPropagate(unittest.TestCase):
    def test_constant_exact(self):
        sys = two_level(1.0, ("x", "y"))
        h   = np.array([0.4, -0.9])
        res = magnus_propagate(sys, h, 2.0, 20)
        np.testing.assert_allclose(res.U, exact_expm(sys.hamiltonian(h), 2.0), atol=1e-12)
        self.assertLess(res.unitarity_error(), 1e-12)
        np.testing.assert_allclose(scipy.linalg.expm(res.omega), res.U, atol=1e-10)

    def test_rabi(self):
        sys = two_level(0.0)
        for T in [0.3, 0.9, np.pi/2, 2.5]:
            U = magnus_propagate(sys, 2.0, T, 50).U
            self.assertAlmostEqual(abs(U[1, 0])**2, rabi_population(2.0, T), places=12)

    def test_order(self):
        sys = two_level(1.0)
        ref = magnus_propagate(sys, drive, 1.0, 10000).U
        for order, slope in [(1, 2), (2, 4)]:
            steps  = np.array([10, 20, 40])
            errors = [np.linalg.norm(magnus_propagate(sys, drive, 1.0, s, order).U - ref) for s in steps]
            fit    = -np.polyfit(np.log(steps), np.log(errors), 1)[0]
            self.assertGreater(fit, slope - 0.3)
            self.assertLess(fit, slope + 0.3)


class TestObjectives(unittest.TestCase):
    def test_exact_expm(self):
        np.testing.assert_allclose(exact_expm(sigma_x/2, np.pi), -1j*sigma_x, atol=1e-14)
        with self.assertRaises(ValidationError):
            exact_expm(np.eye(65), 1.0)

    def test_unitary_objective(self):
        U = exact_expm(sigma_y, 0.4)
        self.assertEqual(unitary_objective(U, U), 0)
        self.assertGreater(unitary_objective(U, np.eye(2)), 0)
        self.assertGreater(unitary_objective(U, exact_expm(sigma_y, 0.4 + 1e-6)), 0)
        self.assertGreater(unitary_objective(U, -U), 0)
        with self.assertRaises(ValidationError):
            unitary_objective(U, np.eye(3))

    def test_state_fidelity(self):
        U = exact_expm(sigma_x/2, np.pi)
        self.assertAlmostEqual(state_fidelity(U, [1, 0], [0, 1]), 1.0)
        with self.assertRaises(ValidationError):
            state_fidelity(U, [1, 1], [0, 1])
