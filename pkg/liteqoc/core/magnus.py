#
# This file is part of LiteQOC.
#
# Copyright (c) 2024-2026 LiteQOC Developers
# SPDX-License-Identifier: BSD-2-Clause

"""
Magnus propagation of finite-level systems H(t) = H₀ + Σ_j h_j(t)·H_j.

Per step of length δ the exponent is truncated after the first commutator term and evaluated
with two-point Gauss quadrature (order 2), or with the midpoint rule (order 1).
"""

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from liteqoc.common import *

logger = logging.getLogger(__name__)

sigma_x = np.array([[0, 1], [1, 0]], dtype=complex)
sigma_y = np.array([[0, -1j], [1j, 0]], dtype=complex)
sigma_z = np.array([[1, 0], [0, -1]], dtype=complex)

_gauss = np.sqrt(3)/6

# Helpers ------------------------------------------------------------------------------------------

def check_hermitian(name, H, tol=None):
    H   = np.asarray(H, dtype=complex)
    tol = tolerances["hermitian"] if tol is None else tol
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise ValidationError("{} must be square, got {}".format(name, H.shape))
    if np.max(np.abs(H - H.conj().T)) > tol*max(1.0, np.max(np.abs(H))):
        raise ValidationError("{} is not Hermitian".format(name))
    return H


def commutator(a, b):
    return a @ b - b @ a

# Finite-Level System ------------------------------------------------------------------------------

class FiniteLevelSystem:
    def __init__(self, H0, controls):
        H0 = check_hermitian("Drift Hamiltonian", H0)
        if H0.shape[0] < 2:
            raise ValidationError("FiniteLevelSystem needs d >= 2, got {}".format(H0.shape[0]))
        controls = [check_hermitian("Control Hamiltonian {}".format(j), Hj) for j, Hj in enumerate(controls)]
        for j, Hj in enumerate(controls):
            if Hj.shape != H0.shape:
                raise ValidationError("Control Hamiltonian {} has shape {}, drift has {}".format(
                    j, Hj.shape, H0.shape))
        self.H0       = H0
        self.controls = controls

    def __repr__(self):
        return "FiniteLevelSystem(d={}, controls={})".format(self.d, len(self.controls))

    @property
    def d(self):
        return self.H0.shape[0]

    @property
    def n_controls(self):
        return len(self.controls)

    def hamiltonian(self, h):
        h = np.atleast_1d(np.asarray(h, dtype=float))
        if h.size != self.n_controls:
            raise ValidationError("Need {} control values, got {}".format(self.n_controls, h.size))
        H = self.H0.copy()
        for hj, Hj in zip(h, self.controls):
            H += hj*Hj
        return H


def two_level(omega_q=0.0, controls=("x",)):
    """-(ω_q/2)·σ_z drift (|0⟩ lowest), σ_x/2 and/or σ_y/2 controls (rotating frame for ω_q = 0)."""
    ops = {"x": sigma_x/2, "y": sigma_y/2}
    for c in controls:
        check_choice("two-level control", c, list(ops))
    return FiniteLevelSystem(-omega_q/2*sigma_z, [ops[c] for c in controls])


def control_function(eta, n_controls=1):
    """Normalize control input to t -> array of n_controls values."""
    if isinstance(eta, (list, tuple)):
        if len(eta) != n_controls:
            raise ValidationError("Need {} control signals, got {}".format(n_controls, len(eta)))
        return lambda t: np.array([float(e(t)) for e in eta])
    if callable(eta):
        return lambda t: np.atleast_1d(np.asarray(eta(t), dtype=float))
    value = np.atleast_1d(np.asarray(eta, dtype=float))
    return lambda t: value

# Magnus Exponent ----------------------------------------------------------------------------------

def magnus_terms(sys, h, t, delta):
    """(Ω₁, Ω₂) on [t, t+δ] from the two Gauss points t₁,₂ = t + (½ ∓ √3/6)·δ."""
    A1 = -1j*sys.hamiltonian(h(t + (0.5 - _gauss)*delta))
    A2 = -1j*sys.hamiltonian(h(t + (0.5 + _gauss)*delta))
    return delta/2*(A1 + A2), np.sqrt(3)*delta**2/12*commutator(A2, A1)


def magnus_omega(sys, h, t, delta, order=2):
    if delta <= 0:
        raise ValidationError("Magnus step must be > 0, got {}".format(delta))
    check_choice("Magnus order", order, [1, 2])
    h = control_function(h, sys.n_controls)
    if order == 1:
        return -1j*delta*sys.hamiltonian(h(t + delta/2))
    omega1, omega2 = magnus_terms(sys, h, t, delta)
    return omega1 + omega2

# Propagation --------------------------------------------------------------------------------------

@dataclass(frozen=True)
class MagnusResult:
    omega : np.ndarray
    order : int
    U     : np.ndarray
    steps : int = 1

    def unitarity_error(self):
        return float(np.linalg.norm(self.U.conj().T @ self.U - np.eye(self.U.shape[0])))


def magnus_propagate(sys, eta, T, steps, order=2, t0=0.0):
    if steps < 1:
        raise ValidationError("magnus_propagate needs steps >= 1, got {}".format(steps))
    if T <= 0:
        raise ValidationError("magnus_propagate needs T > 0, got {}".format(T))
    h     = control_function(eta, sys.n_controls)
    delta = T/steps
    U     = np.eye(sys.d, dtype=complex)
    for n in range(steps):
        U = scipy.linalg.expm(magnus_omega(sys, h, t0 + n*delta, delta, order)) @ U
    omega = scipy.linalg.logm(U)
    omega = (omega - omega.conj().T)/2
    result = MagnusResult(omega, order, U, steps)
    err = result.unitarity_error()
    if err > 1e-10:
        raise NumericalError("Magnus propagator lost unitarity: {:.3g}".format(err))
    logger.debug("Magnus order {}: {} steps, unitarity error {:.3g}".format(order, steps, err))
    return result

# Exact Exponential / Objectives -------------------------------------------------------------------

def exact_expm(H, t):
    """exp(-iHt) through the eigendecomposition of H."""
    H = check_hermitian("H", H)
    if H.shape[0] > 64:
        raise ValidationError("exact_expm limited to d <= 64, got {}".format(H.shape[0]))
    E, V = scipy.linalg.eigh(H)
    return (V*np.exp(-1j*E*t)) @ V.conj().T


def unitary_objective(U, U_target):
    """Frobenius distance ‖U − Ū‖_F."""
    U, U_target = np.asarray(U), np.asarray(U_target)
    if U.shape != U_target.shape:
        raise ValidationError("Unitary shape mismatch: {} vs {}".format(U.shape, U_target.shape))
    return float(np.linalg.norm(U - U_target))


def state_fidelity(U, psi0, target):
    psi0, target = np.asarray(psi0, dtype=complex), np.asarray(target, dtype=complex)
    for name, v in (("psi0", psi0), ("target", target)):
        if abs(np.linalg.norm(v) - 1) > tolerances["normalized"]:
            raise ValidationError("{} not normalized: norm={}".format(name, np.linalg.norm(v)))
    return float(abs(np.vdot(target, U @ psi0))**2)
