#
# This file is part of LiteQOC.
#
# Copyright (c) 2024-2026 LiteQOC Developers
# SPDX-License-Identifier: BSD-2-Clause

from dataclasses import dataclass

import numpy as np

from liteqoc.common import *
from liteqoc.core.grid import Wavefunction

# Qubit State --------------------------------------------------------------------------------------

class QubitState:
    """2^n amplitudes, basis index with qubit 0 most significant."""
    def __init__(self, n_qubits, amplitudes):
        amplitudes = np.array(amplitudes, dtype=complex)
        if n_qubits < 1:
            raise ValidationError("QubitState needs n_qubits >= 1, got {}".format(n_qubits))
        if amplitudes.shape != (2**n_qubits,):
            raise ValidationError("QubitState needs {} amplitudes, got {}".format(2**n_qubits, amplitudes.shape))
        n = np.linalg.norm(amplitudes)
        if abs(n - 1) > tolerances["qubit_norm"]:
            raise ValidationError("QubitState not normalized: norm={}".format(n))
        amplitudes.setflags(write=False)
        self.n_qubits   = int(n_qubits)
        self.amplitudes = amplitudes

    def __repr__(self):
        return "QubitState(n_qubits={})".format(self.n_qubits)

    def __len__(self):
        return len(self.amplitudes)


def even_superposition(n_qubits):
    if n_qubits < 1:
        raise ValidationError("even_superposition needs n >= 1, got {}".format(n_qubits))
    return QubitState(n_qubits, np.full(2**n_qubits, 2**(-n_qubits/2)))


def tensor_product_state(pairs):
    """|q_0⟩⊗|q_1⟩⊗... from per-qubit (α, β) pairs."""
    if len(pairs) < 1:
        raise ValidationError("tensor_product_state needs at least one qubit")
    amps = np.ones(1, dtype=complex)
    for a, b in pairs:
        amps = np.kron(amps, np.array([a, b], dtype=complex))
    return QubitState(len(pairs), amps)

# Quantum Fourier Transform ------------------------------------------------------------------------

def qft_matrix(n_qubits):
    if not 1 <= n_qubits <= 10:
        raise ValidationError("qft_matrix needs 1 <= n <= 10, got {}".format(n_qubits))
    N = 2**n_qubits
    k = np.arange(N)
    return np.exp(2j*np.pi*np.outer(k, k)/N)/np.sqrt(N)


def apply_qft(state):
    return QubitState(state.n_qubits, qft_matrix(state.n_qubits) @ state.amplitudes)

# FRQI ---------------------------------------------------------------------------------------------

@dataclass(frozen=True)
class FRQIImage:
    """2^n x 2^n image of color angles θ_i (radians), row-major."""
    n     : int
    theta : np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("FRQIImage needs n >= 1, got {}".format(self.n))
        theta = np.asarray(self.theta, dtype=float).ravel()
        if theta.size != 4**self.n:
            raise ValidationError("FRQIImage with n={} needs {} angles, got {}".format(self.n, 4**self.n, theta.size))
        object.__setattr__(self, "theta", theta)


def frqi_encode(img):
    """(1/2^n)·Σ_i (cos θ_i|0⟩ + sin θ_i|1⟩)|i⟩; color qubit most significant."""
    theta = np.asarray(img.theta, dtype=float)
    if theta.size != 4**img.n:
        raise ValidationError("FRQI needs {} angles, got {}".format(4**img.n, theta.size))
    amps = np.concatenate([np.cos(theta), np.sin(theta)])/2**img.n
    return QubitState(2*img.n + 1, amps)


def frqi_decode(state, n):
    if state.n_qubits != 2*n + 1:
        raise ValidationError("FRQI state for n={} needs {} qubits, got {}".format(n, 2*n + 1, state.n_qubits))
    c0, c1 = state.amplitudes.reshape(2, 4**n)
    block  = np.sqrt(np.abs(c0)**2 + np.abs(c1)**2)
    dev    = np.max(np.abs(block - 1/2**n))
    if dev > tolerances["frqi_block"]:
        raise ValidationError("Not an FRQI state: pixel block norm deviates by {:.3g}".format(dev))
    return np.arctan2(np.abs(c1), np.abs(c0))


def frqi_from_grayscale(matrix):
    """Pixel values in [0, 1] -> θ = (π/2)·value."""
    matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
    side   = matrix.shape[0]
    n      = int(round(np.log2(side))) if side > 0 else 0
    if matrix.shape != (side, side) or side < 2 or 2**n != side:
        raise ValidationError("Grayscale image must be 2^n x 2^n, got {}".format(matrix.shape))
    if np.any(matrix < 0) or np.any(matrix > 1):
        raise ValidationError("Grayscale values must lie in [0, 1]")
    return FRQIImage(n, np.pi/2*matrix.ravel())


def load_grayscale(path):
    """Raw text matrix, comma or whitespace separated."""
    with open(path) as f:
        first = next((line for line in f if line.strip() and not line.startswith("#")), "")
    return frqi_from_grayscale(np.loadtxt(path, delimiter="," if "," in first else None, ndmin=2))

# Eigenbasis Targets -------------------------------------------------------------------------------

def superposition_target(coeffs, basis):
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.size > len(basis):
        raise ValidationError("{} coefficients for a basis of {} states".format(coeffs.size, len(basis)))
    n = np.linalg.norm(coeffs)
    if abs(n - 1) > tolerances["coeffs_norm"]:
        raise ValidationError("Superposition coefficients not normalized: norm={}".format(n))
    values = coeffs @ basis.matrix[:coeffs.size]
    return Wavefunction(values, basis.grid).normalized()


def qubit_to_wavefunction(state, basis):
    """2^n amplitudes onto the first 2^n eigenstates."""
    return superposition_target(state.amplitudes, basis)
