#
# This file is part of LiteQOC.
#
# Copyright (c) 2024-2026 LiteQOC Developers
# SPDX-License-Identifier: BSD-2-Clause

"""
Transparent boundary conditions.

Exterior (x >= x_r, constant V_c, zero initial data) Crank-Nicolson recursion, Z-transformed in
time:  ŵ_{j+1} - (2 + κ(z))·ŵ_j + ŵ_{j-1} = 0,  κ(z) = dx²·(V_c - (2i/dt)·(z-1)/(z+1))/c.
The decaying root ν(z) (|ν| < 1 for |z| > 1) gives ŵ_{J-1}(z) = ν(z)·ŵ_{J-2}(z); its Laurent
coefficients ν(z) = Σ ℓ_k z^{-k} are the boundary convolution weights:

    ψ^n_{J-1} = Σ_{k=0}^{n} ℓ_k·ψ^{n-k}_{J-2}.

The left boundary is the mirror image (ψ_0 against ψ_1) with V_l; the decay requirement fixes the
sign on each side.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from liteqoc.common import *
from liteqoc.core.spectral import TimeSignal, LaplaceSample, laplace_transform

logger = logging.getLogger(__name__)

# Symbol -------------------------------------------------------------------------------------------

def tbc_symbol(s, V_c):
    """-√(-is + V_c) on the branch Re(√·) > 0."""
    radicand = -1j*complex(s) + V_c
    if radicand.imag == 0 and radicand.real < 0:
        raise ValidationError("s={} lies on the branch cut of the boundary symbol".format(s))
    root = np.sqrt(radicand)
    if root.real < 0:
        root = -root
    return -root


def _decaying_root(kappa):
    """Root of ν² - (2+κ)ν + 1 = 0 with |ν| <= 1."""
    b     = 1 + kappa/2
    root  = np.sqrt(kappa*(1 + kappa/4))
    nu_p  = b + root
    nu_m  = b - root
    return np.where(np.abs(nu_p) < np.abs(nu_m), nu_p, nu_m)


def semidiscrete_tbc_symbol(s, dx, V_c, kinetic=1.0):
    """Node ratio ŵ_{j+1}/ŵ_j of the decaying exterior solution of the space-discrete,
    time-continuous equation (Laplace variable s)."""
    kappa = dx**2*(V_c - 1j*np.asarray(s, dtype=complex))/kinetic
    return _decaying_root(kappa)

# Discrete Kernel ----------------------------------------------------------------------------------

@dataclass(frozen=True)
class TbcKernel:
    V_c          : float
    dt           : float
    dx           : float
    coefficients : np.ndarray
    side         : str   = "right"
    kinetic      : float = 1.0

    def __len__(self):
        return len(self.coefficients)

    @property
    def l0(self):
        return self.coefficients[0]

    def history_sum(self, trace, n):
        """Σ_{k=1}^{n+1} ℓ_k·trace[n+1-k] for the closure row of step n -> n+1."""
        if n + 1 >= len(self.coefficients):
            raise ValidationError("TBC kernel of length {} too short for step {}".format(len(self), n + 1))
        return np.dot(self.coefficients[n + 1:0:-1], trace[:n + 1])

    def write_csv(self, path, config=None):
        c = self.coefficients
        write_csv(path, ["lag", "re", "im"], np.column_stack([np.arange(len(c)), c.real, c.imag]), config)


@lru_cache(maxsize=64)
def _kernel_coefficients(dt, dx, V_c, N, kinetic):
    M = 1 << max(10, int(np.ceil(np.log2(16*N))))
    # |z| = r > 1 keeps the aliased tail below 1e-12 while r^N stays O(10).
    r     = 10**(12/M)
    z     = r*np.exp(2j*np.pi*np.arange(M)/M)
    kappa = dx**2*(V_c - 2j/dt*(z - 1)/(z + 1))/kinetic
    nu    = _decaying_root(kappa)
    c     = np.fft.ifft(nu)[:N]*r**np.arange(N)
    c.setflags(write=False)
    return c


def discrete_tbc_kernel(dt, dx, V_c, N, kinetic=1.0, side="right"):
    if N < 2:
        raise ValidationError("TBC kernel needs N >= 2, got {}".format(N))
    if dt <= 0 or dx <= 0:
        raise ValidationError("TBC kernel needs dt, dx > 0, got {}, {}".format(dt, dx))
    check_choice("side", side, ["left", "right"])
    c = _kernel_coefficients(float(dt), float(dx), float(V_c), int(N), float(kinetic))
    if c[0] == 0:
        raise NumericalError("Singular TBC closure: l_0 = 0")
    logger.debug("{} kernel: V_c={}, N={}, l_0={:.6g}".format(side, V_c, N, c[0]))
    return TbcKernel(float(V_c), float(dt), float(dx), c, side, float(kinetic))

# Exterior Reconstruction --------------------------------------------------------------------------

class BoundaryTrace(TimeSignal):
    """Time signal of ψ at a boundary node."""
    def __init__(self, values, dt, x, side="right", t0=0.0):
        TimeSignal.__init__(self, values, dt, t0)
        self.x    = float(x)
        self.side = side


def exterior_reconstruct(trace, x, V_c, s_grid, compact=False):
    """Laplace-domain exterior values ŵ(x, s) = e^{-√(-is+V_c)·|x - x_b|}·v̂(x_b, s)."""
    d = (x - trace.x) if trace.side == "right" else (trace.x - x)
    if d < 0:
        raise ValidationError("x={} is not in the {} exterior of x_b={}".format(x, trace.side, trace.x))
    s_grid   = np.atleast_1d(np.asarray(s_grid, dtype=complex))
    boundary = laplace_transform(trace, s_grid, compact)
    samples  = []
    for s, vb in zip(s_grid, boundary):
        exponent = tbc_symbol(s, V_c)*d
        if exponent.real > 1e-14:
            raise NumericalError("Growing exterior branch at s={}".format(s))
        samples.append(LaplaceSample(complex(s), complex(np.exp(exponent)*vb)))
    return samples

# Reflection ---------------------------------------------------------------------------------------

def reflection_measure(trajectory, t_exit):
    """Interior norm at the first recorded time >= t_exit over the initial norm."""
    times = np.asarray(trajectory.times)
    if t_exit > times[-1] + 1e-12:
        raise ValidationError("t_exit={} beyond trajectory end {}".format(t_exit, times[-1]))
    i  = int(np.searchsorted(times, t_exit - 1e-12))
    w  = trajectory.grid.weights
    m0 = np.sum(w*np.abs(trajectory.states[0])**2)
    mi = np.sum(w*np.abs(trajectory.states[i])**2)
    return float(np.sqrt(mi/m0))
