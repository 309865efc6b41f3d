#
# This file is part of LiteQOC.
#
# Copyright (c) 2024-2026 LiteQOC Developers
# SPDX-License-Identifier: BSD-2-Clause

from dataclasses import dataclass

import numpy as np

from liteqoc.common import *

# Grid ---------------------------------------------------------------------------------------------

@dataclass(frozen=True)
class Grid:
    """Uniform 1D grid.

    Non-periodic grids include both endpoints x_l, x_r. Periodic grids exclude the right end
    (node J would alias node 0).
    """
    x_l      : float
    x_r      : float
    J        : int
    periodic : bool = False

    @property
    def dx(self):
        if self.periodic:
            return (self.x_r - self.x_l)/self.J
        return (self.x_r - self.x_l)/(self.J - 1)

    @property
    def nodes(self):
        return self.x_l + self.dx*np.arange(self.J)

    @property
    def weights(self):
        w = np.full(self.J, self.dx)
        if not self.periodic:
            w[0]  = self.dx/2
            w[-1] = self.dx/2
        return w

    @property
    def length(self):
        return self.x_r - self.x_l

    def index(self, x):
        return int(round((x - self.x_l)/self.dx))


def make_grid(x_l, x_r, J):
    if J < 3:
        raise ValidationError("Grid J must be >= 3, got {}".format(J))
    if not x_l < x_r:
        raise ValidationError("Grid needs x_l < x_r, got [{}, {}]".format(x_l, x_r))
    return Grid(float(x_l), float(x_r), int(J))


def make_periodic_grid(J, x_l=-np.pi, period=2*np.pi):
    if J < 3:
        raise ValidationError("Grid J must be >= 3, got {}".format(J))
    if period <= 0:
        raise ValidationError("Grid period must be > 0, got {}".format(period))
    return Grid(float(x_l), float(x_l + period), int(J), periodic=True)

# Wavefunction -------------------------------------------------------------------------------------

class Wavefunction:
    """Complex samples of ψ on a Grid. Immutable."""
    def __init__(self, values, grid):
        values = np.array(values, dtype=complex)
        if values.shape != (grid.J,):
            raise ValidationError("Wavefunction needs {} values, got {}".format(grid.J, values.shape))
        values.setflags(write=False)
        self.values = values
        self.grid   = grid

    def __repr__(self):
        return "Wavefunction(J={}, norm={:.6g})".format(self.grid.J, norm(self))

    def __mul__(self, a):
        return Wavefunction(a*self.values, self.grid)

    __rmul__ = __mul__

    def __add__(self, other):
        _check_grids(self, other)
        return Wavefunction(self.values + other.values, self.grid)

    def __sub__(self, other):
        _check_grids(self, other)
        return Wavefunction(self.values - other.values, self.grid)

    def phase(self, theta):
        return Wavefunction(np.exp(1j*theta)*self.values, self.grid)

    def normalized(self):
        n = norm(self)
        if n == 0:
            raise ValidationError("Cannot normalize the zero wavefunction")
        return Wavefunction(self.values/n, self.grid)


def _check_grids(a, b):
    if a.grid != b.grid:
        raise ValidationError("Grid mismatch: {} vs {}".format(a.grid, b.grid))


def wavefunction_from(f, grid):
    return Wavefunction(f(grid.nodes), grid)


def gaussian_packet(grid, x0, sigma, k0=0.0):
    x   = grid.nodes
    psi = np.exp(-(x - x0)**2/(4*sigma**2) + 1j*k0*x)
    return Wavefunction(psi, grid).normalized()

# Inner product / Norm / Fidelity ------------------------------------------------------------------

def inner_product(a, b):
    _check_grids(a, b)
    return complex(np.sum(a.grid.weights*np.conj(a.values)*b.values))


def norm(a):
    return float(np.sqrt(max(inner_product(a, a).real, 0.0)))


def fidelity(a, b):
    tol = tolerances["normalized"]
    for name, w in (("a", a), ("b", b)):
        n = norm(w)
        if abs(n - 1) > tol:
            raise ValidationError("Fidelity input {} not normalized: norm={}".format(name, n))
    return abs(inner_product(a, b))**2
