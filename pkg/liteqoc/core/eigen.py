#
# This file is part of LiteQOC.
#
# Copyright (c) 2024-2026 LiteQOC Developers
# SPDX-License-Identifier: BSD-2-Clause

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse

from liteqoc.common import *
from liteqoc.core.grid import Wavefunction, inner_product, _check_grids
from liteqoc.core.potentials import Transmon
from liteqoc.core.propagator import hamiltonian_bands

logger = logging.getLogger(__name__)

# Hamiltonian --------------------------------------------------------------------------------------

@dataclass(frozen=True)
class Hamiltonian:
    """Discrete H on the free nodes: J-2 interior nodes (dirichlet) or all J nodes (periodic)."""
    grid   : object
    bc     : str
    matrix : scipy.sparse.csr_matrix

    @property
    def dim(self):
        return self.matrix.shape[0]

    def toarray(self):
        return self.matrix.toarray()

    def embed(self, v):
        """Free-node vector -> full grid values."""
        if self.bc == "periodic":
            return np.asarray(v, dtype=complex)
        out = np.zeros(self.grid.J, dtype=complex)
        out[1:-1] = v
        return out


def hamiltonian_matrix(pot, grid, bc="dirichlet", n_g=None, t=0.0, eta=0.0):
    check_choice("eigen boundary condition", bc, ["dirichlet", "periodic"])
    if pot.periodic and bc != "periodic":
        raise ValidationError("{} needs the periodic boundary condition".format(pot.name))
    if (bc == "periodic") != grid.periodic:
        raise ValidationError("Boundary condition {} does not match grid (periodic={})".format(bc, grid.periodic))
    diag, up, wrap = hamiltonian_bands(pot, grid, t, eta, n_g)
    if bc == "dirichlet":
        diag, up = diag[1:-1], up[1:-1]
    n = len(diag)
    H = scipy.sparse.diags([np.conj(up), diag, up], [-1, 0, 1], shape=(n, n), format="lil", dtype=complex)
    if bc == "periodic":
        H[n - 1, 0] += wrap
        H[0, n - 1] += np.conj(wrap)
    return Hamiltonian(grid, bc, H.tocsr())

# Eigenbasis ---------------------------------------------------------------------------------------

@dataclass(frozen=True)
class EigenBasis:
    energies : np.ndarray
    states   : tuple
    bc       : str

    def __len__(self):
        return len(self.energies)

    @property
    def grid(self):
        return self.states[0].grid

    @property
    def matrix(self):
        return np.array([s.values for s in self.states])


def _fix_phase(v):
    i = np.argmax(np.abs(v))
    return v*np.exp(-1j*np.angle(v[i]))


def eigenstates(H, k):
    """k lowest eigenpairs, grid-normalized, largest-magnitude component real positive."""
    if not 1 <= k <= H.dim:
        raise ValidationError("eigenstates needs 1 <= k <= {}, got {}".format(H.dim, k))
    try:
        if H.bc == "dirichlet" and not np.any(H.matrix.data.imag):
            d = H.matrix.diagonal().real
            e = H.matrix.diagonal(1).real
            E, V = scipy.linalg.eigh_tridiagonal(d, e, select="i", select_range=(0, k - 1))
        else:
            E, V = scipy.linalg.eigh(H.toarray(), subset_by_index=[0, k - 1])
    except (np.linalg.LinAlgError, ValueError) as e:
        raise NumericalError("Eigensolver failed: {}".format(e))
    scale  = np.sqrt(H.grid.dx)
    states = tuple(Wavefunction(H.embed(_fix_phase(V[:, i]/scale)), H.grid) for i in range(k))
    logger.debug("{} lowest levels: {}".format(k, E))
    return EigenBasis(np.asarray(E, dtype=float), states, H.bc)


def expand_in_eigenbasis(psi, basis):
    _check_grids(psi, basis.states[0])
    return np.array([inner_product(phi, psi) for phi in basis.states])

# Transmon Asymptotics -----------------------------------------------------------------------------

def transmon_asymptotic_levels(p, n):
    """ω₀(n+½) − (E_C/12)(6n²+6n+3), ω₀ = √(8E_J·E_C), measured from the well bottom −E_J."""
    return p.omega0*(n + 0.5) - p.E_C/12*(6*n**2 + 6*n + 3)


def level_table(basis, potential, n_levels=None):
    """Rows of spectrum.csv; formula columns only for the transmon."""
    n_levels = len(basis) if n_levels is None else min(n_levels, len(basis))
    E = basis.energies[:n_levels]
    if not isinstance(potential, Transmon):
        return ["n", "E_numeric"], np.column_stack([np.arange(n_levels), E])
    p   = potential.params
    F   = np.array([transmon_asymptotic_levels(p, n) for n in range(n_levels)]) - p.E_J
    err = np.zeros(n_levels)
    err[1:] = np.abs(((E[1:] - E[0]) - (F[1:] - F[0]))/(E[1:] - E[0]))
    return ["n", "E_numeric", "E_formula", "rel_error"], np.column_stack([np.arange(n_levels), E, F, err])
