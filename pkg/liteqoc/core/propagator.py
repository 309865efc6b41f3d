#
# This file is part of LiteQOC.
#
# Copyright (c) 2024-2026 LiteQOC Developers
# SPDX-License-Identifier: BSD-2-Clause

"""
Crank-Nicolson propagation of iψ_t = Hψ, H = -c·D₂ + diag(V) (c = 1 in ħ = 2m = 1 units).

One step solves (I + i·dt/2·H_{n+½})ψ' = (I - i·dt/2·H_{n+½})ψ on the active nodes:
- dirichlet: nodes 1..J-2 (ψ = 0 on both endpoints),
- tbc:       all J nodes, rows 0 and J-1 replaced by the boundary convolution closure,
- periodic:  all J nodes, cyclic stencil.
"""

import logging

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg

from liteqoc.common import *
from liteqoc.core.grid import Wavefunction
from liteqoc.core.tbc import TbcKernel, BoundaryTrace, discrete_tbc_kernel

logger = logging.getLogger(__name__)

# Hamiltonian Bands --------------------------------------------------------------------------------

def hamiltonian_bands(pot, grid, t=0.0, eta=0.0, n_g=None):
    """Diagonal, upper band H_{j,j+1} and wrap link H_{J-1,0} of the discrete Hamiltonian.

    The offset charge enters through Peierls phases e^{∓i·n_g·dx} on the hopping terms, which
    expands to c·(-∂² + 2i·n_g·∂ + n_g²) and is exactly periodic under n_g -> n_g + 1.
    """
    n_g   = pot.n_g if n_g is None else n_g
    a     = pot.kinetic/grid.dx**2
    phase = np.exp(-1j*n_g*grid.dx)
    diag  = 2*a + pot.profile(grid, t, eta).astype(complex)
    up    = np.full(grid.J - 1, -a*phase, dtype=complex)
    wrap  = -a*phase
    return diag, up, wrap

# Tridiagonal (+corners) Operator ------------------------------------------------------------------

class Tridiag:
    """lo[j] = M[j+1, j], up[j] = M[j, j+1], optional corners M[0, n-1], M[n-1, 0]."""
    def __init__(self, lo, d, up, c_ul=0j, c_lr=0j):
        self.lo   = lo
        self.d    = d
        self.up   = up
        self.c_ul = c_ul
        self.c_lr = c_lr

    @property
    def cyclic(self):
        return self.c_ul != 0 or self.c_lr != 0

    def dot(self, y):
        out = self.d*y
        out[:-1] += self.up*y[1:]
        out[1:]  += self.lo*y[:-1]
        out[0]   += self.c_ul*y[-1]
        out[-1]  += self.c_lr*y[0]
        return out

    def H(self):
        return Tridiag(np.conj(self.up), np.conj(self.d), np.conj(self.lo),
            np.conj(self.c_lr), np.conj(self.c_ul))

    def solve(self, b):
        if not self.cyclic:
            ab = np.zeros((3, len(self.d)), dtype=complex)
            ab[0, 1:]  = self.up
            ab[1]      = self.d
            ab[2, :-1] = self.lo
            return scipy.linalg.solve_banded((1, 1), ab, b)
        n = len(self.d)
        M = scipy.sparse.diags([self.lo, self.d, self.up], [-1, 0, 1], format="lil", dtype=complex)
        M[0, n - 1] += self.c_ul
        M[n - 1, 0] += self.c_lr
        return scipy.sparse.linalg.spsolve(M.tocsc(), b)

# Boundary Closures --------------------------------------------------------------------------------

class TbcHistory:
    """Transparent closure state: both kernels plus the recorded traces ψ_1 and ψ_{J-2}.

    Single writer: the propagator appends one entry per step.
    """
    kind = "tbc"

    def __init__(self, left, right):
        self.left   = left
        self.right  = right
        size        = min(len(left), len(right))
        self._trace_l = np.zeros(size, dtype=complex)
        self._trace_r = np.zeros(size, dtype=complex)
        self.n        = 0

    @classmethod
    def for_potential(cls, pot, grid, dt, N):
        if pot.n_g != 0:
            raise ValidationError("TBC closure needs n_g = 0, got {}".format(pot.n_g))
        V_l, V_r = pot.tails()
        return cls(
            discrete_tbc_kernel(dt, grid.dx, V_l, N + 1, pot.kinetic, "left"),
            discrete_tbc_kernel(dt, grid.dx, V_r, N + 1, pot.kinetic, "right"))

    def record(self, values):
        if self.n >= len(self._trace_l):
            raise ValidationError("TBC history full ({} steps)".format(self.n))
        self._trace_l[self.n] = values[1]
        self._trace_r[self.n] = values[-2]
        self.n += 1

    def sums(self):
        step = self.n - 1
        return (self.left.history_sum(self._trace_l, step),
                self.right.history_sum(self._trace_r, step))


def _bc_kind(bc):
    if isinstance(bc, TbcHistory):
        return "tbc"
    return check_choice("boundary condition", bc, bc_kinds)


def _active(kind, J):
    return slice(1, J - 1) if kind == "dirichlet" else slice(0, J)


def step_system(pot, grid, t, eta, dt, kind, l0=None):
    """(A, B) of one step on the active nodes; for tbc, B has empty closure rows."""
    diag, up, wrap = hamiltonian_bands(pot, grid, t, eta)
    lo  = np.conj(up)
    tau = 1j*dt/2
    if kind == "dirichlet":
        d, u, l = diag[1:-1], up[1:-1], lo[1:-1]
        return (Tridiag(tau*l, 1 + tau*d, tau*u),
                Tridiag(-tau*l, 1 - tau*d, -tau*u))
    if kind == "periodic":
        return (Tridiag(tau*lo, 1 + tau*diag, tau*up, tau*np.conj(wrap), tau*wrap),
                Tridiag(-tau*lo, 1 - tau*diag, -tau*up, -tau*np.conj(wrap), -tau*wrap))
    l0_l, l0_r = l0
    A = Tridiag(tau*lo, 1 + tau*diag, tau*up)
    B = Tridiag(-tau*lo, 1 - tau*diag, -tau*up)
    A.d[0], A.d[-1], A.up[0], A.lo[-1] = 1, 1, -l0_l, -l0_r
    B.d[0], B.d[-1], B.up[0], B.lo[-1] = 0, 0, 0, 0
    return A, B

# Crank-Nicolson Step ------------------------------------------------------------------------------

def cn_step(psi, pot, eta, dt, bc="dirichlet", t=0.0):
    """Advance ψ from t to t + dt with the potential frozen at t + dt/2."""
    if dt <= 0:
        raise ValidationError("Time step must be > 0, got {}".format(dt))
    kind  = _bc_kind(bc)
    grid  = psi.grid
    if (kind == "periodic") != grid.periodic:
        raise ValidationError("Boundary condition {} does not match grid (periodic={})".format(kind, grid.periodic))
    if kind == "tbc":
        if bc.left.l0 == 0 or bc.right.l0 == 0:
            raise NumericalError("Singular TBC closure: l_0 = 0")
        if bc.n == 0:
            bc.record(psi.values)
        A, B = step_system(pot, grid, t + dt/2, eta, dt, kind, (bc.left.l0, bc.right.l0))
    else:
        A, B = step_system(pot, grid, t + dt/2, eta, dt, kind)
    act = _active(kind, grid.J)
    rhs = B.dot(psi.values[act].copy())
    if kind == "tbc":
        h_l, h_r = bc.sums()
        rhs[0]  += h_l
        rhs[-1] += h_r
    out = np.zeros(grid.J, dtype=complex)
    out[act] = A.solve(rhs)
    if kind == "tbc":
        bc.record(out)
    return Wavefunction(out, grid)

# Trajectory ---------------------------------------------------------------------------------------

class Trajectory:
    def __init__(self, grid, times, states, etas, bc, kernels=None):
        self.grid    = grid
        self.times   = np.asarray(times)
        self.states  = states
        self.etas    = np.asarray(etas, dtype=float)
        self.bc      = bc
        self.kernels = kernels

    def __len__(self):
        return len(self.times)

    @property
    def N(self):
        return len(self.times) - 1

    @property
    def dt(self):
        return self.times[1] - self.times[0]

    def wavefunction(self, i):
        return Wavefunction(self.states[i], self.grid)

    @property
    def final(self):
        return self.wavefunction(-1)

    def trace(self, side="right"):
        i = -1 if side == "right" else 0
        x = self.grid.x_r if side == "right" else self.grid.x_l
        return BoundaryTrace(self.states[:, i], self.dt, x, side, self.times[0])

    def write_snapshots_csv(self, path, stride=1, config=None):
        x    = self.grid.nodes
        rows = []
        for i in range(0, len(self.times), max(1, int(stride))):
            psi = self.states[i]
            rows.append(np.column_stack([np.full_like(x, self.times[i]), x, psi.real, psi.imag]))
        write_csv(path, ["t", "x", "re", "im"], np.vstack(rows), config)


def step_controls(eta, T, N):
    if hasattr(eta, "step_values"):
        return np.asarray(eta.step_values(T, N), dtype=float)
    if callable(eta):
        return np.asarray(eta(T/N*(np.arange(N) + 0.5)), dtype=float)
    etas = np.asarray(eta, dtype=float)
    if etas.ndim == 0:
        return np.full(N, float(etas))
    if etas.shape != (N,):
        raise ValidationError("Need {} step controls, got {}".format(N, etas.shape))
    return etas


def evolve(psi0, pot, eta, T, N, bc="dirichlet", t0=0.0):
    """N Crank-Nicolson steps over [t0, t0 + T]; η sampled at the step midpoints."""
    if N < 1:
        raise ValidationError("evolve needs N >= 1, got {}".format(N))
    if T <= 0:
        raise ValidationError("evolve needs T > 0, got {}".format(T))
    kind = check_choice("boundary condition", bc, bc_kinds)
    grid = psi0.grid
    if pot.periodic != grid.periodic or (kind == "periodic") != grid.periodic:
        raise ValidationError("Periodic potential/grid/bc mismatch: {}, {}, {}".format(
            pot.periodic, grid.periodic, kind))
    dt   = T/N
    etas = step_controls(eta, T, N)
    history = None
    if kind == "tbc":
        sample_t = t0 + T*np.linspace(0, 1, 5)
        if not pot.static_tails(sample_t, [etas.min(), etas.max()]):
            raise ValidationError("TBC closure needs time-invariant tails")
        edge = max(abs(psi0.values[0]), abs(psi0.values[-1]))
        if edge > tolerances["compact"]*np.max(np.abs(psi0.values)):
            logger.warning("Initial state not compactly supported: |psi| at boundary = {:.3g}".format(edge))
        history = TbcHistory.for_potential(pot, grid, dt, N)
    states    = np.zeros((N + 1, grid.J), dtype=complex)
    states[0] = psi0.values
    if kind == "dirichlet":
        states[0, [0, -1]] = 0
    psi = Wavefunction(states[0], grid)
    for n in range(N):
        psi = cn_step(psi, pot, etas[n], dt, history if history is not None else kind, t0 + n*dt)
        states[n + 1] = psi.values
    if not np.all(np.isfinite(states[-1])):
        raise NumericalError("Non-finite state after {} steps".format(N))
    kernels = (history.left, history.right) if history is not None else None
    return Trajectory(grid, t0 + dt*np.arange(N + 1), states, etas, kind, kernels)

# Adjoint Sweep ------------------------------------------------------------------------------------

def adjoint_sweep(traj, pot, seed):
    """dΦ/dη_n for every step, Φ a function of the final state with Re-gradient `seed`.

    Backward sweep of the discrete scheme: A_{N-1}^H μ_{N-1} = g,
    A_{k-1}^H μ_{k-1} = B_k^H μ_k + (boundary memory terms), dΦ/dη_n = -Re⟨μ_n, ∂F_n/∂η_n⟩.
    """
    grid = traj.grid
    kind = traj.bc
    N    = traj.N
    dt   = traj.dt
    act  = _active(kind, grid.J)
    u    = pot.coupling_profile(grid)[act].astype(complex)
    if kind == "tbc":
        u[0] = u[-1] = 0
        kl, kr = traj.kernels
        l_l, l_r = kl.coefficients, kr.coefficients
        mu_l = np.zeros(N, dtype=complex)
        mu_r = np.zeros(N, dtype=complex)
        l0 = (kl.l0, kr.l0)
    else:
        l0 = None
    grad = np.zeros(N)
    rhs  = np.asarray(seed, dtype=complex)[act].copy()
    for n in reversed(range(N)):
        A, B = step_system(pot, grid, traj.times[n] + dt/2, traj.etas[n], dt, kind, l0)
        mu   = A.H().solve(rhs)
        ysum = traj.states[n + 1][act] + traj.states[n][act]
        grad[n] = -np.real(np.vdot(mu, 0.5j*dt*u*ysum))
        if n == 0:
            break
        rhs = B.H().dot(mu)
        if kind == "tbc":
            mu_l[n], mu_r[n] = mu[0], mu[-1]
            rhs[1]  += np.dot(np.conj(l_l[1:N - n + 1]), mu_l[n:N])
            rhs[-2] += np.dot(np.conj(l_r[1:N - n + 1]), mu_r[n:N])
    return grad
