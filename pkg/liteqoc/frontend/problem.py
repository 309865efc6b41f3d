#
# This file is part of LiteQOC.
#
# Copyright (c) 2024-2026 LiteQOC Developers
# SPDX-License-Identifier: BSD-2-Clause

"""
Control problems.

    J(η) = (α/p)·∫|v(x,T;η) − ψ̄(x)|^p dx + (β/q)·∫ μ(η)^q d(x,t)

with v the Crank-Nicolson solution. Gradients are those of the discrete objective (backward sweep
of the same scheme, boundary memory terms included), checked against central differences.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from liteqoc.common import *
from liteqoc.core.grid import Wavefunction, inner_product, norm, _check_grids
from liteqoc.core.control import ControlSignal, ControlBlocks, parametrize
from liteqoc.core.spectral import TimeSignal, TalbotContour, laplace_transform
from liteqoc.core.tbc import semidiscrete_tbc_symbol
from liteqoc.core.propagator import Tridiag, hamiltonian_bands, evolve, adjoint_sweep
from liteqoc.core.magnus import commutator

logger = logging.getLogger(__name__)

control_measures = {
    "abs": np.abs,
}

# Cost Spec ----------------------------------------------------------------------------------------

@dataclass(frozen=True)
class CostSpec:
    alpha    : float = 1.0
    beta     : float = 0.0
    p        : int   = 2
    q        : int   = 2
    mu       : str   = "abs"
    terminal : str   = "l2"

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0:
            raise ValidationError("Cost weights must be >= 0, got alpha={} beta={}".format(self.alpha, self.beta))
        if self.alpha + self.beta <= 0:
            raise ValidationError("Cost needs alpha + beta > 0")
        if self.p < 1 or self.q < 1:
            raise ValidationError("Cost exponents must be >= 1, got p={} q={}".format(self.p, self.q))
        check_choice("control measure", self.mu, list(control_measures))
        check_choice("terminal cost", self.terminal, terminal_kinds)
        if self.terminal == "phase_invariant" and self.p != 2:
            raise ValidationError("phase_invariant terminal cost needs p = 2, got {}".format(self.p))

    @property
    def smooth(self):
        return self.p == 2 and self.q == 2

# Problem Spec -------------------------------------------------------------------------------------

class ProblemSpec:
    def __init__(self, grid, potential, psi_ini, target, T, N, cost=None, bc="dirichlet", par=None):
        check_choice("boundary condition", bc, bc_kinds)
        if T <= 0:
            raise ValidationError("Horizon T must be > 0, got {}".format(T))
        if N < 1:
            raise ValidationError("Step count N must be >= 1, got {}".format(N))
        for name, w in (("psi_ini", psi_ini), ("target", target)):
            if w.grid != grid:
                raise ValidationError("{} lives on another grid".format(name))
            if abs(norm(w) - 1) > tolerances["normalized"]:
                raise ValidationError("{} not normalized: norm={}".format(name, norm(w)))
        if bc == "tbc":
            edge = max(abs(psi_ini.values[0]), abs(psi_ini.values[-1]))
            if edge > tolerances["compact"]*np.max(np.abs(psi_ini.values)):
                raise ValidationError("psi_ini not compactly supported in the interior (|psi| = {:.3g} at boundary)".format(edge))
        par = parametrize("piecewise_constant", 1, potential.bounds, T) if par is None else par
        if abs(par.T - T) > 1e-12*T:
            raise ValidationError("Control horizon {} differs from T={}".format(par.T, T))
        self.grid      = grid
        self.potential = potential
        self.psi_ini   = psi_ini
        self.target    = target
        self.T         = float(T)
        self.N         = int(N)
        self.cost_spec = CostSpec() if cost is None else cost
        self.bc        = bc
        self.par       = par

    def __repr__(self):
        return "ProblemSpec({}, J={}, T={}, N={}, bc={})".format(
            self.potential, self.grid.J, self.T, self.N, self.bc)

    @property
    def dt(self):
        return self.T/self.N

    @property
    def step_times(self):
        return self.dt*(np.arange(self.N) + 0.5)

    @property
    def measure(self):
        """Spatial measure of the control cost: window measure for windowed profiles."""
        if self.par.profile == "windowed":
            return self.potential.window_measure(self.grid, self.cost_spec.q)
        return 1.0

    def control(self, eta):
        if isinstance(eta, ControlSignal):
            return eta
        return ControlSignal(self.par, eta)

    # Optimizer interface.
    def cost(self, params):
        return total_cost(self, params)[0]

    def evaluate(self, params):
        value, grad, _ = cost_and_gradient(self, params)
        return value, grad

    def fidelity(self, params):
        _, traj = total_cost(self, params)
        return transfer_fidelity(traj.final, self.target)

# Costs --------------------------------------------------------------------------------------------

def terminal_cost(psi_T, target, p=2, alpha=1.0, kind="l2"):
    _check_grids(psi_T, target)
    check_choice("terminal cost", kind, terminal_kinds)
    if kind == "phase_invariant":
        z = abs(inner_product(target, psi_T))
        return float(alpha/2*(norm(psi_T)**2 + norm(target)**2 - 2*z))
    w = psi_T.grid.weights
    return float(alpha/p*np.sum(w*np.abs(psi_T.values - target.values)**p))


def terminal_seed(psi_T, target, cost):
    """Re-gradient g of the terminal cost: dΦ = Re Σ conj(g)·dv (p = 2)."""
    w = psi_T.grid.weights
    v, t = psi_T.values, target.values
    if cost.terminal == "phase_invariant":
        z     = np.sum(w*np.conj(t)*v)
        phase = z/abs(z) if abs(z) > 0 else 1.0
        return cost.alpha*(w*v - phase*w*t)
    return cost.alpha*w*(v - t)


def control_cost(eta, mu="abs", q=2, beta=1.0, N=256, measure=1.0):
    """(β/q)·Σ_n dt·μ(η_n)^q·measure over N midpoint samples of [0, T]."""
    if not isinstance(eta, ControlSignal):
        raise ValidationError("control_cost needs a ControlSignal, got {}".format(type(eta).__name__))
    T    = eta.par.T
    etas = eta.step_values(T, N)
    return float(beta/q*np.sum(T/N*control_measures[mu](etas)**q)*measure)


def _control_cost_derivative(spec, etas):
    c = spec.cost_spec
    if c.mu != "abs":
        raise ValidationError("No derivative for control measure {}".format(c.mu))
    return c.beta*spec.dt*np.abs(etas)**(c.q - 1)*np.sign(etas)*spec.measure


def transfer_fidelity(psi_T, target):
    return float(abs(inner_product(target, psi_T))**2)


def total_cost(spec, eta):
    """Terminal + control cost of one forward run; returns the trajectory for reuse."""
    signal = spec.control(eta)
    c      = spec.cost_spec
    traj   = evolve(spec.psi_ini, spec.potential, signal, spec.T, spec.N, spec.bc)
    value  = terminal_cost(traj.final, spec.target, c.p, c.alpha, c.terminal)
    value += control_cost(signal, c.mu, c.q, c.beta, spec.N, spec.measure)
    if not np.isfinite(value):
        raise NumericalError("Non-finite cost for parameters {}".format(signal.params))
    return value, traj

# Gradients ----------------------------------------------------------------------------------------

def cost_and_gradient(spec, eta):
    signal = spec.control(eta)
    c      = spec.cost_spec
    if not c.smooth:
        logger.warning("No exact adjoint for p={}, q={}: using finite differences".format(c.p, c.q))
        value, traj = total_cost(spec, signal)
        return value, fd_gradient(spec, signal), traj
    value, traj = total_cost(spec, signal)
    g = _control_cost_derivative(spec, traj.etas)
    if c.alpha > 0:
        g = g + adjoint_sweep(traj, spec.potential, terminal_seed(traj.final, spec.target, c))
    G = spec.par.design_matrix(spec.step_times)
    return value, G.T @ g, traj


def adjoint_gradient(spec, eta):
    return cost_and_gradient(spec, eta)[1]


def _params(eta):
    if isinstance(eta, ControlSignal):
        return eta.params
    return np.asarray(eta, dtype=float)


def fd_gradient(problem, eta, eps=1e-5, workers=None):
    """Central differences (J(p+εe_k) − J(p−εe_k))/2ε, parameters evaluated concurrently.

    Any problem exposing cost(params) works (ProblemSpec, MagnusProblem).
    """
    if eps <= 0:
        raise ValidationError("FD step must be > 0, got {}".format(eps))
    params = _params(eta)

    def partial(k):
        e    = np.zeros_like(params)
        e[k] = eps
        return (problem.cost(params + e) - problem.cost(params - e))/(2*eps)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        return np.array(list(pool.map(partial, range(params.size))))


def gradcheck(problem, eta, eps_list=(1e-3, 1e-4, 1e-5), threshold=None):
    """problem.evaluate gradient vs central FD over an ε sweep, judged at the best ε."""
    threshold = tolerances["gradcheck"] if threshold is None else threshold
    adjoint   = problem.evaluate(_params(eta))[1]
    scale     = max(np.max(np.abs(adjoint)), np.finfo(float).tiny)
    sweep     = []
    for eps in eps_list:
        fd  = fd_gradient(problem, eta, eps)
        err = float(np.max(np.abs(adjoint - fd))/max(scale, np.max(np.abs(fd))))
        sweep.append({"eps": float(eps), "max_rel_error": err, "fd": fd})
    best = min(sweep, key=lambda r: r["max_rel_error"])
    parameters = [{
        "index":     k,
        "adjoint":   float(adjoint[k]),
        "fd":        float(best["fd"][k]),
        "rel_error": float(abs(adjoint[k] - best["fd"][k])/scale),
    } for k in range(adjoint.size)]
    return {
        "sweep":         [{"eps": r["eps"], "max_rel_error": r["max_rel_error"]} for r in sweep],
        "best_eps":      best["eps"],
        "max_rel_error": best["max_rel_error"],
        "threshold":     threshold,
        "passed":        bool(best["max_rel_error"] <= threshold),
        "parameters":    parameters,
    }

# Semi-Spectral Path -------------------------------------------------------------------------------

def mean_energy(spec):
    diag, up, _ = hamiltonian_bands(spec.potential, spec.grid)
    v  = spec.psi_ini.values
    Hv = diag*v
    Hv[:-1] += up*v[1:]
    Hv[1:]  += np.conj(up)*v[:-1]
    w = spec.grid.weights
    return float(np.real(np.sum(w*np.conj(v)*Hv))/np.sum(w*np.abs(v)**2))


def _resolvent_system(spec, s, diag, up, wrap):
    """(i·s − H₀) on the active nodes, semi-discrete transparent closure rows for tbc."""
    lo = np.conj(up)
    if spec.bc == "dirichlet":
        return Tridiag(-lo[1:-1], 1j*s - diag[1:-1], -up[1:-1])
    if spec.bc == "periodic":
        return Tridiag(-lo, 1j*s - diag, -up, -np.conj(wrap), -wrap)
    pot  = spec.potential
    V_l, V_r = pot.tails()
    A = Tridiag(-lo, 1j*s - diag, -up)
    A.d[0], A.d[-1] = 1, 1
    A.up[0]  = -semidiscrete_tbc_symbol(s, spec.grid.dx, V_l, pot.kinetic)
    A.lo[-1] = -semidiscrete_tbc_symbol(s, spec.grid.dx, V_r, pot.kinetic)
    return A


def laplace_terminal_state(spec, eta, contour=None, traj=None):
    """v(·,T) through the Laplace domain: per contour node solve
    (i·s − H₀)v̂ = i·ψ_ini + L[(V − V₀)·v](s), then invert at t = T.

    The control-dependent part of V enters as a source transformed from the time-domain
    trajectory over [0, T] (zero afterwards).
    """
    signal = spec.control(eta)
    grid, pot = spec.grid, spec.potential
    if contour is None:
        contour = TalbotContour(spec.T, shift=mean_energy(spec))
    if traj is None:
        traj = evolve(spec.psi_ini, pot, signal, spec.T, spec.N, spec.bc)
    nodes = contour.nodes
    V0    = pot.profile(grid, 0.0, 0.0)
    dV    = np.array([pot.profile(grid, t, float(signal(t))) for t in traj.times]) - V0
    if np.any(dV):
        source = laplace_transform(TimeSignal(dV*traj.states, traj.dt, traj.times[0]), nodes, compact=True)
    else:
        source = np.zeros((len(nodes), grid.J), dtype=complex)
    diag, up, wrap = hamiltonian_bands(pot, grid)
    act = slice(1, grid.J - 1) if spec.bc == "dirichlet" else slice(0, grid.J)
    v0  = spec.psi_ini.values
    values = np.zeros((len(nodes), grid.J), dtype=complex)
    for k, s in enumerate(nodes):
        rhs = (1j*v0 + source[k])[act].copy()
        if spec.bc == "tbc":
            rhs[0] = rhs[-1] = 0
        values[k, act] = _resolvent_system(spec, s, diag, up, wrap).solve(rhs)
    return Wavefunction(contour.invert(values), grid)


def semi_spectral_cost(spec, eta, s_grid=None):
    """Cost with the terminal state obtained by Laplace inversion (s_grid: TalbotContour)."""
    signal = spec.control(eta)
    c      = spec.cost_spec
    v_T    = laplace_terminal_state(spec, signal, s_grid)
    value  = terminal_cost(v_T, spec.target, c.p, c.alpha, c.terminal)
    return value + control_cost(signal, c.mu, c.q, c.beta, spec.N, spec.measure)

# Finite-Level Problem -----------------------------------------------------------------------------

class MagnusProblem:
    """State transfer ψ0 -> ψ̄ on a FiniteLevelSystem.

    J = α·(1 − |⟨ψ̄, U(T)ψ0⟩|²) + (β/q)·Σ_j Σ_n δ·|h_j(t_{n+½})|^q; each control uses `par`,
    parameters stacked per control.
    """
    def __init__(self, system, par, psi0, target, T, steps, cost=None, order=2):
        check_choice("Magnus order", order, [1, 2])
        psi0, target = np.asarray(psi0, dtype=complex), np.asarray(target, dtype=complex)
        for name, v in (("psi0", psi0), ("target", target)):
            if v.shape != (system.d,):
                raise ValidationError("{} needs {} amplitudes, got {}".format(name, system.d, v.shape))
            if abs(np.linalg.norm(v) - 1) > tolerances["normalized"]:
                raise ValidationError("{} not normalized".format(name))
        if steps < 1:
            raise ValidationError("Magnus steps must be >= 1, got {}".format(steps))
        self.system    = system
        self.psi0      = psi0
        self.target    = target
        self.T         = float(T)
        self.steps     = int(steps)
        self.cost_spec = CostSpec() if cost is None else cost
        self.order     = order
        self.par       = ControlBlocks(par, system.n_controls)
        delta = self.T/self.steps
        t     = delta*np.arange(self.steps)
        g     = np.sqrt(3)/6
        self._Gm = par.design_matrix(t + delta/2)
        self._G1 = par.design_matrix(t + (0.5 - g)*delta)
        self._G2 = par.design_matrix(t + (0.5 + g)*delta)

    def __repr__(self):
        return "MagnusProblem({}, steps={}, order={})".format(self.system, self.steps, self.order)

    @property
    def delta(self):
        return self.T/self.steps

    def _controls(self, params):
        P = self.par.split(params)
        return self._Gm @ P.T, self._G1 @ P.T, self._G2 @ P.T

    def _exponents(self, params):
        hm, h1, h2 = self._controls(params)
        sys, d  = self.system, self.delta
        omegas  = []
        parts   = []
        for n in range(self.steps):
            if self.order == 1:
                omegas.append(-1j*d*sys.hamiltonian(hm[n]))
                parts.append(None)
            else:
                A1 = -1j*sys.hamiltonian(h1[n])
                A2 = -1j*sys.hamiltonian(h2[n])
                omegas.append(d/2*(A1 + A2) + np.sqrt(3)*d**2/12*commutator(A2, A1))
                parts.append((A1, A2))
        return omegas, parts, hm

    def unitary(self, params):
        U = np.eye(self.system.d, dtype=complex)
        for omega in self._exponents(params)[0]:
            U = scipy.linalg.expm(omega) @ U
        return U

    def fidelity(self, params):
        return float(abs(np.vdot(self.target, self.unitary(params) @ self.psi0))**2)

    def _control_cost(self, hm):
        c = self.cost_spec
        return c.beta/c.q*np.sum(self.delta*control_measures[c.mu](hm)**c.q)

    def cost(self, params):
        omegas, _, hm = self._exponents(params)
        U = np.eye(self.system.d, dtype=complex)
        for omega in omegas:
            U = scipy.linalg.expm(omega) @ U
        F = abs(np.vdot(self.target, U @ self.psi0))**2
        return float(self.cost_spec.alpha*(1 - F) + self._control_cost(hm))

    def evaluate(self, params):
        """Cost and exact gradient; step derivatives through Fréchet derivatives of expm."""
        c = self.cost_spec
        omegas, parts, hm = self._exponents(params)
        steps, n_c = self.steps, self.system.n_controls
        n_p  = self.par.par.n_params
        Us   = [scipy.linalg.expm(omega) for omega in omegas]
        phis = [self.psi0]
        for U in Us:
            phis.append(U @ phis[-1])
        chis = [None]*steps
        chi  = self.target
        for n in reversed(range(steps)):
            chis[n] = chi
            chi     = Us[n].conj().T @ chi
        z     = np.vdot(self.target, phis[-1])
        F     = abs(z)**2
        value = float(c.alpha*(1 - F) + self._control_cost(hm))
        grad  = np.zeros(n_c*n_p)
        d     = self.delta
        for n in range(steps):
            for j, Hj in enumerate(self.system.controls):
                dA = -1j*Hj
                for k in range(n_p):
                    if self.order == 1:
                        if self._Gm[n, k] == 0:
                            continue
                        dOmega = d*self._Gm[n, k]*dA
                    else:
                        g1, g2 = self._G1[n, k], self._G2[n, k]
                        if g1 == 0 and g2 == 0:
                            continue
                        A1, A2 = parts[n]
                        dOmega = d/2*(g1 + g2)*dA + np.sqrt(3)*d**2/12*(
                            commutator(g2*dA, A1) + commutator(A2, g1*dA))
                    dU = scipy.linalg.expm_frechet(omegas[n], dOmega, compute_expm=False)
                    dz = np.vdot(chis[n], dU @ phis[n])
                    grad[j*n_p + k] -= c.alpha*2*np.real(np.conj(z)*dz)
        if c.beta > 0:
            dm = c.beta*d*np.abs(hm)**(c.q - 1)*np.sign(hm)
            for j in range(n_c):
                grad[j*n_p:(j + 1)*n_p] += self._Gm.T @ dm[:, j]
        if not np.isfinite(value):
            raise NumericalError("Non-finite cost for parameters {}".format(params))
        return value, grad
