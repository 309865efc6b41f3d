#
# This file is part of LiteQOC.
#
# Copyright (c) 2024-2026 LiteQOC Developers
# SPDX-License-Identifier: BSD-2-Clause

from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from liteqoc.common import *

# Helpers ------------------------------------------------------------------------------------------

TimeSignalLike = Union[float, Callable]

def time_signal(v):
    """Wrap a constant or a callable as a vectorized time function."""
    if callable(v):
        return v
    v = float(v)
    return lambda t: v + 0.0*np.asarray(t, dtype=float)


coupling_profiles = {
    "dipole":  lambda x: -x,
    "uniform": lambda x: np.ones_like(x),
}

# Potential ----------------------------------------------------------------------------------------

class Potential:
    """Interior profile plus control coupling, with constant tails outside [x_l, x_r].

    V(x, t; η) = V_base(x, t) + η·u(x)·1[x̂_l ≤ x ≤ x̂_r], evaluated at x clamped into
    [x_l, x_r] so tails are flat. Periodic potentials have no tails.
    """
    name     = None
    periodic = False

    def __init__(self, x_l, x_r, xh_l=None, xh_r=None, bounds=(-np.inf, np.inf),
        kinetic=1.0, n_g=0.0, clamp_tails=True):
        xh_l = x_l if xh_l is None else xh_l
        xh_r = x_r if xh_r is None else xh_r
        if not x_l < x_r:
            raise ValidationError("Potential needs x_l < x_r, got [{}, {}]".format(x_l, x_r))
        if not (x_l <= xh_l < xh_r <= x_r):
            raise ValidationError("Control window [{}, {}] not inside [{}, {}]".format(
                xh_l, xh_r, x_l, x_r))
        if not bounds[0] <= bounds[1]:
            raise ValidationError("Empty control bounds: {}".format(bounds))
        self.x_l         = float(x_l)
        self.x_r         = float(x_r)
        self.xh_l        = float(xh_l)
        self.xh_r        = float(xh_r)
        self.bounds      = (float(bounds[0]), float(bounds[1]))
        self.kinetic     = float(kinetic)
        self.n_g         = float(n_g)
        self.clamp_tails = clamp_tails

    def __repr__(self):
        return "{}(x_l={}, x_r={})".format(self.__class__.__name__, self.x_l, self.x_r)

    # Family interface.
    def base(self, x, t):
        raise NotImplementedError

    def coupling(self, x):
        raise NotImplementedError

    # Evaluation.
    def _clamp(self, x):
        if self.periodic or not self.clamp_tails:
            return x
        return np.clip(x, self.x_l, self.x_r)

    def windowed_coupling(self, x):
        x = np.asarray(x, dtype=float)
        w = (x >= self.xh_l) & (x <= self.xh_r)
        return np.where(w, self.coupling(x), 0.0)

    def check_eta(self, eta):
        lo, hi = self.bounds
        eta    = np.asarray(eta, dtype=float)
        slack  = 1e-12*max(1.0, np.max(np.abs(eta)) if eta.size else 1.0)
        if np.any(eta < lo - slack) or np.any(eta > hi + slack):
            raise ValidationError("Control value {} outside bounds [{}, {}]".format(eta, lo, hi))

    def __call__(self, x, t=0.0, eta=0.0):
        self.check_eta(eta)
        x  = np.asarray(x, dtype=float)
        xc = self._clamp(x)
        return self.base(xc, t) + eta*self.windowed_coupling(xc)

    def profile(self, grid, t=0.0, eta=0.0):
        return self(grid.nodes, t, eta)

    def coupling_profile(self, grid):
        """∂V/∂η at the grid nodes."""
        return self.windowed_coupling(self._clamp(grid.nodes))

    def tails(self, t=0.0, eta=0.0):
        return float(self(self.x_l, t, eta)), float(self(self.x_r, t, eta))

    @property
    def V_l(self):
        return self.tails()[0]

    @property
    def V_r(self):
        return self.tails()[1]

    def static_tails(self, times, etas):
        """Tails identical to (t=0, η=0) for every sampled (t, η)."""
        ref = np.array(self.tails())
        for t in times:
            for eta in etas:
                if np.max(np.abs(np.array(self.tails(t, eta)) - ref)) > tolerances["tail"]:
                    return False
        return True

    def window_measure(self, grid, q):
        return float(np.sum(grid.weights*np.abs(self.coupling_profile(grid))**q))


def eval_potential(pot, x, t, eta):
    return pot(x, t, eta)

# Driven Oscillator --------------------------------------------------------------------------------

@dataclass(frozen=True)
class DrivenOscillatorParams:
    x_l     : float
    x_r     : float
    m       : float          = 0.5
    omega   : TimeSignalLike = 1.0
    J_drive : TimeSignalLike = 0.0

    def __post_init__(self):
        if self.m <= 0:
            raise ValidationError("Oscillator mass must be > 0, got {}".format(self.m))

    def uncorrected(self, x, t, drive=0.0):
        w = time_signal(self.omega)(t)
        j = time_signal(self.J_drive)(t) + drive
        return w**2*np.asarray(x)**2/(2*self.m) - j*np.asarray(x)


def oscillator_correction(p, x, t):
    """R(x, t) flattening the oscillator on the tails; zero on (x_l, x_r)."""
    x  = np.asarray(x, dtype=float)
    xc = np.clip(x, p.x_l, p.x_r)
    return p.uncorrected(xc, t) - p.uncorrected(x, t)


class HarmonicDriven(Potential):
    """V = ω(t)²x²/2m − (J(t) + η)·x, drive windowed to [x̂_l, x̂_r]."""
    name = "harmonic_driven"

    def __init__(self, params, xh_l=None, xh_r=None, bounds=(-np.inf, np.inf), corrected=True):
        Potential.__init__(self, params.x_l, params.x_r, xh_l, xh_r, bounds,
            clamp_tails=corrected)
        self.params    = params
        self.corrected = corrected

    def base(self, x, t):
        return self.params.uncorrected(x, t)

    def coupling(self, x):
        return coupling_profiles["dipole"](x)

# Transmon -----------------------------------------------------------------------------------------

@dataclass(frozen=True)
class TransmonParams:
    E_C     : Optional[float] = None
    E_J     : float           = 1.0
    n_g     : float           = 0.0
    C_Sigma : Optional[float] = None
    e       : float           = 1.0

    def __post_init__(self):
        if self.E_C is None:
            if self.C_Sigma is None:
                raise ValidationError("Transmon needs E_C or C_Sigma")
            object.__setattr__(self, "E_C", self.e**2/(2*self.C_Sigma))
        if self.E_C <= 0 or self.E_J <= 0:
            raise ValidationError("Transmon needs E_C, E_J > 0, got {}, {}".format(self.E_C, self.E_J))

    @property
    def omega0(self):
        return np.sqrt(8*self.E_J*self.E_C)


class Transmon(Potential):
    """−E_J cos φ on φ ∈ [−π, π), kinetic 4E_C(−i∂_φ − n_g)². Control modulates E_J."""
    name     = "transmon"
    periodic = True

    def __init__(self, params, bounds=(-np.inf, np.inf)):
        Potential.__init__(self, -np.pi, np.pi, bounds=bounds,
            kinetic = 4*params.E_C,
            n_g     = params.n_g)
        self.params = params

    def base(self, x, t):
        return -self.params.E_J*np.cos(x)

    def coupling(self, x):
        return -np.cos(x)

# Fluxonium ----------------------------------------------------------------------------------------

@dataclass(frozen=True)
class FluxoniumParams:
    E_C     : float
    E_J     : float
    E_L     : float
    n_g     : float = 0.0
    phi_ext : float = 0.0

    def __post_init__(self):
        for k in ["E_C", "E_J", "E_L"]:
            if getattr(self, k) <= 0:
                raise ValidationError("Fluxonium needs {} > 0, got {}".format(k, getattr(self, k)))


class Fluxonium(Potential):
    """−E_J cos(φ + φ_ext) + ½E_L φ² on a truncated confining grid."""
    name = "fluxonium"

    def __init__(self, params, x_l=-3*np.pi, x_r=3*np.pi, xh_l=None, xh_r=None,
        bounds=(-np.inf, np.inf)):
        Potential.__init__(self, x_l, x_r, xh_l, xh_r, bounds,
            kinetic = 4*params.E_C,
            n_g     = params.n_g)
        self.params = params

    def base(self, x, t):
        p = self.params
        return -p.E_J*np.cos(x + p.phi_ext) + 0.5*p.E_L*np.asarray(x)**2

    def coupling(self, x):
        return -np.cos(x + self.params.phi_ext)

# Piecewise Custom ---------------------------------------------------------------------------------

class PiecewiseCustom(Potential):
    """Piecewise-linear profile through (breakpoints, values)."""
    name = "piecewise_custom"

    def __init__(self, breakpoints, values, x_l=None, x_r=None, xh_l=None, xh_r=None,
        bounds=(-np.inf, np.inf), coupling="uniform"):
        breakpoints = np.asarray(breakpoints, dtype=float)
        values      = np.asarray(values, dtype=float)
        if breakpoints.shape != values.shape or breakpoints.size < 2:
            raise ValidationError("piecewise_custom needs >= 2 matching breakpoints/values")
        if np.any(np.diff(breakpoints) <= 0):
            raise ValidationError("piecewise_custom breakpoints must increase")
        x_l = breakpoints[0]  if x_l is None else x_l
        x_r = breakpoints[-1] if x_r is None else x_r
        Potential.__init__(self, x_l, x_r, xh_l, xh_r, bounds)
        self.breakpoints = breakpoints
        self.values      = values
        self._coupling   = coupling_profiles[check_choice("coupling", coupling, list(coupling_profiles))]

    def base(self, x, t):
        return np.interp(x, self.breakpoints, self.values)

    def coupling(self, x):
        return self._coupling(x)

# Tail Condition -----------------------------------------------------------------------------------

@dataclass(frozen=True)
class TailReport:
    ok            : bool
    max_deviation : float
    periodic      : bool = False
    static        : bool = True

    def __bool__(self):
        return self.ok


def validate_tail_condition(pot, etas=(0.0,), times=(0.0,), offsets=(0.5, 1.0, 2.0, 5.0)):
    """Flatness of V on both tails over sampled (x, t, η); periodic potentials pass vacuously."""
    if pot.periodic:
        return TailReport(True, 0.0, periodic=True)
    offsets = np.asarray(offsets, dtype=float)
    dev = 0.0
    for t in times:
        for eta in etas:
            V_l, V_r = pot.tails(t, eta)
            dev = max(dev, np.max(np.abs(pot(pot.x_l - offsets, t, eta) - V_l)))
            dev = max(dev, np.max(np.abs(pot(pot.x_r + offsets, t, eta) - V_r)))
    return TailReport(
        ok            = bool(dev < tolerances["tail"]),
        max_deviation = float(dev),
        static        = pot.static_tails(times, etas))

# Registry -----------------------------------------------------------------------------------------

def _harmonic_driven(x_l, x_r, m=0.5, omega=1.0, J_drive=0.0, corrected=True, **kwargs):
    return HarmonicDriven(DrivenOscillatorParams(x_l, x_r, m, omega, J_drive), corrected=corrected, **kwargs)

def _transmon(E_J, E_C=None, n_g=0.0, C_Sigma=None, **kwargs):
    return Transmon(TransmonParams(E_C, E_J, n_g, C_Sigma), **kwargs)

def _fluxonium(E_C, E_J, E_L, n_g=0.0, phi_ext=0.0, **kwargs):
    return Fluxonium(FluxoniumParams(E_C, E_J, E_L, n_g, phi_ext), **kwargs)

potentials = {
    "harmonic_driven":  _harmonic_driven,
    "transmon":         _transmon,
    "fluxonium":        _fluxonium,
    "piecewise_custom": PiecewiseCustom,
}


def make_potential(name, **params):
    check_choice("potential", name, potential_names)
    if "bounds" in params:
        params["bounds"] = tuple(params["bounds"])
    try:
        return potentials[name](**params)
    except TypeError as e:
        raise ValidationError("Invalid parameters for potential {}: {}".format(name, e))
