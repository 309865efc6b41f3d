#
# This file is part of LiteQOC.
#
# Copyright (c) 2024-2026 LiteQOC Developers
# SPDX-License-Identifier: BSD-2-Clause

import numpy as np

from liteqoc.common import *
from liteqoc.core.spectral import FourierSeries

# Control Parametrization --------------------------------------------------------------------------

class ControlParametrization:
    """Linear map params -> η(t) on [0, T].

    piecewise_constant(n): η(t) = p[floor(n·t/T)], n parameters.
    truncated_fourier(K):  p = (a_0, a_1..a_K, b_1..b_K), c_k = a_k + i·b_k, c_{-k} = conj(c_k),
                           η(t) = Σ_k c_k e^{2πikt/T}; 2K+1 parameters.
    """
    def __init__(self, kind, dims, T, lo, hi, profile="global"):
        check_choice("control kind", kind, control_kinds)
        check_choice("control profile", profile, ["global", "windowed"])
        if T <= 0:
            raise ValidationError("Control horizon T must be > 0, got {}".format(T))
        if kind == "piecewise_constant" and dims < 1:
            raise ValidationError("piecewise_constant needs n_intervals >= 1, got {}".format(dims))
        if kind == "truncated_fourier" and dims < 0:
            raise ValidationError("truncated_fourier needs K >= 0, got {}".format(dims))
        self.kind     = kind
        self.dims     = int(dims)
        self.T        = float(T)
        self.profile  = profile
        n = self.n_params
        self.lo = np.broadcast_to(np.asarray(lo, dtype=float), (n,)).copy()
        self.hi = np.broadcast_to(np.asarray(hi, dtype=float), (n,)).copy()
        if np.any(self.lo > self.hi):
            raise ValidationError("Empty bounds interval: lo={} hi={}".format(self.lo, self.hi))

    def __repr__(self):
        return "ControlParametrization({}, {}, T={})".format(self.kind, self.dims, self.T)

    @property
    def n_params(self):
        if self.kind == "piecewise_constant":
            return self.dims
        return 2*self.dims + 1

    @property
    def bounds(self):
        return self.lo, self.hi

    def design_matrix(self, times):
        times = np.atleast_1d(np.asarray(times, dtype=float))
        if self.kind == "piecewise_constant":
            n   = self.dims
            idx = np.clip(np.floor(times/self.T*n).astype(int), 0, n - 1)
            G   = np.zeros((times.size, n))
            G[np.arange(times.size), idx] = 1.0
            return G
        K  = self.dims
        k  = np.arange(1, K + 1)
        ph = 2*np.pi*np.outer(times, k)/self.T
        return np.hstack([np.ones((times.size, 1)), 2*np.cos(ph), -2*np.sin(ph)])

    def sample(self, params, t):
        t   = np.asarray(t, dtype=float)
        out = self.design_matrix(t.ravel()) @ np.asarray(params, dtype=float)
        return out.reshape(t.shape)

    def fourier_series(self, params):
        if self.kind != "truncated_fourier":
            raise ValidationError("fourier_series needs a truncated_fourier parametrization")
        K  = self.dims
        a0 = params[0]
        c  = np.asarray(params[1:K + 1]) + 1j*np.asarray(params[K + 1:])
        return FourierSeries(np.concatenate([np.conj(c[::-1]), [a0], c]), self.T)

    def initial(self, seed=None):
        return initial_params(self.bounds, seed)


class ControlBlocks:
    """One parametrization per control channel, parameters stacked channel by channel."""
    def __init__(self, par, channels):
        if channels < 1:
            raise ValidationError("ControlBlocks needs >= 1 channel, got {}".format(channels))
        self.par      = par
        self.channels = int(channels)
        self.lo       = np.tile(par.lo, channels)
        self.hi       = np.tile(par.hi, channels)

    def __repr__(self):
        return "ControlBlocks({}, channels={})".format(self.par, self.channels)

    @property
    def kind(self):
        return self.par.kind

    @property
    def T(self):
        return self.par.T

    @property
    def n_params(self):
        return self.channels*self.par.n_params

    @property
    def bounds(self):
        return self.lo, self.hi

    def split(self, params):
        return np.asarray(params, dtype=float).reshape(self.channels, self.par.n_params)

    def initial(self, seed=None):
        return initial_params(self.bounds, seed)


def initial_params(bounds, seed=None):
    """Zero control (projected), or seeded uniform draw in the central 10% of the bounds."""
    lo, hi = bounds
    if seed is None:
        return project(np.zeros(len(lo)), bounds)
    rng    = np.random.default_rng(seed)
    finite = np.isfinite(lo) & np.isfinite(hi)
    mid    = np.where(finite, (lo + hi)/2, 0.0)
    half   = np.where(finite, 0.05*(hi - lo), 0.1)
    return project(rng.uniform(mid - half, mid + half), bounds)


def parametrize(kind, dims, bounds=(-np.inf, np.inf), T=1.0, profile="global"):
    lo, hi = bounds
    return ControlParametrization(kind, dims, T, lo, hi, profile)


def project(params, bounds):
    lo, hi = bounds
    return np.clip(np.asarray(params, dtype=float), lo, hi)

# Control Signal -----------------------------------------------------------------------------------

class ControlSignal:
    def __init__(self, par, params):
        params = np.asarray(params, dtype=float)
        if params.shape != (par.n_params,):
            raise ValidationError("Control needs {} parameters, got {}".format(par.n_params, params.shape))
        self.par    = par
        self.params = params

    def __repr__(self):
        return "ControlSignal({}, {})".format(self.par.kind, self.params)

    @property
    def kind(self):
        return self.par.kind

    @property
    def bounds(self):
        return self.par.bounds

    def __call__(self, t):
        return self.par.sample(self.params, t)

    def step_values(self, T, N):
        """η at the step midpoints (n + ½)·T/N."""
        return self(T/N*(np.arange(N) + 0.5))

    @classmethod
    def constant(cls, value, T=1.0):
        return cls(parametrize("piecewise_constant", 1, T=T), [value])

    @classmethod
    def zero(cls, T=1.0):
        return cls.constant(0.0, T)
