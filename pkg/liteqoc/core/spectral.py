#
# This file is part of LiteQOC.
#
# Copyright (c) 2024-2026 LiteQOC Developers
# SPDX-License-Identifier: BSD-2-Clause

"""
Frequency-domain algebra.

Fourier convention: coefficients c_k, k = -K..K, for the basis e^{+2πikt/T}. Coefficient arrays
are stored with index k at position k + K. Convolutions keep their full (enlarged) support.
"""

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.integrate

from liteqoc.common import *

logger = logging.getLogger(__name__)

# Time Signal --------------------------------------------------------------------------------------

class TimeSignal:
    """Samples on a uniform time grid t0 + n·dt (first axis); extra axes are channels."""
    def __init__(self, values, dt, t0=0.0):
        if dt <= 0:
            raise ValidationError("TimeSignal dt must be > 0, got {}".format(dt))
        self.values = np.asarray(values)
        self.dt     = float(dt)
        self.t0     = float(t0)

    def __len__(self):
        return self.values.shape[0]

    @property
    def times(self):
        return self.t0 + self.dt*np.arange(len(self))

    @property
    def t_max(self):
        return self.t0 + self.dt*(len(self) - 1)

# Laplace ------------------------------------------------------------------------------------------

@dataclass(frozen=True)
class LaplaceSample:
    s     : complex
    value : complex


def laplace_transform(f, s_values, compact=False):
    """Simpson quadrature of ∫ f(t)e^{-st}dt over the stored window, for every s (first axis)."""
    s_values = np.atleast_1d(np.asarray(s_values, dtype=complex))
    if not compact and np.any(s_values.real <= 0):
        raise NumericalError("Laplace quadrature diverges for Re(s) <= 0 on a non-compact signal")
    t     = f.times
    kern  = np.exp(-np.outer(s_values, t))
    shape = (len(s_values), len(t)) + (1,)*(f.values.ndim - 1)
    integrand = kern.reshape(shape)*f.values[np.newaxis]
    return scipy.integrate.simpson(integrand, dx=f.dt, axis=1)


def laplace_sample(f, s, compact=False):
    return complex(laplace_transform(f, [s], compact)[0])

# Fourier Series -----------------------------------------------------------------------------------

class FourierSeries:
    def __init__(self, coeffs, period=1.0):
        coeffs = np.array(coeffs, dtype=complex)
        if coeffs.ndim != 1 or coeffs.size % 2 != 1:
            raise ValidationError("Fourier coefficients need odd length, got {}".format(coeffs.shape))
        if period <= 0:
            raise ValidationError("Fourier period must be > 0, got {}".format(period))
        self.coeffs = coeffs
        self.period = float(period)

    def __repr__(self):
        return "FourierSeries(K={}, T={})".format(self.K, self.period)

    @property
    def K(self):
        return (self.coeffs.size - 1)//2

    @property
    def ks(self):
        return np.arange(-self.K, self.K + 1)

    def __getitem__(self, k):
        if abs(k) > self.K:
            return 0j
        return self.coeffs[k + self.K]

    def padded(self, K):
        if K < self.K:
            raise ValidationError("Cannot pad order {} down to {}".format(self.K, K))
        c = np.zeros(2*K + 1, dtype=complex)
        c[K - self.K:K + self.K + 1] = self.coeffs
        return FourierSeries(c, self.period)

    def __call__(self, t):
        return synthesize(self, t)


def _series(a, period=None):
    if isinstance(a, FourierSeries):
        return a
    return FourierSeries(a, 1.0 if period is None else period)


def _check_periods(a, b):
    if abs(a.period - b.period) > 1e-12*max(a.period, b.period):
        raise ValidationError("Period mismatch: {} vs {}".format(a.period, b.period))


def fourier_coeffs(samples, K, period=1.0):
    samples = np.asarray(samples)
    N = samples.size
    if N < 2*K + 1:
        logger.warning("Aliasing: {} samples for truncation order {} (need {})".format(N, K, 2*K + 1))
    c = np.fft.fft(samples)/N
    return FourierSeries(c[np.arange(-K, K + 1) % N], period)


def synthesize(fs, t):
    t = np.asarray(t, dtype=float)
    phase = np.exp(2j*np.pi*np.multiply.outer(t, fs.ks)/fs.period)
    return phase @ fs.coeffs

# Toeplitz Convolution -----------------------------------------------------------------------------

class ToeplitzConv:
    """M_α with (M_α)_{rs} = α_{r-s}."""
    def __init__(self, alpha):
        self.alpha = _series(alpha)

    def matrix(self, K_in):
        """Rows k = -(K_α+K_in)..K_α+K_in, columns j = -K_in..K_in."""
        K_a   = self.alpha.K
        K_out = K_a + K_in
        col   = np.array([self.alpha[m - K_a] for m in range(2*K_out + 1)])
        row   = np.array([self.alpha[-n - K_a] for n in range(2*K_in + 1)])
        return scipy.linalg.toeplitz(col, row)

    def apply(self, beta):
        beta = _series(beta, self.alpha.period)
        return toeplitz_convolve(self.alpha, beta)


def toeplitz_convolve(alpha, beta):
    raw = not isinstance(alpha, FourierSeries) and not isinstance(beta, FourierSeries)
    a = _series(alpha, getattr(beta, "period", None))
    b = _series(beta, a.period)
    _check_periods(a, b)
    out = FourierSeries(np.convolve(a.coeffs, b.coeffs), a.period)
    return out.coeffs if raw else out


def conv_power(alpha, p):
    if p < 1:
        raise ValidationError("conv_power needs p >= 1, got {}".format(p))
    a   = _series(alpha)
    out = a
    for _ in range(p - 1):
        out = toeplitz_convolve(out, a)
    return out if isinstance(alpha, FourierSeries) else out.coeffs


def plancherel_inner(f, g):
    _check_periods(f, g)
    K = max(f.K, g.K)
    return complex(np.sum(f.padded(K).coeffs*np.conj(g.padded(K).coeffs)))

# Polynomial Push-Forward --------------------------------------------------------------------------

def _add(a, b):
    K = max(a.K, b.K)
    return FourierSeries(a.padded(K).coeffs + b.padded(K).coeffs, a.period)


def _powers_sum(h, y, first):
    """Σ_{r >= first} h_r·y^{*(r-first+1)}; h[0] holds h_1."""
    acc  = None
    term = y
    for r in range(first, len(h) + 1):
        if r > first:
            term = toeplitz_convolve(term, y)
        c = h[r - 1]
        if c != 0:
            acc = FourierSeries(c*term.coeffs, y.period) if acc is None else _add(acc, FourierSeries(c*term.coeffs, y.period))
    return acc


def poly_pushforward(h, y):
    """Coefficients of t -> h(y(t)) for h(y) = Σ_{r>=1} h_r y^r."""
    if len(h) < 1:
        raise ValidationError("poly_pushforward needs at least h_1")
    g = _powers_sum(h, y, 1)
    return FourierSeries(np.zeros(1), y.period) if g is None else g


def time_average_poly(h, y):
    """(1/T)∫h(y(t))dt = h_1·ŷ_0 + ŷ^T·(Σ_{s>=2} h_s M_ŷ^{s-2})ŷ, with ŷ^T read as k -> ŷ_{-k}."""
    if len(h) < 1:
        raise ValidationError("time_average_poly needs at least h_1")
    value = h[0]*y[0]
    if len(h) >= 2:
        P = _powers_sum(h, y, 2)
        if P is not None:
            value += sum(y[-k]*P[k] for k in range(-min(y.K, P.K), min(y.K, P.K) + 1))
    return complex(value)

# Talbot Inversion ---------------------------------------------------------------------------------

class TalbotContour:
    """Fixed Talbot inversion at time t on the full parabola (complex-valued transforms).

    The transform is sampled at p_k - i·shift so that e^{i·shift·t}·f(t) is what gets inverted;
    choosing shift near the dominant frequency of f keeps the contour around its spectrum.
    """
    def __init__(self, t, M=32, r=None, shift=0.0):
        if t <= 0:
            raise ValidationError("Talbot inversion time must be > 0, got {}".format(t))
        if M < 2 or M % 2:
            raise ValidationError("Talbot node count must be even and >= 2, got {}".format(M))
        self.t     = float(t)
        self.M     = int(M)
        self.r     = M/5 if r is None else float(r)
        self.shift = float(shift)
        theta      = -np.pi + (np.arange(M) + 0.5)*2*np.pi/M
        cot        = 1/np.tan(theta)
        p          = self.r/self.t*(theta*cot + 1j*theta)
        sigma      = cot - theta/np.sin(theta)**2
        self._p       = p
        self.weights  = self.r/(M*self.t)*np.exp(p*self.t)*(1 - 1j*sigma)

    @property
    def nodes(self):
        return self._p - 1j*self.shift

    def invert(self, values):
        values = np.asarray(values)
        w      = self.weights.reshape((self.M,) + (1,)*(values.ndim - 1))
        out    = np.sum(w*values, axis=0)*np.exp(-1j*self.shift*self.t)
        if not np.all(np.isfinite(out)):
            raise NumericalError("Talbot inversion diverged at t={}".format(self.t))
        return out

# CSV ----------------------------------------------------------------------------------------------

def write_coeffs_csv(path, fs, config=None):
    write_csv(path, ["k", "re", "im"], np.column_stack([fs.ks, fs.coeffs.real, fs.coeffs.imag]), config)


def read_coeffs_csv(path, period=1.0):
    data = np.atleast_1d(read_csv(path))
    data = data[np.argsort(data["k"])]
    return FourierSeries(data["re"] + 1j*data["im"], period)
