#
# This file is part of LiteQOC.
#
# Copyright (c) 2024-2026 LiteQOC Developers
# SPDX-License-Identifier: BSD-2-Clause

import copy
import logging
import dataclasses
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.optimize

from liteqoc.common import *
from liteqoc.core.control import project

logger = logging.getLogger(__name__)

iteration_columns = ["iter", "cost", "grad_norm", "step_size", "fidelity"]

# Options / Result ---------------------------------------------------------------------------------

@dataclass(frozen=True)
class OptOptions:
    max_iter       : int   = 100
    tol            : float = 1e-6
    method         : str   = "gd_armijo"
    m              : int   = 10     # L-BFGS memory.
    step0          : float = 1.0
    armijo         : float = 1e-4
    max_backtracks : int   = 40
    seed           : int   = None
    continuation   : tuple = ()     # α multipliers, applied in order.

    def __post_init__(self):
        check_choice("optimizer method", self.method, opt_methods)
        if self.max_iter < 0:
            raise ValidationError("max_iter must be >= 0, got {}".format(self.max_iter))
        if self.tol <= 0:
            raise ValidationError("tol must be > 0, got {}".format(self.tol))
        if self.m < 1:
            raise ValidationError("L-BFGS memory must be >= 1, got {}".format(self.m))
        if any(c <= 0 for c in self.continuation):
            raise ValidationError("Continuation multipliers must be > 0, got {}".format(self.continuation))


@dataclass
class OptResult:
    params      : np.ndarray
    cost        : float
    fidelity    : float
    iterations  : int
    termination : str
    history     : list = field(default_factory=list)
    seed        : int  = None
    partial     : bool = False

    @property
    def cost_history(self):
        return [row["cost"] for row in self.history]

    def iteration_rows(self):
        return np.array([[row[c] for c in iteration_columns] for row in self.history]).reshape(-1, len(iteration_columns))

    def write_iterations_csv(self, path, config=None):
        write_csv(path, iteration_columns, self.iteration_rows(), config)

# Helpers ------------------------------------------------------------------------------------------

def _check_value(value, params):
    if not np.isfinite(value):
        raise NumericalError("NaN cost at parameters {}".format(params))
    return value


def projected_gradient_norm(x, g, bounds):
    return float(np.linalg.norm(x - project(x - g, bounds)))


def _with_alpha(problem, factor):
    out = copy.copy(problem)
    out.cost_spec = dataclasses.replace(problem.cost_spec, alpha=problem.cost_spec.alpha*factor)
    return out


def _row(it, value, gnorm, step, fid):
    return {"iter": it, "cost": float(value), "grad_norm": float(gnorm), "step_size": float(step), "fidelity": float(fid)}

# Projected Gradient / Armijo ----------------------------------------------------------------------

def _gd_armijo(problem, x, opts, bounds):
    value, g = problem.evaluate(x)
    _check_value(value, x)
    step    = opts.step0
    history = [_row(0, value, projected_gradient_norm(x, g, bounds), 0.0, problem.fidelity(x))]
    for it in range(1, opts.max_iter + 1):
        if projected_gradient_norm(x, g, bounds) < opts.tol:
            return x, value, history, "gradient_tolerance"
        for _ in range(opts.max_backtracks):
            x_new  = project(x - step*g, bounds)
            v_new  = _check_value(problem.cost(x_new), x_new)
            if v_new <= value + opts.armijo*np.dot(g, x_new - x):
                break
            step /= 2
        else:
            return x, value, history, "line_search_failure"
        x     = x_new
        value, g = problem.evaluate(x)
        _check_value(value, x)
        history.append(_row(it, value, projected_gradient_norm(x, g, bounds), step, problem.fidelity(x)))
        logger.debug("iter {}: cost={:.6g} step={:.3g}".format(it, value, step))
        step  = min(2*step, 1e8)
    if projected_gradient_norm(x, g, bounds) < opts.tol:
        return x, value, history, "gradient_tolerance"
    return x, value, history, "max_iter"

# L-BFGS-B -----------------------------------------------------------------------------------------

def _lbfgs(problem, x, opts, bounds):
    cache = {}

    def fun(p):
        value, g = problem.evaluate(p)
        _check_value(value, p)
        cache[p.tobytes()] = (value, g)
        return value, g

    value, g = fun(x)
    history  = [_row(0, value, projected_gradient_norm(x, g, bounds), 0.0, problem.fidelity(x))]
    state    = {"x": x}

    def callback(p):
        v, gp = cache[p.tobytes()] if p.tobytes() in cache else fun(p)
        history.append(_row(len(history), v, projected_gradient_norm(p, gp, bounds),
            float(np.linalg.norm(p - state["x"])), problem.fidelity(p)))
        state["x"] = p.copy()

    lo, hi = bounds
    res = scipy.optimize.minimize(fun, x, jac=True, method="L-BFGS-B", callback=callback,
        bounds  = [(None if np.isinf(l) else l, None if np.isinf(h) else h) for l, h in zip(lo, hi)],
        options = {"maxiter": opts.max_iter, "maxcor": opts.m, "gtol": opts.tol, "ftol": 1e-15})
    x = project(res.x, bounds)
    value, g = cache[x.tobytes()] if x.tobytes() in cache else fun(x)
    if projected_gradient_norm(x, g, bounds) < opts.tol:
        reason = "gradient_tolerance"
    elif res.nit >= opts.max_iter:
        reason = "max_iter"
    else:
        reason = "line_search_failure" if not res.success else "converged"
    return x, value, history, reason

# Optimize -----------------------------------------------------------------------------------------

def optimize(problem, par=None, opts=None, x0=None):
    """Minimize problem.cost over the box of `par` (problem.par by default)."""
    opts   = OptOptions() if opts is None else opts
    par    = problem.par if par is None else par
    bounds = par.bounds
    x      = project(par.initial(opts.seed) if x0 is None else x0, bounds)
    run    = _gd_armijo if opts.method == "gd_armijo" else _lbfgs
    stages = list(opts.continuation) or [1.0]
    for i, factor in enumerate(stages):
        staged = problem if factor == 1.0 else _with_alpha(problem, factor)
        x, value, history, reason = run(staged, x, opts, bounds)
        logger.info("stage {}/{} (alpha x{}): cost={:.6g} after {} iterations ({})".format(
            i + 1, len(stages), factor, value, len(history) - 1, reason))
    if stages[-1] != 1.0:
        value = _check_value(problem.cost(x), x)
    return OptResult(
        params      = x,
        cost        = float(value),
        fidelity    = float(problem.fidelity(x)),
        iterations  = len(history) - 1,
        termination = reason,
        history     = history,
        seed        = opts.seed)


def multistart(problem, par=None, opts=None, seeds=(0, 1, 2, 3), workers=None):
    """Independent seeded runs; lowest final cost wins (ties: first seed)."""
    opts = OptOptions() if opts is None else opts
    if len(seeds) < 1:
        raise ValidationError("multistart needs at least one seed")

    def run(seed):
        return optimize(problem, par, dataclasses.replace(opts, seed=seed))

    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(run, seeds))
    return min(results, key=lambda r: r.cost)
