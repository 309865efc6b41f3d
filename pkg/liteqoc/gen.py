#!/usr/bin/env python3

#
# This file is part of LiteQOC.
#
# Copyright (c) 2024-2026 LiteQOC Developers
# SPDX-License-Identifier: BSD-2-Clause

"""
LiteQOC standalone runner

LiteQOC aims to be directly used as a python package. However, for some use cases it is more
convenient to drive a run from a configuration file:
- reproducible runs (config + seed echoed in every artifact).
- batch studies from shell scripts.
- plot-ready CSV outputs without writing code.

The run is described by a JSON configuration file (files not ending in .json are read as YAML).
Energies are in ħ = 2m = 1 units; transmon/fluxonium energies can be given in another unit with
`potential.energy_scale` (multiplies E_C, E_J, E_L).

Modes:
- solve:     optimize the control, write results.json, control.csv, iterations.csv.
- gradcheck: adjoint vs finite-difference gradient report.
- spectrum:  lowest levels (plus transmon asymptotic formula) to spectrum.csv.
- simulate:  evolve a given control, write snapshots and the reflection measure.
"""

import os
import json
import copy
import logging
import argparse
from dataclasses import dataclass

import yaml
import numpy as np

from liteqoc.common import *
from liteqoc.common import __version__
from liteqoc.core.grid import make_grid, make_periodic_grid, gaussian_packet, norm
from liteqoc.core.potentials import make_potential
from liteqoc.core.control import ControlSignal, parametrize
from liteqoc.core.tbc import exterior_reconstruct, reflection_measure
from liteqoc.core.propagator import evolve
from liteqoc.core.magnus import FiniteLevelSystem, two_level
from liteqoc.core.eigen import hamiltonian_matrix, eigenstates, level_table
from liteqoc.frontend.problem import CostSpec, ProblemSpec, MagnusProblem, gradcheck
from liteqoc.frontend.optimizer import OptOptions, optimize, multistart
from liteqoc.frontend.targets import (even_superposition, apply_qft, tensor_product_state,
    frqi_encode, frqi_from_grayscale, load_grayscale, superposition_target, qubit_to_wavefunction)

logger = logging.getLogger(__name__)

# Defaults -----------------------------------------------------------------------------------------

defaults = {
    "mode":      "solve",
    "seed":      None,
    "system":    "schrodinger",
    "grid":      {"x_l": -10.0, "x_r": 10.0, "J": 256},
    "potential": {"name": "harmonic_driven", "params": {}, "energy_scale": 1.0},
    "initial":   {"kind": "eigenstate", "n": 0},
    "target":    {"kind": "eigenstate", "n": 1},
    "T":         1.0,
    "N":         200,
    "bc":        None,
    "cost":      {"alpha": 1.0, "beta": 0.0, "p": 2, "q": 2, "mu": "abs", "terminal": "l2"},
    "control":   {"kind": "piecewise_constant", "dims": 16, "bounds": [-10.0, 10.0], "profile": "global"},
    "optimizer": {"method": "gd_armijo", "max_iter": 100, "tol": 1e-6, "m": 10, "continuation": [], "multistart": 1},
    "output":    {"dir": "out", "stride": 10, "snapshots": False, "dump_kernels": False},
    "spectrum":  {"levels": 6},
    "gradcheck": {"eps": [1e-3, 1e-4, 1e-5], "params": None},
    "simulate":  {"params": None, "t_exit": None, "exterior": None},
    "finite_level": {"omega_q": 0.0, "controls": ["x"], "H0": None, "H_controls": None, "steps": 100, "order": 2},
}

state_kinds = ["gaussian", "eigenstate", "superposition", "amplitudes", "basis",
    "even_superposition", "qft_even", "tensor_product", "frqi"]
systems = ["schrodinger", "finite_level"]

# Config -------------------------------------------------------------------------------------------

@dataclass
class RunConfig:
    mode   : str
    seed   : int
    system : str
    config : dict
    out    : str
    path   : str = None

    def __getitem__(self, k):
        return self.config[k]


def _convert(v):
    # Convert YAML string literals to Python.
    if isinstance(v, dict):
        return {k: _convert(x) for k, x in v.items()}
    if isinstance(v, list):
        return [_convert(x) for x in v]
    replaces = {"False": False, "True": True, "None": None}
    if isinstance(v, str) and v in replaces:
        return replaces[v]
    return v


def _merge(base, user):
    out = copy.deepcopy(base)
    for k, v in user.items():
        if isinstance(v, dict) and isinstance(out.get(k), dict) and k not in ("params",):
            out[k] = _merge(out[k], v)
        else:
            out[k] = v
    return out


def _complex(v):
    if isinstance(v, (list, tuple)):
        return complex(v[0], v[1])
    return complex(v)


def _matrix(m):
    return np.array([[_complex(v) for v in row] for row in m])


def _real(v):
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _positive(v):
    return _real(v) and v > 0


def _validate(c):
    errors = []

    def check(cond, msg):
        if not cond:
            errors.append(msg)

    def number(section, key, lo=None, strict=False, integer=False):
        v = c[section][key] if key is not None else c[section]
        name = section if key is None else "{}.{}".format(section, key)
        if not isinstance(v, (int, float)) or isinstance(v, bool) or (integer and int(v) != v):
            errors.append("{}: expected {}, got {!r}".format(name, "integer" if integer else "number", v))
            return
        if lo is not None and (v <= lo if strict else v < lo):
            errors.append("{}: must be {} {}, got {}".format(name, ">" if strict else ">=", lo, v))

    check(c["mode"] in modes, "mode: unsupported {!r} (registered: {})".format(c["mode"], ", ".join(modes)))
    check(c["system"] in systems, "system: unsupported {!r} (registered: {})".format(c["system"], ", ".join(systems)))
    check(c["seed"] is None or (isinstance(c["seed"], int) and c["seed"] >= 0), "seed: must be a non-negative integer")
    number("T", None, 0, strict=True)
    number("N", None, 1, integer=True)
    ctrl = c["control"]
    check(ctrl["kind"] in control_kinds, "control.kind: unsupported {!r} (registered: {})".format(
        ctrl["kind"], ", ".join(control_kinds)))
    number("control", "dims", 0, integer=True)
    if ctrl["kind"] == "piecewise_constant":
        check(isinstance(ctrl["dims"], int) and ctrl["dims"] >= 1, "control.dims: piecewise_constant needs >= 1")
    b = ctrl["bounds"]
    bounds_ok = isinstance(b, list) and len(b) == 2 and all(_real(v) for v in b) and b[0] <= b[1]
    check(bounds_ok, "control.bounds: need [lo, hi] with lo <= hi, got {!r}".format(b))
    check(ctrl["profile"] in ("global", "windowed"), "control.profile: must be global or windowed")
    cost  = c["cost"]
    n_err = len(errors)
    number("cost", "alpha", 0)
    number("cost", "beta", 0)
    number("cost", "p", 1, integer=True)
    number("cost", "q", 1, integer=True)
    check(cost["terminal"] in terminal_kinds, "cost.terminal: unsupported {!r} (registered: {})".format(
        cost["terminal"], ", ".join(terminal_kinds)))
    if len(errors) == n_err:
        try:
            CostSpec(**cost)
        except (ValidationError, TypeError) as e:
            errors.append("cost: {}".format(e))
    opt = c["optimizer"]
    check(opt["method"] in opt_methods, "optimizer.method: unsupported {!r} (registered: {})".format(
        opt["method"], ", ".join(opt_methods)))
    number("optimizer", "max_iter", 0, integer=True)
    number("optimizer", "tol", 0, strict=True)
    number("optimizer", "multistart", 1, integer=True)
    number("output", "stride", 1, integer=True)
    eps = c["gradcheck"]["eps"]
    check(isinstance(eps, list) and len(eps) > 0 and all(_positive(e) for e in eps),
        "gradcheck.eps: need a non-empty list of numbers > 0, got {!r}".format(eps))
    for section in ("gradcheck", "simulate"):
        p = c[section]["params"]
        check(p is None or (isinstance(p, list) and all(_real(v) for v in p)),
            "{}.params: need null or a list of numbers, got {!r}".format(section, p))
    t_exit = c["simulate"]["t_exit"]
    check(t_exit is None or _positive(t_exit), "simulate.t_exit: need null or a number > 0, got {!r}".format(t_exit))
    for key in ("initial", "target"):
        kind = c[key].get("kind")
        check(kind in state_kinds, "{}.kind: unsupported {!r} (registered: {})".format(key, kind, ", ".join(state_kinds)))
        image = c[key].get("image")
        if kind == "frqi" and image is not None:
            check(os.path.isfile(image), "{}.image: file not found: {}".format(key, image))
    if c["system"] == "schrodinger":
        pot = c["potential"]
        check(pot["name"] in potential_names, "potential.name: unsupported {!r} (registered: {})".format(
            pot["name"], ", ".join(potential_names)))
        n_err = len(errors)
        number("grid", "J", 3, integer=True)
        g = c["grid"]
        if pot["name"] != "transmon":
            check(_real(g["x_l"]) and _real(g["x_r"]) and g["x_l"] < g["x_r"],
                "grid: need x_l < x_r, got [{}, {}]".format(g["x_l"], g["x_r"]))
        if len(errors) == n_err and pot["name"] in potential_names and bounds_ok:
            try:
                build_potential(c)
            except (ValueError, TypeError) as e:
                errors.append("potential.params: {}".format(e))
        if c["bc"] is not None:
            check(c["bc"] in bc_kinds, "bc: unsupported {!r} (registered: {})".format(c["bc"], ", ".join(bc_kinds)))
            if pot["name"] == "transmon":
                check(c["bc"] == "periodic", "bc: transmon needs periodic, got {!r}".format(c["bc"]))
        number("spectrum", "levels", 1, integer=True)
    else:
        fl = c["finite_level"]
        number("finite_level", "steps", 1, integer=True)
        check(fl["order"] in (1, 2), "finite_level.order: must be 1 or 2, got {!r}".format(fl["order"]))
        check(c["mode"] in ("solve", "gradcheck"), "mode: {} needs system schrodinger".format(c["mode"]))
    return errors


def load_config(path, mode=None, seed=None, out=None):
    """Read, default and validate a run configuration; all problems are reported at once."""
    try:
        with open(path) as f:
            # YAML 1.1 reads 1e-8 as a string: JSON files go through json.
            user = json.load(f) if path.endswith(".json") else yaml.safe_load(f)
    except (OSError, ValueError, yaml.YAMLError) as e:
        raise ConfigError(["config: cannot read {}: {}".format(path, e)])
    if not isinstance(user, dict):
        raise ConfigError(["config: top level must be an object"])
    unknown = [k for k in user if k not in defaults]
    c = _merge(defaults, _convert(user))
    if mode is not None:
        c["mode"] = mode
    if seed is not None:
        c["seed"] = seed
    if out is not None:
        c["output"]["dir"] = out
    errors = ["{}: unknown field".format(k) for k in unknown]
    try:
        errors += _validate(c)
    except (KeyError, TypeError) as e:
        errors.append("config: malformed section ({})".format(e))
    if errors:
        raise ConfigError(errors)
    return RunConfig(c["mode"], c["seed"], c["system"], c, c["output"]["dir"], path)

# Builders -----------------------------------------------------------------------------------------

def build_potential(cfg):
    p      = cfg["potential"]
    params = dict(p["params"])
    if p["name"] in ("transmon", "fluxonium"):
        for k in ("E_C", "E_J", "E_L"):
            if params.get(k) is not None:
                params[k] = params[k]*p["energy_scale"]
    if p["name"] in ("harmonic_driven", "fluxonium"):
        params.setdefault("x_l", cfg["grid"]["x_l"])
        params.setdefault("x_r", cfg["grid"]["x_r"])
    params.setdefault("bounds", cfg["control"]["bounds"])
    return make_potential(p["name"], **params)


def build_grid(cfg, pot):
    g = cfg["grid"]
    if pot.periodic:
        return make_periodic_grid(g["J"])
    return make_grid(g["x_l"], g["x_r"], g["J"])


def bc_of(cfg, pot):
    if cfg["bc"] is not None:
        return cfg["bc"]
    return "periodic" if pot.periodic else "dirichlet"


def build_par(cfg, T):
    c = cfg["control"]
    return parametrize(c["kind"], c["dims"], tuple(c["bounds"]), T, c["profile"])


def _qubit_state(desc):
    kind = desc["kind"]
    if kind == "even_superposition":
        return even_superposition(desc["n_qubits"])
    if kind == "qft_even":
        return apply_qft(even_superposition(desc["n_qubits"]))
    if kind == "tensor_product":
        return tensor_product_state([(_complex(a), _complex(b)) for a, b in desc["pairs"]])
    if kind == "frqi":
        img = load_grayscale(desc["image"]) if desc.get("image") else frqi_from_grayscale(desc["pixels"])
        return frqi_encode(img)
    return None


def _basis(pot, grid, k):
    bc = "periodic" if grid.periodic else "dirichlet"
    return eigenstates(hamiltonian_matrix(pot, grid, bc), k)


def build_state(desc, pot, grid):
    kind = desc["kind"]
    if kind == "gaussian":
        return gaussian_packet(grid, desc.get("x0", 0.0), desc.get("sigma", 1.0), desc.get("k0", 0.0))
    if kind == "eigenstate":
        return _basis(pot, grid, desc["n"] + 1).states[desc["n"]]
    if kind == "superposition":
        coeffs = [_complex(v) for v in desc["coeffs"]]
        return superposition_target(coeffs, _basis(pot, grid, len(coeffs)))
    state = _qubit_state(desc)
    if state is None:
        raise ValidationError("{}: unsupported for system schrodinger".format(kind))
    return qubit_to_wavefunction(state, _basis(pot, grid, len(state)))


def build_vector(desc, d):
    kind = desc["kind"]
    if kind == "basis":
        v = np.zeros(d, dtype=complex)
        v[desc["n"]] = 1
        return v
    if kind == "amplitudes":
        v = np.array([_complex(a) for a in desc["values"]])
    else:
        state = _qubit_state(desc)
        if state is None:
            raise ValidationError("{}: unsupported for system finite_level".format(kind))
        v = np.asarray(state.amplitudes)
    if v.shape != (d,):
        raise ValidationError("{}: needs {} amplitudes, got {}".format(kind, d, v.shape))
    return v


def build_system(cfg):
    fl = cfg["finite_level"]
    if fl["H0"] is not None:
        return FiniteLevelSystem(_matrix(fl["H0"]), [_matrix(m) for m in (fl["H_controls"] or [])])
    return two_level(fl["omega_q"], tuple(fl["controls"]))


def build_problem(cfg):
    cost = CostSpec(**cfg["cost"])
    T    = float(cfg["T"])
    par  = build_par(cfg, T)
    if cfg.system == "finite_level":
        sys = build_system(cfg)
        fl  = cfg["finite_level"]
        return MagnusProblem(sys, par, build_vector(cfg["initial"], sys.d), build_vector(cfg["target"], sys.d),
            T, fl["steps"], cost, fl["order"])
    pot  = build_potential(cfg)
    grid = build_grid(cfg, pot)
    return ProblemSpec(grid, pot,
        psi_ini = build_state(cfg["initial"], pot, grid),
        target  = build_state(cfg["target"], pot, grid),
        T       = T,
        N       = cfg["N"],
        cost    = cost,
        bc      = bc_of(cfg, pot),
        par     = par)

# Artifacts ----------------------------------------------------------------------------------------

def _out_dir(cfg):
    os.makedirs(cfg.out, exist_ok=True)
    return cfg.out


def write_json(path, data):
    with open(path, "w") as f:
        json.dump(data, f, indent=2, sort_keys=True)


def results_record(cfg, result=None, partial=False, termination=None):
    return {
        "schema_version": schema_version,
        "version":        __version__,
        "mode":           cfg.mode,
        "seed":           cfg.seed,
        "final_cost":     None if result is None else result.cost,
        "fidelity":       None if result is None else result.fidelity,
        "iterations":     0 if result is None else result.iterations,
        "termination":    termination if result is None else result.termination,
        "partial":        partial,
        "best_params":    None if result is None else [float(p) for p in result.params],
        "config":         cfg.config,
    }


def write_control_csv(path, problem, params, cfg):
    if isinstance(problem, MagnusProblem):
        blocks = problem.par.split(params)
        n      = problem.steps
        t      = problem.T/n*(np.arange(n) + 0.5)
        cols   = [problem.par.par.sample(b, t) for b in blocks]
        names  = ["t"] + ["eta_{}".format(j) for j in range(len(cols))]
    else:
        t     = problem.step_times
        cols  = [problem.par.sample(params, t)]
        names = ["t", "eta"]
    write_csv(path, names, np.column_stack([t] + cols), cfg.config)

# Runs ---------------------------------------------------------------------------------------------

def run_solve(cfg):
    out     = _out_dir(cfg)
    problem = build_problem(cfg)
    o       = cfg["optimizer"]
    opts    = OptOptions(
        max_iter     = o["max_iter"],
        tol          = o["tol"],
        method       = o["method"],
        m            = o["m"],
        seed         = cfg.seed,
        continuation = tuple(o["continuation"]))
    try:
        if o["multistart"] > 1:
            base   = 0 if cfg.seed is None else cfg.seed
            result = multistart(problem, opts=opts, seeds=[base + k for k in range(o["multistart"])])
        else:
            result = optimize(problem, opts=opts)
    except NumericalError as e:
        logger.error("optimizer aborted: {}".format(e))
        write_json(os.path.join(out, "results.json"), results_record(cfg, partial=True, termination="numerical_error"))
        return exit_codes["numerical"]
    write_json(os.path.join(out, "results.json"), results_record(cfg, result))
    write_control_csv(os.path.join(out, "control.csv"), problem, result.params, cfg)
    result.write_iterations_csv(os.path.join(out, "iterations.csv"), cfg.config)
    if cfg["output"]["snapshots"] and isinstance(problem, ProblemSpec):
        traj = evolve(problem.psi_ini, problem.potential, problem.control(result.params),
            problem.T, problem.N, problem.bc)
        traj.write_snapshots_csv(os.path.join(out, "snapshots.csv"), cfg["output"]["stride"], cfg.config)
    logger.info("solve: cost={:.6g} fidelity={:.6f} ({})".format(result.cost, result.fidelity, result.termination))
    return exit_codes["success"]


def run_gradcheck(cfg):
    out     = _out_dir(cfg)
    problem = build_problem(cfg)
    g       = cfg["gradcheck"]
    params  = problem.par.initial(0 if cfg.seed is None else cfg.seed) if g["params"] is None else np.asarray(g["params"], dtype=float)
    report  = gradcheck(problem, params, tuple(g["eps"]))
    report.update({"schema_version": schema_version, "version": __version__, "seed": cfg.seed, "config": cfg.config})
    write_json(os.path.join(out, "gradcheck.json"), report)
    logger.info("gradcheck: max relative error {:.3g} at eps={}".format(report["max_rel_error"], report["best_eps"]))
    return exit_codes["success"] if report["passed"] else exit_codes["gradcheck"]


def run_spectrum(cfg):
    out    = _out_dir(cfg)
    pot    = build_potential(cfg)
    grid   = build_grid(cfg, pot)
    levels = cfg["spectrum"]["levels"]
    basis  = _basis(pot, grid, levels)
    names, rows = level_table(basis, pot, levels)
    write_csv(os.path.join(out, "spectrum.csv"), names, rows, cfg.config)
    logger.info("spectrum: {} levels, E_0={:.6g}".format(levels, basis.energies[0]))
    return exit_codes["success"]


def run_simulate(cfg):
    out   = _out_dir(cfg)
    pot   = build_potential(cfg)
    grid  = build_grid(cfg, pot)
    bc    = bc_of(cfg, pot)
    T, N  = float(cfg["T"]), cfg["N"]
    par   = build_par(cfg, T)
    s     = cfg["simulate"]
    eta   = ControlSignal(par, par.initial() if s["params"] is None else s["params"])
    psi0  = build_state(cfg["initial"], pot, grid)
    traj  = evolve(psi0, pot, eta, T, N, bc)
    traj.write_snapshots_csv(os.path.join(out, "snapshots.csv"), cfg["output"]["stride"], cfg.config)
    t_exit  = T if s["t_exit"] is None else s["t_exit"]
    summary = {
        "schema_version": schema_version,
        "version":        __version__,
        "mode":           cfg.mode,
        "seed":           cfg.seed,
        "reflection":     reflection_measure(traj, t_exit),
        "final_norm":     norm(traj.final),
        "config":         cfg.config,
    }
    ext = s["exterior"]
    if ext is not None:
        if bc != "tbc":
            raise ValidationError("simulate.exterior needs bc tbc, got {}".format(bc))
        side     = ext.get("side", "right")
        V_c      = pot.V_r if side == "right" else pot.V_l
        s_grid   = [_complex(v) for v in ext["s"]]
        samples  = exterior_reconstruct(traj.trace(side), ext["x"], V_c, s_grid)
        write_csv(os.path.join(out, "exterior.csv"), ["s_re", "s_im", "re", "im"],
            [[p.s.real, p.s.imag, p.value.real, p.value.imag] for p in samples], cfg.config)
    if cfg["output"]["dump_kernels"] and traj.kernels is not None:
        for k in traj.kernels:
            k.write_csv(os.path.join(out, "kernel_{}.csv".format(k.side)), cfg.config)
    write_json(os.path.join(out, "simulate.json"), summary)
    logger.info("simulate: reflection={:.3g} at t={}".format(summary["reflection"], t_exit))
    return exit_codes["success"]


runners = {
    "solve":     run_solve,
    "gradcheck": run_gradcheck,
    "spectrum":  run_spectrum,
    "simulate":  run_simulate,
}

# Main ---------------------------------------------------------------------------------------------

def main(argv=None):
    parser = argparse.ArgumentParser(description="LiteQOC standalone runner")
    parser.add_argument("--debug", action="store_true", help="Enable debug logging")
    sub = parser.add_subparsers(dest="mode", required=True)
    for mode in modes:
        p = sub.add_parser(mode)
        p.add_argument("--config", required=True, help="JSON (or YAML) config file")
        p.add_argument("--out",    default=None,  help="Output directory")
        p.add_argument("--seed",   default=None,  type=int, help="Random seed")
    args = parser.parse_args(argv)
    setup_logging(args.debug)

    try:
        cfg = load_config(args.config, mode=args.mode, seed=args.seed, out=args.out)
        return runners[cfg.mode](cfg)
    except ConfigError as e:
        for error in e.errors:
            logger.error(error)
        return exit_codes["validation"]
    except ValidationError as e:
        logger.error(str(e))
        return exit_codes["validation"]
    except NumericalError as e:
        logger.error(str(e))
        return exit_codes["numerical"]

if __name__ == "__main__":
    raise SystemExit(main())
