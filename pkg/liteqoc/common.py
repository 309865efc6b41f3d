#
# This file is part of LiteQOC.
#
# Copyright (c) 2024-2026 LiteQOC Developers
# SPDX-License-Identifier: BSD-2-Clause

import json
import logging

import numpy as np

# Version ------------------------------------------------------------------------------------------

__version__    = "2026.10"
schema_version = 1

# Tolerances ---------------------------------------------------------------------------------------

tolerances = {
    "normalized":   1e-6,  # fidelity / cost inputs.
    "qubit_norm":   1e-12, # QubitState amplitudes.
    "coeffs_norm":  1e-9,  # superposition coefficients.
    "hermitian":    1e-12,
    "tail":         1e-12,
    "frqi_block":   1e-6,
    "compact":      1e-6,  # |ψ| at the boundary relative to max|ψ| for TBC runs.
    "gradcheck":    1e-4,
}

# Registries ---------------------------------------------------------------------------------------

potential_names = ["harmonic_driven", "transmon", "fluxonium", "piecewise_custom"]
bc_kinds        = ["dirichlet", "tbc", "periodic"]
control_kinds   = ["piecewise_constant", "truncated_fourier"]
opt_methods     = ["gd_armijo", "lbfgs"]
terminal_kinds  = ["l2", "phase_invariant"]
modes           = ["solve", "gradcheck", "spectrum", "simulate"]

# Exit codes ---------------------------------------------------------------------------------------

exit_codes = {
    "success":    0,
    "validation": 2,
    "numerical":  3,
    "gradcheck":  4,
}

# Exceptions ---------------------------------------------------------------------------------------

class LiteQOCError(Exception):
    pass


class ValidationError(LiteQOCError, ValueError):
    pass


class NumericalError(LiteQOCError, ArithmeticError):
    pass


class ConfigError(ValidationError):
    def __init__(self, errors):
        self.errors = list(errors)
        ValidationError.__init__(self, "Invalid configuration:\n  " + "\n  ".join(self.errors))

# Helpers ------------------------------------------------------------------------------------------

def check_choice(name, value, choices):
    if value not in choices:
        raise ValidationError("Unsupported {}: {} (registered: {})".format(
            name, value, ", ".join(map(str, choices))))
    return value


def check_finite(name, value):
    if not np.all(np.isfinite(value)):
        raise NumericalError("Non-finite {}".format(name))
    return value


def as_complex_array(values):
    return np.array(values, dtype=complex)


def setup_logging(debug=False):
    logging.basicConfig(
        level  = logging.DEBUG if debug else logging.INFO,
        format = "[%(name)s]: %(message)s")


def csv_preamble(config=None):
    lines = ["# liteqoc {}".format(__version__)]
    if config is not None:
        lines.append("# config {}".format(json.dumps(config, sort_keys=True)))
    return "\n".join(lines)


def write_csv(path, names, rows, config=None, fmt="%.17g"):
    """Plain CSV: '#' preamble lines (version, config echo), header row, data rows."""
    rows = np.asarray(rows, dtype=float).reshape(-1, len(names))
    np.savetxt(path, rows, delimiter=",", fmt=fmt, comments="",
        header=csv_preamble(config) + "\n" + ",".join(names))


def read_csv(path):
    with open(path) as f:
        skip = 0
        for line in f:
            if not line.startswith("#"):
                break
            skip += 1
    return np.genfromtxt(path, delimiter=",", skip_header=skip, names=True)
