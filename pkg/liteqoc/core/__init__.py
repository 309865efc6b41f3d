#
# This file is part of LiteQOC.
#
# Copyright (c) 2024-2026 LiteQOC Developers
# SPDX-License-Identifier: BSD-2-Clause

from liteqoc.common import *
from liteqoc.core.grid import Grid, Wavefunction, make_grid, make_periodic_grid, gaussian_packet
from liteqoc.core.grid import inner_product, norm, fidelity
from liteqoc.core.potentials import make_potential, validate_tail_condition
from liteqoc.core.control import ControlParametrization, ControlSignal, parametrize, project
from liteqoc.core.propagator import Trajectory, cn_step, evolve
from liteqoc.core.magnus import FiniteLevelSystem, two_level, magnus_omega, magnus_propagate, exact_expm
from liteqoc.core.eigen import hamiltonian_matrix, eigenstates, expand_in_eigenbasis
