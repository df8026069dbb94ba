"""Nonequilibrium steady states and ergotropy of coupled-qubit quantum batteries."""

from .ergotropy import ErgotropyReport, ergotropy, internal_energy, passive_state
from .errors import (
    ConvergenceError,
    IntegrationError,
    InvalidStateError,
    NonUniqueSteadyStateError,
    SolverError,
)
from .lindblad import (
    dissipator,
    jump_operator,
    liouvillian,
    spectral_density,
    thermal_occupation,
    unvec,
    vec,
)
from .model import SystemSpec, Spectrum, build_hamiltonian, preset, spectrum
from .spin_ops import embed, kron, pauli
from .steady_state import evolve, gibbs_state, ground_state, steady_state, trace_distance

__version__ = "0.1.0"
