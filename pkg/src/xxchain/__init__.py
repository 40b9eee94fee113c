"""Entanglement transport through modified XX spin chains.

Simulates Bell-pair transmission in the single-excitation sector of a
slightly modified XX chain (pendant source/readout qubits at both ends)
and of the standard linear chain, with Monte Carlo ensembles over
static, dynamic, and fluctuating disorder in the couplings, external
fields, and ZZ interactions.
"""

from .chain import (
    BondSet,
    ChainSpec,
    NoiseState,
    Topology,
    build_bonds,
    build_generator,
    initial_amplitudes,
)
from .disorder import (
    Channels,
    DisorderKind,
    DisorderSpec,
    RealizationSchedule,
    SeedPolicy,
    derive_seed,
    sample_schedule,
)
from .entanglement import concurrence, eof, reduced_pair_density
from .errors import ConfigError, PropagationError, UnitarityError
from .propagator import SpectralCache, decompose, evolve, evolve_trace, expm_step

__version__ = "0.1.0"

__all__ = [
    "BondSet",
    "ChainSpec",
    "Channels",
    "ConfigError",
    "DisorderKind",
    "DisorderSpec",
    "NoiseState",
    "PropagationError",
    "RealizationSchedule",
    "SeedPolicy",
    "SpectralCache",
    "Topology",
    "UnitarityError",
    "build_bonds",
    "build_generator",
    "concurrence",
    "decompose",
    "derive_seed",
    "eof",
    "evolve",
    "evolve_trace",
    "expm_step",
    "initial_amplitudes",
    "reduced_pair_density",
    "sample_schedule",
    "__version__",
]
