"""Sampling of per-realization disorder and noise schedules.

Three disorder classes perturb the clean chain about its optimal
settings.  *Static*: one draw per bond/site at t = 0, frozen for the
whole evolution.  *Dynamic*: a fresh draw per period tau, shared by all
bonds (respectively all sites).  *Fluctuating*: a fresh draw per period
per bond/site.  All draws are uniform on [-p, p]; couplings update
multiplicatively J <- J (1 + dJ) while fields and ZZ strengths update
additively, so dynamic and fluctuating disorder accumulate as random
walks over the n = T_max / tau segments.

Each realization is driven by its own PCG64 stream.  Within a segment
the draw order is fixed: couplings in bond order, then fields in site
order, then ZZ strengths in bond order; disabled channels draw nothing.
Seeds derive from (master_seed, p_index, realization_index) through a
SplitMix64-style mix so results never depend on scheduling.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .chain import BondSet
from .errors import ConfigError

__all__ = [
    "DisorderKind",
    "Channels",
    "DisorderSpec",
    "RealizationSchedule",
    "SeedPolicy",
    "derive_seed",
    "sample_schedule",
    "sample_static",
    "sample_dynamic",
    "sample_fluctuating",
]

MAX_STRENGTH = 0.5  # keeps multiplicative coupling walks positive in practice


class DisorderKind(enum.Enum):
    NONE = "none"
    STATIC = "static"
    DYNAMIC = "dynamic"
    FLUCTUATING = "fluctuating"


@dataclass(frozen=True)
class Channels:
    """Which quantities receive disorder draws."""

    coupling: bool = True
    field: bool = False
    zz: bool = False

    @classmethod
    def all(cls) -> "Channels":
        return cls(coupling=True, field=True, zz=True)

    @classmethod
    def none(cls) -> "Channels":
        return cls(coupling=False, field=False, zz=False)


@dataclass(frozen=True)
class DisorderSpec:
    """Disorder kind, strength, channels, and time discretization.

    p is the half-width of the uniform draw: relative for couplings,
    absolute (units of J) for fields and ZZ strengths.  total_time is
    the readout time T_max and tau = total_time / n_steps.  Static
    disorder always produces a single segment regardless of n_steps.

    fresh_draws switches field/ZZ noise from the cumulative-walk update
    to independent per-step values (couplings stay multiplicative);
    it exists for sensitivity checks and defaults to the walk.
    """

    kind: DisorderKind
    p: float
    total_time: float
    channels: Channels = Channels()
    n_steps: int = 1
    fresh_draws: bool = False

    def __post_init__(self):
        if not 0.0 <= self.p <= MAX_STRENGTH:
            raise ConfigError(f"disorder strength p={self.p} outside [0, {MAX_STRENGTH}]")
        if self.n_steps < 1:
            raise ConfigError(f"n_steps must be >= 1, got {self.n_steps}")
        if self.total_time <= 0:
            raise ConfigError(f"total_time must be > 0, got {self.total_time}")

    @property
    def tau(self) -> float:
        return self.total_time / self.n_steps

    @property
    def effective_steps(self) -> int:
        """Number of schedule segments actually produced."""
        if self.kind in (DisorderKind.NONE, DisorderKind.STATIC):
            return 1
        return self.n_steps


@dataclass(frozen=True)
class SeedPolicy:
    """Master seed from which every realization stream derives."""

    master_seed: int = 0

    def __post_init__(self):
        if not 0 <= self.master_seed < 2**64:
            raise ConfigError("master_seed must fit in 64 bits")


_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_MASK = (1 << 64) - 1


def _mix64(z: int) -> int:
    """SplitMix64 finalizer; a bijection on 64-bit integers."""
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


def derive_seed(policy: SeedPolicy, p_index: int, realization_index: int) -> int:
    """Deterministic, injective stream seed for one realization.

    The index pair packs into 64 bits (each index < 2^32) and passes
    through the SplitMix64 finalizer, so distinct (p, realization)
    cells always get distinct streams under a fixed master seed.
    """
    if p_index < 0 or realization_index < 0:
        raise ConfigError("indices must be >= 0")
    if p_index >= 2**32 or realization_index >= 2**32:
        raise ConfigError("indices must fit in 32 bits")
    combined = (p_index << 32) | realization_index
    return _mix64((policy.master_seed + (combined + 1) * _GAMMA) & _MASK)


@dataclass(frozen=True)
class RealizationSchedule:
    """Piecewise-constant couplings and noise for one realization.

    Row k of each array is held constant on ((k-1) tau, k tau]; dts
    holds the segment durations (a single total_time entry for static
    and clean schedules).
    """

    bonds: BondSet
    couplings: np.ndarray  # (n_segments, n_bonds)
    fields: np.ndarray  # (n_segments, n_sites)
    zz: np.ndarray  # (n_segments, n_bonds)
    dts: np.ndarray  # (n_segments,)

    @property
    def n_segments(self) -> int:
        return len(self.dts)


def _sample(
    spec: DisorderSpec, bonds: BondSet, seed: int, per_site: bool
) -> RealizationSchedule:
    """Shared recursive-update sampler.

    per_site=True draws one value per bond/site (static, fluctuating);
    per_site=False draws one shared value per step (dynamic).
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    n_seg = spec.effective_steps
    nb, ns = len(bonds), bonds.n_sites
    p, ch = spec.p, spec.channels

    couplings = np.empty((n_seg, nb))
    fields = np.empty((n_seg, ns))
    zz = np.empty((n_seg, nb))

    j = bonds.base_array.copy()
    h = np.zeros(ns)
    d = np.zeros(nb)
    for k in range(n_seg):
        if ch.coupling:
            j = j * (1.0 + rng.uniform(-p, p, nb if per_site else None))
        if ch.field:
            dh = rng.uniform(-p, p, ns if per_site else None)
            h = dh + (0.0 if spec.fresh_draws else h)
        if ch.zz:
            dz = rng.uniform(-p, p, nb if per_site else None)
            d = dz + (0.0 if spec.fresh_draws else d)
        couplings[k] = j
        fields[k] = h
        zz[k] = d

    if n_seg == 1:
        dts = np.array([spec.total_time])
    else:
        dts = np.full(n_seg, spec.tau)
    return RealizationSchedule(
        bonds=bonds, couplings=couplings, fields=fields, zz=zz, dts=dts
    )


def sample_static(spec: DisorderSpec, bonds: BondSet, seed: int) -> RealizationSchedule:
    """One frozen draw per bond/site, held for the whole evolution."""
    if spec.kind is not DisorderKind.STATIC:
        raise ConfigError(f"expected static spec, got {spec.kind}")
    return _sample(spec, bonds, seed, per_site=True)


def sample_dynamic(spec: DisorderSpec, bonds: BondSet, seed: int) -> RealizationSchedule:
    """Position-independent draws, one shared value per channel per step."""
    if spec.kind is not DisorderKind.DYNAMIC:
        raise ConfigError(f"expected dynamic spec, got {spec.kind}")
    return _sample(spec, bonds, seed, per_site=False)


def sample_fluctuating(
    spec: DisorderSpec, bonds: BondSet, seed: int
) -> RealizationSchedule:
    """Independent draws per bond/site per step."""
    if spec.kind is not DisorderKind.FLUCTUATING:
        raise ConfigError(f"expected fluctuating spec, got {spec.kind}")
    return _sample(spec, bonds, seed, per_site=True)


def clean_schedule(spec: DisorderSpec, bonds: BondSet) -> RealizationSchedule:
    """Single undisordered segment covering total_time."""
    return RealizationSchedule(
        bonds=bonds,
        couplings=bonds.base_array[None, :].copy(),
        fields=np.zeros((1, bonds.n_sites)),
        zz=np.zeros((1, len(bonds))),
        dts=np.array([spec.total_time]),
    )


def sample_schedule(
    spec: DisorderSpec, bonds: BondSet, seed: int
) -> RealizationSchedule:
    """Sample one realization of the configured disorder kind."""
    if spec.kind is DisorderKind.NONE:
        return clean_schedule(spec, bonds)
    if spec.kind is DisorderKind.STATIC:
        return sample_static(spec, bonds, seed)
    if spec.kind is DisorderKind.DYNAMIC:
        return sample_dynamic(spec, bonds, seed)
    return sample_fluctuating(spec, bonds, seed)
