"""Monte Carlo sweeps of readout entanglement over disorder strength.

A sweep evaluates, for each disorder strength p on a grid, the ensemble
mean of the entanglement of formation reaching the readout pair at
T_max.  Realizations are the unit of parallel work: each one derives
its own RNG stream from (master_seed, p_index, realization_index), so
the set of sampled schedules is independent of execution order and
worker count.  Results are gathered into a (p, realization) table and
reduced in canonical order with a one-pass Welford update, which makes
the emitted statistics bit-identical for 1 or many workers.

BLAS pools are pinned to one thread inside sweeps: the per-segment
eigenproblems are far too small to gain from threads, and letting BLAS
spin threads between them is a large slowdown; parallelism comes from
worker processes instead.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np
from threadpoolctl import threadpool_limits

from .chain import ChainSpec, build_bonds, initial_amplitudes
from .disorder import DisorderSpec, SeedPolicy, derive_seed, sample_schedule
from .entanglement import concurrence, eof
from .errors import ConfigError, PropagationError
from .propagator import evolve

__all__ = [
    "SweepConfig",
    "SweepResult",
    "SweepError",
    "default_p_grid",
    "run_realization",
    "run_sweep",
]


def default_p_grid() -> tuple[float, ...]:
    """Strengths 0.001 ... 0.100 in steps of 0.001."""
    return tuple(round(0.001 * k, 3) for k in range(1, 101))


def default_realizations(chain: ChainSpec) -> int:
    """1000 realizations per grid point, 100 for thousand-site chains."""
    return 100 if chain.n_middle >= 1000 else 1000


@dataclass(frozen=True)
class SweepConfig:
    """Chain, disorder template, strength grid, and seeding for one sweep.

    disorder.p acts as a template value; it is replaced by each grid
    strength in turn.  disorder.total_time is the readout time T_max.
    """

    chain: ChainSpec
    disorder: DisorderSpec
    p_grid: tuple[float, ...]
    realizations: int
    seeds: SeedPolicy = SeedPolicy(0)

    def __post_init__(self):
        if len(self.p_grid) == 0:
            raise ConfigError("p_grid is empty")
        if any(b <= a for a, b in zip(self.p_grid, self.p_grid[1:])):
            raise ConfigError("p_grid must be strictly increasing")
        if self.realizations < 1:
            raise ConfigError(f"realizations must be >= 1, got {self.realizations}")

    @property
    def t_max(self) -> float:
        return self.disorder.total_time

    def disorder_at(self, p: float) -> DisorderSpec:
        return replace(self.disorder, p=p)


@dataclass(frozen=True)
class SweepResult:
    """Per-strength ensemble statistics plus run provenance."""

    config: SweepConfig
    p: tuple[float, ...]
    mean_eof: tuple[float, ...]
    stddev: tuple[float, ...]
    stderr: tuple[float, ...]
    realizations: int
    wall_time_s: float
    truncated: bool = False


class SweepError(RuntimeError):
    """A realization failed; carries the partial result for flushing."""

    def __init__(self, message: str, partial: SweepResult):
        super().__init__(message)
        self.partial = partial


def run_realization(
    chain: ChainSpec, disorder: DisorderSpec, seed: int
) -> float:
    """Readout EoF at T_max for one sampled disorder realization."""
    bonds = build_bonds(chain)
    schedule = sample_schedule(disorder, bonds, seed)
    try:
        c = evolve(schedule, initial_amplitudes(chain))
    except PropagationError as exc:
        raise PropagationError(f"seed {seed}: {exc}") from exc
    i, j = chain.readout_pair
    return eof(concurrence(c, i, j))


def _realization_block(
    chain: ChainSpec,
    disorder: DisorderSpec,
    policy: SeedPolicy,
    p_index: int,
    r_start: int,
    r_stop: int,
) -> tuple[int, int, np.ndarray, str | None]:
    """Worker task: EoF values for a contiguous block of realizations.

    Returns (p_index, r_start, values, error).  On failure the values
    computed so far in the block are returned with the error message;
    the reducer truncates the grid point there.
    """
    out = np.empty(r_stop - r_start)
    with threadpool_limits(limits=1):
        bonds = build_bonds(chain)
        c0 = initial_amplitudes(chain)
        i, j = chain.readout_pair
        for idx, r in enumerate(range(r_start, r_stop)):
            seed = derive_seed(policy, p_index, r)
            try:
                schedule = sample_schedule(disorder, bonds, seed)
                c = evolve(schedule, c0)
            except PropagationError as exc:
                return p_index, r_start, out[:idx], f"p_index {p_index}, seed {seed}: {exc}"
            out[idx] = eof(concurrence(c, i, j))
    return p_index, r_start, out, None


def _welford(values: np.ndarray) -> tuple[float, float]:
    """One-pass mean and sample standard deviation in array order."""
    mean = 0.0
    m2 = 0.0
    for k, x in enumerate(values, start=1):
        delta = x - mean
        mean += delta / k
        m2 += delta * (x - mean)
    n = len(values)
    std = math.sqrt(m2 / (n - 1)) if n > 1 else 0.0
    return mean, std


def _block_plan(config: SweepConfig, workers: int) -> list[tuple[int, int, int]]:
    """Split the (p, realization) grid into contiguous blocks."""
    r = config.realizations
    block = r if workers <= 1 else max(1, min(r, math.ceil(r / (4 * workers))))
    plan = []
    for p_index in range(len(config.p_grid)):
        for start in range(0, r, block):
            plan.append((p_index, start, min(start + block, r)))
    return plan


def run_sweep(config: SweepConfig, workers: int | None = None) -> SweepResult:
    """Full sweep over the strength grid.

    Statistics per grid point are reduced in canonical realization
    order, so the result is bit-identical regardless of `workers`.
    Raises SweepError with the completed prefix of the grid attached if
    any realization fails.
    """
    if workers is None:
        workers = 1
    workers = max(1, min(workers, os.cpu_count() or 1))
    t0 = time.perf_counter()

    n_p = len(config.p_grid)
    table = np.full((n_p, config.realizations), np.nan)
    failure: str | None = None
    plan = _block_plan(config, workers)
    tasks = [
        (config.chain, config.disorder_at(config.p_grid[p_index]), config.seeds,
         p_index, r_start, r_stop)
        for p_index, r_start, r_stop in plan
    ]
    if workers == 1:
        outcomes = (_realization_block(*t) for t in tasks)
        for p_index, r_start, values, err in outcomes:
            table[p_index, r_start : r_start + len(values)] = values
            if err is not None:
                failure = err
                break
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for p_index, r_start, values, err in pool.map(
                _realization_block, *zip(*tasks), chunksize=1
            ):
                if failure is None:
                    table[p_index, r_start : r_start + len(values)] = values
                    if err is not None:
                        failure = err

    # canonical-order reduction; truncate at the first incomplete grid point
    p_done, means, stds, errs = [], [], [], []
    for p_index in range(n_p):
        row = table[p_index]
        if np.isnan(row).any():
            break
        mean, std = _welford(row)
        p_done.append(config.p_grid[p_index])
        means.append(mean)
        stds.append(std)
        errs.append(std / math.sqrt(config.realizations))

    result = SweepResult(
        config=config,
        p=tuple(p_done),
        mean_eof=tuple(means),
        stddev=tuple(stds),
        stderr=tuple(errs),
        realizations=config.realizations,
        wall_time_s=time.perf_counter() - t0,
        truncated=failure is not None,
    )
    if failure is not None:
        raise SweepError(failure, partial=result)
    return result
