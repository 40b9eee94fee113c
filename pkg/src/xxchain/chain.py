"""Chain topologies and the single-excitation generator matrix.

Two lattices are supported.  The *proposed* chain is a backbone of N
qubits with one pendant qubit at each end: Alice holds the pendant A and
backbone qubit 1, both coupled to qubit 2 with strength J; Bob's end
mirrors this with qubit N and pendant B hanging off qubit N-1.  Backbone
bonds 2-3 ... (N-2)-(N-1) carry J_m.  The *standard* chain is the
strictly linear baseline: the proposed chain with the pendants removed,
so its boundary bonds 1-2 and (N-1)-N keep the strength J while the
interior carries J_m.  (A uniform chain is the special case J = J_m;
only the boundary-bond variant has a nontrivial optimum in J_m/J, since
a uniform coupling merely rescales time.)

Within the single-excitation sector the dynamics reduces to an S x S
real symmetric matrix K (S = N+2 proposed, S = N standard) holding the
bond couplings off-diagonal and field/ZZ shifts on the diagonal.  The
Schroedinger generator is M = -(2i/hbar) K; the factor 2 is applied by
the propagator so K stores the bare J, h, and Delta values.

Energies are in units of J and times in units of hbar/J (J = hbar = 1).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError

__all__ = [
    "Topology",
    "ChainSpec",
    "BondSet",
    "NoiseState",
    "build_bonds",
    "build_generator",
    "initial_amplitudes",
]


class Topology(enum.Enum):
    PROPOSED = "proposed"
    STANDARD = "standard"


@dataclass(frozen=True)
class ChainSpec:
    """Immutable description of a chain instance.

    n_middle is the backbone length N; the proposed topology adds the two
    pendant qubits A and B for a total of S = N + 2 sites.  coupling_end
    is the strength J of the end bonds (four on the proposed chain, the
    two boundary bonds on the standard chain) and coupling_middle is J_m.
    """

    topology: Topology
    n_middle: int
    coupling_middle: float
    coupling_end: float = 1.0

    def __post_init__(self):
        if self.topology is Topology.PROPOSED and self.n_middle < 4:
            raise ConfigError(
                f"proposed chain needs n_middle >= 4, got {self.n_middle}"
            )
        if self.topology is Topology.STANDARD and self.n_middle < 2:
            raise ConfigError(
                f"standard chain needs n_middle >= 2, got {self.n_middle}"
            )
        if self.coupling_end <= 0:
            raise ConfigError(f"coupling_end must be > 0, got {self.coupling_end}")
        if self.coupling_middle <= 0:
            raise ConfigError(
                f"coupling_middle must be > 0, got {self.coupling_middle}"
            )

    @property
    def total_sites(self) -> int:
        return self.n_middle + 2 if self.topology is Topology.PROPOSED else self.n_middle

    @property
    def site_labels(self) -> tuple[str, ...]:
        """Site labels in internal index order (A, 1..N, B or 1..N)."""
        middle = tuple(str(k) for k in range(1, self.n_middle + 1))
        if self.topology is Topology.PROPOSED:
            return ("A",) + middle + ("B",)
        return middle

    def index_of(self, label: str) -> int:
        """Internal 0-based index of a site label."""
        try:
            return self.site_labels.index(label)
        except ValueError:
            raise ConfigError(f"unknown site label {label!r}") from None

    @property
    def source_pair(self) -> tuple[int, int]:
        """Indices of the two qubits holding the initial Bell pair."""
        # proposed: (A, 1); standard: (1, 2) -- both are the first two sites
        return (0, 1)

    @property
    def readout_pair(self) -> tuple[int, int]:
        """Indices of the two qubits scored at readout."""
        s = self.total_sites
        # proposed: (N, B); standard: (N-1, N) -- both are the last two sites
        return (s - 2, s - 1)


@dataclass(frozen=True)
class BondSet:
    """Undirected bonds (i < j, internal indices) with base strengths.

    The bond order is part of the contract: end bond A-2, end bond 1-2,
    backbone bonds 2-3 ... (N-1)-N, end bond (N-1)-B for the proposed
    chain; 1-2 ... (N-1)-N for the standard chain.  Disorder sampling
    draws per-bond values in exactly this order.
    """

    site_i: tuple[int, ...]
    site_j: tuple[int, ...]
    base: tuple[float, ...]
    n_sites: int

    def __len__(self) -> int:
        return len(self.base)

    @property
    def base_array(self) -> np.ndarray:
        return np.asarray(self.base, dtype=float)


@dataclass(frozen=True)
class NoiseState:
    """Per-site fields h_k and per-bond ZZ strengths Delta_ij.

    The zz entries align with the BondSet bond order; the ZZ topology
    mirrors the XX topology.
    """

    fields: np.ndarray
    zz: np.ndarray

    @classmethod
    def zero(cls, bonds: BondSet) -> "NoiseState":
        return cls(np.zeros(bonds.n_sites), np.zeros(len(bonds)))


def build_bonds(spec: ChainSpec) -> BondSet:
    """Bond list of the chain with base strengths assigned.

    Proposed: end bonds A-2, 1-2, (N-1)-N, (N-1)-B at coupling_end and
    backbone bonds at coupling_middle.  Standard: boundary bonds 1-2 and
    (N-1)-N at coupling_end, interior bonds at coupling_middle.
    """
    n = spec.n_middle
    j_end, j_mid = spec.coupling_end, spec.coupling_middle
    if spec.topology is Topology.PROPOSED:
        # internal indices: A=0, backbone k=k (1..N), B=N+1
        pairs: list[tuple[int, int, float]] = [(0, 2, j_end), (1, 2, j_end)]
        pairs += [(k, k + 1, j_mid) for k in range(2, n - 1)]
        pairs += [(n - 1, n, j_end), (n - 1, n + 1, j_end)]
    else:
        # internal indices: k = k-1 for labels 1..N
        pairs = [
            (k, k + 1, j_end if k == 0 or k == n - 2 else j_mid)
            for k in range(n - 1)
        ]
    si, sj, base = zip(*pairs)
    return BondSet(site_i=si, site_j=sj, base=base, n_sites=spec.total_sites)


def build_generator(
    bonds: BondSet,
    couplings: np.ndarray | None = None,
    noise: NoiseState | None = None,
) -> np.ndarray:
    """Real symmetric S x S matrix K of the single-excitation sector.

    Off-diagonal entries are the bond couplings; the diagonal carries
    h_k + Delta_total/2 - sum of ZZ strengths on bonds incident to k,
    where Delta_total is the sum of all ZZ strengths.  With zero noise
    the diagonal vanishes.  The returned array is read-only.
    """
    s = bonds.n_sites
    i = np.asarray(bonds.site_i)
    j = np.asarray(bonds.site_j)
    if couplings is None:
        couplings = bonds.base_array
    else:
        couplings = np.asarray(couplings, dtype=float)
        if couplings.shape != (len(bonds),):
            raise ConfigError(
                f"couplings shape {couplings.shape} does not match "
                f"{len(bonds)} bonds"
            )
    k = np.zeros((s, s))
    k[i, j] = couplings
    k[j, i] = couplings
    if noise is not None:
        fields = np.asarray(noise.fields, dtype=float)
        zz = np.asarray(noise.zz, dtype=float)
        if fields.shape != (s,) or zz.shape != (len(bonds),):
            raise ConfigError(
                f"noise shapes {fields.shape}/{zz.shape} do not match "
                f"{s} sites / {len(bonds)} bonds"
            )
        diag = fields + 0.5 * zz.sum()
        np.subtract.at(diag, i, zz)
        np.subtract.at(diag, j, zz)
        k[np.diag_indices(s)] = diag
    k.flags.writeable = False
    return k


def initial_amplitudes(spec: ChainSpec) -> np.ndarray:
    """Amplitude vector of the Bell pair on the source qubits.

    Both source sites get 1/sqrt(2); the state is the single-excitation
    image of (|01> + |10>)/sqrt(2) on the source pair.
    """
    c = np.zeros(spec.total_sites, dtype=complex)
    a, b = spec.source_pair
    c[a] = c[b] = 1.0 / np.sqrt(2.0)
    return c
