"""Brute-force full-Hilbert-space reference for small chains.

Builds the dense 2^S x 2^S Hamiltonian directly from Pauli algebra and
evolves states in the full space.  Tests use it to validate the
single-excitation reduction, the generator diagonal bookkeeping, and
the pair reduced density matrix.  Capped at S <= 12 sites; this is a
correctness tool, not a performance path.

Basis convention: site with internal index 0 (label A on the proposed
chain) is the most significant bit of the computational basis index.
"""

from __future__ import annotations

import numpy as np

from .chain import BondSet, ChainSpec, NoiseState, build_bonds

__all__ = [
    "build_full_hamiltonian",
    "full_evolve",
    "embed_single_excitation",
    "project_single_excitation",
    "z_total_diagonal",
    "partial_trace_pair",
]

MAX_SITES = 12


def _site_mask(site: int, n_sites: int) -> int:
    return 1 << (n_sites - 1 - site)


def _check_size(n_sites: int) -> None:
    if n_sites > MAX_SITES:
        raise ValueError(f"full-space oracle capped at {MAX_SITES} sites, got {n_sites}")


def build_full_hamiltonian(
    spec: ChainSpec,
    couplings: np.ndarray | None = None,
    noise: NoiseState | None = None,
    bonds: BondSet | None = None,
) -> np.ndarray:
    """Dense Hermitian Hamiltonian on all 2^S computational basis states.

    Sums the XX bond terms J_ij (sx sx + sy sy), the field terms
    h_k (1 - sz_k) including their constant part, and the ZZ terms
    Delta_ij sz_i sz_j, so the single-excitation block pins down the
    generator's diagonal bookkeeping exactly.
    """
    if bonds is None:
        bonds = build_bonds(spec)
    s = bonds.n_sites
    _check_size(s)
    if couplings is None:
        couplings = bonds.base_array
    if noise is None:
        noise = NoiseState.zero(bonds)
    dim = 1 << s
    h = np.zeros((dim, dim))
    basis = np.arange(dim)

    # XX bonds: 2 J_ij between |..1_i 0_j..> and |..0_i 1_j..>
    for (i, j, c) in zip(bonds.site_i, bonds.site_j, couplings):
        mi, mj = _site_mask(i, s), _site_mask(j, s)
        src = basis[(basis & mi != 0) & (basis & mj == 0)]
        dst = src ^ (mi | mj)
        h[dst, src] += 2.0 * c
        h[src, dst] += 2.0 * c

    diag = np.zeros(dim)
    # fields: h_k (1 - sz_k) adds 2 h_k wherever site k is excited
    for k in range(s):
        excited = (basis & _site_mask(k, s)) != 0
        diag[excited] += 2.0 * noise.fields[k]
    # ZZ bonds: +Delta if the bond's spins agree, -Delta if they differ
    for (i, j, dz) in zip(bonds.site_i, bonds.site_j, noise.zz):
        bi = (basis & _site_mask(i, s)) != 0
        bj = (basis & _site_mask(j, s)) != 0
        diag += np.where(bi == bj, dz, -dz)
    h[np.diag_indices(dim)] += diag
    return h


def full_evolve(h: np.ndarray, psi0: np.ndarray, t: float) -> np.ndarray:
    """exp(-i H t) psi0 via Hermitian eigendecomposition."""
    _check_size(int(np.log2(h.shape[0]) + 0.5))
    w, v = np.linalg.eigh(h)
    return v @ (np.exp(-1j * w * t) * (v.conj().T @ psi0))


def embed_single_excitation(c: np.ndarray) -> np.ndarray:
    """Full-space state with amplitude c_k on the one-excitation basis."""
    s = len(c)
    _check_size(s)
    psi = np.zeros(1 << s, dtype=complex)
    for k in range(s):
        psi[_site_mask(k, s)] = c[k]
    return psi


def project_single_excitation(psi: np.ndarray, n_sites: int) -> tuple[np.ndarray, float]:
    """Amplitudes on the one-excitation basis plus the discarded weight."""
    c = np.array([psi[_site_mask(k, n_sites)] for k in range(n_sites)])
    discarded = float(np.linalg.norm(psi) ** 2 - np.linalg.norm(c) ** 2)
    return c, discarded


def z_total_diagonal(n_sites: int) -> np.ndarray:
    """Diagonal of the total magnetization operator sum_k sz_k."""
    basis = np.arange(1 << n_sites)
    ones = np.array([bin(b).count("1") for b in basis])
    return (n_sites - 2 * ones).astype(float)


def single_excitation_block(h: np.ndarray, n_sites: int) -> np.ndarray:
    """The S x S block of H on the one-excitation basis states."""
    idx = [_site_mask(k, n_sites) for k in range(n_sites)]
    return h[np.ix_(idx, idx)]


def partial_trace_pair(psi: np.ndarray, i: int, j: int, n_sites: int) -> np.ndarray:
    """4x4 reduced density matrix of sites (i, j) from a full-space state.

    Basis {00, 01, 10, 11} with site i in the first slot.
    """
    tensor = psi.reshape((2,) * n_sites)
    tensor = np.moveaxis(tensor, (i, j), (0, 1)).reshape(4, -1)
    return tensor @ tensor.conj().T
