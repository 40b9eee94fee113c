"""Two-qubit reduced state at the readout pair and its entanglement.

For a single-excitation state the reduced density matrix of any pair
(i, j) is fully determined by the two amplitudes c_i and c_j: the
|11><11| entry is exactly zero and the one-excitation block is a pure
2x2 coherence block.  The concurrence collapses to C = 2|c_i c_j|, and
the entanglement of formation follows from the binary entropy of
f = (1 + sqrt(1 - C^2))/2.
"""

from __future__ import annotations

import numpy as np

__all__ = ["reduced_pair_density", "concurrence", "eof"]

_BOUNDARY_SLACK = 1e-12


def reduced_pair_density(c: np.ndarray, i: int, j: int) -> np.ndarray:
    """4x4 density matrix of sites (i, j) in the basis {00, 01, 10, 11}.

    The first slot of the product basis is site i, the second site j.
    """
    if i == j:
        raise ValueError("pair sites must be distinct")
    ci, cj = complex(c[i]), complex(c[j])
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = 1.0 - abs(ci) ** 2 - abs(cj) ** 2
    rho[1, 1] = abs(cj) ** 2
    rho[2, 2] = abs(ci) ** 2
    rho[1, 2] = cj * np.conj(ci)
    rho[2, 1] = ci * np.conj(cj)
    return rho


def concurrence(c: np.ndarray, i: int, j: int) -> float:
    """Concurrence 2|c_i c_j| of the pair (i, j)."""
    if i == j:
        raise ValueError("pair sites must be distinct")
    return 2.0 * abs(c[i]) * abs(c[j])


def eof(concurrence_value):
    """Entanglement of formation from a concurrence in [0, 1].

    Accepts scalars or arrays.  Values within 1e-12 of the boundary are
    clamped; anything further outside [0, 1] is a domain error.  The
    entropy uses the exact 0*log(0) = 0 convention.
    """
    c = np.asarray(concurrence_value, dtype=float)
    if np.any(c < -_BOUNDARY_SLACK) or np.any(c > 1.0 + _BOUNDARY_SLACK):
        bad = c[(c < -_BOUNDARY_SLACK) | (c > 1.0 + _BOUNDARY_SLACK)]
        raise ValueError(f"concurrence outside [0, 1]: {bad.flat[0]}")
    c = np.clip(c, 0.0, 1.0)
    f = 0.5 * (1.0 + np.sqrt(1.0 - c * c))
    out = np.zeros_like(f)
    # interior points only; f = 1 (C = 0) and f = 1/2 (C = 1) handled below
    inner = (f > 0.0) & (f < 1.0)
    fi = f[inner]
    out[inner] = -fi * np.log2(fi) - (1.0 - fi) * np.log2(1.0 - fi)
    if out.ndim == 0:
        return float(out)
    return out
