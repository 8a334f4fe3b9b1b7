"""Seeded random draws of the objects the verification suite exercises.

Every function takes a ``numpy.random.Generator`` so callers control the
seed; none touches global RNG state.
"""

from __future__ import annotations

import numpy as np

from .dilation import GammaTable

__all__ = [
    "random_complex_matrix",
    "random_ket",
    "random_density",
    "random_unitary",
    "random_gamma",
    "random_uniform_gamma",
]


def random_complex_matrix(d: int, rng: np.random.Generator, *, rows: int | None = None) -> np.ndarray:
    """Ginibre draw: i.i.d. standard complex Gaussian entries."""
    r = d if rows is None else rows
    return (rng.standard_normal((r, d)) + 1j * rng.standard_normal((r, d))) / np.sqrt(2.0)


def random_ket(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unit vector in C^d."""
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def random_density(d: int, rng: np.random.Generator) -> np.ndarray:
    """Full-rank random density matrix ``G G^dagger / tr`` from a Ginibre G."""
    g = random_complex_matrix(d, rng)
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a Ginibre matrix."""
    q, r = np.linalg.qr(random_complex_matrix(d, rng))
    # Fix the phase ambiguity of QR so the distribution is Haar.
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def random_gamma(d: int, rng: np.random.Generator) -> GammaTable:
    """Random environment amplitudes with each column normalized to 1."""
    g = random_complex_matrix(d, rng)
    g = g / np.linalg.norm(g, axis=0, keepdims=True)
    return GammaTable(g)


def random_uniform_gamma(d: int, rng: np.random.Generator) -> GammaTable:
    """Uniform magnitudes ``1/sqrt(d)`` with independent random phases."""
    return GammaTable.uniform(d, phases=rng.uniform(0.0, 2.0 * np.pi, size=(d, d)))
