"""Seeded random generators for experiments and tests.

Everything takes an explicit ``numpy.random.Generator`` so sweeps are
reproducible from a single seed.
"""

from __future__ import annotations

import numpy as np

from .algebras import AlgebraSpec
from .channels import Channel, random_unitary as _random_unitary_channel

__all__ = [
    "haar_unitary",
    "random_unit_vector",
    "random_density",
    "random_ru_channel",
    "random_block_algebra",
]


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a Ginibre matrix."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    # fix the phase ambiguity of QR so the distribution is Haar
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def random_unit_vector(d: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def random_density(d: int, rng: np.random.Generator) -> np.ndarray:
    """Full-rank random density matrix (normalized Wishart)."""
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    m = g @ g.conj().T + 1e-3 * np.eye(d)
    return m / np.trace(m).real


def random_ru_channel(d: int, count: int, rng: np.random.Generator) -> Channel:
    """Random-unitary channel with Dirichlet weights over Haar unitaries."""
    probs = rng.dirichlet(np.ones(count))
    return _random_unitary_channel(probs, [haar_unitary(d, rng) for _ in range(count)])


def random_block_algebra(
    rng: np.random.Generator,
    max_dim: int = 12,
    admit_trace_vectors: bool | None = True,
) -> AlgebraSpec:
    """Random unital block algebra with a Haar basis change.

    admit_trace_vectors True forces m >= n in every block, False forces at
    least one block with m < n, None places no constraint.
    """
    blocks = []
    used = 0
    if admit_trace_vectors is False:
        n = int(rng.integers(2, 4))
        m = int(rng.integers(1, n))
        blocks.append((m, n))
        used = m * n
    target = int(rng.integers(max(used + 1, 2), max_dim + 1))
    while used < target:
        room = target - used
        n = int(rng.integers(1, 4))
        if admit_trace_vectors is True:
            while n * n > room:
                n -= 1
            m = int(rng.integers(n, room // n + 1))
        else:
            while n > room:
                n -= 1
            m = int(rng.integers(1, room // n + 1))
        blocks.append((m, n))
        used += m * n
    return AlgebraSpec(tuple(blocks), 0, haar_unitary(used, rng))
