"""Deterministic random sampling keyed by seed and purpose.

Every verification campaign draws from a Philox stream keyed by the user
seed together with a short purpose string, so adding or reordering checks
never shifts the samples of the others.
"""
from __future__ import annotations

import hashlib

import numpy as np

#: Half-width of the box functionals are drawn from.
FUNCTIONAL_RADIUS = 2.0

#: Half-width of the box group-log coordinates are drawn from.
COORDINATE_RADIUS = 1.5


def generator(seed: int, *key_parts: object) -> np.random.Generator:
    """Generator for one named sampling campaign."""
    digest = hashlib.sha256("\x1f".join(str(p) for p in key_parts).encode()).digest()
    subkey = int.from_bytes(digest[:8], "little")
    return np.random.Generator(np.random.Philox(key=np.array([seed, subkey], dtype=np.uint64)))


def sample_functionals(seed: int, n: int, *key_parts: object) -> np.ndarray:
    """Draw n functionals uniformly from the standard box, shape (n, 7)."""
    rng = generator(seed, "functional", *key_parts)
    return rng.uniform(-FUNCTIONAL_RADIUS, FUNCTIONAL_RADIUS, size=(n, 7))


def sample_coordinates(seed: int, n: int, *key_parts: object) -> np.ndarray:
    """Draw n group-log coordinate vectors, shape (n, 7)."""
    rng = generator(seed, "coordinate", *key_parts)
    return rng.uniform(-COORDINATE_RADIUS, COORDINATE_RADIUS, size=(n, 7))
