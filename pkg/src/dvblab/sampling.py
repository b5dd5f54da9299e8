"""Seeded random instances with small exact entries.

Every generator takes a numpy ``Generator``; :func:`make_rng` derives
independent substreams from a 64-bit seed plus an integer path, so trial
``k`` of check ``name`` always sees the same numbers regardless of the
order in which trials run.
"""

from __future__ import annotations

import zlib
import numpy as np
from gmpy2 import mpq

from .exactla import LinMap, Space, is_invertible

MASK64 = (1 << 64) - 1
DENOMS = (1, 1, 2, 3)


def stream_key(name: str) -> int:
    return zlib.crc32(name.encode("utf-8"))


def make_rng(seed: int, *path) -> np.random.Generator:
    """PCG64 generator for ``seed`` and a substream path of ints or strings."""
    keys = [int(seed) & MASK64]
    for p in path:
        keys.append(stream_key(p) if isinstance(p, str) else int(p) & MASK64)
    return np.random.default_rng(np.random.SeedSequence(keys))


def random_scalar(rng: np.random.Generator, bound: int = 5) -> mpq:
    num = int(rng.integers(-bound, bound + 1))
    den = DENOMS[int(rng.integers(0, len(DENOMS)))]
    return mpq(num, den)


def random_int(rng: np.random.Generator, bound: int = 3) -> mpq:
    return mpq(int(rng.integers(-bound, bound + 1)))


def random_vector(rng: np.random.Generator, n: int, bound: int = 5) -> tuple:
    return tuple(random_scalar(rng, bound) for _ in range(n))


def random_nonzero_scalar(rng: np.random.Generator, bound: int = 5) -> mpq:
    while True:
        r = random_scalar(rng, bound)
        if r:
            return r


def random_map(rng: np.random.Generator, domain: Space, codomain: Space, bound: int = 3) -> LinMap:
    rows = [[random_int(rng, bound) for _ in range(domain.dim)] for _ in range(codomain.dim)]
    return LinMap(domain, codomain, rows)


def random_invertible(rng: np.random.Generator, space: Space, bound: int = 3) -> LinMap:
    """Automorphism with integer entries in ``[-bound, bound]``, resampled until invertible."""
    while True:
        f = random_map(rng, space, space, bound)
        if is_invertible(f):
            return f


def random_dims(rng: np.random.Generator, count: int, low: int, high: int) -> tuple:
    return tuple(int(rng.integers(low, high + 1)) for _ in range(count))
