"""Seeded counter-based uniform streams.

Draw ``i`` of stream ``s`` under seed ``k`` depends only on ``(k, s, i)``:
numpy's Philox generator is keyed with ``(k, s)`` and its counter is
advanced to the block holding ``i``.  Any partition of a run-index range
therefore reproduces the serial draws exactly, which is what lets the
samplers split work across threads.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

MAX_SEED = 2**64 - 1
# Philox emits four 64-bit words per counter increment, one per double.
_WORDS_PER_BLOCK = 4


def check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed <= MAX_SEED:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def uniform_block(seed: int, start: int, stop: int, stream: int = 0) -> np.ndarray:
    """Uniform [0, 1) draws for run indices ``start`` .. ``stop - 1``."""
    if start < 0 or stop < start:
        raise ValueError(f"bad index range [{start}, {stop})")
    key = np.array([check_seed(seed), stream], dtype=np.uint64)
    bitgen = np.random.Philox(key=key)
    block, offset = divmod(start, _WORDS_PER_BLOCK)
    bitgen.advance(block)
    draws = np.random.Generator(bitgen).random(stop - start + offset)
    return draws[offset:]


def split_range(n: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, n))
    edges = np.linspace(0, n, parts + 1).round().astype(int)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def uniforms(seed: int, n: int, stream: int = 0, workers: int = 1) -> np.ndarray:
    """Draws for run indices 0 .. n-1, optionally computed in parallel chunks.

    Chunks are merged in run-index order, so the result does not depend
    on ``workers``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if workers <= 1 or n < 2:
        return uniform_block(seed, 0, n, stream)
    ranges = split_range(n, workers)
    with ThreadPoolExecutor(max_workers=len(ranges)) as pool:
        chunks = list(pool.map(lambda r: uniform_block(seed, r[0], r[1], stream), ranges))
    return np.concatenate(chunks)


def inverse_cdf(probabilities, u: np.ndarray) -> np.ndarray:
    """Map uniforms to cell indices of an ordered probability vector.

    Cells with zero probability own an empty interval and are never drawn.
    """
    p = np.asarray(probabilities, dtype=float)
    cdf = np.cumsum(p)
    idx = np.searchsorted(cdf, u, side="right")
    # u just below 1 can land past a cdf that sums to 1 - eps
    last = int(np.flatnonzero(p > 0)[-1])
    return np.minimum(idx, last)
