"""Seeded random family corpora.

Every generator is a pure function of a random.Random instance, so a corpus
is fully determined by (seed, size) and verdicts obtained on it can be
replayed bit-for-bit.
"""

from __future__ import annotations

import random

import numpy as np

from .family import GroundSet, SetFamily, up_closure
from .shadows import level_masks


def rng_from_seed(seed: int) -> random.Random:
    return random.Random(seed)


def random_family(rng: random.Random, n: int, density: float = 0.5) -> SetFamily:
    """Each subset included independently with the given probability."""
    ground = GroundSet(n)
    bits = np.fromiter((rng.random() < density for _ in range(ground.size)),
                       dtype=bool, count=ground.size)
    return SetFamily(ground, bits, copy=False)


def random_increasing_family(rng: random.Random, n: int,
                             generators: int | None = None) -> SetFamily:
    """Up-closure of a few uniformly random generator sets (monotone closure)."""
    ground = GroundSet(n)
    g = generators if generators is not None else rng.randint(1, n + 2)
    bits = np.zeros(ground.size, dtype=bool)
    for _ in range(g):
        bits[rng.randrange(ground.size)] = True
    return up_closure(SetFamily(ground, bits, copy=False))


def random_intersecting_family(rng: random.Random, n: int) -> SetFamily:
    """Greedy scan of shuffled nonempty masks, keeping those that meet every
    previously kept set, stopped at a random target size."""
    ground = GroundSet(n)
    masks = list(range(1, ground.size))
    rng.shuffle(masks)
    target = rng.randint(1, max(1, ground.size // 2))
    chosen: list[int] = []
    for m in masks:
        if len(chosen) >= target:
            break
        if all(m & c for c in chosen):
            chosen.append(m)
    bits = np.zeros(ground.size, dtype=bool)
    bits[chosen] = True
    return SetFamily(ground, bits, copy=False)


def random_uniform_family(rng: random.Random, n: int, k: int,
                          count: int | None = None) -> SetFamily:
    """A uniformly random subset of level k, of random size unless given."""
    ground = GroundSet(n)
    level = [int(m) for m in level_masks(n, k)]
    if count is None:
        count = rng.randint(0, len(level))
    chosen = rng.sample(level, count)
    bits = np.zeros(ground.size, dtype=bool)
    bits[chosen] = True
    return SetFamily(ground, bits, copy=False)


def random_uniform_intersecting_family(rng: random.Random, n: int, k: int) -> SetFamily:
    """Greedy intersecting subfamily of shuffled level-k sets."""
    ground = GroundSet(n)
    level = [int(m) for m in level_masks(n, k)]
    rng.shuffle(level)
    target = rng.randint(1, max(1, len(level)))
    chosen: list[int] = []
    for m in level:
        if len(chosen) >= target:
            break
        if all(m & c for c in chosen):
            chosen.append(m)
    bits = np.zeros(ground.size, dtype=bool)
    bits[chosen] = True
    return SetFamily(ground, bits, copy=False)


def random_increasing_tuple(rng: random.Random, n: int, arity: int) -> tuple[SetFamily, ...]:
    return tuple(random_increasing_family(rng, n) for _ in range(arity))


def random_intersecting_tuple(rng: random.Random, n: int, arity: int) -> tuple[SetFamily, ...]:
    return tuple(random_intersecting_family(rng, n) for _ in range(arity))


def random_uniform_tuple(rng: random.Random, n: int, k: int,
                         arity: int) -> tuple[SetFamily, ...]:
    return tuple(random_uniform_family(rng, n, k) for _ in range(arity))
