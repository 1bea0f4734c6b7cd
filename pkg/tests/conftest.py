"""Shared brute-force oracles, deliberately independent of the library paths."""

from itertools import combinations

import pytest

from ekrlab import GroundSet, SetFamily, build


def masks_of(family: SetFamily) -> list[int]:
    return [int(m) for m in family.member_masks()]


def family_from_masks(n: int, masks) -> SetFamily:
    import numpy as np

    ground = GroundSet(n)
    bits = np.zeros(ground.size, dtype=bool)
    for m in masks:
        bits[m] = True
    return SetFamily(ground, bits, copy=False)


def oracle_is_intersecting(family: SetFamily) -> bool:
    ms = masks_of(family)
    return all(a & b for a in ms for b in ms)


def oracle_matching_number(family: SetFamily) -> int:
    ms = masks_of(family)
    best = 0
    for size in range(len(ms), 0, -1):
        for combo in combinations(ms, size):
            ok = True
            for i in range(size):
                for j in range(i + 1, size):
                    if combo[i] & combo[j]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return size
    return best


def oracle_up_closure_masks(n: int, masks) -> set[int]:
    out = set()
    for t in range(1 << n):
        if any(m & t == m for m in masks):
            out.add(t)
    return out
