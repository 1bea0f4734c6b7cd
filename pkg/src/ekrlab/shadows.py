"""Shadow minimization and cross-intersecting size bounds.

Covers the local LYM inequality, exact Kruskal-Katona minima (computed via
the complement duality with colexicographic lower-shadow segments), the
iterated shadow chain, Hilton's cross-intersecting lemma with an exhaustive
extremal probe, linear combinations of cross-intersecting family sizes, and
the pointwise indicator decomposition for unions of uniform families.

Binomial convention throughout: C(a, b) = 0 whenever a < 0, b < 0 or b > a,
which keeps every formula total at degenerate parameters.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .family import (
    GroundSet,
    OrFamily,
    SetFamily,
    _mask_range,
    are_cross_intersecting,
    construct,
    mask_to_set,
    set_to_mask,
    subset_sizes,
    uniform_level,
)
from .measures import as_rational
from .verdict import TernaryVerdict, fails, holds


def comb0(a: int, b: int) -> int:
    """Binomial coefficient extended by zero outside 0 <= b <= a."""
    if a < 0 or b < 0 or b > a:
        return 0
    return math.comb(a, b)


def level_masks(n: int, k: int) -> np.ndarray:
    """Masks of all k-subsets of [n] in colexicographic order.

    Colex order on k-sets coincides with numeric order on characteristic
    masks, so this is simply the sorted list of masks at the level.
    """
    return np.flatnonzero(subset_sizes(n) == k)


@dataclass(frozen=True)
class ColexSegment:
    """The first m k-subsets of [n] in colexicographic order."""

    n: int
    k: int
    m: int

    def __post_init__(self):
        if not 0 <= self.k <= self.n:
            raise ValueError(f"level {self.k} out of range 0..{self.n}")
        if not 0 <= self.m <= math.comb(self.n, self.k):
            raise ValueError(f"segment size {self.m} out of range 0..C({self.n},{self.k})")

    def masks(self) -> np.ndarray:
        return level_masks(self.n, self.k)[: self.m]

    def family(self) -> SetFamily:
        ground = GroundSet(self.n)
        bits = np.zeros(ground.size, dtype=bool)
        bits[self.masks()] = True
        return SetFamily(ground, bits, copy=False)


def upper_shadow(family: SetFamily) -> SetFamily:
    """All sets obtained from a member by adding one new element."""
    if family.is_empty():
        return family
    k = uniform_level(family)
    if k is None:
        raise ValueError("upper_shadow requires a uniform family")
    if k == family.n:
        raise ValueError("upper shadow is undefined at the top level k = n")
    out = np.zeros_like(family.bits)
    for b in range(family.n):
        view_out = out.reshape(-1, 2, 1 << b)
        view_in = family.bits.reshape(-1, 2, 1 << b)
        view_out[:, 1, :] |= view_in[:, 0, :]
    return SetFamily(family.ground, out, copy=False)


def check_local_lym(family: SetFamily) -> TernaryVerdict:
    """Local LYM: the upper shadow's density dominates the family's density."""
    if family.is_empty():
        return holds(equality=True, note="empty family: 0 >= 0")
    k = uniform_level(family)
    if k is None:
        raise ValueError("check_local_lym requires a uniform family")
    n = family.n
    if k == n:
        raise ValueError("local LYM needs k < n")
    lhs = Fraction(upper_shadow(family).size, math.comb(n, k + 1))
    rhs = Fraction(family.size, math.comb(n, k))
    if lhs < rhs:
        return fails({"shadow_density": str(lhs), "family_density": str(rhs)})
    return holds(equality=lhs == rhs)


def min_lower_shadow_size(j: int, m: int) -> int:
    """Exact Kruskal-Katona minimum of |lower shadow| over m j-element sets.

    Uses the cascade decomposition m = C(a_j, j) + C(a_{j-1}, j-1) + ...;
    the minimum is the shadow of the first m colex j-sets.
    """
    if j < 1:
        raise ValueError(f"need level j >= 1, got {j}")
    if m < 0:
        raise ValueError(f"need m >= 0, got {m}")
    total = 0
    i = j
    while m > 0:
        a = i - 1
        while math.comb(a + 1, i) <= m:
            a += 1
        m -= math.comb(a, i)
        total += math.comb(a, i - 1)
        i -= 1
    return total


def kk_min_upper_shadow(n: int, k: int, m: int) -> int:
    """Exact minimum of |upper shadow| over all m-element subfamilies of level k.

    By complementation, upper shadows at level k of [n] correspond to lower
    shadows at level n-k, where the colex Kruskal-Katona minimum applies.
    """
    if not 0 <= k < n:
        raise ValueError(f"need 0 <= k < n, got k={k}, n={n}")
    if not 0 <= m <= math.comb(n, k):
        raise ValueError(f"family size {m} out of range 0..C({n},{k})")
    if m == 0:
        return 0
    return min_lower_shadow_size(n - k, m)


def _chain_target(n: int, r: int, t: int, l: int) -> int:
    if t == 0:
        return comb0(n, l) - comb0(n - r, l)
    return comb0(n, l) - comb0(n - r, l) - comb0(n - r - t, l - 1)


def chain_family(ground: GroundSet, r: int, t: int) -> SetFamily:
    """The increasing family whose level counts realize the chain targets.

    For t >= 1 this is the pivot construction x_1 or ... or x_{r-1} or
    (x_r and (x_{r+1} or ... or x_{r+t})); t = 0 degenerates to plain OR_[r].
    """
    from .family import FranklFuredi

    if t == 0:
        return construct(ground, OrFamily(range(1, r + 1)))
    return construct(ground, FranklFuredi(r, t))


def check_kk_chain(n: int, k: int, r: int, t: int) -> TernaryVerdict:
    """Iterated Kruskal-Katona chain against the pivot-construction levels.

    Verifies that for every family size m at level k at or above the target
    C(n,k) - C(n-r,k) - C(n-r-t,k-1), iterating the minimum upper shadow
    reaches at least the target count at every higher level, and that the
    pivot construction meets the targets with equality at every level.
    """
    if r < 1 or t < 0 or r + t > n:
        raise ValueError(f"need r >= 1, t >= 0, r + t <= n; got r={r}, t={t}, n={n}")
    if not 1 <= k <= n:
        raise ValueError(f"level {k} out of range 1..{n}")
    fam = chain_family(GroundSet(n), r, t)
    counts = fam.level_counts()
    for l in range(0, n + 1):
        if counts[l] != _chain_target(n, r, t, l):
            return fails(
                {"level": l, "family_count": counts[l], "target": _chain_target(n, r, t, l)},
                note="pivot construction misses the level formula",
            )
    m0 = max(_chain_target(n, r, t, k), 0)
    for m in range(m0, math.comb(n, k) + 1):
        size = m
        for l in range(k + 1, n + 1):
            size = kk_min_upper_shadow(n, l - 1, size)
            if size < _chain_target(n, r, t, l):
                return fails({"start_size": m, "level": l, "chain_value": size,
                              "target": _chain_target(n, r, t, l)})
    return holds(equality=True, threshold=m0)


def check_hilton(fam_a: SetFamily, fam_b: SetFamily, t: int) -> TernaryVerdict:
    """Hilton's lemma on cross-intersecting (A, B) with A k-uniform, B l-uniform:
    |A| >= C(n,k) - C(n-t,k) forces |B| <= C(n-t, l-t)."""
    fam_a._check_same_ground(fam_b)
    if t < 0:
        raise ValueError(f"need t >= 0, got {t}")
    if not are_cross_intersecting(fam_a, fam_b):
        raise ValueError("families are not cross-intersecting")
    n = fam_a.n
    if fam_b.is_empty():
        return holds(note="B empty: conclusion trivial")
    l = uniform_level(fam_b)
    if l is None:
        raise ValueError("B must be uniform")
    if fam_a.is_empty():
        return holds(note="A empty: size hypothesis cannot be met")
    k = uniform_level(fam_a)
    if k is None:
        raise ValueError("A must be uniform")
    if k + l > n:
        raise ValueError(f"need k + l <= n, got {k} + {l} > {n}")
    threshold = math.comb(n, k) - comb0(n - t, k)
    if fam_a.size < threshold:
        return holds(note="size hypothesis not met: implication is vacuous",
                     threshold=threshold, a_size=fam_a.size)
    bound = comb0(n - t, l - t)
    if fam_b.size > bound:
        return fails({"b_size": fam_b.size, "bound": bound, "a_size": fam_a.size,
                      "threshold": threshold})
    return holds(equality=fam_b.size == bound, threshold=threshold, bound=bound)


@dataclass
class ProbeResult:
    """Outcome of an exhaustive extremal probe."""

    params: dict
    optimum: int
    witness: SetFamily | None
    nodes: int
    wall_time_ms: float
    complete: bool

    def to_record(self, witness_path: str | None = None) -> dict:
        return {
            "params": self.params,
            "optimum": self.optimum,
            "witness_family_file": witness_path,
            "nodes_explored": self.nodes,
            "wall_time_ms": self.wall_time_ms,
            "complete": self.complete,
        }


def hilton_extremal_probe(n: int, k: int, l: int, t: int,
                          node_budget: int | None = None) -> ProbeResult:
    """Exhaustively maximize |B| over cross-intersecting pairs with |A| at the
    Hilton threshold C(n,k) - C(n-t,k).

    Search runs over B only: the best partner A is always every k-set meeting
    all of B, so the constraint is that B's members jointly exclude at most
    C(n-t,k) k-sets.  The first member of B is fixed to {1..l} by symmetry.
    """
    if k < 1 or l < 1 or k + l > n:
        raise ValueError(f"need 1 <= k, 1 <= l, k + l <= n; got k={k}, l={l}, n={n}")
    if t < 0:
        raise ValueError(f"need t >= 0, got {t}")
    start = time.perf_counter()
    kmasks = [int(m) for m in level_masks(n, k)]
    lmasks = [int(m) for m in level_masks(n, l)]
    budget = comb0(n - t, k)  # excluded k-sets allowed while |A| stays at threshold
    cover = []
    for tm in lmasks:
        bm = 0
        for i, sm in enumerate(kmasks):
            if sm & tm == 0:
                bm |= 1 << i
        cover.append(bm)

    # Known extremal construction: all l-sets containing {1..t}.
    t_mask = set_to_mask(range(1, t + 1), n) if t else 0
    star_idx = [i for i, tm in enumerate(lmasks) if tm & t_mask == t_mask]
    star_cover = 0
    for i in star_idx:
        star_cover |= cover[i]
    best = 0
    best_idx: list[int] = []
    if star_cover.bit_count() <= budget:
        best = len(star_idx)
        best_idx = star_idx

    nodes = 0
    complete = True
    n_cands = len(lmasks)

    class _Budget(Exception):
        pass

    def dfs(pos: int, chosen: list[int], covered: int) -> None:
        nonlocal nodes, best, best_idx
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise _Budget
        feas = [i for i in range(pos, n_cands)
                if (cover[i] | covered).bit_count() <= budget]
        if len(chosen) + len(feas) <= best:
            return
        for at, i in enumerate(feas):
            if len(chosen) + len(feas) - at <= best:
                break
            chosen.append(i)
            if len(chosen) > best:
                best = len(chosen)
                best_idx = list(chosen)
            dfs(i + 1, chosen, covered | cover[i])
            chosen.pop()

    try:
        if cover[0].bit_count() <= budget:
            # Nonempty B: fix the colex-least member to {1..l} by symmetry.
            dfs(1, [0], cover[0])
    except _Budget:
        complete = False

    ground = GroundSet(n)
    bits = np.zeros(ground.size, dtype=bool)
    bits[[lmasks[i] for i in best_idx]] = True
    witness = SetFamily(ground, bits, copy=False)
    wall = (time.perf_counter() - start) * 1000.0
    return ProbeResult(
        params={"n": n, "k": k, "l": l, "t": t},
        optimum=best,
        witness=witness,
        nodes=nodes,
        wall_time_ms=wall,
        complete=complete,
    )


def find_t(size: int, n: int, k1: int) -> int:
    """The t with C(n-t-1, k1-t-1) <= size <= C(n-t, k1-t), largest at boundaries."""
    if size < 0 or size > math.comb(n, k1):
        raise ValueError(f"size {size} out of range 0..C({n},{k1})")
    for t in range(k1, -1, -1):
        if comb0(n - t - 1, k1 - t - 1) <= size <= comb0(n - t, k1 - t):
            return t
    raise AssertionError("unreachable: nested binomial intervals cover the range")


def check_cross_combination(g1: SetFamily, g2: SetFamily, c1, t0: int,
                            k1: int | None = None, k2: int | None = None) -> TernaryVerdict:
    """Linear-combination bound for cross-intersecting uniform (G1, G2):
    |G2| + C1 |G1| <= C(n, k2), with equality only if G1 is empty.

    The size hypothesis |G1| <= C(n-t0, k1-t0) is evaluated and reported in
    the verdict rather than enforced; the classical range conditions on
    k1, k2 involve non-constructive constants and are reported as raw values.
    """
    g1._check_same_ground(g2)
    c1 = as_rational(c1)
    if c1 <= 0:
        raise ValueError(f"need C1 > 0, got {c1}")
    if t0 < 0:
        raise ValueError(f"need t0 >= 0, got {t0}")
    if not are_cross_intersecting(g1, g2):
        raise ValueError("families are not cross-intersecting")
    n = g1.n
    lvl1 = uniform_level(g1)
    lvl2 = uniform_level(g2)
    if not g1.is_empty() and lvl1 is None:
        raise ValueError("G1 must be uniform")
    if not g2.is_empty() and lvl2 is None:
        raise ValueError("G2 must be uniform")
    k1 = lvl1 if lvl1 is not None else k1
    k2 = lvl2 if lvl2 is not None else k2
    if k2 is None:
        raise ValueError("k2 is required when G2 is empty")
    size_bound_ok = True
    if k1 is not None:
        size_bound_ok = g1.size <= comb0(n - t0, k1 - t0)
    hypothesis = {
        "size_bound_ok": size_bound_ok,
        "t0": t0,
        "k1": k1,
        "k2": k2,
        "n": n,
        "note": "range conditions on k1, k2 involve non-constructive constants; raw values reported",
    }
    total = g2.size + c1 * g1.size
    bound = math.comb(n, k2)
    if total > bound:
        return fails({"combination": str(total), "bound": bound}, hypothesis=hypothesis)
    if total == bound and not g1.is_empty():
        return fails(
            {"combination": str(total), "bound": bound, "g1_size": g1.size},
            equality=True,
            hypothesis=hypothesis,
            note="equality reached with nonempty G1",
        )
    return holds(equality=total == bound, hypothesis=hypothesis)


def check_indicator_claim(families) -> TernaryVerdict:
    """Pointwise indicator bound for a union of r k-uniform families.

    For F = F_1 union ... union F_r at level k, checks for every k-set S:
    1_F(S) <= 1_{OR_[r]}(S)
             + sum_j (1_{S in F_j, j not in S} - 1_{S cap [r] = {j}, S not in F_j}),
    and the summed family-size inequality it implies.
    """
    families = list(families)
    r = len(families)
    if r < 1:
        raise ValueError("need at least one family")
    for f in families[1:]:
        families[0]._check_same_ground(f)
    n = families[0].n
    if r > n:
        raise ValueError(f"need r <= n, got r={r}, n={n}")
    levels = {uniform_level(f) for f in families if not f.is_empty()}
    if len(levels) > 1:
        raise ValueError("families must be uniform at a common level")
    if not levels:
        return holds(equality=None, note="all families empty: both sides vanish")
    k = levels.pop()
    masks = _mask_range(n)
    level = subset_sizes(n) == k
    union = families[0]
    for f in families[1:]:
        union = union | f
    r_mask = set_to_mask(range(1, r + 1), n)
    lhs = union.bits.astype(np.int16)
    rhs = ((masks & np.uint32(r_mask)) != 0).astype(np.int16)
    plus_total = 0
    minus_total = 0
    for j, f in enumerate(families, start=1):
        bit_j = np.uint32(1 << (j - 1))
        plus = f.bits & ((masks & bit_j) == 0)
        minus = ((masks & np.uint32(r_mask)) == bit_j) & ~f.bits & level
        rhs += plus.astype(np.int16) - minus.astype(np.int16)
        plus_total += int(plus.sum())
        minus_total += int(minus.sum())
    violations = level & (lhs > rhs)
    size_lhs = union.size
    size_rhs = math.comb(n, k) - comb0(n - r, k) + plus_total - minus_total
    if violations.any():
        sets = [mask_to_set(int(m)) for m in np.flatnonzero(violations)[:5]]
        return fails({"violating_sets": sets},
                     info={"family_size": size_lhs, "size_bound": size_rhs})
    if size_lhs > size_rhs:
        return fails({"family_size": size_lhs, "size_bound": size_rhs},
                     note="summed bound violated without pointwise violation")
    return holds(equality=size_lhs == size_rhs,
                 family_size=size_lhs, size_bound=size_rhs)
