"""Set families over [n] = {1, ..., n} as dense membership bitmaps.

A family of subsets of [n] is stored as a boolean vector of length 2^n,
indexed by characteristic masks: bit i-1 of a mask is set iff element i is
in the subset.  All structural operations (closures, duals, slices,
restrictions) are bit-parallel over the whole power set, which keeps exact
desk-scale work fast up to n = N_MAX.

Families are immutable after construction; every operation returns a new
value, so they are safe to share across threads and search workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

# Largest supported ground set.  2^24 membership bits is the practical desk
# limit; raise at your own risk (memory grows as 2^n).
N_MAX = 24


def _check_n(n) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"ground set size must be an int, got {n!r}")
    if not 1 <= n <= N_MAX:
        raise ValueError(f"ground set size must satisfy 1 <= n <= {N_MAX}, got {n}")


@dataclass(frozen=True)
class GroundSet:
    """The base set [n] = {1, ..., n}."""

    n: int

    def __post_init__(self):
        _check_n(self.n)

    @property
    def size(self) -> int:
        return 1 << self.n

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def elements(self) -> range:
        return range(1, self.n + 1)


@lru_cache(maxsize=None)
def subset_sizes(n: int) -> np.ndarray:
    """|S| for every mask S over [n]; read-only uint8 array of length 2^n."""
    sizes = np.bitwise_count(np.arange(1 << n, dtype=np.uint32)).astype(np.uint8)
    sizes.setflags(write=False)
    return sizes


@lru_cache(maxsize=None)
def _mask_range(n: int) -> np.ndarray:
    masks = np.arange(1 << n, dtype=np.uint32)
    masks.setflags(write=False)
    return masks


def set_to_mask(elements: Iterable[int], n: int) -> int:
    mask = 0
    for e in elements:
        if not isinstance(e, int) or isinstance(e, bool) or not 1 <= e <= n:
            raise ValueError(f"element {e!r} out of range 1..{n}")
        mask |= 1 << (e - 1)
    return mask


def mask_to_set(mask: int) -> tuple[int, ...]:
    out = []
    e = 1
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


class SetFamily:
    """An immutable subfamily of P([n]) backed by a 2^n membership bitmap."""

    __slots__ = ("ground", "bits")

    def __init__(self, ground: GroundSet, bits, copy: bool = True):
        arr = np.asarray(bits, dtype=bool)
        if arr.shape != (ground.size,):
            raise ValueError(
                f"membership bitmap must have length 2^{ground.n} = {ground.size}, "
                f"got shape {arr.shape}"
            )
        if copy or arr is bits:
            arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "bits", arr)

    def __setattr__(self, name, value):
        raise AttributeError("SetFamily is immutable")

    # -- basic queries -------------------------------------------------

    @property
    def n(self) -> int:
        return self.ground.n

    @property
    def size(self) -> int:
        return int(self.bits.sum())

    def is_empty(self) -> bool:
        return not self.bits.any()

    def member_masks(self) -> np.ndarray:
        return np.flatnonzero(self.bits)

    def members(self) -> list[tuple[int, ...]]:
        return [mask_to_set(int(m)) for m in self.member_masks()]

    def contains(self, elements: Iterable[int]) -> bool:
        return bool(self.bits[set_to_mask(elements, self.n)])

    def slice(self, l: int) -> "SetFamily":
        """The subfamily of members of size exactly l."""
        if not 0 <= l <= self.n:
            raise ValueError(f"level {l} out of range 0..{self.n}")
        return SetFamily(self.ground, self.bits & (subset_sizes(self.n) == l), copy=False)

    def level_counts(self) -> tuple[int, ...]:
        """Member counts per level: (a_0, ..., a_n) with a_l = |F^(l)|."""
        counts = np.bincount(subset_sizes(self.n)[self.bits], minlength=self.n + 1)
        return tuple(int(c) for c in counts)

    # -- boolean algebra -----------------------------------------------

    def _check_same_ground(self, other: "SetFamily") -> None:
        if not isinstance(other, SetFamily):
            raise TypeError(f"expected SetFamily, got {type(other).__name__}")
        if self.ground != other.ground:
            raise ValueError(f"ground-set mismatch: n={self.n} vs n={other.n}")

    def __or__(self, other: "SetFamily") -> "SetFamily":
        self._check_same_ground(other)
        return SetFamily(self.ground, self.bits | other.bits, copy=False)

    def __and__(self, other: "SetFamily") -> "SetFamily":
        self._check_same_ground(other)
        return SetFamily(self.ground, self.bits & other.bits, copy=False)

    def __sub__(self, other: "SetFamily") -> "SetFamily":
        self._check_same_ground(other)
        return SetFamily(self.ground, self.bits & ~other.bits, copy=False)

    def __xor__(self, other: "SetFamily") -> "SetFamily":
        self._check_same_ground(other)
        return SetFamily(self.ground, self.bits ^ other.bits, copy=False)

    def __invert__(self) -> "SetFamily":
        return SetFamily(self.ground, ~self.bits, copy=False)

    def __le__(self, other: "SetFamily") -> bool:
        self._check_same_ground(other)
        return bool((self.bits <= other.bits).all())

    def __eq__(self, other) -> bool:
        if not isinstance(other, SetFamily):
            return NotImplemented
        return self.ground == other.ground and bool((self.bits == other.bits).all())

    def __hash__(self) -> int:
        return hash((self.n, self.bits.tobytes()))

    def __repr__(self) -> str:
        if self.size <= 8:
            body = ", ".join("{" + ",".join(map(str, s)) + "}" for s in self.members())
            return f"SetFamily(n={self.n}, {{{body}}})"
        return f"SetFamily(n={self.n}, size={self.size})"


# -- named constructions ------------------------------------------------


@dataclass(frozen=True)
class Dictatorship:
    """All sets containing the fixed element j."""

    j: int


@dataclass(frozen=True)
class OrFamily:
    """All sets meeting the fixed set R."""

    elements: frozenset[int]

    def __init__(self, elements: Iterable[int]):
        object.__setattr__(self, "elements", frozenset(elements))


@dataclass(frozen=True)
class SupersetFamily:
    """All sets containing the fixed set R."""

    elements: frozenset[int]

    def __init__(self, elements: Iterable[int]):
        object.__setattr__(self, "elements", frozenset(elements))


@dataclass(frozen=True)
class Subcube:
    """All sets S with S intersect B equal to C, for fixed C inside B."""

    b_elements: frozenset[int]
    c_elements: frozenset[int]

    def __init__(self, b_elements: Iterable[int], c_elements: Iterable[int]):
        object.__setattr__(self, "b_elements", frozenset(b_elements))
        object.__setattr__(self, "c_elements", frozenset(c_elements))


@dataclass(frozen=True)
class FranklFuredi:
    """Sets satisfying x_1 or ... or x_{r-1} or (x_r and (x_{r+1} or ... or x_{r+t}))."""

    r: int
    t: int


@dataclass(frozen=True)
class FullLevel:
    """All sets of size exactly k."""

    k: int


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class Full:
    pass


Construction = (
    Dictatorship
    | OrFamily
    | SupersetFamily
    | Subcube
    | FranklFuredi
    | FullLevel
    | Empty
    | Full
)


def build(ground: GroundSet, members: Iterable[Iterable[int]]) -> SetFamily:
    """Family with exactly the listed member sets (duplicates collapse)."""
    bits = np.zeros(ground.size, dtype=bool)
    for s in members:
        bits[set_to_mask(s, ground.n)] = True
    return SetFamily(ground, bits, copy=False)


def construct(ground: GroundSet, c: Construction) -> SetFamily:
    """Realize a named construction as a concrete family on the ground set."""
    n = ground.n
    masks = _mask_range(n)
    if isinstance(c, Empty):
        bits = np.zeros(ground.size, dtype=bool)
    elif isinstance(c, Full):
        bits = np.ones(ground.size, dtype=bool)
    elif isinstance(c, Dictatorship):
        m = set_to_mask([c.j], n)
        bits = (masks & m) != 0
    elif isinstance(c, OrFamily):
        m = set_to_mask(c.elements, n)
        bits = (masks & m) != 0
    elif isinstance(c, SupersetFamily):
        m = set_to_mask(c.elements, n)
        bits = (masks & m) == m
    elif isinstance(c, Subcube):
        if not c.c_elements <= c.b_elements:
            raise ValueError("subcube requires C to be a subset of B")
        mb = set_to_mask(c.b_elements, n)
        mc = set_to_mask(c.c_elements, n)
        bits = (masks & mb) == mc
    elif isinstance(c, FranklFuredi):
        if c.r < 1 or c.t < 1:
            raise ValueError(f"FranklFuredi requires r >= 1 and t >= 1, got r={c.r}, t={c.t}")
        if c.r + c.t > n:
            raise ValueError(f"FranklFuredi requires r + t <= n, got r+t={c.r + c.t}, n={n}")
        or_mask = set_to_mask(range(1, c.r), n)
        pivot = 1 << (c.r - 1)
        tail = set_to_mask(range(c.r + 1, c.r + c.t + 1), n)
        bits = ((masks & or_mask) != 0) | (((masks & pivot) != 0) & ((masks & tail) != 0))
    elif isinstance(c, FullLevel):
        if not 0 <= c.k <= n:
            raise ValueError(f"level {c.k} out of range 0..{n}")
        bits = subset_sizes(n) == c.k
    else:
        raise TypeError(f"unknown construction {c!r}")
    return SetFamily(ground, bits, copy=False)


# -- structural operations ------------------------------------------------


def up_closure(family: SetFamily) -> SetFamily:
    """Smallest increasing family containing the input.

    One pass per element suffices: propagating along each coordinate once
    reaches every superset, since adding elements commutes.
    """
    bits = family.bits.copy()
    for b in range(family.n):
        view = bits.reshape(-1, 2, 1 << b)
        view[:, 1, :] |= view[:, 0, :]
    return SetFamily(family.ground, bits, copy=False)


def down_closure(family: SetFamily) -> SetFamily:
    """Smallest decreasing family containing the input."""
    bits = family.bits.copy()
    for b in range(family.n):
        view = bits.reshape(-1, 2, 1 << b)
        view[:, 0, :] |= view[:, 1, :]
    return SetFamily(family.ground, bits, copy=False)


def is_increasing(family: SetFamily) -> bool:
    for b in range(family.n):
        view = family.bits.reshape(-1, 2, 1 << b)
        if (view[:, 0, :] & ~view[:, 1, :]).any():
            return False
    return True


def is_decreasing(family: SetFamily) -> bool:
    for b in range(family.n):
        view = family.bits.reshape(-1, 2, 1 << b)
        if (view[:, 1, :] & ~view[:, 0, :]).any():
            return False
    return True


def uniform_level(family: SetFamily) -> int | None:
    """The common member size of a uniform family, or None if empty or mixed."""
    if family.is_empty():
        return None
    sizes = subset_sizes(family.n)[family.bits]
    k = int(sizes[0])
    return k if bool((sizes == k).all()) else None


def dual(family: SetFamily) -> SetFamily:
    """The dual family: complements of the non-members.

    The complement mask of m over [n] is 2^n - 1 - m, so the dual bitmap is
    the negated bitmap read in reverse index order.
    """
    return SetFamily(family.ground, ~family.bits[::-1], copy=False)


def restrict(family: SetFamily, b_elements: Iterable[int], c_elements: Iterable[int]) -> SetFamily:
    """The family {S in P([n] minus B) : S union C in F}, with C inside B.

    The result lives on a re-indexed ground set: the elements of [n] minus B
    keep their natural order and are renumbered 1..n-|B|.
    """
    n = family.n
    b_set = frozenset(b_elements)
    c_set = frozenset(c_elements)
    if not c_set <= b_set:
        raise ValueError("restrict requires C to be a subset of B")
    set_to_mask(b_set, n)  # validates the element range
    kept = [e for e in range(1, n + 1) if e not in b_set]
    if not kept:
        raise ValueError("restriction by the whole ground set is not supported")
    n2 = len(kept)
    sub = np.arange(1 << n2, dtype=np.uint32)
    expanded = np.zeros(1 << n2, dtype=np.uint32)
    for j, e in enumerate(kept):
        expanded |= ((sub >> np.uint32(j)) & np.uint32(1)) << np.uint32(e - 1)
    cmask = set_to_mask(c_set, n)
    return SetFamily(GroundSet(n2), family.bits[expanded | np.uint32(cmask)], copy=False)


def is_intersecting(family: SetFamily) -> bool:
    """True iff every two members (including a member with itself) intersect.

    The empty family is intersecting.  Any family containing the empty set is
    not, since the empty set is disjoint from everything including itself.
    """
    members = family.member_masks()
    if members.size == 0:
        return True
    up = up_closure(family).bits
    return not up[family.ground.full_mask - members].any()


def are_cross_intersecting(fam_a: SetFamily, fam_b: SetFamily) -> bool:
    """True iff every member of one family meets every member of the other."""
    fam_a._check_same_ground(fam_b)
    members = fam_a.member_masks()
    if members.size == 0 or fam_b.is_empty():
        return True
    up_b = up_closure(fam_b).bits
    return not up_b[fam_a.ground.full_mask - members].any()


def matching_number(family: SetFamily) -> int:
    """Maximum number of pairwise disjoint members, by exhaustive search.

    The empty set counts as disjoint from everything, so a family containing
    it always matches at least one.  m(empty family) = 0.
    """
    masks = [int(m) for m in family.member_masks()]
    best = 0

    def extend(count: int, cands: list[int]) -> None:
        nonlocal best
        if count > best:
            best = count
        while cands:
            if count + len(cands) <= best:
                return
            head = cands[0]
            cands = cands[1:]
            extend(count + 1, [m for m in cands if m & head == 0])

    extend(0, masks)
    return best


def family_union(f: SetFamily, g: SetFamily) -> SetFamily:
    return f | g


def family_intersection(f: SetFamily, g: SetFamily) -> SetFamily:
    return f & g


def family_difference(f: SetFamily, g: SetFamily) -> SetFamily:
    return f - g


def family_symmetric_difference(f: SetFamily, g: SetFamily) -> SetFamily:
    return f ^ g


def family_complement(f: SetFamily) -> SetFamily:
    return ~f


# -- family file format ---------------------------------------------------
#
# Line 1: n=<int>.  Each further non-comment line is one member, either a
# comma-separated element list, the token {} for the empty set, or
# mask=<hex>.  Lines starting with # (and inline # suffixes) are comments.


def format_family(family: SetFamily) -> str:
    lines = [f"n={family.n}"]
    for m in family.member_masks():
        s = mask_to_set(int(m))
        lines.append(",".join(map(str, s)) if s else "{}")
    return "\n".join(lines) + "\n"


def parse_family(text: str) -> SetFamily:
    ground = None
    member_masks: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ground is None:
            if not line.startswith("n="):
                raise ValueError(f"line {lineno}: expected 'n=<int>' header, got {line!r}")
            ground = GroundSet(int(line[2:]))
            continue
        if line.startswith("mask="):
            mask = int(line[5:], 16)
            if not 0 <= mask < ground.size:
                raise ValueError(f"line {lineno}: mask {line[5:]} out of range for n={ground.n}")
            member_masks.append(mask)
        elif line == "{}":
            member_masks.append(0)
        else:
            elements = [int(tok) for tok in line.split(",")]
            member_masks.append(set_to_mask(elements, ground.n))
    if ground is None:
        raise ValueError("family file has no 'n=<int>' header")
    bits = np.zeros(ground.size, dtype=bool)
    for m in member_masks:
        bits[m] = True
    return SetFamily(ground, bits, copy=False)


def write_family(family: SetFamily, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_family(family))


def read_family(path) -> SetFamily:
    with open(path, "r", encoding="ascii") as fh:
        return parse_family(fh.read())
