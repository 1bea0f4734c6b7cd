import math
import random
from itertools import combinations

import numpy as np
import pytest

import ekrlab as ek
from ekrlab import (
    Dictatorship,
    FranklFuredi,
    Full,
    FullLevel,
    GroundSet,
    OrFamily,
    SetFamily,
    Subcube,
    SupersetFamily,
    build,
    construct,
)
from conftest import (
    family_from_masks,
    masks_of,
    oracle_is_intersecting,
    oracle_matching_number,
    oracle_up_closure_masks,
)


def members_set(fam):
    return {frozenset(s) for s in fam.members()}


def random_family_on(rng, n):
    ground = GroundSet(n)
    bits = np.zeros(ground.size, dtype=bool)
    for _ in range(rng.randint(0, ground.size)):
        bits[rng.randrange(ground.size)] = True
    return SetFamily(ground, bits, copy=False)


def random_families(seed, count, n_max=8):
    rng = random.Random(seed)
    for _ in range(count):
        yield random_family_on(rng, rng.randint(2, n_max))


class TestBuild:
    def test_single_member(self):
        fam = build(GroundSet(3), [{1, 2}])
        assert fam.size == 1
        assert members_set(fam) == {frozenset({1, 2})}

    def test_empty(self):
        assert build(GroundSet(3), []).size == 0

    def test_duplicates_collapse(self):
        assert build(GroundSet(3), [{1}, {1}]).size == 1

    def test_element_out_of_range(self):
        with pytest.raises(ValueError):
            build(GroundSet(3), [{4}])

    def test_n_too_large(self):
        with pytest.raises(ValueError):
            GroundSet(ek.family.N_MAX + 1)


class TestConstruct:
    def test_or_level_count(self):
        fam = construct(GroundSet(4), OrFamily([1, 2]))
        assert fam.slice(2).size == 5  # C(4,2) - C(2,2)

    def test_dictatorship_members(self):
        fam = construct(GroundSet(3), Dictatorship(1))
        assert members_set(fam) == {
            frozenset({1}), frozenset({1, 2}), frozenset({1, 3}), frozenset({1, 2, 3})}

    def test_frankl_furedi_level_count(self):
        fam = construct(GroundSet(10), FranklFuredi(2, 2))
        assert fam.slice(3).size == 49  # C(10,3) - C(8,3) - C(6,2)

    def test_frankl_furedi_by_enumeration(self):
        # Direct predicate count: x1 or (x2 and (x3 or x4)), members of size 3.
        n = 10
        count = 0
        for combo in combinations(range(1, n + 1), 3):
            s = set(combo)
            if 1 in s or (2 in s and (3 in s or 4 in s)):
                count += 1
        assert count == construct(GroundSet(n), FranklFuredi(2, 2)).slice(3).size

    def test_frankl_furedi_validation(self):
        with pytest.raises(ValueError):
            construct(GroundSet(4), FranklFuredi(2, 3))
        with pytest.raises(ValueError):
            construct(GroundSet(4), FranklFuredi(2, 0))

    def test_subcube_requires_nested(self):
        with pytest.raises(ValueError):
            construct(GroundSet(4), Subcube([1, 2], [3]))

    def test_level_counts_profile(self):
        fam = construct(GroundSet(5), Dictatorship(2))
        counts = fam.level_counts()
        assert counts == (0, 1, 4, 6, 4, 1)
        assert all(c <= math.comb(5, l) for l, c in enumerate(counts))


class TestSlice:
    def test_dictatorship_slice(self):
        fam = construct(GroundSet(3), Dictatorship(1)).slice(2)
        assert members_set(fam) == {frozenset({1, 2}), frozenset({1, 3})}

    def test_full_slice(self):
        assert construct(GroundSet(3), Full()).slice(2).size == 3

    def test_ff_slice(self):
        assert construct(GroundSet(10), FranklFuredi(2, 2)).slice(3).size == 49

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            construct(GroundSet(3), Full()).slice(4)


class TestUpClosure:
    def test_single_set(self):
        fam = ek.up_closure(build(GroundSet(3), [{1, 2}]))
        assert members_set(fam) == {frozenset({1, 2}), frozenset({1, 2, 3})}

    def test_empty(self):
        assert ek.up_closure(build(GroundSet(3), [])).size == 0

    def test_or_singleton_slice_closure_is_dictatorship(self):
        base = construct(GroundSet(3), OrFamily([1])).slice(1)
        assert ek.up_closure(base) == construct(GroundSet(3), Dictatorship(1))

    def test_matches_oracle_and_properties(self):
        for fam in random_families(seed=101, count=40, n_max=7):
            up = ek.up_closure(fam)
            assert set(masks_of(up)) == oracle_up_closure_masks(fam.n, masks_of(fam))
            assert ek.is_increasing(up)
            assert ek.up_closure(up) == up

    def test_monotone(self):
        rng = random.Random(7)
        for _ in range(20):
            n = rng.randint(2, 7)
            f = random_family_on(rng, n)
            g = f | random_family_on(rng, n)
            assert ek.up_closure(f) <= ek.up_closure(g)


class TestDual:
    def test_full_to_empty(self):
        assert ek.dual(construct(GroundSet(4), Full())).size == 0

    def test_or_superset_duality(self):
        for n in range(1, 6):
            ground = GroundSet(n)
            for r in range(0, n + 1):
                for combo in combinations(range(1, n + 1), r):
                    assert ek.dual(construct(ground, OrFamily(combo))) == construct(
                        ground, SupersetFamily(combo))
                    assert ek.dual(construct(ground, SupersetFamily(combo))) == construct(
                        ground, OrFamily(combo))

    def test_dictatorship_self_dual(self):
        for n in range(1, 6):
            for j in range(1, n + 1):
                d = construct(GroundSet(n), Dictatorship(j))
                assert ek.dual(d) == d

    def test_involution(self):
        for fam in random_families(seed=55, count=50, n_max=10):
            assert ek.dual(ek.dual(fam)) == fam

    def test_increasing_dual_increasing(self):
        rng = random.Random(3)
        for _ in range(25):
            n = rng.randint(2, 7)
            fam = ek.up_closure(next(random_families(rng.randrange(10**6), 1, n)))
            assert ek.is_increasing(ek.dual(fam))


class TestRestrict:
    def test_or_slice_restrict(self):
        fam = construct(GroundSet(4), OrFamily([1, 2])).slice(2)
        res = ek.restrict(fam, [1, 2], [1])
        # elements 3,4 renumber to 1,2
        assert members_set(res) == {frozenset({1}), frozenset({2})}

    def test_identity(self):
        fam = construct(GroundSet(4), OrFamily([2, 3]))
        assert ek.restrict(fam, [], []) == fam

    def test_dictatorship_vanishes(self):
        fam = construct(GroundSet(3), Dictatorship(1))
        assert ek.restrict(fam, [1], []).size == 0

    def test_requires_nested(self):
        fam = construct(GroundSet(4), Full())
        with pytest.raises(ValueError):
            ek.restrict(fam, [1], [2])

    def test_against_definition(self):
        rng = random.Random(19)
        for fam in random_families(seed=23, count=20, n_max=6):
            n = fam.n
            b = {e for e in range(1, n + 1) if rng.random() < 0.4}
            if len(b) == n:
                b.pop()
            c = {e for e in b if rng.random() < 0.5}
            res = ek.restrict(fam, b, c)
            kept = [e for e in range(1, n + 1) if e not in b]
            expect = set()
            for t in range(1 << len(kept)):
                s = {kept[i] for i in range(len(kept)) if (t >> i) & 1}
                if frozenset(s | c) in members_set(fam):
                    expect.add(frozenset(i + 1 for i, e in enumerate(kept) if e in s))
            assert members_set(res) == expect


class TestIntersecting:
    def test_dictatorship(self):
        assert ek.is_intersecting(construct(GroundSet(4), Dictatorship(1)))

    def test_full_level_not(self):
        assert not ek.is_intersecting(construct(GroundSet(5), FullLevel(2)))

    def test_cross_dictator_slices(self):
        d = construct(GroundSet(5), Dictatorship(1)).slice(2)
        assert ek.are_cross_intersecting(d, d)

    def test_empty_conventions(self):
        empty = build(GroundSet(4), [])
        assert ek.is_intersecting(empty)
        assert not ek.is_intersecting(build(GroundSet(4), [set(), {1}]))
        assert not ek.is_intersecting(build(GroundSet(4), [set()]))
        assert ek.are_cross_intersecting(empty, construct(GroundSet(4), Full()))

    def test_against_oracle(self):
        for fam in random_families(seed=77, count=60, n_max=6):
            assert ek.is_intersecting(fam) == oracle_is_intersecting(fam)

    def test_cross_against_oracle(self):
        rng = random.Random(5)
        for _ in range(30):
            n = rng.randint(2, 6)
            a = random_family_on(rng, n)
            b = random_family_on(rng, n)
            expect = all(x & y for x in masks_of(a) for y in masks_of(b))
            assert ek.are_cross_intersecting(a, b) == expect

    def test_ground_mismatch(self):
        with pytest.raises(ValueError):
            ek.are_cross_intersecting(build(GroundSet(3), []), build(GroundSet(4), []))


class TestMatchingNumber:
    def test_or_slice(self):
        fam = construct(GroundSet(6), OrFamily([1, 2])).slice(2)
        assert oracle_matching_number(fam) == 2
        assert ek.matching_number(fam) == 2

    def test_dictatorship(self):
        assert ek.matching_number(construct(GroundSet(5), Dictatorship(1))) == 1

    def test_full_level_perfect(self):
        assert ek.matching_number(construct(GroundSet(6), FullLevel(2))) == 3

    def test_empty_and_empty_set(self):
        assert ek.matching_number(build(GroundSet(4), [])) == 0
        assert ek.matching_number(build(GroundSet(4), [set()])) == 1
        assert ek.matching_number(build(GroundSet(4), [set(), {1}, {2}])) == 3

    def test_against_oracle(self):
        rng = random.Random(13)
        for _ in range(25):
            n = rng.randint(2, 6)
            fam = next(random_families(rng.randrange(10**6), 1, n))
            if fam.size > 10:
                fam = family_from_masks(n, masks_of(fam)[:10])
            assert ek.matching_number(fam) == oracle_matching_number(fam)

    def test_intersecting_iff_matching_le_one(self):
        for fam in random_families(seed=31, count=50, n_max=6):
            if fam.is_empty() or fam.bits[0]:
                continue
            assert ek.is_intersecting(fam) == (ek.matching_number(fam) <= 1)


class TestBooleanAlgebra:
    def test_union_of_dictatorships(self):
        g = GroundSet(4)
        assert construct(g, Dictatorship(1)) | construct(g, Dictatorship(2)) == construct(
            g, OrFamily([1, 2]))

    def test_symmetric_difference_self(self):
        fam = construct(GroundSet(4), OrFamily([1, 3]))
        assert (fam ^ fam).size == 0

    def test_complement_full(self):
        assert (~construct(GroundSet(4), Full())).size == 0

    def test_ground_mismatch(self):
        with pytest.raises(ValueError):
            construct(GroundSet(3), Full()) | construct(GroundSet(4), Full())


class TestFranklFurediLevels:
    def test_level_formula_grid(self):
        for n in range(2, 13):
            for r in range(1, 4):
                for t in range(1, 4):
                    if r + t > n:
                        continue
                    fam = construct(GroundSet(n), FranklFuredi(r, t))
                    counts = fam.level_counts()
                    for l in range(1, n + 1):
                        expect = math.comb(n, l) - _c(n - r, l) - _c(n - r - t, l - 1)
                        assert counts[l] == expect, (n, r, t, l)


def _c(a, b):
    if a < 0 or b < 0 or b > a:
        return 0
    return math.comb(a, b)


class TestImmutability:
    def test_bits_readonly(self):
        fam = construct(GroundSet(3), Full())
        with pytest.raises(ValueError):
            fam.bits[0] = False
        with pytest.raises(AttributeError):
            fam.bits = None

    def test_operations_do_not_mutate(self):
        fam = build(GroundSet(4), [{1}, {2, 3}])
        before = fam.bits.copy()
        ek.up_closure(fam)
        ek.dual(fam)
        fam.slice(1)
        assert (fam.bits == before).all()


class TestFamilyFiles:
    def test_round_trip(self, tmp_path):
        for i, fam in enumerate(random_families(seed=91, count=15, n_max=8)):
            path = tmp_path / f"fam{i}.family"
            ek.write_family(fam, path)
            assert ek.read_family(path) == fam

    def test_format_variants(self):
        text = """# a comment
n=4
1,2
{}            # the empty set
mask=0xc
3
"""
        fam = ek.parse_family(text)
        assert members_set(fam) == {
            frozenset({1, 2}), frozenset(), frozenset({3, 4}), frozenset({3})}

    def test_duplicate_lines_collapse(self):
        fam = ek.parse_family("n=3\n1,2\nmask=0x3\n")
        assert fam.size == 1

    def test_missing_header(self):
        with pytest.raises(ValueError):
            ek.parse_family("1,2\n")

    def test_bad_element(self):
        with pytest.raises(ValueError):
            ek.parse_family("n=3\n1,5\n")

    def test_bad_mask(self):
        with pytest.raises(ValueError):
            ek.parse_family("n=3\nmask=0xff\n")
