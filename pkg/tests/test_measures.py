import math
import random
from fractions import Fraction as F

import pytest

import ekrlab as ek
from ekrlab import (
    Dictatorship,
    FranklFuredi,
    Full,
    FullLevel,
    GroundSet,
    OrFamily,
    Subcube,
    SupersetFamily,
    build,
    construct,
)
from ekrlab.corpus import (
    random_increasing_family,
    random_intersecting_family,
    rng_from_seed,
)
from conftest import masks_of


def oracle_mu(fam, p):
    """Definitional sum over members, independent of the profile path."""
    n = fam.n
    total = F(0)
    for m in masks_of(fam):
        k = bin(m).count("1")
        total += p**k * (1 - p) ** (n - k)
    return total


def oracle_influence(fam, i, p):
    n = fam.n
    total = F(0)
    for m in range(1 << n):
        if bool(fam.bits[m]) != bool(fam.bits[m ^ (1 << (i - 1))]):
            k = bin(m).count("1")
            total += p**k * (1 - p) ** (n - k)
    return total


class TestMu:
    def test_dictatorship(self):
        assert ek.mu(construct(GroundSet(5), Dictatorship(1)), F(1, 3)) == F(1, 3)

    def test_or_two(self):
        fam = construct(GroundSet(4), OrFamily([1, 2]))
        assert ek.mu(fam, F(1, 2)) == F(3, 4)  # 1 - (1-p)^2

    def test_frankl_furedi(self):
        fam = construct(GroundSet(6), FranklFuredi(2, 2))
        # 1 - (1-p)^r - p(1-p)^(r+t-1) at p = 1/2
        assert ek.mu(fam, F(1, 2)) == F(11, 16)

    def test_range_validation(self):
        with pytest.raises(ValueError):
            ek.mu(construct(GroundSet(3), Full()), F(3, 2))

    def test_profile_agrees_with_definition(self):
        rng = rng_from_seed(42)
        for _ in range(25):
            n = rng.randint(2, 7)
            fam = random_increasing_family(rng, n)
            for p in (F(1, 3), F(2, 5), F(1, 2)):
                assert ek.mu(fam, p) == oracle_mu(fam, p)

    def test_duality_identity(self):
        rng = rng_from_seed(9)
        for _ in range(20):
            n = rng.randint(2, 7)
            fam = random_increasing_family(rng, n)
            p = F(rng.randint(1, 6), 7)
            assert ek.mu(fam, p) + ek.mu(ek.dual(fam), 1 - p) == 1


class TestInfluence:
    def test_dictatorship(self):
        fam = construct(GroundSet(5), Dictatorship(1))
        assert ek.influence(fam, 1, F(1, 3)) == 1
        assert ek.influence(fam, 2, F(1, 3)) == 0

    def test_or_total(self):
        fam = construct(GroundSet(6), OrFamily([1, 2]))
        assert ek.total_influence(fam, F(1, 3)) == F(4, 3)  # r(1-p)^(r-1)

    def test_superset_total(self):
        fam = construct(GroundSet(6), SupersetFamily([1, 2]))
        assert ek.total_influence(fam, F(2, 3)) == F(4, 3)
        assert sum(oracle_influence(fam, i, F(2, 3)) for i in range(1, 7)) == F(4, 3)

    def test_against_definition(self):
        rng = rng_from_seed(17)
        for _ in range(10):
            n = rng.randint(2, 6)
            fam = random_increasing_family(rng, n)
            p = F(rng.randint(1, 4), 5)
            for i in range(1, n + 1):
                assert ek.influence(fam, i, p) == oracle_influence(fam, i, p)

    def test_complement_symmetry(self):
        rng = rng_from_seed(23)
        for _ in range(15):
            n = rng.randint(2, 7)
            fam = random_increasing_family(rng, n)
            p = F(2, 7)
            assert ek.total_influence(fam, p) == ek.total_influence(~fam, p)

    def test_index_out_of_range(self):
        with pytest.raises(ValueError):
            ek.influence(construct(GroundSet(3), Full()), 4, F(1, 2))


class TestMeasurePolynomial:
    def test_or_two_derivative(self):
        fam = construct(GroundSet(4), OrFamily([1, 2]))
        # mu_q = 2q - q^2, derivative 2 - 2q
        assert ek.derivative_at(fam, F(1, 4)) == F(3, 2)
        assert ek.derivative_at(fam, F(1, 4)) == ek.total_influence(fam, F(1, 4))

    def test_derivative_against_sympy(self):
        sympy = pytest.importorskip("sympy")
        q = sympy.Symbol("q")
        rng = rng_from_seed(31)
        for _ in range(8):
            n = rng.randint(2, 6)
            fam = random_increasing_family(rng, n)
            expr = sympy.Integer(0)
            for m in masks_of(fam):
                k = bin(m).count("1")
                expr += q**k * (1 - q) ** (n - k)
            at = F(rng.randint(1, 6), 7)
            expect = sympy.Rational(sympy.diff(expr, q).subs(q, sympy.Rational(at)))
            assert ek.derivative_at(fam, at) == F(int(expect.p), int(expect.q))

    def test_dictatorship_integral(self):
        fam = construct(GroundSet(5), Dictatorship(1))
        assert ek.integral_of_influence(fam, F(1, 4), F(1, 2)) == F(1, 4)

    def test_integral_identity_random(self):
        rng = rng_from_seed(47)
        for _ in range(15):
            fam = random_increasing_family(rng, 8)
            p = F(rng.randint(1, 3), 7)
            lhs = ek.integral_of_influence(fam, p, F(1, 2))
            assert lhs == ek.mu(fam, F(1, 2)) - ek.mu(fam, p)

    def test_bounds_order(self):
        fam = construct(GroundSet(3), Full())
        with pytest.raises(ValueError):
            ek.integral_of_influence(fam, F(1, 2), F(1, 4))

    def test_coefficients_evaluate(self):
        fam = construct(GroundSet(5), FranklFuredi(2, 2))
        poly = ek.measure_polynomial(fam)
        coeffs = poly.coefficients()
        for p in (F(1, 3), F(4, 7)):
            assert sum(c * p**d for d, c in enumerate(coeffs)) == poly.evaluate(p)

    def test_measure_in_unit_interval(self):
        rng = rng_from_seed(3)
        for _ in range(10):
            fam = random_increasing_family(rng, 6)
            poly = ek.measure_polynomial(fam)
            for p in (F(1, 7), F(1, 2), F(6, 7)):
                assert 0 <= poly.evaluate(p) <= 1


class TestRusso:
    def test_dictatorship(self):
        fam = construct(GroundSet(4), Dictatorship(1))
        v = ek.check_russo(fam, F(2, 7))
        assert v.holds and v.equality

    def test_or_two(self):
        fam = construct(GroundSet(5), OrFamily([1, 2]))
        assert ek.check_russo(fam, F(1, 3)).holds
        assert ek.derivative_at(fam, F(1, 3)) == F(4, 3)

    def test_requires_increasing(self):
        with pytest.raises(ValueError):
            ek.check_russo(construct(GroundSet(4), FullLevel(2)), F(1, 2))

    def test_random_increasing(self):
        rng = rng_from_seed(11)
        for _ in range(30):
            n = rng.randint(2, 8)
            fam = random_increasing_family(rng, n)
            p = F(rng.randint(1, 9), 10)
            assert ek.check_russo(fam, p).holds

    def test_monotone_measure(self):
        rng = rng_from_seed(29)
        for _ in range(15):
            fam = random_increasing_family(rng, 7)
            assert ek.mu(fam, F(1, 4)) <= ek.mu(fam, F(2, 5)) <= ek.mu(fam, F(1, 2))


class TestBiasedEkr:
    def test_dictatorship_equality(self):
        v = ek.check_biased_ekr(construct(GroundSet(5), Dictatorship(1)), F(1, 3))
        assert v.holds and v.equality and v.info["dictatorship"] == 1

    def test_strict(self):
        base = construct(GroundSet(5), Dictatorship(1)).slice(2)
        v = ek.check_biased_ekr(ek.up_closure(base), F(1, 3))
        assert v.holds and v.equality is False

    def test_empty(self):
        v = ek.check_biased_ekr(build(GroundSet(4), []), F(1, 4))
        assert v.holds and v.equality is False

    def test_not_intersecting(self):
        with pytest.raises(ValueError):
            ek.check_biased_ekr(construct(GroundSet(5), FullLevel(2)), F(1, 3))

    def test_p_out_of_range(self):
        with pytest.raises(ValueError):
            ek.check_biased_ekr(construct(GroundSet(4), Dictatorship(1)), F(2, 3))

    def test_half_no_uniqueness(self):
        # A maximal intersecting non-dictatorship has measure exactly 1/2 at p = 1/2.
        maj = build(GroundSet(3), [{1, 2}, {1, 3}, {2, 3}, {1, 2, 3}])
        v = ek.check_biased_ekr(maj, F(1, 2))
        assert v.holds and v.equality

    def test_random_corpus(self):
        rng = rng_from_seed(101)
        for _ in range(50):
            n = rng.randint(2, 8)
            fam = random_intersecting_family(rng, n)
            for p in (F(1, 4), F(1, 3), F(1, 2)):
                v = ek.check_biased_ekr(fam, p)
                assert v.holds
                if v.equality and p < F(1, 2):
                    assert v.info.get("dictatorship") is not None


class TestHarris:
    def test_independent_dictatorships(self):
        g = GroundSet(5)
        v = ek.check_harris(construct(g, Dictatorship(1)), construct(g, Dictatorship(2)),
                            F(1, 3))
        assert v.holds and v.equality

    def test_same_dictatorship_strict(self):
        g = GroundSet(5)
        d = construct(g, Dictatorship(1))
        v = ek.check_harris(d, d, F(1, 3))
        assert v.holds and v.equality is False

    def test_random_increasing_pairs(self):
        rng = rng_from_seed(59)
        for _ in range(20):
            a = random_increasing_family(rng, 8)
            b = random_increasing_family(rng, 8)
            assert ek.check_harris(a, b, F(2, 5)).holds

    def test_decreasing_pairs(self):
        rng = rng_from_seed(61)
        for _ in range(10):
            a = ~random_increasing_family(rng, 6)
            b = ~random_increasing_family(rng, 6)
            assert ek.check_harris(a, b, F(1, 3)).holds

    def test_mixed_monotonicity_rejected(self):
        g = GroundSet(4)
        with pytest.raises(ValueError):
            ek.check_harris(construct(g, Dictatorship(1)),
                            ~construct(g, Dictatorship(2)), F(1, 2))

    def test_many(self):
        g = GroundSet(6)
        fams = [construct(g, Dictatorship(j)) for j in (1, 2, 3)]
        v = ek.check_harris_many(fams, F(1, 3))
        assert v.holds and v.equality


class TestBiasedIso:
    def test_dictatorship_tight(self):
        for p in (F(1, 4), F(1, 3), F(2, 5)):
            v = ek.check_biased_iso(construct(GroundSet(6), Dictatorship(1)), p)
            assert v.holds and v.equality

    def test_subcube_tight(self):
        for p in (F(1, 4), F(1, 3), F(2, 5)):
            v = ek.check_biased_iso(construct(GroundSet(6), SupersetFamily([1, 2])), p)
            assert v.holds and v.equality, p

    def test_or_strict(self):
        v = ek.check_biased_iso(construct(GroundSet(6), OrFamily([1, 2])), F(1, 2))
        assert v.holds and v.equality is False

    def test_full_and_empty_convention(self):
        assert ek.check_biased_iso(construct(GroundSet(4), Full()), F(1, 3)).holds
        assert ek.check_biased_iso(build(GroundSet(4), []), F(1, 3)).holds

    def test_requires_increasing(self):
        with pytest.raises(ValueError):
            ek.check_biased_iso(construct(GroundSet(4), FullLevel(2)), F(1, 3))

    def test_random_increasing(self):
        rng = rng_from_seed(71)
        for _ in range(25):
            fam = random_increasing_family(rng, rng.randint(2, 8))
            for p in (F(1, 4), F(2, 5)):
                assert ek.check_biased_iso(fam, p).holds

    def test_float_sanity(self):
        import math as m
        rng = rng_from_seed(73)
        for _ in range(10):
            fam = random_increasing_family(rng, 6)
            p = F(1, 3)
            mu = ek.mu(fam, p)
            if mu in (0, 1):
                continue
            lhs = float(p * ek.total_influence(fam, p))
            rhs = float(mu) * m.log(float(mu)) / m.log(float(p))
            assert lhs >= rhs - 1e-9


class TestLogpMonotone:
    def test_or_two(self):
        v = ek.check_logp_monotone(construct(GroundSet(6), OrFamily([1, 2])),
                                   F(1, 4), F(1, 2), 128)
        assert v.holds and v.equality is False

    def test_dictatorship_equality(self):
        v = ek.check_logp_monotone(construct(GroundSet(6), Dictatorship(1)),
                                   F(1, 4), F(1, 2))
        assert v.holds and v.equality

    def test_full_family_convention(self):
        v = ek.check_logp_monotone(construct(GroundSet(5), Full()), F(1, 4), F(1, 2))
        assert v.holds and v.equality

    def test_subcube_power_relation(self):
        v = ek.check_logp_monotone(construct(GroundSet(6), SupersetFamily([1, 2, 3])),
                                   F(1, 5), F(2, 5))
        assert v.holds and v.info.get("exact")

    def test_random_increasing(self):
        rng = rng_from_seed(83)
        for _ in range(20):
            fam = random_increasing_family(rng, rng.randint(2, 7))
            v = ek.check_logp_monotone(fam, F(1, 4), F(2, 5), 192)
            assert not v.fails

    def test_preconditions(self):
        fam = construct(GroundSet(4), Dictatorship(1))
        with pytest.raises(ValueError):
            ek.check_logp_monotone(fam, F(1, 2), F(1, 4))
        with pytest.raises(ValueError):
            ek.check_logp_monotone(build(GroundSet(4), []), F(1, 4), F(1, 2))


class TestBinomialTailChernoff:
    def test_small_tail(self):
        assert ek.binomial_tail(3, F(1, 2), 2) == F(1, 2)

    def test_zero_threshold(self):
        assert ek.binomial_tail(7, F(1, 3), 0) == 1

    def test_beyond_n(self):
        assert ek.binomial_tail(4, F(1, 2), 5) == 0

    def test_tail_against_sum(self):
        n, p = 9, F(2, 7)
        for k in range(0, n + 2):
            expect = sum(math.comb(n, j) * p**j * (1 - p) ** (n - j)
                         for j in range(k, n + 1))
            assert ek.binomial_tail(n, p, k) == expect

    def test_chernoff_example(self):
        v = ek.check_chernoff(100, F(1, 2), F(1, 5))
        assert v.holds
        tail = F(v.info["tail"])
        assert abs(float(tail) - 0.0284) < 5e-4

    def test_chernoff_low_precision_indeterminate_path(self):
        # With one bit the exponential interval is far too wide to certify.
        v = ek.check_chernoff(4, F(1, 2), F(1, 10), precision_bits=1)
        assert not v.fails

    def test_chernoff_validation(self):
        with pytest.raises(ValueError):
            ek.check_chernoff(10, F(1, 2), F(3, 2))


class TestGoingUp:
    def test_single_pair(self):
        fam = build(GroundSet(3), [{1, 2}])
        v = ek.check_going_up(fam, F(1, 2))
        assert v.holds
        assert ek.mu(ek.up_closure(fam), F(1, 2)) == F(1, 4)
        assert F(1, 3) * ek.binomial_tail(3, F(1, 2), 2) == F(1, 6)

    def test_full_level_equality(self):
        fam = construct(GroundSet(6), FullLevel(2))
        v = ek.check_going_up(fam, F(1, 3))
        assert v.holds and v.equality

    def test_empty(self):
        assert ek.check_going_up(build(GroundSet(4), []), F(1, 2)).holds

    def test_not_uniform(self):
        with pytest.raises(ValueError):
            ek.check_going_up(build(GroundSet(4), [{1}, {1, 2}]), F(1, 2))

    def test_random_uniform(self):
        from ekrlab.corpus import random_uniform_family
        rng = rng_from_seed(97)
        for _ in range(20):
            n = rng.randint(3, 8)
            k = rng.randint(1, n - 1)
            fam = random_uniform_family(rng, n, k)
            assert ek.check_going_up(fam, F(2, 5)).holds


class TestFkgUnion:
    def test_distinct_dictatorships_equality(self):
        g = GroundSet(6)
        for r in (1, 2, 3):
            fams = [construct(g, Dictatorship(j)) for j in range(1, r + 1)]
            for p in (F(1, 4), F(1, 2)):
                v = ek.check_fkg_union(fams, p)
                assert v.holds and v.equality and v.info["distinct_dictatorships"]

    def test_repeated_dictatorship_strict(self):
        g = GroundSet(5)
        d = construct(g, Dictatorship(1))
        v = ek.check_fkg_union([d, d], F(1, 3))
        assert v.holds and v.equality is False

    def test_random_intersecting(self):
        rng = rng_from_seed(103)
        for _ in range(20):
            n = rng.randint(2, 8)
            fams = [random_intersecting_family(rng, n)
                    for _ in range(rng.randint(1, 3))]
            assert ek.check_fkg_union(fams, F(1, 2)).holds

    def test_rejects_non_intersecting(self):
        g = GroundSet(5)
        with pytest.raises(ValueError):
            ek.check_fkg_union([construct(g, FullLevel(2))], F(1, 3))

    def test_rejects_large_p(self):
        g = GroundSet(5)
        with pytest.raises(ValueError):
            ek.check_fkg_union([construct(g, Dictatorship(1))], F(2, 3))


class TestInfluenceDuality:
    def test_or_two(self):
        fam = construct(GroundSet(6), OrFamily([1, 2]))
        v = ek.check_influence_duality(fam, F(1, 3))
        assert v.holds
        assert ek.total_influence(fam, F(1, 3)) == F(4, 3)

    def test_dictatorship(self):
        v = ek.check_influence_duality(construct(GroundSet(5), Dictatorship(1)), F(2, 7))
        assert v.holds

    def test_random(self):
        from ekrlab.corpus import random_family
        rng = rng_from_seed(107)
        for _ in range(20):
            n = rng.randint(2, 8)
            fam = random_family(rng, n)
            assert ek.check_influence_duality(fam, F(2, 7)).holds
