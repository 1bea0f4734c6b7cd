"""Exact p-biased measures, influences, and executable inequality checkers.

Every measure, influence, tail, and derivative is an exact rational
(fractions.Fraction over big integers), so the classical identities (Russo,
influence duality, integral of influence) are tested as equalities rather
than approximations.  The two genuinely transcendental comparisons are
handled without ever reporting a false verdict: the biased isoperimetric
inequality is decided exactly by clearing rational exponents to integers,
and the log_p-monotonicity and Chernoff checks use interval arithmetic with
an INDETERMINATE escape at caller-controlled precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from mpmath import iv

from .family import (
    Dictatorship,
    SetFamily,
    _mask_range,
    construct,
    dual,
    is_decreasing,
    is_increasing,
    is_intersecting,
    subset_sizes,
    uniform_level,
    up_closure,
)
from .verdict import TernaryVerdict, fails, holds, indeterminate
from .ratcmp import compare_rational_powers, rational_power_ratio

# All exact scalar quantities are plain fractions.Fraction values.
ExactRational = Fraction


def as_rational(x) -> Fraction:
    """Coerce ints, 'a/b' strings, and Fractions to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational (int, Fraction, or 'a/b' string), got {x!r}")


def _check_prob(p, lo: Fraction = Fraction(0), hi: Fraction = Fraction(1), strict_lo=False, strict_hi=False) -> Fraction:
    p = as_rational(p)
    if p < lo or (strict_lo and p == lo) or p > hi or (strict_hi and p == hi):
        lo_b = "(" if strict_lo else "["
        hi_b = ")" if strict_hi else "]"
        raise ValueError(f"probability {p} outside {lo_b}{lo}, {hi}{hi_b}")
    return p


def profile(family: SetFamily) -> tuple[int, ...]:
    """Level counts (a_0, ..., a_n) with a_l the number of members of size l."""
    return family.level_counts()


@dataclass(frozen=True)
class MeasurePolynomial:
    """A polynomial q -> sum_l counts[l] q^l (1-q)^(n-l), stored in the level basis.

    For a family's measure polynomial the counts are its profile; the same
    shape also carries the total-influence polynomial q -> I^q[F].
    """

    n: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != self.n + 1:
            raise ValueError(f"expected {self.n + 1} level counts, got {len(self.counts)}")

    def evaluate(self, q) -> Fraction:
        q = as_rational(q)
        r = 1 - q
        q_pow = [Fraction(1)]
        r_pow = [Fraction(1)]
        for _ in range(self.n):
            q_pow.append(q_pow[-1] * q)
            r_pow.append(r_pow[-1] * r)
        return sum(
            (a * q_pow[l] * r_pow[self.n - l] for l, a in enumerate(self.counts) if a),
            Fraction(0),
        )

    def coefficients(self) -> tuple[int, ...]:
        """Exact monomial coefficients c_0..c_n with value(q) = sum c_d q^d."""
        coeffs = [0] * (self.n + 1)
        for l, a in enumerate(self.counts):
            if not a:
                continue
            for d in range(l, self.n + 1):
                coeffs[d] += a * math.comb(self.n - l, d - l) * (-1) ** (d - l)
        return tuple(coeffs)

    def derivative_at(self, q) -> Fraction:
        q = as_rational(q)
        total = Fraction(0)
        q_pow = Fraction(1)
        for d, c in enumerate(self.coefficients()):
            if d >= 1:
                total += d * c * q_pow
                q_pow *= q
        return total

    def integral(self, lo, hi) -> Fraction:
        lo, hi = as_rational(lo), as_rational(hi)
        if lo > hi:
            raise ValueError(f"integration bounds out of order: {lo} > {hi}")
        total = Fraction(0)
        lo_pow, hi_pow = lo, hi
        for d, c in enumerate(self.coefficients()):
            lo_pow *= lo if d else 1
            hi_pow *= hi if d else 1
            # after the update, lo_pow = lo^(d+1)
            total += Fraction(c, d + 1) * (hi_pow - lo_pow)
        return total


def measure_polynomial(family: SetFamily) -> MeasurePolynomial:
    return MeasurePolynomial(family.n, profile(family))


def mu(family: SetFamily, p) -> Fraction:
    """The p-biased measure of the family, exactly."""
    p = _check_prob(p)
    return measure_polynomial(family).evaluate(p)


def _boundary_counts(family: SetFamily, i: int) -> np.ndarray:
    n = family.n
    if not 1 <= i <= n:
        raise ValueError(f"element {i} out of range 1..{n}")
    flipped = _mask_range(n) ^ np.uint32(1 << (i - 1))
    boundary = family.bits != family.bits[flipped]
    return np.bincount(subset_sizes(n)[boundary], minlength=n + 1)


def influence(family: SetFamily, i: int, p) -> Fraction:
    """Measure of the sets whose membership flips when element i is toggled."""
    p = _check_prob(p)
    counts = tuple(int(c) for c in _boundary_counts(family, i))
    return MeasurePolynomial(family.n, counts).evaluate(p)


def influence_polynomial(family: SetFamily) -> MeasurePolynomial:
    """The total-influence polynomial q -> I^q[F], in the level basis."""
    n = family.n
    total = np.zeros(n + 1, dtype=object)
    for i in range(1, n + 1):
        total += _boundary_counts(family, i)
    return MeasurePolynomial(n, tuple(int(c) for c in total))


def total_influence(family: SetFamily, p) -> Fraction:
    p = _check_prob(p)
    return influence_polynomial(family).evaluate(p)


def derivative_at(family: SetFamily, p) -> Fraction:
    """Exact derivative of q -> mu_q(F) at p."""
    return measure_polynomial(family).derivative_at(as_rational(p))


def integral_of_influence(family: SetFamily, p_lo, p_hi) -> Fraction:
    """Exact integral of q -> I^q[F] over [p_lo, p_hi]."""
    return influence_polynomial(family).integral(p_lo, p_hi)


# -- checkers ---------------------------------------------------------------


def check_russo(family: SetFamily, p) -> TernaryVerdict:
    """Russo's lemma: d/dq mu_q(F) at p equals I^p[F] for increasing F."""
    if not is_increasing(family):
        raise ValueError("check_russo requires an increasing family")
    p = _check_prob(p)
    lhs = derivative_at(family, p)
    rhs = total_influence(family, p)
    if lhs == rhs:
        return holds(equality=True, value=str(lhs))
    return fails({"derivative": str(lhs), "total_influence": str(rhs)})


def _find_dictatorship(family: SetFamily) -> int | None:
    for j in range(1, family.n + 1):
        if family == construct(family.ground, Dictatorship(j)):
            return j
    return None


def check_biased_ekr(family: SetFamily, p) -> TernaryVerdict:
    """Biased Erdos-Ko-Rado: mu_p(F) <= p for intersecting F, 0 < p <= 1/2.

    For p < 1/2 equality is diagnosed: it must identify a dictatorship, and
    an equality case that is not a dictatorship is reported as FAILS.
    """
    if not is_intersecting(family):
        raise ValueError("check_biased_ekr requires an intersecting family")
    p = _check_prob(p, hi=Fraction(1, 2), strict_lo=True)
    m = mu(family, p)
    if m > p:
        return fails({"mu": str(m), "p": str(p)})
    if m < p:
        return holds(equality=False)
    j = _find_dictatorship(family)
    if p < Fraction(1, 2):
        if j is None:
            return fails(
                {"mu": str(m), "p": str(p)},
                equality=True,
                note="equality held but the family is not a dictatorship",
            )
        return holds(equality=True, dictatorship=j)
    return holds(equality=True, dictatorship=j, note="p = 1/2 carries no uniqueness claim")


def _check_common_monotone(families) -> None:
    if all(is_increasing(f) for f in families):
        return
    if all(is_decreasing(f) for f in families):
        return
    raise ValueError("Harris correlation requires all families increasing or all decreasing")


def check_harris(fam_a: SetFamily, fam_b: SetFamily, p) -> TernaryVerdict:
    """Harris inequality: mu_p(A intersect B) >= mu_p(A) mu_p(B)."""
    fam_a._check_same_ground(fam_b)
    p = _check_prob(p, strict_lo=True, strict_hi=True)
    _check_common_monotone([fam_a, fam_b])
    lhs = mu(fam_a & fam_b, p)
    rhs = mu(fam_a, p) * mu(fam_b, p)
    if lhs < rhs:
        return fails({"mu_intersection": str(lhs), "product": str(rhs)})
    return holds(equality=lhs == rhs)


def check_harris_many(families, p) -> TernaryVerdict:
    """Iterated Harris: the measure of an intersection dominates the product."""
    families = list(families)
    if not families:
        raise ValueError("need at least one family")
    for f in families[1:]:
        families[0]._check_same_ground(f)
    p = _check_prob(p, strict_lo=True, strict_hi=True)
    _check_common_monotone(families)
    inter = families[0]
    for f in families[1:]:
        inter = inter & f
    lhs = mu(inter, p)
    rhs = math.prod((mu(f, p) for f in families), start=Fraction(1))
    if lhs < rhs:
        return fails({"mu_intersection": str(lhs), "product": str(rhs)})
    return holds(equality=lhs == rhs)


def check_biased_iso(family: SetFamily, p) -> TernaryVerdict:
    """Biased isoperimetric inequality: p I^p[A] >= mu log_p(mu) for increasing A.

    Decided exactly: with D clearing both rational exponents, the inequality
    is equivalent to p^(pI D) <= mu^(mu D), a comparison of integer powers.
    mu in {0, 1} is reported HOLDS by convention (limits of x log x).
    """
    if not is_increasing(family):
        raise ValueError("check_biased_iso requires an increasing family")
    p = _check_prob(p, strict_lo=True, strict_hi=True)
    m = mu(family, p)
    if m == 0 or m == 1:
        return holds(note="mu in {0,1}: right side is 0 by convention")
    p_i = p * total_influence(family, p)
    d = math.lcm(p_i.denominator, m.denominator)
    m_exp = int(p_i * d)
    k_exp = int(m * d)
    sign = compare_rational_powers(p, m_exp, m, k_exp)
    if sign <= 0:
        return holds(equality=sign == 0)
    return fails({"p_total_influence": str(p_i), "mu": str(m)})


def _iv_log_fraction(x: Fraction):
    return iv.log(iv.mpf(x.numerator)) - iv.log(iv.mpf(x.denominator))


def check_logp_monotone(family: SetFamily, p1, p2, precision_bits: int = 128) -> TernaryVerdict:
    """Monotonicity of p -> log_p(mu_p(A)) for increasing A, on p1 < p2.

    Equivalent to ln(mu_1) ln(p2) >= ln(mu_2) ln(p1).  Exact power relations
    (mu_i = p_i^a) are recognized exactly; otherwise the products of logs are
    compared by interval arithmetic at the given precision, returning
    INDETERMINATE with a precision report when the intervals overlap.
    """
    if not is_increasing(family):
        raise ValueError("check_logp_monotone requires an increasing family")
    p1 = _check_prob(p1, strict_lo=True, strict_hi=True)
    p2 = _check_prob(p2, strict_lo=True, strict_hi=True)
    if not p1 < p2:
        raise ValueError(f"need p1 < p2, got {p1} >= {p2}")
    mu1 = mu(family, p1)
    mu2 = mu(family, p2)
    if mu1 == 0:
        raise ValueError("check_logp_monotone requires mu_{p1}(A) > 0")
    if mu1 == 1:
        # Increasing with full measure at an interior p means the full family.
        return holds(equality=True, note="mu = 1: both sides are 0")
    a1 = rational_power_ratio(mu1, p1)
    a2 = rational_power_ratio(mu2, p2)
    if a1 is not None and a2 is not None:
        # Both log_p(mu_p) values are the exact rationals a1 >= a2.
        if a1 > a2:
            return holds(equality=False, exact=True)
        if a1 == a2:
            return holds(equality=True, exact=True)
        return fails({"log_p1_mu1": str(a1), "log_p2_mu2": str(a2)})
    saved = iv.prec
    try:
        iv.prec = precision_bits
        lhs = _iv_log_fraction(mu1) * _iv_log_fraction(p2)
        rhs = _iv_log_fraction(mu2) * _iv_log_fraction(p1)
        diff = lhs - rhs
        if diff > 0:
            return holds(equality=False)
        if diff < 0:
            return fails({"lhs": str(lhs), "rhs": str(rhs)})
        return indeterminate(
            precision_bits,
            lhs_interval=str(lhs),
            rhs_interval=str(rhs),
            hint="escalate precision_bits",
        )
    finally:
        iv.prec = saved


def binomial_tail(n: int, p, k: int) -> Fraction:
    """Exact upper tail Pr[Bin(n, p) >= k]."""
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    p = _check_prob(p)
    if k <= 0:
        return Fraction(1)
    if k > n:
        return Fraction(0)
    q = 1 - p
    total = Fraction(0)
    term_p = p**k
    for j in range(k, n + 1):
        total += math.comb(n, j) * term_p * q ** (n - j)
        term_p *= p
    return total


def check_chernoff(n: int, p, delta, precision_bits: int = 128) -> TernaryVerdict:
    """Lower-tail Chernoff bound: Pr[X <= (1-delta)np] < exp(-delta^2 np / 2).

    The tail is an exact rational; the exponential is bracketed by interval
    arithmetic (escalating from precision_bits), so HOLDS and FAILS are both
    certified and overlap yields INDETERMINATE.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    p = _check_prob(p, strict_lo=True, strict_hi=True)
    delta = as_rational(delta)
    if not 0 < delta < 1:
        raise ValueError(f"need 0 < delta < 1, got {delta}")
    threshold = math.floor((1 - delta) * n * p)
    tail = 1 - binomial_tail(n, p, threshold + 1)
    x = delta * delta * n * p / 2
    saved = iv.prec
    try:
        prec = precision_bits
        while True:
            iv.prec = prec
            bound = iv.exp(-iv.mpf(x.numerator) / iv.mpf(x.denominator))
            tail_iv = iv.mpf(tail.numerator) / iv.mpf(tail.denominator)
            if tail_iv < bound:
                return holds(equality=False, tail=str(tail))
            if tail_iv >= bound:
                return fails({"tail": str(tail), "bound_interval": str(bound)})
            if prec >= max(1024, 8 * precision_bits):
                return indeterminate(prec, tail=str(tail), bound_interval=str(bound))
            prec *= 2
    finally:
        iv.prec = saved


def check_going_up(family: SetFamily, p) -> TernaryVerdict:
    """For k-uniform G with |G| = alpha C(n,k): mu_p of the up-closure is at
    least alpha Pr[Bin(n,p) >= k], exactly."""
    p = _check_prob(p)
    if family.is_empty():
        return holds(equality=True, note="empty family: 0 >= 0")
    k = uniform_level(family)
    if k is None:
        raise ValueError("check_going_up requires a uniform family")
    n = family.n
    alpha = Fraction(family.size, math.comb(n, k))
    lhs = mu(up_closure(family), p)
    rhs = alpha * binomial_tail(n, p, k)
    if lhs < rhs:
        return fails({"mu_up_closure": str(lhs), "alpha_tail": str(rhs)})
    return holds(equality=lhs == rhs)


def check_fkg_union(families, p) -> TernaryVerdict:
    """Union of r intersecting families has mu_p at most 1 - (1-p)^r, 0 < p <= 1/2."""
    families = list(families)
    if not families:
        raise ValueError("need at least one family")
    for f in families[1:]:
        families[0]._check_same_ground(f)
    p = _check_prob(p, hi=Fraction(1, 2), strict_lo=True)
    for idx, f in enumerate(families):
        if not is_intersecting(f):
            raise ValueError(f"family #{idx + 1} is not intersecting")
    union = families[0]
    for f in families[1:]:
        union = union | f
    r = len(families)
    lhs = mu(union, p)
    rhs = 1 - (1 - p) ** r
    dictators = [_find_dictatorship(f) for f in families]
    distinct = all(j is not None for j in dictators) and len(set(dictators)) == r
    if lhs > rhs:
        return fails({"mu_union": str(lhs), "bound": str(rhs)})
    return holds(equality=lhs == rhs, distinct_dictatorships=distinct)


def check_influence_duality(family: SetFamily, p) -> TernaryVerdict:
    """Total influence at p equals the dual family's total influence at 1-p."""
    p = _check_prob(p)
    lhs = total_influence(family, p)
    rhs = total_influence(dual(family), 1 - p)
    if lhs == rhs:
        return holds(equality=True, value=str(lhs))
    return fails({"influence": str(lhs), "dual_influence": str(rhs)})
