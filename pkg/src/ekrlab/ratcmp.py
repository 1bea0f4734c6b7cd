"""Exact comparison of rational powers and integer-log linear forms.

The checkers reduce transcendental inequalities to statements of the form
x^M <= y^K with positive rationals x, y and big integer exponents M, K.
Equality is decided exactly through prime valuations; strict inequalities
are certified either by direct big-integer comparison (small cases) or by
interval arithmetic at escalating precision, which terminates because two
distinct integers below 2^B have logarithms separated by at least 2^-B.
"""

from __future__ import annotations

from fractions import Fraction

from mpmath import iv

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # Deterministic for n < 3.3 * 10^24 with these witnesses.
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    import math
    import random

    rng = random.Random(n)
    while True:
        c = rng.randrange(1, n)
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer (desk scale, < 2^80 or so)."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 7
    increments = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while f * f <= n and f < 100_000:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += increments[i]
        i = (i + 1) % 8
    if n > 1:
        stack = [n]
        while stack:
            m = stack.pop()
            if m == 1:
                continue
            if _is_probable_prime(m):
                out[m] = out.get(m, 0) + 1
                continue
            d = _pollard_rho(m)
            stack.append(d)
            stack.append(m // d)
    return out


def valuation(n: int, q: int) -> tuple[int, int]:
    """Largest v with q^v dividing n, plus the cofactor n / q^v."""
    v = 0
    while n % q == 0:
        n //= q
        v += 1
    return v, n


def exponent_vector(x: Fraction, primes) -> dict[int, int] | None:
    """Exponents of x over the given primes, or None if other primes occur."""
    num, den = x.numerator, x.denominator
    vec = {}
    for q in primes:
        vn, num = valuation(num, q)
        vd, den = valuation(den, q)
        vec[q] = vn - vd
    if num != 1 or den != 1:
        return None
    return vec


def log_linear_sign(terms, start_bits: int = 128, max_bits: int = 1 << 20) -> int | None:
    """Certified sign of sum(c * ln(m)) over integer pairs (c, m), m >= 1.

    Returns +1, -1, or 0 only when certain; None when the interval still
    straddles zero at max_bits precision.
    """
    cleaned = [(c, m) for c, m in terms if c != 0 and m != 1]
    if not cleaned:
        return 0
    saved = iv.prec
    try:
        prec = start_bits
        while True:
            iv.prec = prec
            total = iv.mpf(0)
            for c, m in cleaned:
                total += iv.mpf(c) * iv.log(iv.mpf(m))
            if total > 0:
                return 1
            if total < 0:
                return -1
            if prec >= max_bits:
                return None
            prec = min(prec * 2, max_bits)
    finally:
        iv.prec = saved


def _positive(x: Fraction, name: str) -> None:
    if x <= 0:
        raise ValueError(f"{name} must be positive, got {x}")


def powers_equal(x: Fraction, m_exp: int, y: Fraction, k_exp: int) -> bool:
    """Exact test of x^M == y^K via prime valuations; no huge powers built."""
    if m_exp == 0 and k_exp == 0:
        return True
    if m_exp == 0:
        return y == 1
    if k_exp == 0:
        return x == 1
    if x == 1:
        return y == 1
    if y == 1:
        return False
    primes = sorted(factorize(x.numerator).keys() | factorize(x.denominator).keys())
    vy = exponent_vector(y, primes)
    if vy is None:
        return False
    vx = exponent_vector(x, primes)
    return all(m_exp * vx[q] == k_exp * vy[q] for q in primes)


def compare_rational_powers(
    x: Fraction,
    m_exp: int,
    y: Fraction,
    k_exp: int,
    direct_bits: int = 1 << 14,
) -> int:
    """Exact sign of x^M - y^K for positive rationals and M, K >= 0."""
    x, y = Fraction(x), Fraction(y)
    _positive(x, "base x")
    _positive(y, "base y")
    if m_exp < 0 or k_exp < 0:
        raise ValueError("exponents must be non-negative")
    a, b = x.numerator, x.denominator
    c, d = y.numerator, y.denominator
    lhs_one = m_exp == 0 or x == 1
    rhs_one = k_exp == 0 or y == 1
    if lhs_one and rhs_one:
        return 0
    if lhs_one:
        return -1 if y > 1 else 1
    if rhs_one:
        return 1 if x > 1 else -1

    total_bits = (
        m_exp * (a.bit_length() + b.bit_length())
        + k_exp * (c.bit_length() + d.bit_length())
        + 64
    )
    if total_bits <= direct_bits:
        lhs = a**m_exp * d**k_exp
        rhs = b**m_exp * c**k_exp
        return (lhs > rhs) - (lhs < rhs)

    if powers_equal(x, m_exp, y, k_exp):
        return 0
    sign = log_linear_sign(
        [(m_exp, a), (-m_exp, b), (-k_exp, c), (k_exp, d)],
        max_bits=max(4096, 2 * total_bits),
    )
    if sign is not None:
        return sign
    # Unreachable in exact arithmetic; kept as a belt-and-braces fallback.
    lhs = a**m_exp * d**k_exp
    rhs = b**m_exp * c**k_exp
    return (lhs > rhs) - (lhs < rhs)


def rational_power_ratio(y: Fraction, x: Fraction) -> Fraction | None:
    """The rational a with y == x^a, if one exists (requires x != 1)."""
    x, y = Fraction(x), Fraction(y)
    _positive(x, "base x")
    _positive(y, "value y")
    if x == 1:
        return None
    if y == 1:
        return Fraction(0)
    primes = sorted(factorize(x.numerator).keys() | factorize(x.denominator).keys())
    vx = exponent_vector(x, primes)
    vy = exponent_vector(y, primes)
    if vy is None:
        return None
    ratio: Fraction | None = None
    for q in primes:
        if vx[q] == 0:
            if vy[q] != 0:
                return None
            continue
        r = Fraction(vy[q], vx[q])
        if ratio is None:
            ratio = r
        elif ratio != r:
            return None
    return ratio
