"""q-series primitives: q-shifted factorials, Gaussian binomials, rising
factorials, and terminating basic hypergeometric sums.

All functions are generic over the exact scalars of `scalar` unless noted.
The negative-index q-shifted factorial follows the quotient-of-infinite-
products convention: (a;q)_{-m} = 1 / prod_{t=1}^{m} (1 - a q^{-t}).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NonTruncatable, NotAUnit, PoleError
from .scalar import QSeries


def qpoch(a, q, n: int):
    """q-shifted factorial (a;q)_n for any integer n.

    n >= 0 gives prod_{k=0}^{n-1} (1 - a q^k); n < 0 the reciprocal
    product with factors (1 - a q^k) for k = n..-1.
    """
    if n >= 0:
        out = 1
        for k in range(n):
            out = out * (1 - a * q**k)
        return out
    denom = 1
    for k in range(n, 0):
        factor = 1 - a * q**k
        if factor == 0:
            raise PoleError(f"(a;q)_{n} has vanishing factor at q-power {k}")
        denom = denom * factor
    return Fraction(1) / denom


def qpoch_many(bases, q, n: int):
    """(a1, a2, ...; q)_n, the product of q-shifted factorials."""
    out = 1
    for a in bases:
        out = out * qpoch(a, q, n)
    return out


def qpoch_inf_series(c, e: int, K: int) -> QSeries:
    """(c q^e; q)_infinity as a series modulo q^(K+1); requires e >= 1."""
    if e <= 0:
        raise NonTruncatable(
            f"infinite q-product with base exponent {e} <= 0 does not truncate"
        )
    out = QSeries.const(1, K)
    c = Fraction(c)
    if c == 0:
        return out
    for k in range(e, K + 1):
        out = out * (QSeries.const(1, K) - QSeries.monomial(c, k, K))
    return out


def qpoch_series(c, e: int, n: int, K: int) -> QSeries:
    """(c q^e; q)_n as a series modulo q^(K+1), for any integer n.

    Every factor must live in non-negative q-powers; constant factors
    appearing in a denominator must be nonzero.
    """
    c = Fraction(c)
    one = QSeries.const(1, K)
    if n >= 0:
        out = one
        for k in range(n):
            if e + k < 0:
                raise NonTruncatable(
                    f"factor (1 - c q^{e + k}) has negative q-power"
                )
            out = out * (one - QSeries.monomial(c, e + k, K))
        return out
    denom = one
    for k in range(n, 0):
        p = e + k
        if p < 0:
            raise NonTruncatable(f"factor (1 - c q^{p}) has negative q-power")
        if p == 0 and c == 1:
            raise PoleError(f"(c q^{e}; q)_{n} hits a vanishing constant factor")
        denom = denom * (one - QSeries.monomial(c, p, K))
    return denom.invert()


def qbinom(n: int, k: int, q):
    """Gaussian binomial [n, k]_q, evaluated by the q-Pascal recurrence.

    The recurrence is division-free, so the value is defined for every
    scalar q (including q = 1, where it reduces to binomial(n, k)).
    Outside 0 <= k <= n the value is 0 by convention.
    """
    if k < 0 or k > n:
        return 0
    if k == 0 or k == n:
        return 1
    # row DP: row[j] = [i, j]_q after processing row i
    row = [1] + [0] * k
    for i in range(1, n + 1):
        upper = min(i, k)
        for j in range(upper, 0, -1):
            row[j] = row[j - 1] + q**j * row[j]
    return row[k]


def rising(alpha, n: int):
    """Rising factorial (alpha)_n with the negative-index convention
    (alpha)_{-m} = 1 / prod_{i=1}^{m} (alpha + i - m - 1)."""
    if n >= 0:
        out = 1
        for i in range(1, n + 1):
            out = out * (alpha + i - 1)
        return out
    denom = 1
    for i in range(1, -n + 1):
        factor = alpha + i + n - 1
        if factor == 0:
            raise PoleError(f"(alpha)_{n} has vanishing factor alpha + {i + n - 1}")
        denom = denom * factor
    return Fraction(1) / denom


def phi_terminating(num_params, den_params, q, z, terms: int):
    """Terminating basic hypergeometric sum
    sum_{s=0}^{terms} (a1,...;q)_s / ((q, b1,...;q)_s) z^s.

    Parameters are exact scalars; the caller supplies the termination
    bound (one numerator parameter is q^{-n} in the intended uses).
    """
    total = 0
    term = 1
    for s in range(terms + 1):
        total = total + term
        if s == terms:
            break
        # ratio from term s to s+1
        num = 1
        for ai in num_params:
            num = num * (1 - ai * q**s)
        den = 1 - q ** (s + 1)
        for bi in den_params:
            den = den * (1 - bi * q**s)
        if den == 0:
            raise PoleError(f"denominator q-shifted factorial vanishes at term {s + 1}")
        term = term * num * z / den
    return total


def phi65_very_well_poised(a, b, c, n: int, q):
    """Terminating very-well-poised 6phi5 at argument aq^(n+1)/(bc).

    The conjugate parameter pair (±q a^(1/2)) is folded into the rational
    term ratio (1 - a q^(2s)) / (1 - a), so the sum is exact for rational
    parameters.
    """
    if 1 - a == 0:
        raise PoleError("very-well-poised 6phi5 undefined at a = 1")
    z = a * q ** (n + 1) / (b * c)
    total = 0
    for s in range(n + 1):
        num = (
            (1 - a * q ** (2 * s))
            * qpoch(a, q, s)
            * qpoch(b, q, s)
            * qpoch(c, q, s)
            * qpoch(q**-n, q, s)
        )
        den = (
            (1 - a)
            * qpoch(q, q, s)
            * qpoch(a * q / b, q, s)
            * qpoch(a * q / c, q, s)
            * qpoch(a * q ** (n + 1), q, s)
        )
        if den == 0:
            raise PoleError(f"6phi5 denominator vanishes at term {s}")
        total = total + num * z**s / den
    return total


def phi65_rhs(a, b, c, n: int, q):
    """Closed form (aq, aq/bc; q)_n / ((aq/b, aq/c; q)_n) of the 6phi5 sum."""
    den = qpoch(a * q / b, q, n) * qpoch(a * q / c, q, n)
    if den == 0:
        raise PoleError("6phi5 closed form has vanishing denominator")
    return qpoch(a * q, q, n) * qpoch(a * q / (b * c), q, n) / den


def check_q_binomial_theorem(a, x_exp: int, K: int, a_exp: int = 0) -> bool:
    """Coefficientwise check of
    sum_k (a;q)_k / (q;q)_k x^k = (ax;q)_inf / (x;q)_inf
    with x = q^x_exp and a = a * q^a_exp (a_exp = 0 for a plain rational a)."""
    if x_exp < 1:
        raise NonTruncatable("x must be a positive power of q")
    a = Fraction(a)
    one = QSeries.const(1, K)
    q = QSeries.variable(K)
    a_series = QSeries.monomial(a, a_exp, K)
    lhs = QSeries.const(0, K)
    k = 0
    while k * x_exp <= K:
        num = qpoch(a_series, q, k) * one
        den = qpoch(q, q, k) * one
        lhs = lhs + num * den.invert() * QSeries.monomial(1, k * x_exp, K)
        k += 1
    if a == 0:
        rhs_num = QSeries.const(1, K)
    else:
        rhs_num = qpoch_inf_series(a, a_exp + x_exp, K)
    rhs = rhs_num * qpoch_inf_series(1, x_exp, K).invert()
    return lhs == rhs
