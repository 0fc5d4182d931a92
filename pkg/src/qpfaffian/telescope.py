"""Certificate machinery for the telescoping proof of the summation
identities: the hypergeometric term F, its shifted combination T, the
certificate polynomials P, Q, R, X, the antidifference Lambda, and
checkers for the Gosper equation, the recurrence, and the closed-form
sum.  Both parity sections (odd and even sub-sequences of the summation
index) are covered.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, PoleError, RetryBudgetError, SkippedPoint
from .qkit import qpoch, qpoch_many
from .scalar import exact_div, sample_rational, trial_rng

PARITIES = ("odd", "even")


@dataclass(frozen=True)
class CertPoint:
    j: int
    k: int
    a: Fraction
    b: Fraction
    c: Fraction
    q: Fraction
    parity: str

    def __post_init__(self):
        if self.parity not in PARITIES:
            raise DomainError(f"parity must be one of {PARITIES}")
        if self.j < 1 or self.k < 0:
            raise DomainError("need j >= 1 and k >= 0")

    def raw_k(self, k=None) -> int:
        """Map the parity-local index to the global summation index."""
        kk = self.k if k is None else k
        return 2 * kk - 1 if self.parity == "odd" else 2 * kk - 2


def h_weight(k: int, j: int, a, b, c, q):
    """The polynomial weight h_k(j; a, b, c, q)."""
    part1 = (1 - q**k) * (1 - a * q**k) * (
        q**-k * (1 + a * b * q ** (2 * k)) * (1 + a * b * c * q ** (j - 1))
        - a * b * (1 + q) * (c * q**-1 + q ** (j - 1))
    )
    part2 = (
        a
        * q ** (k - 1)
        * (1 - b)
        * (1 - c * q**-k)
        * (1 - q ** (j - k))
        * (1 - a * b * q ** (2 * k + 1))
    )
    return part1 + part2


def F_raw(j: int, k: int, a, b, c, q):
    """The summand F(j, k) at the global index k."""
    den = qpoch_many((q, a * q, a * b * c * q, a * b * q ** (j + 1)), q, k)
    if den == 0:
        raise PoleError(f"F({j},{k}) denominator vanishes")
    num = (
        a ** (k - 1)
        * c ** (k - 1)
        * q ** (j * (k - 1) + 1)
        * qpoch(a * b * q ** (2 * k), q, 1)
        * qpoch(a * b * q**2, q, k - 2)
        * qpoch(b * q, q, k - 1)
        * qpoch(q / c, q, k - 1)
        * qpoch(q ** (1 - j), q, k - 1)
        * h_weight(k, j, a, b, c, q)
    )
    return exact_div(num, den)


def F_eval(p: CertPoint):
    return F_raw(p.j, p.raw_k(), p.a, p.b, p.c, p.q)


def _shift_ratio(j: int, a, b, c, q):
    """(1-aq^j)(1-abcq^j) / ((1-abq^(j+1))(1-acq^(j-1)))."""
    den = (1 - a * b * q ** (j + 1)) * (1 - a * c * q ** (j - 1))
    if den == 0:
        raise PoleError("shift ratio denominator vanishes")
    return exact_div((1 - a * q**j) * (1 - a * b * c * q**j), den)


def T_raw(j: int, k: int, a, b, c, q):
    return F_raw(j, k, a, b, c, q) - _shift_ratio(j, a, b, c, q) * F_raw(
        j + 1, k, a, b, c, q
    )


def T_eval(p: CertPoint):
    return T_raw(p.j, p.raw_k(), p.a, p.b, p.c, p.q)


def P_raw(j: int, k: int, a, b, c, q):
    return (
        a**2
        * c**2
        * q ** (2 * j)
        * (1 - a * b * q**k)
        * (1 - a * b * q ** (k + 1))
        * (1 - b * q**k)
        * (1 - b * q ** (k + 1))
        * (1 - q**k / c)
        * (1 - q ** (k + 1) / c)
        * (1 - q ** (k - j - 1))
        * (1 - q ** (k - j))
    )


def Q_raw(j: int, k: int, a, b, c, q):
    return (
        (1 - q ** (k + 1))
        * (1 - q ** (k + 2))
        * (1 - a * q ** (k + 1))
        * (1 - a * q ** (k + 2))
        * (1 - a * b * c * q ** (k + 1))
        * (1 - a * b * c * q ** (k + 2))
        * (1 - a * b * q ** (j + k + 2))
        * (1 - a * b * q ** (j + k + 3))
    )


def R_raw(j: int, k: int, a, b, c, q):
    inner = (1 - a * b * q ** (j + k + 1)) * (1 - q ** (k - j - 1)) * h_weight(
        k, j, a, b, c, q
    ) - q ** (k - 1) * _shift_ratio(j, a, b, c, q) * (
        1 - a * b * q ** (j + 1)
    ) * (1 - q**-j) * h_weight(k, j + 1, a, b, c, q)
    return (1 - a * b * q ** (2 * k)) * inner


def X_raw(j: int, k: int, a, c, q):
    den = 1 - a * c * q ** (j - 1)
    if den == 0:
        raise PoleError("X denominator vanishes")
    return exact_div(-(q**-k), den)


def lam(p: CertPoint):
    """Lambda(j, k) = Q(j, k-1) T(j, k) X(j, k) / R(j, k) in the parity-local
    index."""
    j, a, b, c, q = p.j, p.a, p.b, p.c, p.q
    rk = p.raw_k()
    r_val = R_raw(j, rk, a, b, c, q)
    if r_val == 0:
        raise SkippedPoint("R vanishes where Lambda is formed")
    q_val = Q_raw(j, p.raw_k(p.k - 1), a, b, c, q)
    return exact_div(
        q_val * T_raw(j, rk, a, b, c, q) * X_raw(j, rk, a, c, q), r_val
    )


def check_gosper(p: CertPoint) -> bool:
    """P(j,k) X(j,k+1) - Q(j,k-1) X(j,k) = R(j,k), parity-local indices."""
    j, a, b, c, q = p.j, p.a, p.b, p.c, p.q
    lhs = P_raw(j, p.raw_k(), a, b, c, q) * X_raw(
        j, p.raw_k(p.k + 1), a, c, q
    ) - Q_raw(j, p.raw_k(p.k - 1), a, b, c, q) * X_raw(j, p.raw_k(), a, c, q)
    return lhs == R_raw(j, p.raw_k(), a, b, c, q)


def check_ratio(p: CertPoint) -> bool:
    """T(j,k+1)/T(j,k) = [P(j,k)/Q(j,k)] [R(j,k+1)/R(j,k)]."""
    j, a, b, c, q = p.j, p.a, p.b, p.c, p.q
    t_here = T_raw(j, p.raw_k(), a, b, c, q)
    t_next = T_raw(j, p.raw_k(p.k + 1), a, b, c, q)
    r_here = R_raw(j, p.raw_k(), a, b, c, q)
    r_next = R_raw(j, p.raw_k(p.k + 1), a, b, c, q)
    q_here = Q_raw(j, p.raw_k(), a, b, c, q)
    if t_here == 0 or r_here == 0 or q_here == 0:
        raise SkippedPoint("guard denominator vanishes in ratio check")
    return exact_div(t_next, t_here) == exact_div(
        P_raw(j, p.raw_k(), a, b, c, q), q_here
    ) * exact_div(r_next, r_here)


def check_recurrence(p: CertPoint) -> bool:
    """T(j,k) = Lambda(j,k+1) - Lambda(j,k), and Lambda(j,1) = 0."""
    lam_next = lam(
        CertPoint(p.j, p.k + 1, p.a, p.b, p.c, p.q, p.parity)
    )
    lam_here = lam(p)
    base = lam(CertPoint(p.j, 1, p.a, p.b, p.c, p.q, p.parity))
    if base != 0:
        return False
    return T_eval(p) == lam_next - lam_here


def sum_F(j: int, a, b, c, q, parity: str):
    """sum_{k >= 1} F^(parity)(j, k); terms vanish for raw index > j."""
    total = Fraction(0)
    k = 1
    while True:
        rk = 2 * k - 1 if parity == "odd" else 2 * k - 2
        if rk > j:
            break
        total += F_raw(j, rk, a, b, c, q)
        k += 1
    return total


def check_rec_j(j: int, a, b, c, q, parity: str) -> bool:
    """sum_k F(j+1, k) = [ (1-abq^(j+1))(1-acq^(j-1)) /
    ((1-aq^j)(1-abcq^j)) ] sum_k F(j, k)."""
    ratio = _shift_ratio(j, a, b, c, q)
    if ratio == 0:
        raise SkippedPoint("degenerate shift ratio")
    return sum_F(j + 1, a, b, c, q, parity) == exact_div(
        Fraction(1), ratio
    ) * sum_F(j, a, b, c, q, parity)


def check_telescoped_identity(j: int, a, b, c, q, parity: str) -> bool:
    """sum_k F(j,k) = (ac, abq^2; q)_{j-1} / ((aq, abcq; q)_{j-1})."""
    den = qpoch(a * q, q, j - 1) * qpoch(a * b * c * q, q, j - 1)
    if den == 0:
        raise PoleError("telescoped closed form denominator vanishes")
    rhs = exact_div(
        qpoch(a * c, q, j - 1) * qpoch(a * b * q**2, q, j - 1), den
    )
    return sum_F(j, a, b, c, q, parity) == rhs


# -- batch drivers -------------------------------------------------------------


def _sample_point(rng, j_max: int, k_max: int, parity: str) -> CertPoint:
    excl = lambda x: x == 0 or abs(x) == 1
    return CertPoint(
        j=rng.randint(1, j_max),
        k=rng.randint(1, k_max),
        a=sample_rational(rng, 7, excl),
        b=sample_rational(rng, 7, excl),
        c=sample_rational(rng, 7, excl),
        q=sample_rational(rng, 7, excl),
        parity=parity,
    )


def run_certificate_suite(
    check: str, points: int, seed: int, j_max: int = 8, k_max: int = 10
):
    """Run one of the appendix checks at `points` random pole-free points
    per parity.  Returns (passed, failed, skipped)."""
    checker = {
        "gosper": check_gosper,
        "ratio": check_ratio,
        "recurrence": check_recurrence,
    }.get(check)
    passed = failed = skipped = 0
    trial = 0
    for parity in PARITIES:
        done = 0
        while done < points:
            rng = trial_rng(seed, trial)
            trial += 1
            for _ in range(40):
                p = _sample_point(rng, j_max, k_max, parity)
                try:
                    if check == "telescoped":
                        ok = check_telescoped_identity(
                            p.j, p.a, p.b, p.c, p.q, parity
                        ) and check_rec_j(p.j, p.a, p.b, p.c, p.q, parity)
                    else:
                        ok = checker(p)
                except (PoleError, ZeroDivisionError, SkippedPoint):
                    skipped += 1
                    continue
                if ok:
                    passed += 1
                else:
                    failed += 1
                done += 1
                break
            else:
                raise RetryBudgetError(f"no pole-free certificate point found")
    return passed, failed, skipped
