"""Exact scalars: arbitrary-precision rationals and truncated power series in q.

Every other module is generic over the ring operations +, -, *, exact
division by units, ==, and integer powers.  Two concrete scalars are
provided: `Rational` (an alias of `fractions.Fraction`) and `QSeries`
(a power series in q known modulo q^(K+1), with rational coefficients).
Python ints interoperate with both, so 0 and 1 serve as the generic
ring constants.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .errors import NonTruncatable, NotAUnit, OrderMismatch, RetryBudgetError

Rational = Fraction

ScalarLike = Union[int, Fraction, "QSeries"]


def rat(num: int, den: int = 1) -> Fraction:
    """Normalized fraction num/den.  Raises on a zero denominator."""
    if den == 0:
        raise ZeroDivisionError("rational with zero denominator")
    return Fraction(num, den)


def rat_str(x: Fraction) -> str:
    """Serialize a rational as "p/q", or "p" when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rat(s: str) -> Fraction:
    """Inverse of rat_str."""
    return Fraction(s)


@dataclass(frozen=True)
class QSeries:
    """Truncated power series sum_t coeffs[t] q^t, known modulo q^(order+1).

    Binary operations require equal truncation orders; ints and Fractions
    are lifted to constant series of the partner's order.
    """

    order: int
    coeffs: tuple

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("truncation order must be non-negative")
        if len(self.coeffs) != self.order + 1:
            raise ValueError("coefficient list length must be order + 1")

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def const(value, order: int) -> "QSeries":
        c = [Fraction(0)] * (order + 1)
        c[0] = Fraction(value)
        return QSeries(order, tuple(c))

    @staticmethod
    def monomial(coeff, exponent: int, order: int) -> "QSeries":
        """coeff * q^exponent, truncated (zero series if exponent > order)."""
        if exponent < 0:
            raise NonTruncatable("monomial with negative q-exponent")
        c = [Fraction(0)] * (order + 1)
        if exponent <= order:
            c[exponent] = Fraction(coeff)
        return QSeries(order, tuple(c))

    @staticmethod
    def variable(order: int) -> "QSeries":
        """The series q itself."""
        return QSeries.monomial(1, 1, order)

    @staticmethod
    def from_coeffs(coeffs: Sequence, order: Optional[int] = None) -> "QSeries":
        cs = [Fraction(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if len(cs) < order + 1:
            cs += [Fraction(0)] * (order + 1 - len(cs))
        return QSeries(order, tuple(cs[: order + 1]))

    # -- ring operations -----------------------------------------------------

    def _lift(self, other):
        if isinstance(other, QSeries):
            if other.order != self.order:
                raise OrderMismatch(
                    f"series orders differ: {self.order} vs {other.order}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return QSeries.const(other, self.order)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QSeries(
            self.order, tuple(a + b for a, b in zip(self.coeffs, o.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QSeries(
            self.order, tuple(a - b for a, b in zip(self.coeffs, o.coeffs))
        )

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return QSeries(self.order, tuple(a * f for a in self.coeffs))
        o = self._lift(other)
        if o is None:
            return NotImplemented
        K = self.order
        out = [Fraction(0)] * (K + 1)
        for u, cu in enumerate(self.coeffs):
            if cu == 0:
                continue
            for v in range(K + 1 - u):
                cv = o.coeffs[v]
                if cv != 0:
                    out[u + v] += cu * cv
        return QSeries(K, tuple(out))

    __rmul__ = __mul__

    def invert(self) -> "QSeries":
        """Multiplicative inverse; requires a nonzero constant term."""
        f0 = self.coeffs[0]
        if f0 == 0:
            raise NotAUnit("series with zero constant term has no inverse")
        K = self.order
        inv0 = Fraction(1) / f0
        out = [Fraction(0)] * (K + 1)
        out[0] = inv0
        for t in range(1, K + 1):
            acc = Fraction(0)
            for u in range(1, t + 1):
                if self.coeffs[u] != 0:
                    acc += self.coeffs[u] * out[t - u]
            out[t] = -acc * inv0
        return QSeries(K, tuple(out))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError
            return self * (Fraction(1) / Fraction(other))
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.invert()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.invert()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.invert() ** (-exponent)
        result = QSeries.const(1, self.order)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, QSeries):
            if other.order != self.order:
                raise OrderMismatch(
                    f"series orders differ: {self.order} vs {other.order}"
                )
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == QSeries.const(other, self.order)
        return NotImplemented

    def __hash__(self):
        return hash((self.order, self.coeffs))

    # -- structure -----------------------------------------------------------

    def shift(self, e: int) -> "QSeries":
        """Multiply by q^e.  For e < 0 the low coefficients must vanish."""
        K = self.order
        if e == 0:
            return self
        if e > 0:
            pad = (Fraction(0),) * min(e, K + 1)
            return QSeries(K, pad + self.coeffs[: max(0, K + 1 - e)])
        m = -e
        if any(c != 0 for c in self.coeffs[:m]):
            raise NonTruncatable(
                f"shift by q^{e} would create negative powers"
            )
        return QSeries(K, self.coeffs[m:] + (Fraction(0),) * min(m, K + 1))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def min_degree(self) -> Optional[int]:
        for t, c in enumerate(self.coeffs):
            if c != 0:
                return t
        return None

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise OrderMismatch("cannot extend a truncated series")
        return QSeries(order, self.coeffs[: order + 1])

    def __str__(self):
        terms = []
        for t, c in enumerate(self.coeffs):
            if c == 0:
                continue
            cs = rat_str(c)
            if t == 0:
                terms.append(cs)
            else:
                qp = "q" if t == 1 else f"q^{t}"
                terms.append(qp if cs == "1" else f"{cs}*{qp}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(q^{self.order + 1})"

    def __repr__(self):
        return f"QSeries(order={self.order}, coeffs={[rat_str(c) for c in self.coeffs]})"


def exact_div(a, b):
    """a / b staying exact when both operands are plain ints."""
    if isinstance(a, int):
        a = Fraction(a)
    return a / b


def series_mul(f: QSeries, g: QSeries) -> QSeries:
    """Truncated product; orders must match."""
    return f * g


def series_invert(f: QSeries) -> QSeries:
    """Inverse of a unit series."""
    return f.invert()


# -- randomness --------------------------------------------------------------

_MIX = 0x9E3779B97F4A7C15


def trial_rng(seed: int, trial: int) -> random.Random:
    """Independent child RNG for (master seed, trial index).

    Each verification trial draws from its own stream, so trial k is
    reproducible without replaying trials 0..k-1.
    """
    child = (seed * _MIX + trial * 0xBF58476D1CE4E5B9 + 0x94D049BB133111EB) % (1 << 64)
    return random.Random(child)


def sample_rational(
    rng: random.Random,
    bound: int = 7,
    exclude: Optional[Callable[[Fraction], bool]] = None,
    retries: int = 200,
) -> Fraction:
    """Random nonzero rational p/s with 1 <= |p|, s <= bound.

    `exclude` rejects values (used to dodge poles); a rejection budget
    guards against impossible predicates.
    """
    if bound < 2:
        raise ValueError("bound must be at least 2")
    for _ in range(retries):
        p = rng.randint(1, bound) * rng.choice((-1, 1))
        s = rng.randint(1, bound)
        x = Fraction(p, s)
        if exclude is not None and exclude(x):
            continue
        return x
    raise RetryBudgetError(f"no admissible rational found in {retries} draws")
