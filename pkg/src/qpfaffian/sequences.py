"""Moment-sequence catalog.

Each kind evaluates its defining summation/product formula exactly;
recurrences are used only as test oracles.  The only negative index any
kind accepts is the Al-Salam-Carlitz convention G_{-1} = 0; everything
else raises DomainError (the antisymmetric weight kills the diagonal, so
matrix constructions never query them).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Optional, Union

from .errors import DomainError
from .qkit import qbinom, qpoch, rising
from .skewpf import SkewMatrix


@dataclass(frozen=True)
class LittleQJacobi:
    a: Fraction
    b: Fraction
    q: Fraction


@dataclass(frozen=True)
class Catalan:
    pass


@dataclass(frozen=True)
class CentralBinomial:
    pass


@dataclass(frozen=True)
class LaguerreMoment:
    alpha: Fraction


@dataclass(frozen=True)
class HermiteMoment:
    pass


@dataclass(frozen=True)
class Motzkin:
    pass


@dataclass(frozen=True)
class CentralDelannoy:
    pass


@dataclass(frozen=True)
class Schroeder:
    pass


@dataclass(frozen=True)
class NarayanaPoly:
    a: Fraction


@dataclass(frozen=True)
class AlSalamCarlitz:
    a: Fraction
    q: Fraction


@dataclass(frozen=True)
class ThreeHalvesCatalan:
    """a_n = binom(3n, n) / (2n + 1), the vertically-symmetric ASM counts'
    companion sequence."""


SequenceKind = Union[
    LittleQJacobi,
    Catalan,
    CentralBinomial,
    LaguerreMoment,
    HermiteMoment,
    Motzkin,
    CentralDelannoy,
    Schroeder,
    NarayanaPoly,
    AlSalamCarlitz,
    ThreeHalvesCatalan,
]

KIND_NAMES = {
    "little-q-jacobi": LittleQJacobi,
    "catalan": Catalan,
    "central-binomial": CentralBinomial,
    "laguerre": LaguerreMoment,
    "hermite": HermiteMoment,
    "motzkin": Motzkin,
    "delannoy": CentralDelannoy,
    "schroeder": Schroeder,
    "narayana": NarayanaPoly,
    "al-salam-carlitz": AlSalamCarlitz,
    "three-halves-catalan": ThreeHalvesCatalan,
}


def catalan_number(n: int) -> Fraction:
    if n < 0:
        raise DomainError(f"Catalan number undefined at n = {n}")
    return Fraction(comb(2 * n, n), n + 1)


def moment(kind: SequenceKind, n: int):
    """n-th moment of the kind, by its defining formula."""
    if isinstance(kind, LittleQJacobi):
        # (aq;q)_n / (abq^2;q)_n, any integer n
        num = qpoch(kind.a * kind.q, kind.q, n)
        den = qpoch(kind.a * kind.b * kind.q**2, kind.q, n)
        if den == 0:
            raise DomainError(f"little q-Jacobi moment pole at n = {n}")
        return num / den
    if isinstance(kind, AlSalamCarlitz):
        if n == -1:
            return Fraction(0)
        if n < 0:
            raise DomainError(f"Al-Salam-Carlitz moment undefined at n = {n}")
        return sum(qbinom(n, k, kind.q) * kind.a**k for k in range(n + 1))
    if n < 0:
        raise DomainError(f"{type(kind).__name__} moment undefined at n = {n}")
    if isinstance(kind, Catalan):
        return catalan_number(n)
    if isinstance(kind, CentralBinomial):
        return Fraction(comb(2 * n, n))
    if isinstance(kind, LaguerreMoment):
        return rising(kind.alpha + 1, n)
    if isinstance(kind, HermiteMoment):
        out = Fraction(1)
        for k in range(n + 1):
            out *= 2 * k + 1
        return out
    if isinstance(kind, Motzkin):
        return Fraction(
            sum(comb(n, 2 * k) * catalan_number(k) for k in range(n // 2 + 1))
        )
    if isinstance(kind, CentralDelannoy):
        return Fraction(sum(comb(n, k) * comb(n + k, k) for k in range(n + 1)))
    if isinstance(kind, Schroeder):
        return Fraction(
            sum(comb(n + k, 2 * k) * catalan_number(k) for k in range(n + 1))
        )
    if isinstance(kind, NarayanaPoly):
        if n == 0:
            return Fraction(1)
        # the k = 0 term carries binom(n, -1) = 0
        return sum(
            Fraction(comb(n, k) * comb(n, k - 1), n) * kind.a**k
            for k in range(1, n + 1)
        )
    if isinstance(kind, ThreeHalvesCatalan):
        return Fraction(comb(3 * n, n), 2 * n + 1)
    raise DomainError(f"unknown sequence kind {kind!r}")


def moment_matrix(
    kind: SequenceKind,
    size: int,
    offset: int,
    weight: str = "linear",
    q: Optional[Fraction] = None,
) -> SkewMatrix:
    """Skew matrix with entry (i, j) = w(i, j) * moment(kind, i + j + offset).

    weight "linear" is (j - i); "qpower" is (q^(i-1) - q^(j-1)).  The
    diagonal is 0 by antisymmetry and the moment there is never evaluated.
    Index errors are reported with the offending (i, j, offset).
    """
    if weight == "qpower":
        if q is None:
            q = getattr(kind, "q", None)
        if q is None:
            raise DomainError("qpower weight needs a q value")

    def entry(i, j):
        if weight == "linear":
            w = j - i
        else:
            w = q ** (i - 1) - q ** (j - 1)
        try:
            mu = moment(kind, i + j + offset)
        except DomainError as e:
            raise DomainError(f"{e} (at i={i}, j={j}, offset={offset})") from e
        return w * mu

    return SkewMatrix.from_upper(size, entry)
