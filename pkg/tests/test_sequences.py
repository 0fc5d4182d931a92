from fractions import Fraction

import pytest

from qpfaffian.errors import DomainError
from qpfaffian.sequences import (
    AlSalamCarlitz,
    Catalan,
    CentralBinomial,
    CentralDelannoy,
    HermiteMoment,
    LaguerreMoment,
    LittleQJacobi,
    Motzkin,
    NarayanaPoly,
    Schroeder,
    ThreeHalvesCatalan,
    moment,
    moment_matrix,
)


def test_small_values():
    assert [moment(Catalan(), n) for n in range(5)] == [1, 1, 2, 5, 14]
    assert [moment(Motzkin(), n) for n in range(4)] == [1, 1, 2, 4]
    assert [moment(CentralDelannoy(), n) for n in range(3)] == [1, 3, 13]
    assert [moment(Schroeder(), n) for n in range(3)] == [1, 2, 6]
    assert moment(HermiteMoment(), 1) == 3
    assert moment(ThreeHalvesCatalan(), 1) == 1
    assert moment(CentralBinomial(), 3) == 20


def test_narayana_poly():
    a = Fraction(2, 3)
    assert moment(NarayanaPoly(a), 0) == 1
    assert moment(NarayanaPoly(a), 2) == a + a**2
    assert moment(NarayanaPoly(a), 1) == a


def test_al_salam_carlitz():
    a, q = Fraction(1, 2), Fraction(1, 3)
    assert moment(AlSalamCarlitz(a, q), 1) == 1 + a
    assert moment(AlSalamCarlitz(a, q), -1) == 0
    with pytest.raises(DomainError):
        moment(AlSalamCarlitz(a, q), -2)


def test_little_q_jacobi():
    a, b, q = Fraction(1, 2), Fraction(1, 3), Fraction(1, 5)
    kind = LittleQJacobi(a, b, q)
    assert moment(kind, 0) == 1
    assert moment(kind, 1) == (1 - a * q) / (1 - a * b * q**2)
    # negative index via negative-index q-Pochhammer
    assert moment(kind, -1) == (1 - a * b * q) / (1 - a)
    # mu_n (abq^2;q)_n = (aq;q)_n
    from qpfaffian.qkit import qpoch

    for n in range(-3, 4):
        assert moment(kind, n) * qpoch(a * b * q**2, q, n) == qpoch(a * q, q, n)


def test_laguerre_and_catalan_recurrence():
    alpha = Fraction(3, 4)
    assert moment(LaguerreMoment(alpha), 2) == (alpha + 1) * (alpha + 2)
    # Catalan recurrence C_{n+1} = sum C_k C_{n-k}
    for n in range(8):
        assert moment(Catalan(), n + 1) == sum(
            moment(Catalan(), k) * moment(Catalan(), n - k) for k in range(n + 1)
        )


def test_narayana_specializations():
    for n in range(9):
        assert moment(Catalan(), n) == moment(NarayanaPoly(Fraction(1)), n)
        assert moment(Schroeder(), n) == moment(NarayanaPoly(Fraction(2)), n)


def test_asc_binomial_specialization():
    # G_n(1; q) at q = 1 equals 2^n
    for n in range(9):
        assert moment(AlSalamCarlitz(Fraction(1), Fraction(1)), n) == 2**n


def test_negative_index_errors():
    for kind in (Catalan(), Motzkin(), HermiteMoment(), LaguerreMoment(Fraction(1))):
        with pytest.raises(DomainError):
            moment(kind, -1)


def test_moment_matrix():
    m = moment_matrix(Catalan(), 2, -1, weight="linear")
    assert m.entry(1, 2) == moment(Catalan(), 2)  # offset -1: index 1+2-1
    assert m.entry(2, 1) == -m.entry(1, 2)

    m2 = moment_matrix(Motzkin(), 2, -3)
    assert m2.entry(1, 2) == 1  # M_0

    a, b, q = Fraction(1, 2), Fraction(1, 3), Fraction(1, 5)
    m3 = moment_matrix(LittleQJacobi(a, b, q), 2, -2, weight="qpower")
    assert m3.entry(1, 2) == (1 - q) * (1 - a * q) / (1 - a * b * q**2)


def test_moment_matrix_never_hits_diagonal():
    # offset -3 would need M_{-1} on the diagonal; it must not be evaluated
    m = moment_matrix(Motzkin(), 2, -3)
    assert m.entry(1, 1) == 0


def test_moment_matrix_reports_offender():
    with pytest.raises(DomainError) as e:
        moment_matrix(Catalan(), 4, -4)
    assert "i=1" in str(e.value)
