from fractions import Fraction

import pytest

from qpfaffian.errors import DomainError, PoleError
from qpfaffian.identities import (
    REGISTRY,
    catalan_rhs,
    conj_motzkin_rhs,
    conj_narayana_rhs,
    e_formula,
    entry_a,
    entry_a0,
    eval_sum_identity,
    f_poly,
    f_poly_sumform,
    hermite_rhs,
    laguerre_rhs,
    matrix_a,
    matrix_atilde,
    o_formula,
    pf_special_rhs,
    qdougall_lhs,
    qdougall_rhs,
    qv4_rhs,
    qv4_term,
    rf_ver_matrix,
    rf_ver_rhs,
    t_formula,
    v_formula,
    verify,
    verify_decomposition_closed_form,
)
from qpfaffian.scalar import sample_rational, trial_rng
from qpfaffian.skewpf import pf_expansion, subpfaffian

A, B, Q = Fraction(1, 2), Fraction(1, 3), Fraction(2, 5)


def test_entry_a_basics():
    assert entry_a(3, 3, A, B, Q, 0) == 0
    assert entry_a(1, 2, A, B, Q, 0) == (1 - Q) * (1 - A * Q) / (1 - A * B * Q**2)
    for (i, j) in ((1, 4), (2, 5)):
        assert entry_a(i, j, A, B, Q, 1) == -entry_a(j, i, A, B, Q, 1)


def test_entry_a0():
    # j=1, r=0: (1-ab/q) (aq;q)_0 / (a (1-b) (abq^2;q)_{-1})
    # with (aq;q)_0 = 1 and (abq^2;q)_{-1} = 1/(1-abq)
    got = entry_a0(1, A, B, Q, 0)
    assert got == (1 - A * B / Q) * (1 - A * B * Q) / (A * (1 - B))
    with pytest.raises(PoleError):
        entry_a0(1, A, Fraction(1), Q, 0)
    # 2x2 Pfaffian of the bordered matrix is the border entry
    m = matrix_atilde([0, 1], A, B, Q, 0)
    assert pf_expansion(m) == entry_a0(1, A, B, Q, 0)


def test_f_poly():
    r = 2
    # i = 1: first summand vanishes
    assert f_poly(1, 5, r, A, B, Q) == A * Q ** (r - 1) * (1 - B) * (1 - Q**5)
    # j = i - 1: second summand vanishes
    i = 4
    assert f_poly(i, i - 1, r, A, B, Q) == f_poly_sumform(i, i - 1, r, A, B, Q)
    rng = trial_rng(3, 0)
    for _ in range(10):
        i = rng.randint(1, 6)
        j = rng.randint(1, 8)
        rr = rng.randint(-2, 3)
        a = sample_rational(rng, 7)
        b = sample_rational(rng, 7)
        q = sample_rational(rng, 7, lambda x: abs(x) == 1 or x == 0)
        assert f_poly(i, j, rr, a, b, q) == f_poly_sumform(i, j, rr, a, b, q)
    with pytest.raises(PoleError):
        f_poly(2, 2, 0, A, B, Fraction(1))


def test_t_formula_special_values():
    # t_1 = (1-q)(1-aq)/(1-abq^2) = entry (1,2)
    assert t_formula(1, A, B, Q, 0) == entry_a(1, 2, A, B, Q, 0)
    # t_0 = border entry (0,1)
    for r in (0, 1, 2):
        assert t_formula(0, A, B, Q, r) == entry_a0(1, A, B, Q, r)


def test_t_partial_products_are_subpfaffians():
    r = 1
    m = matrix_a(range(1, 9), A, B, Q, r)
    acc = Fraction(1)
    for i in range(1, 5):
        acc *= t_formula(2 * i - 1, A, B, Q, r)
        assert acc == subpfaffian(m, range(1, 2 * i + 1))


def test_v_formula_block_pattern():
    r = 0
    for i in (1, 3, 5):
        assert v_formula(i, i, A, B, Q, r, "A") == 0
        assert v_formula(i, i + 1, A, B, Q, r, "A") == 1
    for i in (2, 4, 6):
        assert v_formula(i, i, A, B, Q, r, "A") == 0
        assert v_formula(i, i - 1, A, B, Q, r, "A") == -1


def test_decomposition_closed_form_small():
    # n = 1: tJ2 (t1 J2) J2 = t1 J2 and t1 = entry (1,2)
    rep = verify_decomposition_closed_form("A", 1, A, B, Q, 0)
    assert rep.equal
    rep = verify_decomposition_closed_form("ATilde", 1, A, B, Q, 0)
    assert rep.equal


@pytest.mark.parametrize("variant", ["A", "ATilde"])
@pytest.mark.parametrize("n,r", [(2, 0), (2, 1), (3, 0), (4, 2), (3, -1)])
def test_decomposition_closed_form(variant, n, r):
    rep = verify_decomposition_closed_form(variant, n, A, B, Q, r)
    assert rep.equal


def test_pf_special_small():
    # n = 1, r = 0: RHS = (q;q)_1 (aq;q)_1 / (abq^2;q)_1
    assert pf_special_rhs(1, 0, A, B, Q) == (1 - Q) * (1 - A * Q) / (
        1 - A * B * Q**2
    )


@pytest.mark.parametrize(
    "identity,params",
    [
        ("pf-special", {"n": 2, "r": 0}),
        ("pf-special", {"n": 3, "r": 2}),
        ("pf-special", {"n": 2, "r": -1}),
        ("pf-general1", {"n": 2, "m": 5, "r": 0}),
        ("pf-general1", {"n": 2, "m": 4, "r": 1}),  # m = 2n degenerates
        ("pf-general2", {"n": 2, "m": 6, "r": 0}),
        ("pf-general2", {"n": 2, "m": 4, "r": 0}),  # duplicate index: 0 = 0
        ("pf-byproduct", {"n": 2, "r": 0}),
        ("pf-byproduct", {"n": 3, "r": 1}),
        ("pf-general3", {"n": 2, "m": 5, "r": 0}),
        ("pf-general4", {"n": 2, "m": 6, "r": 1}),
        ("pf-byproduct-b", {"n": 2, "r": 0}),
        ("pf-byproduct-b", {"n": 3, "r": 1}),
        ("pf-general-b3", {"n": 2, "m": 5, "r": 0}),
        ("pf-general-b4", {"n": 2, "m": 6, "r": 0}),
        ("rf-ver", {"n": 2, "r": 0}),
        ("laguerre", {"n": 2, "r": 1}),
        ("qv4", {"m": 3}),
        ("sum-k-odd", {"i": 3, "j": 4}),
        ("sum-k-even", {"i": 4, "j": 4}),
        ("sum-add", {"i": 5, "j": 3}),
        ("sum-subtract", {"i": 3, "j": 3}),
        ("q-dougall", {"i": 3, "j": 4, "m": 1}),
        ("q-dougall", {"i": 2, "j": 2, "m": 2}),
    ],
)
def test_verify_random_identities(identity, params):
    reports = verify(identity, params, trials=3, seed=11)
    assert all(r.equal for r in reports), [
        (r.params, r.lhs, r.rhs) for r in reports if not r.equal
    ]


@pytest.mark.parametrize(
    "identity,params,expected",
    [
        ("catalan", {"n": 1, "r": 1}, Fraction(2)),
        ("hermite", {"n": 1, "r": 0}, Fraction(3)),
        ("conj-motzkin", {"n": 1}, Fraction(1)),
    ],
)
def test_exact_identity_values(identity, params, expected):
    reports = verify(identity, params, trials=1, seed=0)
    assert len(reports) == 1
    assert reports[0].equal
    assert Fraction(reports[0].rhs) == expected


@pytest.mark.parametrize(
    "identity,nmax",
    [
        ("catalan", 3),
        ("central-binomial", 3),
        ("hermite", 3),
        ("conj-motzkin", 3),
        ("conj-delannoy", 3),
        ("conj-schroeder", 3),
        ("conj-asm", 3),
    ],
)
def test_exact_identities_small_n(identity, nmax):
    for n in range(1, nmax + 1):
        params = {"n": n}
        if identity in ("catalan", "central-binomial", "hermite"):
            params["r"] = 0
        reports = verify(identity, params, trials=1, seed=0)
        assert reports[0].equal, (identity, n, reports[0].lhs, reports[0].rhs)


def test_conjecture_random_parameter_identities():
    for identity in ("conj-narayana", "conj-asc1", "conj-asc2"):
        for n in (1, 2):
            reports = verify(identity, {"n": n}, trials=3, seed=5)
            assert all(r.equal for r in reports), (identity, n)


def test_narayana_small_value():
    # n = 1: LHS is N_1(a) = a, RHS = a * 1
    a = Fraction(2, 7)
    assert conj_narayana_rhs(1, a) == a
    assert conj_motzkin_rhs(1) == 1


def test_rf_ver_matches_q_deformation():
    # pf-special at a = q^alpha, b = q^beta equals the q-deformed matrix
    # instance with the same integer alpha, beta
    alpha, beta = 2, 1
    q = Fraction(2, 7)
    a, b = q**alpha, q**beta
    n, r = 2, 0
    lhs = pf_expansion(matrix_a(range(1, 2 * n + 1), a, b, q, r))
    assert lhs == pf_special_rhs(n, r, a, b, q)


def test_rf_ver_integer_parameters():
    alpha, beta = Fraction(3, 2), Fraction(1, 2)
    n, r = 2, 1
    lhs = pf_expansion(rf_ver_matrix(n, r, alpha, beta))
    assert lhs == rf_ver_rhs(n, r, alpha, beta)


def test_laguerre_small():
    alpha = Fraction(5, 3)
    assert laguerre_rhs(1, 0, alpha) == alpha + 1


def test_negative_control_corrupted_rhs():
    reports = verify("pf-special", {"n": 2, "r": 0}, trials=1, seed=3)
    assert reports[0].equal
    # corrupt: an off-by-q factor must be detected
    rng = trial_rng(3, 0)
    from qpfaffian.identities import sample_abq
    from qpfaffian.skewpf import pfaffian

    a, b, q = sample_abq(rng)
    lhs = pfaffian(matrix_a(range(1, 5), a, b, q, 0))
    assert lhs != pf_special_rhs(2, 0, a, b, q) * q


def test_qdougall_single_term():
    # m = i: single-term sum
    a, b, q = A, B, Q
    i = j = 2
    m = 2
    assert qdougall_lhs(i, j, m, a, b, q) == qdougall_rhs(i, j, m, a, b, q)


def test_qv4_m0():
    a, b, q = A, B, Q
    c, d = Fraction(2, 3), Fraction(3, 7)
    assert qv4_term(0, a, b, c, d, q) == qv4_rhs(0, a, b, c, d, q)


def test_sum_term_k0_is_one():
    from qpfaffian.identities import sum_term

    assert sum_term(0, 3, 4, A, B, Q) == 1


def test_unknown_identity():
    with pytest.raises(DomainError):
        verify("no-such-id", {}, 1, 0)


def test_registry_parameter_validation():
    with pytest.raises(DomainError):
        verify("pf-special", {"n": 2}, 1, 0)  # missing r
