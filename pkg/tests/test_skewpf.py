from fractions import Fraction
from itertools import combinations

import pytest

from qpfaffian.errors import DomainError
from qpfaffian.scalar import sample_rational, trial_rng
from qpfaffian.skewpf import (
    SkewMatrix,
    build_tridiagonal,
    check_det_desnanot_jacobi,
    check_pf_desnanot_jacobi,
    det_bareiss,
    det_expansion,
    mat_mul,
    minor_summation_check,
    pf_combinatorial,
    pf_elimination,
    pf_expansion,
    subpf_seq,
    subpfaffian,
    transpose,
    tridiagonal_subpf,
)


def random_skew(n, rng):
    vals = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            vals[(i, j)] = sample_rational(rng, 9)
    return SkewMatrix.from_upper(n, lambda i, j: vals[(i, j)])


def random_square(n, rng):
    return [[sample_rational(rng, 9) for _ in range(n)] for _ in range(n)]


def j_matrix(n_blocks):
    return SkewMatrix.from_upper(
        2 * n_blocks, lambda i, j: 1 if (j == i + 1 and i % 2 == 1) else 0
    )


def test_skew_validation():
    with pytest.raises(DomainError):
        SkewMatrix([[0, 1], [1, 0]])
    with pytest.raises(DomainError):
        SkewMatrix([[1, 1], [-1, 0]])
    m = SkewMatrix([[0, 2], [-2, 0]])
    assert m.entry(1, 2) == 2


def test_pf_trivial_cases():
    assert pf_combinatorial(SkewMatrix([])) == 1
    x = Fraction(3, 7)
    assert pf_combinatorial(SkewMatrix([[0, x], [-x, 0]])) == x
    with pytest.raises(DomainError):
        pf_combinatorial(SkewMatrix([[0]]))


def test_pf_4x4_formula():
    rng = trial_rng(1, 0)
    A = random_skew(4, rng)
    a = A.entry
    expected = a(1, 2) * a(3, 4) - a(1, 3) * a(2, 4) + a(1, 4) * a(2, 3)
    assert pf_combinatorial(A) == expected
    assert pf_expansion(A) == expected
    assert pf_elimination(A) == expected


def test_pf_identity_blocks():
    for n in (1, 2, 3, 4):
        assert pf_expansion(j_matrix(n)) == 1
        assert pf_elimination(j_matrix(n)) == 1


@pytest.mark.parametrize("n", [2, 4, 6])
def test_three_algorithms_agree(n):
    rng = trial_rng(5, n)
    for _ in range(20):
        A = random_skew(n, rng)
        v = pf_combinatorial(A)
        assert pf_expansion(A) == v
        assert pf_elimination(A) == v


def test_elimination_zero_pivot_swap():
    # force a zero leading entry so the swap path runs
    rows = [
        [0, 0, 1, 2],
        [0, 0, 3, 4],
        [-1, -3, 0, 5],
        [-2, -4, -5, 0],
    ]
    A = SkewMatrix([[Fraction(x) for x in r] for r in rows])
    assert pf_elimination(A) == pf_combinatorial(A)


def test_elimination_singular():
    A = SkewMatrix.from_upper(4, lambda i, j: 0)
    assert pf_elimination(A) == 0


def test_pf_squared_is_det():
    for n in (2, 4, 6):
        rng = trial_rng(9, n)
        A = random_skew(n, rng)
        assert pf_combinatorial(A) ** 2 == det_bareiss(A.rows)


def test_congruence_transform():
    # Pf(tB A B) = det(B) Pf(A)
    for n in (2, 4):
        rng = trial_rng(11, n)
        A = random_skew(n, rng)
        B = random_square(n, rng)
        M = mat_mul(mat_mul(transpose(B), [list(r) for r in A.rows]), B)
        assert pf_expansion(SkewMatrix(M)) == det_bareiss(B) * pf_expansion(A)


def test_row_swap_flips_sign():
    rng = trial_rng(13, 0)
    A = random_skew(4, rng)
    # swap rows/cols 1 <-> 3
    perm = [3, 2, 1, 4]
    rows = [[A.rows[i - 1][j - 1] for j in perm] for i in perm]
    assert pf_combinatorial(SkewMatrix(rows)) == -pf_combinatorial(A)


def test_subpfaffian():
    rng = trial_rng(17, 0)
    A = random_skew(6, rng)
    assert subpfaffian(A, []) == 1
    assert subpfaffian(A, [2, 5]) == A.entry(2, 5)
    assert subpfaffian(A, range(1, 7)) == pf_combinatorial(A)
    with pytest.raises(DomainError):
        subpfaffian(A, [1, 2, 3])
    assert subpf_seq(A, [5, 2]) == -A.entry(2, 5)
    assert subpf_seq(A, [2, 2]) == 0


def test_det_routines_agree():
    rng = trial_rng(19, 0)
    for n in (1, 2, 3, 4, 5):
        m = random_square(n, rng)
        assert det_bareiss(m) == det_expansion(m)


def test_pf_desnanot_jacobi():
    for n, seed in ((4, 1), (6, 2)):
        rng = trial_rng(23, seed)
        assert check_pf_desnanot_jacobi(random_skew(n, rng))
    zero = SkewMatrix.from_upper(4, lambda i, j: 0)
    assert check_pf_desnanot_jacobi(zero)


def test_det_desnanot_jacobi():
    rng = trial_rng(29, 0)
    for n in (2, 3, 5):
        assert check_det_desnanot_jacobi(random_square(n, rng))
    eye = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
    assert check_det_desnanot_jacobi(eye)


def test_minor_summation_single_subset():
    rng = trial_rng(31, 0)
    n = 4
    T = random_square(n, rng)
    B = random_skew(n, rng)
    assert minor_summation_check(T, B)


@pytest.mark.parametrize("n,N", [(2, 4), (2, 6), (4, 6), (4, 8)])
def test_minor_summation_random(n, N):
    rng = trial_rng(37, 10 * n + N)
    for _ in range(5):
        T = [[sample_rational(rng, 5) for _ in range(N)] for _ in range(n)]
        B = random_skew(N, rng)
        assert minor_summation_check(T, B)


def test_tridiagonal_closed_form():
    alpha = [Fraction(k + 2, 3) for k in range(6)]
    assert tridiagonal_subpf(alpha, [1, 2, 3, 4]) == alpha[0] * alpha[2]
    assert tridiagonal_subpf(alpha, [1, 3, 4, 5]) == 0
    B = build_tridiagonal(alpha, 6)
    for size in (0, 2, 4, 6):
        for I in combinations(range(1, 7), size):
            assert subpfaffian(B, I) == tridiagonal_subpf(alpha, I)


def test_minor_summation_tridiagonal_matches_closed_form():
    rng = trial_rng(41, 0)
    alpha = [sample_rational(rng, 5) for _ in range(6)]
    B = build_tridiagonal(alpha, 6)
    T = [[sample_rational(rng, 5) for _ in range(6)] for _ in range(4)]
    lhs = 0
    for I in combinations(range(1, 7), 4):
        pf_b = tridiagonal_subpf(alpha, I)
        if pf_b == 0:
            continue
        sub = [[T[i][j - 1] for j in I] for i in range(4)]
        lhs += pf_b * det_expansion(sub)
    product = mat_mul(mat_mul(T, [list(r) for r in B.rows]), transpose(T))
    assert lhs == pf_expansion(SkewMatrix(product))


def test_json_roundtrip():
    rng = trial_rng(43, 0)
    A = random_skew(4, rng)
    assert SkewMatrix.from_json(A.to_json()) == A
    bad = '{"n": 2, "entries": [["0", "1"], ["1", "0"]]}'
    with pytest.raises(DomainError):
        SkewMatrix.from_json(bad)
