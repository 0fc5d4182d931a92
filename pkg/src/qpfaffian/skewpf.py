"""Skew-symmetric matrices over an exact scalar and their Pfaffians.

Three independent Pfaffian algorithms are provided: the combinatorial
sum over perfect matchings (the sign-convention ground truth), the
first-row Laplace-style expansion, and an O(n^3) elimination via 2x2
Schur complements with paired row/column swaps.  Index sets here are
1-based to match the decomposition formulas.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations

from .errors import DomainError, GuardError, NotAUnit
from .scalar import parse_rat, rat_str

PF_COMBINATORIAL_GUARD = 12
MSF_GUARD_N = 8
MSF_GUARD_BIG = 10


class SkewMatrix:
    """Immutable n x n skew-symmetric matrix; skew-symmetry checked once."""

    __slots__ = ("n", "rows")

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        for r in rows:
            if len(r) != n:
                raise DomainError("matrix is not square")
        for i in range(n):
            for j in range(i, n):
                if rows[i][j] != -rows[j][i]:
                    raise DomainError(
                        f"skew-symmetry violated at (i, j) = ({i + 1}, {j + 1})"
                    )
        self.n = n
        self.rows = rows

    @classmethod
    def from_upper(cls, n, fn):
        """Build from fn(i, j) for 1 <= i < j <= n; mirror filled in."""
        rows = [[0] * n for _ in range(n)]
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                v = fn(i, j)
                rows[i - 1][j - 1] = v
                rows[j - 1][i - 1] = -v
        return cls(rows)

    def entry(self, i: int, j: int):
        """1-based entry access."""
        return self.rows[i - 1][j - 1]

    def restrict(self, indices):
        """Principal submatrix over sorted 1-based indices."""
        idx = [i - 1 for i in indices]
        return SkewMatrix([[self.rows[i][j] for j in idx] for i in idx])

    def to_json(self) -> str:
        entries = [[rat_str(Fraction(v)) for v in row] for row in self.rows]
        return json.dumps({"n": self.n, "entries": entries})

    @classmethod
    def from_json(cls, text: str) -> "SkewMatrix":
        data = json.loads(text)
        n = data["n"]
        entries = data["entries"]
        if len(entries) != n or any(len(r) != n for r in entries):
            raise DomainError("entries shape does not match n")
        return cls([[parse_rat(v) for v in row] for row in entries])

    def __eq__(self, other):
        return isinstance(other, SkewMatrix) and self.rows == other.rows

    def __repr__(self):
        return f"SkewMatrix(n={self.n})"


def _matchings(indices):
    """Yield perfect matchings of `indices` as flat tuples
    (s1, s2, s3, s4, ...) with s1 < s2, s1 < s3 < s5 < ..."""
    if not indices:
        yield ()
        return
    first, rest = indices[0], indices[1:]
    for pos, partner in enumerate(rest):
        remaining = rest[:pos] + rest[pos + 1 :]
        for sub in _matchings(remaining):
            yield (first, partner) + sub


def _perm_sign(perm) -> int:
    inv = 0
    for a, b in combinations(range(len(perm)), 2):
        if perm[a] > perm[b]:
            inv += 1
    return -1 if inv % 2 else 1


def pf_combinatorial(A: SkewMatrix):
    """Pfaffian as the signed sum over perfect matchings."""
    n = A.n
    if n % 2:
        raise DomainError("Pfaffian requires even dimension")
    if n > PF_COMBINATORIAL_GUARD:
        raise GuardError(f"combinatorial Pfaffian guarded to n <= {PF_COMBINATORIAL_GUARD}")
    if n == 0:
        return 1
    total = 0
    for sigma in _matchings(tuple(range(1, n + 1))):
        prod = _perm_sign(sigma)
        for k in range(0, n, 2):
            prod = prod * A.entry(sigma[k], sigma[k + 1])
        total = total + prod
    return total


def pf_expansion(A: SkewMatrix):
    """Pfaffian by recursive expansion along the first row."""
    n = A.n
    if n % 2:
        raise DomainError("Pfaffian requires even dimension")
    rows = A.rows
    memo = {}

    def rec(indices):
        if not indices:
            return 1
        if indices in memo:
            return memo[indices]
        i0 = indices[0]
        rest = indices[1:]
        total = 0
        for pos, j in enumerate(rest):
            a = rows[i0][j]
            if a == 0:
                continue
            sub = rest[:pos] + rest[pos + 1 :]
            term = a * rec(sub)
            total = total + term if pos % 2 == 0 else total - term
        memo[indices] = total
        return total

    return rec(tuple(range(n)))


def pf_elimination(A: SkewMatrix):
    """Pfaffian by 2x2-block Schur complement elimination, O(n^3) divisions.

    A vanishing pivot is repaired by a paired row/column swap (sign flip);
    a fully zero pivot row means the Pfaffian is 0.
    """
    n = A.n
    if n % 2:
        raise DomainError("Pfaffian requires even dimension")
    m = [list(r) for r in A.rows]
    sign = 1
    result = 1
    for k in range(0, n, 2):
        # ensure m[k][k+1] != 0
        if m[k][k + 1] == 0:
            pivot_col = None
            for j in range(k + 2, n):
                if m[k][j] != 0:
                    pivot_col = j
                    break
            if pivot_col is None:
                return 0 * result if not isinstance(result, int) else 0
            _swap(m, k + 1, pivot_col)
            sign = -sign
        p = m[k][k + 1]
        result = result * p
        if k + 2 < n:
            inv_p = Fraction(1) / p if not hasattr(p, "invert") else p.invert()
            c1 = m[k][k + 2 :]
            c2 = m[k + 1][k + 2 :]
            for u in range(k + 2, n):
                cu1 = c1[u - k - 2]
                cu2 = c2[u - k - 2]
                for v in range(u + 1, n):
                    delta = (cu2 * c1[v - k - 2] - cu1 * c2[v - k - 2]) * inv_p
                    m[u][v] = m[u][v] + delta
                    m[v][u] = -m[u][v]
    return result * sign if sign < 0 else result


def _swap(m, i, j):
    m[i], m[j] = m[j], m[i]
    for row in m:
        row[i], row[j] = row[j], row[i]


def pfaffian(A: SkewMatrix):
    """Default Pfaffian: elimination, falling back to expansion when a
    pivot is not invertible in the scalar ring (truncated series)."""
    try:
        return pf_elimination(A)
    except (NotAUnit, ZeroDivisionError):
        return pf_expansion(A)


def subpfaffian(A: SkewMatrix, indices):
    """Pf of the principal submatrix over sorted 1-based indices; Pf of
    the empty set is 1."""
    idx = tuple(indices)
    if len(idx) % 2:
        raise DomainError("subpfaffian needs an even index set")
    if any(idx[t] >= idx[t + 1] for t in range(len(idx) - 1)):
        raise DomainError("index set must be strictly increasing")
    if not idx:
        return 1
    return pfaffian(A.restrict(idx))


def subpf_seq(A: SkewMatrix, indices):
    """Pf over a not-necessarily-sorted index sequence: antisymmetric in
    the indices, 0 on repeats."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return 0
    order = sorted(range(len(idx)), key=lambda t: idx[t])
    sign = _perm_sign(order)
    return sign * subpfaffian(A, sorted(idx))


# -- determinants ------------------------------------------------------------


def det_bareiss(rows):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    m = [[Fraction(x) if isinstance(x, int) else x for x in r] for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot_row = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if pivot_row is None:
                return 0 * prev if not isinstance(prev, int) else 0
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num / prev if prev != 1 else num
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def det_expansion(rows):
    """Division-free determinant by Laplace expansion with column-subset
    memoization; usable over any commutative ring (e.g. truncated series)."""
    n = len(rows)
    if n == 0:
        return 1
    memo = {}

    def rec(row, colmask):
        if row == n:
            return 1
        key = colmask
        if key in memo:
            return memo[key]
        total = 0
        sign = 1
        for j in range(n):
            bit = 1 << j
            if colmask & bit:
                continue
            a = rows[row][j]
            if a != 0:
                term = a * rec(row + 1, colmask | bit)
                total = total + term if sign > 0 else total - term
            sign = -sign
        memo[key] = total
        return total

    return rec(0, 0)


def minor(rows, row_idx, col_idx):
    """Determinant of the submatrix with the given 1-based row/column
    index sequences (in the given order)."""
    sub = [[rows[i - 1][j - 1] for j in col_idx] for i in row_idx]
    return det_expansion(sub)


# -- identity checkers -------------------------------------------------------


def check_pf_desnanot_jacobi(A: SkewMatrix) -> bool:
    """Pfaffian Desnanot-Jacobi: a_[n-4] a_[n] =
    a_[n-4],n-3,n-2 a_[n-4],n-1,n - a_[n-4],n-3,n-1 a_[n-4],n-2,n
    + a_[n-4],n-3,n a_[n-4],n-2,n-1."""
    n = A.n
    if n < 4 or n % 2:
        raise DomainError("needs even n >= 4")
    base = list(range(1, n - 3))
    a = subpfaffian
    lhs = a(A, base) * a(A, range(1, n + 1))
    rhs = (
        a(A, base + [n - 3, n - 2]) * a(A, base + [n - 1, n])
        - a(A, base + [n - 3, n - 1]) * a(A, base + [n - 2, n])
        + a(A, base + [n - 3, n]) * a(A, base + [n - 2, n - 1])
    )
    return lhs == rhs


def check_det_desnanot_jacobi(rows) -> bool:
    """Determinant Desnanot-Jacobi adjoint-matrix identity."""
    n = len(rows)
    if n < 2:
        raise DomainError("needs n >= 2")
    core = list(range(1, n - 1))
    lhs = minor(rows, core, core) * minor(
        rows, range(1, n + 1), range(1, n + 1)
    )
    rhs = minor(rows, core + [n - 1], core + [n - 1]) * minor(
        rows, core + [n], core + [n]
    ) - minor(rows, core + [n - 1], core + [n]) * minor(
        rows, core + [n], core + [n - 1]
    )
    return lhs == rhs


def mat_mul(a, b):
    rows = len(a)
    inner = len(b)
    cols = len(b[0]) if inner else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        for k in range(inner):
            aik = ai[k]
            if aik == 0:
                continue
            bk = b[k]
            row = out[i]
            for j in range(cols):
                if bk[j] != 0:
                    row[j] = row[j] + aik * bk[j]
    return out


def transpose(a):
    return [list(col) for col in zip(*a)]


def minor_summation_check(T, B: SkewMatrix) -> bool:
    """Minor summation formula:
    sum_{|I| = n} Pf(B_I) det(T^[n]_I) = Pf(T B tT)."""
    n = len(T)
    N = B.n
    if n % 2 or n > N:
        raise DomainError("needs even n <= N")
    if n > MSF_GUARD_N or N > MSF_GUARD_BIG:
        raise GuardError("minor summation guarded to n <= 8, N <= 10")
    lhs = 0
    for I in combinations(range(1, N + 1), n):
        pf_b = subpfaffian(B, I)
        if pf_b == 0:
            continue
        sub = [[T[i][j - 1] for j in I] for i in range(n)]
        lhs = lhs + pf_b * det_expansion(sub)
    product = mat_mul(mat_mul(T, [list(r) for r in B.rows]), transpose(T))
    rhs = pfaffian(SkewMatrix(product))
    return lhs == rhs


def build_tridiagonal(alpha, N: int) -> SkewMatrix:
    """Skew matrix with superdiagonal alpha_1..alpha_{N-1} (1-based)."""
    return SkewMatrix.from_upper(
        N, lambda i, j: alpha[i - 1] if j == i + 1 else 0
    )


def tridiagonal_subpf(alpha, indices):
    """Closed form for Pf(B_I) of the tridiagonal skew matrix: the product
    of alpha at odd positions of I when I pairs consecutively, else 0."""
    idx = tuple(indices)
    if len(idx) % 2:
        raise DomainError("even index set required")
    out = 1
    for k in range(0, len(idx), 2):
        if idx[k + 1] != idx[k] + 1:
            return 0
        out = out * alpha[idx[k] - 1]
    return out
