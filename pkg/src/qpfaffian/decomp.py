"""Matrix decompositions: LU by minor quotients, and the block
factorization A = tV T V of a skew-symmetric matrix (T block-diagonal in
2x2 skew blocks, V block upper unitriangular with J2 diagonal blocks).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, PivotError
from .scalar import exact_div
from .skewpf import (
    SkewMatrix,
    det_expansion,
    mat_mul,
    minor,
    subpf_seq,
    subpfaffian,
    transpose,
)

SUBPF_ROUTE_GUARD = 10  # block count; the subpfaffian route is O(n^2) Pfaffians


@dataclass(frozen=True)
class LUDecomposition:
    """P A = L D U with L, U unitriangular and D diagonal."""

    perm: tuple  # row permutation: PA row i is A row perm[i] (1-based values)
    L: tuple
    D: tuple  # diagonal entries
    U: tuple

    def reconstruct(self):
        """The product L D U (equal to P A)."""
        n = len(self.D)
        DU = [[self.D[i] * self.U[i][j] for j in range(n)] for i in range(n)]
        return mat_mul([list(r) for r in self.L], DU)


@dataclass(frozen=True)
class PfDecomposition:
    """The pair (t, V): T is block-diagonal with blocks [[0, t_i], [-t_i, 0]],
    V is block upper unitriangular with J2 diagonal blocks, and tV T V
    reproduces the matrix."""

    t: tuple
    V: tuple

    @property
    def n_blocks(self) -> int:
        return len(self.t)

    def t_matrix(self):
        n2 = 2 * self.n_blocks
        T = [[0] * n2 for _ in range(n2)]
        for i, ti in enumerate(self.t):
            T[2 * i][2 * i + 1] = ti
            T[2 * i + 1][2 * i] = -ti
        return T

    def pfaffian(self):
        """Pf of the reconstructed matrix: the product of the t_i."""
        out = 1
        for ti in self.t:
            out = out * ti
        return out


def permute_rows(rows, perm):
    """Rows reordered so that row i of the result is row perm[i] (1-based)."""
    return [list(rows[p - 1]) for p in perm]


def lu_by_minors(rows, perm=None) -> LUDecomposition:
    """LU decomposition with all entries given by quotients of minors of PA.

    d_i = |PA over [i]| / |PA over [i-1]|,
    l^i_j = |PA rows [j-1]+{i}, cols [j]| / |PA over [j]|,
    u^i_j = |PA rows [i], cols [i-1]+{j}| / |PA over [i]|.
    """
    n = len(rows)
    if perm is None:
        perm = tuple(range(1, n + 1))
    m = permute_rows(rows, perm)
    lead = [1]  # lead[i] = leading principal minor of order i
    for i in range(1, n + 1):
        d = minor(m, range(1, i + 1), range(1, i + 1))
        if d == 0:
            raise PivotError(i, f"leading minor of order {i} vanishes")
        lead.append(d)
    D = tuple(exact_div(lead[i], lead[i - 1]) for i in range(1, n + 1))
    L = [[0] * n for _ in range(n)]
    U = [[0] * n for _ in range(n)]
    for i in range(1, n + 1):
        L[i - 1][i - 1] = 1
        U[i - 1][i - 1] = 1
        for j in range(1, i):
            L[i - 1][j - 1] = exact_div(
                minor(m, list(range(1, j)) + [i], range(1, j + 1)), lead[j]
            )
        for j in range(i + 1, n + 1):
            U[i - 1][j - 1] = exact_div(
                minor(m, range(1, i + 1), list(range(1, i)) + [j]), lead[i]
            )
    out = LUDecomposition(tuple(perm), tuple(map(tuple, L)), D, tuple(map(tuple, U)))
    if out.reconstruct() != m:
        raise DomainError("internal: LU reconstruction failed")
    return out


def pf_decompose_by_subpf(A: SkewMatrix) -> PfDecomposition:
    """Decomposition with every entry a subpfaffian quotient:
    t_i = a_[2i] / a_[2i-2],  v^k_l(i) = a_[2i-2],k,l / a_[2i]."""
    n2 = A.n
    if n2 % 2:
        raise DomainError("even dimension required")
    n = n2 // 2
    if n > SUBPF_ROUTE_GUARD:
        raise DomainError(f"subpfaffian route guarded to {SUBPF_ROUTE_GUARD} blocks")
    lead = [1]
    for i in range(1, n + 1):
        lead.append(subpfaffian(A, range(1, 2 * i + 1)))
        if lead[i] == 0:
            raise PivotError(i, f"leading subpfaffian a_[{2 * i}] vanishes")
    t = tuple(exact_div(lead[i], lead[i - 1]) for i in range(1, n + 1))
    V = [[0] * n2 for _ in range(n2)]
    for i in range(1, n + 1):
        base = list(range(1, 2 * i - 1))
        for k in (2 * i - 1, 2 * i):
            for l in range(2 * i - 1, n2 + 1):
                V[k - 1][l - 1] = exact_div(subpf_seq(A, base + [k, l]), lead[i])
    return PfDecomposition(t, tuple(map(tuple, V)))


def pf_decompose_elimination(A: SkewMatrix) -> PfDecomposition:
    """Same decomposition by 2x2 Schur-complement elimination, O(n^3)."""
    n2 = A.n
    if n2 % 2:
        raise DomainError("even dimension required")
    m = [list(r) for r in A.rows]
    t = []
    V = [[0] * n2 for _ in range(n2)]
    for b in range(0, n2, 2):
        p = m[b][b + 1]
        if p == 0:
            raise PivotError(b // 2 + 1, f"leading subpfaffian a_[{b + 2}] vanishes")
        t.append(p)
        V[b][b + 1] = 1
        V[b + 1][b] = -1
        inv_p = Fraction(1) / p if not hasattr(p, "invert") else p.invert()
        for l in range(b + 2, n2):
            V[b][l] = m[b][l] * inv_p
            V[b + 1][l] = m[b + 1][l] * inv_p
        c1 = m[b][b + 2 :]
        c2 = m[b + 1][b + 2 :]
        for u in range(b + 2, n2):
            for v in range(u + 1, n2):
                delta = (c2[u - b - 2] * c1[v - b - 2] - c1[u - b - 2] * c2[v - b - 2]) * inv_p
                m[u][v] = m[u][v] + delta
                m[v][u] = -m[u][v]
    return PfDecomposition(tuple(t), tuple(map(tuple, V)))


def reconstruct(d: PfDecomposition) -> SkewMatrix:
    """The product tV T V."""
    V = [list(r) for r in d.V]
    T = d.t_matrix()
    return SkewMatrix(mat_mul(mat_mul(transpose(V), T), V))


def pf_from_decomp(d: PfDecomposition):
    """Pf(A) = prod t_i (V has determinant 1)."""
    return d.pfaffian()


def _block_perm(n2: int):
    """The permutation (12)(34)... as a 1-based image tuple."""
    out = []
    for i in range(1, n2 + 1):
        out.append(i + 1 if i % 2 else i - 1)
    return tuple(out)


def _j_blocks(n2: int):
    J = [[0] * n2 for _ in range(n2)]
    for b in range(0, n2, 2):
        J[b][b + 1] = 1
        J[b + 1][b] = -1
    return J


def lu_from_pf_decomp(d: PfDecomposition) -> LUDecomposition:
    """Convert: with P = (12)(34)..., U = tJ V, D = P T, L = P tV J P,
    P A = L D U holds with L, U unitriangular."""
    n2 = 2 * d.n_blocks
    perm = _block_perm(n2)
    V = [list(r) for r in d.V]
    J = _j_blocks(n2)
    T = d.t_matrix()
    U = mat_mul(transpose(J), V)
    D_full = permute_rows(T, perm)
    D = tuple(D_full[i][i] for i in range(n2))
    PtV = permute_rows(transpose(V), perm)
    L = mat_mul(mat_mul(PtV, J), _perm_matrix(perm))
    return LUDecomposition(perm, tuple(map(tuple, L)), D, tuple(map(tuple, U)))


def _perm_matrix(perm):
    n = len(perm)
    P = [[0] * n for _ in range(n)]
    for i, p in enumerate(perm):
        P[i][p - 1] = 1
    return P


def lu_entries_by_parity(d: PfDecomposition) -> LUDecomposition:
    """The same conversion via the entrywise parity formulas; a second,
    independent transcription used as a cross-check."""
    n2 = 2 * d.n_blocks
    V = d.V

    def v(i, j):
        return V[i - 1][j - 1]

    U = [[0] * n2 for _ in range(n2)]
    L = [[0] * n2 for _ in range(n2)]
    D = []
    for i in range(1, n2 + 1):
        if i % 2:
            D.append(-d.t[(i + 1) // 2 - 1])
        else:
            D.append(d.t[i // 2 - 1])
        for j in range(1, n2 + 1):
            U[i - 1][j - 1] = -v(i + 1, j) if i % 2 else v(i - 1, j)
            if i % 2 and j % 2:
                L[i - 1][j - 1] = v(j, i + 1)
            elif j % 2:
                L[i - 1][j - 1] = v(j, i - 1)
            elif i % 2:
                L[i - 1][j - 1] = -v(j, i + 1)
            else:
                L[i - 1][j - 1] = -v(j, i - 1)
    return LUDecomposition(
        _block_perm(n2), tuple(map(tuple, L)), tuple(D), tuple(map(tuple, U))
    )
