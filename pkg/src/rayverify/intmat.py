"""Exact integer linear algebra: Smith and Hermite normal forms.

Matrices are dense: a list of rows, each row a list of Python ints.
The normal-form routines are deterministic; pivot selection always takes
the nonzero entry of smallest absolute value, scanning row-major with the
first hit winning ties.  Structure computations downstream (orders of
finite modules, Sylow decompositions, lattice indices) rely on this
determinism to produce reproducible witnesses.
"""

from __future__ import annotations


def _copy_rows(A):
    if isinstance(A, IntMatrix):
        A = A.rows
    return [list(map(int, row)) for row in A]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def transpose(A):
    A = A.rows if isinstance(A, IntMatrix) else A
    if not A:
        return []
    return [list(col) for col in zip(*A)]


def mat_mul(A, B):
    A = A.rows if isinstance(A, IntMatrix) else A
    B = B.rows if isinstance(B, IntMatrix) else B
    if not A or not B:
        return [[] for _ in A]
    n = len(B)
    assert all(len(row) == n for row in A), "inner dimensions disagree"
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def mat_vec(A, v):
    A = A.rows if isinstance(A, IntMatrix) else A
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def det(A):
    """Determinant of a square integer matrix, Bareiss fraction-free scheme."""
    M = _copy_rows(A)
    n = len(M)
    assert all(len(row) == n for row in M), "det needs a square matrix"
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact by the Bareiss identity
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def snf(A):
    """Smith normal form with transforms.

    Returns (U, S, V) with U*A*V == S, U and V unimodular, S diagonal and
    each diagonal entry nonnegative and dividing the next.  Diagonal of S
    is the invariant-factor chain of the cokernel Z^m / (row space of A^T),
    equivalently of Z^n / (column relations); callers treating rows of A as
    relations among n generators read the group structure off the diagonal.
    """
    S = _copy_rows(A)
    m = len(S)
    n = len(S[0]) if m else 0
    U = identity(m)
    V = identity(n)
    t = 0
    while t < min(m, n):
        # deterministic pivot: min |entry| over S[t:, t:], row-major scan
        pi = pj = -1
        best = 0
        for i in range(t, m):
            for j in range(t, n):
                v = S[i][j]
                if v != 0 and (best == 0 or abs(v) < best):
                    best = abs(v)
                    pi, pj = i, j
        if best == 0:
            break
        if pi != t:
            S[t], S[pi] = S[pi], S[t]
            U[t], U[pi] = U[pi], U[t]
        if pj != t:
            for row in S:
                row[t], row[pj] = row[pj], row[t]
            for row in V:
                row[t], row[pj] = row[pj], row[t]
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
        p = S[t][t]
        dirty = False
        for i in range(t + 1, m):
            if S[i][t] != 0:
                q = S[i][t] // p
                if q:
                    S[i] = [a - q * b for a, b in zip(S[i], S[t])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[t])]
                if S[i][t] != 0:
                    dirty = True
        for j in range(t + 1, n):
            if S[t][j] != 0:
                q = S[t][j] // p
                if q:
                    for row in S:
                        row[j] -= q * row[t]
                    for row in V:
                        row[j] -= q * row[t]
                if S[t][j] != 0:
                    dirty = True
        if dirty:
            continue  # leftover remainders are smaller than p; rescan
        # divisibility: pivot must divide the remaining block
        fixed = True
        for i in range(t + 1, m):
            bad = next((j for j in range(t + 1, n) if S[i][j] % p != 0), None)
            if bad is not None:
                S[t] = [a + b for a, b in zip(S[t], S[i])]
                U[t] = [a + b for a, b in zip(U[t], U[i])]
                fixed = False
                break
        if fixed:
            t += 1
    return U, S, V


def smith_diagonal(A):
    """Invariant factors of A (nonzero diagonal of its Smith form)."""
    _, S, _ = snf(A)
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0)) if S[i][i] != 0]


def hnf(A):
    """Row Hermite normal form with zero rows dropped.

    Pivots are positive, entries above a pivot lie in [0, pivot), and the
    row space equals that of A.  hnf is idempotent, so two integer row
    lattices are equal iff their hnf matrices are equal.
    """
    H = _copy_rows(A)
    m = len(H)
    n = len(H[0]) if m else 0
    r = 0
    for j in range(n):
        while True:
            piv = -1
            best = 0
            for i in range(r, m):
                v = H[i][j]
                if v != 0 and (best == 0 or abs(v) < best):
                    best = abs(v)
                    piv = i
            if piv < 0:
                break
            if piv != r:
                H[r], H[piv] = H[piv], H[r]
            clean = True
            for i in range(r + 1, m):
                if H[i][j] != 0:
                    q = H[i][j] // H[r][j]
                    if q:
                        H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    if H[i][j] != 0:
                        clean = False
            if clean:
                break
        if piv >= 0:
            if H[r][j] < 0:
                H[r] = [-x for x in H[r]]
            for i in range(r):
                q = H[i][j] // H[r][j]
                if q:
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
            r += 1
    return [row for row in H[:r]]


def kernel(A):
    """Basis of the integer kernel {x : A x = 0}, one vector per row.

    The basis is saturated: it spans ker(A) over Q intersected with Z^n,
    so quotients by the kernel lattice are torsion-free.
    """
    A = A.rows if isinstance(A, IntMatrix) else A
    m = len(A)
    n = len(A[0]) if m else 0
    if n == 0:
        return []
    if m == 0:
        return identity(n)
    _, S, V = snf(A)
    rank = sum(1 for i in range(min(m, n)) if S[i][i] != 0)
    return [[V[i][j] for i in range(n)] for j in range(rank, n)]


def solve(A, b):
    """One integer solution x of A x = b, or None when none exists."""
    A = A.rows if isinstance(A, IntMatrix) else A
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return [0] * n
    U, S, V = snf(A)
    c = mat_vec(U, list(b))
    y = [0] * n
    for i in range(m):
        d = S[i][i] if i < min(m, n) else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d != 0:
                return None
            y[i] = c[i] // d
    return mat_vec(V, y)


def preimage_lattice(V, L):
    """Basis rows of {r : r . V lies in the row lattice of L}.

    V is a list of s vectors (the images of s abstract generators); L spans
    the target relation lattice.  When the quotient of the target by L is
    finite the result has full rank s.
    """
    s = len(V)
    if s == 0:
        return []
    stacked = [list(v) for v in V] + [list(row) for row in L]
    ker = kernel(transpose(stacked))
    return [row[:s] for row in ker]


def intersection_lattice(A, B):
    """Hermite basis of the intersection of two row lattices in Z^n.

    Uses the block trick: the Hermite form of rows [a | a] and [b | 0] has
    its (0 | x) rows spanning exactly the intersection.
    """
    if not A or not B:
        return []
    n = len(A[0])
    rows = [list(a) + list(a) for a in A] + [list(b) + [0] * n for b in B]
    H = hnf(rows)
    out = [r[n:] for r in H if all(x == 0 for x in r[:n])]
    return hnf(out)


class IntMatrix:
    """Thin wrapper over a list-of-rows integer matrix."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = [list(map(int, row)) for row in rows]
        widths = {len(r) for r in self.rows}
        assert len(widths) <= 1, "ragged rows"

    @classmethod
    def identity(cls, n):
        return cls(identity(n))

    @property
    def shape(self):
        m = len(self.rows)
        return (m, len(self.rows[0]) if m else 0)

    def __matmul__(self, other):
        return IntMatrix(mat_mul(self.rows, other))

    def __eq__(self, other):
        other = other.rows if isinstance(other, IntMatrix) else other
        return self.rows == other

    def __repr__(self):
        return "IntMatrix(%r)" % (self.rows,)

    def transpose(self):
        return IntMatrix(transpose(self.rows))

    def det(self):
        return det(self.rows)

    def snf(self):
        return snf(self.rows)

    def hnf(self):
        return IntMatrix(hnf(self.rows))

    def kernel(self):
        return kernel(self.rows)
