import random

from rayverify.intmat import (
    IntMatrix,
    det,
    hnf,
    identity,
    kernel,
    mat_mul,
    mat_vec,
    smith_diagonal,
    snf,
    solve,
    transpose,
)


def test_snf_identity():
    U, S, V = snf(identity(2))
    assert S == [[1, 0], [0, 1]]


def test_snf_small_oracle():
    # invariant factors of [[2,4],[6,8]]: gcd of entries is 2 and
    # |det| = 8, so the chain is 2, 4
    A = [[2, 4], [6, 8]]
    U, S, V = snf(A)
    assert S == [[2, 0], [0, 4]]
    assert mat_mul(mat_mul(U, A), V) == S


def test_snf_zero_matrix():
    U, S, V = snf([[0]])
    assert S == [[0]]
    assert U == [[1]] and V == [[1]]


def test_snf_rectangular():
    A = [[6, 10, 15]]
    U, S, V = snf(A)
    assert S[0][0] == 1  # gcd(6,10,15)
    assert mat_mul(mat_mul(U, A), V) == S


def test_kernel_oracle():
    assert kernel([[2, -2]]) == [[1, 1]]


def test_kernel_saturated():
    # row space of [[2,0],[0,2]] has full rank: kernel empty
    assert kernel([[2, 0], [0, 2]]) == []
    # [[1,2,3]] has a rank-2 kernel; vectors must actually annihilate
    K = kernel([[1, 2, 3]])
    assert len(K) == 2
    for v in K:
        assert mat_vec([[1, 2, 3]], v) == [0]


def test_hnf_oracle():
    assert hnf([[2, 4], [6, 8]]) == [[2, 0], [0, 4]]


def test_hnf_idempotent_and_lattice_equality():
    A = [[3, 1, 2], [1, 4, 1], [4, 5, 3]]
    H = hnf(A)
    assert hnf(H) == H
    # appending an integer combination of rows must not change the lattice
    extra = [a + 2 * b for a, b in zip(A[0], A[2])]
    assert hnf(A + [extra]) == H


def test_solve_oracles():
    A = [[2, 4], [6, 8]]
    x = solve(A, [2, 6])
    assert x is not None and mat_vec(A, x) == [2, 6]
    assert solve(A, [1, 0]) is None  # parity obstruction
    assert solve([[2]], [3]) is None


def test_det_oracles():
    assert det([[2, 4], [6, 8]]) == -8
    assert det(identity(3)) == 1
    assert det([[7]]) == 7
    assert det([[1, 2], [2, 4]]) == 0


def test_smith_diagonal():
    assert smith_diagonal([[2, 4], [6, 8]]) == [2, 4]
    assert smith_diagonal([[0, 0]]) == []


def test_intmatrix_wrapper():
    A = IntMatrix([[1, 2], [3, 4]])
    assert A.shape == (2, 2)
    assert (A @ IntMatrix.identity(2)) == A
    assert A.transpose().rows == [[1, 3], [2, 4]]
    assert A.det() == -2


def _random_matrix(rng, m, n, bound=9):
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)]


def test_snf_properties_random():
    rng = random.Random(17)
    for _ in range(60):
        m = rng.randint(1, 5)
        n = rng.randint(1, 5)
        A = _random_matrix(rng, m, n)
        U, S, V = snf(A)
        assert mat_mul(mat_mul(U, A), V) == S
        assert abs(det(U)) == 1
        assert abs(det(V)) == 1
        diag = [S[i][i] for i in range(min(m, n))]
        for i in range(m):
            for j in range(n):
                if i != j:
                    assert S[i][j] == 0
        for a, b in zip(diag, diag[1:]):
            assert a >= 0 and b >= 0
            if a != 0:
                assert b % a == 0
            else:
                assert b == 0
        if m == n:
            prod = 1
            for d in diag:
                prod *= d
            assert prod == abs(det(A))


def test_kernel_properties_random():
    rng = random.Random(23)
    for _ in range(60):
        m = rng.randint(1, 4)
        n = rng.randint(1, 5)
        A = _random_matrix(rng, m, n, bound=6)
        K = kernel(A)
        for v in K:
            assert mat_vec(A, v) == [0] * m
        U, S, V = snf(A)
        rank = sum(1 for i in range(min(m, n)) if S[i][i] != 0)
        assert len(K) == n - rank


def test_solve_properties_random():
    rng = random.Random(31)
    for _ in range(60):
        m = rng.randint(1, 4)
        n = rng.randint(1, 4)
        A = _random_matrix(rng, m, n, bound=6)
        x = [rng.randint(-5, 5) for _ in range(n)]
        b = mat_vec(A, x)
        got = solve(A, b)
        assert got is not None
        assert mat_vec(A, got) == b


def test_hnf_row_space_random():
    rng = random.Random(41)
    for _ in range(40):
        m = rng.randint(1, 4)
        n = rng.randint(1, 4)
        A = _random_matrix(rng, m, n, bound=6)
        H = hnf(A)
        assert hnf(H) == H
        # every original row solves over the hnf basis and conversely
        for row in A:
            assert solve(transpose(H), row) is not None if H else all(v == 0 for v in row)
        for row in H:
            assert solve(transpose(A), row) is not None


def test_preimage_lattice():
    from rayverify.intmat import preimage_lattice

    # images of two generators in Z/6 x Z/4 given by rows of V
    V = [[1, 0], [0, 1]]
    L = [[6, 0], [0, 4]]
    assert hnf(preimage_lattice(V, L)) == [[6, 0], [0, 4]]
    # single generator mapping diagonally
    K = preimage_lattice([[2, 2]], [[4, 0], [0, 6]])
    assert hnf(K) == [[6]]  # 2k = 0 mod 4 and 2k = 0 mod 6 iff 6 | k
    assert preimage_lattice([], [[1]]) == []


def test_intersection_lattice():
    from rayverify.intmat import intersection_lattice

    A = [[2, 0], [0, 3]]
    B = [[3, 0], [0, 2]]
    assert intersection_lattice(A, B) == [[6, 0], [0, 6]]
    # intersection with a sublattice is the sublattice
    C = [[4, 2], [0, 10]]
    full = [[1, 0], [0, 1]]
    assert intersection_lattice(C, full) == hnf(C)
    assert intersection_lattice([], A) == []
