from __future__ import annotations

from fractions import Fraction

import pytest

from eislat import euclid
from eislat.eisenstein import ONE, THETA, ZERO, ZETA, EisensteinInt, canonical_associate, eis_gcd
from eislat.elattice import emat_hnf, emat_snf, emat_mul
from eislat.euclid import EE
from eislat.linalg import (
    hermitian_diagonalize,
    int_det,
    inverse,
    lll_gram,
    mat_mul,
    rank,
    rational_kernel,
    solve,
    symmetric_diagonalize,
)

from conftest import rand_eis

E = EisensteinInt


def eye(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def is_upper_echelon(H, zero):
    last = -1
    for row in H:
        nz = [j for j, x in enumerate(row) if x != zero]
        if not nz:
            last = len(row)
            continue
        assert nz[0] > last
        last = nz[0]
    return True


class TestEisensteinForms:
    def test_hnf_identity(self):
        H, U = emat_hnf(eye(3))
        assert H == eye(3) and U == eye(3)

    def test_hnf_column(self):
        H, U = emat_hnf([[E(1, -1)], [E(3)]])
        assert H[0][0] == canonical_associate(E(1, -1)) == eis_gcd(E(1, -1), 3)
        assert H[1][0] == ZERO
        assert emat_mul(U, [[E(1, -1)], [E(3)]]) == H

    def test_hnf_two_by_two(self):
        M = [[E(2), E(1)], [E(1), E(2)]]
        H, U = emat_hnf(M)
        d = euclid.det(H, EE)
        assert d.norm() == 9 and canonical_associate(d) == E(3)
        assert emat_mul(U, M) == H
        assert euclid.det(U, EE).is_unit()

    def test_hnf_pivots_canonical_and_reduced(self):
        M = [[E(4, 2), E(1, 1), E(0, 3)], [E(2), E(5, -1), E(1)], [E(3, 3), E(0), E(7, 2)]]
        H, U = emat_hnf(M)
        for i, row in enumerate(H):
            nz = [j for j, x in enumerate(row) if x]
            if nz:
                p = row[nz[0]]
                assert p.is_canonical()
                for k in range(i):
                    assert H[k][nz[0]].norm() < p.norm()

    def test_snf_theta(self):
        D, U, V = emat_snf([[THETA, ZERO], [ZERO, THETA]])
        c = canonical_associate(THETA)
        assert D == [[c, ZERO], [ZERO, c]]

    def test_snf_two_by_two(self):
        D, U, V = emat_snf([[E(2), E(1)], [E(1), E(2)]])
        assert D == [[ONE, ZERO], [ZERO, E(3)]]

    def test_snf_zero(self):
        D, U, V = emat_snf([[ZERO, ZERO], [ZERO, ZERO]])
        assert D == [[ZERO, ZERO], [ZERO, ZERO]]

    def test_thousand_random_reconstructions(self, rng):
        cases = 0
        while cases < 1000:
            m, n = rng.randint(1, 3), rng.randint(1, 3)
            M = [[rand_eis(rng, -6, 6) for _ in range(n)] for _ in range(m)]
            H, U = emat_hnf(M)
            assert emat_mul(U, M) == H
            assert euclid.det(U, EE).is_unit()
            assert is_upper_echelon(H, ZERO)
            D, P, Q = emat_snf(M)
            assert emat_mul(emat_mul(P, M), Q) == D
            assert euclid.det(P, EE).is_unit() and euclid.det(Q, EE).is_unit()
            diag = [D[i][i] for i in range(min(m, n))]
            for i in range(m):
                for j in range(n):
                    if i != j:
                        assert D[i][j] == ZERO
            for a, b in zip(diag, diag[1:]):
                assert a.divides(b)
            assert all(not d or d.is_canonical() for d in diag)
            cases += 1


class TestIntegerForms:
    def test_thousand_random_integer_reconstructions(self, rng):
        for _ in range(1000):
            m, n = rng.randint(1, 4), rng.randint(1, 4)
            M = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
            H, U = euclid.hnf(M)
            assert euclid.matmul(U, M) == H
            assert abs(euclid.det(U)) == 1
            D, P, Q = euclid.snf(M)
            assert euclid.matmul(euclid.matmul(P, M), Q) == D
            diag = [D[i][i] for i in range(min(m, n))]
            assert all(d >= 0 for d in diag)
            for a, b in zip(diag, diag[1:]):
                assert (b % a == 0) if a else b == 0

    def test_det_agrees(self, rng):
        for _ in range(200):
            n = rng.randint(1, 5)
            M = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
            assert euclid.det(M) == int_det(M)

    def test_left_kernel_is_saturated(self):
        K = euclid.left_kernel([[2], [4]])
        assert K == [[-2, 1]] or K == [[2, -1]]

    def test_complete_to_basis(self):
        B = euclid.complete_to_basis([3, 5, 7])
        assert B[0] == [3, 5, 7] and abs(euclid.det(B)) == 1
        with pytest.raises(ValueError):
            euclid.complete_to_basis([2, 4])

    def test_eisenstein_complete_to_basis(self):
        v = [E(1, 1), THETA, E(2)]
        B = euclid.complete_to_basis(v, EE)
        assert B[0] == v and euclid.det(B, EE).is_unit()


class TestRationalLinearAlgebra:
    def test_signatures(self):
        assert symmetric_diagonalize([[0, 1], [1, 0]])[:3] == (1, 1, 0)
        assert symmetric_diagonalize([[0, 0], [0, 0]])[:3] == (0, 0, 2)
        assert symmetric_diagonalize([[2, -1], [-1, 2]])[:3] == (2, 0, 0)

    def test_diagonalization_basis_is_orthogonal(self, rng):
        for _ in range(50):
            n = rng.randint(1, 5)
            A = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
            G = [[A[i][j] + A[j][i] for j in range(n)] for i in range(n)]
            p, q, z, pairs = symmetric_diagonalize(G)
            assert p + q + z == n
            for val, v in pairs:
                assert sum(v[i] * G[i][j] * v[j] for i in range(n) for j in range(n)) == val
            for (_, v), (_, w) in [(a, b) for i, a in enumerate(pairs) for b in pairs[i + 1 :]]:
                assert sum(v[i] * G[i][j] * w[j] for i in range(n) for j in range(n)) == 0

    def test_hermitian_signature(self):
        h = [[ZERO, THETA], [-THETA, ZERO]]
        assert hermitian_diagonalize(h)[:3] == (1, 1, 0)
        with pytest.raises(ValueError):
            hermitian_diagonalize([[ZETA]])

    def test_solve_inverse_kernel(self):
        A = [[2, 1], [1, 3]]
        x = solve(A, [3, 5])
        assert mat_mul(A, [[c] for c in x]) == [[3], [5]]
        assert mat_mul(A, inverse(A)) == [[1, 0], [0, 1]]
        assert rank([[1, 2], [2, 4]]) == 1
        K = rational_kernel([[1, 2], [2, 4]])
        assert len(K) == 1 and K[0][0] + 2 * K[0][1] == 0
        assert solve([[1, 1], [1, 1]], [1, 2]) is None

    def test_lll_is_basis_change(self):
        G = [[10, 7, 3], [7, 6, 2], [3, 2, 5]]
        B, G2 = lll_gram(G)
        assert abs(int_det(B)) == 1
        BG = mat_mul(mat_mul(B, G), [list(r) for r in zip(*B)])
        assert BG == [[Fraction(x) for x in row] for row in G2] or BG == G2
        assert G2[0][0] <= G[0][0]
