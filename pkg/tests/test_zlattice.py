from __future__ import annotations

import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from eislat.linalg import int_det, inverse, mat_mul
from eislat.zlattice import (
    CapExceeded,
    LatticeError,
    NotPositiveDefinite,
    ZLattice,
    automorphism_group,
    build_standard,
    direct_sum,
    discriminant_generators,
    glue_overlattice,
    is_isometry,
    isometry_definite,
    lattice_invariants,
    orth_complement_z,
    short_vectors,
)

Z3 = build_standard("Z3")
A2 = build_standard("A2")
E8 = build_standard("E8")
U = build_standard("U")


def box_vectors(L: ZLattice, norm: int, r: int):
    out = set()
    for v in itertools.product(range(-r, r + 1), repeat=L.rank):
        if any(v) and L.norm(v) == norm:
            first = next(x for x in v if x)
            out.add(v if first > 0 else tuple(-x for x in v))
    return out


class TestBuilders:
    def test_u(self):
        assert U.matrix() == [[0, 1], [1, 0]]

    def test_a2(self):
        assert A2.matrix() == [[2, -1], [-1, 2]] and A2.det() == 3

    def test_e8(self):
        inv = lattice_invariants(E8)
        assert E8.det() == 1 and inv.parity == "even" and inv.signature == (8, 0, 0)

    def test_unknown_name(self):
        with pytest.raises(LatticeError):
            build_standard("F4")

    def test_diag_and_zn(self):
        assert build_standard("diag", [2, 6]).matrix() == [[2, 0], [0, 6]]
        assert build_standard("Zn", 3) == Z3

    def test_rejects_asymmetric(self):
        with pytest.raises(LatticeError):
            ZLattice.from_matrix([[1, 2], [3, 1]])

    def test_json_round_trip(self):
        assert ZLattice.from_json(A2.to_json()) == A2
        assert A2.to_json() == {"rank": 2, "gram": [[2, -1], [-1, 2]]}


class TestInvariants:
    def test_direct_sums(self):
        UU = direct_sum(U, U)
        assert UU.rank == 4 and UU.det() == 1
        big = direct_sum(E8, E8, U, U, A2)
        inv = lattice_invariants(big)
        # two negative eigenvalues: the determinant is positive (det U = -1 appears squared)
        assert big.rank == 22 and inv.signature == (20, 2, 0) and big.det() == 3
        assert inv.invariant_factors == (3,) and inv.parity == "even"
        assert direct_sum(A2, ZLattice(())) == A2

    def test_z3_and_u(self):
        assert lattice_invariants(Z3).to_json() == {"invariant_factors": [], "parity": "odd", "signature": [3, 0, 0]}
        inv = lattice_invariants(U)
        assert inv.parity == "even" and inv.signature == (1, 1, 0) and inv.invariant_factors == ()

    def test_signature_additive(self):
        for a, b in [(U, A2), (E8, U), (Z3, build_standard("diag", [-1, 0]))]:
            s = lattice_invariants(direct_sum(a, b)).signature
            sa, sb = lattice_invariants(a).signature, lattice_invariants(b).signature
            assert s == tuple(x + y for x, y in zip(sa, sb))


class TestShortVectors:
    def test_z3_norm3(self):
        vs = short_vectors(Z3, 3)
        assert len(vs) == 4 and all(abs(x) == 1 for v in vs for x in v)

    def test_a2_norm2(self):
        assert len(short_vectors(A2, 2)) == 3

    def test_e8_roots(self):
        assert len(short_vectors(E8, 2)) == 120

    def test_not_definite(self):
        with pytest.raises(NotPositiveDefinite):
            short_vectors(U, 2)

    def test_sorted_and_sign_normalized(self):
        vs = short_vectors(build_standard("diag", [1, 2, 3]), 6)
        assert vs == sorted(vs)
        assert all(next(x for x in v if x) > 0 for v in vs)

    @pytest.mark.parametrize(
        "gram",
        [
            [[2, -1], [-1, 2]],
            [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            [[2, 1, 0], [1, 2, 1], [0, 1, 3]],
            [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, -1], [0, 0, -1, 2]],
            [[3, 1, 1, 0], [1, 3, 1, 1], [1, 1, 4, 1], [0, 1, 1, 5]],
            [[6, 5], [5, 6]],
        ],
    )
    def test_matches_box_enumeration(self, gram):
        L = ZLattice.from_matrix(gram)
        for norm in range(1, 7):
            # minimal eigenvalue >= 1/(something) here; radius 6 covers every norm <= 6
            assert set(short_vectors(L, norm)) == box_vectors(L, norm, 6)


@st.composite
def pd_grams(draw):
    n = draw(st.integers(1, 3))
    B = [[draw(st.integers(-2, 2)) for _ in range(n)] for _ in range(n)]
    if int_det(B) == 0:
        B = [[int(i == j) for j in range(n)] for i in range(n)]
    return [[sum(B[i][k] * B[j][k] for k in range(n)) for j in range(n)] for i in range(n)]


@settings(max_examples=40, deadline=None)
@given(pd_grams(), st.integers(1, 6))
def test_short_vectors_property(gram, norm):
    L = ZLattice.from_matrix(gram)
    vs = short_vectors(L, norm)
    assert all(L.norm(v) == norm for v in vs)
    assert len(set(vs)) == len(vs)
    # |v_i|^2 <= norm * (G^-1)_ii bounds the box for each coordinate
    Ginv = inverse(gram)
    r = max(math.isqrt(int(norm * Ginv[i][i]) + 1) + 1 for i in range(L.rank))
    assert set(vs) == box_vectors(L, norm, r)


class TestIsometries:
    def test_a2_self(self):
        f = isometry_definite(A2, A2)
        assert f is not None and is_isometry(f, A2, A2)

    def test_complement_of_111(self):
        basis, K = orth_complement_z(Z3, [[1, 1, 1]])
        assert K.matrix() in ([[2, -1], [-1, 2]], [[2, 1], [1, 2]])
        f = isometry_definite(K, A2)
        assert f is not None and is_isometry(f, K, A2)

    def test_a2_vs_diag(self):
        assert isometry_definite(A2, build_standard("diag", [2, 6])) is None

    def test_automorphism_counts(self):
        assert len(automorphism_group(Z3)) == 48
        assert len(automorphism_group(A2)) == 12
        assert len(automorphism_group(build_standard("Z1"))) == 2

    def test_group_closure(self):
        for L in (Z3, A2):
            G = automorphism_group(L)
            keys = {tuple(map(tuple, g)) for g in G}
            for g in G:
                for h in G:
                    assert tuple(map(tuple, mat_mul(g, h))) in keys
                ginv = [[int(x) for x in row] for row in inverse(g)]
                assert tuple(map(tuple, ginv)) in keys

    def test_cap(self):
        with pytest.raises(CapExceeded):
            automorphism_group(Z3, cap=10)

    def test_equivariant(self):
        T = [[0, -1], [1, -1]]
        f = isometry_definite(A2, A2, equivariance=(T, T))
        assert mat_mul(f, T) == mat_mul(T, f)


class TestComplementsAndGluing:
    def test_u_isotropic(self):
        basis, K = orth_complement_z(U, [[1, 0]])
        assert K.rank == 1 and K.matrix() == [[0]]

    def test_empty(self):
        basis, K = orth_complement_z(A2, [])
        assert K == A2

    def test_no_glue(self):
        assert glue_overlattice(A2, []) == A2

    def test_a2_a2_diagonal_glue_rejected(self):
        L = direct_sum(A2, A2)
        (d1, g1), (d2, g2) = discriminant_generators(L)
        with pytest.raises(LatticeError):
            glue_overlattice(L, [[a + b for a, b in zip(g1, g2)]])

    def test_a2_e6_style_gluing_index(self):
        # A2 + A2 glued by (g, -g) is integral with even norm 4/3+... check det relation
        L = direct_sum(A2, A2)
        (d1, g1), (d2, g2) = discriminant_generators(L)
        for s in (1, -1, 2):
            glue = [a + s * b for a, b in zip(g1, g2)]
            try:
                M = glue_overlattice(L, [glue])
            except LatticeError:
                continue
            assert abs(M.det()) * 9 == abs(L.det())

    def test_z3_discriminant(self):
        assert discriminant_generators(Z3) == []
        gens = discriminant_generators(A2)
        assert len(gens) == 1 and gens[0][0] == 3
        g = gens[0][1]
        assert all(isinstance(x, Fraction) for x in g)
        assert all((sum(A2.gram[i][j] * g[j] for j in range(2))).denominator == 1 for i in range(2))
