from __future__ import annotations

import pytest

from eislat.constructions import (
    XS,
    chordal_cubic,
    coxeter_e8,
    e8_mu3,
    glue_ambient,
    hgram_from_integral_relations,
    sign_diagonal,
    verify_ambient,
    verify_arcs,
    verify_chordal,
    verify_conjugate_lambda,
    verify_e8_lambda4,
    verify_gamma_gram,
    verify_lambda10_split,
)
from eislat.elattice import e_conjugate, is_isometry_e, lambda_lattice
from eislat.linalg import identity, mat_mul
from eislat.polynomial import Polynomial
from eislat.zlattice import build_standard, lattice_invariants


def test_coxeter_element():
    c, order = coxeter_e8()
    assert order == 30
    G = build_standard("E8").matrix()
    # c preserves the form
    ct = [list(r) for r in zip(*c)]
    assert mat_mul(mat_mul(ct, G), c) == G


def test_tenth_power_has_no_fixed_vectors():
    M = e8_mu3(10)
    T = [list(r) for r in M.t]
    I = identity(8)
    T2 = mat_mul(T, T)
    # 1 + T + T^2 = 0
    assert all(I[i][j] + T[i][j] + T2[i][j] == 0 for i in range(8) for j in range(8))


def test_e8_lambda4():
    r = verify_e8_lambda4()
    assert r.status == "verified"
    assert r.witnesses["power"] == 10


def test_wrong_power_is_refuted():
    # c^5 has order 6, not 3
    assert verify_e8_lambda4(power=5).status == "refuted"


@pytest.mark.parametrize("height", [0, 2, 3])
def test_lambda10_split_small_heights_inconclusive(height):
    r = verify_lambda10_split(height)
    assert r.status == "inconclusive"
    assert r.search_bound["height"] == height


def test_lambda10_split():
    r = verify_lambda10_split(4)
    assert r.status == "verified"
    assert r.witnesses["e"] and r.witnesses["f"]
    assert len(r.witnesses["complement_basis"]) == 8


def test_ambient_glue_and_invariants():
    A, x, L, tried = glue_ambient()
    assert any(t["accepted"] for t in tried)
    inv = lattice_invariants(L)
    assert inv.parity == "odd" and inv.invariant_factors == () and inv.signature == (21, 2, 0)


def test_verify_ambient():
    r = verify_ambient()
    assert r.status == "verified"
    assert r.witnesses["b"]["v0_norm"] == 3
    assert r.witnesses["c"]["automorphism_count"] == 48


def test_chordal():
    r = verify_chordal()
    assert r.status == "verified"
    assert r.witnesses["secant"] == "0"


def test_chordal_control():
    x0, x1, x2, x3, x4 = Polynomial.gens(XS)
    r = verify_chordal(chordal_cubic() + x0 * x1 * x2)
    assert r.status == "refuted"


def test_arcs_report_is_exact():
    r = verify_arcs()
    assert r.witnesses["triple"] == [-1, 0, 1]
    assert all(a == -b for a, b in r.witnesses["antisymmetry_pairs"])
    # (-1, 0, 1) is not a cyclic permutation of (1, 0, -1)
    assert r.status == "refuted"


def test_conjugate_lambda():
    r = verify_conjugate_lambda(10)
    assert r.status == "verified"
    assert [c["k"] for c in r.witnesses["checked"]] == list(range(1, 11))


def test_identity_is_not_a_conjugation_isometry():
    L = lambda_lattice(3)
    assert is_isometry_e(sign_diagonal(3), e_conjugate(L), L)
    assert not is_isometry_e(identity(3), e_conjugate(L), L)


@pytest.mark.parametrize("k", [1, 2, 5, 10])
def test_gamma_gram(k):
    assert hgram_from_integral_relations(k) == lambda_lattice(k).matrix()
    assert verify_gamma_gram(k).status == "verified"
