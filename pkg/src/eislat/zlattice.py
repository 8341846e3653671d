"""Integral quadratic lattices given by a Gram matrix.

Vectors are coordinate tuples with respect to the lattice basis; matrices
acting on lattices act on coordinate *columns*, so an isometry ``f`` from
``L1`` to ``L2`` satisfies ``f^T G2 f = G1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm
from typing import Iterator, Sequence

import numpy as np

from . import euclid
from .linalg import (
    int_det,
    inverse,
    lll_gram,
    mat_mul,
    symmetric_diagonalize,
    transpose,
)


class LatticeError(ValueError):
    """Precondition failure on a lattice operation."""


class NotPositiveDefinite(LatticeError):
    pass


class CapExceeded(LatticeError):
    pass


@dataclass(frozen=True)
class ZLattice:
    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        n = len(g)
        if any(len(row) != n for row in g):
            raise LatticeError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise LatticeError("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", g)

    @classmethod
    def from_matrix(cls, gram: Sequence[Sequence[int]]) -> ZLattice:
        return cls(tuple(tuple(row) for row in gram))

    @property
    def rank(self) -> int:
        return len(self.gram)

    def matrix(self) -> list[list[int]]:
        return [list(row) for row in self.gram]

    def inner(self, u: Sequence[int], v: Sequence[int]) -> int:
        g = self.gram
        return sum(u[i] * g[i][j] * v[j] for i in range(len(u)) if u[i] for j in range(len(v)) if v[j])

    def norm(self, v: Sequence[int]) -> int:
        return self.inner(v, v)

    def det(self) -> int:
        return int_det(self.gram)

    def to_json(self) -> dict:
        return {"rank": self.rank, "gram": self.matrix()}

    @classmethod
    def from_json(cls, data: dict) -> ZLattice:
        L = cls.from_matrix(data["gram"])
        if "rank" in data and data["rank"] != L.rank:
            raise LatticeError("rank field disagrees with Gram size")
        return L


@dataclass(frozen=True)
class DiscriminantData:
    invariant_factors: tuple[int, ...]
    parity: str
    signature: tuple[int, int, int]

    def to_json(self) -> dict:
        return {
            "invariant_factors": list(self.invariant_factors),
            "parity": self.parity,
            "signature": list(self.signature),
        }


# constructions --------------------------------------------------------------

# Bourbaki numbering: chain 1-3-4-5-6-7-8 with node 2 attached to node 4.
E8_EDGES = ((1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4))


def cartan_gram(n: int, edges: Sequence[tuple[int, int]]) -> list[list[int]]:
    g = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for a, b in edges:
        g[a - 1][b - 1] = g[b - 1][a - 1] = -1
    return g


def build_standard(name: str, arg=None) -> ZLattice:
    """Named lattices: "U", "A2", "E8", "Zn" (arg = rank), "diag" (arg = entries)."""
    key = name.strip()
    if key == "U":
        return ZLattice.from_matrix([[0, 1], [1, 0]])
    if key == "A2":
        return ZLattice.from_matrix([[2, -1], [-1, 2]])
    if key == "E8":
        return ZLattice.from_matrix(cartan_gram(8, E8_EDGES))
    if key in ("Zn", "Z"):
        k = int(arg)
        if k < 0:
            raise LatticeError("rank must be non-negative")
        return ZLattice.from_matrix([[int(i == j) for j in range(k)] for i in range(k)])
    if key.startswith("Z") and key[1:].isdigit():
        return build_standard("Zn", int(key[1:]))
    if key == "diag":
        entries = [int(x) for x in arg]
        n = len(entries)
        return ZLattice.from_matrix([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])
    raise LatticeError(f"unknown lattice name {name!r}")


def direct_sum(*lattices: ZLattice) -> ZLattice:
    n = sum(L.rank for L in lattices)
    g = [[0] * n for _ in range(n)]
    off = 0
    for L in lattices:
        for i, row in enumerate(L.gram):
            g[off + i][off : off + L.rank] = row
        off += L.rank
    return ZLattice.from_matrix(g)


def lattice_invariants(L: ZLattice) -> DiscriminantData:
    p, n, z, _ = symmetric_diagonalize(L.gram)
    if L.rank:
        D, _, _ = euclid.snf(L.matrix())
        factors = tuple(abs(D[i][i]) for i in range(L.rank) if abs(D[i][i]) > 1)
    else:
        factors = ()
    parity = "even" if all(L.gram[i][i] % 2 == 0 for i in range(L.rank)) else "odd"
    return DiscriminantData(factors, parity, (p, n, z))


def is_positive_definite(L: ZLattice) -> bool:
    p, _, _ = lattice_invariants(L).signature
    return p == L.rank


def _require_definite(L: ZLattice) -> None:
    p, n, z, _ = symmetric_diagonalize(L.gram)
    if p != L.rank:
        raise NotPositiveDefinite(f"lattice of signature {(p, n, z)} is not positive definite")


# short vectors --------------------------------------------------------------


def _cholesky_float(G: Sequence[Sequence[int]]) -> tuple[list[float], list[list[float]]]:
    """q(x) = sum_i d[i] * (x_i + sum_{j>i} mu[i][j] x_j)^2, computed exactly then rounded."""
    n = len(G)
    Q = [[Fraction(x) for x in row] for row in G]
    for i in range(n):
        if Q[i][i] <= 0:
            raise NotPositiveDefinite("Gram matrix is not positive definite")
        for j in range(i + 1, n):
            Q[j][i] = Q[i][j]
            Q[i][j] = Q[i][j] / Q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                Q[k][l] -= Q[k][i] * Q[i][l]
    d = [float(Q[i][i]) for i in range(n)]
    mu = [[float(Q[i][j]) if j > i else 0.0 for j in range(n)] for i in range(n)]
    return d, mu


def _fincke_pohst(G: Sequence[Sequence[int]], bound: int) -> Iterator[tuple[int, ...]]:
    """All nonzero x with x G x^T <= bound, one per +-pair (last nonzero coordinate > 0).

    Interval ends are widened by a small margin; callers re-check norms exactly.
    """
    n = len(G)
    if n == 0:
        return
    d, mu = _cholesky_float(G)
    eps = 1e-7 * (1 + bound)
    x = [0] * n
    out: list[tuple[int, ...]] = []

    def rec(i: int, remaining: float, all_zero_above: bool):
        c = 0.0
        row = mu[i]
        for j in range(i + 1, n):
            if x[j]:
                c -= row[j] * x[j]
        r = math.sqrt(max(remaining + eps, 0.0) / d[i])
        lo = math.ceil(c - r - 1e-9)
        hi = math.floor(c + r + 1e-9)
        if all_zero_above:
            lo = max(lo, 0)
        for xi in range(lo, hi + 1):
            t = xi - c
            rem = remaining - d[i] * t * t
            if rem < -eps:
                continue
            x[i] = xi
            if i == 0:
                if not (all_zero_above and xi == 0):
                    out.append(tuple(x))
            else:
                rec(i - 1, rem, all_zero_above and xi == 0)
        x[i] = 0

    rec(n - 1, float(bound), True)
    yield from out


@dataclass
class _Reduced:
    B: list[list[int]]  # rows: reduced basis in original coordinates
    G: list[list[int]]


_REDUCTION_CACHE: dict[tuple, _Reduced] = {}


def _reduced(gram: tuple[tuple[int, ...], ...]) -> _Reduced:
    hit = _REDUCTION_CACHE.get(gram)
    if hit is None:
        B, G = lll_gram(gram)
        hit = _Reduced(B, G)
        if len(_REDUCTION_CACHE) > 256:
            _REDUCTION_CACHE.clear()
        _REDUCTION_CACHE[gram] = hit
    return hit


def _sign_normalize(v: Sequence[int]) -> tuple[int, ...]:
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def vectors_up_to(L: ZLattice, bound: int, min_norm: int = 1) -> dict[int, list[tuple[int, ...]]]:
    """Vectors with min_norm <= norm <= bound grouped by norm, one per +-pair.

    Enumeration runs on an LLL-reduced basis; each vector is mapped back to the
    original coordinates and its norm recomputed with integers.
    """
    _require_definite(L)
    red = _reduced(L.gram)
    B = red.B
    n = L.rank
    found: dict[int, list[tuple[int, ...]]] = {}
    for y in _fincke_pohst(red.G, bound):
        v = [0] * n
        for i, yi in enumerate(y):
            if yi:
                Bi = B[i]
                for j in range(n):
                    v[j] += yi * Bi[j]
        nv = L.norm(v)
        if min_norm <= nv <= bound:
            found.setdefault(nv, []).append(_sign_normalize(v))
    for k in found:
        found[k].sort()
    return found


def short_vectors(L: ZLattice, norm: int) -> list[tuple[int, ...]]:
    """All v with v.v == norm, one of each +-pair (first nonzero entry positive), sorted."""
    if norm <= 0:
        raise LatticeError("norm must be positive")
    return vectors_up_to(L, norm, norm).get(norm, [])


# isometries -----------------------------------------------------------------


def _mat_int(M) -> list[list[int]]:
    return [[int(x) for x in row] for row in M]


class RationalSpan:
    """Incrementally maintained echelon basis of a subspace of Q^n."""

    def __init__(self, n: int):
        self.n = n
        self.rows: list[tuple[int, list[Fraction]]] = []  # (pivot column, row with pivot 1)

    def _reduce(self, v: Sequence) -> list[Fraction]:
        w = [Fraction(x) for x in v]
        for p, row in self.rows:
            c = w[p]
            if c:
                for j in range(p, self.n):
                    if row[j]:
                        w[j] -= c * row[j]
        return w

    def contains(self, v: Sequence) -> bool:
        return not any(self._reduce(v))

    def add(self, v: Sequence) -> bool:
        w = self._reduce(v)
        p = next((j for j, x in enumerate(w) if x), None)
        if p is None:
            return False
        inv = 1 / w[p]
        w = [x * inv for x in w]
        for _, row in self.rows:
            c = row[p]
            if c:
                for j in range(p, self.n):
                    row[j] -= c * w[j]
        self.rows.append((p, w))
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)


def _choose_basis(L: ZLattice, T: list[list[int]] | None):
    """Short vectors forming a Q-basis of L, in pairs (w, Tw) when T is given.

    Among the shortest vectors outside the current span, the one pairing
    non-trivially with most already chosen vectors is taken next; this keeps
    the backtracking constraints tight.
    """
    n = L.rank
    bound = min(L.gram[i][i] for i in range(n))
    while True:
        pool = vectors_up_to(L, bound)
        vecs = [v for k in sorted(pool) for v in pool[k]]
        span = RationalSpan(n)
        chosen: list[tuple[int, ...]] = []
        while span.dim < n:
            outside = [v for v in vecs if not span.contains(v)]
            if not outside:
                break
            m = L.norm(outside[0])
            best = max(
                (v for v in outside if L.norm(v) == m),
                key=lambda v: sum(1 for w in chosen if L.inner(v, w)),
            )
            chosen.append(best)
            span.add(best)
            if T is not None:
                tw = tuple(int(x) for x in _apply(T, best))
                chosen.append(tw)
                span.add(tw)
        if span.dim == n:
            return chosen
        bound += 1


def _apply(T: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(T[i][j] * v[j] for j in range(len(v))) for i in range(len(T))]


def _candidates(L: ZLattice, norm: int) -> np.ndarray:
    vecs = short_vectors(L, norm)
    both = vecs + [tuple(-x for x in v) for v in vecs]
    if not both:
        return np.zeros((0, L.rank), dtype=object)
    arr = np.array(both, dtype=np.int64)
    return arr


def _isometry_search(
    L1: ZLattice,
    L2: ZLattice,
    T1=None,
    T2=None,
    find_all: bool = False,
    cap: int | None = None,
):
    n = L1.rank
    if L2.rank != n:
        raise LatticeError("rank mismatch")
    _require_definite(L1)
    _require_definite(L2)
    if n == 0:
        return [[]]
    if L1.det() != L2.det():
        return []
    equi = T1 is not None
    W = _choose_basis(L1, T1)
    G2 = np.array(L2.gram, dtype=np.int64)
    target = [[L1.inner(W[i], W[j]) for j in range(n)] for i in range(n)]
    cand_cache: dict[int, np.ndarray] = {}
    for w in W:
        m = L1.norm(w)
        if m not in cand_cache:
            cand_cache[m] = _candidates(L2, m)
    for m, C in cand_cache.items():
        # an isometry is a bijection on vectors of each norm
        if 2 * len(short_vectors(L1, m)) != C.shape[0]:
            return []
    if any(c.size and np.abs(c).max() > 10**6 for c in cand_cache.values()):
        raise LatticeError("candidate vectors too large for exact int64 filtering")
    T2a = np.array(T2, dtype=np.int64) if equi else None
    Winv = inverse([list(col) for col in zip(*W)])  # W as columns
    results: list[list[list[int]]] = []
    images: list[np.ndarray | None] = [None] * n
    dual: list[np.ndarray | None] = [None] * n  # G2 @ image

    def finish() -> bool:
        V = [[int(images[j][i]) for j in range(n)] for i in range(n)]  # columns = images
        f = mat_mul(V, Winv)
        if any(Fraction(x).denominator != 1 for row in f for x in row):
            return False
        f = _mat_int(f)
        if mat_mul(mat_mul(transpose(f), L2.matrix()), f) != L1.matrix():
            return False
        if equi and mat_mul(f, T1) != mat_mul(T2, f):
            return False
        results.append(f)
        if cap is not None and len(results) > cap:
            raise CapExceeded(f"more than {cap} isometries")
        return not find_all

    def consistent(k: int, v: np.ndarray) -> bool:
        for j in range(k):
            if int(v @ dual[j]) != target[k][j]:
                return False
        return True

    def rec(k: int) -> bool:
        if k == n:
            return finish()
        if equi and k % 2 == 1:
            v = T2a @ images[k - 1]
            if not consistent(k, v):
                return False
            images[k] = v
            dual[k] = G2 @ v
            return rec(k + 1)
        C = cand_cache[L1.norm(W[k])]
        if C.shape[0] == 0:
            return False
        mask = np.ones(C.shape[0], dtype=bool)
        for j in range(k):
            mask &= (C @ dual[j]) == target[k][j]
            if not mask.any():
                return False
        for idx in np.flatnonzero(mask):
            v = C[idx]
            images[k] = v
            dual[k] = G2 @ v
            if rec(k + 1):
                return True
        images[k] = None
        return False

    rec(0)
    return results


def isometry_definite(L1: ZLattice, L2: ZLattice, equivariance=None):
    """An isometry f (integer matrix, f^T G2 f = G1) or None after exhaustive search.

    ``equivariance`` is an optional pair (T1, T2) of isometries; the result
    then also satisfies f T1 = T2 f.
    """
    T1 = T2 = None
    if equivariance is not None:
        T1, T2 = (_mat_int(T) for T in equivariance)
    found = _isometry_search(L1, L2, T1, T2, find_all=False)
    return found[0] if found else None


def automorphism_group(L: ZLattice, cap: int = 100000, equivariance=None) -> list[list[list[int]]]:
    T = None
    if equivariance is not None:
        T = _mat_int(equivariance)
    auts = _isometry_search(L, L, T, T, find_all=True, cap=cap)
    auts.sort()
    return auts


def is_isometry(f, L1: ZLattice, L2: ZLattice) -> bool:
    f = _mat_int(f)
    return mat_mul(mat_mul(transpose(f), L2.matrix()), f) == L1.matrix()


# complements and gluing ------------------------------------------------------


def orth_complement_z(L: ZLattice, vectors: Sequence[Sequence[int]]):
    """Saturated sublattice orthogonal to the given vectors: (basis rows, lattice)."""
    n = L.rank
    if not vectors:
        basis = [[int(i == j) for j in range(n)] for i in range(n)]
        return basis, L
    G = L.matrix()
    cols = [[sum(G[i][j] * v[j] for j in range(n)) for i in range(n)] for v in vectors]
    A = [[cols[k][i] for k in range(len(vectors))] for i in range(n)]
    basis = euclid.left_kernel(A)
    return basis, induced_lattice(L, basis)


def induced_lattice(L: ZLattice, basis: Sequence[Sequence]) -> ZLattice:
    if not basis:
        return ZLattice(())
    G = mat_mul(mat_mul([list(b) for b in basis], L.matrix()), transpose([list(b) for b in basis]))
    if any(Fraction(x).denominator != 1 for row in G for x in row):
        raise LatticeError("induced form is not integral")
    return ZLattice.from_matrix([[int(x) for x in row] for row in G])


def overlattice_basis(L: ZLattice, glue_vectors: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis (rows, rational coordinates) of L + span(glue), after integrality checks."""
    n = L.rank
    G = L.matrix()
    glue = [[Fraction(x) for x in g] for g in glue_vectors]
    for g in glue:
        if len(g) != n:
            raise LatticeError("glue vector has wrong length")
        Gg = [sum(G[i][j] * g[j] for j in range(n)) for i in range(n)]
        if any(x.denominator != 1 for x in Gg):
            raise LatticeError("non-integral gluing: glue vector pairs non-integrally with L")
    for a in range(len(glue)):
        for b in range(a, len(glue)):
            val = sum(glue[a][i] * G[i][j] * glue[b][j] for i in range(n) for j in range(n))
            if val.denominator != 1:
                kind = "norm" if a == b else "pairing"
                raise LatticeError(f"non-integral gluing: glue {kind} {val} is not an integer")
    den = 1
    for g in glue:
        for x in g:
            den = lcm(den, x.denominator)
    rows = [[den * int(i == j) for j in range(n)] for i in range(n)]
    rows += [[int(x * den) for x in g] for g in glue]
    H = euclid.row_span_basis(rows)
    return [[Fraction(x, den) for x in row] for row in H]


def glue_overlattice(L: ZLattice, glue_vectors: Sequence[Sequence]) -> ZLattice:
    """Gram of the lattice generated by L and the (rational) glue vectors."""
    if not glue_vectors:
        return L
    B = overlattice_basis(L, glue_vectors)
    return induced_lattice(L, B)


def discriminant_generators(L: ZLattice) -> list[tuple[int, list[Fraction]]]:
    """Generators of L^*/L as (order, rational vector in L's coordinates)."""
    n = L.rank
    D, U, V = euclid.snf(L.matrix())
    gens = []
    for i in range(n):
        d = abs(D[i][i])
        if d == 0:
            raise LatticeError("degenerate lattice has infinite discriminant group")
        if d > 1:
            gens.append((d, [Fraction(V[r][i], D[i][i]) for r in range(n)]))
    return gens


def isqrt_exact(n: int) -> int | None:
    r = isqrt(n)
    return r if r * r == n else None
