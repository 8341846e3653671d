"""Hermite and Smith normal forms over a Euclidean domain.

The same row-reduction code serves Z (Python ints) and Z[zeta]
(EisensteinInt); a small ring descriptor supplies norm, division with
remainder and the canonical associate of a pivot.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Sequence

from .eisenstein import ONE, ZERO, eis_divmod

Matrix = list[list[Any]]


@dataclass(frozen=True)
class EuclideanRing:
    name: str
    zero: Any
    one: Any
    norm: Callable[[Any], int]
    divmod: Callable[[Any, Any], tuple[Any, Any]]
    normalize: Callable[[Any], tuple[Any, Any]]  # x -> (unit, unit * x canonical)


def _int_normalize(x: int) -> tuple[int, int]:
    return (-1, -x) if x < 0 else (1, x)


ZZ = EuclideanRing("ZZ", 0, 1, abs, divmod, _int_normalize)
EE = EuclideanRing(
    "EE",
    ZERO,
    ONE,
    lambda x: x.norm(),
    eis_divmod,
    lambda x: x.canonical(),
)


def identity(n: int, ring: EuclideanRing = ZZ) -> Matrix:
    return [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]


def _copy(M: Sequence[Sequence[Any]]) -> Matrix:
    return [list(row) for row in M]


def _shape(M: Sequence[Sequence[Any]]) -> tuple[int, int]:
    m = len(M)
    n = len(M[0]) if m else 0
    if any(len(row) != n for row in M):
        raise ValueError("ragged matrix")
    return m, n


def _row_axpy(dst: list, src: list, q) -> None:
    # dst -= q * src
    for j, s in enumerate(src):
        if s:
            dst[j] = dst[j] - q * s


def matmul(A: Sequence[Sequence[Any]], B: Sequence[Sequence[Any]], zero=0) -> Matrix:
    m, k = _shape(A)
    k2, n = _shape(B)
    if k != k2:
        raise ValueError(f"dimension mismatch {m}x{k} * {k2}x{n}")
    out = []
    for i in range(m):
        Ai = A[i]
        row = []
        for j in range(n):
            s = zero
            for t in range(k):
                a = Ai[t]
                if a:
                    b = B[t][j]
                    if b:
                        s = s + a * b
            row.append(s)
        out.append(row)
    return out


def hnf(M: Sequence[Sequence[Any]], ring: EuclideanRing = ZZ) -> tuple[Matrix, Matrix]:
    """Row Hermite normal form: returns (H, U) with H = U*M, U unimodular.

    Pivots are canonical associates; entries above a pivot are remainders
    modulo that pivot.
    """
    m, n = _shape(M)
    H = _copy(M)
    U = identity(m, ring)
    row = 0
    for col in range(n):
        if row == m:
            break
        while True:
            nz = [i for i in range(row, m) if H[i][col]]
            if not nz:
                break
            p = min(nz, key=lambda i: (ring.norm(H[i][col]), i))
            if p != row:
                H[row], H[p] = H[p], H[row]
                U[row], U[p] = U[p], U[row]
            clean = True
            piv = H[row][col]
            for i in range(row + 1, m):
                if H[i][col]:
                    q, r = ring.divmod(H[i][col], piv)
                    _row_axpy(H[i], H[row], q)
                    _row_axpy(U[i], U[row], q)
                    if r:
                        clean = False
            if clean:
                break
        if not H[row][col]:
            continue
        u, _ = ring.normalize(H[row][col])
        if u != ring.one:
            H[row] = [u * x for x in H[row]]
            U[row] = [u * x for x in U[row]]
        piv = H[row][col]
        for i in range(row):
            if H[i][col]:
                q, _ = ring.divmod(H[i][col], piv)
                if q:
                    _row_axpy(H[i], H[row], q)
                    _row_axpy(U[i], U[row], q)
        row += 1
    return H, U


def snf(M: Sequence[Sequence[Any]], ring: EuclideanRing = ZZ) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form: returns (D, U, V) with D = U*M*V diagonal, d1 | d2 | ..."""
    m, n = _shape(M)
    D = _copy(M)
    U = identity(m, ring)
    V = identity(n, ring)
    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = D[i][j]
                    if x:
                        key = (ring.norm(x), i, j)
                        if best is None or key < best:
                            best = key
            if best is None:
                return D, U, V
            _, i, j = best
            if i != t:
                D[t], D[i] = D[i], D[t]
                U[t], U[i] = U[i], U[t]
            if j != t:
                for row in D:
                    row[t], row[j] = row[j], row[t]
                for row in V:
                    row[t], row[j] = row[j], row[t]
            piv = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    q, r = ring.divmod(D[i][t], piv)
                    _row_axpy(D[i], D[t], q)
                    _row_axpy(U[i], U[t], q)
                    dirty = dirty or bool(r)
            for j in range(t + 1, n):
                if D[t][j]:
                    q, r = ring.divmod(D[t][j], piv)
                    for row in D:
                        if row[t]:
                            row[j] = row[j] - q * row[t]
                    for row in V:
                        if row[t]:
                            row[j] = row[j] - q * row[t]
                    dirty = dirty or bool(r)
            if dirty:
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] and ring.divmod(D[i][j], piv)[1]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            # fold the offending row into the pivot row and try again
            D[t] = [x + y for x, y in zip(D[t], D[bad])]
            U[t] = [x + y for x, y in zip(U[t], U[bad])]
        u, _ = ring.normalize(D[t][t])
        if u != ring.one:
            D[t] = [u * x for x in D[t]]
            U[t] = [u * x for x in U[t]]
    return D, U, V


def left_kernel(A: Sequence[Sequence[Any]], ring: EuclideanRing = ZZ) -> Matrix:
    """Basis (as rows) of the saturated module {x : x*A = 0}."""
    m, _ = _shape(A)
    if m == 0:
        return []
    H, U = hnf(A, ring)
    return [U[i] for i in range(m) if not any(H[i])]


def row_span_basis(M: Sequence[Sequence[Any]], ring: EuclideanRing = ZZ) -> Matrix:
    """Nonzero rows of the HNF: a basis of the row module."""
    if not M:
        return []
    H, _ = hnf(M, ring)
    return [row for row in H if any(row)]


def complete_to_basis(v: Sequence[Any], ring: EuclideanRing = ZZ) -> Matrix:
    """Unimodular matrix whose first row is v (v must be primitive).

    Uses the Smith form of the 1 x n row: u*v*V = (g, 0, ..., 0) with g a
    unit, so the rows of V^{-1} form a basis whose first row is v up to a unit.
    """
    D, _, V = snf([list(v)], ring)
    g = D[0][0] if v else ring.zero
    if not g or ring.norm(g) != 1:
        raise ValueError("vector is not primitive")
    Vinv = inverse_unimodular(V, ring)
    Vinv[0] = list(v)
    return Vinv


def inverse_unimodular(M: Sequence[Sequence[Any]], ring: EuclideanRing = ZZ) -> Matrix:
    """Inverse of a square matrix whose determinant is a unit."""
    n, n2 = _shape(M)
    if n != n2:
        raise ValueError("square matrix expected")
    H, U = hnf(M, ring)
    # H is upper triangular with unit pivots, reduce to identity
    for i in range(n):
        if H[i][i] != ring.one:
            raise ValueError("matrix is not unimodular")
    # HNF with unit pivots reduces entries above pivots to zero
    return U


def det(M: Sequence[Sequence[Any]], ring: EuclideanRing = ZZ):
    """Determinant by Euclidean row reduction (swaps and row additions only)."""
    n, n2 = _shape(M)
    if n != n2:
        raise ValueError("square matrix expected")
    A = _copy(M)
    sign = ring.one
    acc = ring.one
    for c in range(n):
        while True:
            nz = [i for i in range(c, n) if A[i][c]]
            if not nz:
                return ring.zero
            p = min(nz, key=lambda i: (ring.norm(A[i][c]), i))
            if p != c:
                A[c], A[p] = A[p], A[c]
                sign = -sign
            done = True
            for i in range(c + 1, n):
                if A[i][c]:
                    q, r = ring.divmod(A[i][c], A[c][c])
                    _row_axpy(A[i], A[c], q)
                    if r:
                        done = False
            if done:
                break
        acc = acc * A[c][c]
    return sign * acc
