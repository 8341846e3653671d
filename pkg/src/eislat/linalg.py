"""Exact linear algebra over Q and Q(zeta).

Everything here works on plain lists of lists.  Rational entries are
``fractions.Fraction``; entries of Q(zeta) are ``EisensteinRational``.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Any, Callable, Sequence

from .eisenstein import EisensteinInt, EisensteinRational

Matrix = list[list[Any]]


def transpose(M: Sequence[Sequence[Any]]) -> Matrix:
    return [list(col) for col in zip(*M)] if M else []


def mat_mul(A: Sequence[Sequence[Any]], B: Sequence[Sequence[Any]]) -> Matrix:
    if A and B and len(A[0]) != len(B):
        raise ValueError(f"dimension mismatch {len(A)}x{len(A[0])} * {len(B)}x{len(B[0])}")
    Bt = transpose(B)
    return [[sum((a * b for a, b in zip(row, col) if a and b), 0) for col in Bt] for row in A]


def mat_vec(A: Sequence[Sequence[Any]], v: Sequence[Any]) -> list:
    return [sum((a * x for a, x in zip(row, v) if a and x), 0) for row in A]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def int_det(M: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of an integer matrix."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


def rref(M: Sequence[Sequence[Any]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over Q (Fraction entries) and pivot columns."""
    A = [[Fraction(x) for x in row] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A, pivots


def rank(M: Sequence[Sequence[Any]]) -> int:
    if not M:
        return 0
    return len(rref(M)[1])


def solve(A: Sequence[Sequence[Any]], b: Sequence[Any]) -> list[Fraction] | None:
    """One rational solution x of A x = b, or None when inconsistent."""
    m = len(A)
    n = len(A[0]) if m else 0
    aug = [list(row) + [b[i]] for i, row in enumerate(A)]
    R, piv = rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv):
        x[c] = R[i][n]
    return x


def inverse(A: Sequence[Sequence[Any]]) -> Matrix:
    n = len(A)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(A)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in R]


def rational_kernel(A: Sequence[Sequence[Any]]) -> Matrix:
    """Basis of {x : A x = 0} over Q, as rows."""
    m = len(A)
    if m == 0:
        return []
    n = len(A[0])
    R, piv = rref(A)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for i, c in enumerate(piv):
            x[c] = -R[i][f]
        basis.append(x)
    return basis


def clear_denominators(v: Sequence[Fraction]) -> list[int]:
    """Smallest positive integer multiple of v with coprime entries."""
    d = 1
    for x in v:
        d = lcm(d, Fraction(x).denominator)
    w = [int(Fraction(x) * d) for x in v]
    g = 0
    for x in w:
        g = gcd(g, x)
    return [x // g for x in w] if g else w


def is_integral(M: Sequence[Sequence[Any]]) -> bool:
    return all(Fraction(x).denominator == 1 for row in M for x in row)


# congruence pivoting -------------------------------------------------------


def _congruence(A: Matrix, conj: Callable[[Any], Any], sign: Callable[[Any], int]):
    """Diagonalise a symmetric/Hermitian matrix by congruence.

    Returns (pivots, basis) where basis rows are vectors (in the original
    coordinates) that are pairwise orthogonal, pivots[i] the form's value on
    basis[i].  Rows of A are combined as x -> x - c*y, columns with conj(c).
    """
    n = len(A)
    A = [list(row) for row in A]
    P = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    P = [[type(A[0][0])(x) if n else x for x in row] for row in P]
    pivots = []
    for k in range(n):
        p = next((i for i in range(k, n) if A[i][i]), None)
        if p is None:
            pair = next(
                ((i, j) for i in range(k, n) for j in range(k, n) if i != j and A[i][j]),
                None,
            )
            if pair is None:
                break
            i, j = pair
            t = A[i][j]
            # b_i <- b_i + t b_j makes the diagonal 2 |t|^2 != 0
            A[i] = [x + t * y for x, y in zip(A[i], A[j])]
            ct = conj(t)
            for row in A:
                row[i] = row[i] + ct * row[j]
            P[i] = [x + t * y for x, y in zip(P[i], P[j])]
            p = i
        if p != k:
            A[k], A[p] = A[p], A[k]
            for row in A:
                row[k], row[p] = row[p], row[k]
            P[k], P[p] = P[p], P[k]
        d = A[k][k]
        inv = 1 / d
        for r in range(k + 1, n):
            if A[r][k]:
                c = A[r][k] * inv
                A[r] = [x - c * y for x, y in zip(A[r], A[k])]
                cc = conj(c)
                for row in A:
                    row[r] = row[r] - cc * row[k]
                P[r] = [x - c * y for x, y in zip(P[r], P[k])]
        pivots.append(d)
    signs = [sign(d) for d in pivots]
    zeros = n - len(pivots)
    basis = P
    return pivots, signs, zeros, basis


def symmetric_signature(G: Sequence[Sequence[Any]]) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a rational symmetric matrix."""
    p, n, z, _ = symmetric_diagonalize(G)
    return p, n, z


def symmetric_diagonalize(G: Sequence[Sequence[Any]]):
    """Signature plus an orthogonal basis; returns (p, n, z, [(value, vector)])."""
    if not G:
        return 0, 0, 0, []
    A = [[Fraction(x) for x in row] for row in G]
    pivots, signs, zeros, basis = _congruence(A, lambda x: x, lambda x: (x > 0) - (x < 0))
    pairs = list(zip(pivots, basis[: len(pivots)]))
    return signs.count(1), signs.count(-1), zeros, pairs


def hermitian_diagonalize(H: Sequence[Sequence[Any]]):
    """Hermitian analogue over Q(zeta); returns (p, n, z, [(value, vector)]).

    Values are rational (Fraction); vectors have EisensteinRational entries.
    """
    if not H:
        return 0, 0, 0, []
    A = [[EisensteinRational.coerce(x) for x in row] for row in H]
    pivots, signs, zeros, basis = _congruence(
        A, lambda x: x.conj(), lambda x: (x.real() > 0) - (x.real() < 0)
    )
    for d in pivots:
        if d.num.b:
            raise ValueError("matrix is not Hermitian")  # diagonal must be real
    pairs = [(d.real(), vec) for d, vec in zip(pivots, basis[: len(pivots)])]
    return signs.count(1), signs.count(-1), zeros, pairs


def eis_clear_denominators(v: Sequence[EisensteinRational]) -> list[EisensteinInt]:
    d = 1
    for x in v:
        d = lcm(d, EisensteinRational.coerce(x).den)
    out = []
    for x in v:
        x = EisensteinRational.coerce(x)
        out.append(x.num * (d // x.den))
    return out


# lattice reduction ---------------------------------------------------------


def lll_gram(G: Sequence[Sequence[int]], delta: Fraction = Fraction(99, 100)) -> tuple[Matrix, Matrix]:
    """Exact LLL reduction of a positive definite integer Gram matrix.

    Returns (B, G') with B unimodular (rows = new basis in old coordinates)
    and G' = B G B^T.  Used only as a basis change before enumeration.
    """
    n = len(G)
    B = [[int(i == j) for j in range(n)] for i in range(n)]
    G = [list(map(int, row)) for row in G]
    if n <= 1:
        return B, G

    def gso():
        mu = [[Fraction(0)] * n for _ in range(n)]
        r = [[Fraction(0)] * n for _ in range(n)]
        bstar = [Fraction(0)] * n
        for i in range(n):
            for j in range(i):
                r[i][j] = G[i][j] - sum((mu[j][k] * r[i][k] for k in range(j)), Fraction(0))
                mu[i][j] = r[i][j] / bstar[j]
            bstar[i] = G[i][i] - sum((mu[i][k] * r[i][k] for k in range(i)), Fraction(0))
        return mu, bstar

    def swap(k):
        B[k], B[k - 1] = B[k - 1], B[k]
        G[k], G[k - 1] = G[k - 1], G[k]
        for row in G:
            row[k], row[k - 1] = row[k - 1], row[k]

    def reduce(k, j, q):
        # b_k -= q b_j
        B[k] = [x - q * y for x, y in zip(B[k], B[j])]
        gk, gj = G[k], G[j]
        gkk = gk[k] - 2 * q * gk[j] + q * q * gj[j]
        for t in range(n):
            G[t][k] = G[t][k] - q * G[t][j]
        G[k] = [G[t][k] for t in range(n)]
        G[k][k] = gkk

    mu, bstar = gso()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                reduce(k, j, q)
                mu, bstar = gso()
        if bstar[k] >= (delta - mu[k][k - 1] ** 2) * bstar[k - 1]:
            k += 1
        else:
            swap(k)
            mu, bstar = gso()
            k = max(k - 1, 1)
    return B, G
