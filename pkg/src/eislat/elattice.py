"""Hermitian lattices over the Eisenstein integers.

A lattice with an order-3 isometry T without fixed vectors is a free
Z[zeta]-module (zeta acts as T).  The integral form (a.b) and the Hermitian
form h determine each other:

    phi(a, b) = -(a.b) zeta + (a.Tb)        (skew-Hermitian)
    h(a, b)   = theta * phi(a, b),          theta = 1 + 2 zeta = sqrt(-3)

so h(a, a) = 3/2 (a.a) and every value of h lies in theta*Z[zeta].

Conventions: h is linear in the first argument, ``hgram[i][j] = h(b_i, b_j)``
and vectors are coordinate rows.  For a map g whose columns are the images of
the basis vectors, the Gram matrix of the images is ``g^T H conj(g)``.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from . import euclid
from .eisenstein import (
    ONE,
    THETA,
    ZERO,
    ZETA,
    EisensteinInt,
    EisensteinRational,
    eis_content,
    is_theta_multiple,
)
from .euclid import EE
from .linalg import hermitian_diagonalize, eis_clear_denominators, solve
from .zlattice import (
    LatticeError,
    NotPositiveDefinite,
    RationalSpan,
    ZLattice,
    isometry_definite,
)

EVector = tuple  # tuple of EisensteinInt
ZETA_BLOCK = ((0, -1), (1, -1))  # zeta acting on (x, y) ~ x + y zeta


def _eis(x) -> EisensteinInt:
    return EisensteinInt.coerce(x)


def eis_matrix(rows) -> list[list[EisensteinInt]]:
    return [[_eis(x) for x in row] for row in rows]


def conj_matrix(M) -> list[list[EisensteinInt]]:
    return [[x.conj() for x in row] for row in M]


def emat_mul(A, B) -> list[list[EisensteinInt]]:
    return euclid.matmul(A, B, zero=ZERO)


def emat_transpose(M) -> list[list[EisensteinInt]]:
    return [list(col) for col in zip(*M)] if M else []


def emat_hnf(M):
    """Hermite form over Z[zeta]: (H, U) with H = U*M."""
    return euclid.hnf(eis_matrix(M), EE)


def emat_snf(M):
    """Smith form over Z[zeta]: (D, U, V) with D = U*M*V."""
    return euclid.snf(eis_matrix(M), EE)


class InvariantViolation(LatticeError):
    pass


class DefiniteInput(LatticeError):
    pass


@dataclass(frozen=True)
class ELattice:
    hgram: tuple[tuple[EisensteinInt, ...], ...]

    def __post_init__(self):
        H = tuple(tuple(_eis(x) for x in row) for row in self.hgram)
        n = len(H)
        if any(len(row) != n for row in H):
            raise LatticeError("Hermitian Gram matrix must be square")
        for i in range(n):
            if H[i][i].b:
                raise LatticeError("diagonal entries must be rational integers")
            for j in range(i + 1, n):
                if H[j][i] != H[i][j].conj():
                    raise LatticeError("Gram matrix is not Hermitian")
        if not all(is_theta_multiple(x) for row in H for x in row):
            # real integers divisible by theta are divisible by 3, so this covers the diagonal
            raise InvariantViolation("Gram entries must lie in theta * Z[zeta]")
        object.__setattr__(self, "hgram", H)

    @classmethod
    def from_matrix(cls, rows) -> ELattice:
        return cls(tuple(tuple(_eis(x) for x in row) for row in rows))

    @property
    def rank(self) -> int:
        return len(self.hgram)

    def matrix(self) -> list[list[EisensteinInt]]:
        return [list(row) for row in self.hgram]

    def is_eisenstein(self) -> bool:
        """True when every entry lies in theta*Z[zeta] (so an integral lattice underlies it)."""
        return all(is_theta_multiple(x) for row in self.hgram for x in row)

    def inner(self, u: Sequence, v: Sequence) -> EisensteinInt:
        H = self.hgram
        n = self.rank
        s = ZERO
        for i in range(n):
            ui = u[i]
            if not ui:
                continue
            acc = ZERO
            Hi = H[i]
            for j in range(n):
                vj = v[j]
                if vj and Hi[j]:
                    acc = acc + Hi[j] * vj.conj()
            if acc:
                s = s + ui * acc
        return s

    def norm(self, v: Sequence) -> int:
        val = self.inner(v, v)
        assert val.b == 0
        return val.a

    def pairing_row(self, v: Sequence) -> list[EisensteinInt]:
        """The linear form x -> h(x, v) as coefficients: a_i = h(e_i, v)."""
        return [sum((Hij * vj.conj() for Hij, vj in zip(row, v) if Hij and vj), ZERO) for row in self.hgram]

    def to_json(self) -> dict:
        return {"rank": self.rank, "hgram": [[x.to_json() for x in row] for row in self.hgram]}

    @classmethod
    def from_json(cls, data: dict) -> ELattice:
        E = cls.from_matrix(data["hgram"])
        if "rank" in data and data["rank"] != E.rank:
            raise LatticeError("rank field disagrees with Gram size")
        return E


def gram_of(L: ELattice, vectors: Sequence[Sequence]) -> list[list[EisensteinInt]]:
    return [[L.inner(u, v) for v in vectors] for u in vectors]


def sub_lattice(L: ELattice, vectors: Sequence[Sequence]) -> ELattice:
    return ELattice.from_matrix(gram_of(L, vectors))


# mu_3 lattices -----------------------------------------------------------


@dataclass(frozen=True)
class Mu3ZLattice:
    base: ZLattice
    t: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "t", tuple(tuple(int(x) for x in row) for row in self.t))

    def validate(self) -> None:
        n = self.base.rank
        t = [list(r) for r in self.t]
        if len(t) != n or any(len(r) != n for r in t):
            raise InvariantViolation("t has the wrong shape")
        G = self.base.matrix()
        tt = [list(c) for c in zip(*t)]
        if _imul(_imul(tt, G), t) != G:
            raise InvariantViolation("t is not an isometry")
        t2 = _imul(t, t)
        s = [[int(i == j) + t[i][j] + t2[i][j] for j in range(n)] for i in range(n)]
        if any(any(row) for row in s):
            # t^3 = 1 without fixed vectors is equivalent to 1 + t + t^2 = 0
            raise InvariantViolation("1 + t + t^2 != 0: t has fixed vectors or is not of order 3")

    def apply_t(self, v: Sequence[int]) -> list[int]:
        return [sum(r[j] * v[j] for j in range(len(v))) for r in self.t]

    def to_json(self) -> dict:
        d = self.base.to_json()
        d["t"] = [list(r) for r in self.t]
        return d

    @classmethod
    def from_json(cls, data: dict) -> Mu3ZLattice:
        return cls(ZLattice.from_json(data), tuple(tuple(r) for r in data["t"]))


def _imul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def phi_form(M: Mu3ZLattice, a: Sequence[int], b: Sequence[int]) -> EisensteinInt:
    """Skew-Hermitian form -(a.b) zeta + (a.Tb)."""
    ab = M.base.inner(a, b)
    aTb = M.base.inner(a, M.apply_t(b))
    return EisensteinInt(aTb, -ab)


def h_form(M: Mu3ZLattice, a: Sequence[int], b: Sequence[int]) -> EisensteinInt:
    return THETA * phi_form(M, a, b)


def from_mu3(M: Mu3ZLattice) -> tuple[ELattice, list[list[int]]]:
    """Eisenstein lattice of a mu_3-lattice and the chosen Z[zeta]-basis (integer rows)."""
    M.validate()
    n = M.base.rank
    if n % 2:
        raise InvariantViolation("odd rank cannot carry a fixed-point-free order-3 action")
    m = n // 2
    span = RationalSpan(n)
    greedy: list[list[int]] = []
    for j in range(n):
        e = [int(i == j) for i in range(n)]
        if span.contains(e):
            continue
        greedy.append(e)
        span.add(e)
        span.add(M.apply_t(e))
        if span.dim == n:
            break
    # Z-basis (b1, Tb1, b2, Tb2, ...) of a finite-index sublattice, as columns
    cols = []
    for b in greedy:
        cols.append(b)
        cols.append(M.apply_t(b))
    S = [[cols[c][r] for c in range(n)] for r in range(n)]
    coord_rows = []
    den = 1
    raw = []
    for j in range(n):
        x = solve(S, [int(i == j) for i in range(n)])
        raw.append(x)
        for q in x:
            den = lcm(den, q.denominator)
    for x in raw:
        coord_rows.append([EisensteinInt(int(x[2 * i] * den), int(x[2 * i + 1] * den)) for i in range(m)])
    basis_coords = euclid.row_span_basis(coord_rows, EE)
    ebasis = []
    for row in basis_coords:
        v = [Fraction(0)] * n
        for i, c in enumerate(row):
            if c:
                b, tb = cols[2 * i], cols[2 * i + 1]
                for r in range(n):
                    v[r] += Fraction(c.a * b[r] + c.b * tb[r], den)
        if any(q.denominator != 1 for q in v):
            raise AssertionError("saturated basis is not integral")  # pragma: no cover
        ebasis.append([int(q) for q in v])
    H = [[h_form(M, a, b) for b in ebasis] for a in ebasis]
    return ELattice.from_matrix(H), ebasis


def underlying_mu3(E: ELattice) -> Mu3ZLattice:
    """Integral lattice on (b1, T b1, b2, T b2, ...) with T = multiplication by zeta."""
    if not E.is_eisenstein():
        raise LatticeError("Hermitian form is not theta-divisible; no integral lattice underlies it")
    m = E.rank
    n = 2 * m
    G = [[0] * n for _ in range(n)]
    for i in range(m):
        for j in range(m):
            h = E.hgram[i][j]
            ab = (2 * h.a - h.b) // 3  # (2/3) Re h
            aTb = (h.b - ab) // 2  # Im(h)/sqrt(3) - (a.b)/2
            Tab = -ab - aTb  # (Ta).b = a.T^2 b
            G[2 * i][2 * j] = ab
            G[2 * i][2 * j + 1] = aTb
            G[2 * i + 1][2 * j] = Tab
            G[2 * i + 1][2 * j + 1] = ab
    t = [[0] * n for _ in range(n)]
    for i in range(m):
        for r in range(2):
            for c in range(2):
                t[2 * i + r][2 * i + c] = ZETA_BLOCK[r][c]
    return Mu3ZLattice(ZLattice.from_matrix(G), tuple(tuple(r) for r in t))


def to_z_coords(v: Sequence) -> list[int]:
    out = []
    for c in v:
        c = _eis(c)
        out.extend((c.a, c.b))
    return out


def from_z_coords(x: Sequence[int]) -> tuple[EisensteinInt, ...]:
    return tuple(EisensteinInt(x[2 * i], x[2 * i + 1]) for i in range(len(x) // 2))


# standard lattices -------------------------------------------------------


def lambda_lattice(k: int) -> ELattice:
    """Rank-k lattice: h(r_i, r_i) = 3, h(r_i, r_{i+1}) = theta, 0 further out."""
    if k < 1:
        raise LatticeError("k must be at least 1")
    H = [[ZERO] * k for _ in range(k)]
    for i in range(k):
        H[i][i] = EisensteinInt(3)
        if i + 1 < k:
            H[i][i + 1] = THETA
            H[i + 1][i] = -THETA
    return ELattice.from_matrix(H)


def hyperbolic_e() -> ELattice:
    """U_E: two isotropic vectors with h(e, f) = theta."""
    return ELattice.from_matrix([[ZERO, THETA], [-THETA, ZERO]])


def e_direct_sum(*lattices: ELattice) -> ELattice:
    n = sum(L.rank for L in lattices)
    H = [[ZERO] * n for _ in range(n)]
    off = 0
    for L in lattices:
        for i, row in enumerate(L.hgram):
            H[off + i][off : off + L.rank] = row
        off += L.rank
    return ELattice.from_matrix(H)


def e_conjugate(L: ELattice) -> ELattice:
    return ELattice.from_matrix(conj_matrix(L.hgram))


def e_compose(op: str, L1: ELattice, L2: ELattice | None = None) -> ELattice:
    if op == "direct_sum":
        if L2 is None:
            raise TypeError("direct_sum needs two lattices")
        return e_direct_sum(L1, L2)
    if op == "conjugate":
        return e_conjugate(L1)
    raise ValueError(f"unknown composition {op!r}")


@dataclass(frozen=True)
class EInvariants:
    signature: tuple[int, int, int]
    positive_definite: bool
    negative_definite: bool
    det: EisensteinInt

    def to_json(self) -> dict:
        return {
            "signature": list(self.signature),
            "positive_definite": self.positive_definite,
            "negative_definite": self.negative_definite,
            "det": self.det.to_json(),
        }


def e_invariants(L: ELattice) -> EInvariants:
    p, n, z, _ = hermitian_diagonalize(L.hgram)
    d = euclid.det(L.matrix(), EE) if L.rank else ONE
    return EInvariants((p, n, z), p == L.rank, n == L.rank, d)


def is_isometry_e(g, L1: ELattice, L2: ELattice) -> bool:
    """Check g^T H2 conj(g) == H1 (columns of g are images of L1's basis)."""
    g = eis_matrix(g)
    lhs = emat_mul(emat_mul(emat_transpose(g), L2.matrix()), conj_matrix(g))
    return lhs == L1.matrix()


def e_isometry_definite(L1: ELattice, L2: ELattice):
    """A Z[zeta]-matrix g with g^T H2 conj(g) = H1, or None after exhaustive search."""
    if L1.rank != L2.rank:
        raise LatticeError("rank mismatch")
    for L in (L1, L2):
        inv = e_invariants(L)
        if not inv.positive_definite:
            raise NotPositiveDefinite("Hermitian lattice is not positive definite")
    if L1.rank == 0:
        return []
    M1 = underlying_mu3(L1)
    M2 = underlying_mu3(L2)
    f = isometry_definite(M1.base, M2.base, equivariance=(M1.t, M2.t))
    if f is None:
        return None
    m = L1.rank
    g = [[EisensteinInt(f[2 * i][2 * j], f[2 * i + 1][2 * j]) for j in range(m)] for i in range(m)]
    if not is_isometry_e(g, L1, L2):
        raise AssertionError("Eisenstein isometry re-check failed")  # pragma: no cover
    return g


# isotropic vectors -------------------------------------------------------


def elements_up_to(height: int) -> list[EisensteinInt]:
    """All x in Z[zeta] with N(x) <= height, ordered by (norm, a, b)."""
    r = int((4 * height / 3) ** 0.5) + 2
    els = [EisensteinInt(a, b) for a in range(-r, r + 1) for b in range(-r, r + 1)]
    els = [x for x in els if x.norm() <= height]
    els.sort(key=lambda x: (x.norm(), x.a, x.b))
    return els


def _bandwidth(H) -> int:
    n = len(H)
    w = 0
    for i in range(n):
        for j in range(i + 1, n):
            if H[i][j]:
                w = max(w, j - i)
    return w


class _NormSearch:
    """Depth-first search for vectors of prescribed norm in a coordinate box.

    Partial sums are pruned against exact sets of achievable tail values,
    computed by dynamic programming over the band structure of the Gram
    matrix (state = the last ``w`` coordinates, w = bandwidth).
    """

    MAX_STATES = 40000

    def __init__(self, L: ELattice, height: int, target: int):
        self.L = L
        self.n = L.rank
        self.target = target
        self.els = elements_up_to(height)
        self.H = L.hgram
        self.w = _bandwidth(self.H)
        n = self.n
        # diag[i][c] and cross[i][j] tables in integer form
        self.diag = [[self.H[i][i].a * c.norm() for c in self.els] for i in range(n)]
        idx = {x.key(): k for k, x in enumerate(self.els)}
        self.index = idx
        conjs = [c.conj() for c in self.els]
        self._cross_cache: dict[tuple[int, int], list[list[int]]] = {}
        self.use_states = self.w >= 1 and len(self.els) ** self.w <= self.MAX_STATES
        if self.w == 0:
            self.use_states = True
        for i in range(n):
            for j in range(max(0, i - self.w), i):
                Hji = self.H[j][i]
                if Hji:
                    # 2 Re(c_j H_ji conj(c_i))
                    tab = [[(cj * Hji * ci_bar).real2() for ci_bar in conjs] for cj in self.els]
                    self._cross_cache[(j, i)] = tab
        self._build_tails()

    def contribution(self, i: int, coords: Sequence[int]) -> int:
        """Contribution of coordinate i given indices of all coordinates <= i."""
        val = self.diag[i][coords[i]]
        for j in range(max(0, i - self.w), i):
            tab = self._cross_cache.get((j, i))
            if tab is not None:
                val += tab[coords[j]][coords[i]]
        return val

    def _build_tails(self):
        n, w = self.n, self.w
        E = len(self.els)
        if self.use_states:
            # tails[i][state] = set of sums of contributions of positions > i,
            # state = tuple of element indices at positions i-w+1 .. i
            tails: list[dict] = [dict() for _ in range(n)]
            if w == 0:
                for i in range(n - 1, -1, -1):
                    if i == n - 1:
                        tails[i][()] = {0}
                    else:
                        nxt = tails[i + 1][()]
                        tails[i][()] = {self.diag[i + 1][c] + t for c in range(E) for t in nxt}
                self.tails = tails
                return
            for i in range(n - 1, -1, -1):
                width = min(w, i + 1)
                for state in itertools.product(range(E), repeat=width):
                    if i == n - 1:
                        tails[i][state] = {0}
                        continue
                    acc = set()
                    for c in range(E):
                        coords = {i + 1: c}
                        for k, s in enumerate(state):
                            coords[i - width + 1 + k] = s
                        val = self.diag[i + 1][c]
                        for j in range(max(0, i + 1 - w), i + 1):
                            tab = self._cross_cache.get((j, i + 1))
                            if tab is not None:
                                val += tab[coords[j]][c]
                        nstate = (state + (c,))[-min(w, i + 2):]
                        for t in tails[i + 1][nstate]:
                            acc.add(val + t)
                    tails[i][state] = acc
            self.tails = tails
        else:
            # interval bounds only: extreme contributions per position
            lo = [0] * (n + 1)
            hi = [0] * (n + 1)
            for i in range(n - 1, -1, -1):
                dmin = min(self.diag[i])
                dmax = max(self.diag[i])
                cmin = cmax = 0
                for j in range(max(0, i - w), i):
                    tab = self._cross_cache.get((j, i))
                    if tab is not None:
                        cmin += min(min(r) for r in tab)
                        cmax += max(max(r) for r in tab)
                lo[i] = lo[i + 1] + dmin + cmin
                hi[i] = hi[i + 1] + dmax + cmax
            self.tail_lo, self.tail_hi = lo, hi

    def _feasible(self, i: int, coords: list[int], partial: int) -> bool:
        need = self.target - partial
        if self.use_states:
            width = min(self.w, i + 1)
            state = tuple(coords[i - width + 1 : i + 1]) if width else ()
            return need in self.tails[i][state]
        return self.tail_lo[i + 1] <= need <= self.tail_hi[i + 1]

    def run(self, first_choices: Iterable[int] | None = None, canonical: bool = True) -> list[tuple]:
        n = self.n
        E = len(self.els)
        canon = [c.is_canonical() for c in self.els]
        zero_idx = self.index[(0, 0)]
        coords = [0] * n
        out: list[tuple] = []

        def rec(i: int, partial: int, leading_zero: bool):
            choices = range(E) if (i > 0 or first_choices is None) else first_choices
            for c in choices:
                if canonical and leading_zero and c != zero_idx and not canon[c]:
                    continue
                coords[i] = c
                val = partial + self.contribution(i, coords)
                if not self._feasible(i, coords, val):
                    continue
                lz = leading_zero and c == zero_idx
                if i == n - 1:
                    if val == self.target and not lz:
                        out.append(tuple(self.els[k] for k in coords))
                else:
                    rec(i + 1, val, lz)
            coords[i] = 0

        if n:
            rec(0, 0, True)
        return out


def _search_chunk(args):
    hgram_json, height, target, first, primitive_only = args
    L = ELattice.from_json(hgram_json)
    found = _NormSearch(L, height, target).run(first_choices=first)
    if primitive_only:
        found = [v for v in found if eis_content(v) == ONE]
    return found


def vectors_of_norm(
    L: ELattice, target: int, height: int, primitive_only: bool = True, parallel: int = 1
) -> list[tuple]:
    """Vectors with h(v,v) == target and every coordinate of norm <= height.

    One representative per unit multiple (first nonzero coordinate canonical),
    sorted lexicographically by coordinates.
    """
    if height < 0:
        return []
    els = elements_up_to(height)
    if parallel > 1 and L.rank > 1:
        chunks = [[k] for k in range(len(els))]
        payload = [(L.to_json(), height, target, ch, primitive_only) for ch in chunks]
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            parts = list(pool.map(_search_chunk, payload))
        found = [v for part in parts for v in part]
    else:
        found = _search_chunk((L.to_json(), height, target, None, primitive_only))
    found.sort(key=lambda v: tuple(c.key() for c in v))
    return found


def isotropic_search(L: ELattice, height: int, parallel: int = 1) -> list[tuple]:
    """Primitive isotropic vectors with coordinate norms <= height, one per unit class."""
    inv = e_invariants(L)
    p, n, _ = inv.signature
    if p == 0 or n == 0:
        raise DefiniteInput("a definite lattice has no isotropic vectors")
    return vectors_of_norm(L, 0, height, primitive_only=True, parallel=parallel)


# complements and quotients -----------------------------------------------


def realify(v: Sequence) -> list[int]:
    return to_z_coords(v)


def eis_solve_rows(rows: Sequence[Sequence], v: Sequence):
    """Coefficients c in Z[zeta] with sum c_i rows[i] == v, or None."""
    m = len(rows)
    if m == 0:
        return [] if not any(v) else None
    cols = []
    for r in rows:
        cols.append(realify(r))
        cols.append(realify([ZETA * _eis(x) for x in r]))
    A = [[cols[c][k] for c in range(2 * m)] for k in range(len(cols[0]))]
    x = solve(A, realify(v))
    if x is None or any(q.denominator != 1 for q in x):
        return None
    return [EisensteinInt(int(x[2 * i]), int(x[2 * i + 1])) for i in range(m)]


@dataclass(frozen=True)
class ComplementQuotient:
    complement: ELattice
    complement_basis: tuple  # rows in L's coordinates
    quotient: ELattice | None
    quotient_basis: tuple | None  # rows in L's coordinates, representing v^perp / E v

    def to_json(self) -> dict:
        return {
            "complement": self.complement.to_json(),
            "complement_basis": [[x.to_json() for x in r] for r in self.complement_basis],
            "quotient": self.quotient.to_json() if self.quotient else None,
            "quotient_basis": (
                [[x.to_json() for x in r] for r in self.quotient_basis] if self.quotient_basis else None
            ),
        }


def _as_lattice_vector(L: ELattice, v) -> tuple:
    if len(v) != L.rank:
        raise LatticeError("vector-not-in-lattice: wrong length")
    out = []
    for x in v:
        if isinstance(x, EisensteinRational):
            if x.den != 1:
                raise LatticeError("vector-not-in-lattice: non-integral coordinate")
            x = x.num
        out.append(_eis(x))
    return tuple(out)


def orth_complement_e(L: ELattice, vectors: Sequence[Sequence]) -> list[list[EisensteinInt]]:
    """Basis rows of the saturated sublattice {x : h(x, v) = 0 for all v}."""
    n = L.rank
    if not vectors:
        return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    cols = [L.pairing_row(v) for v in vectors]
    A = [[cols[k][i] for k in range(len(vectors))] for i in range(n)]
    return euclid.left_kernel(A, EE)


def e_complement_quotient(L: ELattice, v: Sequence) -> ComplementQuotient:
    v = _as_lattice_vector(L, v)
    if not any(v):
        raise LatticeError("non-primitive vector: zero")
    if eis_content(v) != ONE:
        raise LatticeError("non-primitive vector")
    K = orth_complement_e(L, [v])
    comp = sub_lattice(L, K)
    if L.norm(v) != 0:
        return ComplementQuotient(comp, tuple(tuple(r) for r in K), None, None)
    c = eis_solve_rows(K, v)
    if c is None:
        raise AssertionError("isotropic vector not found in its own complement")  # pragma: no cover
    P = euclid.complete_to_basis(c, EE)
    Q = emat_mul(P[1:], K) if len(P) > 1 else []
    quot = sub_lattice(L, Q)
    return ComplementQuotient(comp, tuple(tuple(r) for r in K), quot, tuple(tuple(r) for r in Q))


def e_psd_on(L: ELattice, sub_basis: Sequence[Sequence]):
    """(psd, witness): witness is a lattice vector with h(w, w) < 0 when not PSD."""
    vecs = [_as_lattice_vector(L, v) for v in sub_basis]
    if not vecs:
        return True, None
    S = gram_of(L, vecs)
    _, neg, _, pairs = hermitian_diagonalize(S)
    if neg == 0:
        return True, None
    coeffs = next(vec for val, vec in pairs if val < 0)
    c = eis_clear_denominators(coeffs)
    w = [ZERO] * L.rank
    for ck, vk in zip(c, vecs):
        if ck:
            for i in range(L.rank):
                w[i] = w[i] + ck * vk[i]
    w = tuple(w)
    if L.norm(w) >= 0:
        raise AssertionError("negative witness failed its re-check")  # pragma: no cover
    return False, w
