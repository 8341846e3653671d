"""Cusps and the hyperplane family of the rank-11 lattice Lambda = Lambda_10 + Lambda_1.

Cusps are primitive isotropic vectors up to units; the invariant of a cusp v
is the definite lattice v^perp / E v.  Hyperplanes are orthogonal complements
of vectors r with h(r, r) = 3 whose complement contains a copy of Lambda_10.

Orbit reduction.  A triflection in a vector r of norm 3,

    s(x) = x + alpha * h(x, r) / 3 * r,      alpha in {zeta - 1, zeta^2 - 1},

is an integral isometry of any lattice whose h-values lie in theta*E.  Two
isotropic vectors joined by a word in triflections are in the same orbit of
the isometry group, so their invariants are isometric.  We descend each
vector by greedily lowering |h(v, w)|^2 for a fixed negative vector w, join
terminal vectors that are one step apart (union-find), and compute invariants
only for one representative per joined component.  The final bucketing by
isometry of invariants is done with the exhaustive definite isometry test.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .eisenstein import ONE, THETA, UNITS, ZERO, ZETA, EisensteinInt, eis_content
from .elattice import (
    DefiniteInput,
    ELattice,
    e_complement_quotient,
    e_direct_sum,
    e_invariants,
    e_isometry_definite,
    e_psd_on,
    elements_up_to,
    hyperbolic_e,
    isotropic_search,
    lambda_lattice,
    orth_complement_e,
    underlying_mu3,
    vectors_of_norm,
)
from .linalg import eis_clear_denominators, hermitian_diagonalize, rank
from .reports import INCONCLUSIVE, REFUTED, VERIFIED, WitnessReport, stopwatch
from .zlattice import short_vectors

LABEL_D4 = "D4^3"
LABEL_A5 = "A5^2"


def ejson(v) -> list:
    if v and isinstance(v[0], (list, tuple)):
        return [[EisensteinInt.coerce(x).to_json() for x in row] for row in v]
    return [EisensteinInt.coerce(x).to_json() for x in v]


def big_lambda() -> ELattice:
    return e_direct_sum(lambda_lattice(10), lambda_lattice(1))


def canonical_vector(v: Sequence) -> tuple:
    """Unit multiple of v whose first nonzero coordinate is a canonical associate."""
    first = next((c for c in v if c), None)
    if first is None:
        return tuple(v)
    u, _ = first.canonical()
    return tuple(u * c for c in v)


def vkey(v) -> tuple:
    return tuple(c.key() for c in v)


# numpy helpers on (a, b) integer pairs ------------------------------------


def _split(vectors) -> tuple[np.ndarray, np.ndarray]:
    a = np.array([[EisensteinInt.coerce(c).a for c in v] for v in vectors], dtype=np.int64)
    b = np.array([[EisensteinInt.coerce(c).b for c in v] for v in vectors], dtype=np.int64)
    return a, b


def _emul(a1, b1, a2, b2):
    return a1 * a2 - b1 * b2, a1 * b2 + b1 * a2 - b1 * b2


def pairing_table(L: ELattice, vectors, others) -> tuple[np.ndarray, np.ndarray]:
    """Matrix of h(v, r) for v in vectors (rows) and r in others (columns)."""
    P = [L.pairing_row(r) for r in others]  # P[k][i] = h(e_i, r_k)
    Pa = np.array([[x.a for x in row] for row in P], dtype=np.int64).T
    Pb = np.array([[x.b for x in row] for row in P], dtype=np.int64).T
    Va, Vb = _split(vectors)
    return Va @ Pa - Vb @ Pb, Va @ Pb + Vb @ Pa - Vb @ Pb


# triflections and orbit reduction ----------------------------------------

ALPHAS = (ZETA - ONE, ZETA * ZETA - ONE)


def triflection(L: ELattice, r: Sequence, alpha_index: int, x: Sequence) -> tuple:
    """x + alpha * h(x, r)/3 * r; an isometry when h(r, r) = 3 and h-values lie in theta*E."""
    c = L.inner(x, r)
    beta = (ALPHAS[alpha_index] * c).exact_div(3)
    return tuple(xi + beta * ri for xi, ri in zip(x, r))


def apply_word(L: ELattice, roots, word, x) -> tuple:
    for k, a in word:
        x = triflection(L, roots[k], a, x)
    return tuple(x)


def invert_word(word):
    return [(k, 1 - a) for k, a in reversed(word)]


def negative_vector(L: ELattice) -> tuple:
    _, neg, _, pairs = hermitian_diagonalize(L.hgram)
    if not neg:
        raise DefiniteInput("no negative vector")
    vec = next(v for val, v in pairs if val < 0)
    return tuple(eis_clear_denominators(vec))


def gram_blocks(L: ELattice) -> list[list[int]]:
    """Index sets of the orthogonal blocks of the Gram matrix.

    Multiplying the coordinates of one block by a unit is an isometry.
    """
    n = L.rank
    seen = [False] * n
    blocks = []
    for s in range(n):
        if seen[s]:
            continue
        stack, blk = [s], []
        seen[s] = True
        while stack:
            i = stack.pop()
            blk.append(i)
            for j in range(n):
                if not seen[j] and L.hgram[i][j]:
                    seen[j] = True
                    stack.append(j)
        blocks.append(sorted(blk))
    return blocks


class OrbitReducer:
    """Greedy triflection descent plus union-find of terminal vectors."""

    def __init__(self, L: ELattice, roots: Sequence[Sequence], w: Sequence):
        self.L = L
        self.roots = [tuple(r) for r in roots]
        self.w = tuple(w)
        n = L.rank
        P = [L.pairing_row(r) for r in self.roots]  # h(e_i, r_k)
        self.Pa = np.array([[x.a for x in row] for row in P], dtype=np.int64).T.reshape(n, len(self.roots))
        self.Pb = np.array([[x.b for x in row] for row in P], dtype=np.int64).T.reshape(n, len(self.roots))
        self.Ra, self.Rb = _split(self.roots) if self.roots else (np.zeros((0, n), np.int64),) * 2
        g = [L.inner(r, self.w) for r in self.roots]
        self.ga = np.array([x.a for x in g], dtype=np.int64)
        self.gb = np.array([x.b for x in g], dtype=np.int64)
        hw = L.pairing_row(self.w)
        self.hwa = np.array([x.a for x in hw], dtype=np.int64)
        self.hwb = np.array([x.b for x in hw], dtype=np.int64)
        self.alphas = [(a.a, a.b) for a in ALPHAS]
        self.blocks = gram_blocks(L)
        # the first block's scaling is absorbed by canonical_vector
        self.scalings = list(itertools.product((ONE,), *([UNITS] * (len(self.blocks) - 1))))

    def _moves(self, xa, xb):
        """For each alpha: (new h(x,w) parts, beta parts, nonzero mask) over all roots."""
        sa, sb = _emul(xa, xb, self.hwa, self.hwb)
        s = (int(sa.sum()), int(sb.sum()))
        ca = xa @ self.Pa - xb @ self.Pb
        cb = xa @ self.Pb + xb @ self.Pa - xb @ self.Pb
        nz = (ca != 0) | (cb != 0)
        out = []
        for al in self.alphas:
            ba, bb = _emul(al[0], al[1], ca, cb)
            ba //= 3
            bb //= 3
            ya, yb = _emul(ba, bb, self.ga, self.gb)
            ya = ya + s[0]
            yb = yb + s[1]
            out.append((ya * ya - ya * yb + yb * yb, ba, bb))
        return s, nz, out

    def height(self, xa, xb) -> int:
        sa, sb = _emul(xa, xb, self.hwa, self.hwb)
        a, b = int(sa.sum()), int(sb.sum())
        return a * a - a * b + b * b

    def descend(self, v, max_steps: int = 10000):
        xa = np.array([c.a for c in v], dtype=np.int64)
        xb = np.array([c.b for c in v], dtype=np.int64)
        word = []
        h = self.height(xa, xb)
        for _ in range(max_steps):
            if not self.roots:
                break
            _, nz, outs = self._moves(xa, xb)
            best = None
            for ai, (hy, ba, bb) in enumerate(outs):
                k = int(np.argmin(np.where(nz, hy, np.iinfo(np.int64).max)))
                if nz[k] and hy[k] < h and (best is None or hy[k] < best[0]):
                    best = (int(hy[k]), k, ai, int(ba[k]), int(bb[k]))
            if best is None:
                break
            h, k, ai, ba, bb = best
            da, db = _emul(ba, bb, self.Ra[k], self.Rb[k])
            xa = xa + da
            xb = xb + db
            word.append((k, ai))
        v = tuple(EisensteinInt(int(a), int(b)) for a, b in zip(xa, xb))
        return v, word

    def descend_many(self, vectors, chunk: int = 4096, max_steps: int = 10000) -> list[tuple]:
        """Terminal vectors of the greedy descent, computed for many vectors at once.

        Each step applies, row by row, the same move ``descend`` would pick.
        Pairings are computed with a float matrix product; all entries are
        small integers, so the product is exact and is rounded back.
        """
        if not self.roots:
            return [tuple(v) for v in vectors]
        M = np.block([[self.Pa, self.Pb], [-self.Pb, self.Pa - self.Pb]]).astype(np.float64)
        k_roots = len(self.roots)
        big = np.iinfo(np.int64).max
        out: list[tuple] = []
        for start in range(0, len(vectors), chunk):
            Xa, Xb = _split(vectors[start : start + chunk])
            active = np.arange(len(Xa))
            for _ in range(max_steps):
                if not active.size:
                    break
                xa, xb = Xa[active], Xb[active]
                sa, sb = _emul(xa, xb, self.hwa, self.hwb)
                sa, sb = sa.sum(axis=1), sb.sum(axis=1)
                h = sa * sa - sa * sb + sb * sb
                C = np.rint(np.hstack([xa, xb]).astype(np.float64) @ M).astype(np.int64)
                ca, cb = C[:, :k_roots], C[:, k_roots:]
                nz = (ca != 0) | (cb != 0)
                rows = np.arange(len(h))
                best_h = h.copy()
                best = np.full((len(h), 3), -1, dtype=np.int64)  # root, beta a, beta b
                for al in self.alphas:
                    ba, bb = _emul(al[0], al[1], ca, cb)
                    ba //= 3
                    bb //= 3
                    ya, yb = _emul(ba, bb, self.ga, self.gb)
                    ya = ya + sa[:, None]
                    yb = yb + sb[:, None]
                    hy = np.where(nz, ya * ya - ya * yb + yb * yb, big)
                    k = np.argmin(hy, axis=1)
                    hk = hy[rows, k]
                    better = hk < best_h
                    best_h = np.where(better, hk, best_h)
                    best[better] = np.stack([k[better], ba[rows, k][better], bb[rows, k][better]], axis=1)
                moved = best[:, 0] >= 0
                idx = active[moved]
                k, ba, bb = best[moved, 0], best[moved, 1:2], best[moved, 2:3]
                da, db = _emul(ba, bb, self.Ra[k], self.Rb[k])
                Xa[idx] += da
                Xb[idx] += db
                active = idx
            out.extend(
                tuple(EisensteinInt(int(a), int(b)) for a, b in zip(ra, rb)) for ra, rb in zip(Xa, Xb)
            )
        return out

    def canon(self, v) -> tuple:
        """Normal form of v under unit scalings of the orthogonal blocks of the Gram matrix."""
        best = None
        for scal in self.scalings:
            w = list(v)
            for blk, u in zip(self.blocks, scal):
                for i in blk:
                    w[i] = u * w[i]
            w = canonical_vector(w)
            if best is None or vkey(w) < vkey(best):
                best = w
        return best

    def uphill_neighbours(self, v, count: int):
        """The ``count`` lowest-height single triflection images of v (nontrivial moves only)."""
        xa = np.array([c.a for c in v], dtype=np.int64)
        xb = np.array([c.b for c in v], dtype=np.int64)
        _, nz, outs = self._moves(xa, xb)
        cand = []
        for ai, (hy, ba, bb) in enumerate(outs):
            for k in np.flatnonzero(nz):
                cand.append((int(hy[k]), int(k), ai, int(ba[k]), int(bb[k])))
        cand.sort()
        res = []
        for _, k, ai, ba, bb in cand[:count]:
            da, db = _emul(ba, bb, self.Ra[k], self.Rb[k])
            res.append((tuple(EisensteinInt(int(a), int(b)) for a, b in zip(xa + da, xb + db)), (k, ai)))
        return res

    def components(self, vectors, uphill: int = 10):
        """Partition ``vectors`` into orbit components.

        Returns (component id per vector, terminal per vector, number of terminals).
        """
        term_of = []
        index: dict[tuple, int] = {}
        terms: list[tuple] = []
        for t in self.descend_many(list(vectors)):
            t = self.canon(t)
            if t not in index:
                index[t] = len(terms)
                terms.append(t)
            term_of.append(index[t])
        parent = list(range(len(terms)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        n_original = len(terms)
        for i in range(n_original):
            ups = [y for y, _ in self.uphill_neighbours(terms[i], uphill)]
            for t in self.descend_many(ups):
                t = self.canon(t)
                if t not in index:
                    index[t] = len(terms)
                    terms.append(t)
                    parent.append(len(parent))
                a, b = find(i), find(index[t])
                if a != b:
                    parent[max(a, b)] = min(a, b)
        comp = [find(ti) for ti in term_of]
        return comp, term_of, n_original


# cusp classification ------------------------------------------------------


@dataclass
class CuspRecord:
    vector: tuple
    invariant: ELattice
    class_label: str = "unassigned"
    quotient_basis: tuple | None = None

    def recheck(self, L: ELattice) -> bool:
        if L.norm(self.vector) != 0:
            return False
        inv = e_invariants(self.invariant)
        return inv.positive_definite and self.invariant.rank == L.rank - 2

    def to_json(self) -> dict:
        return {
            "vector": ejson(self.vector),
            "class_label": self.class_label,
            "invariant_hgram": ejson(self.invariant.matrix()),
            "quotient_basis": ejson(self.quotient_basis) if self.quotient_basis else None,
        }


@dataclass
class CuspClass:
    label: str
    invariant: ELattice
    records: list[CuspRecord]
    members: list[tuple] = field(default_factory=list)
    roots: int | None = None
    incidence_label: str | None = None

    @property
    def representatives(self) -> list[tuple]:
        return [r.vector for r in self.records]

    def to_json(self, members: bool = False) -> dict:
        out = {
            "label": self.label,
            "invariant_hgram": ejson(self.invariant.matrix()),
            "representatives": [ejson(v) for v in self.representatives],
            "member_count": len(self.members),
            "roots": self.roots,
            "incidence_label": self.incidence_label,
        }
        if members:
            out["members"] = [ejson(v) for v in self.members]
        return out

    @classmethod
    def from_json(cls, data: dict, L: ELattice | None = None) -> CuspClass:
        """Rebuild a class; with ``L`` the quotient of every representative is recomputed."""
        inv = ELattice.from_matrix(data["invariant_hgram"])
        reps = [tuple(EisensteinInt.coerce(c) for c in v) for v in data["representatives"]]
        records = []
        for v in reps:
            if L is not None:
                cq = e_complement_quotient(L, v)
                records.append(CuspRecord(v, cq.quotient, data["label"], cq.quotient_basis))
            else:
                records.append(CuspRecord(v, inv, data["label"]))
        members = [tuple(EisensteinInt.coerce(c) for c in v) for v in data.get("members", [])] or list(reps)
        return cls(data["label"], inv, records, members, data.get("roots"), data.get("incidence_label"))


def classes_to_json(classes: Sequence[CuspClass], members: bool = False) -> dict:
    return {"classes": [c.to_json(members) for c in classes]}


def classes_from_json(data: dict, L: ELattice | None = None) -> list[CuspClass]:
    return [CuspClass.from_json(c, L) for c in data["classes"]]


def hyperplanes_to_json(records: Sequence[HyperplaneRecord]) -> dict:
    return {"records": [r.to_json() for r in records]}


def hyperplanes_from_json(data: dict) -> list[HyperplaneRecord]:
    return [HyperplaneRecord.from_json(r) for r in data["records"]]


def root_count(E: ELattice) -> int:
    """Number of vectors with h(v, v) = 3 (all unit multiples counted)."""
    M = underlying_mu3(E).base
    return 2 * len(short_vectors(M, 2))


def norm3_unit_roots(L: ELattice) -> list[tuple]:
    if not L.is_eisenstein():
        return []
    return vectors_of_norm(L, 3, 1, primitive_only=True)


def classify_cusps(
    height: int,
    lattice: ELattice | None = None,
    parallel: int = 1,
    uphill: int = 10,
):
    """Bucket the primitive isotropic vectors within ``height`` by their invariants.

    Returns (classes, report).  Status: verified for exactly two buckets with
    pairwise non-isometric invariants, inconclusive for fewer, refuted for more.
    """
    L = lattice if lattice is not None else big_lambda()
    bound = {"height": height, "rank": L.rank}
    with stopwatch() as sw:
        try:
            vectors = isotropic_search(L, height, parallel=parallel) if height >= 1 else []
        except DefiniteInput:
            bound["definite"] = True
            vectors = []
        bound["isotropic_vectors"] = len(vectors)
        if not vectors:
            return [], WitnessReport("cusps", INCONCLUSIVE, {}, bound, sw["ms"])
        roots = norm3_unit_roots(L)
        if roots:
            reducer = OrbitReducer(L, roots, negative_vector(L))
            comp, _, n_terms = reducer.components(vectors, uphill=uphill)
        else:
            comp, n_terms = list(range(len(vectors))), len(vectors)
        bound.update({"triflection_roots": len(roots), "terminals": n_terms, "uphill": uphill})
        members: dict[int, list[int]] = {}
        for i, c in enumerate(comp):
            members.setdefault(c, []).append(i)
        # one representative per component: the lexicographically first member
        comp_ids = sorted(members, key=lambda c: members[c][0])
        buckets: list[dict] = []
        comparisons = []
        descents: list[dict] = []
        for c in comp_ids:
            v = vectors[members[c][0]]
            cq = e_complement_quotient(L, v)
            Q = cq.quotient
            rec = CuspRecord(v, Q, quotient_basis=cq.quotient_basis)
            if roots:
                term, word = reducer.descend(v)
                descents.append(
                    {"vector": ejson(v), "terminal": ejson(term), "word": [[ejson(roots[k]), a] for k, a in word]}
                )
            if not rec.recheck(L):
                return [], WitnessReport(
                    "cusps", REFUTED, {"bad_invariant": rec.to_json()}, bound, sw["ms"]
                )
            placed = False
            for bi, b in enumerate(buckets):
                g = e_isometry_definite(Q, b["invariant"])
                comparisons.append({"component_vector": ejson(v), "bucket": bi, "isometric": g is not None})
                if g is not None:
                    b["records"].append(rec)
                    b["isometries"].append(ejson(g))
                    b["members"].extend(members[c])
                    placed = True
                    break
            if not placed:
                buckets.append(
                    {"invariant": Q, "records": [rec], "isometries": [None], "members": list(members[c])}
                )
        # every pair of buckets was compared when the later one was opened
        cross = []
        for i in range(len(buckets)):
            for j in range(i + 1, len(buckets)):
                g = e_isometry_definite(buckets[j]["invariant"], buckets[i]["invariant"])
                cross.append({"classes": [i, j], "isometric": g is not None})
        classes = []
        for bi, b in enumerate(buckets):
            label = f"class-{chr(ord('A') + bi)}" if bi < 26 else f"class-{bi}"
            for r in b["records"]:
                r.class_label = label
            mem = sorted(b["members"])
            classes.append(
                CuspClass(label, b["invariant"], b["records"], [vectors[i] for i in mem], root_count(b["invariant"]))
            )
        wit = {
            "classes": [
                dict(
                    c.to_json(),
                    components=[r.to_json() for r in c.records],
                    isometries_to_invariant=b["isometries"],
                )
                for c, b in zip(classes, buckets)
            ],
            "cross_class_isometry": cross,
            "components": len(comp_ids),
            "bucket_comparisons": comparisons,
            "representative_descents": descents,
        }
        if len(classes) == 2 and not any(x["isometric"] for x in cross):
            status = VERIFIED
        elif len(classes) < 2:
            status = INCONCLUSIVE
        else:
            status = REFUTED
    return classes, WitnessReport("cusps", status, wit, bound, sw["ms"])


# hyperplanes ----------------------------------------------------------------


@dataclass
class HyperplaneRecord:
    normal: tuple
    sublattice_basis: tuple
    method: str = ""

    def recheck(self, L: ELattice) -> bool:
        if L.norm(self.normal) != 3:
            return False
        if any(L.inner(b, self.normal) for b in self.sublattice_basis):
            return False
        G = [[L.inner(a, b) for b in self.sublattice_basis] for a in self.sublattice_basis]
        return G == lambda_lattice(10).matrix()

    def to_json(self) -> dict:
        return {"normal": ejson(self.normal), "basis": [ejson(b) for b in self.sublattice_basis], "method": self.method}

    @classmethod
    def from_json(cls, data: dict) -> HyperplaneRecord:
        n = tuple(EisensteinInt.coerce(c) for c in data["normal"])
        basis = tuple(tuple(EisensteinInt.coerce(c) for c in b) for b in data["basis"])
        return cls(n, basis, data.get("method", ""))


def _unit(i: int, n: int) -> tuple:
    return tuple(ONE if j == i else ZERO for j in range(n))


def enumerate_normals(height: int) -> list[tuple]:
    """All norm-3 vectors r of Lambda within ``height`` with h(r, Lambda) in 3E, up to units.

    A Lambda_10 inside r^perp is unimodular on the integral side, so it splits
    off and r^perp = Lambda_10; then h(r, x) lies in 3E for every x.  Since the
    dual of Lambda_10 is theta^-1 Lambda_10, such r are exactly (theta*y, c) with
    y in Lambda_10 and h(y, y) = 1 - N(c).
    """
    L10 = lambda_lattice(10)
    n = 11
    found = {canonical_vector(_unit(10, n))}
    hy = height // 3
    if hy >= 1:
        for c in elements_up_to(height):
            nc = c.norm()
            if nc % 3 != 1 or not c.is_canonical():
                continue
            for y in vectors_of_norm(L10, 1 - nc, hy, primitive_only=False):
                for u in UNITS:
                    r = tuple(THETA * u * x for x in y) + (c,)
                    if eis_content(r) == ONE:
                        found.add(canonical_vector(r))
    return sorted(found, key=vkey)


def eichler_map(L: ELattice, y: Sequence, r0: Sequence, mu: EisensteinInt = -ZETA):
    """Isometry x -> x + h(x,y) k r0 - h(x, k r0) y - mu h(x,y) y with k = theta/3.

    Requires y isotropic, h(y, r0) = 0, h(r0, r0) = 3 and h(x, r0) in 3E for all x.
    It sends r0 to r0 + theta*y.  Returns the images of the basis vectors.
    """
    n = L.rank
    images = []
    for i in range(n):
        x = _unit(i, n)
        hxy = L.inner(x, y)
        hxr = L.inner(x, r0)
        c1 = (hxy * THETA).exact_div(3)
        c2 = (hxr * (-THETA)).exact_div(3)
        images.append(tuple(x[j] + c1 * r0[j] - c2 * y[j] - mu * hxy * y[j] for j in range(n)))
    return images


def _apply_images(images, v) -> tuple:
    n = len(images)
    out = [ZERO] * n
    for i, c in enumerate(v):
        if c:
            for j in range(n):
                out[j] = out[j] + c * images[i][j]
    return tuple(out)


def _chain_search(L: ELattice, r, pool, budget: int):
    """Backtracking for a Lambda_10 frame among ``pool`` (norm-3 vectors orthogonal to r)."""
    target = lambda_lattice(10).matrix()
    cands = [tuple(u * c for c in v) for v in pool for u in UNITS]
    chosen: list[tuple] = []
    nodes = [0]

    def rec(i):
        if i == 10:
            return True
        for v in (pool if i == 0 else cands):
            nodes[0] += 1
            if nodes[0] > budget:
                return False
            if all(L.inner(v, chosen[j]) == target[i][j] for j in range(i)):
                chosen.append(v)
                if rec(i + 1):
                    return True
                chosen.pop()
        return False

    return tuple(chosen) if rec(0) else None


def confirm_normal(L: ELattice, r, pool=None, budget: int = 20000):
    n = L.rank
    r = tuple(r)
    basis = [_unit(i, n) for i in range(10)]
    if all(not c for c in r[:10]) and r[10].is_unit():
        return HyperplaneRecord(r, tuple(basis), "tautological")
    c = r[10]
    if c.is_unit() and all(THETA.divides(x) for x in r[:10]):
        cinv = c.conj()  # units: inverse = conjugate
        y = tuple((x * cinv).exact_div(THETA) for x in r[:10]) + (ZERO,)
        images = eichler_map(L, y, _unit(10, n))
        rec = HyperplaneRecord(r, tuple(_apply_images(images, b) for b in basis), "eichler")
        if rec.recheck(L):
            return rec
    if pool:
        orth = [v for v in pool if not L.inner(v, r)]
        frame = _chain_search(L, r, orth, budget)
        if frame is not None:
            return HyperplaneRecord(r, frame, "backtracking")
    return None


def find_hyperplanes(
    height: int,
    max_count: int,
    prefer: Sequence[Sequence] | None = None,
    per_preferred: int = 2,
    budget: int = 20000,
):
    """Confirmed hyperplane records, up to ``max_count``.

    Candidate normals come in lexicographic order; normals orthogonal to the
    ``prefer`` vectors (up to ``per_preferred`` each) are tried first.
    Returns (records, report).
    """
    L = big_lambda()
    bound = {"height": height, "max_count": max_count, "budget": budget}
    with stopwatch() as sw:
        normals = enumerate_normals(height) if height >= 1 else []
        bound["candidate_normals"] = len(normals)
        order: list[tuple] = []
        seen = set()
        if prefer and normals:
            Ta, Tb = pairing_table(L, [tuple(v) for v in prefer], normals)
            for i in range(len(prefer)):
                hits = np.flatnonzero((Ta[i] == 0) & (Tb[i] == 0))
                for k in hits[: per_preferred + 1]:
                    r = normals[int(k)]
                    if r not in seen:
                        seen.add(r)
                        order.append(r)
        order.extend(r for r in normals if r not in seen)
        pool = norm3_unit_roots(L) if budget else []
        records: list[HyperplaneRecord] = []
        unconfirmed = 0
        for r in order:
            if len(records) >= max_count:
                break
            rec = confirm_normal(L, r, pool, budget)
            if rec is None:
                unconfirmed += 1
                continue
            records.append(rec)
        bound["unconfirmed_tried"] = unconfirmed
        ok = all(rec.recheck(L) for rec in records)
        wit = {"records": [rec.to_json() for rec in records]}
        if not ok:
            status = REFUTED
        elif len(records) >= 2:
            status = VERIFIED
        else:
            status = INCONCLUSIVE
    return records, WitnessReport("hyperplanes", status, wit, bound, sw["ms"])


# incidence and disjointness --------------------------------------------------


def joint_kernel_dimension(L: ELattice, normals: Sequence[Sequence]) -> int:
    """Complex dimension of {x : h(x, r) = 0 for all r}, computed over Q on 2n coordinates."""
    n = L.rank
    if not normals:
        return n
    rows = []
    for r in normals:
        p = L.pairing_row(r)  # h(x, r) = sum x_i p_i ; x_i = u_i + v_i zeta
        re, im = [], []
        for c in p:
            # (u + v zeta)(a + b zeta) = ua - vb + (ub + va - vb) zeta
            re.extend([c.a, -c.b])
            im.extend([c.b, c.a - c.b])
        rows.append(re)
        rows.append(im)
    rk = rank(rows)
    return (2 * n - rk) // 2


def label_classes(classes: Sequence[CuspClass], hyperplanes: Sequence[HyperplaneRecord], L: ELattice | None = None):
    """Label by incidence; returns (labels by index or None, incidence counts per class)."""
    L = L or big_lambda()
    normals = [h.normal for h in hyperplanes]
    counts = []
    for c in classes:
        vecs = c.members or c.representatives
        Ta, Tb = pairing_table(L, vecs, normals)
        counts.append(int(np.count_nonzero((Ta == 0) & (Tb == 0))))
    if len(classes) != 2:
        return None, counts
    if counts[0] == 0 and counts[1] > 0:
        return [LABEL_D4, LABEL_A5], counts
    if counts[1] == 0 and counts[0] > 0:
        return [LABEL_A5, LABEL_D4], counts
    return None, counts


class UnlabeledClasses(ValueError):
    pass


def check_incidence(classes: Sequence[CuspClass], hyperplanes: Sequence[HyperplaneRecord]) -> WitnessReport:
    L = big_lambda()
    bound = {"classes": len(classes), "hyperplanes": len(hyperplanes)}
    with stopwatch() as sw:
        if not classes or not hyperplanes:
            raise ValueError("check_incidence needs cusp classes and hyperplanes")
        if len(classes) != 2:
            raise UnlabeledClasses("exactly two cusp classes are needed for labeling")
        labels, counts = label_classes(classes, hyperplanes, L)
        wit: dict = {"incidence_counts": counts}
        if labels is None:
            status = REFUTED if all(counts) else INCONCLUSIVE
            wit["labeling"] = "failed: " + ("both classes meet hyperplanes" if all(counts) else "no incidences")
            return WitnessReport("incidence", status, wit, bound, sw["ms"])
        for c, lab in zip(classes, labels):
            c.incidence_label = lab
        wit["labels"] = {c.label: lab for c, lab in zip(classes, labels)}
        d4 = classes[labels.index(LABEL_D4)]
        a5 = classes[labels.index(LABEL_A5)]
        normals = [h.normal for h in hyperplanes]
        # no D4^3 cusp lies on a found hyperplane
        vecs = d4.members or d4.representatives
        Ta, Tb = pairing_table(L, vecs, normals)
        bad = np.argwhere((Ta == 0) & (Tb == 0))
        ok_off = bad.size == 0
        wit["d4_off_hyperplanes"] = {"tested_cusps": len(vecs), "tested_hyperplanes": len(normals), "ok": ok_off}
        if not ok_off:
            i, k = (int(x) for x in bad[0])
            wit["d4_off_hyperplanes"]["counterexample"] = {"cusp": ejson(vecs[i]), "normal": ejson(normals[k])}
        # the hyperplanes through an A5^2 cusp cut out codimension 2
        per_rep = []
        Ta, Tb = pairing_table(L, a5.representatives, normals)
        for i, v in enumerate(a5.representatives):
            inc = [normals[int(k)] for k in np.flatnonzero((Ta[i] == 0) & (Tb[i] == 0))]
            dim = joint_kernel_dimension(L, inc)
            per_rep.append({"cusp": ejson(v), "incident": len(inc), "kernel_dimension": dim})
        tested = [p for p in per_rep if p["incident"] >= 2]
        fails = [p for p in tested if p["kernel_dimension"] != L.rank - 2]
        wit["a5_codimension"] = {"per_representative": per_rep}
        if not ok_off or fails:
            status = REFUTED
        elif len(tested) < len(per_rep) or not tested:
            status = INCONCLUSIVE
        else:
            status = VERIFIED
    return WitnessReport("incidence", status, wit, bound, sw["ms"])


def check_disjointness(hyperplanes: Sequence[HyperplaneRecord], max_pairs: int) -> WitnessReport:
    if len(hyperplanes) < 2:
        raise ValueError("fewer than two hyperplane records")
    L = big_lambda()
    bound = {"max_pairs": max_pairs, "hyperplanes": len(hyperplanes)}
    with stopwatch() as sw:
        pairs = []
        status = VERIFIED
        count = 0
        for i in range(len(hyperplanes)):
            for j in range(i + 1, len(hyperplanes)):
                if count >= max_pairs:
                    break
                r1, r2 = hyperplanes[i].normal, hyperplanes[j].normal
                if canonical_vector(r1) == canonical_vector(r2):
                    continue  # identical hyperplanes are not a pair
                count += 1
                K = orth_complement_e(L, [r1, r2])
                psd, w = e_psd_on(L, K)
                entry = {"pair": [i, j], "pairing": L.inner(r1, r2).to_json(), "psd": psd}
                if not psd:
                    entry["negative_witness"] = ejson(w)
                    status = REFUTED
                pairs.append(entry)
        # control: a hyperplane against itself meets the negative cone
        K = orth_complement_e(L, [hyperplanes[0].normal])
        psd, w = e_psd_on(L, K)
        control = {"psd": psd, "negative_witness": ejson(w) if w else None, "norm": L.norm(w) if w else None}
        if psd:
            status = REFUTED  # the control must fail
        if not pairs and status == VERIFIED:
            status = INCONCLUSIVE
        bound["pairs_tested"] = count
    return WitnessReport("disjointness", status, {"pairs": pairs, "self_pair_control": control}, bound, sw["ms"])


def toy_lattice() -> ELattice:
    """U_E + Lambda_1."""
    return e_direct_sum(hyperbolic_e(), lambda_lattice(1))
