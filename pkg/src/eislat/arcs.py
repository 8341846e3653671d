"""Signed intersection numbers of piecewise linear arcs in the plane.

Coordinates live in Q(sqrt 3), which contains cos and sin of every multiple
of 30 degrees, so rotations by 6th and 12th roots of unity stay exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class QS3:
    """a + b*sqrt(3) with rational a, b."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    @staticmethod
    def of(x) -> QS3:
        if isinstance(x, QS3):
            return x
        return QS3(Fraction(x), Fraction(0))

    def __add__(self, o):
        o = QS3.of(o)
        return QS3(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QS3(-self.a, -self.b)

    def __sub__(self, o):
        return self + (-QS3.of(o))

    def __rsub__(self, o):
        return QS3.of(o) - self

    def __mul__(self, o):
        o = QS3.of(o)
        return QS3(self.a * o.a + 3 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def inverse(self) -> QS3:
        d = self.a * self.a - 3 * self.b * self.b
        if d == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 3)")
        return QS3(self.a / d, -self.b / d)

    def __truediv__(self, o):
        return self * QS3.of(o).inverse()

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with 3 b^2
        return sa if self.a * self.a > 3 * self.b * self.b else sb

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __lt__(self, o):
        return (self - o).sign() < 0

    def __le__(self, o):
        return (self - o).sign() <= 0

    def __repr__(self):
        return f"({self.a} + {self.b}*sqrt3)"


SQRT3 = QS3(Fraction(0), Fraction(1))
HALF = Fraction(1, 2)

Point = tuple  # (QS3, QS3)


def pt(x, y) -> Point:
    return (QS3.of(x), QS3.of(y))


# unit complex numbers at multiples of 30 degrees
ONE = pt(1, 0)
ZETA3 = (QS3(-HALF), QS3(Fraction(0), HALF))  # exp(2 pi i / 3)
ZETA6 = (QS3(HALF), QS3(Fraction(0), HALF))  # exp(pi i / 3) = 1/2 + sqrt(-3)/2
ZETA12 = (QS3(Fraction(0), HALF), QS3(HALF))  # exp(pi i / 6)


def cmul(z: Point, w: Point) -> Point:
    return (z[0] * w[0] - z[1] * w[1], z[0] * w[1] + z[1] * w[0])


def cpow(z: Point, k: int) -> Point:
    out = ONE
    for _ in range(k % 12 if k >= 0 else k):
        out = cmul(out, z)
    return out


def cross(u: Point, v: Point) -> QS3:
    return u[0] * v[1] - u[1] * v[0]


@dataclass(frozen=True)
class Piece:
    """The oriented straight piece t -> base + t*direction, t in [lo, hi]; None = infinite."""

    base: Point
    direction: Point
    lo: Fraction | None
    hi: Fraction | None

    def at(self, t) -> Point:
        return (self.base[0] + self.direction[0] * t, self.base[1] + self.direction[1] * t)


@dataclass(frozen=True)
class PlanarArc:
    segments: tuple[Piece, ...]

    def __post_init__(self):
        for p, q in zip(self.segments, self.segments[1:]):
            if p.hi is None or q.lo is None or p.at(p.hi) != q.at(q.lo):
                raise ValueError("consecutive segments must share endpoints")

    def rotate(self, w: Point) -> PlanarArc:
        return PlanarArc(tuple(Piece(cmul(w, s.base), cmul(w, s.direction), s.lo, s.hi) for s in self.segments))

    def translate(self, v: Point) -> PlanarArc:
        return PlanarArc(
            tuple(Piece((s.base[0] + v[0], s.base[1] + v[1]), s.direction, s.lo, s.hi) for s in self.segments)
        )

    def reversed(self) -> PlanarArc:
        segs = []
        for s in reversed(self.segments):
            d = (-s.direction[0], -s.direction[1])
            lo = -s.hi if s.hi is not None else None
            hi = -s.lo if s.lo is not None else None
            segs.append(Piece(s.base, d, lo, hi))
        return PlanarArc(tuple(segs))


def corner_arc(d_in: Point, d_out: Point) -> PlanarArc:
    """Arc coming in from infinity along the ray R>=0 * d_in, leaving along R>=0 * d_out."""
    origin = pt(0, 0)
    neg = (-d_in[0], -d_in[1])
    return PlanarArc((Piece(origin, neg, None, Fraction(0)), Piece(origin, d_out, Fraction(0), None)))


class NonGeneric(ValueError):
    pass


def _inside(t, lo, hi, strict_ends: bool) -> int:
    """1 if strictly inside, 0 if outside, -1 if at a finite endpoint."""
    if lo is not None:
        s = (t - lo).sign()
        if s < 0:
            return 0
        if s == 0:
            return -1
    if hi is not None:
        s = (t - hi).sign()
        if s > 0:
            return 0
        if s == 0:
            return -1
    return 1


def _count(a1: PlanarArc, a2: PlanarArc) -> int:
    total = 0
    for p in a1.segments:
        for q in a2.segments:
            det = cross(p.direction, q.direction)
            diff = (q.base[0] - p.base[0], q.base[1] - p.base[1])
            if not det:
                if not cross(diff, p.direction):
                    raise NonGeneric("overlapping collinear pieces")
                continue
            s = cross(diff, q.direction) / det
            t = cross(diff, p.direction) / det
            ins = _inside(s, p.lo, p.hi, True)
            int_ = _inside(t, q.lo, q.hi, True)
            if ins == 0 or int_ == 0:
                continue
            if ins < 0 or int_ < 0:
                raise NonGeneric("crossing at a vertex")
            total += det.sign()
    return total


def arc_intersection(a1: PlanarArc, a2: PlanarArc, eps: Fraction = Fraction(1, 64), retries: int = 24) -> int:
    """Signed intersection number after translating a2 by eps*(1, delta).

    delta starts at 1/3 and doubles until the configuration is transversal;
    the count is confirmed once more with eps halved.
    """
    delta = Fraction(1, 3)
    for _ in range(retries):
        try:
            n1 = _count(a1, a2.translate(pt(eps, eps * delta)))
            half = eps / 2
            n2 = _count(a1, a2.translate(pt(half, half * delta)))
        except NonGeneric:
            delta *= 2
            continue
        if n1 != n2:
            raise NonGeneric("intersection number depends on the perturbation size")
        return n1
    raise NonGeneric("no transversal perturbation found")


def claim_arc() -> PlanarArc:
    """Two half rays at angle 2 pi / 3: in along exp(2 pi i/3), out along 1."""
    return corner_arc(ZETA3, ONE)


def claim_triple() -> tuple[int, int, int]:
    """(a.a', a.zeta3 a', a.zeta3^2 a') with a' = zeta6 * a, orientation reversed."""
    a = claim_arc()
    a_prime = a.rotate(ZETA6).reversed()
    return tuple(arc_intersection(a, a_prime.rotate(cpow(ZETA3, k))) for k in range(3))


def is_cyclic_permutation(x: Sequence[int], y: Sequence[int]) -> bool:
    x, y = list(x), list(y)
    return any(x[k:] + x[:k] == y for k in range(len(x)))
