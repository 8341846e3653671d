"""Arithmetic in the Eisenstein integers Z[zeta] and their fraction field.

Elements are written ``a + b*zeta`` with ``zeta**2 + zeta + 1 == 0``.
The ring is norm-Euclidean, which is all the matrix normal forms need.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Union

IntLike = Union[int, "EisensteinInt"]


def _round_half_to_zero(num: int, den: int) -> int:
    """Nearest integer to num/den (den > 0), ties rounded toward zero."""
    q, r = divmod(num, den)
    twice = 2 * r
    if twice < den:
        return q
    if twice > den:
        return q + 1
    # exact tie: q + 1/2
    return q + 1 if q < 0 else q


class EisensteinInt:
    """Element a + b*zeta of Z[zeta]. Immutable."""

    __slots__ = ("a", "b")

    def __init__(self, a: int = 0, b: int = 0) -> None:
        object.__setattr__(self, "a", int(a))
        object.__setattr__(self, "b", int(b))

    def __setattr__(self, name, value):
        raise AttributeError("EisensteinInt is immutable")

    def __reduce__(self):
        return (EisensteinInt, (self.a, self.b))

    @classmethod
    def coerce(cls, x: IntLike) -> EisensteinInt:
        if isinstance(x, EisensteinInt):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        if isinstance(x, (tuple, list)) and len(x) == 2:
            return cls(x[0], x[1])
        raise TypeError(f"cannot convert {x!r} to EisensteinInt")

    # ring operations

    def __add__(self, other):
        if isinstance(other, int):
            return EisensteinInt(self.a + other, self.b)
        if isinstance(other, EisensteinInt):
            return EisensteinInt(self.a + other.a, self.b + other.b)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> EisensteinInt:
        return EisensteinInt(-self.a, -self.b)

    def __sub__(self, other):
        if isinstance(other, int):
            return EisensteinInt(self.a - other, self.b)
        if isinstance(other, EisensteinInt):
            return EisensteinInt(self.a - other.a, self.b - other.b)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, int):
            return EisensteinInt(other - self.a, -self.b)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, int):
            return EisensteinInt(self.a * other, self.b * other)
        if isinstance(other, EisensteinInt):
            a, b, c, d = self.a, self.b, other.a, other.b
            # zeta^2 = -1 - zeta
            bd = b * d
            return EisensteinInt(a * c - bd, a * d + b * c - bd)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int) -> EisensteinInt:
        if n < 0:
            raise ValueError("negative powers are not ring elements")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> EisensteinInt:
        # conj(zeta) = zeta^2 = -1 - zeta
        return EisensteinInt(self.a - self.b, -self.b)

    def norm(self) -> int:
        a, b = self.a, self.b
        return a * a - a * b + b * b

    def is_unit(self) -> bool:
        return self.norm() == 1

    def is_rational(self) -> bool:
        return self.b == 0

    def real2(self) -> int:
        """Twice the real part, an integer."""
        return 2 * self.a - self.b

    # division

    def __divmod__(self, other):
        return eis_divmod(self, other)

    def __floordiv__(self, other):
        return eis_divmod(self, other)[0]

    def __mod__(self, other):
        return eis_divmod(self, other)[1]

    def exact_div(self, other: IntLike) -> EisensteinInt:
        """self / other, raising ValueError when the quotient is not integral."""
        other = EisensteinInt.coerce(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Z[zeta]")
        p = self * other.conj()
        if p.a % n or p.b % n:
            raise ValueError(f"{other} does not divide {self}")
        return EisensteinInt(p.a // n, p.b // n)

    def divides(self, other: IntLike) -> bool:
        other = EisensteinInt.coerce(other)
        if not self:
            return not other
        p = other * self.conj()
        n = self.norm()
        return p.a % n == 0 and p.b % n == 0

    def canonical(self) -> tuple[EisensteinInt, EisensteinInt]:
        """Return (unit, c) with unit*self == c the canonical associate."""
        if not self:
            return ONE, self
        for u in UNITS:
            c = u * self
            if c.is_canonical():
                return u, c
        raise AssertionError("no canonical associate found")  # pragma: no cover

    def is_canonical(self) -> bool:
        # argument in [0, 60 degrees): b >= 0 and a > b
        return 0 <= self.b < self.a

    # comparisons / hashing

    def __eq__(self, other):
        if isinstance(other, EisensteinInt):
            return self.a == other.a and self.b == other.b
        if isinstance(other, int):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def key(self) -> tuple[int, int]:
        return (self.a, self.b)

    def to_json(self) -> list[int]:
        return [self.a, self.b]

    def to_complex(self) -> complex:
        return complex(self.a - self.b / 2, self.b * 3 ** 0.5 / 2)

    def __repr__(self) -> str:
        return f"EisensteinInt({self.a}, {self.b})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}z"
        return f"{self.a}{self.b:+d}z"


ZERO = EisensteinInt(0, 0)
ONE = EisensteinInt(1, 0)
ZETA = EisensteinInt(0, 1)
ZETA2 = EisensteinInt(-1, -1)
THETA = EisensteinInt(1, 2)  # sqrt(-3) = 1 + 2 zeta
UNITS = (ONE, ZETA, ZETA2, -ONE, -ZETA, -ZETA2)


def eis_divmod(a: IntLike, b: IntLike) -> tuple[EisensteinInt, EisensteinInt]:
    """Euclidean division a = q*b + r with N(r) < N(b).

    Both coordinates of a/b are rounded to the nearest integer, ties toward
    zero, so the remainder has norm at most 3/4 * N(b).
    """
    a = EisensteinInt.coerce(a)
    b = EisensteinInt.coerce(b)
    n = b.norm()
    if n == 0:
        raise ZeroDivisionError("division by zero in Z[zeta]")
    p = a * b.conj()
    q = EisensteinInt(_round_half_to_zero(p.a, n), _round_half_to_zero(p.b, n))
    return q, a - q * b


def canonical_associate(x: IntLike) -> EisensteinInt:
    return EisensteinInt.coerce(x).canonical()[1]


def eis_gcd(a: IntLike, b: IntLike) -> EisensteinInt:
    """Canonical generator of the ideal (a, b)."""
    a = EisensteinInt.coerce(a)
    b = EisensteinInt.coerce(b)
    if not a and not b:
        raise ValueError("gcd of two zeros is undefined")
    while b:
        a, b = b, eis_divmod(a, b)[1]
    return a.canonical()[1]


def eis_xgcd(a: IntLike, b: IntLike) -> tuple[EisensteinInt, EisensteinInt, EisensteinInt]:
    """Return (g, x, y) with x*a + y*b = g = eis_gcd(a, b)."""
    a = EisensteinInt.coerce(a)
    b = EisensteinInt.coerce(b)
    if not a and not b:
        raise ValueError("gcd of two zeros is undefined")
    x0, y0, x1, y1 = ONE, ZERO, ZERO, ONE
    while b:
        q, r = eis_divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    u, g = a.canonical()
    return g, u * x0, u * y0


def eis_content(values) -> EisensteinInt:
    """gcd of a sequence (zero for an all-zero sequence)."""
    g = ZERO
    for v in values:
        if v:
            g = eis_gcd(g, v) if g else EisensteinInt.coerce(v).canonical()[1]
            if g == ONE:
                break
    return g


def eis_arith(op: str, x: IntLike, y: IntLike | None = None):
    """Dispatcher over the elementary operations by name."""
    x = EisensteinInt.coerce(x)
    if op in ("add", "sub", "mul"):
        if y is None:
            raise TypeError(f"{op} needs two operands")
        y = EisensteinInt.coerce(y)
        return {"add": x + y, "sub": x - y, "mul": x * y}[op]
    if op == "conj":
        return x.conj()
    if op == "norm":
        return x.norm()
    if op == "unit_test":
        return x.is_unit()
    raise ValueError(f"unknown operation {op!r}")


def is_theta_multiple(x: IntLike) -> bool:
    x = EisensteinInt.coerce(x)
    # (a + b zeta)/theta is integral iff a = 2b (mod 3)
    return (x.a - 2 * x.b) % 3 == 0


class EisensteinRational:
    """Element num/den of Q(zeta), den > 0, in lowest terms."""

    __slots__ = ("num", "den")

    def __init__(self, num: IntLike = 0, den: int = 1) -> None:
        num = EisensteinInt.coerce(num)
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        g = gcd(gcd(num.a, num.b), den)
        if g > 1:
            num = EisensteinInt(num.a // g, num.b // g)
            den //= g
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("EisensteinRational is immutable")

    def __reduce__(self):
        return (EisensteinRational, (self.num, self.den))

    @classmethod
    def coerce(cls, x) -> EisensteinRational:
        if isinstance(x, EisensteinRational):
            return x
        if isinstance(x, Fraction):
            return cls(x.numerator, x.denominator)
        return cls(EisensteinInt.coerce(x), 1)

    @classmethod
    def from_parts(cls, a: Fraction, b: Fraction) -> EisensteinRational:
        a, b = Fraction(a), Fraction(b)
        d = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
        return cls(EisensteinInt(int(a * d), int(b * d)), d)

    def parts(self) -> tuple[Fraction, Fraction]:
        return Fraction(self.num.a, self.den), Fraction(self.num.b, self.den)

    def __add__(self, other):
        o = EisensteinRational.coerce(other)
        return EisensteinRational(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return EisensteinRational(-self.num, self.den)

    def __sub__(self, other):
        return self + (-EisensteinRational.coerce(other))

    def __rsub__(self, other):
        return EisensteinRational.coerce(other) - self

    def __mul__(self, other):
        o = EisensteinRational.coerce(other)
        return EisensteinRational(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> EisensteinRational:
        n = self.num.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return EisensteinRational(self.num.conj() * self.den, n)

    def __truediv__(self, other):
        return self * EisensteinRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return EisensteinRational.coerce(other) * self.inverse()

    def conj(self) -> EisensteinRational:
        return EisensteinRational(self.num.conj(), self.den)

    def norm(self) -> Fraction:
        return Fraction(self.num.norm(), self.den * self.den)

    def real(self) -> Fraction:
        return Fraction(self.num.real2(), 2 * self.den)

    def is_integral(self) -> bool:
        return self.den == 1

    def to_int(self) -> EisensteinInt:
        if self.den != 1:
            raise ValueError(f"{self} is not integral")
        return self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other):
        try:
            o = EisensteinRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash((self.num.a, self.num.b, self.den))

    def __repr__(self) -> str:
        return f"EisensteinRational({self.num!r}, {self.den})"

    def __str__(self) -> str:
        return str(self.num) if self.den == 1 else f"({self.num})/{self.den}"


def to_eis(x) -> EisensteinInt:
    return EisensteinInt.coerce(x)
