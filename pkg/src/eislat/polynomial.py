"""Sparse multivariate polynomials with integer coefficients."""
from __future__ import annotations

from typing import Mapping, Sequence


class UnknownVariable(KeyError):
    pass


class Polynomial:
    """A polynomial over Z in an ordered list of named variables.

    Terms map exponent tuples to nonzero integer coefficients.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple[int, ...], int] | None = None):
        self.variables = tuple(variables)
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != len(self.variables):
                raise ValueError("exponent vector does not match variable count")
            if c:
                clean[exp] = clean.get(exp, 0) + c
        self.terms = {e: c for e, c in clean.items() if c}

    # constructors
    @classmethod
    def constant(cls, variables: Sequence[str], c: int) -> Polynomial:
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> Polynomial:
        if name not in variables:
            raise UnknownVariable(name)
        i = list(variables).index(name)
        return cls(variables, {tuple(int(j == i) for j in range(len(variables))): 1})

    @classmethod
    def gens(cls, variables: Sequence[str]) -> list[Polynomial]:
        return [cls.var(variables, v) for v in variables]

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.variables != self.variables:
                return other.over(self.variables)
            return other
        if isinstance(other, int):
            return Polynomial.constant(self.variables, other)
        return NotImplemented

    def over(self, variables: Sequence[str]) -> Polynomial:
        """The same polynomial viewed in a larger (or reordered) variable list."""
        variables = tuple(variables)
        missing = [v for v in self.variables if v not in variables]
        for v, e in ((v, e) for e in self.terms for v, k in zip(self.variables, e) if k):
            if v in missing:
                raise UnknownVariable(v)
        pos = {v: i for i, v in enumerate(variables)}
        terms = {}
        for exp, c in self.terms.items():
            new = [0] * len(variables)
            for v, k in zip(self.variables, exp):
                if k:
                    new[pos[v]] = k
            terms[tuple(new)] = c
        return Polynomial(variables, terms)

    # ring operations
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Polynomial(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Polynomial(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Polynomial:
        if n < 0:
            raise ValueError("negative exponent")
        result = Polynomial.constant(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other) if not isinstance(other, Polynomial) else other
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.variables != self.variables:
            try:
                other = other.over(self.variables)
            except UnknownVariable:
                return False
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def partial_derivative(self, name: str) -> Polynomial:
        if name not in self.variables:
            raise UnknownVariable(name)
        i = self.variables.index(name)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                terms[tuple(ne)] = c * e[i]
        return Polynomial(self.variables, terms)

    def substitute(self, mapping: Mapping[str, Polynomial | int], variables: Sequence[str] | None = None) -> Polynomial:
        """Simultaneous substitution; unmapped variables stay as they are.

        The result lives in ``variables`` (default: the union of the remaining
        variables and those of the images, in first-seen order).
        """
        for name in mapping:
            if name not in self.variables:
                raise UnknownVariable(name)
        if variables is None:
            names: list[str] = [v for v in self.variables if v not in mapping]
            for img in mapping.values():
                if isinstance(img, Polynomial):
                    names.extend(v for v in img.variables if v not in names)
            variables = names
        variables = tuple(variables)
        images = []
        for v in self.variables:
            img = mapping.get(v, None)
            if img is None:
                img = Polynomial.var(variables, v)
            elif isinstance(img, int):
                img = Polynomial.constant(variables, img)
            else:
                img = img.over(variables)
            images.append(img)
        result = Polynomial(variables)
        cache: dict[tuple[int, int], Polynomial] = {}
        for exp, c in self.terms.items():
            term = Polynomial.constant(variables, c)
            for i, k in enumerate(exp):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = images[i] ** k
                    term = term * cache[key]
            result = result + term
        return result

    def evaluate(self, values: Mapping[str, int]) -> int:
        total = 0
        for exp, c in self.terms.items():
            t = c
            for v, k in zip(self.variables, exp):
                if k:
                    t *= values[v] ** k
            total += t
        return total

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp in sorted(self.terms, reverse=True):
            c = self.terms[exp]
            mon = "*".join(
                (v if k == 1 else f"{v}^{k}") for v, k in zip(self.variables, exp) if k
            )
            if not mon:
                parts.append(str(c))
            elif c == 1:
                parts.append(mon)
            elif c == -1:
                parts.append("-" + mon)
            else:
                parts.append(f"{c}*{mon}")
        return " + ".join(parts).replace("+ -", "- ")


def poly_arith(op: str, *args):
    """Dispatch: add(p, q), mul(p, q), substitute(p, mapping), partial_derivative(p, name)."""
    if op == "add":
        return args[0] + args[1]
    if op == "mul":
        return args[0] * args[1]
    if op == "substitute":
        return args[0].substitute(args[1])
    if op == "partial_derivative":
        return args[0].partial_derivative(args[1])
    raise ValueError(f"unknown polynomial operation {op!r}")
