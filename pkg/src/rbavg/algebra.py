"""Exact bivariate monomial and polynomial arithmetic over the rationals.

All downstream verification compares values for *exact* equality, so every
scalar is a `fractions.Fraction`: arbitrary precision, always reduced, always
with a positive denominator.  No floating point appears anywhere.

Monomials are exponent pairs (n, m) standing for x^n y^m; a polynomial is a
finite mapping from monomials to nonzero coefficients.  Two algebras are
supported: the full polynomial algebra F[x, y] and the non-unital ideal
F0[x, y] generated by {x, y}.  The only structural difference is whether the
constant monomial (0, 0) is admissible; the degree-floor function `nu`
captures it numerically.

The canonical monomial order used for every deterministic listing is graded
lexicographic: total degree first, then x-exponent descending.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def rational_to_str(q: Fraction) -> str:
    """Serialize a rational as "p/q", or just "p" when the denominator is 1."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rational_from_str(text: str) -> Fraction:
    """Parse the "p/q" / "p" form produced by `rational_to_str`."""
    return Fraction(text)


class Monomial(NamedTuple):
    """Exponent pair (n, m) for the monomial x^n y^m."""

    n: int
    m: int

    @property
    def degree(self) -> int:
        return self.n + self.m

    def times(self, other: "Monomial") -> "Monomial":
        return Monomial(self.n + other.n, self.m + other.m)

    def swapped(self) -> "Monomial":
        return Monomial(self.m, self.n)

    def __str__(self) -> str:
        if self.n == 0 and self.m == 0:
            return "1"
        parts = []
        if self.n:
            parts.append("x" if self.n == 1 else f"x^{self.n}")
        if self.m:
            parts.append("y" if self.m == 1 else f"y^{self.m}")
        return "*".join(parts)


def mono(n: int, m: int) -> Monomial:
    if n < 0 or m < 0:
        raise ValueError(f"monomial exponents must be natural, got ({n}, {m})")
    return Monomial(n, m)


def grlex_key(z: Monomial) -> tuple[int, int]:
    """Sort key for the canonical order: degree ascending, then n descending."""
    return (z.n + z.m, z.m)


@dataclass(frozen=True)
class AlgebraContext:
    """Selects F[x, y] (unital=True) or the ideal F0[x, y] (unital=False)."""

    unital: bool

    def admissible(self, z: Monomial) -> bool:
        return self.unital or z.n + z.m > 0

    @property
    def label(self) -> str:
        return "F[x,y]" if self.unital else "F0[x,y]"

    def to_json(self) -> dict:
        return {"unital": self.unital}

    @staticmethod
    def from_json(data: Mapping) -> "AlgebraContext":
        return AlgebraContext(unital=bool(data["unital"]))


UNITAL = AlgebraContext(unital=True)
NON_UNITAL = AlgebraContext(unital=False)


def nu(n: int, ctx: AlgebraContext) -> int:
    """Degree floor: 0 on F[x,y]; on F0[x,y] it is 1 at n = 0 and 0 otherwise."""
    if ctx.unital:
        return 0
    return 1 if n == 0 else 0


def admissible_monomials(ctx: AlgebraContext, max_degree: int) -> list[Monomial]:
    """All admissible monomials of total degree <= max_degree, in canonical order."""
    out: list[Monomial] = []
    for d in range(max_degree + 1):
        for m in range(d + 1):
            z = Monomial(d - m, m)
            if ctx.admissible(z):
                out.append(z)
    return out


class Polynomial:
    """Immutable sparse polynomial: monomial -> nonzero rational coefficient."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | Iterable[tuple[Monomial, Fraction]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, Fraction] = {}
        for z, c in items:
            c = Fraction(c)
            if c == 0:
                continue
            z = Monomial(*z)
            if z.n < 0 or z.m < 0:
                raise ValueError(f"negative exponent in {z}")
            c0 = acc.get(z)
            if c0 is None:
                acc[z] = c
            else:
                c1 = c0 + c
                if c1 == 0:
                    del acc[z]
                else:
                    acc[z] = c1
        self._terms = acc

    @staticmethod
    def zero() -> "Polynomial":
        return Polynomial()

    @staticmethod
    def monomial(z: Monomial, coeff: Fraction | int = 1) -> "Polynomial":
        return Polynomial([(z, Fraction(coeff))])

    def terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in canonical order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]))

    def coeff(self, z: Monomial) -> Fraction:
        return self._terms.get(z, ZERO)

    def monomials(self) -> list[Monomial]:
        return [z for z, _ in self.terms()]

    @property
    def degree(self) -> int:
        """Total degree; 0 for the zero polynomial."""
        return max((z.degree for z in self._terms), default=0)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        if not self._terms:
            return other
        if not other._terms:
            return self
        acc = dict(self._terms)
        for z, c in other._terms.items():
            c1 = acc.get(z, ZERO) + c
            if c1 == 0:
                acc.pop(z, None)
            else:
                acc[z] = c1
        out = Polynomial()
        out._terms = acc
        return out

    def __neg__(self) -> "Polynomial":
        out = Polynomial()
        out._terms = {z: -c for z, c in self._terms.items()}
        return out

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        acc: dict[Monomial, Fraction] = {}
        for za, ca in self._terms.items():
            for zb, cb in other._terms.items():
                z = za.times(zb)
                c1 = acc.get(z, ZERO) + ca * cb
                if c1 == 0:
                    acc.pop(z, None)
                else:
                    acc[z] = c1
        out = Polynomial()
        out._terms = acc
        return out

    def scaled(self, a: Fraction | int) -> "Polynomial":
        a = Fraction(a)
        if a == 0:
            return Polynomial()
        out = Polynomial()
        out._terms = {z: a * c for z, c in self._terms.items()}
        return out

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(
            f"{rational_to_str(c)}*{z}" if z.degree else rational_to_str(c)
            for z, c in self.terms()
        )

    def to_json(self) -> list:
        return [[z.n, z.m, rational_to_str(c)] for z, c in self.terms()]


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b
