"""Monomial operators and exhaustive exact verification of their identities.

A monomial operator sends every admissible monomial z to a single term
coeff * x^n' y^m' (the zero term for kernel monomials).  Operators are
either closed-form (a total evaluation rule) or backed by a finite
coefficient table with a declared coverage degree; asking a table-backed
operator beyond its coverage raises CoverageError, so a verification sweep
can never silently pass on an unchecked instance.

Two operator identities are checked by full pair sweeps in exact
arithmetic, enumerating unordered pairs of admissible monomials up to a
degree bound (both identities are symmetric in the pair, and the averaging
check tests both association orders explicitly):

* weight-zero product rule:  R(a)R(b) = R(R(a)b + aR(b));
* averaging rule:            T(a)T(b) = T(T(a)b) = T(aT(b)).

`check_coefficient_relation` verifies the same identities one level down,
directly on coefficient tables indexed by exponent pairs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping, NamedTuple

from .algebra import (
    AlgebraContext,
    Monomial,
    Polynomial,
    admissible_monomials,
    grlex_key,
    rational_from_str,
    rational_to_str,
)
from .errors import CoverageError, InvalidParams, ZeroScalarError
from .report import CheckReport, Witness


class Term(NamedTuple):
    """A scalar times a monomial; the canonical zero term is (0, x^0 y^0)."""

    coeff: Fraction
    mono: Monomial


ZERO_TERM = Term(Fraction(0), Monomial(0, 0))


def term(coeff: Fraction | int, n: int = 0, m: int = 0) -> Term:
    """Normalized constructor: any zero-coefficient term collapses to ZERO_TERM."""
    c = Fraction(coeff)
    if c == 0:
        return ZERO_TERM
    return Term(c, Monomial(n, m))


def term_to_poly(t: Term) -> Polynomial:
    if t.coeff == 0:
        return Polynomial.zero()
    return Polynomial.monomial(t.mono, t.coeff)


class CoeffTable:
    """Finite monomial-operator table with a declared coverage degree.

    Rows map an input monomial to its output term; inputs absent from the
    table but within coverage are in the kernel.  Serialized rows are
    [n, m, "p/q", n', m'].
    """

    def __init__(self, ctx: AlgebraContext, coverage_degree: int, rows: Mapping[Monomial, Term]):
        self.ctx = ctx
        self.coverage_degree = int(coverage_degree)
        clean: dict[Monomial, Term] = {}
        for z, t in rows.items():
            z = Monomial(*z)
            if t.coeff == 0:
                continue
            if not ctx.admissible(z):
                raise InvalidParams(f"table input {z} not admissible in {ctx.label}")
            if z.degree > self.coverage_degree:
                raise InvalidParams(f"table input {z} beyond coverage degree {coverage_degree}")
            if not ctx.admissible(t.mono):
                raise InvalidParams(f"table output {t.mono} not admissible in {ctx.label}")
            clean[z] = Term(Fraction(t.coeff), Monomial(*t.mono))
        self.rows = clean

    def lookup(self, z: Monomial) -> Term:
        if z.degree > self.coverage_degree:
            raise CoverageError(
                f"monomial {z} of degree {z.degree} beyond table coverage {self.coverage_degree}"
            )
        return self.rows.get(z, ZERO_TERM)

    def coefficient(self, z: Monomial) -> Fraction:
        return self.lookup(z).coeff

    def nonzero_items(self) -> list[tuple[Monomial, Term]]:
        return sorted(self.rows.items(), key=lambda item: grlex_key(item[0]))

    def support(self) -> list[Monomial]:
        return [z for z, _ in self.nonzero_items()]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoeffTable):
            return NotImplemented
        return (
            self.ctx == other.ctx
            and self.coverage_degree == other.coverage_degree
            and self.rows == other.rows
        )

    def swapped(self) -> "CoeffTable":
        rows = {
            z.swapped(): Term(t.coeff, t.mono.swapped()) for z, t in self.rows.items()
        }
        return CoeffTable(self.ctx, self.coverage_degree, rows)

    def scaled(self, a: Fraction) -> "CoeffTable":
        if a == 0:
            raise ZeroScalarError("cannot scale a table by zero")
        rows = {z: Term(t.coeff * a, t.mono) for z, t in self.rows.items()}
        return CoeffTable(self.ctx, self.coverage_degree, rows)

    def to_json_rows(self) -> list:
        return [
            [z.n, z.m, rational_to_str(t.coeff), t.mono.n, t.mono.m]
            for z, t in self.nonzero_items()
        ]

    @staticmethod
    def from_json_rows(ctx: AlgebraContext, coverage_degree: int, data: Iterable) -> "CoeffTable":
        rows: dict[Monomial, Term] = {}
        for n, m, coeff, n_out, m_out in data:
            z = Monomial(int(n), int(m))
            if z in rows:
                raise InvalidParams(f"duplicate table row for {z}")
            rows[z] = term(rational_from_str(coeff), int(n_out), int(m_out))
        return CoeffTable(ctx, coverage_degree, rows)


class MonomialOperator:
    """Total or table-backed rule assigning one output term per monomial."""

    def __init__(
        self,
        ctx: AlgebraContext,
        rule: Callable[[Monomial], Term] | None = None,
        table: CoeffTable | None = None,
    ):
        if (rule is None) == (table is None):
            raise ValueError("exactly one of rule/table must be given")
        self.ctx = ctx
        self._rule = rule
        self._table = table

    @staticmethod
    def from_rule(ctx: AlgebraContext, rule: Callable[[Monomial], Term]) -> "MonomialOperator":
        return MonomialOperator(ctx, rule=rule)

    @staticmethod
    def from_table(table: CoeffTable) -> "MonomialOperator":
        return MonomialOperator(table.ctx, table=table)

    @staticmethod
    def zero(ctx: AlgebraContext) -> "MonomialOperator":
        return MonomialOperator(ctx, rule=lambda z: ZERO_TERM)

    @property
    def is_table_backed(self) -> bool:
        return self._table is not None

    @property
    def coverage_degree(self) -> int | None:
        return self._table.coverage_degree if self._table is not None else None

    def eval_term(self, z: Monomial) -> Term:
        """The unique term assigned to z; CoverageError beyond table coverage."""
        z = Monomial(*z)
        if not self.ctx.admissible(z):
            raise ValueError(f"monomial {z} not admissible in {self.ctx.label}")
        if self._table is not None:
            return self._table.lookup(z)
        out = self._rule(z)
        if out.coeff == 0:
            return ZERO_TERM
        return out

    def apply(self, p: Polynomial) -> Polynomial:
        """Linear extension to polynomials."""
        acc = Polynomial.zero()
        for z, c in p.terms():
            t = self.eval_term(z)
            if t.coeff != 0:
                acc = acc + Polynomial.monomial(t.mono, c * t.coeff)
        return acc

    def scale(self, a: Fraction | int) -> "MonomialOperator":
        """Multiply every output coefficient by a nonzero scalar."""
        a = Fraction(a)
        if a == 0:
            raise ZeroScalarError("scale factor must be nonzero")
        if self._table is not None:
            return MonomialOperator.from_table(self._table.scaled(a))
        inner = self._rule

        def rule(z: Monomial) -> Term:
            t = inner(z)
            return term(t.coeff * a, t.mono.n, t.mono.m)

        return MonomialOperator(self.ctx, rule=rule)

    def conjugate_swap(self) -> "MonomialOperator":
        """Conjugate by the x/y swap automorphism (an involution)."""
        if self._table is not None:
            return MonomialOperator.from_table(self._table.swapped())
        inner = self._rule

        def rule(z: Monomial) -> Term:
            t = inner(z.swapped())
            return term(t.coeff, t.mono.m, t.mono.n)

        return MonomialOperator(self.ctx, rule=rule)

    def truncate(self, degree: int) -> CoeffTable:
        """Materialize the table of all admissible inputs of degree <= degree."""
        rows: dict[Monomial, Term] = {}
        for z in admissible_monomials(self.ctx, degree):
            t = self.eval_term(z)
            if t.coeff != 0:
                rows[z] = t
        return CoeffTable(self.ctx, degree, rows)


def eval_term(op: MonomialOperator, z: Monomial) -> Term:
    return op.eval_term(z)


def apply(op: MonomialOperator, p: Polynomial) -> Polynomial:
    return op.apply(p)


def _pair_list(ctx: AlgebraContext, max_degree: int) -> list[tuple[Monomial, Monomial]]:
    monos = admissible_monomials(ctx, max_degree)
    return [(monos[i], monos[j]) for i in range(len(monos)) for j in range(i, len(monos))]


def check_rb0(
    op: MonomialOperator,
    max_degree: int,
    pair_range: tuple[int, int] | None = None,
) -> CheckReport:
    """Exhaustively check R(a)R(b) = R(R(a)b + aR(b)) on admissible monomial
    pairs of degree <= max_degree.

    `pair_range` restricts the sweep to a slice of the canonical pair list so
    callers can shard the work; reports from shards merge associatively.
    """
    pairs = _pair_list(op.ctx, max_degree)
    if pair_range is not None:
        pairs = pairs[pair_range[0] : pair_range[1]]
    witnesses: list[Witness] = []
    for a, b in pairs:
        ra = op.eval_term(a)
        rb = op.eval_term(b)
        lhs = term_to_poly(ra) * term_to_poly(rb)
        inner = Polynomial.monomial(a, 1) * term_to_poly(rb) + Polynomial.monomial(b, 1) * term_to_poly(ra)
        rhs = op.apply(inner)
        if lhs != rhs:
            witnesses.append(Witness(inputs=(a, b), lhs=lhs, rhs=rhs))
    return CheckReport.from_sweep(witnesses, len(pairs))


def check_averaging(
    op: MonomialOperator,
    max_degree: int,
    pair_range: tuple[int, int] | None = None,
) -> CheckReport:
    """Exhaustively check T(a)T(b) = T(T(a)b) and T(a)T(b) = T(aT(b))."""
    pairs = _pair_list(op.ctx, max_degree)
    if pair_range is not None:
        pairs = pairs[pair_range[0] : pair_range[1]]
    witnesses: list[Witness] = []
    for a, b in pairs:
        ta = op.eval_term(a)
        tb = op.eval_term(b)
        lhs = term_to_poly(ta) * term_to_poly(tb)
        left_assoc = op.apply(term_to_poly(ta) * Polynomial.monomial(b, 1))
        right_assoc = op.apply(Polynomial.monomial(a, 1) * term_to_poly(tb))
        if lhs != left_assoc:
            witnesses.append(Witness(inputs=(a, b, "T(T(a)b)"), lhs=lhs, rhs=left_assoc))
        if lhs != right_assoc:
            witnesses.append(Witness(inputs=(a, b, "T(aT(b))"), lhs=lhs, rhs=right_assoc))
    return CheckReport.from_sweep(witnesses, len(pairs))


RELATIONS = ("case-ii", "case-i", "case-iii", "reciprocal")


def check_coefficient_relation(
    table: CoeffTable,
    relation: str,
    *,
    r: int = 0,
    c: int = 0,
    p_x: int = 0,
    p_y: int = 0,
    max_index: int,
) -> CheckReport:
    """Check one coefficient-level identity on all index pairs of total
    degree <= max_index.

    relations (alpha is the table coefficient at the exponent pair):
      case-ii:    a_{n,m} a_{s,t} = a_{n,m} a_{s, rn+m+t+c} + a_{s,t} a_{n, rs+m+t+c}
      case-i:     a_{u,v} a_{p,q} = a_{u,v} a_{r(v+c)+p, v+q+c} + a_{p,q} a_{r(q+c)+u, v+q+c}
      case-iii:   a_{n,m} a_{s,t} = (a_{n,m} + a_{s,t}) a_{n+s+p_x, m+t+p_y}
      reciprocal: 1/a_{n+s+p_x, m+t+p_y} = 1/a_{n,m} + 1/a_{s,t}, on pairs where
                  both base coefficients are nonzero.

    Pairs with both base coefficients zero hold identically in the first
    three relations and are skipped without lookups.
    """
    if relation not in RELATIONS:
        raise ValueError(f"unknown relation {relation!r}")
    ctx = table.ctx
    monos = admissible_monomials(ctx, max_index)
    witnesses: list[Witness] = []
    checked = 0
    zero = Fraction(0)

    for i, a in enumerate(monos):
        ca = table.coefficient(a)
        for b in monos[i:]:
            cb = table.coefficient(b)
            if ca == 0 and cb == 0:
                continue
            if relation == "reciprocal" and (ca == 0 or cb == 0):
                continue
            checked += 1
            if relation == "case-ii":
                lhs = ca * cb
                rhs = ca * table.coefficient(Monomial(b.n, r * a.n + a.m + b.m + c)) + cb * table.coefficient(
                    Monomial(a.n, r * b.n + a.m + b.m + c)
                )
            elif relation == "case-i":
                shift_m = a.m + b.m + c
                lhs = ca * cb
                rhs = ca * table.coefficient(Monomial(r * (a.m + c) + b.n, shift_m)) + cb * table.coefficient(
                    Monomial(r * (b.m + c) + a.n, shift_m)
                )
            elif relation == "case-iii":
                lhs = ca * cb
                rhs = (ca + cb) * table.coefficient(Monomial(a.n + b.n + p_x, a.m + b.m + p_y))
            else:  # reciprocal
                csum = table.coefficient(Monomial(a.n + b.n + p_x, a.m + b.m + p_y))
                if csum == 0:
                    witnesses.append(Witness(inputs=(a, b), lhs=zero, rhs=1 / ca + 1 / cb))
                    continue
                lhs = 1 / csum
                rhs = 1 / ca + 1 / cb
            if lhs != rhs:
                witnesses.append(Witness(inputs=(a, b), lhs=lhs, rhs=rhs))
    return CheckReport.from_sweep(witnesses, checked)
