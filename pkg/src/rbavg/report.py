"""Pass/fail reports for exhaustive exact identity sweeps.

A check walks every in-range instance of an identity and records a witness
for each failure, so `passed` is equivalent to the witness list being empty.
Witness values can be rationals, monomials or polynomials; serialization
renders them with the package-wide conventions (rationals as "p/q",
monomials as [n, m]).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

from .algebra import Monomial, Polynomial, rational_to_str

WITNESS_LIMIT = 10


class Witness(NamedTuple):
    """One failing instance: the identifying inputs plus both side values."""

    inputs: tuple
    lhs: object
    rhs: object


def _json_value(v):
    if isinstance(v, Fraction):
        return rational_to_str(v)
    if isinstance(v, Monomial):
        return [v.n, v.m]
    if isinstance(v, Polynomial):
        return v.to_json()
    if isinstance(v, (tuple, list)):
        return [_json_value(x) for x in v]
    return v


@dataclass(frozen=True)
class CheckReport:
    passed: bool
    witnesses: tuple[Witness, ...]
    pairs_checked: int

    @staticmethod
    def from_sweep(witnesses: Iterable[Witness], pairs_checked: int) -> "CheckReport":
        ws = tuple(witnesses)
        return CheckReport(passed=not ws, witnesses=ws, pairs_checked=pairs_checked)

    def merged(self, other: "CheckReport") -> "CheckReport":
        """Order-independent merge of two partial sweeps."""
        ws = tuple(sorted(self.witnesses + other.witnesses, key=lambda w: repr(w.inputs)))
        return CheckReport(
            passed=not ws,
            witnesses=ws,
            pairs_checked=self.pairs_checked + other.pairs_checked,
        )

    def to_json(self, witness_limit: int = WITNESS_LIMIT) -> dict:
        return {
            "passed": self.passed,
            "pairs_checked": self.pairs_checked,
            "witnesses": [
                {
                    "inputs": _json_value(w.inputs),
                    "lhs": _json_value(w.lhs),
                    "rhs": _json_value(w.rhs),
                }
                for w in self.witnesses[:witness_limit]
            ],
        }
