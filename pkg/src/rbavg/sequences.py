"""Finite encodings of the infinite parameter data used by families.

Infinite natural-number sequences are given as an explicit prefix plus an
eventually-constant tail (a missing tail means the sequence is only defined
on its prefix).  Index sets are finite unions of explicit elements and
arithmetic progressions {first + step*j : j >= 0}; steps may be negative, so
descending rays (e.g. the negative even integers) are expressible.  A RowMap
attaches a value to every member of an index set: explicitly, affinely along
each progression, through a caller-resolved named rule, or by a default.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .algebra import rational_from_str, rational_to_str
from .errors import CoverageError, InvalidParams


@dataclass(frozen=True)
class NatSeq:
    """Integer sequence defined for indices >= `start`: an explicit prefix
    followed by an optional constant tail."""

    prefix: tuple[int, ...]
    tail: int | None = None
    start: int = 0

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(int(v) for v in self.prefix))

    @staticmethod
    def constant(value: int, start: int = 0) -> "NatSeq":
        return NatSeq(prefix=(), tail=value, start=start)

    @property
    def prefix_end(self) -> int:
        """Largest index covered by the explicit prefix (start-1 if empty)."""
        return self.start + len(self.prefix) - 1

    def defined_at(self, i: int) -> bool:
        return i >= self.start and (i <= self.prefix_end or self.tail is not None)

    def at(self, i: int) -> int:
        if i < self.start:
            raise InvalidParams(f"sequence index {i} below start {self.start}", index=i)
        if i <= self.prefix_end:
            return self.prefix[i - self.start]
        if self.tail is None:
            raise CoverageError(f"sequence has no tail and index {i} is past its prefix")
        return self.tail

    def to_json(self) -> dict:
        return {"prefix": list(self.prefix), "tail": self.tail}

    @staticmethod
    def from_json(data: Mapping, start: int = 0) -> "NatSeq":
        return NatSeq(prefix=tuple(data.get("prefix", ())), tail=data.get("tail"), start=start)


@dataclass(frozen=True)
class IndexSet:
    """Finite union of explicit integers and arithmetic progressions."""

    elements: frozenset[int] = frozenset()
    progressions: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "elements", frozenset(int(e) for e in self.elements))
        progs = []
        for first, step in self.progressions:
            if step == 0:
                raise InvalidParams("progression step must be nonzero", constraint="step != 0")
            progs.append((int(first), int(step)))
        object.__setattr__(self, "progressions", tuple(progs))

    @staticmethod
    def of(*elements: int) -> "IndexSet":
        return IndexSet(elements=frozenset(elements))

    @staticmethod
    def empty() -> "IndexSet":
        return IndexSet()

    @property
    def is_empty(self) -> bool:
        return not self.elements and not self.progressions

    @property
    def is_finite(self) -> bool:
        return not self.progressions

    def progression_position(self, i: int) -> tuple[int, int] | None:
        """(progression index, offset j) for the first progression containing i."""
        for p, (first, step) in enumerate(self.progressions):
            j, r = divmod(i - first, step)
            if r == 0 and j >= 0:
                return (p, j)
        return None

    def __contains__(self, i: int) -> bool:
        return i in self.elements or self.progression_position(i) is not None

    def members_between(self, lo: int, hi: int) -> list[int]:
        """Sorted members in [lo, hi]."""
        found = {e for e in self.elements if lo <= e <= hi}
        for first, step in self.progressions:
            if step > 0:
                j = max(0, math.ceil((lo - first) / step))
                v = first + step * j
                while v <= hi:
                    found.add(v)
                    v += step
            else:
                j = max(0, math.ceil((first - hi) / -step))
                v = first + step * j
                while v >= lo:
                    found.add(v)
                    v += step
        return sorted(found)

    def check_disjoint(self) -> None:
        """Reject overlaps, so per-component assignments are unambiguous."""
        for e in sorted(self.elements):
            if self.progression_position(e) is not None:
                raise InvalidParams(
                    f"element {e} also lies on a progression",
                    constraint="components disjoint", index=e,
                )
        for p in range(len(self.progressions)):
            for q in range(p + 1, len(self.progressions)):
                hit = _rays_intersect(self.progressions[p], self.progressions[q])
                if hit is not None:
                    raise InvalidParams(
                        f"progressions {p} and {q} both contain {hit}",
                        constraint="components disjoint", index=hit,
                    )

    def to_json(self) -> dict:
        return {
            "elements": sorted(self.elements),
            "progressions": [list(p) for p in self.progressions],
        }

    @staticmethod
    def from_json(data: Mapping) -> "IndexSet":
        return IndexSet(
            elements=frozenset(data.get("elements", ())),
            progressions=tuple(tuple(p) for p in data.get("progressions", ())),
        )


def _crt(a1: int, m1: int, a2: int, m2: int) -> tuple[int, int] | None:
    """Solve x = a1 (mod m1), x = a2 (mod m2); returns (x0, lcm) or None."""
    g = math.gcd(m1, m2)
    if (a2 - a1) % g != 0:
        return None
    l = m1 // g * m2
    # lift a1 by a multiple of m1 hitting a2 mod m2
    t = ((a2 - a1) // g * pow(m1 // g, -1, m2 // g)) % (m2 // g)
    return ((a1 + m1 * t) % l, l)


def _ray_contains(p: tuple[int, int], v: int) -> bool:
    first, step = p
    j, r = divmod(v - first, step)
    return r == 0 and j >= 0


def _rays_intersect(p1: tuple[int, int], p2: tuple[int, int]) -> int | None:
    """A common member of two rays, or None."""
    (a1, b1), (a2, b2) = p1, p2
    if (b1 > 0) == (b2 > 0):
        sol = _crt(a1, abs(b1), a2, abs(b2))
        if sol is None:
            return None
        x0, l = sol
        if b1 > 0:
            anchor = max(a1, a2)
            return x0 + ((anchor - x0 + l - 1) // l) * l if x0 < anchor else x0
        anchor = min(a1, a2)
        return x0 - ((x0 - anchor + l - 1) // l) * l if x0 > anchor else x0
    # opposite directions: overlap confined to the window between the anchors
    asc, desc = (p1, p2) if b1 > 0 else (p2, p1)
    v = asc[0]
    while v <= desc[0]:
        if _ray_contains(desc, v):
            return v
        v += asc[1]
    return None


@dataclass(frozen=True)
class RowMap:
    """Value assignment over an IndexSet.

    Resolution order at a member i: explicit `values[i]`, else affine
    base + step*j along i's progression, else the named `rule` (resolved by
    the caller), else `default`.  Values are ints or Fractions per slot.
    """

    values: Mapping = field(default_factory=dict)
    per_progression: tuple[tuple, ...] = ()
    rule: str | None = None
    default: object | None = None

    def value(self, i: int, index_set: IndexSet, rule_fn: Callable[[int], object] | None = None):
        if i in self.values:
            return self.values[i]
        pos = index_set.progression_position(i)
        if pos is not None and pos[0] < len(self.per_progression):
            base, step = self.per_progression[pos[0]]
            return base + step * pos[1]
        if self.rule is not None:
            if rule_fn is None:
                raise InvalidParams(f"rule '{self.rule}' not resolvable here")
            return rule_fn(i)
        if self.default is not None:
            return self.default
        raise InvalidParams(f"no value assigned at index {i}", index=i)

    def to_json(self, fraction_values: bool = False) -> dict:
        conv = rational_to_str if fraction_values else int
        data: dict = {}
        if self.values:
            data["values"] = {str(i): conv(v) for i, v in sorted(self.values.items())}
        if self.per_progression:
            data["per_progression"] = [[conv(b), conv(s)] for b, s in self.per_progression]
        if self.rule is not None:
            data["rule"] = self.rule
        if self.default is not None:
            data["default"] = conv(self.default)
        return data

    @staticmethod
    def from_json(data: Mapping, fraction_values: bool = False) -> "RowMap":
        conv = rational_from_str if fraction_values else int
        return RowMap(
            values={int(i): conv(v) for i, v in data.get("values", {}).items()},
            per_progression=tuple(
                (conv(b), conv(s)) for b, s in data.get("per_progression", ())
            ),
            rule=data.get("rule"),
            default=conv(data["default"]) if data.get("default") is not None else None,
        )
