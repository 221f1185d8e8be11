"""Recover family specs from truncated coefficient tables.

Classification is sound by construction: a candidate is returned only if
rebuilding its operator and truncating at the table's coverage degree
reproduces the input table exactly.  When several families fit (the
overlaps are real: e.g. the constant-output-x form with r = 0 coincides
with the y-power form with r = 0), all of them are returned; there is no
tie-breaking.

Tables whose orientation is mirrored (x and y exchanged relative to the
canonical family statements) are classified through the swap automorphism
and reported with mirrored=True; rebuilding such a candidate means
conjugating the built operator by the swap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .algebra import AlgebraContext, Monomial, admissible_monomials, nu
from .errors import (
    DegenerateDenominator,
    InvalidParams,
    NotAProgression,
    Unclassifiable,
)
from .families import (
    AVG_I,
    AVG_II,
    AVG_III,
    AVG_IIIA,
    AVG_IIIB0,
    AVG_IIIBP,
    AVG_IV,
    AvgConstParams,
    AvgLineParams,
    AvgShiftParams,
    CaseIIIAParams,
    CaseIIIB0Params,
    CaseIIIBPlusParams,
    FamilySpec,
    IdSuppGridParams,
    IdSuppRayParams,
    RB_I,
    RB_II,
    RB_IDSUPP,
    RB_IIIA,
    RB_IIIB0,
    RB_IIIBP,
    RowFamilyParams,
    _build_operator,
    validate_family_params,
    zeta,
)
from .operators import CoeffTable
from .report import CheckReport, Witness
from .sequences import IndexSet, NatSeq, RowMap


@dataclass(frozen=True)
class ProgressionFit:
    kind: str  # "empty" | "singleton" | "progression"
    offset: int | None = None
    gap: int | None = None


def fit_progression(support: Iterable[int]) -> ProgressionFit:
    """Fit a sorted set of naturals as an arithmetic-progression prefix.

    Raises NotAProgression (naming the first violating element) when the
    gaps are not all equal.
    """
    values = sorted(set(support))
    if not values:
        return ProgressionFit("empty")
    if len(values) == 1:
        return ProgressionFit("singleton", offset=values[0])
    gap = values[1] - values[0]
    for prev, cur in zip(values[1:], values[2:]):
        if cur - prev != gap:
            raise NotAProgression(f"{cur} breaks the common gap {gap}", element=cur)
    return ProgressionFit("progression", offset=values[0], gap=gap)


@dataclass(frozen=True)
class Candidate:
    spec: FamilySpec
    mirrored: bool
    fit_quality: str  # "exact" | "partial"
    coverage_degree_checked: int

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "mirrored": self.mirrored,
            "fit_quality": self.fit_quality,
            "coverage_degree_checked": self.coverage_degree_checked,
        }


@dataclass(frozen=True)
class ClassificationResult:
    candidates: tuple[Candidate, ...]
    zero: bool = False

    def to_json(self) -> dict:
        return {
            "zero": self.zero,
            "candidates": [c.to_json() for c in self.candidates],
        }

    def families(self) -> list[str]:
        return sorted({c.spec.family for c in self.candidates})


def rebuild_table(spec: FamilySpec, coverage_degree: int, mirrored: bool = False) -> CoeffTable:
    """Table of the (possibly mirrored) operator a candidate describes."""
    op = _build_operator(spec)
    if mirrored:
        op = op.conjugate_swap()
    return op.truncate(coverage_degree)


def _sound(spec: FamilySpec, mirrored: bool, table: CoeffTable) -> bool:
    try:
        validate_family_params(spec)
        return rebuild_table(spec, table.coverage_degree, mirrored) == table
    except (InvalidParams, DegenerateDenominator):
        return False


# ---------------------------------------------------------------------------
# exponent-map shape fitting
# ---------------------------------------------------------------------------


def _fit_shape_ii(entries) -> list[tuple[int, int, str]]:
    """(r, c, quality) candidates for the map (n, m) -> (0, r*n + m + c)."""
    if any(t.mono.n != 0 for _, t in entries):
        return []
    by_n: dict[int, int] = {}
    for z, t in entries:
        w = t.mono.m - z.m
        if w != by_n.setdefault(z.n, w):
            return []
    ns = sorted(by_n)
    if len(ns) == 1:
        n0, w0 = ns[0], by_n[ns[0]]
        out = []
        if w0 >= 0:
            out.append((0, w0, "partial"))
        if n0 > 0:
            for r in range(1, w0 // n0 + 1):
                out.append((r, w0 - r * n0, "partial"))
        return out
    n0, n1 = ns[0], ns[1]
    num = by_n[n1] - by_n[n0]
    if num % (n1 - n0) or num < 0:
        return []
    r = num // (n1 - n0)
    c = by_n[n0] - r * n0
    if c < 0 or any(by_n[n] != r * n + c for n in ns):
        return []
    return [(r, c, "exact")]


def _fit_shape_i(entries) -> list[tuple[int, int, str]]:
    """(r, c, quality) candidates for the map (n, m) -> (r(m+c), m+c)."""
    cs = {t.mono.m - z.m for z, t in entries}
    if len(cs) != 1:
        return []
    c = cs.pop()
    if c < 0:
        return []
    r = None
    for z, t in entries:
        if z.m + c == 0:
            if t.mono.n != 0:
                return []
            continue
        if t.mono.n % (z.m + c):
            return []
        r_here = t.mono.n // (z.m + c)
        if r is None:
            r = r_here
        elif r != r_here:
            return []
    if r is None:
        return [(0, c, "partial")]
    return [(r, c, "exact" if len({z.m for z, _ in entries}) > 1 else "partial")]


def _fit_shape_iii(entries) -> tuple[int, int] | None:
    """(p_x, p_y) for the translation map, if every entry agrees."""
    dxs = {t.mono.n - z.n for z, t in entries}
    dys = {t.mono.m - z.m for z, t in entries}
    if len(dxs) == 1 and len(dys) == 1:
        p_x, p_y = dxs.pop(), dys.pop()
        if p_x >= 0 and p_y >= 0:
            return (p_x, p_y)
    return None


# ---------------------------------------------------------------------------
# per-family support fitting
# ---------------------------------------------------------------------------


def _rows_by(entries, key) -> dict[int, dict[int, Fraction]]:
    rows: dict[int, dict[int, Fraction]] = {}
    for z, t in entries:
        row, pos = key(z)
        rows.setdefault(row, {})[pos] = t.coeff
    return rows


def _common_gap(fits: Mapping[int, ProgressionFit]) -> int | None:
    gaps = [f.gap for f in fits.values() if f.kind == "progression"]
    if not gaps:
        return None
    return math.gcd(*gaps) if len(gaps) > 1 else gaps[0]


def _delta_choices(gap: int | None, k_plus_d: list[int], window_lo: int, coverage_room: list[int]) -> list[int]:
    """Possible deltas: the observed gap gcd, or (all rows singleton) the
    divisors of every k+d that clear the window and push the second support
    point past coverage."""
    if gap is not None:
        return [gap]
    g = math.gcd(*k_plus_d) if k_plus_d else 0
    if g == 0:
        return []
    out = []
    for delta in range(g, window_lo, -1):
        if g % delta:
            continue
        if all(delta > room for room in coverage_room):
            out.append(delta)
    return out


def _fit_row_family(table: CoeffTable, family: str, r: int, c: int, map_quality: str) -> list[tuple[FamilySpec, str]]:
    """RB-II / RB-I support fitting for a fixed exponent map (r, c)."""
    ctx = table.ctx
    entries = table.nonzero_items()
    if family == RB_II:
        rows = _rows_by(entries, lambda z: (z.n, z.m))
        d_of = lambda i: r * i + c
        tau_of = lambda i: nu(i, ctx)
    else:
        rows = _rows_by(entries, lambda z: (z.n - r * z.m, z.m))
        d_of = lambda i: c
        tau_of = lambda i: zeta(r, i, ctx)

    fits: dict[int, ProgressionFit] = {}
    try:
        for row, positions in rows.items():
            fits[row] = fit_progression(positions)
    except NotAProgression:
        return []
    k_vals = {row: fits[row].offset for row in rows}
    seed_vals = {}
    for row, positions in rows.items():
        k = k_vals[row]
        top = k + d_of(row)
        if top <= 0:
            return []
        seed_vals[row] = positions[k]  # closed form puts the seed at the row start

    gap = _common_gap(fits)
    if gap is not None:
        deltas = [gap]
        quality = map_quality
    else:
        room = []
        for row in rows:
            if family == RB_II:
                bound = table.coverage_degree - row
            else:  # degree of (r*l + row, l) is (r+1)*l + row
                bound = (table.coverage_degree - row) // (r + 1)
            room.append(bound - k_vals[row])
        deltas = _delta_choices(
            None,
            [k_vals[row] + d_of(row) for row in rows],
            max(k_vals[row] - tau_of(row) for row in rows),
            room,
        )
        quality = "partial"

    out: list[tuple[FamilySpec, str]] = []
    for delta in deltas:
        params = RowFamilyParams(
            r=r, c=c, delta=delta,
            rows=IndexSet.of(*rows),
            k=RowMap(values=dict(k_vals)),
            seeds=RowMap(values=dict(seed_vals)),
        )
        base = FamilySpec(family, ctx, params)
        if _sound_params(base, table):
            out.append((base, quality))
            out.extend(
                (FamilySpec(family, ctx, v), quality)
                for v in _row_extensions(params, family, ctx)
                if _sound_params(FamilySpec(family, ctx, v), table)
            )
            break
    return out


def _sound_params(spec: FamilySpec, table: CoeffTable) -> bool:
    return _sound(spec, False, table)


def _row_extensions(params: RowFamilyParams, family: str, ctx: AlgebraContext):
    """Progression-shaped alternatives that extend the visible rows."""
    rows = sorted(params.rows.elements)
    if len(rows) < 3:
        return
    k_vals = params.k.values
    seed_vals = params.seeds.values
    step = rows[1] - rows[0]
    if all(b - a == step for a, b in zip(rows, rows[1:])):
        k0, k1 = k_vals[rows[0]], k_vals[rows[1]]
        kstep = k1 - k0
        s0, s1 = seed_vals[rows[0]], seed_vals[rows[1]]
        sstep = s1 - s0
        if all(k_vals[rows[j]] == k0 + kstep * j for j in range(len(rows))) and all(
            seed_vals[rows[j]] == s0 + sstep * j for j in range(len(rows))
        ):
            yield RowFamilyParams(
                r=params.r, c=params.c, delta=params.delta,
                rows=IndexSet(progressions=((rows[0], step),)),
                k=RowMap(per_progression=((k0, kstep),)),
                seeds=RowMap(per_progression=((s0, sstep),)),
            )
        if family == RB_I and step == 1:
            # full-integer-range pattern: row starts on the zeta bound
            if all(k_vals[i] == zeta(params.r, i, ctx) for i in rows) and len(set(seed_vals.values())) == 1:
                if rows[0] < 0 <= rows[-1]:
                    yield RowFamilyParams(
                        r=params.r, c=params.c, delta=params.delta,
                        rows=IndexSet(progressions=((0, 1), (-1, -1))),
                        k=RowMap(rule="zeta"),
                        seeds=RowMap(default=s0),
                    )
    if family == RB_II and all(b - a == step for a, b in zip(rows, rows[1:])):
        # nu-rule variant: constant zero row starts (one at nu(0) on row 0)
        if all(k_vals[i] == nu(i, ctx) for i in rows) and len(set(seed_vals.values())) == 1:
            yield RowFamilyParams(
                r=params.r, c=params.c, delta=params.delta,
                rows=IndexSet(progressions=((rows[0], step),)),
                k=RowMap(rule="nu"),
                seeds=RowMap(default=seed_vals[rows[0]]),
            )


def _fit_idsupp(table: CoeffTable) -> list[tuple[FamilySpec, str]]:
    ctx = table.ctx
    entries = table.nonzero_items()
    if any(t.mono != z for z, t in entries):
        return []
    out: list[tuple[FamilySpec, str]] = []
    first = entries[0][0]
    g = math.gcd(first.n, first.m)
    # single ray through the lowest-degree point
    seed = entries[0][1].coeff
    ray = IdSuppRayParams(dir_x=first.n, dir_y=first.m, seed=seed)
    spec = FamilySpec(RB_IDSUPP, ctx, ray)
    if _sound_params(spec, table):
        out.append((spec, "exact" if len(entries) > 1 else "partial"))
    # residue grid: anchored at the least axis support points
    xs = [z.n for z, _ in entries if z.m == 0]
    ys = [z.m for z, _ in entries if z.n == 0]
    if xs and ys:
        k1, k2 = min(xs), min(ys)
        alpha1 = table.coefficient(Monomial(k1, 0))
        alpha2 = table.coefficient(Monomial(0, k2))
        d = math.gcd(k1, k2)
        for b in range(1, d + 1):
            if d % b:
                continue
            for a in range(0, d):
                if a % (d // b):
                    continue
                grid = IdSuppGridParams(k1=k1, k2=k2, a=a, b=b, d=d, alpha1=alpha1, alpha2=alpha2)
                spec = FamilySpec(RB_IDSUPP, ctx, grid)
                if _sound_params(spec, table):
                    out.append((spec, "exact" if len(entries) > 2 else "partial"))
    return out


def _fit_translation(table: CoeffTable, p_x: int, p_y: int) -> list[tuple[FamilySpec, str]]:
    """IIIA / IIIB0 / IIIB+ (both the averaging and RB readings) for the
    translation map by (p_x, p_y) with p_x > 0."""
    ctx = table.ctx
    entries = table.nonzero_items()
    rows = _rows_by(entries, lambda z: (z.m, z.n))
    try:
        row_fit = fit_progression(rows.keys())
        fits = {row: fit_progression(positions) for row, positions in rows.items()}
    except NotAProgression:
        return []
    unit = all(t.coeff == 1 for _, t in entries)
    out: list[tuple[FamilySpec, str]] = []

    # single-ray family: one support point per row
    if all(f.kind == "singleton" for f in fits.values()):
        c = row_fit.offset
        deltas = [row_fit.gap] if row_fit.kind == "progression" else [
            dd for dd in range(c + p_y, max(c, 1) - 1, -1) if (c + p_y) % dd == 0
        ]
        k = fits[c].offset
        for delta in deltas:
            quality = "exact" if row_fit.kind == "progression" and len(rows) > 2 else "partial"
            for fam, params in (
                (AVG_IIIA, CaseIIIAParams(p_x=p_x, p_y=p_y, k=k, c=c, delta=delta)),
                (RB_IIIA, CaseIIIAParams(p_x=p_x, p_y=p_y, k=k, c=c, delta=delta,
                                         seed=rows[c][k])),
            ):
                if fam == AVG_IIIA and not unit:
                    continue
                spec = FamilySpec(fam, ctx, params)
                if _sound_params(spec, table):
                    out.append((spec, quality))
            if out:
                break

    # grid families need a gap shared by the rows
    gap_x = _common_gap(fits)
    if gap_x is None:
        return out
    k_tilde = {row: fits[row].offset for row in rows}

    if p_y == 0 and row_fit.kind == "progression" and row_fit.offset == 0:
        c = row_fit.gap
        visible = sorted(rows)
        ks = [k_tilde[v * c] for v in range(len(visible)) if v * c in k_tilde]
        if len(ks) == len(visible) and len(ks) >= 2:
            k0, k1 = ks[0], ks[1]
            sigma_prefix = []
            ok = True
            for s in range(1, len(ks) - 1):
                num = k1 + p_x - (ks[s + 1] - ks[s])
                if num % gap_x or num < 0:
                    ok = False
                    break
                sigma_prefix.append(num // gap_x)
            if ok and (k1 + p_x) % gap_x == 0:
                sigma = NatSeq(prefix=tuple(sigma_prefix), tail=(k1 + p_x) // gap_x, start=1)
                quality = "exact" if len(ks) >= 3 else "partial"
                for fam, params in (
                    (AVG_IIIB0, CaseIIIB0Params(p_x=p_x, c=c, delta=gap_x, k0=k0, k1=k1, sigma=sigma)),
                    (RB_IIIB0, CaseIIIB0Params(
                        p_x=p_x, c=c, delta=gap_x, k0=k0, k1=k1, sigma=sigma,
                        seed0=rows[0][k0], seed1=rows[c][k1])),
                ):
                    if fam == AVG_IIIB0 and not unit:
                        continue
                    spec = FamilySpec(fam, ctx, params)
                    if _sound_params(spec, table):
                        out.append((spec, quality))

    if p_y >= 1 and row_fit.kind == "progression":
        c_y, delta_y = row_fit.offset, row_fit.gap
        if (c_y + p_y) % delta_y == 0:
            fitted = _fit_iiibp(table, rows, k_tilde, p_x, p_y, c_y, delta_y, gap_x, unit)
            out.extend(fitted)
    return out


def _fit_iiibp(table, rows, k_tilde, p_x, p_y, c_y, delta_y, delta_x, unit):
    ctx = table.ctx
    r_y = (c_y + p_y) // delta_y
    visible = sorted(rows)
    ks = [k_tilde.get(c_y + delta_y * l) for l in range(len(visible))]
    if any(v is None for v in ks) or len(ks) < r_y + 2:
        return []
    k0 = ks[0]
    if (k0 + p_x) % delta_x:
        return []
    # block recurrence pins sigma0 on the visible range
    sigma0_prefix = []
    for l in range(len(ks) - r_y):
        num = k0 + ks[l] + p_x - ks[l + r_y]
        if num % delta_x or num < 0:
            return []
        sigma0_prefix.append(num // delta_x)
    if not sigma0_prefix:
        return []
    # tau values pin sigma1 via the triangular system of row offsets
    sigma1 = []
    if r_y > 1:
        tau = []
        for j in range(r_y):
            num = (r_y + j) * k0 + j * p_x - r_y * ks[j]
            if num % delta_x or num < 0:
                return []
            tau.append(num // delta_x)
        xi00 = sigma0_prefix[0]
        total = tau[1] - xi00  # sum of xi_{0,s+1} - xi_{1,s} over s = 1..r_y-1
        diffs = []
        for j in range(1, r_y - 1):
            num = xi00 + total - (tau[j + 1] - tau[j])
            if num % r_y:
                return []
            diffs.append(num // r_y)
        diffs.append(total - sum(diffs))

        def sigma0_at(s):
            return sigma0_prefix[s] if s < len(sigma0_prefix) else (k0 + p_x) // delta_x

        for s in range(1, r_y):
            v = sigma0_at(s + 1) - diffs[s - 1]
            if v < 0:
                return []
            sigma1.append(v)
    sigma0 = NatSeq(prefix=tuple(sigma0_prefix), tail=(k0 + p_x) // delta_x, start=0)
    c_x = min(k_tilde.values())
    if (c_x + p_x) % delta_x:
        return []
    common = dict(
        p_x=p_x, p_y=p_y, c_x=c_x, c_y=c_y, r_x=(c_x + p_x) // delta_x, r_y=r_y,
        delta_x=delta_x, delta_y=delta_y, k0=k0, sigma0=sigma0, sigma1=tuple(sigma1),
    )
    quality = "exact" if len(ks) >= 2 * r_y + 1 else "partial"
    out = []
    for fam, extra in (
        (AVG_IIIBP, {}),
        (RB_IIIBP, dict(seed00=rows[c_y][k0],
                        seed10=rows[c_y].get(k0 + delta_x))),
    ):
        if fam == AVG_IIIBP and not unit:
            continue
        if fam == RB_IIIBP and extra["seed10"] is None:
            continue
        spec = FamilySpec(fam, ctx, CaseIIIBPlusParams(**common, **extra))
        if _sound_params(spec, table):
            out.append((spec, quality))
    return out


def _fit_full_support(table: CoeffTable, p_x: int, p_y: int) -> list[tuple[FamilySpec, str]]:
    """Full-support translation (coefficient 1 everywhere) is the plain AVG-III form."""
    ctx = table.ctx
    expected = set(admissible_monomials(ctx, table.coverage_degree))
    if {z for z, _ in table.nonzero_items()} != expected:
        return []
    spec = FamilySpec(AVG_III, ctx, AvgShiftParams(p_x=p_x, p_y=p_y))
    return [(spec, "exact")] if _sound_params(spec, table) else []


# ---------------------------------------------------------------------------
# main entry points
# ---------------------------------------------------------------------------


def _classify_oriented(table: CoeffTable) -> list[tuple[FamilySpec, str]]:
    entries = table.nonzero_items()
    found: list[tuple[FamilySpec, str]] = []
    ctx = table.ctx

    if all(t.mono == Monomial(0, 0) for _, t in entries):
        spec = FamilySpec(AVG_IV, ctx, AvgConstParams())
        if _sound_params(spec, table):
            found.append((spec, "exact"))

    for r, c, quality in _fit_shape_ii(entries):
        avg = FamilySpec(AVG_II, ctx, AvgLineParams(r=r, c=c))
        if _sound_params(avg, table):
            found.append((avg, quality))
        found.extend(_fit_row_family(table, RB_II, r, c, quality))

    for r, c, quality in _fit_shape_i(entries):
        avg = FamilySpec(AVG_I, ctx, AvgLineParams(r=r, c=c))
        if _sound_params(avg, table):
            found.append((avg, quality))
        found.extend(_fit_row_family(table, RB_I, r, c, quality))

    shift = _fit_shape_iii(entries)
    if shift is not None:
        p_x, p_y = shift
        if p_x == 0 and p_y == 0:
            found.extend(_fit_idsupp(table))
        elif p_x >= 1:
            found.extend(_fit_full_support(table, p_x, p_y))
            found.extend(_fit_translation(table, p_x, p_y))
    return found


def _zero_result(table: CoeffTable) -> ClassificationResult:
    ctx = table.ctx
    vacuous = []
    for family in (RB_II, RB_I):
        spec = FamilySpec(family, ctx, RowFamilyParams(
            r=1, c=1, delta=1, rows=IndexSet.empty(), k=RowMap(), seeds=RowMap()))
        vacuous.append(Candidate(spec, False, "exact", table.coverage_degree))
    return ClassificationResult(candidates=tuple(vacuous), zero=True)


def classify(table: CoeffTable, coverage_degree: int | None = None) -> ClassificationResult:
    """All family specs whose rebuilt table equals the input exactly.

    Raises Unclassifiable when the (nonzero) table matches no family.
    """
    if coverage_degree is not None and coverage_degree != table.coverage_degree:
        table = CoeffTable(table.ctx, coverage_degree, {
            z: t for z, t in table.rows.items() if z.degree <= coverage_degree
        })
    if not table.rows:
        return _zero_result(table)

    seen: set[tuple] = set()
    candidates: list[Candidate] = []
    for mirrored, oriented in ((False, table), (True, table.swapped())):
        for spec, quality in _classify_oriented(oriented):
            if mirrored and not _sound(spec, True, table):
                continue
            key = (spec.family, mirrored, repr(spec.to_json()))
            if key in seen:
                continue
            seen.add(key)
            candidates.append(Candidate(spec, mirrored, quality, table.coverage_degree))
    if not candidates:
        raise Unclassifiable("no classified family reproduces this table")
    order = {fam: i for i, fam in enumerate((
        AVG_I, AVG_II, AVG_III, AVG_IV, AVG_IIIA, AVG_IIIB0, AVG_IIIBP,
        RB_II, RB_I, RB_IDSUPP, RB_IIIA, RB_IIIB0, RB_IIIBP))}
    candidates.sort(key=lambda c: (order[c.spec.family], c.mirrored))
    return ClassificationResult(candidates=tuple(candidates))


def round_trip(spec: FamilySpec, coverage_degree: int) -> CheckReport:
    """Build, truncate, classify, and demand a candidate that rebuilds the
    truncation exactly."""
    validate_family_params(spec)
    table = _build_operator(spec).truncate(coverage_degree)
    checked = len(admissible_monomials(spec.ctx, coverage_degree))
    try:
        result = classify(table)
    except Unclassifiable:
        return CheckReport.from_sweep(
            [Witness(inputs=("unclassifiable",), lhs=spec.family, rhs=None)], checked)
    for cand in result.candidates:
        if rebuild_table(cand.spec, coverage_degree, cand.mirrored) == table:
            return CheckReport.from_sweep([], checked)
    return CheckReport.from_sweep(
        [Witness(inputs=("no candidate rebuilds the table",), lhs=spec.family, rhs=result.families())],
        checked)
