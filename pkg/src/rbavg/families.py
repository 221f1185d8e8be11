"""Parameter records, validators and builders for the classified operator
families on F[x,y] and F0[x,y].

Averaging families assign coefficient 1 on a structured support:

* AVG-I    T(x^n y^m) = x^{r(m+c)} y^{m+c} on every admissible monomial;
* AVG-II   T(x^n y^m) = y^{rn+m+c} on every admissible monomial;
* AVG-III  T(x^n y^m) = x^{n+p_x} y^{m+p_y} on every admissible monomial;
* AVG-IV   T(x^n y^m) = 1 (only the zero operator on the non-unital algebra);
* AVG-IIIA   translation by (p_x, p_y) supported on a single ray;
* AVG-IIIB0  translation with p_y = 0 supported on a grid of rows y = c*v;
* AVG-IIIB+  translation with p_x, p_y > 0 supported on a full grid.

RB families put the closed-form coefficients of the product recurrences on
the same supports:

* RB-II      rows indexed by the x-exponent, output y^{m+rn+c};
* RB-I       rows indexed by n - r*m, output x^{r(m+c)} y^{m+c};
* RB-IDSUPP  identity-support operators (single ray or residue grid);
* RB-IIIA / RB-IIIB0 / RB-IIIB+  translation families.

Validation is strict: it enforces exactly the parameter conditions under
which the built operator satisfies its defining identity at *every* degree.
These conditions are the solvability windows of the underlying recurrences
plus support-closure conditions (no admissible monomial below the first
support point of a row on that row's residue, and row offsets below the row
gap).  Printed constraint lists elsewhere are necessary but not sufficient;
the validators here close the gap, and `family_table(..., validate=False)`
remains available to evaluate the raw closed forms for boundary studies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from .algebra import (
    AlgebraContext,
    Monomial,
    NON_UNITAL,
    UNITAL,
    nu,
    rational_from_str,
    rational_to_str,
)
from .errors import DegenerateDenominator, InvalidParams, UnknownPreset
from .operators import CoeffTable, MonomialOperator, Term, ZERO_TERM, term
from .recurrences import (
    KSeqAdditiveParams,
    KSeqShiftedParams,
    k_additive_values,
    k_closed_additive,
    k_closed_shifted,
    k_shifted_values,
)
from .sequences import IndexSet, NatSeq, RowMap

AVG_I = "AVG-I"
AVG_II = "AVG-II"
AVG_III = "AVG-III"
AVG_IV = "AVG-IV"
AVG_IIIA = "AVG-IIIA"
AVG_IIIB0 = "AVG-IIIB0"
AVG_IIIBP = "AVG-IIIB+"
RB_II = "RB-II"
RB_I = "RB-I"
RB_IDSUPP = "RB-IDSUPP"
RB_IIIA = "RB-IIIA"
RB_IIIB0 = "RB-IIIB0"
RB_IIIBP = "RB-IIIB+"

AVERAGING_FAMILIES = (AVG_I, AVG_II, AVG_III, AVG_IV, AVG_IIIA, AVG_IIIB0, AVG_IIIBP)
RB_FAMILIES = (RB_II, RB_I, RB_IDSUPP, RB_IIIA, RB_IIIB0, RB_IIIBP)

# mirror pairs under conjugation by the x/y swap share one canonical family
PROGRESSION_VALIDATION_CAP = 10_000


def zeta(r: int, i: int, ctx: AlgebraContext) -> int:
    """Least admissible row position for the x^{r(m+c)} y^{m+c} family.

    For i < 0 this is the least l with r*l + i >= 0 and (r+1)*l + i >= nu(0),
    i.e. -floor(min(i/r, (i - nu(0)) / (r + 1))).
    """
    if i > 0:
        return 0
    if i == 0:
        return nu(0, ctx)
    if r == 0:
        raise InvalidParams("negative row index requires r > 0", index=i)
    v = min(Fraction(i, r), Fraction(i - nu(0, ctx), r + 1))
    return -math.floor(v)


def _require(cond: bool, message: str, *, constraint: str | None = None, index=None) -> None:
    if not cond:
        raise InvalidParams(message, constraint=constraint, index=index)


def _fraction(v) -> Fraction:
    return Fraction(v)


# ---------------------------------------------------------------------------
# parameter records
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AvgLineParams:
    """Forms with full support whose output depends on one input exponent."""

    r: int
    c: int

    def to_json(self) -> dict:
        return {"r": self.r, "c": self.c}

    @staticmethod
    def from_json(data: Mapping) -> "AvgLineParams":
        return AvgLineParams(r=int(data["r"]), c=int(data["c"]))


@dataclass(frozen=True)
class AvgShiftParams:
    """Full-support translation by (p_x, p_y)."""

    p_x: int
    p_y: int

    def to_json(self) -> dict:
        return {"p_x": self.p_x, "p_y": self.p_y}

    @staticmethod
    def from_json(data: Mapping) -> "AvgShiftParams":
        return AvgShiftParams(p_x=int(data["p_x"]), p_y=int(data["p_y"]))


@dataclass(frozen=True)
class AvgConstParams:
    """Constant-output form; the zero operator on the non-unital algebra."""

    def to_json(self) -> dict:
        return {}

    @staticmethod
    def from_json(data: Mapping) -> "AvgConstParams":
        return AvgConstParams()


@dataclass(frozen=True)
class RowFamilyParams:
    """Row-structured family: support rows carry one arithmetic progression
    each, all sharing one gap `delta`; `k` maps a row to its first support
    position, `seeds` to the coefficient there."""

    r: int
    c: int
    delta: int
    rows: IndexSet
    k: RowMap
    seeds: RowMap

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "c": self.c,
            "delta": self.delta,
            "rows": self.rows.to_json(),
            "k": self.k.to_json(),
            "seeds": self.seeds.to_json(fraction_values=True),
        }

    @staticmethod
    def from_json(data: Mapping) -> "RowFamilyParams":
        return RowFamilyParams(
            r=int(data["r"]),
            c=int(data["c"]),
            delta=int(data["delta"]),
            rows=IndexSet.from_json(data["rows"]),
            k=RowMap.from_json(data["k"]),
            seeds=RowMap.from_json(data["seeds"], fraction_values=True),
        )


@dataclass(frozen=True)
class IdSuppRayParams:
    """Identity-support family on the ray {a * (dir_x, dir_y) : a >= 1}."""

    dir_x: int
    dir_y: int
    seed: Fraction

    def to_json(self) -> dict:
        return {"variant": "single-ray", "dir": [self.dir_x, self.dir_y], "seed": rational_to_str(self.seed)}

    @staticmethod
    def from_json(data: Mapping) -> "IdSuppRayParams":
        dx, dy = data["dir"]
        return IdSuppRayParams(dir_x=int(dx), dir_y=int(dy), seed=rational_from_str(data["seed"]))


@dataclass(frozen=True)
class IdSuppGridParams:
    """Identity-support family on the residue grid generated by
    (k1/b, k2*a/d) in Z_{k1} x Z_{k2}; alpha1, alpha2 sit at (k1, 0), (0, k2)."""

    k1: int
    k2: int
    a: int
    b: int
    d: int
    alpha1: Fraction
    alpha2: Fraction

    def to_json(self) -> dict:
        return {
            "variant": "two-generator",
            "k1": self.k1,
            "k2": self.k2,
            "a": self.a,
            "b": self.b,
            "d": self.d,
            "alpha1": rational_to_str(self.alpha1),
            "alpha2": rational_to_str(self.alpha2),
        }

    @staticmethod
    def from_json(data: Mapping) -> "IdSuppGridParams":
        return IdSuppGridParams(
            k1=int(data["k1"]),
            k2=int(data["k2"]),
            a=int(data["a"]),
            b=int(data["b"]),
            d=int(data["d"]),
            alpha1=rational_from_str(data["alpha1"]),
            alpha2=rational_from_str(data["alpha2"]),
        )


@dataclass(frozen=True)
class CaseIIIAParams:
    """Single-ray translation family: support (k + e*s, c + delta*s) with
    e = (k + p_x) * delta / (c + p_y)."""

    p_x: int
    p_y: int
    k: int
    c: int
    delta: int
    seed: Fraction | None = None

    def to_json(self) -> dict:
        data = {"p_x": self.p_x, "p_y": self.p_y, "k": self.k, "c": self.c, "delta": self.delta}
        if self.seed is not None:
            data["seed"] = rational_to_str(self.seed)
        return data

    @staticmethod
    def from_json(data: Mapping) -> "CaseIIIAParams":
        return CaseIIIAParams(
            p_x=int(data["p_x"]),
            p_y=int(data["p_y"]),
            k=int(data["k"]),
            c=int(data["c"]),
            delta=int(data["delta"]),
            seed=rational_from_str(data["seed"]) if "seed" in data else None,
        )

    @property
    def ray_step_x(self) -> int:
        return (self.k + self.p_x) * self.delta // (self.c + self.p_y)

    @property
    def row_count(self) -> int:
        return (self.c + self.p_y) // self.delta


@dataclass(frozen=True)
class CaseIIIB0Params:
    """Grid translation family with p_y = 0: rows y = c*v starting at k_v,
    gap delta; k_v derives from the additive index recurrence with
    increments sigma."""

    p_x: int
    c: int
    delta: int
    k0: int
    k1: int
    sigma: NatSeq  # sigma_s, s >= 1
    seed0: Fraction | None = None  # coefficient at (k0, 0)
    seed1: Fraction | None = None  # coefficient at (k1, c)

    def to_json(self) -> dict:
        data = {
            "p_x": self.p_x,
            "c": self.c,
            "delta": self.delta,
            "k0": self.k0,
            "k1": self.k1,
            "sigma": self.sigma.to_json(),
        }
        if self.seed0 is not None:
            data["seed0"] = rational_to_str(self.seed0)
        if self.seed1 is not None:
            data["seed1"] = rational_to_str(self.seed1)
        return data

    @staticmethod
    def from_json(data: Mapping) -> "CaseIIIB0Params":
        return CaseIIIB0Params(
            p_x=int(data["p_x"]),
            c=int(data["c"]),
            delta=int(data["delta"]),
            k0=int(data["k0"]),
            k1=int(data["k1"]),
            sigma=NatSeq.from_json(data["sigma"], start=1),
            seed0=rational_from_str(data["seed0"]) if "seed0" in data else None,
            seed1=rational_from_str(data["seed1"]) if "seed1" in data else None,
        )

    @property
    def ray_count(self) -> int:
        return (self.k0 + self.p_x) // self.delta


@dataclass(frozen=True)
class CaseIIIBPlusParams:
    """Grid translation family with p_x, p_y > 0: rows y = c_y + delta_y*v
    starting at k_v with gap delta_x; k_v derives from the shifted index
    recurrence with increment data sigma0/sigma1."""

    p_x: int
    p_y: int
    c_x: int
    c_y: int
    r_x: int
    r_y: int
    delta_x: int
    delta_y: int
    k0: int
    sigma0: NatSeq  # sigma_{0,s}, s >= 0
    sigma1: tuple[int, ...] = ()  # sigma_{1,s}, 1 <= s <= r_y - 1
    seed00: Fraction | None = None  # coefficient at (k0, c_y)
    seed10: Fraction | None = None  # coefficient at (k0 + delta_x, c_y)

    def to_json(self) -> dict:
        data = {
            "p_x": self.p_x,
            "p_y": self.p_y,
            "c_x": self.c_x,
            "c_y": self.c_y,
            "r_x": self.r_x,
            "r_y": self.r_y,
            "delta_x": self.delta_x,
            "delta_y": self.delta_y,
            "k0": self.k0,
            "sigma0": self.sigma0.to_json(),
            "sigma1": list(self.sigma1),
        }
        if self.seed00 is not None:
            data["seed00"] = rational_to_str(self.seed00)
        if self.seed10 is not None:
            data["seed10"] = rational_to_str(self.seed10)
        return data

    @staticmethod
    def from_json(data: Mapping) -> "CaseIIIBPlusParams":
        return CaseIIIBPlusParams(
            p_x=int(data["p_x"]),
            p_y=int(data["p_y"]),
            c_x=int(data["c_x"]),
            c_y=int(data["c_y"]),
            r_x=int(data["r_x"]),
            r_y=int(data["r_y"]),
            delta_x=int(data["delta_x"]),
            delta_y=int(data["delta_y"]),
            k0=int(data["k0"]),
            sigma0=NatSeq.from_json(data["sigma0"], start=0),
            sigma1=tuple(int(v) for v in data.get("sigma1", ())),
            seed00=rational_from_str(data["seed00"]) if "seed00" in data else None,
            seed10=rational_from_str(data["seed10"]) if "seed10" in data else None,
        )


_PARAM_TYPES = {
    AVG_I: AvgLineParams,
    AVG_II: AvgLineParams,
    AVG_III: AvgShiftParams,
    AVG_IV: AvgConstParams,
    AVG_IIIA: CaseIIIAParams,
    AVG_IIIB0: CaseIIIB0Params,
    AVG_IIIBP: CaseIIIBPlusParams,
    RB_II: RowFamilyParams,
    RB_I: RowFamilyParams,
    RB_IIIA: CaseIIIAParams,
    RB_IIIB0: CaseIIIB0Params,
    RB_IIIBP: CaseIIIBPlusParams,
}


@dataclass(frozen=True)
class FamilySpec:
    family: str
    ctx: AlgebraContext
    params: object

    def to_json(self) -> dict:
        return {"family": self.family, "ctx": self.ctx.to_json(), "params": self.params.to_json()}

    @staticmethod
    def from_json(data: Mapping) -> "FamilySpec":
        family = data["family"]
        ctx = AlgebraContext.from_json(data["ctx"])
        pdata = data["params"]
        if family == RB_IDSUPP:
            cls = IdSuppRayParams if pdata.get("variant") == "single-ray" else IdSuppGridParams
        else:
            try:
                cls = _PARAM_TYPES[family]
            except KeyError:
                raise InvalidParams(f"unknown family tag {family!r}")
        return FamilySpec(family=family, ctx=ctx, params=cls.from_json(pdata))


# ---------------------------------------------------------------------------
# row-family (RB-II / RB-I) validation
# ---------------------------------------------------------------------------


def _row_tools(spec: FamilySpec):
    """(d_fn, tau_fn, k_rule_fn, rule_name) for a row family."""
    params = spec.params
    ctx = spec.ctx
    if spec.family == RB_II:
        d_fn = lambda i: params.r * i + params.c
        tau_fn = lambda i: nu(i, ctx)
        rule_name = "nu"
        k_rule = lambda i: nu(i, ctx)
    else:
        d_fn = lambda i: params.c
        tau_fn = lambda i: zeta(params.r, i, ctx)
        rule_name = "zeta"
        k_rule = lambda i: zeta(params.r, i, ctx)
    return d_fn, tau_fn, k_rule, rule_name


def _check_row(i: int, k: int, seed: Fraction, tau: int, d: int, delta: int) -> None:
    _require(k >= tau, f"row {i}: first position {k} below domain start {tau}",
             constraint="k >= tau", index=i)
    _require(k - tau < delta, f"row {i}: delta {delta} <= k - tau = {k - tau}",
             constraint="k - tau < delta", index=i)
    _require(delta <= k + d, f"row {i}: delta {delta} > k + d = {k + d}",
             constraint="delta <= k + d", index=i)
    _require((k + d) % delta == 0, f"row {i}: delta {delta} does not divide k + d = {k + d}",
             constraint="delta | k + d", index=i)
    _require(seed != 0, f"row {i}: seed must be nonzero", constraint="seed != 0", index=i)


def _progression_k_source(params: RowFamilyParams, p_idx: int, rule_name: str):
    """('affine', base, step) | ('rule',) | ('const', v) for generic members."""
    kmap = params.k
    if p_idx < len(kmap.per_progression):
        base, step = kmap.per_progression[p_idx]
        return ("affine", int(base), int(step))
    if kmap.rule is not None:
        _require(kmap.rule == rule_name, f"k rule {kmap.rule!r} not usable here",
                 constraint=f"k rule == {rule_name}")
        return ("rule",)
    if kmap.default is not None:
        return ("const", int(kmap.default))
    raise InvalidParams(f"no k values for progression {p_idx}", index=p_idx)


def _progression_seed_roots(params: RowFamilyParams, p_idx: int, override_js) -> None:
    """Seeds along a progression must be nonzero at every member; members with
    explicit overrides are checked row by row instead."""
    smap = params.seeds
    _require(smap.rule is None, "seed rules are not supported", constraint="seed rule")
    if p_idx < len(smap.per_progression):
        base, step = (_fraction(v) for v in smap.per_progression[p_idx])
        if step == 0:
            _require(base != 0, f"progression {p_idx}: seed is identically zero", index=p_idx)
        else:
            j_root = -base / step
            if j_root.denominator == 1 and j_root >= 0 and int(j_root) not in override_js:
                raise InvalidParams(
                    f"progression {p_idx}: seed vanishes at member offset {int(j_root)}",
                    constraint="seed != 0", index=int(j_root),
                )
    elif smap.default is not None:
        _require(_fraction(smap.default) != 0, "default seed must be nonzero", constraint="seed != 0")
    else:
        raise InvalidParams(f"no seeds for progression {p_idx}", index=p_idx)


def _validate_row_family(spec: FamilySpec) -> None:
    params: RowFamilyParams = spec.params
    ctx = spec.ctx
    _require(params.r >= 0 and params.c >= 0, "r and c must be natural")
    _require(params.delta >= 1, "delta must be positive")
    d_fn, tau_fn, k_rule, rule_name = _row_tools(spec)
    rows = params.rows
    rows.check_disjoint()
    delta = params.delta

    def k_at(i: int) -> int:
        return int(params.k.value(i, rows, k_rule))

    def seed_at(i: int) -> Fraction:
        return _fraction(params.seeds.value(i, rows))

    def check_member(i: int) -> None:
        _check_row(i, k_at(i), seed_at(i), tau_fn(i), d_fn(i), delta)

    if spec.family == RB_II:
        for e in sorted(rows.elements):
            _require(e >= 0, f"row {e} must be natural", index=e)
    else:
        if params.r == 0:
            for e in sorted(rows.elements):
                _require(e >= 0, f"row {e} < 0 impossible when r = 0", index=e)

    for e in sorted(rows.elements):
        check_member(e)

    for p_idx, (first, step) in enumerate(rows.progressions):
        if spec.family == RB_II or params.r == 0:
            _require(step > 0 and first >= 0,
                     f"progression ({first}, {step}) leaves the natural rows",
                     constraint="rows natural", index=p_idx)
        override_js = set()
        for i in set(params.k.values) | set(params.seeds.values):
            pos = rows.progression_position(i)
            if pos is not None and pos[0] == p_idx:
                override_js.add(pos[1])

        source = _progression_k_source(params, p_idx, rule_name)
        explicit_js = set(override_js) | {0, 1}

        if step > 0:
            # finitely many members have i <= 0; beyond them tau == 0 and the
            # remaining conditions on the affine data are closed-form
            if first <= 0:
                explicit_js.update(range(0, (-first) // step + 1))
            if source[0] == "affine" and source[2] != 0:
                raise InvalidParams(
                    f"progression {p_idx}: affine k with slope {source[2]} leaves the"
                    " solvability window",
                    constraint="k bounded", index=p_idx)
            k_gen = 0 if source[0] == "rule" else int(source[1])
            _require(0 <= k_gen < delta,
                     f"progression {p_idx}: generic k = {k_gen} outside [0, {delta})",
                     constraint="k - tau < delta", index=p_idx)
            # delta <= k + d and delta | k + d on the generic members: d is
            # affine along the progression with increment r*step (0 in the
            # constant-shift family), so two divisibilities settle all rows
            j0 = 0
            while j0 in explicit_js or first + step * j0 <= 0:
                j0 += 1
            i0 = first + step * j0
            d_inc = params.r * step if spec.family == RB_II else 0
            _require(delta <= k_gen + d_fn(i0),
                     f"progression {p_idx}: delta > k + d at row {i0}", index=i0)
            _require((k_gen + d_fn(i0)) % delta == 0,
                     f"progression {p_idx}: delta does not divide k + d at row {i0}", index=i0)
            _require(d_inc % delta == 0,
                     f"progression {p_idx}: delta does not divide the row increment {d_inc}",
                     constraint="delta | r*step", index=p_idx)
            for j in sorted(explicit_js):
                check_member(first + step * j)
        else:
            # descending rows (RB-I only): past the branch cut the row-start
            # bound advances by exactly zinc every `period` steps, so checking
            # two full periods beyond the cut plus closed-form slope and
            # divisibility conditions covers every member
            r = params.r
            threshold = -(r + 1) if not ctx.unital else -1
            j_cut = max(0, math.ceil((first - threshold) / (-step)))
            period = r // math.gcd(r, -step)
            zinc = (-step) * period // r
            j_top = j_cut + 2 * period + 1
            _require(j_top <= PROGRESSION_VALIDATION_CAP,
                     f"progression {p_idx} too steep to validate", index=p_idx)
            if source[0] == "affine":
                _require(source[2] * period == zinc,
                         f"progression {p_idx}: k slope {source[2]} does not track the"
                         f" row-start bound (needs {zinc}/{period} per step)",
                         constraint="k slope", index=p_idx)
                _require(source[2] % delta == 0 and (source[1] + params.c) % delta == 0,
                         f"progression {p_idx}: delta does not divide every k + c",
                         constraint="delta | k + c", index=p_idx)
            elif source[0] == "const":
                raise InvalidParams(
                    f"progression {p_idx}: constant k cannot track the row-start bound",
                    constraint="k slope", index=p_idx)
            else:  # rule: the bound itself; residues repeat with the period
                _require(zinc % delta == 0,
                         f"progression {p_idx}: delta does not divide the periodic"
                         f" k increment {zinc}",
                         constraint="delta | k increment", index=p_idx)
            for j in sorted(set(range(j_top + 1)) | override_js):
                check_member(first + step * j)

        _progression_seed_roots(params, p_idx, override_js)


# ---------------------------------------------------------------------------
# translation-family validation
# ---------------------------------------------------------------------------


def _validate_iiia(spec: FamilySpec, rb: bool) -> None:
    p: CaseIIIAParams = spec.params
    ctx = spec.ctx
    nu0 = nu(0, ctx)
    _require(p.p_x >= 1, "p_x must be positive", constraint="p_x > 0")
    _require(p.p_y >= 0 and p.delta >= 1, "p_y natural, delta positive")
    _require(p.k >= nu0 and p.c >= nu0, f"k and c must be >= nu(0) = {nu0}",
             constraint="k, c >= nu(0)")
    _require(p.c <= p.delta <= p.c + p.p_y,
             f"need c <= delta <= c + p_y, got c={p.c}, delta={p.delta}, p_y={p.p_y}",
             constraint="c <= delta <= c + p_y")
    _require((p.c + p.p_y) % p.delta == 0, f"delta {p.delta} must divide c + p_y = {p.c + p.p_y}",
             constraint="delta | c + p_y")
    _require(((p.k + p.p_x) * p.delta) % (p.c + p.p_y) == 0,
             "support x-step (k + p_x) * delta / (c + p_y) must be integral",
             constraint="integral x-step")
    # support closure: with c == delta the point (k - e, 0) must not be an
    # admissible monomial, else pairing it with a support point breaks the identity
    if p.c == p.delta:
        e = p.ray_step_x
        _require(p.k - e < nu0,
                 f"support closure fails: ({p.k - e}, 0) sits below the ray",
                 constraint="c < delta or k < e + nu(0)")
    if rb:
        _require(p.seed is not None and p.seed != 0, "seed must be a nonzero rational",
                 constraint="seed != 0")


def _sigma_prefix_sums(sigma: NatSeq, r_head: int, upto: int) -> list[int]:
    """S[v] = r_head + sum_{s=1}^{v-1} sigma_s  (S[0] = 0, S[1] = r_head)."""
    sums = [0, r_head]
    for s in range(1, upto):
        v = sigma.at(s)
        if v < 0:
            raise InvalidParams(f"sigma_{s} = {v} is negative", index=s)
        sums.append(sums[-1] + v)
    return sums


def _validate_iiib0(spec: FamilySpec, rb: bool) -> None:
    p: CaseIIIB0Params = spec.params
    ctx = spec.ctx
    nu0 = nu(0, ctx)
    _require(p.p_x >= 1 and p.c >= 1 and p.delta >= 1, "need p_x, c, delta positive")
    _require(p.k0 >= nu0 and p.k1 >= 0, "k0 >= nu(0) and k1 natural")
    _require(p.k0 - nu0 < p.delta, f"delta {p.delta} <= k0 - nu(0) = {p.k0 - nu0}",
             constraint="k0 - nu(0) < delta")
    _require(p.delta <= p.k0 + p.p_x, f"delta {p.delta} > k0 + p_x = {p.k0 + p.p_x}",
             constraint="delta <= k0 + p_x")
    _require((p.k0 + p.p_x) % p.delta == 0, f"delta {p.delta} must divide k0 + p_x",
             constraint="delta | k0 + p_x")
    _require(p.sigma.start == 1, "sigma is indexed from 1")
    _require(p.sigma.tail is not None, "sigma needs a constant tail for a total operator",
             constraint="sigma tail")
    # bounded row starts force the tail increment k1 + p_x - delta*sigma to vanish
    _require(p.delta * p.sigma.tail == p.k1 + p.p_x,
             f"tail sigma = {p.sigma.tail} must equal (k1 + p_x)/delta",
             constraint="delta * sigma_tail == k1 + p_x")
    settle = max(p.sigma.prefix_end, 1) + 2
    # the full oracle also rejects any derived k or xi value leaving the
    # naturals; xi >= 0 is the support-closure condition for products
    k, _xi = k_closed_additive(
        KSeqAdditiveParams(p=p.p_x, delta=p.delta, k0=p.k0, k1=p.k1, xi1=p.sigma),
        2 * settle + 2,
    )
    for v in range(1, settle + 1):
        _require(k[v] < p.delta, f"row {v} starts at {k[v]} >= delta = {p.delta}",
                 constraint="k_v < delta", index=v)
    if rb:
        _require(p.seed0 not in (None, 0) and p.seed1 not in (None, 0),
                 "both seeds must be nonzero rationals", constraint="seeds != 0")
        _check_iiib0_denominators(p, settle)


def _check_iiib0_denominators(p: CaseIIIB0Params, settle: int) -> None:
    """Exact check that r*v*seed0 + (u + r - S(v))*seed1 never vanishes on the
    support (u, v >= 0): linear in u per row, eventually affine in v."""
    r = p.ray_count
    g0, g1 = _fraction(p.seed0), _fraction(p.seed1)
    sums = _sigma_prefix_sums(p.sigma, r, settle + 2)

    def u_root(v: int) -> Fraction:
        return -Fraction(r * v) * g0 / g1 - r + sums[v]

    for v in range(settle + 1):
        u = u_root(v)
        if u.denominator == 1 and u >= 0:
            raise DegenerateDenominator(
                f"coefficient denominator vanishes at (u, v) = ({u}, {v})", index=(int(u), v)
            )
    # past the prefix S(v) advances by sigma_tail, so the root moves affinely
    _scan_affine_roots(u_root(settle), p.sigma.tail - Fraction(r) * g0 / g1, settle, 1)


def _validate_iiibp(spec: FamilySpec, rb: bool) -> tuple[list[int], int]:
    p: CaseIIIBPlusParams = spec.params
    ctx = spec.ctx
    _require(p.p_x >= 1 and p.p_y >= 1, "p_x and p_y must be positive")
    _require(min(p.r_x, p.r_y, p.delta_x, p.delta_y) >= 1, "r and delta values must be positive")
    _require(p.c_x >= 0 and p.c_y >= 0, "c_x and c_y must be natural")
    _require(p.r_x * p.delta_x == p.c_x + p.p_x,
             f"need r_x * delta_x == c_x + p_x, got {p.r_x}*{p.delta_x} != {p.c_x + p.p_x}",
             constraint="r_x * delta_x == c_x + p_x")
    _require(p.r_y * p.delta_y == p.c_y + p.p_y,
             f"need r_y * delta_y == c_y + p_y, got {p.r_y}*{p.delta_y} != {p.c_y + p.p_y}",
             constraint="r_y * delta_y == c_y + p_y")
    # support closure in the y direction: a row residue below c_y would pair
    # a support point with an off-support monomial onto the support
    _require(p.c_y < p.delta_y, f"need c_y < delta_y, got c_y={p.c_y}, delta_y={p.delta_y}",
             constraint="c_y < delta_y")
    _require(p.k0 >= nu(p.c_y, ctx), f"k0 must be >= nu(c_y) = {nu(p.c_y, ctx)}",
             constraint="k0 >= nu(c_y)")
    _require(p.sigma0.start == 0, "sigma0 is indexed from 0")
    _require(len(p.sigma1) == p.r_y - 1, f"sigma1 must have r_y - 1 = {p.r_y - 1} entries")
    _require(p.sigma0.tail is not None, "sigma0 needs a constant tail for a total operator",
             constraint="sigma0 tail")
    _require((p.k0 + p.p_x) % p.delta_x == 0,
             f"delta_x {p.delta_x} must divide k0 + p_x = {p.k0 + p.p_x}",
             constraint="delta_x | k0 + p_x")
    _require(p.delta_x * p.sigma0.tail == p.k0 + p.p_x,
             f"tail sigma0 = {p.sigma0.tail} must equal (k0 + p_x)/delta_x",
             constraint="delta_x * sigma0_tail == k0 + p_x")
    settle = max(p.sigma0.prefix_end + 1, p.r_y) + 2 * p.r_y
    # the full oracle also rejects any derived k, tau or xi value leaving the
    # naturals; xi >= 0 is the support-closure condition for products
    k, _tau, _xi = k_closed_shifted(
        KSeqShiftedParams(r=p.r_y, p=p.p_x, delta=p.delta_x, k0=p.k0, xi0=p.sigma0, xi1=p.sigma1),
        2 * settle + 2 * p.r_y,
    )
    for l in range(settle + 1):
        floor_l = nu(p.c_y + p.delta_y * l, ctx)
        _require(k[l] >= floor_l, f"row {l} starts at {k[l]} < nu = {floor_l}",
                 constraint="k_l >= nu(row)", index=l)
        _require(k[l] - floor_l < p.delta_x,
                 f"row {l} starts at {k[l]} >= delta_x + nu = {p.delta_x + floor_l}",
                 constraint="k_l - nu(row) < delta_x", index=l)
    if rb:
        _require(p.seed00 not in (None, 0) and p.seed10 not in (None, 0),
                 "both seeds must be nonzero rationals", constraint="seeds != 0")
        _check_iiibp_denominators(p, k, settle)
    return k, settle


def _h_correction(p: CaseIIIBPlusParams, k: list[int], v: int) -> int:
    """H(v) = (((a+1)r_y + b)k0 + v*p_x - r_y*k_v)/delta_x for v = a*r_y + b."""
    a, b = divmod(v, p.r_y)
    num = ((a + 1) * p.r_y + b) * p.k0 + v * p.p_x - p.r_y * k[v]
    if num % p.delta_x != 0:
        raise InvalidParams(f"correction sum at row {v} is not integral", index=v)
    return num // p.delta_x


def _check_iiibp_denominators(p: CaseIIIBPlusParams, k: list[int], settle: int) -> None:
    """Exact nonvanishing of (r_y*u - H(v))/seed10 + (H(v) + v - r_y(u-1))/seed00
    over the support: linear in u per row; H is affine per row residue past
    the prefix."""
    g00, g10 = _fraction(p.seed00), _fraction(p.seed10)
    r_y = p.r_y
    coeff_u = r_y * (1 / g10 - 1 / g00)

    def const_part(v: int) -> Fraction:
        h = _h_correction(p, k, v)
        return -Fraction(h) / g10 + Fraction(h + v + r_y) / g00

    if coeff_u == 0:
        # denominator reduces to (v + r_y)/seed00 != 0 for v >= 0
        return
    for v in range(settle + 1):
        u = -const_part(v) / coeff_u
        if u.denominator == 1 and u >= 0:
            raise DegenerateDenominator(
                f"coefficient denominator vanishes at (u, v) = ({u}, {v})", index=(int(u), v)
            )
    # past settle, k_v is periodic in v with period r_y, so H(v + r_y) - H(v)
    # is the constant p_x*r_y/delta_x... handled per residue class exactly
    for b in range(r_y):
        v0 = settle - (settle - b) % r_y
        v1 = v0 + r_y
        h_inc = _h_correction(p, k, v1) - _h_correction(p, k, v0)
        u0 = -const_part(v0) / coeff_u
        u_inc = -(Fraction(-h_inc) / g10 + Fraction(h_inc + r_y) / g00) / coeff_u
        _scan_affine_roots(u0, u_inc, v0, r_y)


def _scan_affine_roots(u0: Fraction, u_inc: Fraction, v0: int, v_step: int) -> None:
    """Reject if u0 + t*u_inc is a natural number for some t >= 1; such a root
    marks a vanishing denominator at column u on row v0 + t*v_step.

    Integrality of u0 + t*u_inc is periodic in t with period dividing the lcm
    of the two denominators, and along one residue class u moves by a constant
    integer jump, so the scan is exact."""
    if u_inc == 0:
        if u0.denominator == 1 and u0 >= 0:
            raise DegenerateDenominator(
                f"coefficient denominator vanishes on every row past {v0}",
                index=(int(u0), v0 + v_step),
            )
        return
    m = u0.denominator * u_inc.denominator // math.gcd(u0.denominator, u_inc.denominator)
    for t in range(1, m + 1):
        u = u0 + u_inc * t
        if u.denominator != 1:
            continue
        if u_inc > 0:
            jump = int(u_inc * m)
            t_hit = t
            while u < 0:
                u += jump
                t_hit += m
            raise DegenerateDenominator(
                f"coefficient denominator vanishes at (u, v) = ({int(u)}, {v0 + t_hit * v_step})",
                index=(int(u), v0 + t_hit * v_step),
            )
        if u >= 0:  # decreasing class: the first member is the largest
            raise DegenerateDenominator(
                f"coefficient denominator vanishes at (u, v) = ({int(u)}, {v0 + t * v_step})",
                index=(int(u), v0 + t * v_step),
            )


# ---------------------------------------------------------------------------
# full-support averaging and identity-support validation
# ---------------------------------------------------------------------------


def _validate_idsupp(spec: FamilySpec) -> None:
    p = spec.params
    _require(not spec.ctx.unital, "identity-support operators are zero on the unital algebra",
             constraint="non-unital only")
    if isinstance(p, IdSuppRayParams):
        _require(p.dir_x >= 0 and p.dir_y >= 0 and p.dir_x + p.dir_y > 0,
                 "ray direction must be a nonzero pair of naturals")
        _require(p.seed != 0, "seed must be nonzero", constraint="seed != 0")
        return
    _require(isinstance(p, IdSuppGridParams), "unknown identity-support variant")
    _require(p.k1 >= 1 and p.k2 >= 1, "k1 and k2 must be positive")
    _require(p.d == math.gcd(p.k1, p.k2), f"d must equal gcd(k1, k2) = {math.gcd(p.k1, p.k2)}",
             constraint="d == gcd(k1,k2)")
    _require(0 <= p.a < p.d, f"need 0 <= a < d, got a={p.a}, d={p.d}", constraint="a < d")
    _require(p.b >= 1 and p.d % p.b == 0, f"b must divide d, got b={p.b}, d={p.d}",
             constraint="b | d")
    _require(p.a % (p.d // p.b) == 0, f"d/b = {p.d // p.b} must divide a = {p.a}",
             constraint="(d/b) | gcd(a,d)")
    _require(p.alpha1 != 0 and p.alpha2 != 0, "alpha1 and alpha2 must be nonzero")
    # the coefficient denominator (m/k2)a1 + (n/k1)a2 vanishes somewhere on the
    # support if and only if the seeds have opposite signs
    _require((p.alpha1 > 0) == (p.alpha2 > 0),
             "seeds of opposite signs make a support denominator vanish",
             constraint="sign(alpha1) == sign(alpha2)")


def _validate_avg_form(spec: FamilySpec) -> None:
    p = spec.params
    ctx = spec.ctx
    if spec.family == AVG_I:
        _require(p.r >= 0 and p.c >= nu(0, ctx), f"need r >= 0 and c >= nu(0) = {nu(0, ctx)}",
                 constraint="c >= nu(0)")
    elif spec.family == AVG_II:
        _require(p.r >= 0 and p.c >= 0, "r and c must be natural")
        if not ctx.unital:
            _require(p.r + p.c >= 1, "r = c = 0 maps x^n out of the non-unital algebra",
                     constraint="r + c >= 1")
    elif spec.family == AVG_III:
        _require(p.p_x >= 0 and p.p_y >= 0, "shifts must be natural")
    # AVG-IV: no parameters


# ---------------------------------------------------------------------------
# public validation entry point
# ---------------------------------------------------------------------------


def validate_family_params(spec: FamilySpec) -> None:
    """Raise InvalidParams (or DegenerateDenominator) unless `spec` builds an
    operator that satisfies its defining identity at every degree."""
    expected = _PARAM_TYPES.get(spec.family)
    if spec.family == RB_IDSUPP:
        _validate_idsupp(spec)
        return
    if expected is None:
        raise InvalidParams(f"unknown family tag {spec.family!r}")
    _require(isinstance(spec.params, expected),
             f"{spec.family} expects {expected.__name__} parameters")
    if spec.family in (AVG_I, AVG_II, AVG_III, AVG_IV):
        _validate_avg_form(spec)
    elif spec.family in (AVG_IIIA, RB_IIIA):
        _validate_iiia(spec, rb=spec.family == RB_IIIA)
    elif spec.family in (AVG_IIIB0, RB_IIIB0):
        _validate_iiib0(spec, rb=spec.family == RB_IIIB0)
    elif spec.family in (AVG_IIIBP, RB_IIIBP):
        _validate_iiibp(spec, rb=spec.family == RB_IIIBP)
    elif spec.family in (RB_II, RB_I):
        _validate_row_family(spec)


# ---------------------------------------------------------------------------
# evaluation rules
# ---------------------------------------------------------------------------


class _Grow:
    """Lazy closed-form sequence cache, regenerated geometrically."""

    def __init__(self, make: Callable[[int], list]):
        self._make = make
        self._vals: list = []

    def at(self, i: int):
        return self.through(i)[i]

    def through(self, i: int) -> list:
        if i >= len(self._vals):
            self._vals = self._make(max(8, 2 * i + 2))
        return self._vals


def _avg_support_rule(spec: FamilySpec) -> Callable[[Monomial], tuple[bool, Monomial]]:
    """(on_support, image monomial) for the translation families; shared by
    the averaging and RB builders."""
    p = spec.params
    if spec.family in (AVG_IIIA, RB_IIIA):
        e = p.ray_step_x

        def locate(z: Monomial):
            n, m = z
            if m < p.c or (m - p.c) % p.delta:
                return None
            s = (m - p.c) // p.delta
            if n != p.k + e * s:
                return None
            return (s, 0)

        shift = (p.p_x, p.p_y)
    elif spec.family in (AVG_IIIB0, RB_IIIB0):
        grow = _Grow(lambda upto: k_additive_values(
            KSeqAdditiveParams(p=p.p_x, delta=p.delta, k0=p.k0, k1=p.k1, xi1=p.sigma), upto))

        def locate(z: Monomial):
            n, m = z
            if m % p.c:
                return None
            v = m // p.c
            k_v = grow.at(v)
            if n < k_v or (n - k_v) % p.delta:
                return None
            return ((n - k_v) // p.delta, v)

        shift = (p.p_x, 0)
    else:  # AVG-IIIB+ / RB-IIIB+
        grow = _Grow(lambda upto: k_shifted_values(
            KSeqShiftedParams(r=p.r_y, p=p.p_x, delta=p.delta_x, k0=p.k0,
                              xi0=p.sigma0, xi1=p.sigma1), upto)[0])

        def locate(z: Monomial):
            n, m = z
            if m < p.c_y or (m - p.c_y) % p.delta_y:
                return None
            v = (m - p.c_y) // p.delta_y
            k_v = grow.at(v)
            if n < k_v or (n - k_v) % p.delta_x:
                return None
            return ((n - k_v) // p.delta_x, v)

        shift = (p.p_x, p.p_y)

    def rule(z: Monomial):
        uv = locate(z)
        if uv is None:
            return None
        return uv, Monomial(z.n + shift[0], z.m + shift[1])

    return rule


def _build_operator(spec: FamilySpec) -> MonomialOperator:
    """Evaluation rule for a spec; no validation here."""
    p = spec.params
    ctx = spec.ctx
    family = spec.family

    if family == AVG_I:
        return MonomialOperator.from_rule(
            ctx, lambda z: term(1, p.r * (z.m + p.c), z.m + p.c))
    if family == AVG_II:
        return MonomialOperator.from_rule(
            ctx, lambda z: term(1, 0, p.r * z.n + z.m + p.c))
    if family == AVG_III:
        return MonomialOperator.from_rule(
            ctx, lambda z: term(1, z.n + p.p_x, z.m + p.p_y))
    if family == AVG_IV:
        if ctx.unital:
            return MonomialOperator.from_rule(ctx, lambda z: term(1, 0, 0))
        return MonomialOperator.zero(ctx)

    if family in (AVG_IIIA, AVG_IIIB0, AVG_IIIBP):
        support = _avg_support_rule(spec)

        def avg_rule(z: Monomial) -> Term:
            hit = support(z)
            if hit is None:
                return ZERO_TERM
            return Term(Fraction(1), hit[1])

        return MonomialOperator.from_rule(ctx, avg_rule)

    if family == RB_II:
        return _row_family_operator(spec)
    if family == RB_I:
        return _row_family_operator(spec)
    if family == RB_IDSUPP:
        return _idsupp_operator(spec)
    if family in (RB_IIIA, RB_IIIB0, RB_IIIBP):
        return _translation_rb_operator(spec)
    raise InvalidParams(f"unknown family tag {family!r}")


def _row_family_operator(spec: FamilySpec) -> MonomialOperator:
    p: RowFamilyParams = spec.params
    ctx = spec.ctx
    _, _, k_rule, _ = _row_tools(spec)
    case_ii = spec.family == RB_II
    r, c, delta = p.r, p.c, p.delta

    def rule(z: Monomial) -> Term:
        n, m = z
        if case_ii:
            row, pos = n, m
        else:
            row, pos = n - r * m, m
        if row not in p.rows:
            return ZERO_TERM
        k = int(p.k.value(row, p.rows, k_rule))
        if pos < k or (pos - k) % delta:
            return ZERO_TERM
        seed = _fraction(p.seeds.value(row, p.rows))
        top = k + (r * row + c if case_ii else c)
        if top <= 0:
            return ZERO_TERM
        coeff = Fraction(top) * seed / (top + (pos - k))
        if case_ii:
            return term(coeff, 0, m + r * n + c)
        return term(coeff, r * (m + c), m + c)

    return MonomialOperator.from_rule(ctx, rule)


def _idsupp_operator(spec: FamilySpec) -> MonomialOperator:
    p = spec.params
    ctx = spec.ctx
    if isinstance(p, IdSuppRayParams):
        dx, dy = p.dir_x, p.dir_y

        def ray_rule(z: Monomial) -> Term:
            n, m = z
            if dx > 0:
                if n % dx or n == 0:
                    return ZERO_TERM
                a = n // dx
            else:
                if n != 0 or m == 0 or m % dy:
                    return ZERO_TERM
                a = m // dy
            if (n, m) != (a * dx, a * dy):
                return ZERO_TERM
            return term(p.seed / a, n, m)

        return MonomialOperator.from_rule(ctx, ray_rule)

    g1 = p.k1 // p.b
    g2 = p.k2 * p.a // p.d

    def grid_rule(z: Monomial) -> Term:
        n, m = z
        for l in range(p.b):
            if (n - g1 * l) % p.k1 == 0 and (m - g2 * l) % p.k2 == 0:
                den = Fraction(m, p.k2) * p.alpha1 + Fraction(n, p.k1) * p.alpha2
                if den == 0:
                    raise DegenerateDenominator(
                        f"denominator vanishes at {z}", index=(n, m))
                return Term(p.alpha1 * p.alpha2 / den, Monomial(n, m))
        return ZERO_TERM

    return MonomialOperator.from_rule(ctx, grid_rule)


def _translation_rb_operator(spec: FamilySpec) -> MonomialOperator:
    p = spec.params
    ctx = spec.ctx
    support = _avg_support_rule(spec)

    if spec.family == RB_IIIA:
        rows = p.row_count
        seed = _fraction(p.seed)

        def coeff_at(u: int, v: int) -> Fraction:
            return Fraction(rows) * seed / (rows + u)

    elif spec.family == RB_IIIB0:
        rays = p.ray_count
        g0, g1 = _fraction(p.seed0), _fraction(p.seed1)
        sums = _Grow(lambda upto: _sigma_prefix_sums(p.sigma, rays, upto + 2))

        def coeff_at(u: int, v: int) -> Fraction:
            den = Fraction(rays * v) * g0 + (u + rays - sums.at(v)) * g1
            if den == 0:
                raise DegenerateDenominator(f"denominator vanishes at (u, v) = ({u}, {v})",
                                            index=(u, v))
            return Fraction(rays) * g0 * g1 / den

    else:  # RB-IIIB+
        g00, g10 = _fraction(p.seed00), _fraction(p.seed10)
        grow = _Grow(lambda upto: k_shifted_values(
            KSeqShiftedParams(r=p.r_y, p=p.p_x, delta=p.delta_x, k0=p.k0,
                              xi0=p.sigma0, xi1=p.sigma1), upto)[0])

        def coeff_at(u: int, v: int) -> Fraction:
            h = _h_correction(p, grow.through(v), v)
            den = Fraction(p.r_y * u - h) / g10 + Fraction(h + v - p.r_y * (u - 1)) / g00
            if den == 0:
                raise DegenerateDenominator(f"denominator vanishes at (u, v) = ({u}, {v})",
                                            index=(u, v))
            return Fraction(p.r_y) / den

    def rule(z: Monomial) -> Term:
        hit = support(z)
        if hit is None:
            return ZERO_TERM
        (u, v), image = hit
        return Term(coeff_at(u, v), image)

    return MonomialOperator.from_rule(ctx, rule)


# ---------------------------------------------------------------------------
# public builders
# ---------------------------------------------------------------------------


def build_averaging(spec: FamilySpec) -> MonomialOperator:
    """Validated unit-coefficient averaging operator for an AVG-* spec."""
    _require(spec.family in AVERAGING_FAMILIES,
             f"{spec.family} is not an averaging family")
    validate_family_params(spec)
    return _build_operator(spec)


def build_rb(spec: FamilySpec) -> MonomialOperator:
    """Validated weight-zero RB operator for an RB-* spec."""
    _require(spec.family in RB_FAMILIES, f"{spec.family} is not an RB family")
    validate_family_params(spec)
    return _build_operator(spec)


def build(spec: FamilySpec) -> MonomialOperator:
    """Dispatch on the family kind."""
    if spec.family in AVERAGING_FAMILIES:
        return build_averaging(spec)
    return build_rb(spec)


def family_table(spec: FamilySpec, max_degree: int, validate: bool = True) -> CoeffTable:
    """Truncated coefficient table of a spec.

    With validate=False the raw closed forms are evaluated without the
    soundness checks, for studying boundary parameter choices; such tables
    need not pass the operator identity checks.
    """
    if validate:
        validate_family_params(spec)
    return _build_operator(spec).truncate(max_degree)


def support_lattice(spec: FamilySpec, x_max: int, y_max: int) -> list[tuple[int, int]]:
    """Lattice points (n, m) with nonzero coefficient, n <= x_max, m <= y_max."""
    validate_family_params(spec)
    op = _build_operator(spec)
    points = []
    for n in range(x_max + 1):
        for m in range(y_max + 1):
            z = Monomial(n, m)
            if not spec.ctx.admissible(z):
                continue
            if op.eval_term(z).coeff != 0:
                points.append((n, m))
    return points


def nonlinear_counterexample(ctx: AlgebraContext, modulus: int) -> MonomialOperator:
    """Averaging operator whose output degrees are not affine in the input:
    x^{a*q+b} y^m -> x^{a*q} y^{m+b} with q = modulus and b = n mod q."""
    if modulus < 2:
        raise InvalidParams("modulus must be >= 2 for a non-affine operator")

    def rule(z: Monomial) -> Term:
        b = z.n % modulus
        return term(1, z.n - b, z.m + b)

    return MonomialOperator.from_rule(ctx, rule)


# ---------------------------------------------------------------------------
# named presets: the all-coefficients-nonzero specializations
# ---------------------------------------------------------------------------

PRESET_NAMES = ("full-ii", "full-i", "full-idsupp", "full-iiib0", "full-iiib+")


def discussion_presets(
    name: str,
    ctx: AlgebraContext = UNITAL,
    *,
    r: int = 1,
    c: int = 1,
    p_x: int = 1,
    p_y: int = 1,
    seeds: tuple = (Fraction(1), Fraction(1)),
) -> FamilySpec:
    """Specs with no kernel monomial: every row present, gap 1, row starts at
    the degree floor."""
    s0, s1 = (Fraction(v) for v in seeds)
    if name == "full-ii":
        return FamilySpec(RB_II, ctx, RowFamilyParams(
            r=r, c=c, delta=1,
            rows=IndexSet(progressions=((0, 1),)),
            k=RowMap(rule="nu"),
            seeds=RowMap(default=s0),
        ))
    if name == "full-i":
        return FamilySpec(RB_I, ctx, RowFamilyParams(
            r=r, c=c, delta=1,
            rows=IndexSet(progressions=((0, 1), (-1, -1))),
            k=RowMap(rule="zeta"),
            seeds=RowMap(default=s0),
        ))
    if name == "full-idsupp":
        return FamilySpec(RB_IDSUPP, NON_UNITAL if ctx.unital else ctx, IdSuppGridParams(
            k1=1, k2=1, a=0, b=1, d=1, alpha1=s0, alpha2=s1,
        ))
    if name == "full-iiib0":
        nu0 = nu(0, ctx)
        return FamilySpec(RB_IIIB0, ctx, CaseIIIB0Params(
            p_x=p_x, c=1, delta=1, k0=nu0, k1=0,
            sigma=NatSeq(prefix=(), tail=p_x, start=1),
            seed0=s0, seed1=s1,
        ))
    if name == "full-iiib+":
        nu0 = nu(0, ctx)
        return FamilySpec(RB_IIIBP, ctx, CaseIIIBPlusParams(
            p_x=p_x, p_y=p_y, c_x=0, c_y=0, r_x=p_x, r_y=p_y,
            delta_x=1, delta_y=1, k0=nu0,
            sigma0=NatSeq(prefix=(p_x + 2 * nu0,), tail=p_x + nu0, start=0),
            sigma1=tuple(p_x for _ in range(p_y - 1)),
            seed00=s0, seed10=s1,
        ))
    raise UnknownPreset(f"unknown preset {name!r}; known: {', '.join(PRESET_NAMES)}")
