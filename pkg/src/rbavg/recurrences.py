"""Closed-form generators and brute-force verifiers for the product
recurrences that underlie every operator family.

Three recurrence shapes appear, always over exact rationals:

* single sequence:   b_s * b_t = (b_s + b_t) * b_{s+t+d},  s, t >= tau;
* row family:        b^n_m * b^s_t = b^n_m * b^s_{m+t+d_n} + b^s_t * b^n_{m+t+d_s};
* index sequences:   k_{s+t+r} = k_s + k_t + p - delta * xi_{s,t}  (r = 0 is
  the additive case, r > 0 the shifted one).

Each generator evaluates the closed-form solution of its recurrence; the
matching verifier re-checks the defining relation instance by instance,
independently of how the values were produced.  Together they form the
two-route oracle that the test-suite leans on.

Nonzero solutions of the first two recurrences live on arithmetic
progressions: value (K * seed) / (K + delta * s) at the s-th support point,
where K = k + d is the first support index plus the shift.  Instances in
which every factor vanishes hold identically (both sides are zero products)
and are skipped by the verifiers without arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import CoverageError, InvalidParams
from .report import CheckReport, Witness
from .sequences import IndexSet, NatSeq, RowMap

__all__ = [
    "SingleRecParams",
    "TwoIndexRecParams",
    "KSeqAdditiveParams",
    "KSeqShiftedParams",
    "closed_single",
    "verify_single",
    "closed_two_index",
    "verify_two_index",
    "k_closed_additive",
    "k_closed_shifted",
    "verify_k_recurrence",
]


def _check_window(k: int, tau: int, delta: int, d: int, *, index=None) -> None:
    """Common solvability window: 0 <= k - tau < delta <= k + d, delta | k + d."""
    if k < tau:
        raise InvalidParams(f"k={k} below domain start tau={tau}", constraint="k >= tau", index=index)
    if not k - tau < delta:
        raise InvalidParams(f"delta={delta} <= k - tau = {k - tau}", constraint="k - tau < delta", index=index)
    if not delta <= k + d:
        raise InvalidParams(f"delta={delta} > k + d = {k + d}", constraint="delta <= k + d", index=index)
    if (k + d) % delta != 0:
        raise InvalidParams(f"delta={delta} does not divide k + d = {k + d}", constraint="delta | k + d", index=index)


@dataclass(frozen=True)
class SingleRecParams:
    """Parameters of a nonzero single-sequence solution."""

    d: int
    tau: int
    k: int
    delta: int
    beta_k: Fraction

    def validate(self) -> None:
        if min(self.d, self.tau, self.k) < 0 or self.delta < 1:
            raise InvalidParams("d, tau, k must be natural and delta positive")
        if self.beta_k == 0:
            raise InvalidParams("seed value must be nonzero", constraint="beta_k != 0")
        _check_window(self.k, self.tau, self.delta, self.d)


def closed_single(params: SingleRecParams, upto: int) -> list[Fraction]:
    """Values b_tau .. b_upto of the closed-form solution."""
    params.validate()
    k, delta, d = params.k, params.delta, params.d
    top = Fraction(k + d) * params.beta_k
    out: list[Fraction] = []
    for t in range(params.tau, upto + 1):
        if t >= k and (t - k) % delta == 0:
            out.append(top / (k + d + (t - k)))
        else:
            out.append(Fraction(0))
    return out


def verify_single(values: list[Fraction], d: int, tau: int) -> CheckReport:
    """Check b_s*b_t = (b_s+b_t)*b_{s+t+d} for all s, t >= tau with s+t+d in range.

    `values[i]` holds b_{tau+i}.  Instances with both factors zero hold
    identically and are skipped.
    """
    n_top = tau + len(values) - 1
    witnesses: list[Witness] = []
    checked = 0

    def at(i: int) -> Fraction:
        return values[i - tau]

    for s in range(tau, n_top + 1):
        for t in range(s, n_top + 1):
            w = s + t + d
            if w > n_top:
                break
            bs, bt = at(s), at(t)
            if bs == 0 and bt == 0:
                continue
            checked += 1
            lhs = bs * bt
            rhs = (bs + bt) * at(w)
            if lhs != rhs:
                witnesses.append(Witness(inputs=(s, t), lhs=lhs, rhs=rhs))
    return CheckReport.from_sweep(witnesses, checked)


@dataclass(frozen=True)
class TwoIndexRecParams:
    """Parameters of a row-family solution.

    Rows live at indices >= n_start.  `rows` marks the rows carrying a
    nonzero subsequence; `k_map` gives each such row its first support
    position and `seed_map` the value there.  All rows share one delta.
    """

    n_start: int
    d_seq: NatSeq
    tau_seq: NatSeq
    rows: IndexSet
    delta: int
    k_map: RowMap
    seed_map: RowMap

    def row_data(self, s: int) -> tuple[int, Fraction]:
        k = int(self.k_map.value(s, self.rows))
        seed = Fraction(self.seed_map.value(s, self.rows))
        if seed == 0:
            raise InvalidParams(f"seed at row {s} must be nonzero", index=s)
        _check_window(k, self.tau_seq.at(s), self.delta, self.d_seq.at(s), index=s)
        return k, seed


def closed_two_index(params: TwoIndexRecParams, upto: int) -> dict[tuple[int, int], Fraction]:
    """Dense value table {(row, position): value} for rows n_start..upto and
    positions tau_row..upto."""
    if params.delta < 1:
        raise InvalidParams("delta must be positive")
    for e in sorted(params.rows.elements):
        if e < params.n_start:
            raise InvalidParams(f"row {e} below n_start={params.n_start}", index=e)
    for first, step in params.rows.progressions:
        if step < 0 or first < params.n_start:
            raise InvalidParams(
                f"progression ({first}, {step}) leaves rows >= {params.n_start}",
                index=first,
            )
    values: dict[tuple[int, int], Fraction] = {}
    zero = Fraction(0)
    for s in range(params.n_start, upto + 1):
        tau_s = params.tau_seq.at(s)
        if s in params.rows:
            k, seed = params.row_data(s)
            top = Fraction(k + params.d_seq.at(s)) * seed
            base = k + params.d_seq.at(s)
            for t in range(tau_s, upto + 1):
                if t >= k and (t - k) % params.delta == 0:
                    values[(s, t)] = top / (base + (t - k))
                else:
                    values[(s, t)] = zero
        else:
            for t in range(tau_s, upto + 1):
                values[(s, t)] = zero
    return values


def verify_two_index(
    values: Mapping[tuple[int, int], Fraction],
    d_seq: NatSeq,
    tau_seq: NatSeq,
    n_limit: int,
) -> CheckReport:
    """Check b^n_m*b^s_t = b^n_m*b^s_{m+t+d_n} + b^s_t*b^n_{m+t+d_s} on all
    instances whose shifted positions stay <= n_limit.

    Rows are taken from the keys of `values`; a touched position missing from
    the mapping raises CoverageError.  Instances in which both base factors
    are zero, and row pairs in which one row is identically zero within
    range, hold identically and are skipped.
    """
    by_row: dict[int, dict[int, Fraction]] = {}
    for (s, t), v in values.items():
        by_row.setdefault(s, {})[t] = v
    support_rows = sorted(s for s, row in by_row.items() if any(v != 0 for v in row.values()))

    def lookup(s: int, t: int) -> Fraction:
        row = by_row.get(s)
        if row is None or t not in row:
            raise CoverageError(f"value at row {s}, position {t} not covered")
        return row[t]

    witnesses: list[Witness] = []
    checked = 0
    for i, n in enumerate(support_rows):
        d_n = d_seq.at(n)
        row_n = by_row[n]
        for s in support_rows[i:]:
            d_s = d_seq.at(s)
            row_s = by_row[s]
            d_max = max(d_n, d_s)
            t_all = sorted(row_s)
            t_nonzero = sorted(t for t, v in row_s.items() if v != 0)
            for m in sorted(row_n):
                a = row_n[m]
                for t in (t_all if a != 0 else t_nonzero):
                    if m + t + d_max > n_limit:
                        break
                    b = row_s[t]
                    checked += 1
                    lhs = a * b
                    rhs = a * lookup(s, m + t + d_n) + b * lookup(n, m + t + d_s)
                    if lhs != rhs:
                        witnesses.append(Witness(inputs=(n, m, s, t), lhs=lhs, rhs=rhs))
    return CheckReport.from_sweep(witnesses, checked)


@dataclass(frozen=True)
class KSeqAdditiveParams:
    """Free data of the additive index recurrence k_{s+t} = k_s + k_t + p - delta*xi_{s,t}."""

    p: int
    delta: int
    k0: int
    k1: int
    xi1: NatSeq  # xi_{1,s}, s >= 1

    def validate(self) -> None:
        if self.p < 1 or self.delta < 1:
            raise InvalidParams("p and delta must be positive")
        if self.k0 < 0 or self.k1 < 0:
            raise InvalidParams("k0, k1 must be natural")
        if (self.k0 + self.p) % self.delta != 0:
            raise InvalidParams(
                f"delta={self.delta} must divide k0 + p = {self.k0 + self.p}",
                constraint="delta | k0 + p",
            )
        if self.xi1.start != 1:
            raise InvalidParams("xi1 is indexed from 1")


def _xi1_sums(params: KSeqAdditiveParams, upto: int) -> list[int]:
    """Prefix sums of xi_{1,s}: sums[n] = sum_{s=1}^{n} xi_{1,s}."""
    sums = [0]
    for s in range(1, upto + 1):
        v = params.xi1.at(s)
        if v < 0:
            raise InvalidParams(f"xi_(1,{s}) = {v} is negative", index=(1, s))
        sums.append(sums[-1] + v)
    return sums


def k_additive_values(params: KSeqAdditiveParams, upto: int) -> list[int]:
    """k_0..k_upto of the additive recurrence; rejects negatives."""
    params.validate()
    sums = _xi1_sums(params, upto)
    k = [params.k0]
    for n in range(1, upto + 1):
        kn = n * params.k1 + (n - 1) * params.p - params.delta * sums[n - 1]
        if kn < 0:
            raise InvalidParams(f"derived k_{n} = {kn} is negative", index=n)
        k.append(kn)
    return k


def k_closed_additive(params: KSeqAdditiveParams, upto: int) -> tuple[list[int], dict[tuple[int, int], int]]:
    """k_0..k_upto plus xi on the axes and on every (u, v) with u + v <= upto.

    Rejects any parameter set whose derived k or xi values leave the
    naturals within the range.
    """
    k = k_additive_values(params, upto)
    p, delta = params.p, params.delta
    xi_axis = (params.k0 + p) // delta
    sums = _xi1_sums(params, upto)

    xi: dict[tuple[int, int], int] = {}
    for u in range(upto + 1):
        xi[(u, 0)] = xi_axis
        xi[(0, u)] = xi_axis
    for u in range(1, upto + 1):
        for v in range(1, upto + 1 - u):
            val = sums[u + v - 1] - sums[max(u, v) - 1] - sums[min(u, v) - 1]
            if val < 0:
                raise InvalidParams(f"derived xi_({u},{v}) = {val} is negative", index=(u, v))
            xi[(u, v)] = val
    return k, xi


@dataclass(frozen=True)
class KSeqShiftedParams:
    """Free data of the shifted recurrence k_{s+t+r} = k_s + k_t + p - delta*xi_{s,t}."""

    r: int
    p: int
    delta: int
    k0: int
    xi0: NatSeq  # xi_{0,s}, s >= 0
    xi1: tuple[int, ...] = ()  # xi_{1,s}, 1 <= s <= r-1

    def validate(self) -> None:
        if self.r < 1 or self.p < 1 or self.delta < 1:
            raise InvalidParams("r, p, delta must be positive")
        if self.k0 < 0:
            raise InvalidParams("k0 must be natural")
        if self.xi0.start != 0:
            raise InvalidParams("xi0 is indexed from 0")
        if len(self.xi1) != self.r - 1:
            raise InvalidParams(f"xi1 must have r - 1 = {self.r - 1} entries")
        if any(v < 0 for v in self.xi1):
            raise InvalidParams("xi1 values must be natural")


def _shifted_prep(params: KSeqShiftedParams):
    """Shared derived data: xi0 accessor, diff partial sums, tau list."""
    r = params.r

    def xi0(s: int) -> int:
        v = params.xi0.at(s)
        if v < 0:
            raise InvalidParams(f"xi_(0,{s}) = {v} is negative", index=(0, s))
        return v

    # diffs[s] = xi_{0,s+1} - xi_{1,s} for 1 <= s <= r-1; sd[j] = sum_{s=1}^{j-1} diffs[s]
    diffs = {s: xi0(s + 1) - params.xi1[s - 1] for s in range(1, r)}
    sd = [0] * (r + 1)
    for j in range(1, r + 1):
        sd[j] = sd[j - 1] + (diffs[j - 1] if j - 1 >= 1 else 0)

    tau = []
    for j in range(r):
        tj = j * xi0(0) + j * sd[r] - r * sd[j]
        if tj < 0:
            raise InvalidParams(f"derived tau_{j} = {tj} is negative", index=j)
        tau.append(tj)
    return xi0, sd, tau


def k_shifted_values(params: KSeqShiftedParams, upto: int) -> tuple[list[int], list[int]]:
    """(k_0..k_upto, tau_0..tau_{r-1}) of the shifted recurrence.

    Validates integrality (r divides every r*k value) and naturality.
    """
    params.validate()
    r, p, delta, k0 = params.r, params.p, params.delta, params.k0
    xi0, sd, tau = _shifted_prep(params)

    k = []
    acc = [0] * r  # running sum_{s=0}^{i-1} xi_{0, s*r+j} per residue j
    for idx in range(upto + 1):
        i, j = divmod(idx, r)
        num = ((i + 1) * r + j) * k0 + (i * r + j) * p - delta * (tau[j] + r * acc[j])
        if num % r != 0:
            raise InvalidParams(f"r = {r} does not divide r*k_{idx} = {num}", index=idx)
        if num < 0:
            raise InvalidParams(f"derived k_{idx} = {num}/{r} is negative", index=idx)
        k.append(num // r)
        if j == r - 1:
            for jj in range(r):
                acc[jj] += xi0(i * r + jj)
    return k, tau


def k_closed_shifted(
    params: KSeqShiftedParams, upto: int
) -> tuple[list[int], list[int], dict[tuple[int, int], int]]:
    """(k_0..k_upto, tau_0..tau_{r-1}, xi on pairs with u + v + r <= upto + r).

    Validates integrality (r divides every r*k value) and naturality of all
    derived k, tau and xi on the range.
    """
    k, tau = k_shifted_values(params, upto)
    r, delta = params.r, params.delta
    xi0, sd, _ = _shifted_prep(params)

    # xi0 partial sums along each residue class: xs(j, i) = sum_{s=0}^{i-1} xi_{0, s*r+j}
    def xs(j: int, i: int) -> int:
        return sum(xi0(s * r + j) for s in range(i))

    xi: dict[tuple[int, int], int] = {}
    top = max(upto - r, 0)
    for u in range(top + 1):
        for v in range(top + 1 - u):
            a, b = divmod(u, r)
            c, d = divmod(v, r)
            if b + d < r:
                val = (
                    sd[b] + sd[d] - sd[b + d]
                    + xs(b + d, a + c + 1) - xs(b, a) - xs(d, c)
                )
            else:
                val = (
                    sd[b] + sd[d] - sd[b + d - r]
                    + xs(b + d - r, a + c + 2) - xs(b, a) - xs(d, c)
                    - xi0(0) - sd[r]
                )
            if val < 0:
                raise InvalidParams(f"derived xi_({u},{v}) = {val} is negative", index=(u, v))
            xi[(u, v)] = val
    return k, tau, xi


def verify_k_recurrence(
    k: list[int],
    xi: Mapping[tuple[int, int], int],
    p: int,
    delta: int,
    r: int,
    n_limit: int,
) -> CheckReport:
    """Check k_{s+t+r} = k_s + k_t + p - delta*xi_{s,t} for all s + t + r <= n_limit."""
    if n_limit >= len(k):
        raise CoverageError(f"k covers indices up to {len(k) - 1} < {n_limit}")
    witnesses: list[Witness] = []
    checked = 0
    for s in range(n_limit + 1):
        for t in range(n_limit + 1 - r - s):
            if (s, t) not in xi:
                raise CoverageError(f"xi at ({s}, {t}) not covered")
            checked += 1
            lhs = k[s + t + r]
            rhs = k[s] + k[t] + p - delta * xi[(s, t)]
            if lhs != rhs:
                witnesses.append(Witness(inputs=(s, t), lhs=lhs, rhs=rhs))
    return CheckReport.from_sweep(witnesses, checked)
