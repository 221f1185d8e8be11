"""Config-driven command line front end.

One JSON config file describes a run; a handful of flags override fields.
Commands:

  build       write the truncated coefficient table of a family spec
  verify      run an operator or coefficient-relation check, write the report
  classify    fit family specs to a table, write the result
  recurrence  run a closed-form generator and its verifier, write both
  lattice     write the support lattice points of a spec
  presets     list the named presets or emit one as a spec

Exit codes: 0 pass/success, 1 verification failure (witnesses written),
2 invalid parameters, 3 insufficient table coverage, 4 I/O or parse error.
Outputs are UTF-8 JSON with sorted keys, written atomically, and
byte-identical across repeated runs on identical inputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .algebra import AlgebraContext, rational_to_str
from .classify import classify, round_trip
from .errors import (
    CoverageError,
    DegenerateDenominator,
    InvalidParams,
    RbavgError,
    Unclassifiable,
    UnknownPreset,
    ZeroScalarError,
)
from .families import (
    AVERAGING_FAMILIES,
    FamilySpec,
    PRESET_NAMES,
    build,
    discussion_presets,
    family_table,
    support_lattice,
    validate_family_params,
)
from .operators import (
    CoeffTable,
    MonomialOperator,
    check_averaging,
    check_coefficient_relation,
    check_rb0,
    _pair_list,
)
from .recurrences import (
    KSeqAdditiveParams,
    KSeqShiftedParams,
    SingleRecParams,
    TwoIndexRecParams,
    closed_single,
    closed_two_index,
    k_closed_additive,
    k_closed_shifted,
    verify_k_recurrence,
    verify_single,
    verify_two_index,
)
from .report import CheckReport
from .sequences import IndexSet, NatSeq, RowMap

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INVALID = 2
EXIT_COVERAGE = 3
EXIT_IO = 4

DEFAULT_MAX_DEGREE = 10


def _write_json(path: Path, payload) -> None:
    """Atomic, deterministic JSON write (sorted keys, trailing newline)."""
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_json(path: str):
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)


def _ctx_from(config) -> AlgebraContext:
    return AlgebraContext.from_json(config.get("ctx", {"unital": True}))


def _spec_from(config) -> FamilySpec:
    if "spec" in config:
        return FamilySpec.from_json(config["spec"])
    if "spec_path" in config:
        return FamilySpec.from_json(_load_json(config["spec_path"]))
    raise InvalidParams("config needs a 'spec' object or 'spec_path'")


def _table_from(config) -> CoeffTable:
    if "table_path" in config:
        data = _load_json(config["table_path"])
    elif "table" in config:
        data = config["table"]
    else:
        raise InvalidParams("config needs a 'table' object or 'table_path'")
    ctx = AlgebraContext.from_json(data["ctx"])
    return CoeffTable.from_json_rows(ctx, int(data["coverage_degree"]), data["rows"])


def _table_payload(table: CoeffTable) -> dict:
    return {
        "ctx": table.ctx.to_json(),
        "coverage_degree": table.coverage_degree,
        "rows": table.to_json_rows(),
    }


def _out_path(config, args, default_name: str) -> Path:
    if args.out:
        return Path(args.out)
    return Path(config.get("out", default_name))


def _sharded_check(kind: str, payload: dict, max_degree: int, jobs: int) -> CheckReport:
    """Run check_rb0/check_averaging, optionally sharding the pair sweep
    across processes; shard reports merge order-independently."""
    op = _operator_from_payload(payload)
    checker = check_rb0 if kind == "rb0" else check_averaging
    if jobs <= 1:
        return checker(op, max_degree)
    n_pairs = len(_pair_list(op.ctx, max_degree))
    bounds = [(i * n_pairs // jobs, (i + 1) * n_pairs // jobs) for i in range(jobs)]
    report = CheckReport.from_sweep([], 0)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [
            pool.submit(_check_shard, kind, payload, max_degree, lo, hi)
            for lo, hi in bounds
        ]
        for fut in futures:
            report = report.merged(fut.result())
    return report


def _operator_from_payload(payload: dict) -> MonomialOperator:
    if payload["kind"] == "spec":
        return build(FamilySpec.from_json(payload["spec"]))
    ctx = AlgebraContext.from_json(payload["table"]["ctx"])
    table = CoeffTable.from_json_rows(
        ctx, int(payload["table"]["coverage_degree"]), payload["table"]["rows"])
    return MonomialOperator.from_table(table)


def _check_shard(kind: str, payload: dict, max_degree: int, lo: int, hi: int) -> CheckReport:
    op = _operator_from_payload(payload)
    checker = check_rb0 if kind == "rb0" else check_averaging
    return checker(op, max_degree, pair_range=(lo, hi))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _cmd_build(config, args) -> int:
    spec = _spec_from(config)
    max_degree = args.max_degree or int(config.get("max_degree", DEFAULT_MAX_DEGREE))
    table = family_table(spec, max_degree)
    _write_json(_out_path(config, args, "table.json"), _table_payload(table))
    return EXIT_PASS


def _cmd_verify(config, args) -> int:
    check = config.get("check", "rb0")
    max_degree = args.max_degree or int(config.get("max_degree", DEFAULT_MAX_DEGREE))
    if check in ("rb0", "averaging"):
        if "spec" in config or "spec_path" in config:
            spec = _spec_from(config)
            validate_family_params(spec)
            payload = {"kind": "spec", "spec": spec.to_json()}
        else:
            payload = {"kind": "table", "table": _table_payload(_table_from(config))}
        report = _sharded_check(check, payload, max_degree, args.jobs)
    elif check in ("case-ii", "case-i", "case-iii", "reciprocal"):
        table = _table_from(config)
        params = config.get("relation_params", {})
        report = check_coefficient_relation(
            table, check,
            r=int(params.get("r", 0)), c=int(params.get("c", 0)),
            p_x=int(params.get("p_x", 0)), p_y=int(params.get("p_y", 0)),
            max_index=int(config.get("verify_to", max_degree)),
        )
    else:
        raise InvalidParams(f"unknown check {check!r}")
    _write_json(_out_path(config, args, "report.json"), report.to_json())
    return EXIT_PASS if report.passed else EXIT_FAIL


def _cmd_classify(config, args) -> int:
    table = _table_from(config)
    try:
        result = classify(table)
        payload = result.to_json()
    except Unclassifiable as exc:
        payload = {"zero": False, "candidates": [], "unclassifiable": True, "reason": str(exc)}
    _write_json(_out_path(config, args, "result.json"), payload)
    return EXIT_PASS


def _cmd_recurrence(config, args) -> int:
    kind = config.get("kind", "single")
    params = config["params"]
    upto = int(config.get("upto", 60))
    verify_to = int(config.get("verify_to", upto))
    if kind == "single":
        rec = SingleRecParams(
            d=int(params["d"]), tau=int(params["tau"]), k=int(params["k"]),
            delta=int(params["delta"]), beta_k=_rat(params["beta_k"]))
        values = closed_single(rec, upto)
        report = verify_single(values, rec.d, rec.tau)
        payload = {"values": [rational_to_str(v) for v in values]}
    elif kind == "two-index":
        rec = TwoIndexRecParams(
            n_start=int(params.get("n_start", 0)),
            d_seq=NatSeq.from_json(params["d_seq"], start=int(params.get("n_start", 0))),
            tau_seq=NatSeq.from_json(params["tau_seq"], start=int(params.get("n_start", 0))),
            rows=IndexSet.from_json(params["rows"]),
            delta=int(params["delta"]),
            k_map=RowMap.from_json(params["k"]),
            seed_map=RowMap.from_json(params["seeds"], fraction_values=True),
        )
        values = closed_two_index(rec, upto)
        report = verify_two_index(values, rec.d_seq, rec.tau_seq, verify_to)
        payload = {"values": [
            [s, t, rational_to_str(v)] for (s, t), v in sorted(values.items()) if v != 0
        ]}
    elif kind == "k-additive":
        rec = KSeqAdditiveParams(
            p=int(params["p"]), delta=int(params["delta"]), k0=int(params["k0"]),
            k1=int(params["k1"]), xi1=NatSeq.from_json(params["xi1"], start=1))
        k, xi = k_closed_additive(rec, upto)
        report = verify_k_recurrence(k, xi, rec.p, rec.delta, 0, verify_to)
        payload = {"k": k}
    elif kind == "k-shifted":
        rec = KSeqShiftedParams(
            r=int(params["r"]), p=int(params["p"]), delta=int(params["delta"]),
            k0=int(params["k0"]), xi0=NatSeq.from_json(params["xi0"], start=0),
            xi1=tuple(int(v) for v in params.get("xi1", ())))
        k, tau, xi = k_closed_shifted(rec, upto)
        report = verify_k_recurrence(k, xi, rec.p, rec.delta, rec.r, verify_to)
        payload = {"k": k, "tau": tau}
    else:
        raise InvalidParams(f"unknown recurrence kind {kind!r}")
    payload["report"] = report.to_json()
    _write_json(_out_path(config, args, "recurrence.json"), payload)
    return EXIT_PASS if report.passed else EXIT_FAIL


def _cmd_lattice(config, args) -> int:
    spec = _spec_from(config)
    x_max = int(config.get("x_max", 20))
    y_max = int(config.get("y_max", 20))
    points = support_lattice(spec, x_max, y_max)
    _write_json(_out_path(config, args, "points.json"), {"points": [list(p) for p in points]})
    return EXIT_PASS


def _cmd_presets(config, args) -> int:
    name = config.get("name")
    if name is None:
        payload = {"presets": list(PRESET_NAMES)}
    else:
        ctx = _ctx_from(config)
        options = config.get("options", {})
        spec = discussion_presets(
            name, ctx,
            r=int(options.get("r", 1)), c=int(options.get("c", 1)),
            p_x=int(options.get("p_x", 1)), p_y=int(options.get("p_y", 1)),
            seeds=tuple(_rat(v) for v in options.get("seeds", ("1", "1"))),
        )
        payload = spec.to_json()
    _write_json(_out_path(config, args, "presets.json"), payload)
    return EXIT_PASS


def _rat(v):
    from .algebra import rational_from_str

    return rational_from_str(str(v))


_COMMANDS = {
    "build": _cmd_build,
    "verify": _cmd_verify,
    "classify": _cmd_classify,
    "recurrence": _cmd_recurrence,
    "lattice": _cmd_lattice,
    "presets": _cmd_presets,
}


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="rbavg",
        description="build, verify and classify monomial operators from a JSON config",
    )
    parser.add_argument("config", help="path to the JSON run config")
    parser.add_argument("--max-degree", type=int, default=None,
                        help="override the config's degree bound")
    parser.add_argument("--out", default=None, help="override the config's output path")
    parser.add_argument("--jobs", type=int, default=1,
                        help="worker processes for the pair sweeps")
    args = parser.parse_args(argv)

    try:
        config = _load_json(args.config)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO

    command = config.get("command")
    handler = _COMMANDS.get(command)
    if handler is None:
        print(f"error: unknown command {command!r}", file=sys.stderr)
        return EXIT_IO
    try:
        return handler(config, args)
    except (InvalidParams, DegenerateDenominator, ZeroScalarError, UnknownPreset) as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except CoverageError as exc:
        print(f"insufficient coverage: {exc}", file=sys.stderr)
        return EXIT_COVERAGE
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: {exc.__class__.__name__}: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
