"""Command-line front end.

Exit codes: 0 success, 1 validation failure, 2 I/O or format error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from .complex_core import FieldSpec, build_filtered_complex, complex_from_json, values_from_json
from .diagram_metrics import aggregate_bottleneck
from .group_action import GroupAction, group_from_json, sample_from_json
from .persistence import PersistenceDiagram, compute_persistence, pbnf_rank
from .pseudo_distance import dG_upper_bound
from .scenarios import SCENARIOS
from .symmetric_chains import build_orbit_complex


class FormatError(Exception):
    pass


def _load_json(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _parse(path: str, parser, *args):
    data = _load_json(path)
    try:
        return parser(data, *args)
    except (ValueError, TypeError) as exc:
        raise FormatError(f"{path}: {exc}") from None


def _num(x: float):
    if math.isinf(x):
        return "inf"
    return float(f"{x:.12g}")


def _exact(x: float) -> str | None:
    """``p/q`` for dyadic values with a modest denominator."""
    if math.isinf(x):
        return None
    fr = Fraction(x)
    if fr.denominator <= 1 << 20:
        return str(fr)
    return None


def _rounded(obj):
    if isinstance(obj, float):
        return _num(obj)
    if isinstance(obj, dict):
        return {k: _rounded(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_rounded(v) for v in obj]
    return obj


def _emit(text: str, out: str | None) -> None:
    if out:
        try:
            Path(out).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise FormatError(f"{out}: {exc.strerror or exc}") from None
    else:
        sys.stdout.write(text)


def _degrees(spec: str | None):
    if spec is None:
        return None
    try:
        return sorted({int(x) for x in spec.split(",") if x.strip()})
    except ValueError:
        raise FormatError(f"--degrees: expected comma-separated integers, got {spec!r}") from None


def _load_filtered(args, values_path: str | None = None):
    cx, f = _parse(args.complex, complex_from_json)
    path = values_path or getattr(args, "values", None)
    if path:
        f = _parse(path, lambda d: values_from_json(d))
    if f is None:
        raise FormatError(f"{args.complex}: no 'values' field and no values file given")
    if len(f) != cx.vertex_count:
        raise FormatError(f"values: {len(f)} rows for {cx.vertex_count} vertices")
    return cx, build_filtered_complex(cx, f)


def _load_group(args, n: int) -> GroupAction:
    if not getattr(args, "group", None):
        return GroupAction.trivial(n)
    return _parse(args.group, group_from_json, n)


def _field(args) -> FieldSpec:
    try:
        return FieldSpec(int(args.field))
    except ValueError as exc:
        raise FormatError(f"--field: {exc}") from None


def cmd_compute(args) -> int:
    cx, fc = _load_filtered(args)
    H = _load_group(args, cx.vertex_count)
    fld = _field(args)
    occ = build_orbit_complex(fc, H, args.operator, fld)
    dgm = compute_persistence(occ, fld)
    degs = _degrees(args.degrees)
    if degs is not None:
        dgm = PersistenceDiagram(
            {n: dgm.finite(n) for n in degs}, {n: dgm.infinite(n) for n in degs}, dgm.meta
        )
    if args.format == "csv":
        _emit(dgm.to_csv(), args.out)
    else:
        _emit(json.dumps(_rounded(dgm.to_json()), indent=1, sort_keys=True) + "\n", args.out)
    return 0


def cmd_bottleneck(args) -> int:
    d1 = _parse(args.a, PersistenceDiagram.from_json)
    d2 = _parse(args.b, PersistenceDiagram.from_json)
    agg, results = aggregate_bottleneck(d1, d2, _degrees(args.degrees))
    out = {
        "degrees": [],
        "aggregate": _num(agg),
        "aggregate_exact": _exact(agg),
    }
    for n, res in results.items():
        entry = _rounded(res.to_json())
        entry["distance_exact"] = _exact(res.distance)
        out["degrees"].append(entry)
    _emit(json.dumps(out, indent=1, sort_keys=True) + "\n", args.out)
    return 0


def cmd_dg_bound(args) -> int:
    cx, fa = _load_filtered(args, args.values_a)
    _, fb = _load_filtered(args, args.values_b)
    sample = _parse(args.group_sample, sample_from_json, cx.vertex_count)
    res = dG_upper_bound(fa, fb, sample)
    out = _rounded(res.to_json())
    out["value_exact"] = _exact(res.value)
    out["note"] = "upper bound over the sample only"
    _emit(json.dumps(out, indent=1, sort_keys=True) + "\n", args.out)
    return 0


def _point(text: str, k: int, name: str):
    try:
        vals = [float(x) for x in text.split(",")]
    except ValueError:
        raise FormatError(f"--{name}: expected comma-separated numbers, got {text!r}") from None
    if len(vals) == 1:
        vals = vals * k
    if len(vals) != k:
        raise FormatError(f"--{name}: expected {k} components, got {len(vals)}")
    return vals


def cmd_pbnf(args) -> int:
    cx, fc = _load_filtered(args)
    H = _load_group(args, cx.vertex_count)
    fld = _field(args)
    occ = build_orbit_complex(fc, H, args.operator, fld)
    u = _point(args.u, fc.k, "u")
    v = _point(args.v, fc.k, "v")
    rank = pbnf_rank(occ, args.degree, u, v, fld)
    out = {"degree": args.degree, "u": _rounded(u), "v": _rounded(v), "rank": rank}
    _emit(json.dumps(out, sort_keys=True) + "\n", args.out)
    return 0


def cmd_scenario(args) -> int:
    if args.name == "circle-rooms":
        sc = SCENARIOS[args.name](args.n)
    else:
        sc = SCENARIOS[args.name](args.rings, args.longitudes)
    try:
        paths = sc.write(args.out)
    except OSError as exc:
        raise FormatError(f"{args.out}: {exc.strerror or exc}") from None
    for p in paths:
        print(p)
    return 0


def cmd_verify(args) -> int:
    from .acceptance import run_all

    results = run_all()
    width = max(len(r.name) for r in results)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<{width}}  {r.detail}")
    if args.report:
        payload = [{"criterion": r.name, "passed": r.passed, "detail": r.detail} for r in results]
        _emit(json.dumps(payload, indent=1) + "\n", args.report)
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ginvph", description="G-invariant persistent homology")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, group=True):
        p.add_argument("--complex", required=True, help="complex JSON")
        p.add_argument("--values", help="vertex values JSON (overrides the complex's own)")
        if group:
            p.add_argument("--group", help="group JSON (elements or generators)")
        p.add_argument("--field", default="2", help="prime field characteristic")
        p.add_argument("--operator", choices=("max", "mean"), default="max")
        p.add_argument("--out", help="write here instead of stdout")

    p = sub.add_parser("compute", help="persistence diagram of the orbit complex")
    common(p)
    p.add_argument("--degrees", help="comma-separated degrees to report")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("bottleneck", help="bottleneck distance between two diagram files")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--degrees")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bottleneck)

    p = sub.add_parser("dg-bound", help="sampled upper bound of the natural pseudo-distance")
    p.add_argument("--complex", required=True)
    p.add_argument("--values-a", required=True)
    p.add_argument("--values-b", required=True)
    p.add_argument("--group-sample", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_dg_bound)

    p = sub.add_parser("pbnf", help="persistent Betti number at one point (u, v)")
    common(p)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--u", required=True, help="comma-separated k-tuple")
    p.add_argument("--v", required=True, help="comma-separated k-tuple")
    p.set_defaults(func=cmd_pbnf)

    p = sub.add_parser("scenario", help="write a built-in scenario as JSON files")
    p.add_argument("name", choices=sorted(SCENARIOS))
    p.add_argument("--out", required=True)
    p.add_argument("--n", type=int, default=8, help="circle-rooms: half the polygon size")
    p.add_argument("--rings", type=int, default=2)
    p.add_argument("--longitudes", type=int, default=4)
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("verify", help="run the acceptance checks")
    p.add_argument("--report", help="write a JSON result table here")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"validation failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
