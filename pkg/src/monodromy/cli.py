"""Command-line surface tying the modules into reproducible experiments.

Exit codes: 0 success, 2 validation error (bad flags or parameters),
3 assertion failure (a check that must hold was violated, e.g. a support
violation or a failed generation certificate).

Artifact JSON is deterministic for fixed flags and seeds; run metadata
(timestamp, wall time) lives under the "meta" key, which byte-level
comparisons are expected to strip.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

import numpy as np

__all__ = ["main", "build_parser"]

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_ASSERTION = 3


def _out_path(path: str | None):
    if path is None:
        return None
    base = os.environ.get("MONODROMY_OUTDIR", "")
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _emit(payload: dict, args, rows=None) -> None:
    """Write the artifact in the requested format; JSON is canonical."""
    path = _out_path(getattr(args, "output", None))
    fmt = getattr(args, "format", "json")
    if fmt == "json":
        text = json.dumps(payload, sort_keys=True, indent=1) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        for row in rows if rows is not None else _default_rows(payload):
            writer.writerow(row)
        text = buf.getvalue()
    else:
        text = _render_text(payload) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _default_rows(payload: dict):
    for k, v in sorted(payload.items()):
        yield [k, json.dumps(v, sort_keys=True)]


def _render_text(payload: dict) -> str:
    lines = []
    for k, v in sorted(payload.items()):
        if k == "meta":
            continue
        lines.append(f"{k}: {json.dumps(v, sort_keys=True)}")
    return "\n".join(lines)


def _meta(t0: float, args) -> dict:
    if getattr(args, "no_meta", False):
        return {}
    return {"meta": {"timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
                     "wall_time_s": round(time.time() - t0, 3)}}


# --------------------------------------------------------------------------
# groups


def _cmd_groups_order(args) -> int:
    from .groups import (GroupKind, bsgs_order, classical_order, hermitian_space,
                         linear_space, standard_generators, standard_symplectic_space)

    t0 = time.time()
    kind = GroupKind(args.kind)
    if kind is GroupKind.SL:
        space = linear_space(args.n, args.ell)
    elif kind is GroupKind.SP:
        space = standard_symplectic_space(args.n, args.ell)
    else:
        space = hermitian_space(args.n, args.ell)
    gens = standard_generators(kind, space)
    order = bsgs_order(gens, space)
    target = classical_order(kind, args.n, args.ell)
    payload = {"kind": args.kind, "n": args.n, "ell": args.ell,
               "order_bsgs": order, "order_formula": target,
               "equal": order == target}
    payload.update(_meta(t0, args))
    _emit(payload, args)
    return EXIT_OK if order == target else EXIT_ASSERTION


def _cmd_groups_verify(args) -> int:
    from .groups import GroupKind, verify_generation

    t0 = time.time()
    dims = tuple(int(x) for x in args.dims.split(","))
    if len(dims) != 3:
        raise ValueError("--dims needs three comma-separated integers")
    rep = verify_generation(GroupKind(args.kind), dims, args.ell)
    payload = rep.to_dict()
    payload.update(_meta(t0, args))
    _emit(payload, args)
    return EXIT_OK if rep.equal else EXIT_ASSERTION


def _cmd_groups_bruhat(args) -> int:
    import random

    from .bruhat import bruhat_decompose
    from .bsgs import GroupAtlas
    from .groups import _sl_generators

    t0 = time.time()
    atlas = GroupAtlas(_sl_generators(args.dim, args.ell), args.dim, args.ell)
    rng = random.Random(args.seed)
    failures = 0
    for _ in range(args.n):
        g = atlas.random_element(rng)
        f = bruhat_decompose(g, args.ell)
        if not np.array_equal(f.recompose(args.ell), g):
            failures += 1
    payload = {"dim": args.dim, "ell": args.ell, "n": args.n, "seed": args.seed,
               "failures": failures}
    payload.update(_meta(t0, args))
    _emit(payload, args)
    return EXIT_OK if failures == 0 else EXIT_ASSERTION


# --------------------------------------------------------------------------
# covers


def _cmd_covers_signatures(args) -> int:
    from .covers import enumerate_signatures, inertia_of_signature

    t0 = time.time()
    sigs = enumerate_signatures(args.g)
    payload = {
        "g": args.g,
        "signatures": [
            {"r": s.r, "s": s.s,
             "inertia": list(inertia_of_signature(s).counts)}
            for s in sigs
        ],
    }
    payload.update(_meta(t0, args))
    _emit(payload, args)
    return EXIT_OK


def _cmd_covers_degenerate(args) -> int:
    from .covers import DegenerationWitness, InertiaType, find_delta11

    t0 = time.time()
    if args.d == 2:
        if args.g is None:
            raise ValueError("--g is required for d=2")
        t = InertiaType(2, (2 * args.g + 2,))
    else:
        if args.d1 is None or args.d2 is None:
            raise ValueError("--d1 and --d2 are required for d=3")
        t = InertiaType(3, (args.d1, args.d2))
    res = find_delta11(t)
    if isinstance(res, DegenerationWitness):
        payload = {"d": args.d, "type": list(t.counts), "witness": res.to_dict()}
        payload.update(_meta(t0, args))
        _emit(payload, args)
        return EXIT_OK
    # outside the genus hypotheses: a validation refusal
    payload = {"d": args.d, "type": list(t.counts), "refused": res.reason}
    payload.update(_meta(t0, args))
    _emit(payload, args)
    return EXIT_VALIDATION


def _cmd_covers_sweep(args) -> int:
    from .covers import sweep_delta11

    t0 = time.time()
    records = sweep_delta11(args.d, args.g_max)
    payload = {"d": args.d, "g_max": args.g_max, "records": records}
    payload.update(_meta(t0, args))
    rows = [["g", "signature_or_type", "row", "gamma1", "gamma2", "gamma3"]]
    for r in records:
        w = r["witness"]
        rows.append([r["g"], r["signature"] or r["type"], w["row"],
                     w["gamma1"], w["gamma2"], w["gamma3"]])
    _emit(payload, args, rows=rows)
    return EXIT_OK


# --------------------------------------------------------------------------
# curves


def _family_from_args(args):
    from .stats import HyperFamily, TriFamily

    if args.family == "hyper":
        if args.g is None:
            raise ValueError("--g is required for the hyperelliptic family")
        return HyperFamily(args.g)
    if args.d1 is None or args.d2 is None:
        raise ValueError("--d1/--d2 are required for the trielliptic family")
    return TriFamily(args.d1, args.d2)


def _sample_curve(family, p: int, seed: int):
    from .curves import sample_hyper, sample_tri
    from .stats import HyperFamily

    if isinstance(family, HyperFamily):
        return sample_hyper(family.g, p, seed)
    return sample_tri(family.inertia, p, seed)


def _curve_record(curve, ell=None):
    from .curves import HyperCurve, lpoly, reduce_and_factor

    L = lpoly(curve)
    rec = {
        "p": curve.p,
        "genus": curve.g,
        "model": ({"branch": list(curve.branch)} if isinstance(curve, HyperCurve)
                  else {"a_points": list(curve.a_list), "b_points": list(curve.b_list)}),
        "counts": [LB for LB in _counts_of(curve)],
        "l_coefficients": list(L.coeffs),
    }
    if ell is not None:
        factors, irreducible = reduce_and_factor(L, ell)
        rec["ell"] = ell
        rec["charpoly_mod_ell"] = list(L.frobenius_charpoly_mod(ell))
        rec["factorization"] = [[list(f), m] for f, m in factors]
        rec["irreducible"] = irreducible
    return rec


def _counts_of(curve):
    from .curves import count_points

    return [count_points(curve, k) for k in range(1, curve.g + 1)]


def _cmd_curves_sample(args) -> int:
    t0 = time.time()
    family = _family_from_args(args)
    lines = []
    for i in range(args.count):
        curve = _sample_curve(family, args.p, args.seed + i)
        rec = _curve_record(curve, args.ell)
        rec["seed"] = args.seed + i
        lines.append(json.dumps(rec, sort_keys=True))
    text = "\n".join(lines) + "\n"
    path = _out_path(args.output)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_curves_lpoly(args) -> int:
    t0 = time.time()
    family = _family_from_args(args)
    curve = _sample_curve(family, args.p, args.seed)
    payload = _curve_record(curve, args.ell)
    payload["seed"] = args.seed
    payload.update(_meta(t0, args))
    _emit(payload, args)
    return EXIT_OK


# --------------------------------------------------------------------------
# monodromy statistics


def _cmd_mono_empirical(args) -> int:
    from .stats import empirical_histogram

    t0 = time.time()
    family = _family_from_args(args)
    hist = empirical_histogram(family, args.p, args.ell, args.n, args.seed,
                               workers=args.workers)
    payload = {"family": args.family, "p": args.p, "ell": args.ell,
               "n": args.n, "seed": args.seed}
    if args.family == "hyper":
        payload["g"] = args.g
    else:
        payload["d1"], payload["d2"] = args.d1, args.d2
    payload["histogram"] = hist.to_json_obj()
    payload.update(_meta(t0, args))
    _emit(payload, args, rows=list(hist.csv_rows()))
    return EXIT_OK


def _cmd_mono_theoretical(args) -> int:
    from .stats import SpTarget, SuTarget, theoretical_histogram

    t0 = time.time()
    kind = SpTarget(args.g) if args.kind == "sp" else SuTarget(args.g)
    mode = ("enumerate",) if args.mode == "enumerate" else ("sample", args.n, args.seed)
    if args.mode == "sample" and args.seed is None:
        raise ValueError("--seed is required in sample mode")
    hist = theoretical_histogram(kind, args.ell, args.m, mode)
    payload = {"kind": args.kind, "g": args.g, "ell": args.ell, "m": args.m,
               "mode": args.mode, "histogram": hist.to_json_obj()}
    payload.update(_meta(t0, args))
    _emit(payload, args, rows=list(hist.csv_rows()))
    return EXIT_OK


def _cmd_mono_compare(args) -> int:
    from .stats import CharPolyHistogram, compare

    t0 = time.time()

    def load(path):
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
        return CharPolyHistogram.from_json_obj(obj.get("histogram", obj))

    emp = load(args.empirical)
    theo = load(args.theoretical)
    report = compare(emp, theo)
    payload = {"empirical": args.empirical, "theoretical": args.theoretical}
    payload.update(report.to_dict())
    payload.update(_meta(t0, args))
    _emit(payload, args)
    if report.support_violations:
        return EXIT_ASSERTION
    return EXIT_OK


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monodromy",
        description="Finite classical groups, cyclic-cover combinatorics, and "
                    "Frobenius statistics for curve families over small fields.")
    parser.set_defaults(func=None)
    sub = parser.add_subparsers(dest="command")

    def add_common(p):
        p.add_argument("--output", "-o", help="output path (default stdout)")
        p.add_argument("--format", choices=("json", "csv", "text"), default="json")
        p.add_argument("--no-meta", action="store_true",
                       help="omit the timestamp/wall-time block")

    groups = sub.add_parser("groups", help="classical group computations")
    gsub = groups.add_subparsers(dest="subcommand")

    p = gsub.add_parser("order", help="BSGS order vs the classical formula")
    p.add_argument("--kind", choices=("sl", "sp", "su"), required=True)
    p.add_argument("--n", type=int, required=True,
                   help="rank parameter: n for SL/SU, g for Sp")
    p.add_argument("--ell", type=int, required=True)
    add_common(p)
    p.set_defaults(func=_cmd_groups_order)

    p = gsub.add_parser("verify-generation",
                        help="certify generation from two embedded subgroups")
    p.add_argument("--kind", choices=("sl", "sp", "su"), required=True)
    p.add_argument("--dims", required=True, help="three summand ranks, e.g. 1,1,1")
    p.add_argument("--ell", type=int, required=True)
    add_common(p)
    p.set_defaults(func=_cmd_groups_verify)

    p = gsub.add_parser("bruhat-selftest",
                        help="decompose/recompose seeded random elements")
    p.add_argument("--dim", type=int, default=4)
    p.add_argument("--ell", type=int, default=5)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--seed", type=int, required=True)
    add_common(p)
    p.set_defaults(func=_cmd_groups_bruhat)

    covers = sub.add_parser("covers", help="cyclic-cover combinatorics")
    csub = covers.add_subparsers(dest="subcommand")

    p = csub.add_parser("signatures", help="signatures realizable for a genus")
    p.add_argument("--g", type=int, required=True)
    add_common(p)
    p.set_defaults(func=_cmd_covers_signatures)

    p = csub.add_parser("degenerate", help="two-elliptic-tails witness for a type")
    p.add_argument("--d", type=int, choices=(2, 3), required=True)
    p.add_argument("--g", type=int, help="genus (d=2)")
    p.add_argument("--d1", type=int, help="count of 1-points (d=3)")
    p.add_argument("--d2", type=int, help="count of 2-points (d=3)")
    add_common(p)
    p.set_defaults(func=_cmd_covers_degenerate)

    p = csub.add_parser("sweep", help="degeneration witnesses over a genus range")
    p.add_argument("--d", type=int, choices=(2, 3), required=True)
    p.add_argument("--g-max", type=int, required=True)
    add_common(p)
    p.set_defaults(func=_cmd_covers_sweep)

    curves = sub.add_parser("curves", help="curve sampling and zeta data")
    cvsub = curves.add_subparsers(dest="subcommand")

    def add_family(p):
        p.add_argument("--family", choices=("hyper", "tri"), required=True)
        p.add_argument("--g", type=int, help="genus (hyper)")
        p.add_argument("--d1", type=int, help="count of 1-points (tri)")
        p.add_argument("--d2", type=int, help="count of 2-points (tri)")
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--seed", type=int, required=True)

    p = cvsub.add_parser("sample", help="sample curves to JSON lines")
    add_family(p)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--ell", type=int, help="also reduce and factor mod ell")
    p.add_argument("--output", "-o")
    p.set_defaults(func=_cmd_curves_sample, format="json", no_meta=True)

    p = cvsub.add_parser("lpoly", help="zeta numerator of one sampled curve")
    add_family(p)
    p.add_argument("--ell", type=int, help="also reduce and factor mod ell")
    add_common(p)
    p.set_defaults(func=_cmd_curves_lpoly)

    mono = sub.add_parser("mono", help="Frobenius statistics")
    msub = mono.add_subparsers(dest="subcommand")

    p = msub.add_parser("empirical", help="histogram over sampled curves")
    add_family(p)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    add_common(p)
    p.set_defaults(func=_cmd_mono_empirical)

    p = msub.add_parser("theoretical", help="histogram over the predicted coset")
    p.add_argument("--kind", choices=("sp", "su"), required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--m", type=int, required=True, help="similitude multiplier")
    p.add_argument("--mode", choices=("enumerate", "sample"), default="enumerate")
    p.add_argument("--n", type=int, help="sample count (sample mode)")
    p.add_argument("--seed", type=int, help="sample seed (sample mode)")
    add_common(p)
    p.set_defaults(func=_cmd_mono_theoretical)

    p = msub.add_parser("compare", help="compare two histogram files")
    p.add_argument("--empirical", required=True)
    p.add_argument("--theoretical", required=True)
    add_common(p)
    p.set_defaults(func=_cmd_mono_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.func is None:
        parser.print_help()
        return EXIT_VALIDATION
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
