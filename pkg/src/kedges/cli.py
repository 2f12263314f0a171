"""Command-line front end.

Subcommands:
  analyze           edge vector / halving lines / crossing number of a point file
  classify          per-transposition classification and the central-inequality report
  bounds            per-k lower-bound table for E_<=k(n)
  halving-bound     upper bound on the halving-line count
  cr-bound          crossing-number lower bound (table1 or section5 pipeline)
  cr-table          the section5-style table over a range of n
  tables            reproduce the published tables, optionally checking golden values
  construct         emit a construction (sr | polygon-center | cluster-polygon) as a point file
  verify            re-run the tightness audit for a construction (currently: sr)
  decompose3        search for a 3-decomposition witness of a point file
  selftest          verification suites (bounds | identities | central | constructions | all)

Exit codes: 0 success, 1 internal/assertion failure, 2 input error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from . import bounds as bnd
from . import golden
from .central import verify_central, classify as classify_records
from .circseq import halfperiod_from_points, read_halfperiod, validate_allowable
from .constructions import (
    SrConfig,
    build_cluster_polygon,
    build_polygon_center,
    build_sr,
    check_3decomposable,
    count_bichromatic_monochromatic,
    sr_expected_bichromatic,
    sr_expected_leq,
    sr_expected_monochromatic,
)
from .edgestats import pair_levels, summarize
from .errors import InputError, KedgesError
from .geom import read_points, write_points
from .rat import fmt
from .selftest import run_scope


def _json_print(obj):
    print(json.dumps(obj, indent=2))


# ---------------------------------------------------------------------------


def cmd_analyze(args) -> int:
    ps = read_points(args.file)
    rep = summarize(ps, jobs=args.jobs)
    _json_print(
        {
            "n": rep.n,
            "edge_vector": list(rep.edge_vector.counts),
            "E_leq": list(rep.edge_vector.e_leq),
            "halving_lines": rep.halving_lines,
            "crossings": rep.crossings,
            "identity_check": rep.consistent,
        }
    )
    return 0 if rep.consistent else 1


def cmd_classify(args) -> int:
    if args.halfperiod:
        h = read_halfperiod(args.file)
        report = validate_allowable(h)
        if report:
            raise InputError("invalid halfperiod: " + "; ".join(report[:3]))
    else:
        h = halfperiod_from_points(read_points(args.file), tie_break=args.tie_break)
    rep = verify_central(h, args.k)
    records = classify_records(h, args.k)
    _json_print(
        {
            "n": h.n,
            "k": rep.k,
            "s": rep.s,
            "K": rep.K,
            "E_geq_k": rep.E_geq_k,
            "bound_value": fmt(rep.bound_value),
            "holds": rep.holds,
            "tallies": rep.tallies,
            "aux_checks": rep.aux_checks,
            "records": [
                {
                    "step": r.step,
                    "position": r.position,
                    "pair": list(r.pair),
                    "block": r.block_index,
                    "kind": r.kind,
                    "class": r.cls,
                    "entering": r.entering,
                    "aug_m": r.aug_m,
                    "weight": r.weight,
                    "heavy": r.heavy,
                    "essential": r.essential,
                }
                for r in records
            ],
        }
    )
    return 0 if rep.all_ok else 1


def cmd_bounds(args) -> int:
    table = bnd.bound_table(args.n, with_u_prime=args.with_u_prime)
    rows = table.rows
    if args.k is not None:
        rows = [r for r in rows if r.k == args.k]
        if not rows:
            raise InputError(f"k={args.k} out of range for n={args.n}")
    if args.format == "json":
        _json_print(
            [
                {
                    "k": r.k,
                    "aichholzer": r.aichholzer,
                    "u_k": r.u_k,
                    "u_prime_k": r.u_prime_k,
                    "explicit": r.explicit,
                    "best": r.best,
                    "source": r.source,
                }
                for r in rows
            ]
        )
    else:
        print(f"lower bounds for E_<=k({args.n})")
        print(f"{'k':>4} {'closedform':>11} {'u_k':>9} {'explicit':>12} {'best':>9} source")
        for r in rows:
            u = "" if r.u_k is None else str(r.u_k)
            e = "" if r.explicit is None else f"{r.explicit:.2f}"
            print(f"{r.k:>4} {r.aichholzer:>11} {u:>9} {e:>12} {r.best:>9} {r.source}")
    return 0


def cmd_halving_bound(args) -> int:
    print(bnd.halving_upper_bound(args.n))
    return 0


def cmd_cr_bound(args) -> int:
    res = bnd.cr_lower_bound(args.n, args.pipeline)
    if args.format == "json":
        _json_print(
            {
                "n": res.n,
                "pipeline": res.pipeline,
                "value": res.value,
                "per_k_bounds": [
                    {"k": k, "bound": b, "source": s} for k, b, s in res.per_k_bounds_used
                ],
            }
        )
    else:
        print(res.value)
    return 0


def cmd_cr_table(args) -> int:
    ns = range(args.start, args.end + 1)
    rows = [(n, bnd.cr_lower_bound(n, args.pipeline).value) for n in ns]
    if args.format == "csv":
        w = csv.writer(sys.stdout)
        w.writerow(["n", "cr_lower_bound"])
        w.writerows(rows)
    else:
        print(f"{'n':>4} {'cr >=':>10}")
        for n, v in rows:
            print(f"{n:>4} {v:>10}")
    return 0


def _check_row(name, got, want) -> bool:
    ok = tuple(got) == tuple(want)
    status = "ok" if ok else f"MISMATCH (expected {list(want)})"
    print(f"# check {name}: {status}")
    return ok


def cmd_tables(args) -> int:
    ok = True
    if args.which == "table1":
        ns = golden.TABLE1_N
        h = [bnd.halving_upper_bound(n) for n in ns]
        cr = [bnd.cr_lower_bound(n, "table1").value for n in ns]
        _print_grid(args, ["n", "h(n)", "cr(n)"], ns, [h, cr])
        if args.check:
            ok = _check_row("h", h, golden.TABLE1_H) & _check_row("cr", cr, golden.TABLE1_CR)
    elif args.which == "table2":
        ns = golden.TABLE2_N
        upper = [bnd.halving_upper_bound(n) for n in ns]
        _print_grid(
            args,
            ["n", "h(n) >= (published constructions)", "h(n) <="],
            ns,
            [list(golden.TABLE2_H_LOWER_PUBLISHED), upper],
        )
        if args.check:
            ok = _check_row("upper", upper, golden.TABLE2_H_UPPER)
    else:  # section5
        ns = sorted(golden.SECTION5_CR)
        vals = [bnd.cr_lower_bound(n, "section5").value for n in ns]
        _print_grid(args, ["n", "cr(n) >="], ns, [vals])
        if args.check:
            ok = _check_row("section5", vals, [golden.SECTION5_CR[n] for n in ns])
    return 0 if ok else 1


def _print_grid(args, headers, ns, value_rows):
    if args.format == "csv":
        w = csv.writer(sys.stdout)
        w.writerow(headers)
        for i, n in enumerate(ns):
            w.writerow([n] + [vr[i] for vr in value_rows])
    else:
        widths = [max(8, len(h) + 1) for h in headers]
        print("".join(h.rjust(wd) for h, wd in zip(headers, widths)))
        for i, n in enumerate(ns):
            cells = [n] + [vr[i] for vr in value_rows]
            print("".join(str(c).rjust(wd) for c, wd in zip(cells, widths)))


def cmd_construct(args) -> int:
    if args.kind == "sr":
        cfg = SrConfig(
            r=args.r,
            precision=args.precision,
            **({"perturbation_epsilon": args.epsilon} if args.epsilon else {}),
        )
        res = build_sr(cfg)
        lps = res.raw if args.raw else res.perturbed
        header = (
            f"S_{args.r}: 9r = {9 * args.r} points, "
            f"{'raw (intentionally collinear families)' if args.raw else 'perturbed, general position'}; "
            f"order: A-letter block, B-letter block, C-letter block (classes {lps.class_tags[0]}..)"
        )
        write_points(args.output, lps.point_set, header=header)
    elif args.kind == "polygon-center":
        ps = build_polygon_center(args.k, args.n, precision=args.precision)
        write_points(args.output, ps, header=f"{2 * args.k + 1}-gon plus {args.n - 2 * args.k - 1} central points")
    else:  # cluster-polygon
        ps = build_cluster_polygon(args.t, args.m, precision=args.precision)
        write_points(args.output, ps, header=f"{2 * args.t + 1}-gon, vertices replaced by {args.m}-point clusters")
    print(f"wrote {args.output}")
    return 0


def cmd_verify(args) -> int:
    if args.kind != "sr":
        raise InputError(f"unknown verify target {args.kind!r}")
    res = build_sr(SrConfig(r=args.r, precision=args.precision))
    r = args.r
    levels = pair_levels(res.perturbed.point_set)
    ok = True
    print(f"{'k':>4} {'E_leq':>8} {'expected':>9} {'bi':>6} {'mono':>6} status")
    for k in range(4 * r):
        got = res.edge_vector.leq(k)
        want = sr_expected_leq(r, k)
        bi, mono = count_bichromatic_monochromatic(res.perturbed, k, levels)
        row_ok = got == want and bi == sr_expected_bichromatic(r, k) and mono == sr_expected_monochromatic(r, k)
        ok &= row_ok
        print(f"{k:>4} {got:>8} {want:>9} {bi:>6} {mono:>6} {'ok' if row_ok else 'MISMATCH'}")
    print(f"S_{r}: tightness and split {'verified' if ok else 'FAILED'} for all k <= {4 * r - 1}")
    return 0 if ok else 1


def _parse_partition(spec: str, n: int):
    """Three '/'-separated groups of 1-based indices or a-b ranges,
    e.g. '1-9/10-18/19-27'."""
    parts = spec.split("/")
    if len(parts) != 3:
        raise InputError("partition must have three '/'-separated parts")
    groups = []
    for part in parts:
        idx = set()
        for chunk in part.split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            if "-" in chunk:
                a, b = chunk.split("-", 1)
                idx.update(range(int(a) - 1, int(b)))
            else:
                idx.add(int(chunk) - 1)
        if any(not 0 <= i < n for i in idx):
            raise InputError(f"partition index out of range in {part!r}")
        groups.append(sorted(idx))
    return groups


def cmd_decompose3(args) -> int:
    ps = read_points(args.file)
    witness = check_3decomposable(ps, _parse_partition(args.partition, ps.n))
    if witness is None:
        print("no 3-decomposition witness for this partition")
        return 1
    for gi, d in enumerate(witness.directions):
        print(f"part {gi + 1} between the others along direction ({fmt(d[0])}, {fmt(d[1])})")
    return 0


def cmd_selftest(args) -> int:
    results = run_scope(
        args.scope,
        trials=args.trials,
        nmax=args.nmax,
        rmax=args.rmax,
        seed=args.seed,
    )
    failed = [name for name, ok, _ in results if not ok]
    for name, ok, detail in results:
        status = "PASS" if ok else "FAIL"
        print(f"[{status}] {name}" + (f"  ({detail})" if detail else ""))
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 0 if not failed else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="kedges",
        description="Exact k-edge / halving-line / crossing-number toolkit",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="edge statistics and crossing number of a point file")
    p.add_argument("file")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("classify", help="central-inequality classification report")
    p.add_argument("file")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--halfperiod", action="store_true",
                   help="treat FILE as a halfperiod file instead of a point file")
    p.add_argument("--tie-break", action="store_true",
                   help="order parallel-pair events by pair index instead of failing")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("bounds", help="per-k lower bounds for E_<=k(n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--with-u-prime", action="store_true",
                   help="include the 3-regular-only recursion column (36 | n)")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("halving-bound", help="upper bound on halving lines")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_halving_bound)

    p = sub.add_parser("cr-bound", help="crossing-number lower bound")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pipeline", choices=("table1", "section5"), default="section5")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_cr_bound)

    p = sub.add_parser("cr-table", help="crossing-number bounds over a range")
    p.add_argument("--from", dest="start", type=int, required=True)
    p.add_argument("--to", dest="end", type=int, required=True)
    p.add_argument("--pipeline", choices=("table1", "section5"), default="section5")
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.set_defaults(func=cmd_cr_table)

    p = sub.add_parser("tables", help="reproduce the published tables")
    p.add_argument("which", choices=("table1", "table2", "section5"))
    p.add_argument("--check", action="store_true", help="compare against embedded golden values")
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("construct", help="emit a construction as a point file")
    csub = p.add_subparsers(dest="kind", required=True)
    c = csub.add_parser("sr", help="the recursive 9r-point tight family")
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--precision", type=int, default=10**12)
    c.add_argument("--epsilon", help="perturbation size as a rational, e.g. 1/10000000")
    c.add_argument("-o", "--output", required=True)
    grp = c.add_mutually_exclusive_group()
    grp.add_argument("--raw", action="store_true", help="emit the unperturbed, collinear set")
    grp.add_argument("--perturbed", action="store_true", help="emit the general-position set (default)")
    c.set_defaults(func=cmd_construct)
    c = csub.add_parser("polygon-center", help="(2k+1)-gon plus central points")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--precision", type=int, default=10**6)
    c.add_argument("-o", "--output", required=True)
    c.set_defaults(func=cmd_construct)
    c = csub.add_parser("cluster-polygon", help="(2t+1)-gon with m-point clusters")
    c.add_argument("--t", type=int, required=True)
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--precision", type=int, default=10**6)
    c.add_argument("-o", "--output", required=True)
    c.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="re-run a construction's count audit")
    vsub = p.add_subparsers(dest="kind", required=True)
    v = vsub.add_parser("sr")
    v.add_argument("--r", type=int, required=True)
    v.add_argument("--precision", type=int, default=10**12)
    v.set_defaults(func=cmd_verify)

    p = sub.add_parser("decompose3", help="3-decomposition witness search")
    p.add_argument("file")
    p.add_argument("--partition", required=True,
                   help="three '/'-separated groups of 1-based indices, e.g. 1-9/10-18/19-27")
    p.set_defaults(func=cmd_decompose3)

    p = sub.add_parser("selftest", help="verification suites")
    p.add_argument("scope", choices=("bounds", "identities", "central", "constructions", "all"))
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--nmax", type=int, default=12)
    p.add_argument("--rmax", type=int, default=4)
    p.add_argument("--seed", type=int, default=20240901)
    p.set_defaults(func=cmd_selftest)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        from .errors import GeneralPositionError

        if isinstance(exc, GeneralPositionError) and exc.triples:
            print(f"collinear triples: {list(exc.triples)}", file=sys.stderr)
        return 2
    except (KedgesError, AssertionError) as exc:
        print(f"internal failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
