"""Self-contained verification suites behind `kedges selftest` and the
acceptance tests.

Each runner returns a list of (name, ok, detail) check results; a suite
passes iff every ok flag is True.  The randomized suites take an explicit
seed so reruns are byte-identical.
"""

from __future__ import annotations

import random

from . import bounds, golden
from .central import verify_central
from .circseq import compute_s, halfperiod_from_points
from .constructions import (
    SrConfig,
    build_cluster_polygon,
    build_polygon_center,
    build_sr,
    check_3decomposable,
    comb2,
    count_bichromatic_monochromatic,
    sr_expected_bichromatic,
    sr_expected_leq,
    sr_expected_monochromatic,
    sr_letter_partition,
)
from .edgestats import (
    crossings_bruteforce,
    crossings_from_edge_vector,
    edge_vector_bruteforce,
    edge_vector_from_halfperiod,
    pair_levels,
)
from .gensets import random_general_position_set


def _result(name, ok, detail=""):
    return (name, bool(ok), detail)


def run_bounds_suite() -> list:
    """Golden-table reproduction plus the exact bracket lemmas."""
    out = []
    h = [bounds.halving_upper_bound(n) for n in golden.TABLE1_N]
    out.append(_result("table1-halving", tuple(h) == golden.TABLE1_H, f"{h}"))
    cr = [bounds.cr_lower_bound(n, "table1").value for n in golden.TABLE1_N]
    out.append(_result("table1-crossing", tuple(cr) == golden.TABLE1_CR, f"{cr}"))
    h2 = [bounds.halving_upper_bound(n) for n in golden.TABLE2_N]
    out.append(_result("table2-halving-upper", tuple(h2) == golden.TABLE2_H_UPPER, f"{h2}"))
    got5 = {n: bounds.cr_lower_bound(n, "section5").value for n in golden.SECTION5_CR}
    bad = {n: (got5[n], want) for n, want in golden.SECTION5_CR.items() if got5[n] != want}
    out.append(_result("section5-table", not bad, f"mismatches: {bad}" if bad else "72/72"))
    bracket_bad = [n for n in range(6, 201) if not bounds.lemma_brackets(n).ok]
    out.append(_result("lemma-brackets-6..200", not bracket_bad, f"failures: {bracket_bad}"))
    rep = bounds.asymptotic_constants()
    out.append(
        _result(
            "asymptotic-constants",
            rep["integral1_ok"] and rep["integral2_ok"] and rep["sum_ok"]
            and rep["crossing_constant_exceeds_0.379972"]
            and rep["three_decomposable_exceeds_0.380029"],
            f"I1={rep['integral1']:.12f} I2={rep['integral2']:.12f}",
        )
    )
    return out


def build_corpus(trials: int, nmin: int, nmax: int, seed: int):
    rng = random.Random(seed)
    return [
        random_general_position_set(rng.randrange(nmin, nmax + 1), rng)
        for _ in range(trials)
    ]


def run_identity_suite(trials: int = 500, nmin: int = 5, nmax: int = 12,
                       seed: int = 20240901, corpus=None) -> list:
    """Brute-force crossings vs both identity forms, and halfperiod edge
    vectors vs brute-force edge vectors, on random sets.  Zero tolerance."""
    corpus = corpus if corpus is not None else build_corpus(trials, nmin, nmax, seed)
    fails = []
    for idx, ps in enumerate(corpus):
        ev = edge_vector_bruteforce(ps)
        ev2 = edge_vector_from_halfperiod(halfperiod_from_points(ps, tie_break=True))
        cr = crossings_bruteforce(ps)
        f1, f2 = crossings_from_edge_vector(ev)
        if ev != ev2 or cr != f1 or cr != f2:
            fails.append((idx, ps.n, ev.counts, ev2.counts, cr, f1, f2))
    return [
        _result(
            f"identity-suite-{len(corpus)}-sets",
            not fails,
            f"failures: {fails[:3]}" if fails else f"{len(corpus)} sets, exact agreement",
        )
    ]


def run_central_suite(trials: int = 500, nmin: int = 5, nmax: int = 12,
                      seed: int = 20240901, corpus=None) -> list:
    """verify_central on every corpus instance for every admissible k,
    including all auxiliary weight/cutting checks on the rearranged
    halfperiods.  Zero violations expected."""
    corpus = corpus if corpus is not None else build_corpus(trials, nmin, nmax, seed)
    fails = []
    instances = 0
    for idx, ps in enumerate(corpus):
        h = halfperiod_from_points(ps, tie_break=True)
        for k in range(1, (ps.n - 1) // 2 + 1):
            instances += 1
            rep = verify_central(h, k)
            if not rep.all_ok:
                fails.append((idx, ps.n, k, rep.aux_checks))
    return [
        _result(
            "central-theorem-sweep",
            not fails,
            f"failures: {fails[:3]}" if fails else f"{instances} (halfperiod, k) instances",
        )
    ]


def run_constructions_suite(rmax: int = 4) -> list:
    """S_r tightness and split audits for 3 <= r <= rmax, plus both
    equality constructions."""
    out = []
    for r in range(3, rmax + 1):
        res = build_sr(SrConfig(r=r))
        ev = res.edge_vector
        bad = [k for k in range(4 * r) if ev.leq(k) != sr_expected_leq(r, k)]
        out.append(_result(f"sr-tightness-r{r}", not bad, f"bad k: {bad}"))
        levels = pair_levels(res.perturbed.point_set)
        split_bad = []
        for k in range(4 * r):
            bi, mono = count_bichromatic_monochromatic(res.perturbed, k, levels)
            if (bi, mono) != (sr_expected_bichromatic(r, k), sr_expected_monochromatic(r, k)):
                split_bad.append(k)
        out.append(_result(f"sr-split-r{r}", not split_bad, f"bad k: {split_bad}"))
        witness = check_3decomposable(res.perturbed.point_set, sr_letter_partition(r))
        out.append(_result(f"sr-3decomposable-r{r}", witness is not None))

    ps = build_polygon_center(3, 9)
    ev = edge_vector_bruteforce(ps)
    s = compute_s(halfperiod_from_points(ps, tie_break=True), 3).s_value
    ok = ev.counts[2] == 7 and ev.geq(3) == 15 and s == 2 and ev.geq(3) == 2 * 7 + comb2(s)
    out.append(_result("polygon-center-9", ok, f"E_2={ev.counts[2]} E_>=3={ev.geq(3)} s={s}"))

    ps = build_cluster_polygon(1, 3)
    ev = edge_vector_bruteforce(ps)
    s = compute_s(halfperiod_from_points(ps, tie_break=True), 3).s_value
    ok = ev.counts[2] == 9 and ev.geq(3) == 18 and s == 0
    out.append(_result("cluster-polygon-9", ok, f"E_2={ev.counts[2]} E_>=3={ev.geq(3)} s={s}"))
    return out


SCOPES = {
    "bounds": lambda args: run_bounds_suite(),
    "identities": lambda args: run_identity_suite(
        trials=args.get("trials", 500), nmax=args.get("nmax", 12), seed=args.get("seed", 20240901)
    ),
    "central": lambda args: run_central_suite(
        trials=args.get("trials", 500), nmax=args.get("nmax", 12), seed=args.get("seed", 20240901)
    ),
    "constructions": lambda args: run_constructions_suite(rmax=args.get("rmax", 4)),
}


def run_scope(scope: str, **args) -> list:
    if scope == "all":
        out = []
        for name in ("bounds", "identities", "central", "constructions"):
            out.extend(SCOPES[name](args))
        return out
    if scope not in SCOPES:
        from .errors import InputError

        raise InputError(f"unknown selftest scope {scope!r}; choose from "
                         f"{sorted(SCOPES)} or 'all'")
    return SCOPES[scope](args)
