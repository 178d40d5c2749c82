"""Command-line front end.

Exit status: 0 when every check passes, 1 on a verification failure,
2 on usage or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .catalog import ModuleSpec, parse_twist
from .daha import DahaRep, verify_daha_relations, zeta_pullback
from .daha_modules import build_H, classify_H, predicted_factors
from .engine import FactorFingerprint, composition_series, leonard_pair_check, leonard_triple_check
from .errors import DimensionError, DomainError, NotARepresentation, RacahDahaError
from .grid import grid_specs, load_points
from .harness import LETTER_PAIRS, _fp_text, check_spec, verify_equivalences
from .linalg import diagonalizability
from .racah import central_data, derived_relations, verify_racah_relations
from .racah_modules import build_R
from .rational import format_rat, parse_rat
from .serialize import read_rep, write_rep

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SUITES = ("relations", "central", "criteria", "comp-series", "leonard", "equivalences")


class UsageError(Exception):
    pass


def _emit(record: dict) -> None:
    print(json.dumps(record, indent=1, sort_keys=True))


def _notice(msg: str) -> None:
    print(f"notice: {msg}", file=sys.stderr)


def cmd_construct(args) -> int:
    twist = parse_twist(args.twist) if args.twist else (1, 1)
    if args.family == "O" and twist != (1, 1):
        raise UsageError("twists label E_d modules only")
    spec = ModuleSpec(args.family, args.d, parse_rat(args.a), parse_rat(args.b), parse_rat(args.c), twist)
    rep = build_R(spec) if spec.family == "R" else build_H(spec)
    try:
        write_rep(rep, args.out)
    except OSError as exc:
        raise UsageError(f"cannot write {args.out}: {exc}") from None
    return EXIT_OK


def _as_racah(rep):
    if isinstance(rep, DahaRep):
        _notice("pulling the DAHA module back to the Racah algebra")
        return zeta_pullback(rep)
    return rep


def _suite_relations(rep) -> dict:
    if isinstance(rep, DahaRep):
        r = verify_daha_relations(rep)
        return {"ok": r.ok, "failures": r.failures}
    r = verify_racah_relations(rep)
    derived = derived_relations(rep)
    failures = r.failures + [k for k, ok in derived.items() if not ok]
    return {"ok": not failures, "failures": failures}


def _fmt(x):
    return None if x is None else format_rat(x)


def _suite_central(rep) -> dict:
    if isinstance(rep, DahaRep):
        r = verify_daha_relations(rep)
        scalars = r.central_scalars
        ok = r.ok and scalars is not None
        out = {"squares": None if scalars is None else [format_rat(s) for s in scalars]}
        return {"ok": ok, "failures": r.failures if r.failures else ([] if ok else ["non-scalar squares"]), **out}
    try:
        cd = central_data(rep)
    except NotARepresentation as exc:
        return {"ok": False, "failures": list(exc.failures)}
    scal = {k: _fmt(getattr(cd, f"{k}_scalar")) for k in ("alpha", "beta", "gamma", "delta")}
    bad = [f"{k}-not-scalar" for k, v in scal.items() if v is None]
    return {"ok": not bad, "failures": bad, "scalars": scal}


def _need_meta(rep) -> ModuleSpec:
    if rep.meta is None:
        raise UsageError("this suite needs a file with catalog metadata")
    return rep.meta


def _same_matrices(x, y) -> bool:
    # D is derived, so a Racah file is compared on A, B, C only
    if type(x) is not type(y):
        return False
    if isinstance(x, DahaRep):
        return x.ts() == y.ts()
    return (x.A, x.B, x.C) == (y.A, y.B, y.C)


def _suite_criteria(rep) -> dict:
    spec = _need_meta(rep)
    built = build_R(spec) if spec.family == "R" else build_H(spec)
    if spec.twist != (1, 1):
        spec = spec.untwisted()
    record = check_spec(spec, equivalences=False)
    failures = list(record["failures"])
    if not _same_matrices(built, rep):
        failures.insert(0, "matrices differ from the catalog construction")
    record["failures"] = failures
    record["ok"] = not failures
    return record


def _suite_comp_series(rep, expect: bool) -> dict:
    racah = _as_racah(rep)
    factors = composition_series(racah)
    fps = [f.fingerprint for f in factors]
    record = {"dims": [f.gens.dim for f in factors], "factors": [_fp_text(fp) for fp in fps], "failures": []}
    if expect:
        spec = _need_meta(rep)
        if spec.family == "R":
            predicted = [spec]
            completeness = "exact"
        else:
            pred = predicted_factors(spec)
            predicted, completeness = list(pred.factors), pred.completeness
        want = [FactorFingerprint.of_spec(p) for p in predicted]
        if completeness == "exact":
            match = sorted(fps, key=FactorFingerprint.sort_key) == sorted(want, key=FactorFingerprint.sort_key)
        else:
            match = all(fp in want for fp in fps)
        record["predicted"] = [p.key() for p in predicted]
        record["predicted_dims"] = [p.dim for p in predicted]
        record["completeness"] = completeness
        if not match:
            record["failures"].append("factors differ from prediction")
    record["ok"] = not record["failures"]
    return record


def _suite_leonard(rep) -> dict:
    racah = _as_racah(rep)
    out = []
    failures = []
    for k, f in enumerate(composition_series(racah)):
        g = f.gens
        mf = {X: diagonalizability(g.element(X)).multiplicity_free for X in "ABC"}
        pairs = {P: leonard_pair_check(g.element(P[0]), g.element(P[1])).verdict for P in LETTER_PAIRS}
        triple = leonard_triple_check(*(g.element(X) for X in "ABC")).verdict
        out.append({"dim": g.dim, "multiplicity_free": mf, "pairs": pairs, "triple": triple})
        for P, v in pairs.items():
            if v != (mf[P[0]] and mf[P[1]]):
                failures.append(f"factor{k}:pair-{P}")
        if triple != all(mf.values()):
            failures.append(f"factor{k}:triple")
    return {"ok": not failures, "failures": failures, "factors": out}


def _suite_equivalences(rep) -> dict:
    if not isinstance(rep, DahaRep):
        raise UsageError("the equivalences suite needs a DAHA module")
    spec = rep.meta if rep.meta is not None else classify_H(rep)
    failures = []
    if not _same_matrices(build_H(spec), rep):
        failures.append("matrices differ from the catalog construction")
    report = verify_equivalences(spec, strict=False)
    failures += [f"{c}: {d}" for c, d in report.violations]
    return {"ok": not failures, "failures": failures, "report": report.to_dict()}


def cmd_verify(args) -> int:
    try:
        rep = read_rep(args.inp)
    except OSError as exc:
        raise UsageError(f"cannot read {args.inp}: {exc}") from None
    suite = args.suite
    try:
        if suite == "relations":
            record = _suite_relations(rep)
        elif suite == "central":
            record = _suite_central(rep)
        elif suite == "criteria":
            record = _suite_criteria(rep)
        elif suite == "comp-series":
            record = _suite_comp_series(rep, args.expect_factors)
        elif suite == "leonard":
            record = _suite_leonard(rep)
        else:
            record = _suite_equivalences(rep)
    except (DomainError, DimensionError):
        raise
    except (RacahDahaError, AssertionError) as exc:
        # the input is well-formed but fails a check that the suite relies on
        record = {"ok": False, "failures": [f"{type(exc).__name__}: {exc}"]}
    record["suite"] = suite
    _emit(record)
    return EXIT_OK if record["ok"] else EXIT_FAIL


def _timed_check(spec: ModuleSpec) -> tuple:
    t = time.perf_counter()
    try:
        rec = check_spec(spec)
    except RacahDahaError as exc:
        rec = {"spec": spec.key(), "failures": [f"error:{type(exc).__name__}:{exc}"]}
    return rec, time.perf_counter() - t


def run_sweep(specs, jobs: int = 1) -> list:
    if jobs <= 1:
        return [_timed_check(s) for s in specs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_timed_check, specs, chunksize=8))


def build_report(results, timings: bool = False) -> dict:
    records = {}
    failures = []
    inconclusive = 0
    for rec, seconds in results:
        key = rec["spec"]
        if timings:
            rec = dict(rec, seconds=round(seconds, 4))
        records[key] = rec
        failures += [f"{key}: {f}" for f in rec["failures"]]
        inconclusive += sum("inconclusive" in f for f in rec["failures"])
    summary = {"specs": len(records), "failures": len(failures), "inconclusive": inconclusive}
    return {"records": records, "summary": summary, "failures": failures}


def cmd_sweep(args) -> int:
    families = [f.strip() for f in args.families.split(",") if f.strip()]
    points = load_points(args.grid)
    specs = list(grid_specs(families, args.d_max, points))
    report = build_report(run_sweep(specs, args.jobs), args.timings)
    try:
        Path(args.report).write_text(json.dumps(report, indent=1, sort_keys=True) + "\n")
    except OSError as exc:
        raise UsageError(f"cannot write {args.report}: {exc}") from None
    s = report["summary"]
    print(f"{s['specs']} specs, {s['failures']} failures, {s['inconclusive']} inconclusive")
    return EXIT_FAIL if s["failures"] else EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="racahdaha", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="write a catalog module to a JSON file")
    c.add_argument("--family", choices=("R", "E", "O"), required=True)
    c.add_argument("--d", type=int, required=True)
    for name in ("a", "b", "c"):
        c.add_argument(f"--{name}", required=True, help="rational literal p/q")
    c.add_argument("--twist", help="sign pair such as 1,-1 (E only)")
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="run a verification suite on a JSON file")
    v.add_argument("--in", dest="inp", required=True)
    v.add_argument("--suite", choices=SUITES, default="relations")
    v.add_argument("--expect-factors", action="store_true",
                   help="compare composition factors with the catalog prediction")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="check every catalog module on a parameter grid")
    s.add_argument("--families", default="R,E,O")
    s.add_argument("--d-max", type=int, required=True)
    s.add_argument("--grid", default="builtin", help="'builtin' or a JSON grid file")
    s.add_argument("--report", required=True)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--timings", action="store_true",
                   help="add per-spec wall time (makes reports run-dependent)")
    s.set_defaults(func=cmd_sweep)
    return p


def _glue_twist(argv: list) -> list:
    # "-1,1" looks like an option to argparse; bind it to --twist explicitly
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--twist":
            out.append(f"--twist={next(it, '')}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = make_parser()
    argv = _glue_twist(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, RacahDahaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
