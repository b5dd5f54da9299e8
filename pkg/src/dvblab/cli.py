"""
Command line harness: ``dvblab gen|verify|example|roundtrip``.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on bad
arguments, unreadable files or malformed JSON.  The default seed comes
from ``DVBLAB_SEED`` (0 when unset).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .dvb import TrivialDVB, dvb_to_json
from .equivalence import check_nat_pi, check_nat_t, nat_pi, nat_t
from .exactla import matrix_to_json
from .geomexamples import (
    GeomContext,
    atiyah_anchor_is_projection,
    atiyah_fiber,
    jet_fiber,
    jet_linear_structure,
    square_report,
)
from .report import dump, star_seq_to_json
from .sampling import make_rng
from .seq import NotExact, random_seq, random_star_seq
from .suites import SUITE_NAMES, parse_instance, run_instance, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Bad arguments, unreadable input or malformed JSON (exit code 2)."""


def _default_seed() -> int:
    raw = os.environ.get("DVBLAB_SEED")
    if raw is None or raw == "":
        return 0
    try:
        return int(raw, 0)
    except ValueError:
        raise UsageError("DVBLAB_SEED must be an integer, got %r" % raw) from None


def _dims(text: str) -> tuple:
    try:
        dims = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("dims must be comma separated integers, got %r" % text) from None
    if len(dims) != 3 or any(d < 0 for d in dims):
        raise argparse.ArgumentTypeError("dims must be three nonnegative integers, got %r" % text)
    return dims


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected an integer, got %r" % text) from None
    if n < 1:
        raise argparse.ArgumentTypeError("expected a positive integer, got %d" % n)
    return n


def _nonnegative(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected an integer, got %r" % text) from None
    if n < 0:
        raise argparse.ArgumentTypeError("expected a nonnegative integer, got %d" % n)
    return n


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError("cannot write %s: %s" % (path, exc.strerror or exc)) from None


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError("cannot read %s: %s" % (path, exc.strerror or exc)) from None
    except json.JSONDecodeError as exc:
        raise UsageError("%s is not valid JSON: %s" % (path, exc)) from None


# --------------------------------------------------------------------------
# subcommands


def cmd_gen(args) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    rng = make_rng(seed, "gen", args.kind, *args.dims)
    if args.kind == "seq":
        data = random_seq(args.dims, rng).to_json()
    elif args.kind == "star-seq":
        data = star_seq_to_json(random_star_seq(args.dims, rng))
    else:
        data = dvb_to_json(TrivialDVB.of_dims(*args.dims))
    _write(dump(data), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    if args.instance is not None:
        data = _read_json(args.instance)
        try:
            report = run_instance(data, args.trials, seed, args.samples)
        except ValueError as exc:
            raise UsageError("bad instance %s: %s" % (args.instance, exc)) from None
    else:
        report = run_suite(args.suite, args.trials, args.max_dim, seed, args.samples)
    for line in report.lines():
        print(line, file=sys.stderr if args.out in (None, "-") else sys.stdout)
    _write(dump(report.to_json(with_time=not args.no_time)), args.out)
    for c in report.checks:
        if not c.passed:
            print("first counterexample for %s: %s" % (c.name, json.dumps(c.first_counterexample, sort_keys=True)),
                  file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAIL


def _fiber_summary(rep, extra: dict) -> dict:
    out = {
        "name": rep.name,
        "dimT": rep.dims[0],
        "dimE": rep.dims[1],
        "dim": rep.dim,
        "sequence": rep.shape(),
        "kernelDim": rep.seq.U.dim * rep.seq.V.dim,
        "quotientDim": rep.seq.K.dim,
        "isoInvertible": rep.invertible,
        "kernelSquare": rep.kernel_square,
        "quotientSquare": rep.quotient_square,
        "sectionsConsistent": rep.sections_consistent,
    }
    out.update(extra)
    out["passed"] = rep.passed and all(extra.values())
    return out


def cmd_example(args) -> int:
    ctx = GeomContext.of_dims(args.dim_t, args.dim_e)
    seed = _default_seed() if args.seed is None else args.seed
    if args.kind == "jet":
        rep = jet_fiber(ctx)
        out = _fiber_summary(rep, {"linearStructure": jet_linear_structure(ctx, make_rng(seed, "jet"))})
        print("dim JE = %d" % rep.dim, file=sys.stderr)
    elif args.kind == "atiyah":
        rep = atiyah_fiber(ctx)
        out = _fiber_summary(rep, {"anchorIsProjection": atiyah_anchor_is_projection(rep)})
        print("dim DE = %d" % rep.dim, file=sys.stderr)
    else:
        sq = square_report(ctx, seed)
        out = {
            "name": "square",
            "dimT": args.dim_t,
            "dimE": args.dim_e,
            "edges": [{"name": e.name, "value": e.value, "passed": e.passed, "vacuous": e.vacuous,
                       "pairingRank": e.pairing_rank} for e in sq.edges],
            "consistency": sq.consistency,
            "signs": {k: list(v) for k, v in sq.signs.items()},
            "cotangentIso": sq.cotangent_iso,
            "passed": sq.passed,
        }
        for e in sq.edges:
            print("%s  %-12s over %-3s%s" % ("PASS" if e.passed else "FAIL", e.name, e.value,
                                             "  (vacuous)" if e.vacuous else ""), file=sys.stderr)
    _write(dump(out), args.out)
    return EXIT_OK if out["passed"] else EXIT_FAIL


def cmd_roundtrip(args) -> int:
    data = _read_json(args.file)
    seed = _default_seed() if args.seed is None else args.seed
    rng = make_rng(seed, "roundtrip")
    try:
        kind, obj = parse_instance(data)
    except NotExact as exc:
        _write(dump({"kind": "seq", "passed": False, "error": str(exc)}), args.out)
        return EXIT_FAIL
    except ValueError as exc:
        raise UsageError("bad instance %s: %s" % (args.file, exc)) from None
    if kind == "dvb":
        canon = nat_t(obj).canonical()
        rep = check_nat_t(obj, rng)
        out = {"kind": kind, "check": "nat_t", "iso": rep.iso, "morphismAxioms": rep.morphism_axioms,
               "formula": rep.formula,
               "matrices": {"fA": canon.fA.to_json(), "fB": canon.fB.to_json(), "fC": canon.fC.to_json(),
                            "omega": canon.omega.to_json()},
               "passed": rep.passed}
    elif kind == "seq":
        pi = nat_pi(obj)
        rep = check_nat_pi(obj, rng)
        out = {"kind": kind, "check": "nat_pi", "iso": rep.iso, "morphismAxioms": rep.morphism_axioms,
               "formula": rep.formula, "matrices": {"pi": matrix_to_json(pi.matrix.matrix)},
               "passed": rep.passed}
    else:
        raise UsageError("roundtrip needs a dvb or seq instance, got kind %r" % kind)
    _write(dump(out), args.out)
    return EXIT_OK if out["passed"] else EXIT_FAIL


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dvblab", description="Exact checks for double vector bundles and their duals.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a random instance as JSON")
    g.add_argument("--dims", type=_dims, required=True, help="A,B,C (or U,V,K for star-seq)")
    g.add_argument("--kind", choices=("seq", "dvb", "star-seq"), default="seq")
    g.add_argument("--seed", type=int)
    g.add_argument("--out", help="output path (default stdout)")
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="run theorem suites or check one instance")
    v.add_argument("--suite", choices=("all",) + SUITE_NAMES, default="all")
    v.add_argument("--trials", type=_positive, default=100)
    v.add_argument("--max-dim", type=_positive, default=3)
    v.add_argument("--samples", type=_positive, default=20, help="samples per interchange law per trial")
    v.add_argument("--seed", type=int)
    v.add_argument("--instance", help="check a single instance file instead of random ones")
    v.add_argument("--no-time", action="store_true", help="omit elapsed times from the JSON report")
    v.add_argument("--out", help="report path (default stdout)")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("example", help="build a jet, Atiyah or square example")
    e.add_argument("kind", choices=("jet", "atiyah", "square"))
    e.add_argument("--dim-t", type=_nonnegative, required=True)
    e.add_argument("--dim-e", type=_nonnegative, required=True)
    e.add_argument("--seed", type=int)
    e.add_argument("--out")
    e.set_defaults(func=cmd_example)

    r = sub.add_parser("roundtrip", help="run the t / pi round trips on an instance file")
    r.add_argument("file")
    r.add_argument("--seed", type=int)
    r.add_argument("--out")
    r.set_defaults(func=cmd_roundtrip)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print("dvblab: error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
