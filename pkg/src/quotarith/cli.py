"""Command line: ``quotarith {compute,verify,construct,survey}``.

Exit codes: 0 pass, 1 verification failure, 2 hypothesis violated,
3 cap exceeded, 4 usage error.  Output is CSV or JSON lines, UTF-8, LF
endings, reals to 12 significant digits.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Iterable, Sequence

from . import _kernels, constructions, survey
from .core_arith import carmichael_lambda, euler_phi, factorize
from .df_functions import big_d, d_of, df_record, f_of
from .errors import QuotarithError
from .quotients import DEFAULT_BRUTE_FORCE_CAP, QuotientKind, image_generator, quotient_exact, quotient_mod, zero_set_count

PROFILE_COLUMNS = ["m", "phi", "lambda", "rad", "delta", "d", "f"]
DENSITY_COLUMNS = ["x", "total", "equal_count", "exception_count", "predictor_match_count"]
BOUNDS_COLUMNS = ["m", "d", "bound", "ratio"]
ATLAS_COLUMNS = ["f", "d", "smallest_m"]
VERIFY_COLUMNS = ["suite", "max_m", "checked", "failures"]
COUNTEREXAMPLE_LIMIT = 100
DEFAULT_EXACT_EXPONENT_CAP = 10**6


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(4, f"{self.prog}: error: {message}\n")


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return ";".join(str(x) for x in v)
    if isinstance(v, float):
        return f"{v:.12g}"
    if v is None:
        return ""
    return v


def _json_value(v):
    if isinstance(v, float):
        return float(f"{v:.12g}")
    return v


def write_rows(out, columns: Sequence[str], rows: Iterable[dict], fmt: str) -> None:
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([_fmt(row.get(c)) for c in columns])
    else:
        for row in rows:
            out.write(json.dumps({c: _json_value(row.get(c)) for c in columns}) + "\n")


def _emit(args, columns, rows) -> None:
    buf = io.StringIO()
    write_rows(buf, columns, rows, args.format)
    if args.out in (None, "-"):
        sys.stdout.write(buf.getvalue())
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(buf.getvalue())


# ------------------------------------------------------------------ compute


def cmd_compute(args) -> int:
    if args.quotient is None:
        rows = []
        for m in args.m:
            if m < 1:
                raise QuotarithError(f"m must be positive, got {m}")
            rec = df_record(m)
            p = rec.profile
            rows.append({"m": m, "phi": p.phi, "lambda": p.lam, "rad": p.rad, "delta": p.delta,
                         "d": rec.d, "f": rec.f, "ratio": rec.ratio, "D": big_d(m)})
        _emit(args, PROFILE_COLUMNS + ["ratio", "D"], rows)
        return 0
    if args.a is None:
        raise QuotarithError("--quotient needs --a")
    kind = QuotientKind(args.quotient)
    cap = DEFAULT_EXACT_EXPONENT_CAP if args.cap is None else args.cap
    columns = ["m", "a", "kind", "residue"] + (["exact"] if args.exact else [])
    rows = []
    for m in args.m:
        row = {"m": m, "a": args.a, "kind": kind.value, "residue": quotient_mod(m, args.a, kind)}
        if args.exact:
            f = factorize(m)
            e = euler_phi(f) if kind is QuotientKind.EULER else carmichael_lambda(f)
            if e > cap:
                raise QuotarithError(f"exponent {e} exceeds --cap {cap} for an exact quotient")
            row["exact"] = str(quotient_exact(m, args.a, kind))
        rows.append(row)
    _emit(args, columns, rows)
    return 0


# ------------------------------------------------------------------- verify


def _verify_zero_set(n, args):
    cap = args.cap or DEFAULT_BRUTE_FORCE_CAP
    bad = []
    for m in range(1, n + 1):
        got = zero_set_count(m, cap=cap, workers=args.threads)
        want = f_of(m) * euler_phi(m)
        if got != want:
            bad.append(f"m={m}: zero-set count {got} != f*phi = {want}")
    return n, bad


def _verify_image(n, args):
    cap = args.cap or DEFAULT_BRUTE_FORCE_CAP
    bad = []
    for m in range(1, n + 1):
        ge = image_generator(m, "euler", cap=cap, workers=args.threads).generator
        gc = image_generator(m, "carmichael", cap=cap, workers=args.threads).generator
        d, f = d_of(m), f_of(m)
        if (ge, gc) != (d, f):
            bad.append(f"m={m}: image generators ({ge}, {gc}) != (d, f) = ({d}, {f})")
    return 2 * n, bad


def _verify_identities(n, args, names=None):
    fails = survey.identity_failures(n, workers=args.threads)
    bad = []
    for name, ms in fails.items():
        if names is None or name in names:
            bad.extend(f"m={int(m)}: {name}" for m in ms[:COUNTEREXAMPLE_LIMIT])
            bad.extend([None] * max(0, len(ms) - COUNTEREXAMPLE_LIMIT))
    return n, bad


def _verify_bounds(n, args):
    if n < 2:
        bound = survey.theorem11_bound(1)
        ok = d_of(1) <= bound * (1 + survey.BOUND_GUARD)
        return 1, [] if ok else [f"m=1: d=1 > bound {bound!r}"]
    s = survey.bound_scan(n, workers=args.threads)
    bad = []
    if s.bound_violations:
        bad.append(f"{s.bound_violations} violations of the d(m) bound")
    if s.gcd_bound_violations:
        bad.append(f"{s.gcd_bound_violations} violations of the squarefree gcd bound")
    return n, bad


def _verify_nonexistence(n, args):
    s = survey.nonexistence_scan(n, workers=args.threads)
    bad = [f"m={m}: (f, d) = ({f}, {d})" for m, f, d in s.hits]
    bad.extend([None] * (s.exception_count - len(s.hits)))
    return n, bad


SUITES = {
    "zero-set": _verify_zero_set,
    "image": _verify_image,
    "identities": _verify_identities,
    "bounds": _verify_bounds,
    "nonexistence": _verify_nonexistence,
    "squarefree-equality": lambda n, args: _verify_identities(n, args, {"squarefree_equality"}),
}


def cmd_verify(args) -> int:
    if args.max_m < 1:
        raise QuotarithError("--max-m must be positive")
    checked, bad = SUITES[args.suite](args.max_m, args)
    _emit(args, VERIFY_COLUMNS, [{"suite": args.suite, "max_m": args.max_m, "checked": checked, "failures": len(bad)}])
    for line in [b for b in bad if b is not None][:COUNTEREXAMPLE_LIMIT]:
        print(f"counterexample: {line}", file=sys.stderr)
    return 1 if bad else 0


# ---------------------------------------------------------------- construct


def cmd_construct(args) -> int:
    cap = args.cap
    t = args.target
    if t in ("equal", "ratio"):
        if args.n is None:
            raise QuotarithError(f"{t} needs --n")
        fn = constructions.construct_equal if t == "equal" else constructions.construct_ratio
        res = fn(args.n, cap)
    elif t == "pair":
        if args.a is None or args.b is None:
            raise QuotarithError("pair needs --a and --b")
        res = constructions.construct_pair(args.a, args.b, cap)
    elif t == "pq-pair":
        if args.p is None or args.q is None:
            raise QuotarithError("pq-pair needs --p and --q")
        res = constructions.construct_pq_pair(args.p, args.q, cap)
    else:
        if args.t is None:
            raise QuotarithError("witness needs --t")
        res = constructions.lower_bound_witness(args.t)
    row = res.as_dict()
    _emit(args, list(row), [row])
    return 0 if res.verified else 1


# ------------------------------------------------------------------- survey


def cmd_survey(args) -> int:
    x = args.x
    if x < 1:
        raise QuotarithError("--x must be positive")
    budget = survey.DEFAULT_MEMORY_BUDGET if args.cap is None else args.cap * 1024**2
    table = survey.sieve_profiles(x, workers=args.threads, memory_budget=budget)
    if args.kind == "profiles":
        _emit(args, PROFILE_COLUMNS, (table.row(m) for m in range(1, x + 1)))
    elif args.kind == "density":
        s = survey.density_scan(x, table)
        if "predictor" in s.notes:
            print(f"RangeTooSmall: {s.notes['predictor']}; predictor column left empty", file=sys.stderr)
        _emit(args, DENSITY_COLUMNS, [{"x": x, "total": s.total, "equal_count": s.equal_count,
                                       "exception_count": s.exception_count,
                                       "predictor_match_count": s.predictor_match_count}])
    elif args.kind == "bounds":
        if x < 2:
            raise QuotarithError("bounds survey needs --x >= 2")
        s = survey.bound_scan(x, table)
        _emit(args, BOUNDS_COLUMNS, [{"m": r.m, "d": r.value, "bound": r.bound, "ratio": r.ratio} for r in s.records])
    else:
        _emit(args, ATLAS_COLUMNS, [{"f": f, "d": d, "smallest_m": m} for f, d, m in survey.pair_atlas(x, table)])
    return 0


# --------------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1, help="worker threads (output never depends on it)")
    common.add_argument("--cap", type=int, default=None,
                        help="compute: max exponent for --exact; verify: brute-force cap on m; "
                             "construct: prime search cap; survey: memory budget in MiB")
    common.add_argument("--out", default=None, help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "jsonl"), default=None,
                        help="csv (default) or jsonl; construct defaults to jsonl")
    common.add_argument("--backend", choices=("numba", "numpy"), default=None,
                        help="kernel implementation (results are identical)")

    parser = _Parser(prog="quotarith", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", parents=[common], help="d, f and the arithmetic profile of m")
    p.add_argument("--m", type=int, nargs="+", required=True)
    p.add_argument("--quotient", choices=[k.value for k in QuotientKind])
    p.add_argument("--a", type=int)
    p.add_argument("--exact", action="store_true", help="also print the full integer quotient")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", parents=[common], help="run an identity suite over 1..max-m")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--max-m", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", parents=[common], help="build m realizing a target")
    p.add_argument("target", choices=("equal", "ratio", "pair", "pq-pair", "witness"))
    for name in ("n", "a", "b", "p", "q", "t"):
        p.add_argument(f"--{name}", type=int)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("survey", parents=[common], help="write a range table")
    p.add_argument("kind", choices=("density", "bounds", "atlas", "profiles"))
    p.add_argument("--x", type=int, required=True)
    p.set_defaults(func=cmd_survey)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        print("quotarith: error: --threads must be >= 1", file=sys.stderr)
        return 4
    if args.format is None:
        args.format = "jsonl" if args.command == "construct" else "csv"
    previous = _kernels.get_backend()
    try:
        if args.backend:
            _kernels.set_backend(args.backend)
        return args.func(args)
    except QuotarithError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code
    finally:
        _kernels.set_backend(previous)

if __name__ == "__main__":
    sys.exit(main())
