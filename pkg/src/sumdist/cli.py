"""Command-line front end. Every numerical step is delegated to the library."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional

from . import checks, discrepancy, families
from .bounds import bound_report, sandwich
from .errors import ConsistencyError, DistributionValidationError, RangeWarning
from .levenshtein import in_s_interval, select_degree
from .oracle import DEFAULT_SEED
from .tables import REFERENCE_RANGE, compare_rows, table_rows

EXIT_OK, EXIT_INPUT, EXIT_VALIDATION, EXIT_CONSISTENCY = 0, 2, 3, 4

FAMILIES = (
    "equiangular", "decaen", "srg", "quadric", "hyperbolic",
    "sidelnikov", "kerdock", "dualbch", "weight2", "binary-file",
)


class InputError(Exception):
    """Bad command-line input detected by the front end itself."""


class ValidationFailure(Exception):
    """The command ran but reports a failed comparison or check."""


# ------------------------------------------------------------------ output


def _scalar(v):
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float) or hasattr(v, "__float__"):
        x = float(v)
        return repr(x) if not math.isfinite(x) else x
    if isinstance(v, (list, tuple)):
        return [_scalar(x) for x in v]
    return str(v)


def _text(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    if isinstance(v, list):
        return ";".join(_text(x) for x in v)
    return repr(v) if isinstance(v, float) else str(v)


def render(records: list[dict], fmt: str) -> str:
    rows = [{k: _scalar(v) for k, v in r.items()} for r in records]
    if fmt == "json":
        return "".join(json.dumps(r) + "\n" for r in rows)
    if fmt == "csv":
        keys: list[str] = []
        for r in rows:
            keys += [k for k in r if k not in keys]
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: _text(r.get(k)) for k in keys})
        return buf.getvalue()
    blocks = []
    for r in rows:
        width = max(len(k) for k in r)
        blocks.append("".join(f"{k.ljust(width)}  {_text(v)}\n" for k, v in r.items()))
    return "\n".join(blocks)


# ---------------------------------------------------------------- commands


def _range_error(args, m: int) -> InputError:
    return InputError(
        f"s={args.s} lies outside the interval where the degree-{m} bound is proved "
        f"for n={args.n}, N={args.N}; pass --force-range to evaluate anyway"
    )


def cmd_bounds(args) -> list[dict]:
    # refuse before evaluating: far outside the interval the LP certificate itself fails
    if args.s is not None and not args.force_range:
        m = select_degree(args.n, args.N).m
        if not in_s_interval(args.n, args.s, m):
            raise _range_error(args, m)
    rep = bound_report(args.n, args.N, args.s)
    if args.s is not None and not rep.in_range:
        if not args.force_range:
            raise _range_error(args, rep.m)
        warnings.warn(f"s={args.s} outside the proved interval; value is not a proven bound", RangeWarning)
    rec = {
        "n": rep.n, "N": rep.N, "m": rep.m,
        "segment_lo": rep.segment[0], "segment_hi": rep.segment[1],
        "ulb": rep.ulb, "ulb_closed": rep.ulb_closed,
        "s": rep.s, "uub": rep.uub, "uub_closed": rep.uub_closed, "uub_printed": rep.uub_printed,
        "in_range": rep.in_range, "flags": list(rep.flags),
    }
    if args.s is None:
        for k in ("s", "uub", "uub_closed", "uub_printed"):
            del rec[k]
    return [rec]


def _spectrum_text(spec: families.InnerProductSpectrum) -> str:
    return ";".join(f"{v!r}:{m!r}" for v, m in spec.entries)


def _family_record(name: str, params: dict, spec, dist=None) -> dict:
    tau = families.sum_of_distances(spec)
    bounds = sandwich(spec.n, spec.N, spec.s)
    flags = []
    if not bounds.in_range:
        flags.append("s outside proved interval")
    if not bounds.holds(tau):
        flags.append("tau outside its bounds")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        disc = discrepancy.spherical_discrepancy(tau, spec.n, spec.N)
    if caught:
        flags.append("negative spherical discrepancy")
    rec = {"family": name, **params, "n": spec.n, "N": spec.N, "s": spec.s, "spectrum": _spectrum_text(spec),
           "tau_exact": tau, "discrepancy": disc,
           "ulb": bounds.upper, "ulb_source": bounds.upper_source,
           "uub": bounds.lower, "uub_source": bounds.lower_source,
           "in_range": bounds.in_range}
    if dist is not None:
        rec["tau_binary_formula"] = families.binary_sum_of_distances(dist)
        if dist.n <= discrepancy.FLOAT_SAFE_LENGTH:
            rec["lambda_mean"] = discrepancy.lambda_mean(dist)
            rec["binary_discrepancy"] = discrepancy.binary_discrepancy(dist)
        else:
            flags.append("binary discrepancy skipped: length too large for floating point")
    rec["flags"] = flags
    return rec


def _read_code(path: str) -> list[str]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    return families.parse_codewords(text)


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise InputError(f"family {args.name} needs {', '.join(missing)}")


def cmd_family(args) -> list[dict]:
    name = args.name
    if name == "equiangular":
        _need(args, "M", "s", "n")
        spec = families.equiangular_spectrum(args.M, args.s, args.n)
        return [_family_record(name, {"M": args.M}, spec)]
    if name == "decaen":
        _need(args, "r")
        return [_family_record(name, {"r": args.r}, families.de_caen_spectrum(args.r))]
    if name in ("srg", "quadric", "hyperbolic"):
        if name == "srg":
            _need(args, "v", "k", "a", "c")
            p = families.SrgParameters(args.v, args.k, args.a, args.c)
            params = {}
        else:
            _need(args, "m", "q")
            p = (families.quadric_srg if name == "quadric" else families.hyperbolic_srg)(args.m, args.q)
            params = {"m": args.m, "q": args.q}
        spec = families.srg_embedding(p, args.eigenspace)
        rec = _family_record(name, {**params, "v": p.v, "k": p.k, "a": p.a, "c": p.c, "eigenspace": args.eigenspace}, spec)
        rec["tau_closed"] = families.srg_sum_formula(p, args.eigenspace)
        rec["frame_potential"] = spec.frame_potential()
        rec["frame_potential_tight"] = spec.N**2 / spec.n
        return [rec]
    if name == "sidelnikov":
        _need(args, "r")
        dist, params = families.sidelnikov(args.r), {"r": args.r}
    elif name == "kerdock":
        _need(args, "m")
        dist, params = families.kerdock(args.m), {"m": args.m}
    elif name == "dualbch":
        _need(args, "r")
        dist = families.dual_bch_printed(args.r) if args.printed else families.dual_bch(args.r)
        params = {"r": args.r, "source": "printed" if args.printed or args.r % 2 else "enumerated"}
    elif name == "weight2":
        _need(args, "n")
        dist, params = families.weight_two(args.n), {}
    else:
        _need(args, "path")
        dist = families.distribution_from_codewords(_read_code(args.path))
        params = {"path": args.path}
    return [_family_record(name, params, families.spherical_embedding(dist), dist)]


def cmd_table(args) -> list[dict]:
    lo, hi = REFERENCE_RANGE[args.which]
    rmin = lo if args.rmin is None else args.rmin
    rmax = hi if args.rmax is None else args.rmax
    if rmax > hi and not args.force_range:
        raise InputError(f"reference values cover r <= {hi} for {args.which}; pass --force-range for larger r")
    rows = table_rows(args.which, rmin, rmax)
    cells = {(c.r, c.column): c for c in compare_rows(rows)} if args.compare else {}
    records = []
    for row in rows:
        rec = {"table": row.table, "r": row.r, "n": row.n, "N": row.N, "s": row.s,
               "ulb": row.ulb, "tau_exact": row.tau, "uub": row.uub,
               "in_range": row.in_range, "flags": list(row.flags)}
        if args.compare:
            for col in ("ulb", "tau", "uub"):
                c = cells.get((row.r, col))
                rec[f"{col}_reference"] = None if c is None else c.reference
                rec[f"{col}_rel_err"] = None if c is None else c.rel_err
                rec[f"{col}_status"] = "n/a" if c is None else ("PASS" if c.passed else "FAIL")
        records.append(rec)
    if any(not c.passed for c in cells.values()):
        args._failed = True
    return records


def cmd_discrepancy(args) -> list[dict]:
    if args.path is not None:
        dist = families.distribution_from_codewords(_read_code(args.path))
        exact = discrepancy.binary_discrepancy_exact(dist)
        rec = {"n": dist.n, "N": dist.N,
               "binary_discrepancy": float(exact), "binary_discrepancy_exact": exact,
               "constant": discrepancy.binary_constant(dist.n),
               "lambda_mean": discrepancy.lambda_mean_exact(dist)}
        if dist.n % 2 == 0:
            rec["lambda_mean_bound"] = discrepancy.lambda_mean_bound_spherical(families.spherical_embedding(dist), dist.n)
        else:
            lp = discrepancy.lambda_lp_bound(dist.n)
            rec["lambda_mean_bound"] = lp.relaxed
            rec["lambda_mean_bound_intermediate"] = lp.intermediate
        return [rec]
    if args.n is None or args.N is None or args.tau is None:
        raise InputError("discrepancy needs --path, or all of --n, --N and --tau")
    const = discrepancy.sphere_constants(args.n)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        d = discrepancy.spherical_discrepancy(args.tau, args.n, args.N)
    return [{"n": args.n, "N": args.N, "tau": args.tau, "W": const.W, "c_n": const.c_n,
             "discrepancy": d, "flags": ["negative discrepancy"] if caught else []}]


def cmd_verify(args) -> list[dict]:
    results = checks.run_checks(args.level, args.seed)
    records = [{"check": r.name, "passed": r.passed, "cases": r.cases, "failures": list(r.failures)} for r in results]
    failed = [r.name for r in results if not r.passed]
    records.append({"check": "summary", "passed": not failed, "cases": len(results), "failures": failed})
    if failed:
        args._failed = True
    return records


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--force-range", action="store_true",
                        help="evaluate outside the proved separation intervals (with a warning)")
    common.add_argument("--compare", action="store_true", help="compare against stored reference values")

    parser = argparse.ArgumentParser(prog="sumdist", description="Sum-of-distances bounds for spherical and binary codes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", parents=[common], help="upper bound on tau, and lower bound given s")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--s", type=float)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("family", parents=[common], help="evaluate a code family")
    p.add_argument("name", choices=FAMILIES)
    for flag in ("--r", "--m", "--n", "--M", "--q", "--v", "--k", "--a", "--c"):
        p.add_argument(flag, type=int)
    p.add_argument("--s", type=float)
    p.add_argument("--eigenspace", choices=("first", "second"), default="first")
    p.add_argument("--printed", action="store_true", help="dual BCH: use the typeset distribution")
    p.add_argument("--path")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("table", parents=[common], help="reproduce a bound table")
    p.add_argument("which", choices=tuple(REFERENCE_RANGE))
    p.add_argument("--rmin", type=int)
    p.add_argument("--rmax", type=int)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("discrepancy", parents=[common], help="spherical or binary quadratic discrepancy")
    p.add_argument("--n", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--tau", type=float)
    p.add_argument("--path", help="binary code file")
    p.set_defaults(func=cmd_discrepancy)

    p = sub.add_parser("verify", parents=[common], help="run the oracle cross-checks")
    p.add_argument("level", nargs="?", choices=checks.LEVELS, default="quick")
    p.set_defaults(func=cmd_verify)
    return parser


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, DistributionValidationError):
        return EXIT_VALIDATION
    if isinstance(exc, ConsistencyError):
        return EXIT_CONSISTENCY
    return EXIT_INPUT


def main(argv: Optional[Iterable[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(None if argv is None else list(argv))
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    args._failed = False
    warnings.simplefilter("default", RangeWarning)
    try:
        records = args.func(args)
    except (InputError, ValueError, ArithmeticError, ConsistencyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _exit_code(exc)
    sys.stdout.write(render(records, args.format))
    return EXIT_VALIDATION if args._failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
