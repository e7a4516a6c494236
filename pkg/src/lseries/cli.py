"""Command-line front end for the catalogued L-function computations.

Eight subcommands cover the package:

  coeffs       generate Dirichlet coefficients (cache file or stdout)
  eval         per-level partial sums R_j, I_j at a critical-line point
  scan         sign-change scan for zeros on the critical line
  count        argument-principle zero count over a rectangle
  offline      certified zeros in a rectangle off the critical line
  verify       combined scan + count + off-line consistency report
  explicit     prime-power side vs. zero side comparison table (CSV)
  error-ratio  empirical/predicted truncation-error ratios on a t-grid

Global flags --digits/--N/--l/--v/--step/--format/--out are accepted by
every subcommand; the LSERIES_CACHE_DIR environment variable relocates
the coefficient cache.  All output is deterministic for a fixed set of
flags.  Exit codes: 0 success, 2 for unresolved or near-miss zero
results (and bad invocations), 3 when a count's residual is too large
to certify.
"""

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from mpmath import mp, mpc, mpf

from .abel import error_ratio_profile, evaluate
from .coefficients import cache_dir, cusp_s8_coeffs, write_coeff_cache
from .explicit import comparison_csv_text, comparison_rows, log_derivative_point
from .gamma_phase import PrecisionContext, on_line_factor
from .model import builtin_names, builtin_spec
from .zeros import (
    ContourError,
    ScanConfig,
    _COUNT_REGION,
    count_zeros_rectangle,
    find_offline_zeros,
    rectangle_to_json,
    report_to_json,
    rh_report,
    scan_critical_line,
    zeros_to_json,
    zeros_to_tsv,
)

EXIT_OK = 0
EXIT_UNRESOLVED = 2
EXIT_RESIDUAL = 3

_FORMATS = ("tsv", "json", "csv")


@dataclass(frozen=True)
class RunConfig:
    """Validated bundle of the knobs shared by all subcommands."""

    digits: int = 64
    N: int = 2000
    l: int = 25
    v: Optional[int] = None
    step: float = 0.1
    out: Optional[str] = None
    format: str = "tsv"

    def __post_init__(self) -> None:
        if self.digits < 1:
            raise ValueError("digits must be at least 1")
        if self.N < 1:
            raise ValueError("N must be at least 1")
        if self.l < 0:
            raise ValueError("l must be nonnegative")
        if self.v is not None and self.v < 0:
            raise ValueError("v must be nonnegative")
        if self.step <= 0:
            raise ValueError("step must be positive")
        if self.format not in _FORMATS:
            raise ValueError("format must be one of: " + ", ".join(_FORMATS))

    def context(self) -> PrecisionContext:
        return PrecisionContext(digits=self.digits)

    def scan_config(self, refine_tol: float = 1e-10) -> ScanConfig:
        return ScanConfig(
            step=self.step,
            refine_tol=refine_tol,
            N=self.N,
            l=self.l,
            digits=self.digits,
        )


def _config(args: argparse.Namespace) -> RunConfig:
    fmt = args.format
    if fmt == "text":  # pseudo-format of `coeffs`: plain values on stdout
        fmt = "tsv"
    return RunConfig(
        digits=args.digits,
        N=args.N,
        l=args.l,
        v=args.v,
        step=args.step,
        out=args.out,
        format=fmt,
    )


def _params(args: argparse.Namespace) -> Optional[dict]:
    if args.family.split("(", 1)[0] == "hecke":
        return {"d": args.d, "n": args.n, "m": args.m}
    return None


def _spec(args: argparse.Namespace, M: int, ctx: PrecisionContext):
    return builtin_spec(args.family, M, params=_params(args), ctx=ctx)


def _warn_digits(digits: int, print_digits: int) -> None:
    if digits < 1.5 * print_digits:
        print(
            "warning: %d working digits is thin for %d printed digits;"
            " consider --digits %d or more"
            % (digits, print_digits, math.ceil(1.5 * print_digits)),
            file=sys.stderr,
        )


def _emit(text: str, out: Optional[str]) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        parent = os.path.dirname(os.path.abspath(out))
        os.makedirs(parent, exist_ok=True)
        with open(out, "w") as fh:
            fh.write(text)


def _sep(fmt: str) -> str:
    return "," if fmt == "csv" else "\t"


def _zeros_text(records, fmt: str) -> str:
    if fmt == "json":
        return zeros_to_json(records)
    text = zeros_to_tsv(records)
    return text.replace("\t", ",") if fmt == "csv" else text


def _slug(name: str) -> str:
    """Filesystem-safe family tag: hecke(d=2,n=1,m=0) -> hecke_d2_n1_m0."""

    out = []
    for ch in name:
        if ch.isalnum():
            out.append(ch)
        elif ch in "(,":
            out.append("_")
    return "".join(out).rstrip("_")


def _default_cache_path(family: str, M: int) -> str:
    return os.path.join(cache_dir(), "%s_%d.txt" % (_slug(family), M))


# ---------------------------------------------------------------------------
# subcommands


def cmd_coeffs(args: argparse.Namespace) -> int:
    cfg = _config(args)
    ctx = cfg.context()
    spec = _spec(args, args.M, ctx)
    coeffs = spec.coeffs
    if args.format == "text":
        _warn_digits(cfg.digits, args.print_digits)
        lines = []
        with mp.workdps(ctx.workdps):
            for value in coeffs.values:
                if isinstance(value, int):
                    lines.append(str(value))
                elif isinstance(value, Fraction):
                    lines.append("%d/%d" % (value.numerator, value.denominator))
                else:
                    w = mpc(value)
                    lines.append(
                        mp.nstr(w.real, args.print_digits)
                        + " "
                        + mp.nstr(w.imag, args.print_digits)
                    )
        _emit("\n".join(lines), cfg.out)
        return EXIT_OK
    path = cfg.out or _default_cache_path(coeffs.family, args.M)
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)
    write_coeff_cache(coeffs, path, params=_params(args), digits=cfg.digits)
    print("wrote %d coefficients to %s" % (coeffs.length, path))
    return EXIT_OK


def _level_rows(l: int) -> List[int]:
    if l <= 10:
        return list(range(l + 1))
    rows = list(range(0, l + 1, 5))
    if rows[-1] != l:
        rows.append(l)
    return rows


def cmd_eval(args: argparse.Namespace) -> int:
    cfg = _config(args)
    ctx = cfg.context()
    _warn_digits(cfg.digits, args.print_digits)
    spec = _spec(args, cfg.N, ctx)
    with mp.workdps(ctx.workdps):
        t = mpf(str(args.t))
        s = mpc(mpf(spec.k) / 2, t)
        result = evaluate(spec, s, cfg.N, cfg.l, ctx, apply_phase=False, v=cfg.v)
        rot = on_line_factor(spec, t, ctx)
        rows = []
        for j in _level_rows(cfg.l):
            z = rot * result.per_level[j]
            rows.append(
                (
                    j,
                    mp.nstr(z.real, args.print_digits, strip_zeros=False),
                    mp.nstr(z.imag, args.print_digits, strip_zeros=False),
                )
            )
    if cfg.format == "json":
        text = json.dumps(
            {
                "family": spec.name,
                "t": args.t,
                "N": cfg.N,
                "levels": [{"level": j, "R": R, "I": I} for j, R, I in rows],
            },
            indent=2,
        )
    else:
        sep = _sep(cfg.format)
        lines = [sep.join(("level", "R", "I"))]
        lines.extend(sep.join((str(j), R, I)) for j, R, I in rows)
        text = "\n".join(lines)
    _emit(text, cfg.out)
    return EXIT_OK


def cmd_scan(args: argparse.Namespace) -> int:
    cfg = _config(args)
    spec = _spec(args, cfg.N, cfg.context())
    records = scan_critical_line(
        spec, args.t_lo, args.t_hi, cfg.scan_config(args.refine_tol)
    )
    _emit(_zeros_text(records, cfg.format), cfg.out)
    if any(r.unresolved for r in records):
        return EXIT_UNRESOLVED
    return EXIT_OK


def cmd_count(args: argparse.Namespace) -> int:
    cfg = _config(args)
    spec = _spec(args, cfg.N, cfg.context())
    default_delta, default_mu = _COUNT_REGION.get(
        spec.name.split("(", 1)[0], (0.5, 1.0)
    )
    delta = default_delta if args.delta is None else args.delta
    mu = default_mu if args.mu is None else args.mu
    box = count_zeros_rectangle(spec, delta, args.T, mu, cfg.scan_config())
    if cfg.format == "json":
        text = rectangle_to_json(box)
    else:
        sep = _sep(cfg.format)
        fields = (
            ("count", str(box.count)),
            ("phase_term", mp.nstr(box.phase_term, 15)),
            ("arg_term", mp.nstr(box.arg_term, 15)),
            ("real_zero_correction", mp.nstr(box.real_zero_correction, 15)),
            ("residual", mp.nstr(box.residual, 3)),
        )
        text = "\n".join(
            (
                sep.join(name for name, _ in fields),
                sep.join(value for _, value in fields),
            )
        )
    _emit(text, cfg.out)
    if float(box.residual) >= 0.05:
        return EXIT_RESIDUAL
    return EXIT_OK


def _split_range(text: str, flag: str) -> Tuple[str, str]:
    parts = text.split(":")
    if len(parts) != 2:
        raise ValueError("%s expects LO:HI, got %r" % (flag, text))
    return parts[0], parts[1]


def cmd_offline(args: argparse.Namespace) -> int:
    cfg = _config(args)
    ctx = cfg.context()
    spec = _spec(args, cfg.N, ctx)
    with mp.workdps(ctx.workdps):
        re_lo, re_hi = (mpf(p) for p in _split_range(args.re, "--re"))
        im_lo, im_hi = (mpf(p) for p in _split_range(args.im, "--im"))
        region = (mpc(re_lo, im_lo), mpc(re_hi, im_hi))
        records = find_offline_zeros(spec, region, cfg.scan_config(args.refine_tol))
    _emit(_zeros_text(records, cfg.format), cfg.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = _config(args)
    spec = _spec(args, cfg.N, cfg.context())
    report = rh_report(spec, args.t_hi, cfg.scan_config(args.refine_tol))
    if cfg.format == "json":
        text = report_to_json(report)
    else:
        sep = _sep(cfg.format)
        lines = [
            sep.join(("verdict", report.verdict)),
            sep.join(("count", str(report.rectangle.count))),
            sep.join(("on_line", str(len(report.on_line)))),
            sep.join(("off_line", str(len(report.off_line)))),
            sep.join(("residual", mp.nstr(report.rectangle.residual, 3))),
        ]
        lines.extend(sep.join(("note", note)) for note in report.notes)
        text = "\n".join(lines)
    _emit(text, cfg.out)
    if report.verdict == "inconclusive":
        if float(report.rectangle.residual) >= 0.05:
            return EXIT_RESIDUAL
        return EXIT_UNRESOLVED
    return EXIT_OK


def _read_zero_ordinates(path: str) -> List[str]:
    """Positive ordinates from a critical-line scan table, as strings."""

    if not os.path.exists(path):
        raise FileNotFoundError(
            "zeros file %r not found; create it with"
            " `lseries scan s8f --to 100 --out %s`" % (path, path)
        )
    ordinates = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            fields = line.replace(",", "\t").split("\t")
            if fields[0] == "index":
                if "t" not in fields:
                    raise ValueError(
                        "zeros file %r does not come from a critical-line scan"
                        % path
                    )
                continue
            if len(fields) != 3:
                raise ValueError(
                    "zeros file %r does not come from a critical-line scan" % path
                )
            ordinates.append(fields[1])
    return ordinates


def cmd_explicit(args: argparse.Namespace) -> int:
    cfg = _config(args)
    ctx = cfg.context()
    zeros_file = args.zeros_file or os.path.join(cache_dir(), "s8f_zeros.tsv")
    raw = _read_zero_ordinates(zeros_file)
    with mp.workdps(ctx.workdps):
        ordinates = sorted(t for t in (mpf(r) for r in raw) if t > 0)
        if len(ordinates) < args.n_zeros:
            raise ValueError(
                "zeros file %r holds %d positive ordinates, need %d"
                % (zeros_file, len(ordinates), args.n_zeros)
            )
        ordinates = ordinates[: args.n_zeros]
        if args.lder is None:
            _, _, ratio = log_derivative_point(ctx=ctx)
        else:
            ratio = mpf(str(args.lder))
        coeffs = cusp_s8_coeffs(max(2, int(args.x_hi) + 1))
        rows = comparison_rows(args.x_lo, args.x_hi, ordinates, coeffs, ratio, ctx)
    _emit(comparison_csv_text(rows), cfg.out)
    return EXIT_OK


def cmd_error_ratio(args: argparse.Namespace) -> int:
    cfg = _config(args)
    ctx = cfg.context()
    spec = _spec(args, max(cfg.N, args.ref_N), ctx)
    levels = tuple(int(p) for p in args.levels.split(",") if p.strip())
    if not levels:
        raise ValueError("--levels needs at least one level")
    profile = error_ratio_profile(
        spec, args.t_lo, args.t_hi, cfg.step, cfg.N, levels, args.ref_N, args.ref_l, ctx
    )
    if cfg.format == "json":
        text = json.dumps(
            {str(lev): mp.nstr(profile[lev], 6) for lev in sorted(profile)}, indent=2
        )
    else:
        sep = _sep(cfg.format)
        lines = [sep.join(("level", "ratio"))]
        lines.extend(
            sep.join((str(lev), mp.nstr(profile[lev], 6))) for lev in sorted(profile)
        )
        text = "\n".join(lines)
    _emit(text, cfg.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group("global options")
    group.add_argument("--digits", type=int, default=64, help="working precision")
    group.add_argument("--N", type=int, default=2000, help="series cutoff")
    group.add_argument("--l", type=int, default=25, help="summation level")
    group.add_argument(
        "--v", type=int, default=None, help="coefficient scaling power n^(-v)"
    )
    group.add_argument("--step", type=float, default=0.1, help="grid spacing")
    group.add_argument(
        "--format",
        default="tsv",
        choices=("tsv", "json", "csv", "text"),
        help="output format (text: plain coefficient lines, coeffs only)",
    )
    group.add_argument("--out", default=None, help="output file (default: stdout)")
    group.add_argument(
        "--print-digits",
        dest="print_digits",
        type=int,
        default=25,
        help="significant digits in printed values",
    )

    fam = argparse.ArgumentParser(add_help=False)
    fam.add_argument("family", help="one of: " + ", ".join(builtin_names()))
    fam.add_argument(
        "--d", type=int, default=2, help="squarefree field parameter (hecke)"
    )
    fam.add_argument(
        "--n", type=int, default=1, help="unit-circle character index (hecke)"
    )
    fam.add_argument(
        "--m", type=int, default=0, help="sign-character exponent (hecke)"
    )

    parser = argparse.ArgumentParser(
        prog="lseries",
        description="High-precision evaluation, zero location, and zero "
        "counting for a small catalog of L-functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "coeffs", parents=[common, fam], help="generate Dirichlet coefficients"
    )
    p.add_argument("M", type=int, help="number of coefficients")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser(
        "eval", parents=[common, fam], help="per-level partial sums at one point"
    )
    p.add_argument("--t", type=float, required=True, help="height on the line")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser(
        "scan", parents=[common, fam], help="find zeros on the critical line"
    )
    p.add_argument("--from", dest="t_lo", type=float, default=0.0, help="lower height")
    p.add_argument("--to", dest="t_hi", type=float, required=True, help="upper height")
    p.add_argument(
        "--refine-tol", dest="refine_tol", type=float, default=1e-10,
        help="target radius for refined zeros",
    )
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser(
        "count", parents=[common, fam], help="count zeros in a rectangle"
    )
    p.add_argument("--T", type=float, required=True, help="top height")
    p.add_argument(
        "--delta", type=float, default=None, help="horizontal margin (family default)"
    )
    p.add_argument(
        "--mu", type=float, default=None, help="extra contour offset (family default)"
    )
    p.set_defaults(func=cmd_count)

    p = sub.add_parser(
        "offline", parents=[common, fam], help="isolate zeros off the critical line"
    )
    p.add_argument("--re", required=True, help="real range LO:HI")
    p.add_argument("--im", required=True, help="imaginary range LO:HI")
    p.add_argument(
        "--refine-tol", dest="refine_tol", type=float, default=1e-10,
        help="target radius for refined zeros",
    )
    p.set_defaults(func=cmd_offline)

    p = sub.add_parser(
        "verify", parents=[common, fam], help="cross-check zero census up to a height"
    )
    p.add_argument("--to", dest="t_hi", type=float, required=True, help="top height")
    p.add_argument(
        "--refine-tol", dest="refine_tol", type=float, default=1e-10,
        help="target radius for refined zeros",
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser(
        "explicit",
        parents=[common],
        help="prime-power side vs. zero side of the explicit formula (weight-8 form)",
    )
    p.add_argument("--from", dest="x_lo", type=float, default=1.1, help="lower x")
    p.add_argument("--to", dest="x_hi", type=float, default=20.0, help="upper x")
    p.add_argument(
        "--zeros", dest="n_zeros", type=int, default=69,
        help="number of zero ordinates to use",
    )
    p.add_argument(
        "--zeros-file", dest="zeros_file", default=None,
        help="scan output with the zero ordinates (default: cache dir)",
    )
    p.add_argument(
        "--lder", type=float, default=None,
        help="log-derivative constant (default: computed)",
    )
    p.set_defaults(func=cmd_explicit)

    p = sub.add_parser(
        "error-ratio",
        parents=[common, fam],
        help="empirical/predicted truncation-error ratios on a grid",
    )
    p.add_argument("--t-lo", dest="t_lo", type=float, required=True, help="lower height")
    p.add_argument("--t-hi", dest="t_hi", type=float, required=True, help="upper height")
    p.add_argument(
        "--levels", default="5,10,15,20,25,30", help="comma-separated levels"
    )
    p.add_argument(
        "--ref-N", dest="ref_N", type=int, default=10000, help="reference cutoff"
    )
    p.add_argument(
        "--ref-l", dest="ref_l", type=int, default=35, help="reference level"
    )
    p.set_defaults(func=cmd_error_ratio)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ContourError as err:
        print("error: %s" % err, file=sys.stderr)
        return EXIT_UNRESOLVED
    except (ValueError, OSError) as err:
        print("error: %s" % err, file=sys.stderr)
        return EXIT_UNRESOLVED


if __name__ == "__main__":
    sys.exit(main())
