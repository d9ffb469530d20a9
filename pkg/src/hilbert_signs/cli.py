"""Command-line front end.

Subcommands: primes, char, signs, stats, simulate, series-check.  Every
command writes CSV or JSON to stdout (or --out) and exits 0 only if its
declared checks pass; input errors exit 2.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import eigen_io, sato_tate
from .characters import IdealCharacter, load_psi_table
from .curves import get_curve
from .errors import HilbertSignsError, ValidationError
from .field_arith import (
    IdealFactorization,
    enumerate_prime_ideals,
    make_field,
)
from .formal_series import (
    FormalSeries,
    c_series_from_lambda,
    character_moebius_series,
    extract_prime_relation,
    good_primes,
    series_mul,
)
from .sign_pipeline import (
    TALLY_CSV_HEADER,
    SignSurvey,
    density_string,
    tally_csv_row,
    tally_to_obj,
)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _tau_element(K, args):
    return (Fraction(args.tau), Fraction(args.tau_b))


def _load_series(args):
    """Resolve the --curve/--fixture/--lmfdb source flags into a series."""
    if args.curve:
        return eigen_io.cached_curve_series(get_curve(args.curve), args.x, args.cache_dir)
    if args.fixture:
        return eigen_io.load_fixture(args.fixture)
    return eigen_io.fetch_lmfdb(
        args.base_url,
        args.lmfdb,
        normalization=args.normalization,
        cache_dir=args.cache_dir,
        offline=args.offline,
    )


def _add_source_flags(sp):
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--curve", help="registry label of a built-in curve")
    src.add_argument("--fixture", help="path to an eigen-series JSON document")
    src.add_argument("--lmfdb", help="remote label to fetch (cached locally)")
    sp.add_argument("--base-url", default="https://www.lmfdb.org/api/eigenvalues")
    sp.add_argument(
        "--normalization",
        choices=["arithmetic", "coefficient"],
        default="arithmetic",
        help="how remote eigenvalue numbers are scaled",
    )
    sp.add_argument("--offline", action="store_true", help="forbid network access")
    sp.add_argument("--cache-dir", default=None)


def _add_tau_flags(sp):
    sp.add_argument("--tau", default="1", help="rational part of tau (fraction ok)")
    sp.add_argument("--tau-b", default="0", help="coefficient of sqrt(d) in tau")


def cmd_primes(args) -> int:
    K = make_field(args.d)
    rows = ["norm,rational_prime,root_label,residue_degree,splitting"]
    items = []
    for P in enumerate_prime_ideals(K, args.x):
        rec = {
            "norm": P.norm,
            "rational_prime": P.rational_prime,
            "root_label": P.root_label,
            "residue_degree": P.residue_degree,
            "splitting": P.splitting.value,
        }
        items.append(rec)
        rows.append(
            f"{P.norm},{P.rational_prime},{P.root_label},{P.residue_degree},{P.splitting.value}"
        )
    if args.format == "json":
        _emit(json.dumps(items, indent=1) + "\n", args.out)
    else:
        _emit("\n".join(rows) + "\n", args.out)
    return 0


def cmd_char(args) -> int:
    K = make_field(args.d)
    psi = load_psi_table(K, args.psi_file) if args.psi_file else None
    chi = IdealCharacter.from_tau(K, _tau_element(K, args), psi_table=psi)
    rows = ["norm,rational_prime,root_label,chi"]
    items = []
    for P in enumerate_prime_ideals(K, args.x):
        v = chi.value_at(P)
        items.append(
            {
                "norm": P.norm,
                "rational_prime": P.rational_prime,
                "root_label": P.root_label,
                "chi": v,
            }
        )
        rows.append(f"{P.norm},{P.rational_prime},{P.root_label},{v}")
    if args.format == "json":
        _emit(json.dumps(items, indent=1) + "\n", args.out)
    else:
        _emit("\n".join(rows) + "\n", args.out)
    return 0


def cmd_signs(args) -> int:
    series = _load_series(args)
    K = series.field
    if args.d is not None and K.d != args.d:
        raise ValidationError(f"series is over d={K.d}, but --d {args.d} was given")
    psi = load_psi_table(K, args.psi_file) if args.psi_file else None
    survey = SignSurvey(series, _tau_element(K, args), psi=psi, x=args.x)
    tally = survey.tally()
    if args.format == "json":
        _emit(json.dumps(tally_to_obj(tally), indent=1) + "\n", args.out)
    else:
        _emit(f"{TALLY_CSV_HEADER}\n{tally_csv_row(tally)}\n", args.out)
    return 0


def cmd_stats(args) -> int:
    series = _load_series(args)
    K = series.field
    psi = load_psi_table(K, args.psi_file) if args.psi_file else None
    survey = SignSurvey(series, _tau_element(K, args), psi=psi, x=args.x)
    report = sato_tate.ks_statistic(survey.coords, coefficient=args.threshold_coefficient)
    if args.hist_out:
        _emit(sato_tate.histogram_csv(survey.coords), args.hist_out)
    if args.svg:
        _emit(sato_tate.histogram_svg(survey.coords), args.svg)
    obj = {
        "label": series.label,
        "x": survey.x,
        "n": report.n,
        "ks_statistic": f"{report.statistic:.12f}",
        "ks_threshold": f"{report.threshold:.12f}",
        "ks_pass": report.passed,
    }
    _emit(json.dumps(obj, indent=1) + "\n", args.out)
    return 0 if report.passed else 1


SIMULATE_CSV_HEADER = (
    "x,total,pos,neg,zero,bad,pos_density,zero_density,ks_n,ks_statistic,ks_threshold,ks_pass"
)


def cmd_simulate(args) -> int:
    K = make_field(args.d)
    series = sato_tate.synth_eigen_series(K, args.x, args.k0, args.seed)
    survey = SignSurvey(series, _tau_element(K, args), x=args.x)
    tally = survey.tally()
    report = sato_tate.ks_statistic(survey.coords, coefficient=args.threshold_coefficient)
    if args.format == "json":
        obj = tally_to_obj(tally)
        obj.update(
            {
                "seed": args.seed,
                "k0": args.k0,
                "ks_n": report.n,
                "ks_statistic": f"{report.statistic:.12f}",
                "ks_threshold": f"{report.threshold:.12f}",
                "ks_pass": report.passed,
            }
        )
        _emit(json.dumps(obj, indent=1) + "\n", args.out)
    else:
        row = ",".join(
            [
                str(tally.x),
                str(tally.total),
                str(tally.pos),
                str(tally.neg),
                str(tally.zero),
                str(tally.bad),
                density_string(tally.pos, tally.total),
                density_string(tally.zero, tally.total),
                str(report.n),
                f"{report.statistic:.12f}",
                f"{report.threshold:.12f}",
                str(int(report.passed)),
            ]
        )
        _emit(f"{SIMULATE_CSV_HEADER}\n{row}\n", args.out)
    return 0 if report.passed else 1


def cmd_series_check(args) -> int:
    """Round-trip the Euler-product identity on random series; exit 0 iff exact."""
    K = make_field(args.d)
    rng = random.Random(args.seed)
    tau_pool = [1, 4, 9, 2, 5] if K.is_rational else [(1, 0), (4, 0), (4, 1), (9, 0)]
    checks = []
    all_ok = True
    for i in range(args.count):
        chi = IdealCharacter.from_tau(K, tau_pool[rng.randrange(len(tau_pool))])
        unit = IdealFactorization.unit(K)
        coeffs = {unit: Fraction(1)}
        for P in enumerate_prime_ideals(K, args.x):
            if rng.random() < 0.5:
                coeffs[IdealFactorization.from_prime(P)] = Fraction(
                    rng.randint(-9, 9), rng.randint(1, 9)
                )
        lam = FormalSeries(K, args.x, coeffs)
        c = c_series_from_lambda(lam, chi)
        back = series_mul(c, character_moebius_series(chi, args.x))
        roundtrip_ok = back == lam
        residuals_zero = all(
            extract_prime_relation(c, lam, chi, P) == 0 for P in good_primes(chi, args.x)
        )
        checks.append({"series": i, "roundtrip": roundtrip_ok, "residuals_zero": residuals_zero})
        all_ok = all_ok and roundtrip_ok and residuals_zero
    obj = {"d": args.d, "x": args.x, "count": args.count, "ok": all_ok, "checks": checks}
    _emit(json.dumps(obj, indent=1) + "\n", args.out)
    return 0 if all_ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hilbert-signs",
        description="Sign statistics of reconstructed eigenvalues over quadratic fields",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("primes", help="enumerate prime ideals by norm")
    sp.add_argument("--d", type=int, default=1)
    sp.add_argument("--x", type=int, required=True)
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_primes)

    sp = sub.add_parser("char", help="evaluate the twisted character at primes")
    sp.add_argument("--d", type=int, default=1)
    sp.add_argument("--x", type=int, required=True)
    _add_tau_flags(sp)
    sp.add_argument("--psi-file", default=None)
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_char)

    sp = sub.add_parser("signs", help="tally reconstructed eigenvalue signs")
    sp.add_argument("--d", type=int, default=None, help="require the series to be over this d")
    sp.add_argument("--x", type=int, required=True)
    _add_tau_flags(sp)
    _add_source_flags(sp)
    sp.add_argument("--psi-file", default=None)
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_signs)

    sp = sub.add_parser("stats", help="KS report and histogram of B coordinates")
    sp.add_argument("--x", type=int, required=True)
    _add_tau_flags(sp)
    _add_source_flags(sp)
    sp.add_argument("--psi-file", default=None)
    sp.add_argument("--threshold-coefficient", type=float, default=1.63)
    sp.add_argument("--hist-out", default=None, help="write 64-bin histogram CSV here")
    sp.add_argument("--svg", default=None, help="write histogram SVG here")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_stats)

    sp = sub.add_parser("simulate", help="synthetic end-to-end pipeline run")
    sp.add_argument("--d", type=int, default=5)
    sp.add_argument("--x", type=int, required=True)
    sp.add_argument("--k0", type=int, default=2)
    sp.add_argument("--seed", type=int, required=True)
    _add_tau_flags(sp)
    sp.add_argument("--threshold-coefficient", type=float, default=1.63)
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("series-check", help="exact Euler-product round-trip checks")
    sp.add_argument("--d", type=int, default=5)
    sp.add_argument("--x", type=int, default=1000)
    sp.add_argument("--count", type=int, default=5)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_series_check)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except HilbertSignsError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
