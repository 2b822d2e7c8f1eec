"""Command-line front end.

Exit codes: 0 success, 1 domain or input error, 2 usage error, 3 a lemma
check failed.
"""

from __future__ import annotations

import argparse
import io
import sys

from . import numerics
from .huber import cocompact_ledger, cofinite_ledger, ledger_report, load_invariants, psl2z_preset
from .numerics import DomainError, QuadratureError, fixed
from .spectrum import export_csv, modular_spectrum, split_spectrum

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_LEMMA = 0, 1, 2, 3


def _bounded_int(lo, hi=None):
    def conv(text):
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
        if v < lo or (hi is not None and v > hi):
            rng = f">= {lo}" if hi is None else f"in [{lo}, {hi}]"
            raise argparse.ArgumentTypeError(f"must be {rng}, got {v}")
        return v
    return conv


def _number(text):
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=_bounded_int(numerics.MIN_PREC), default=None,
                        help="working precision in bits (default: $HUBERKIT_PRECISION or 128)")
    common.add_argument("--decimal-places", type=_bounded_int(2, 30), default=6,
                        help="fixed-point digits in CSV output (default 6)")
    common.add_argument("--threads", type=_bounded_int(1), default=1,
                        help="worker processes for the discriminant sweep")
    common.add_argument("--out", default=None, help="write to this file instead of stdout")

    p = argparse.ArgumentParser(prog="huberkit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", parents=[common],
                        help="primitive length spectrum of PSL(2,Z) as CSV")
    sp.add_argument("--max-norm", type=_number, required=True)
    sp.add_argument("--header", action="store_true", help="emit a header row")

    sp = sub.add_parser("split", parents=[common],
                        help="length spectrum of the principal congruence subgroup Gamma(N)")
    sp.add_argument("--level", type=_bounded_int(2), required=True)
    sp.add_argument("--max-norm", type=_number, required=True)
    sp.add_argument("--header", action="store_true")

    sp = sub.add_parser("constants", parents=[common], help="constant ledger report")
    sp.add_argument("--invariants", help="key = value invariants file")
    sp.add_argument("--preset", choices=["psl2z"])
    sp.add_argument("--mode", choices=["cocompact", "cofinite"], default=None)

    sp = sub.add_parser("verify-pgt", parents=[common],
                        help="prime geodesic table and empirical Huber estimate")
    sp.add_argument("--max-norm", type=_number, required=True)
    sp.add_argument("--preset", choices=["psl2z"])
    sp.add_argument("--invariants", help="take small_s from this invariants file")
    sp.add_argument("--level", type=_bounded_int(2), default=None,
                    help="use the spectrum of Gamma(level) instead of PSL(2,Z)")

    sp = sub.add_parser("check-lemmas", parents=[common], help="lemma certification report")
    sp.add_argument("--quick", action="store_true", help="coarser grids")
    return p


def _write(args, text):
    if args.out:
        with open(args.out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _invariants(args, default_preset=False):
    if getattr(args, "invariants", None):
        return load_invariants(args.invariants)
    if getattr(args, "preset", None) == "psl2z" or default_preset:
        return psl2z_preset()
    return None


def _spectrum(args):
    return modular_spectrum(args.max_norm, args.precision, workers=args.threads)


def cmd_spectrum(args):
    buf = io.StringIO()
    export_csv(_spectrum(args), buf, args.decimal_places, args.header, args.precision)
    _write(args, buf.getvalue())
    return EXIT_OK


def cmd_split(args):
    base = _spectrum(args)
    s = split_spectrum(base, args.level, args.max_norm)
    buf = io.StringIO()
    export_csv(s, buf, args.decimal_places, args.header, args.precision)
    _write(args, buf.getvalue())
    return EXIT_OK


def cmd_constants(args):
    inv = _invariants(args)
    if inv is None:
        raise DomainError("give --invariants FILE or --preset psl2z")
    mode = args.mode or ("cofinite" if (inv.tau or inv.elliptic) else "cocompact")
    ledger = (cofinite_ledger if mode == "cofinite" else cocompact_ledger)(inv, args.precision)
    _write(args, ledger_report(ledger))
    return EXIT_OK


def cmd_verify_pgt(args):
    from .verify import empirical_huber, pgt_csv, pgt_table

    inv = _invariants(args, default_preset=True)
    small_s = inv.small_s
    if args.max_norm <= 1:
        raise DomainError("spectrum empty below smallest norm")
    s = _spectrum(args)
    if args.level is not None:
        s = split_spectrum(s, args.level)
    if s.is_empty:
        raise DomainError("spectrum empty below smallest norm")
    rows = pgt_table(s, small_s, args.precision)
    text = pgt_csv(rows, args.decimal_places)
    places = args.decimal_places
    for mode, label in (("sup", "both one-sided limits at jumps plus grid"),
                        ("norms", "at the norms only")):
        h = empirical_huber(s, small_s, mode=mode, prec=args.precision)
        text += (f"# empirical_huber[{mode}] = {fixed(h.value, places)} at x = "
                 f"{fixed(h.x, places)} ({h.side}, pi = {h.pi}); {label}\n")
    _write(args, text)
    return EXIT_OK


def cmd_check_lemmas(args):
    from .verify import bump_constants, certification_report, lemma_suite

    prec = args.precision or 64
    if args.quick:
        reports = lemma_suite(n_t=64, n_r=128, prec=prec)
    else:
        reports = lemma_suite(prec=prec)
    bump = bump_constants(prec)
    _write(args, certification_report(reports, bump))
    c0, pp, c1r, c2r = bump
    ok = all(r.passed is not False for r in reports) and c1r.passed and c2r.passed and pp <= 106
    return EXIT_OK if ok else EXIT_LEMMA


COMMANDS = {
    "spectrum": cmd_spectrum,
    "split": cmd_split,
    "constants": cmd_constants,
    "verify-pgt": cmd_verify_pgt,
    "check-lemmas": cmd_check_lemmas,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (DomainError, QuadratureError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
