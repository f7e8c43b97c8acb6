"""Command-line surface: ingest, solve, score, verify.

Exit codes are stable per error class so shell pipelines can branch on them;
see ``EXIT_CODES``. The default arithmetic mode is rational and can be
overridden per call with ``--mode`` or globally with the ``HISTREL_MODE``
environment variable.
"""

from __future__ import annotations

import argparse
import os
import sys

from .core import FLOAT, FLOAT_EPS, RATIONAL, Alphabet
from .errors import (
    AlphabetMismatch,
    CapExceeded,
    CertificationFailure,
    EmptySet,
    HistrelError,
    LengthMismatch,
    NumericalFailure,
    ParseError,
    UnknownSymbol,
    ValidationError,
)
from .io import (
    dumps_histogram_set,
    dumps_profile,
    dumps_score_report,
    ingest_samples,
    load_profile,
    save_histogram_set,
    save_profile,
    save_score_report,
    score_profile,
    solve_profile,
)
from .verify import run_verification

EXIT_CODES = {
    "ok": 0,
    "unexpected": 1,
    "usage": 2,
    "parse": 10,
    "unknown-symbol": 11,
    "length-mismatch": 12,
    "alphabet-mismatch": 13,
    "empty-set": 14,
    "numerical-failure": 15,
    "cap-exceeded": 16,
    "certification-failure": 17,
    "verification-failed": 18,
    "validation": 19,
}

_ERROR_CODE_ORDER = (
    (ParseError, "parse"),
    (UnknownSymbol, "unknown-symbol"),
    (LengthMismatch, "length-mismatch"),
    (AlphabetMismatch, "alphabet-mismatch"),
    (EmptySet, "empty-set"),
    (NumericalFailure, "numerical-failure"),
    (CapExceeded, "cap-exceeded"),
    (CertificationFailure, "certification-failure"),
    (ValidationError, "validation"),
)


def _exit_code_for(exc: HistrelError) -> int:
    for kind, name in _ERROR_CODE_ORDER:
        if isinstance(exc, kind):
            return EXIT_CODES[name]
    return EXIT_CODES["unexpected"]


def _default_mode() -> str:
    mode = os.environ.get("HISTREL_MODE", RATIONAL)
    return mode if mode in (RATIONAL, FLOAT) else RATIONAL


def _parse_alphabet(spec: str | None) -> Alphabet | None:
    if spec is None:
        return None
    labels = [tok.strip() for tok in spec.split(",") if tok.strip()]
    return Alphabet(tuple(labels))


def _emit(text: str, output: str | None, writer) -> None:
    if output is None or output == "-":
        sys.stdout.write(text)
    else:
        writer(output)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="histrel",
        description="Supporting/covering weights for histogram sets and relevance scoring.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ingest = sub.add_parser("ingest", help="read samples and emit a histogram-set file")
    ingest.add_argument("samples", help="CSV sample file (or an existing histogram JSON)")
    ingest.add_argument("-o", "--output", help="output path (default: stdout)")
    ingest.add_argument(
        "--alphabet",
        help="comma-separated labels; inferred from the data (sorted) when omitted",
    )
    ingest.set_defaults(func=cmd_ingest)

    solve = sub.add_parser("solve", help="solve both problems and emit a weight profile")
    solve.add_argument("input", help="histogram-set JSON (or CSV samples)")
    solve.add_argument("-o", "--output", help="output path (default: stdout)")
    solve.add_argument("--mode", choices=(RATIONAL, FLOAT), default=_default_mode())
    solve.add_argument("--tol", type=float, default=FLOAT_EPS, help="float-mode tolerance")
    solve.add_argument("--alphabet", help="alphabet override for CSV input")
    solve.set_defaults(func=cmd_solve)

    score = sub.add_parser("score", help="score samples against a weight profile")
    score.add_argument("profile", help="weight-profile JSON")
    score.add_argument("samples", help="CSV sample file or histogram JSON")
    score.add_argument("-o", "--output", help="output path (default: stdout)")
    score.set_defaults(func=cmd_score)

    verify = sub.add_parser("verify", help="run the oracle-equivalence property suite")
    verify.add_argument("input", nargs="?", help="optional instance file to verify alone")
    verify.add_argument("--trials", type=int, default=100)
    verify.add_argument("--seed", type=int, default=1)
    verify.add_argument("--max-v", type=int, default=4, help="largest alphabet (2..6)")
    verify.add_argument("--max-m", type=int, default=5, help="largest member count (1..8)")
    verify.add_argument("--max-t", type=int, default=12, help="largest sample length")
    verify.add_argument(
        "--binary-sweep",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="include the exhaustive two-member binary sweep",
    )
    verify.set_defaults(func=cmd_verify)

    return parser


def cmd_ingest(args) -> int:
    histograms = ingest_samples(args.samples, _parse_alphabet(args.alphabet))
    _emit(
        dumps_histogram_set(histograms),
        args.output,
        lambda path: save_histogram_set(histograms, path),
    )
    return EXIT_CODES["ok"]


def cmd_solve(args) -> int:
    histograms = ingest_samples(args.input, _parse_alphabet(args.alphabet))
    profile = solve_profile(histograms, args.mode, tol=args.tol)
    _emit(dumps_profile(profile), args.output, lambda path: save_profile(profile, path))
    return EXIT_CODES["ok"]


def cmd_score(args) -> int:
    profile = load_profile(args.profile)
    samples = ingest_samples(args.samples, profile.alphabet)
    report = score_profile(profile, samples)
    _emit(dumps_score_report(report), args.output, lambda path: save_score_report(report, path))
    return EXIT_CODES["ok"]


def cmd_verify(args) -> int:
    if args.max_v > 6 or args.max_m > 8:
        raise CapExceeded("verification respects the oracle caps: --max-v <= 6, --max-m <= 8")
    instance = ingest_samples(args.input) if args.input else None
    report = run_verification(
        trials=args.trials,
        seed=args.seed,
        max_symbols=args.max_v,
        max_members=args.max_m,
        max_length=args.max_t,
        include_binary_sweep=args.binary_sweep and instance is None,
        include_targeted=instance is None,
        instance=instance,
    )
    for line in report.lines():
        print(line)
    print("verification:", "PASS" if report.passed else "FAIL")
    return EXIT_CODES["ok"] if report.passed else EXIT_CODES["verification-failed"]


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except HistrelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _exit_code_for(exc)


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
