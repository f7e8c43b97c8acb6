"""File ingestion, serialization, and the solve/score pipeline.

Formats are deliberately small: sample files are plain CSV (one sample per
line, comma-separated single-token symbols), histogram sets and all derived
artifacts are JSON. Rational values serialize as exact ``p/q`` strings,
floats as shortest round-trip decimals, so rational-mode files round-trip
bit-exactly. All file writes are whole-file atomic.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction

from .binary import solve_binary
from .core import (
    COVERING,
    FLOAT_EPS,
    RATIONAL,
    SUPPORTING,
    Alphabet,
    ArithmeticMode,
    HistogramSet,
    Number,
    Sample,
    Weight,
    build_histogram,
    irrelevance_score,
    relevance_score,
    require_arithmetic,
)
from .errors import (
    AlphabetMismatch,
    CertificationFailure,
    EmptySet,
    LengthMismatch,
    ParseError,
    UnknownSymbol,
)
from .game import (
    DualWeight,
    GameSolution,
    certify,
    make_solution,
    solve_covering,
    solve_supporting,
)
from .reduce import ReductionStep, ReductionTrace

PROFILE_FORMAT = "histrel-profile/1"
SCORES_FORMAT = "histrel-scores/1"

FLAGS_NOTE = (
    "meets_support (relevance >= supporting value) and within_cover "
    "(irrelevance <= covering value) are a reporting convention, not part of "
    "the scores themselves; every member of the solved set satisfies both."
)


def atomic_write_text(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".histrel-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def encode_number(value: Number, mode: ArithmeticMode):
    if mode == RATIONAL:
        return str(Fraction(value))
    return float(value)


def decode_number(value, mode: ArithmeticMode) -> Number:
    if mode == RATIONAL:
        if isinstance(value, float):
            raise ParseError(None, f"rational file contains a float value {value!r}")
        return Fraction(value) if isinstance(value, str) else Fraction(int(value))
    return float(value)


# ---------------------------------------------------------------------------
# histogram sets
# ---------------------------------------------------------------------------


def histogram_set_to_json(histograms: HistogramSet) -> dict:
    return {
        "alphabet": list(histograms.alphabet.symbols),
        "sample_length": histograms.sample_length,
        "histograms": [list(m.counts) for m in histograms.members],
    }


def histogram_set_from_json(obj: dict) -> HistogramSet:
    for key in ("alphabet", "sample_length", "histograms"):
        if key not in obj:
            raise ParseError(None, f"histogram file is missing the {key!r} key")
    alphabet = Alphabet(tuple(str(s) for s in obj["alphabet"]))
    rows = [tuple(int(c) for c in row) for row in obj["histograms"]]
    if not rows:
        raise EmptySet("histogram file lists no histograms")
    return HistogramSet.from_counts(alphabet, rows, int(obj["sample_length"]))


def dumps_histogram_set(histograms: HistogramSet) -> str:
    return json.dumps(histogram_set_to_json(histograms), indent=2) + "\n"


def digest_histogram_set(histograms: HistogramSet) -> str:
    canonical = json.dumps(histogram_set_to_json(histograms), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def save_histogram_set(histograms: HistogramSet, path: str) -> None:
    atomic_write_text(path, dumps_histogram_set(histograms))


def _parse_json_text(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, f"invalid JSON: {exc.msg}") from None


def load_histogram_set(path: str) -> HistogramSet:
    with open(path, "r", encoding="utf-8") as handle:
        return histogram_set_from_json(_parse_json_text(handle.read()))


def ingest_samples(path: str, alphabet: Alphabet | None = None) -> HistogramSet:
    """Read samples from CSV (or an already-built histogram JSON file).

    CSV rows become one histogram each; every row must have the length of the
    first row. Without an explicit alphabet the symbols are inferred from the
    data and ordered lexicographically.
    """
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        histograms = histogram_set_from_json(_parse_json_text(text))
        if alphabet is not None and histograms.alphabet != alphabet:
            raise AlphabetMismatch(
                f"file alphabet {histograms.alphabet.symbols} differs from {alphabet.symbols}"
            )
        return histograms
    return _ingest_csv(text, alphabet)


def _ingest_csv(text: str, alphabet: Alphabet | None) -> HistogramSet:
    rows: list[tuple[int, list[str]]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        tokens = [tok.strip() for tok in line.split(",")]
        if any(not tok for tok in tokens):
            raise ParseError(lineno, "empty symbol token")
        rows.append((lineno, tokens))
    if not rows:
        raise EmptySet("sample file contains no rows")
    expected = len(rows[0][1])
    for lineno, tokens in rows:
        if len(tokens) != expected:
            raise LengthMismatch(line=lineno, expected=expected, actual=len(tokens))
    if alphabet is None:
        alphabet = Alphabet(tuple(sorted({tok for _, tokens in rows for tok in tokens})))
    members = []
    for lineno, tokens in rows:
        try:
            members.append(build_histogram(Sample(tuple(tokens)), alphabet))
        except UnknownSymbol as exc:
            raise UnknownSymbol(exc.label, position=exc.position, line=lineno) from None
    return HistogramSet(alphabet, expected, tuple(members))


# ---------------------------------------------------------------------------
# weight profiles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeightProfile:
    """Both solved problems for one histogram set, as a persistable unit."""

    alphabet: Alphabet
    sample_length: int
    members: tuple[tuple[int, ...], ...]
    supporting: GameSolution
    covering: GameSolution
    mode: ArithmeticMode
    input_digest: str

    def histogram_set(self) -> HistogramSet:
        return HistogramSet.from_counts(self.alphabet, self.members, self.sample_length)


def solve_profile(
    histograms: HistogramSet,
    arithmetic: ArithmeticMode = RATIONAL,
    *,
    tol: float = FLOAT_EPS,
) -> WeightProfile:
    """Solve both problems and bundle the results.

    Two-symbol alphabets take the closed-form path; everything else reduces
    and then pivots. Both solutions must certify before the profile exists.
    """
    require_arithmetic(arithmetic)
    if len(histograms.alphabet) == 2:
        supporting, covering = solve_binary(histograms, arithmetic)
    else:
        supporting = solve_supporting(histograms, arithmetic, tol=tol)
        covering = solve_covering(histograms, arithmetic, tol=tol)
    profile = WeightProfile(
        alphabet=histograms.alphabet,
        sample_length=histograms.sample_length,
        members=histograms.count_rows(),
        supporting=supporting,
        covering=covering,
        mode=arithmetic,
        input_digest=digest_histogram_set(histograms),
    )
    _check_profile(profile, tol)
    return profile


def _check_profile(profile: WeightProfile, tol: float) -> None:
    histograms = profile.histogram_set()
    for solution in (profile.supporting, profile.covering):
        report = certify(solution, histograms, tol=tol)
        if not report.passed:
            clauses = ", ".join(c.clause for c in report.failures())
            raise CertificationFailure(f"{solution.mode} solution fails: {clauses}")
    baseline = Fraction(profile.sample_length, len(profile.alphabet))
    exact = profile.mode == RATIONAL
    low = profile.supporting.alpha - baseline
    high = baseline - profile.covering.alpha
    slack = 0 if exact else tol
    if low < -slack or high < -slack:
        raise CertificationFailure("values violate the uniform-weight bounds")


def _solution_to_json(solution: GameSolution, mode: ArithmeticMode) -> dict:
    return {
        "alpha": encode_number(solution.alpha, mode),
        "weight": [encode_number(v, mode) for v in solution.weight.values],
        "dual": [encode_number(v, mode) for v in solution.dual.values],
        "tight_members": list(solution.tight_members),
        "tight_symbols": list(solution.tight_symbols),
        "alternate_optima": solution.alternate_optima,
        "reduction": {
            "steps": [[s.symbol, s.pass_index] for s in solution.reduction_trace.steps],
            "surviving": list(solution.reduction_trace.surviving),
        },
    }


def _solution_from_json(
    obj: dict,
    problem,
    histograms: HistogramSet,
    mode: ArithmeticMode,
    tol: float,
) -> GameSolution:
    alpha = decode_number(obj["alpha"], mode)
    weight = Weight(
        histograms.alphabet, tuple(decode_number(v, mode) for v in obj["weight"]), mode
    )
    dual = DualWeight(tuple(decode_number(v, mode) for v in obj["dual"]), mode)
    reduction = obj.get("reduction", {})
    steps = tuple(
        ReductionStep(symbol=str(sym), mode=problem, pass_index=int(idx))
        for sym, idx in reduction.get("steps", [])
    )
    trace = ReductionTrace(steps, tuple(reduction.get("surviving", histograms.alphabet.symbols)))
    solution = make_solution(
        alpha,
        weight,
        dual,
        histograms,
        problem,
        trace,
        alternate_optima=bool(obj.get("alternate_optima", False)),
        tol=tol,
    )
    if list(solution.tight_members) != list(obj["tight_members"]) or list(
        solution.tight_symbols
    ) != list(obj["tight_symbols"]):
        raise CertificationFailure(f"stored tight sets for {problem} do not match the data")
    return solution


def profile_to_json(profile: WeightProfile) -> dict:
    return {
        "format": PROFILE_FORMAT,
        "mode": profile.mode,
        "alphabet": list(profile.alphabet.symbols),
        "sample_length": profile.sample_length,
        "histograms": [list(row) for row in profile.members],
        "provenance": {"input_sha256": profile.input_digest},
        "supporting": _solution_to_json(profile.supporting, profile.mode),
        "covering": _solution_to_json(profile.covering, profile.mode),
    }


def profile_from_json(obj: dict, *, tol: float = FLOAT_EPS) -> WeightProfile:
    if obj.get("format") != PROFILE_FORMAT:
        raise ParseError(None, f"not a weight profile (format {obj.get('format')!r})")
    mode = obj.get("mode")
    require_arithmetic(mode)
    alphabet = Alphabet(tuple(str(s) for s in obj["alphabet"]))
    members = tuple(tuple(int(c) for c in row) for row in obj["histograms"])
    histograms = HistogramSet.from_counts(alphabet, members, int(obj["sample_length"]))
    supporting = _solution_from_json(obj["supporting"], SUPPORTING, histograms, mode, tol)
    covering = _solution_from_json(obj["covering"], COVERING, histograms, mode, tol)
    profile = WeightProfile(
        alphabet=alphabet,
        sample_length=histograms.sample_length,
        members=members,
        supporting=supporting,
        covering=covering,
        mode=mode,
        input_digest=str(obj.get("provenance", {}).get("input_sha256", "")),
    )
    _check_profile(profile, tol)
    return profile


def dumps_profile(profile: WeightProfile) -> str:
    return json.dumps(profile_to_json(profile), indent=2) + "\n"


def save_profile(profile: WeightProfile, path: str) -> None:
    atomic_write_text(path, dumps_profile(profile))


def load_profile(path: str, *, tol: float = FLOAT_EPS) -> WeightProfile:
    with open(path, "r", encoding="utf-8") as handle:
        return profile_from_json(_parse_json_text(handle.read()), tol=tol)


# ---------------------------------------------------------------------------
# score reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScoreRow:
    index: int
    histogram: tuple[int, ...]
    relevance: Number
    irrelevance: Number
    relevance_ratio: Number | None
    irrelevance_ratio: Number | None
    meets_support: bool
    within_cover: bool


@dataclass(frozen=True)
class ScoreReport:
    alphabet: Alphabet
    sample_length: int
    mode: ArithmeticMode
    alpha_supporting: Number
    alpha_covering: Number
    rows: tuple[ScoreRow, ...]


def score_profile(profile: WeightProfile, samples: HistogramSet) -> ScoreReport:
    """Score every sample histogram against a solved profile.

    Relevance pairs against the supporting weight, irrelevance against the
    covering weight; ratios divide by the respective value (omitted when the
    covering value is zero). Flags compare directly, with no tolerance.
    """
    if samples.alphabet != profile.alphabet:
        raise AlphabetMismatch("sample alphabet differs from the profile alphabet")
    if samples.sample_length != profile.sample_length:
        raise LengthMismatch(expected=profile.sample_length, actual=samples.sample_length)
    sup = profile.supporting
    cov = profile.covering
    rows = []
    for i, member in enumerate(samples.members, start=1):
        relevance = relevance_score(member, sup.weight)
        irrelevance = irrelevance_score(member, cov.weight)
        rel_ratio = relevance / sup.alpha if sup.alpha != 0 else None
        irr_ratio = irrelevance / cov.alpha if cov.alpha != 0 else None
        rows.append(
            ScoreRow(
                index=i,
                histogram=member.counts,
                relevance=relevance,
                irrelevance=irrelevance,
                relevance_ratio=rel_ratio,
                irrelevance_ratio=irr_ratio,
                meets_support=relevance >= sup.alpha,
                within_cover=irrelevance <= cov.alpha,
            )
        )
    return ScoreReport(
        alphabet=profile.alphabet,
        sample_length=profile.sample_length,
        mode=profile.mode,
        alpha_supporting=sup.alpha,
        alpha_covering=cov.alpha,
        rows=tuple(rows),
    )


def score_report_to_json(report: ScoreReport) -> dict:
    mode = report.mode

    def opt(value):
        return None if value is None else encode_number(value, mode)

    return {
        "format": SCORES_FORMAT,
        "mode": mode,
        "alphabet": list(report.alphabet.symbols),
        "sample_length": report.sample_length,
        "alpha_supporting": encode_number(report.alpha_supporting, mode),
        "alpha_covering": encode_number(report.alpha_covering, mode),
        "flags_note": FLAGS_NOTE,
        "samples": [
            {
                "index": row.index,
                "histogram": list(row.histogram),
                "relevance": encode_number(row.relevance, mode),
                "irrelevance": encode_number(row.irrelevance, mode),
                "relevance_ratio": opt(row.relevance_ratio),
                "irrelevance_ratio": opt(row.irrelevance_ratio),
                "meets_support": row.meets_support,
                "within_cover": row.within_cover,
            }
            for row in report.rows
        ],
    }


def dumps_score_report(report: ScoreReport) -> str:
    return json.dumps(score_report_to_json(report), indent=2) + "\n"


def save_score_report(report: ScoreReport, path: str) -> None:
    atomic_write_text(path, dumps_score_report(report))
