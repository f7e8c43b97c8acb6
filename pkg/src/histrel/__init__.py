"""Supporting/covering weights for histogram sets and relevance scoring.

The library solves two variational problems over a set of sample histograms
(the best guaranteed pairing and the tightest cap on pairings), certifies the
results by complementary slackness, and uses the optimal weights to score how
relevant new samples are to the set.
"""

from .binary import (
    MIXED,
    ONE_DOMINANT,
    ZERO_DOMINANT,
    BinaryCase,
    binary_dual_case1,
    binary_dual_case2,
    classify_binary,
    solve_binary,
)
from .core import (
    COVERING,
    FLOAT,
    FLOAT_EPS,
    RATIONAL,
    SUPPORTING,
    Alphabet,
    Histogram,
    HistogramSet,
    Sample,
    Weight,
    build_histogram,
    distinct_rows,
    irrelevance_score,
    pairing,
    relevance_score,
)
from .errors import (
    AlphabetMismatch,
    CapExceeded,
    CertificationFailure,
    DegeneratePair,
    EmptySet,
    HistrelError,
    IterationCapExceeded,
    LengthMismatch,
    NotBinary,
    NumericalFailure,
    ParseError,
    UnknownSymbol,
    ValidationError,
    WrongCase,
)
from .game import (
    CertificateReport,
    DualWeight,
    GameSolution,
    certify,
    covering_lp,
    extract_dual,
    make_solution,
    solve_covering,
    solve_supporting,
    supporting_lp,
)
from .io import (
    ScoreReport,
    WeightProfile,
    ingest_samples,
    load_histogram_set,
    load_profile,
    save_histogram_set,
    save_profile,
    save_score_report,
    score_profile,
    solve_profile,
)
from .oracle import oracle_grid, oracle_solve
from .reduce import (
    ReductionStep,
    ReductionTrace,
    corollary_threshold_check,
    redistribute_weight,
    reduce_fixpoint,
    reducible_symbols,
)
from .simplex import SimplexResult, StandardFormLP, simplex_optimize

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "AlphabetMismatch",
    "BinaryCase",
    "CapExceeded",
    "CertificateReport",
    "CertificationFailure",
    "COVERING",
    "DegeneratePair",
    "DualWeight",
    "EmptySet",
    "FLOAT",
    "FLOAT_EPS",
    "GameSolution",
    "Histogram",
    "HistogramSet",
    "HistrelError",
    "IterationCapExceeded",
    "LengthMismatch",
    "MIXED",
    "NotBinary",
    "NumericalFailure",
    "ONE_DOMINANT",
    "ParseError",
    "RATIONAL",
    "ReductionStep",
    "ReductionTrace",
    "Sample",
    "ScoreReport",
    "SimplexResult",
    "StandardFormLP",
    "SUPPORTING",
    "UnknownSymbol",
    "ValidationError",
    "Weight",
    "WeightProfile",
    "WrongCase",
    "ZERO_DOMINANT",
    "binary_dual_case1",
    "binary_dual_case2",
    "build_histogram",
    "certify",
    "classify_binary",
    "corollary_threshold_check",
    "covering_lp",
    "distinct_rows",
    "extract_dual",
    "ingest_samples",
    "irrelevance_score",
    "load_histogram_set",
    "load_profile",
    "make_solution",
    "oracle_grid",
    "oracle_solve",
    "pairing",
    "redistribute_weight",
    "reduce_fixpoint",
    "reducible_symbols",
    "relevance_score",
    "save_histogram_set",
    "save_profile",
    "save_score_report",
    "score_profile",
    "simplex_optimize",
    "solve_binary",
    "solve_covering",
    "solve_profile",
    "solve_supporting",
    "supporting_lp",
]
