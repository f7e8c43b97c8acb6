"""Closed forms for two-symbol alphabets.

Every two-symbol set falls into one of three cases: the first component
dominates in every member, the second does, or members straddle the middle.
Dominant cases put all weight on the dominant symbol with the extreme count
as the value; the straddling case pins both values to half the sample length
at the even weight. The certifying member distributions are explicit: point
or uniform mass on the extreme members in the dominant cases, and a
two-member balance solution in the straddling case.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    COVERING,
    RATIONAL,
    SUPPORTING,
    ArithmeticMode,
    Histogram,
    HistogramSet,
    Weight,
    distinct_rows,
    require_arithmetic,
)
from .errors import DegeneratePair, NotBinary, WrongCase
from .game import DualWeight, GameSolution, make_solution

ZERO_DOMINANT = "zero_dominant"
ONE_DOMINANT = "one_dominant"
MIXED = "mixed"


@dataclass(frozen=True)
class BinaryCase:
    """Case tag, plus the straddling witness pair when mixed."""

    tag: str
    witnesses: tuple[Histogram, Histogram] | None = None


def _require_binary(histograms: HistogramSet) -> None:
    if len(histograms.alphabet) != 2:
        raise NotBinary(f"need a two-symbol alphabet, got {len(histograms.alphabet)} symbols")


def classify_binary(histograms: HistogramSet) -> BinaryCase:
    """Split a two-symbol set by which component dominates in every member.

    The three tags are mutually exclusive and exhaustive. Mixed witnesses
    prefer a balanced member; otherwise the pair maximizes the second and
    first components respectively, which keeps the balance denominators
    nonzero. Duplicates never influence the choice.
    """
    _require_binary(histograms)
    unique, _ = distinct_rows(histograms.count_rows())
    if all(row[0] > row[1] for row in unique):
        return BinaryCase(ZERO_DOMINANT)
    if all(row[1] > row[0] for row in unique):
        return BinaryCase(ONE_DOMINANT)
    alphabet = histograms.alphabet
    balanced = next((row for row in unique if row[0] == row[1]), None)
    if balanced is not None:
        member = Histogram(alphabet, balanced)
        return BinaryCase(MIXED, (member, member))
    heavy_one = max(unique, key=lambda row: row[1])
    heavy_zero = max(unique, key=lambda row: row[0])
    return BinaryCase(MIXED, (Histogram(alphabet, heavy_one), Histogram(alphabet, heavy_zero)))


def _canonical_distribution(histograms, component, pick_min, arithmetic) -> DualWeight:
    """Uniform mass over the distinct members attaining the extreme count in
    one component, placed on first occurrences."""
    unique, origins = distinct_rows(histograms.count_rows())
    counts = [row[component] for row in unique]
    target = min(counts) if pick_min else max(counts)
    achievers = [origins[u] for u, v in enumerate(counts) if v == target]
    exact = arithmetic == RATIONAL
    share = Fraction(1, len(achievers)) if exact else 1.0 / len(achievers)
    zero = Fraction(0) if exact else 0.0
    values = [zero] * len(histograms.members)
    for i in achievers:
        values[i] = share
    return DualWeight(tuple(values), arithmetic)


def binary_dual_case1(
    histograms: HistogramSet, arithmetic: ArithmeticMode = RATIONAL
) -> tuple[DualWeight, DualWeight]:
    """Member distributions for the dominant-first-symbol case.

    The supporting problem's dual concentrates on members attaining the
    minimal first count (their weighted first column reproduces the value);
    the covering problem's dual concentrates on members attaining the maximal
    second count.
    """
    require_arithmetic(arithmetic)
    if classify_binary(histograms).tag != ZERO_DOMINANT:
        raise WrongCase("first component does not dominate in every member")
    supporting = _canonical_distribution(histograms, 0, pick_min=True, arithmetic=arithmetic)
    covering = _canonical_distribution(histograms, 1, pick_min=False, arithmetic=arithmetic)
    return supporting, covering


def binary_dual_case2(
    histograms: HistogramSet,
    witnesses: tuple[Histogram, Histogram],
    arithmetic: ArithmeticMode = RATIONAL,
) -> DualWeight:
    """Two-member balance distribution for the straddling case.

    Mass lands only on the witness pair, chosen so that both weighted column
    sums equal half the sample length. A coincident pair must be balanced and
    takes all the mass.
    """
    require_arithmetic(arithmetic)
    _require_binary(histograms)
    prime, second = witnesses
    if prime.counts[1] < prime.counts[0] or second.counts[1] > second.counts[0]:
        raise WrongCase("witnesses do not straddle the middle")
    rows = histograms.count_rows()
    exact = arithmetic == RATIONAL
    zero = Fraction(0) if exact else 0.0
    values = [zero] * len(rows)

    def first_index(counts) -> int:
        try:
            return rows.index(counts)
        except ValueError:
            raise WrongCase("witness is not a member of the set") from None

    if prime.counts == second.counts:
        values[first_index(prime.counts)] = Fraction(1) if exact else 1.0
        return DualWeight(tuple(values), arithmetic)

    half = Fraction(histograms.sample_length, 2) if exact else histograms.sample_length / 2.0
    denominator = second.counts[0] - prime.counts[0]
    if denominator == 0:
        raise DegeneratePair("witnesses share their first count")
    if exact:
        mass_prime = Fraction(second.counts[0] - half, denominator)
        mass_second = Fraction(half - prime.counts[0], denominator)
    else:
        mass_prime = (second.counts[0] - half) / denominator
        mass_second = (half - prime.counts[0]) / denominator
    values[first_index(prime.counts)] = mass_prime
    values[first_index(second.counts)] = mass_second
    return DualWeight(tuple(values), arithmetic)


def solve_binary(
    histograms: HistogramSet, arithmetic: ArithmeticMode = RATIONAL
) -> tuple[GameSolution, GameSolution]:
    """Both game solutions for a two-symbol set, without touching the LP.

    The dominant-second-symbol case relabels the symbols, applies the
    dominant-first forms, and swaps back. In the straddling case the even
    weight solves both problems, it is the unique optimum exactly when both
    strict straddle directions occur, and one balance distribution certifies
    both values.
    """
    require_arithmetic(arithmetic)
    _require_binary(histograms)
    case = classify_binary(histograms)
    alphabet = histograms.alphabet
    rows = histograms.count_rows()
    exact = arithmetic == RATIONAL

    def number(v):
        return Fraction(v) if exact else float(v)

    if case.tag == ZERO_DOMINANT:
        sup_alpha = number(min(row[0] for row in rows))
        cov_alpha = number(max(row[1] for row in rows))
        sup_weight = Weight.point_mass(alphabet, 0, arithmetic)
        cov_weight = Weight.point_mass(alphabet, 1, arithmetic)
        sup_dual, cov_dual = binary_dual_case1(histograms, arithmetic)
        sup_alt = cov_alt = False
    elif case.tag == ONE_DOMINANT:
        sup_alpha = number(min(row[1] for row in rows))
        cov_alpha = number(max(row[0] for row in rows))
        sup_weight = Weight.point_mass(alphabet, 1, arithmetic)
        cov_weight = Weight.point_mass(alphabet, 0, arithmetic)
        sup_dual = _canonical_distribution(histograms, 1, pick_min=True, arithmetic=arithmetic)
        cov_dual = _canonical_distribution(histograms, 0, pick_min=False, arithmetic=arithmetic)
        sup_alt = cov_alt = False
    else:
        half = (
            Fraction(histograms.sample_length, 2)
            if exact
            else histograms.sample_length / 2.0
        )
        sup_alpha = cov_alpha = half
        sup_weight = cov_weight = Weight.uniform(alphabet, arithmetic)
        dual = binary_dual_case2(histograms, case.witnesses, arithmetic)
        sup_dual = cov_dual = dual
        forced = any(row[1] > row[0] for row in rows) and any(row[0] > row[1] for row in rows)
        sup_alt = cov_alt = not forced

    supporting = make_solution(
        sup_alpha, sup_weight, sup_dual, histograms, SUPPORTING, alternate_optima=sup_alt
    )
    covering = make_solution(
        cov_alpha, cov_weight, cov_dual, histograms, COVERING, alternate_optima=cov_alt
    )
    return supporting, covering
