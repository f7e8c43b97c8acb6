"""Supporting and covering solvers with dual certificates.

The supporting problem maximizes the worst-case pairing over the weight
simplex; the covering problem minimizes the best case. Both are solved as
equality-form programs on the reduced alphabet, the returned weight is
zero-padded back to the full alphabet, and the row duals of the optimal
basis normalize to a distribution over members that certifies the value by
complementary slackness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import (
    COVERING,
    FLOAT_EPS,
    RATIONAL,
    SUPPORTING,
    ArithmeticMode,
    HistogramSet,
    Number,
    ProblemMode,
    Weight,
    distinct_rows,
    pairing,
    require_arithmetic,
    require_problem_mode,
)
from .errors import EmptySet, ValidationError
from .reduce import ReductionTrace, empty_trace, reduce_fixpoint
from .simplex import SimplexResult, StandardFormLP, simplex_optimize


@dataclass(frozen=True)
class DualWeight:
    """A probability vector over the members of a histogram set."""

    values: tuple[Number, ...]
    mode: ArithmeticMode = RATIONAL

    def __post_init__(self):
        require_arithmetic(self.mode)
        values = tuple(self.values)
        if not values:
            raise ValidationError("dual weight needs at least one component")
        if self.mode == RATIONAL:
            values = tuple(Fraction(v) for v in values)
            if any(v < 0 for v in values):
                raise ValidationError("dual components must be nonnegative")
            if sum(values) != 1:
                raise ValidationError(f"dual components sum to {sum(values)}, expected 1")
        else:
            values = tuple(float(v) for v in values)
            if any(v < -FLOAT_EPS for v in values):
                raise ValidationError("dual components must be nonnegative")
            if abs(sum(values) - 1.0) > FLOAT_EPS:
                raise ValidationError(f"dual components sum to {sum(values)}, expected 1")
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class GameSolution:
    """One solved variational problem.

    ``tight_members`` are the members whose pairing equals the value;
    ``tight_symbols`` carry positive weight. ``alternate_optima`` warns that
    other optimal weights may exist, in which case downstream scores depend
    on which optimum is used.
    """

    alpha: Number
    weight: Weight
    dual: DualWeight
    tight_members: tuple[int, ...]
    tight_symbols: tuple[int, ...]
    mode: ProblemMode
    reduction_trace: ReductionTrace
    alternate_optima: bool = False


@dataclass(frozen=True)
class CertificateCheck:
    clause: str
    passed: bool
    violation: float = 0.0
    detail: str = ""


@dataclass(frozen=True)
class CertificateReport:
    mode: ProblemMode
    passed: bool
    checks: tuple[CertificateCheck, ...]
    max_violation: float

    def failures(self) -> tuple[CertificateCheck, ...]:
        return tuple(c for c in self.checks if not c.passed)


def _close(a, b, exact: bool, tol: float) -> bool:
    return a == b if exact else abs(a - b) <= tol


def supporting_lp(
    rows: Sequence[Sequence[int]], arithmetic: ArithmeticMode = RATIONAL
) -> tuple[StandardFormLP, tuple[int, ...]]:
    """Equality-form program for the supporting value.

    Variables are ``x`` (one per symbol), the value, then one surplus per
    member row. The starting basis holds every surplus plus ``x_0``, which is
    feasible because the member counts are nonnegative.
    """
    convert = Fraction if arithmetic == RATIONAL else float
    k, n = len(rows), len(rows[0])
    zero, one = convert(0), convert(1)
    lp_rows = []
    for i, row in enumerate(rows):
        surplus = [zero] * k
        surplus[i] = -one
        lp_rows.append(tuple(convert(v) for v in row) + (-one,) + tuple(surplus))
    lp_rows.append((one,) * n + (zero,) * (k + 1))
    objective = (zero,) * n + (one,) + (zero,) * k
    rhs = (zero,) * k + (one,)
    basis = tuple(n + 1 + i for i in range(k)) + (0,)
    return StandardFormLP(objective, tuple(lp_rows), rhs), basis


def covering_lp(
    rows: Sequence[Sequence[int]], arithmetic: ArithmeticMode = RATIONAL
) -> tuple[StandardFormLP, tuple[int, ...]]:
    """Equality-form program for the covering value (the value is minimized,
    so the objective carries a negated value variable).

    The starting basis holds the value, ``x_0``, and every surplus except the
    one for a row maximizing the first component, which keeps all surpluses
    nonnegative at the start.
    """
    convert = Fraction if arithmetic == RATIONAL else float
    k, n = len(rows), len(rows[0])
    zero, one = convert(0), convert(1)
    lp_rows = []
    for i, row in enumerate(rows):
        surplus = [zero] * k
        surplus[i] = -one
        lp_rows.append(tuple(-convert(v) for v in row) + (one,) + tuple(surplus))
    lp_rows.append((one,) * n + (zero,) * (k + 1))
    objective = (zero,) * n + (-one,) + (zero,) * k
    rhs = (zero,) * k + (one,)
    anchor = max(range(k), key=lambda i: (rows[i][0], -i))
    basis = (n, 0) + tuple(n + 1 + i for i in range(k) if i != anchor)
    return StandardFormLP(objective, tuple(lp_rows), rhs), basis


def extract_dual(
    result: SimplexResult,
    rows: Sequence[Sequence[int]],
    problem: ProblemMode,
    arithmetic: ArithmeticMode = RATIONAL,
    *,
    tol: float = FLOAT_EPS,
) -> DualWeight:
    """Dual distribution over member rows from an optimal basis.

    The negated row multipliers of the member constraints are nonnegative at
    an optimum and normalize to a distribution. They can all vanish only when
    the covering value is zero; the fallback then places uniform mass on the
    tight rows, which certifies the same value.
    """
    require_problem_mode(problem)
    exact = arithmetic == RATIONAL
    k = len(rows)
    raw = [-y for y in result.row_duals[:k]]
    if not exact:
        raw = [0.0 if abs(v) <= tol else v for v in raw]
    total = sum(raw)
    if (exact and total > 0) or (not exact and total > tol):
        values = [v / total for v in raw]
    else:
        n = len(rows[0])
        xs = result.solution[:n]
        alpha = result.solution[n]
        tight = [
            i
            for i, row in enumerate(rows)
            if _close(sum(x * v for x, v in zip(xs, row)), alpha, exact, tol)
        ]
        if not tight:
            raise ValidationError("no tight member row to anchor the dual")
        share = Fraction(1, len(tight)) if exact else 1.0 / len(tight)
        values = [share if i in set(tight) else (Fraction(0) if exact else 0.0) for i in range(k)]
    return DualWeight(tuple(values), arithmetic)


def make_solution(
    alpha: Number,
    weight: Weight,
    dual: DualWeight,
    histograms: HistogramSet,
    problem: ProblemMode,
    trace: ReductionTrace | None = None,
    *,
    alternate_optima: bool = False,
    tol: float = FLOAT_EPS,
) -> GameSolution:
    """Assemble a solution, computing the tight sets from the data."""
    require_problem_mode(problem)
    if trace is None:
        trace = empty_trace(histograms.alphabet.symbols)
    exact = weight.mode == RATIONAL
    tight_members = tuple(
        i
        for i, member in enumerate(histograms.members)
        if _close(pairing(weight, member), alpha, exact, tol)
    )
    positive = (lambda v: v > 0) if exact else (lambda v: v > tol)
    tight_symbols = tuple(j for j, v in enumerate(weight.values) if positive(v))
    return GameSolution(
        alpha=alpha,
        weight=weight,
        dual=dual,
        tight_members=tight_members,
        tight_symbols=tight_symbols,
        mode=problem,
        reduction_trace=trace,
        alternate_optima=alternate_optima,
    )


def solve_supporting(
    histograms: HistogramSet,
    arithmetic: ArithmeticMode = RATIONAL,
    *,
    tol: float = FLOAT_EPS,
    use_reduction: bool = True,
) -> GameSolution:
    """Maximize the worst-case pairing over the weight simplex.

    Returns the value, one optimal vertex weight (zero on every symbol the
    threshold reduction eliminated), and a certifying member distribution.
    The value never falls below ``|T| / |V|``.
    """
    return _solve_game(histograms, SUPPORTING, arithmetic, tol, use_reduction)


def solve_covering(
    histograms: HistogramSet,
    arithmetic: ArithmeticMode = RATIONAL,
    *,
    tol: float = FLOAT_EPS,
    use_reduction: bool = True,
) -> GameSolution:
    """Minimize the best-case pairing over the weight simplex.

    The value never exceeds ``|T| / |V|``.
    """
    return _solve_game(histograms, COVERING, arithmetic, tol, use_reduction)


def _solve_game(histograms, problem, arithmetic, tol, use_reduction) -> GameSolution:
    require_problem_mode(problem)
    require_arithmetic(arithmetic)
    if not histograms.members:
        raise EmptySet("cannot solve an empty histogram set")
    alphabet = histograms.alphabet
    if use_reduction and len(alphabet) >= 2:
        restricted, trace = reduce_fixpoint(histograms, problem)
    else:
        restricted, trace = histograms.count_rows(), empty_trace(alphabet.symbols)
    surviving = [alphabet.index(s) for s in trace.surviving]
    unique_rows, origins = distinct_rows(restricted)
    exact = arithmetic == RATIONAL

    if len(surviving) == 1:
        alpha, weight, dual_unique, alternate = _single_symbol_solution(
            unique_rows, surviving[0], alphabet, problem, arithmetic
        )
    else:
        build = supporting_lp if problem == SUPPORTING else covering_lp
        lp, basis = build(unique_rows, arithmetic)
        result = simplex_optimize(lp, arithmetic, tol=tol, basis=basis)
        n = len(unique_rows[0])
        alpha = result.solution[n]
        weight = _padded_weight(result.solution[:n], surviving, alphabet, arithmetic)
        dual_unique = extract_dual(result, unique_rows, problem, arithmetic, tol=tol).values
        basic = set(result.basis)
        flat = (lambda v: v == 0) if exact else (lambda v: abs(v) <= tol)
        alternate = any(j not in basic and flat(result.reduced_costs[j]) for j in range(n))

    dual_values = _spread_over_members(dual_unique, origins, len(histograms.members), exact)
    dual = DualWeight(dual_values, arithmetic)
    return make_solution(
        alpha,
        weight,
        dual,
        histograms,
        problem,
        trace,
        alternate_optima=alternate,
        tol=tol,
    )


def _single_symbol_solution(unique_rows, symbol_index, alphabet, problem, arithmetic):
    """Once reduction leaves one symbol the simplex is a point: the value is
    the extreme count there, and every optimal weight of the original problem
    is the zero-extended point mass."""
    exact = arithmetic == RATIONAL
    counts = [row[0] for row in unique_rows]
    best = min(counts) if problem == SUPPORTING else max(counts)
    achievers = [u for u, v in enumerate(counts) if v == best]
    share = Fraction(1, len(achievers)) if exact else 1.0 / len(achievers)
    zero = Fraction(0) if exact else 0.0
    dual_unique = tuple(share if u in set(achievers) else zero for u in range(len(counts)))
    alpha = Fraction(best) if exact else float(best)
    weight = Weight.point_mass(alphabet, symbol_index, arithmetic)
    return alpha, weight, dual_unique, False


def _padded_weight(values, surviving, alphabet, arithmetic):
    zero = Fraction(0) if arithmetic == RATIONAL else 0.0
    full = [zero] * len(alphabet)
    for pos, j in enumerate(surviving):
        full[j] = values[pos]
    return Weight(alphabet, tuple(full), arithmetic)


def _spread_over_members(dual_unique, origins, member_count, exact):
    """Duplicates were collapsed before solving; their mass sits on the first
    occurrence and the copies keep zero."""
    zero = Fraction(0) if exact else 0.0
    values = [zero] * member_count
    for u, origin in enumerate(origins):
        values[origin] = dual_unique[u]
    return tuple(values)


def certify(
    solution: GameSolution, histograms: HistogramSet, *, tol: float = FLOAT_EPS
) -> CertificateReport:
    """Check a solution against its set; failures are reported, never raised.

    Clauses: weight and dual lie on their simplices, the weight is feasible
    for the value, members with positive dual mass are tight, symbols with
    positive weight have dual column sums equal to the value, and the primal
    and dual values both equal the claimed value.
    """
    exact = solution.weight.mode == RATIONAL
    checks: list[CertificateCheck] = []

    def add(clause: str, violation, detail: str = "") -> None:
        magnitude = float(violation)
        checks.append(
            CertificateCheck(
                clause=clause,
                passed=magnitude <= (0.0 if exact else tol),
                violation=max(0.0, magnitude),
                detail=detail,
            )
        )

    weight = solution.weight
    dual = solution.dual
    alpha = solution.alpha

    if weight.alphabet != histograms.alphabet:
        checks.append(CertificateCheck("structure", False, float("inf"), "alphabet differs"))
        return CertificateReport(solution.mode, False, tuple(checks), float("inf"))
    if len(dual.values) != len(histograms.members):
        checks.append(CertificateCheck("structure", False, float("inf"), "dual length differs"))
        return CertificateReport(solution.mode, False, tuple(checks), float("inf"))

    add("weight-simplex", max(abs(sum(weight.values) - 1), -min(weight.values), 0))
    add("dual-simplex", max(abs(sum(dual.values) - 1), -min(dual.values), 0))

    pairings = [pairing(weight, m) for m in histograms.members]
    if solution.mode == SUPPORTING:
        primal_violation = max((alpha - p for p in pairings), default=0)
        primal_value = min(pairings)
    else:
        primal_violation = max((p - alpha for p in pairings), default=0)
        primal_value = max(pairings)
    add("primal-feasibility", max(primal_violation, 0))
    add("value-equality-primal", abs(primal_value - alpha))

    columns = [
        sum(d * m.counts[v] for d, m in zip(dual.values, histograms.members))
        for v in range(len(histograms.alphabet))
    ]
    if solution.mode == SUPPORTING:
        dual_violation = max((col - alpha for col in columns), default=0)
        dual_value = max(columns)
    else:
        dual_violation = max((alpha - col for col in columns), default=0)
        dual_value = min(columns)
    add("dual-feasibility", max(dual_violation, 0))
    add("value-equality-dual", abs(dual_value - alpha))

    positive = (lambda v: v > 0) if exact else (lambda v: v > tol)
    slack_members = max(
        (abs(pairings[i] - alpha) for i, d in enumerate(dual.values) if positive(d)),
        default=0,
    )
    add("slackness-members", slack_members, "positive dual mass on a non-tight member")
    slack_symbols = max(
        (abs(columns[v] - alpha) for v, w in enumerate(weight.values) if positive(w)),
        default=0,
    )
    add("slackness-symbols", slack_symbols, "positive weight on a slack dual column")

    passed = all(c.passed for c in checks)
    max_violation = max((c.violation for c in checks), default=0.0)
    return CertificateReport(solution.mode, passed, tuple(checks), max_violation)
