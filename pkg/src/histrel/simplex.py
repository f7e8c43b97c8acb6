"""Dense simplex for small equality-form programs.

Programs are stated as: maximize ``objective . z`` subject to
``rows . z == rhs`` with ``z >= 0``. Rational mode pivots over exact
fractions with Bland's smallest-index rule, which terminates without any
tolerance machinery and is bit-for-bit deterministic. Float mode runs the
same rule with an absolute tolerance and an iteration cap; if the cap is hit
(degenerate stalling) the solve is retried once on a slightly perturbed
right-hand side and the resulting basis is mapped back to the original data.

Row duals are recovered from the optimal basis by solving ``B^T y = c_B``
against the original columns, so complementary-slackness checks downstream
never have to re-derive tableau state.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import FLOAT, FLOAT_EPS, RATIONAL, ArithmeticMode, require_arithmetic
from .errors import IterationCapExceeded, ValidationError

DEFAULT_FLOAT_ITERATION_CAP = 10_000


@dataclass(frozen=True)
class StandardFormLP:
    """maximize ``objective . z`` subject to ``rows . z == rhs``, ``z >= 0``."""

    objective: tuple
    rows: tuple[tuple, ...]
    rhs: tuple

    def __post_init__(self):
        object.__setattr__(self, "objective", tuple(self.objective))
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        object.__setattr__(self, "rhs", tuple(self.rhs))
        n = len(self.objective)
        if not self.rows:
            raise ValidationError("program needs at least one constraint row")
        if any(len(r) != n for r in self.rows):
            raise ValidationError("constraint rows must match the objective length")
        if len(self.rhs) != len(self.rows):
            raise ValidationError("right-hand side must match the number of rows")


@dataclass(frozen=True)
class SimplexResult:
    """An optimal basic solution together with its basis certificates."""

    objective_value: object
    solution: tuple
    basis: tuple[int, ...]
    row_duals: tuple
    reduced_costs: tuple
    iterations: int


def simplex_optimize(
    lp: StandardFormLP,
    arithmetic: ArithmeticMode = RATIONAL,
    *,
    tol: float = FLOAT_EPS,
    basis: Sequence[int] | None = None,
    max_iterations: int | None = None,
) -> SimplexResult:
    """Solve a standard-form program to a basic optimal solution.

    The program must be feasible and bounded. When ``basis`` names a feasible
    starting basis phase one is skipped; otherwise artificial variables are
    introduced and driven out first. Identical inputs always produce the
    identical result.
    """
    require_arithmetic(arithmetic)
    if arithmetic == RATIONAL:
        return _solve(lp, basis, RATIONAL, Fraction(0), max_iterations)
    cap = DEFAULT_FLOAT_ITERATION_CAP if max_iterations is None else max_iterations
    try:
        return _solve(lp, basis, FLOAT, tol, cap)
    except IterationCapExceeded:
        result = _solve(_perturbed(lp), basis, FLOAT, tol, cap)
        return _rebuild_from_basis(lp, result.basis, tol)


def _perturbed(lp: StandardFormLP) -> StandardFormLP:
    scale = max(1.0, max(abs(float(v)) for v in lp.rhs))
    rhs = tuple(float(v) + (i + 1) * 1e-9 * scale for i, v in enumerate(lp.rhs))
    return StandardFormLP(lp.objective, lp.rows, rhs)


def _solve(lp, basis, numeric, tol, cap) -> SimplexResult:
    convert = Fraction if numeric == RATIONAL else float
    A = [[convert(v) for v in row] for row in lp.rows]
    b = [convert(v) for v in lp.rhs]
    c = [convert(v) for v in lp.objective]
    m, n = len(A), len(c)
    iterations = 0

    if basis is None:
        basis_list, phase1_iters = _phase_one(A, b, n, convert, tol, cap)
        iterations += phase1_iters
        costs = c + [convert(0)] * m  # artificial columns carry zero cost
    else:
        basis_list = list(basis)
        if len(basis_list) != m or len(set(basis_list)) != m:
            raise ValidationError("starting basis must name one distinct column per row")
        if any(j < 0 or j >= n for j in basis_list):
            raise ValidationError("starting basis names a column outside the program")
        _canonicalize(A, b, basis_list, tol)
        if min(b) < -tol:
            raise ValidationError("starting basis is infeasible")
        costs = c

    iterations += _pivot_to_optimum(A, b, costs, basis_list, n, tol, cap)
    return _finalize(lp, A, b, costs, basis_list, n, convert, iterations)


def _phase_one(A, b, n, convert, tol, cap):
    m = len(A)
    one, zero = convert(1), convert(0)
    for i in range(m):
        if b[i] < zero:
            A[i] = [-v for v in A[i]]
            b[i] = -b[i]
    for i in range(m):
        for r in range(m):
            A[r].append(one if r == i else zero)
    phase_costs = [zero] * n + [convert(-1)] * m
    basis_list = list(range(n, n + m))
    iterations = _pivot_to_optimum(A, b, phase_costs, basis_list, n + m, tol, cap)
    infeasibility = -sum(phase_costs[basis_list[r]] * b[r] for r in range(m))
    if infeasibility > tol:
        raise ValidationError("program is infeasible")
    # Clear leftover artificials from the basis where a real column can take
    # over; rows that cannot be cleared are redundant and keep a zero-valued
    # artificial, which forces the corresponding dual multiplier to zero.
    for r in range(m):
        if basis_list[r] >= n:
            for j in range(n):
                if abs(A[r][j]) > tol:
                    _apply_pivot(A, b, r, j)
                    basis_list[r] = j
                    break
    return basis_list, iterations


def _canonicalize(A, b, basis_list, tol):
    """Row-reduce so the basis columns form an identity, assigning each basis
    column to the row where it pivots best."""
    m = len(A)
    remaining = list(range(m))
    row_for: list[int | None] = [None] * m
    for var in basis_list:
        best_row, best_mag = None, None
        for r in remaining:
            mag = abs(A[r][var])
            if mag > 0 and (best_mag is None or mag > best_mag):
                best_row, best_mag = r, mag
        if best_row is None or (isinstance(best_mag, float) and best_mag <= tol):
            raise ValidationError("starting basis is singular")
        _apply_pivot(A, b, best_row, var)
        row_for[best_row] = var
        remaining.remove(best_row)
    basis_list[:] = row_for  # type: ignore[assignment]


def _apply_pivot(A, b, prow, pcol):
    pivot = A[prow][pcol]
    if pivot != 1:
        inv = 1 / pivot if isinstance(pivot, Fraction) else 1.0 / pivot
        A[prow] = [v * inv for v in A[prow]]
        b[prow] = b[prow] * inv
    row = A[prow]
    for r in range(len(A)):
        if r == prow:
            continue
        factor = A[r][pcol]
        if factor == 0:
            continue
        A[r] = [v - factor * w for v, w in zip(A[r], row)]
        A[r][pcol] = 0 * factor  # exact zero in both arithmetics
        b[r] = b[r] - factor * b[prow]


def _pivot_to_optimum(A, b, costs, basis_list, enterable, tol, cap) -> int:
    """Bland's rule: smallest improving column enters, smallest basis index
    leaves among the minimum-ratio rows."""
    m = len(A)
    reduced = _reduced_costs(A, costs, basis_list)
    iterations = 0
    while True:
        enter = None
        for j in range(enterable):
            if reduced[j] > tol:
                enter = j
                break
        if enter is None:
            return iterations
        leave_row, best_ratio = None, None
        for r in range(m):
            coeff = A[r][enter]
            if coeff > tol:
                ratio = b[r] / coeff
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis_list[r] < basis_list[leave_row])
                ):
                    leave_row, best_ratio = r, ratio
        if leave_row is None:
            raise ValidationError("program is unbounded")
        iterations += 1
        if cap is not None and iterations > cap:
            raise IterationCapExceeded(f"no optimum after {cap} pivots")
        _apply_pivot(A, b, leave_row, enter)
        factor = reduced[enter]
        reduced = [v - factor * w for v, w in zip(reduced, A[leave_row])]
        reduced[enter] = 0 * factor
        basis_list[leave_row] = enter


def _reduced_costs(A, costs, basis_list):
    m = len(A)
    width = len(A[0])
    reduced = list(costs[:width])
    for r in range(m):
        cb = costs[basis_list[r]]
        if cb == 0:
            continue
        row = A[r]
        for j in range(width):
            reduced[j] = reduced[j] - cb * row[j]
    return reduced


def _finalize(lp, A, b, costs, basis_list, n, convert, iterations) -> SimplexResult:
    m = len(A)
    zero = convert(0)
    solution = [zero] * n
    for r in range(m):
        if basis_list[r] < n:
            solution[basis_list[r]] = b[r]
    objective_value = sum(
        (convert(cj) * zj for cj, zj in zip(lp.objective, solution) if zj != 0),
        start=zero,
    )
    duals = _row_duals(lp, basis_list, convert)
    reduced = _reduced_costs(A, costs, basis_list)[:n]
    return SimplexResult(
        objective_value=objective_value,
        solution=tuple(solution),
        basis=tuple(basis_list),
        row_duals=duals,
        reduced_costs=tuple(reduced),
        iterations=iterations,
    )


def _row_duals(lp, basis_list, convert) -> tuple:
    """Solve ``B^T y = c_B`` over the original columns; artificial columns
    (indices past the program width) act as unit columns with zero cost."""
    m = len(lp.rows)
    n = len(lp.objective)
    zero = convert(0)
    system = []
    rhs = []
    for var in basis_list:
        if var < n:
            system.append([convert(lp.rows[r][var]) for r in range(m)])
            rhs.append(convert(lp.objective[var]))
        else:
            unit = [zero] * m
            unit[var - n] = convert(1)
            system.append(unit)
            rhs.append(zero)
    y = _solve_square(system, rhs, convert)
    return tuple(y)


def _solve_square(matrix, rhs, convert):
    size = len(matrix)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(size):
        pivot_row = max(range(col, size), key=lambda r: abs(aug[r][col]))
        if aug[pivot_row][col] == 0:
            raise ValidationError("basis matrix is singular")
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        pivot = aug[col][col]
        aug[col] = [v / pivot for v in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [v - factor * w for v, w in zip(aug[r], aug[col])]
    return [aug[r][size] for r in range(size)]


def _rebuild_from_basis(lp: StandardFormLP, basis: Sequence[int], tol: float) -> SimplexResult:
    """Re-derive the basic solution for the original right-hand side from a
    basis found on perturbed data."""
    A = [[float(v) for v in row] for row in lp.rows]
    b = [float(v) for v in lp.rhs]
    basis_list = list(basis)
    _canonicalize(A, b, basis_list, tol)
    if min(b) < -tol:
        raise IterationCapExceeded("perturbed basis is infeasible for the original data")
    costs = [float(v) for v in lp.objective]
    n = len(costs)
    reduced = _reduced_costs(A, costs, basis_list)
    if any(v > tol for v in reduced[:n]):
        raise IterationCapExceeded("perturbed basis is not optimal for the original data")
    return _finalize(lp, A, b, costs, basis_list, n, float, 0)
