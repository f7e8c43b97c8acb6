from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings

from histrel import (
    COVERING,
    SUPPORTING,
    DualWeight,
    GameSolution,
    Weight,
    certify,
    make_solution,
    oracle_solve,
    pairing,
    solve_covering,
    solve_supporting,
)
from histrel.reduce import empty_trace
from conftest import histogram_sets, make_set


class TestSupportingExamples:
    def test_e1_forced_vertex(self, e1):
        solution = solve_supporting(e1)
        assert solution.alpha == 6
        assert solution.weight.values == (1, 0)
        assert solution.tight_members == (1,)
        assert solution.tight_symbols == (0,)

    def test_e3_value_with_nonunique_weight(self, e3):
        solution = solve_supporting(e3)
        assert solution.alpha == 2
        assert solution.alternate_optima
        assert certify(solution, e3).passed

    def test_singleton_constant_rows(self):
        hs = make_set("abc", [(2, 2, 2)])
        assert solve_supporting(hs).alpha == 2

    def test_single_symbol_alphabet(self):
        hs = make_set("a", [(5,), (5,)])
        supporting = solve_supporting(hs)
        covering = solve_covering(hs)
        assert supporting.alpha == covering.alpha == 5
        assert supporting.weight.values == covering.weight.values == (1,)


class TestCoveringExamples:
    def test_e1_forced_vertex(self, e1):
        solution = solve_covering(e1)
        assert solution.alpha == 4
        assert solution.weight.values == (0, 1)

    def test_e4_unique_vertex(self, e4):
        solution = solve_covering(e4)
        assert solution.alpha == 1
        assert solution.weight.values == (0, 0, 1)

    def test_e3_uniform_attains_the_value(self, e3):
        assert solve_covering(e3).alpha == 2

    def test_zero_value_when_a_column_is_dead(self):
        # no member ever uses the second symbol, so the cap is zero
        hs = make_set("ab", [(6, 0)])
        solution = solve_covering(hs)
        assert solution.alpha == 0
        assert solution.weight.values == (0, 1)
        assert sum(solution.dual.values) == 1
        assert certify(solution, hs).passed


class TestDuals:
    def test_e1_supporting_dual_is_a_point_mass_on_the_minimum(self, e1):
        assert solve_supporting(e1).dual.values == (0, 1)

    def test_e2_dual_solves_the_balance_equations(self, e2):
        solution = solve_supporting(e2)
        assert solution.dual.values == (Fraction(2, 3), Fraction(1, 3))

    def test_singleton_dual(self):
        hs = make_set("abc", [(2, 2, 2)])
        assert solve_supporting(hs).dual.values == (1,)

    def test_duplicate_members_put_mass_on_first_occurrence(self):
        hs = make_set("ab", [(7, 3), (6, 4), (6, 4)])
        solution = solve_supporting(hs)
        assert solution.dual.values == (0, 1, 0)
        assert solution.tight_members == (1, 2)
        assert certify(solution, hs).passed

    def test_extract_dual_from_a_raw_simplex_result(self):
        from histrel import extract_dual, simplex_optimize, supporting_lp

        rows = ((4, 6), (7, 3))
        lp, basis = supporting_lp(rows)
        result = simplex_optimize(lp, basis=basis)
        dual = extract_dual(result, rows, SUPPORTING)
        assert dual.values == (Fraction(2, 3), Fraction(1, 3))


class TestCertify:
    def test_valid_solution_passes(self, e1):
        assert certify(solve_supporting(e1), e1).passed

    def test_infeasible_claim_fails_with_the_right_clause(self, e1):
        fake = GameSolution(
            alpha=Fraction(6),
            weight=Weight(e1.alphabet, (0, 1)),
            dual=DualWeight((0, 1)),
            tight_members=(),
            tight_symbols=(1,),
            mode=SUPPORTING,
            reduction_trace=empty_trace(e1.alphabet.symbols),
        )
        report = certify(fake, e1)
        assert not report.passed
        assert "primal-feasibility" in [c.clause for c in report.failures()]

    def test_oracle_solutions_certify(self, e3):
        alpha, weight, dual = oracle_solve(e3, SUPPORTING)
        solution = make_solution(alpha, weight, dual, e3, SUPPORTING)
        assert certify(solution, e3).passed

    def test_wrong_dual_mass_fails_slackness(self, e1):
        solution = solve_supporting(e1)
        skewed = GameSolution(
            alpha=solution.alpha,
            weight=solution.weight,
            dual=DualWeight((1, 0)),  # mass on the non-tight member
            tight_members=solution.tight_members,
            tight_symbols=solution.tight_symbols,
            mode=SUPPORTING,
            reduction_trace=solution.reduction_trace,
        )
        report = certify(skewed, e1)
        assert not report.passed
        clauses = [c.clause for c in report.failures()]
        assert "slackness-members" in clauses


class TestSolverProperties:
    def test_rational_mode_is_deterministic(self, e3):
        assert solve_supporting(e3) == solve_supporting(e3)
        assert solve_covering(e3) == solve_covering(e3)

    def test_reduction_shows_up_in_the_solution(self, e4):
        solution = solve_supporting(e4)
        assert solution.reduction_trace.eliminated == ("c", "b")
        assert solution.weight.values == (1, 0, 0)

    @settings(max_examples=40)
    @given(histogram_sets(max_symbols=4, max_members=4, max_length=10))
    def test_matches_oracle_and_certifies(self, hs):
        baseline = Fraction(hs.sample_length, len(hs.alphabet))
        for problem, solve in ((SUPPORTING, solve_supporting), (COVERING, solve_covering)):
            solution = solve(hs)
            assert solution.alpha == oracle_solve(hs, problem)[0]
            assert certify(solution, hs).passed
            if problem == SUPPORTING:
                assert solution.alpha >= baseline
            else:
                assert solution.alpha <= baseline
            # feasibility with at least one tight member
            assert solution.tight_members

    @settings(max_examples=25)
    @given(histogram_sets(max_symbols=4, max_members=4, max_length=10))
    def test_float_mode_tracks_rational_mode(self, hs):
        for solve in (solve_supporting, solve_covering):
            exact = solve(hs)
            approx = solve(hs, "float")
            assert abs(float(exact.alpha) - approx.alpha) <= 1e-6
            assert certify(approx, hs).passed

    @settings(max_examples=25)
    @given(histogram_sets(max_symbols=4, max_members=4, max_length=10))
    def test_skipping_reduction_changes_nothing(self, hs):
        for solve in (solve_supporting, solve_covering):
            assert solve(hs).alpha == solve(hs, use_reduction=False).alpha

    @settings(max_examples=25)
    @given(histogram_sets())
    def test_members_respect_their_own_weights(self, hs):
        supporting = solve_supporting(hs)
        covering = solve_covering(hs)
        for member in hs.members:
            assert pairing(supporting.weight, member) >= supporting.alpha
            assert pairing(covering.weight, member) <= covering.alpha
