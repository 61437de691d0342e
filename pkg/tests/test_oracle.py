import pytest

from equigrid.errors import BudgetExceeded
from equigrid.grid import Dims, board_from_rows, is_zero_discrepancy
from equigrid.oracle import (
    Objective,
    Status,
    count_witnesses,
    find_first_witness,
    oracle_decide,
    oracle_min_discrepancy,
)

# frozen golden values, computed once by exhaustive enumeration
GOLDEN_MIN_SPREAD_3x3_2x2 = 8
GOLDEN_MIN_MAXABS_3x3_2x2 = 8
GOLDEN_WITNESS_3x3_2x2 = [[0, 2, 8], [3, 7, 1], [6, 4, 5]]
GOLDEN_COUNT_2x4_2x2 = 96


class TestDecide:
    def test_whole_board_feasible(self):
        r = oracle_decide(Dims(2, 2, 2, 2))
        assert r.status is Status.FEASIBLE
        assert is_zero_discrepancy(r.witness, 2, 2)

    def test_3x3_2x2_infeasible(self):
        assert oracle_decide(Dims(3, 3, 2, 2)).status is Status.INFEASIBLE

    def test_1x1_regions_infeasible(self):
        assert oracle_decide(Dims(2, 2, 1, 1)).status is Status.INFEASIBLE

    def test_parity_shortcut(self):
        r = oracle_decide(Dims(6, 6, 3, 3))
        assert r.status is Status.INFEASIBLE and r.nodes_explored == 0

    def test_budget_exceeded_status(self):
        r = oracle_decide(Dims(3, 4, 3, 2), budget=3)
        assert r.status is Status.BUDGET_EXCEEDED

    def test_budget_monotone(self):
        dims = Dims(2, 4, 2, 2)
        seen = set()
        for budget in (10, 1000, 100000):
            s = oracle_decide(dims, budget=budget).status
            seen.add(s)
        assert Status.INFEASIBLE not in seen
        assert oracle_decide(dims).status is Status.FEASIBLE

    def test_symmetry_reduction_sound(self):
        # 0-at-origin reduction never changes the feasibility answer
        for m, n, k, l in [(2, 4, 2, 2), (3, 3, 2, 2), (2, 3, 2, 3), (3, 3, 2, 3)]:
            a = oracle_decide(Dims(m, n, k, l), fix_origin=True)
            b = oracle_decide(Dims(m, n, k, l), fix_origin=False)
            assert (a.status is Status.FEASIBLE) == (b.status is Status.FEASIBLE)


class TestCount:
    def test_whole_board(self):
        assert count_witnesses(Dims(2, 2, 2, 2)) == 6

    def test_infeasible_zero(self):
        assert count_witnesses(Dims(2, 2, 1, 1)) == 0

    def test_golden_2x4(self):
        assert count_witnesses(Dims(2, 4, 2, 2)) == GOLDEN_COUNT_2x4_2x2

    def test_budget_raises(self):
        with pytest.raises(BudgetExceeded):
            count_witnesses(Dims(2, 4, 2, 2), budget=5)


class TestMinDiscrepancy:
    def test_1x1_regions_2x2(self):
        value, witness = oracle_min_discrepancy(Dims(2, 2, 1, 1), Objective.SPREAD)
        assert value == 3
        assert sorted(witness.cells) == [0, 1, 2, 3]

    def test_1x2(self):
        value, _ = oracle_min_discrepancy(Dims(1, 2, 1, 1), Objective.SPREAD)
        assert value == 1

    def test_golden_3x3(self):
        value, witness = oracle_min_discrepancy(Dims(3, 3, 2, 2), Objective.SPREAD)
        assert value == GOLDEN_MIN_SPREAD_3x3_2x2
        assert witness.rows() == GOLDEN_WITNESS_3x3_2x2
        value2, _ = oracle_min_discrepancy(Dims(3, 3, 2, 2), Objective.MAX_ABS_DEV_X2)
        assert value2 == GOLDEN_MIN_MAXABS_3x3_2x2

    def test_zero_iff_feasible(self):
        for m, n, k, l in [(2, 4, 2, 2), (3, 3, 2, 2), (2, 2, 2, 2), (1, 3, 1, 3)]:
            dims = Dims(m, n, k, l)
            value, _ = oracle_min_discrepancy(dims, Objective.SPREAD)
            feasible = oracle_decide(dims).status is Status.FEASIBLE
            assert (value == 0) == feasible

    def test_budget_raises(self):
        with pytest.raises(BudgetExceeded):
            oracle_min_discrepancy(Dims(3, 3, 2, 2), Objective.SPREAD, budget=10)


class TestFirstWitness:
    def test_lexicographic_first(self):
        b = find_first_witness(Dims(2, 2, 2, 2), budget=10**6)
        assert b.rows() == [[0, 1], [2, 3]]

    def test_exhausted_returns_none(self):
        assert find_first_witness(Dims(3, 3, 2, 2), budget=10**6) is None

    def test_witness_verifies(self):
        b = find_first_witness(Dims(2, 4, 2, 2), budget=10**6)
        assert is_zero_discrepancy(b, 2, 2)
        assert b.cells[0] == 0
