"""Constructive strategies producing verified zero-discrepancy boards.

Strategy order is cheapest-first and deterministic:

1. single_region   -- (g, h) = (m, n): any permutation works.
2. equal_row_sums  -- h = n: regions cover full rows, so equal row sums
   suffice; built by complement pairing (n even) or a balanced triple
   partition plus pairing (n odd).
3. equal_col_sums  -- g = m, via transpose of equal_row_sums.
4. two_phase       -- g, h both even: closed-form signed digit formula
   (coarse column digit modulated by row parity, fine odd digit by
   column parity).
5. backtrack       -- completeness net for the remaining small cases.

Every strategy's output is re-verified with the zero-discrepancy checker
before being returned; the formulas are never trusted blindly.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from . import oracle
from .errors import (
    BudgetExceeded,
    Infeasible,
    ParityObstruction,
    SizeLimit,
    StrategyFailed,
)
from .feasibility import decide, reduce_dims
from .grid import Board, Dims, board_from_rows, is_zero_discrepancy, new_board

DEFAULT_BUILD_BUDGET = 10_000_000


@dataclass(frozen=True)
class Strategy:
    name: str
    applies: Callable[[Dims], bool]
    make: Callable[[Dims], Board]


def _row_major(dims: Dims) -> Board:
    mn = dims.m * dims.n
    return Board(dims.m, dims.n, tuple(range(mn)))


def transpose(board: Board) -> Board:
    cells = tuple(
        board.cell(x, y) for y in range(board.n) for x in range(board.m)
    )
    return Board(board.n, board.m, cells)


def _equal_sum_triples(m: int) -> list:
    """Partition {0..3m-1} into m triples of equal sum (m odd).

    Triple i is (i, m + beta(i), 2m + gamma(i)) with
    beta(i) = ((m-1)/2 + i) mod m and gamma(i) = (3m-3)/2 - i - beta(i);
    both are permutations of 0..m-1 and each triple sums to 3(3m-1)/2.
    """
    if m % 2 == 0:
        raise ValueError("equal-sum triples need odd m")
    t = (3 * m - 3) // 2
    triples = []
    for i in range(m):
        beta = ((m - 1) // 2 + i) % m
        gamma = t - i - beta
        triples.append((i, m + beta, 2 * m + gamma))
    return triples


def build_equal_row_sums(m: int, n: int) -> Board:
    """A board whose m row sums all equal n(mn-1)/2."""
    mn = m * n
    if (n * (mn - 1)) % 2 == 1:
        raise ParityObstruction(
            f"target row sum {n * (mn - 1)}/2 is not an integer"
        )
    rows = []
    if n % 2 == 0:
        half = n // 2
        for i in range(m):
            row = []
            for v in range(i * half, (i + 1) * half):
                row.extend((v, mn - 1 - v))
            rows.append(row)
    else:
        # n odd forces mn odd, hence m odd: balanced triples on the first
        # 3m values, complement pairs on the rest.
        triples = _equal_sum_triples(m)
        half = (n - 3) // 2
        for i in range(m):
            row = list(triples[i])
            for v in range(3 * m + i * half, 3 * m + (i + 1) * half):
                row.extend((v, 3 * m + mn - 1 - v))
            rows.append(row)
    return board_from_rows(rows)


def build_equal_col_sums(m: int, n: int) -> Board:
    """A board whose n column sums all equal m(mn-1)/2."""
    return transpose(build_equal_row_sums(n, m))


def build_two_phase(dims: Dims) -> Board:
    """Closed-form construction for g, h both even (hence m, n even).

    With doubled values u = 2*B - (mn-1), take
    u(x, y) = (-1)^x * a(y) + n * (-1)^y * c(x) with
    a(y) = (-1)^y * (2*(y//2) + 1) and c(x) = x + (x mod 2).
    Any even-height window kills the (-1)^x factor and any even-width
    window the (-1)^y factor, so all k x l sums coincide; the signed
    odd/even digit split makes u a bijection onto the odd numbers in
    [-(mn-1), mn-1].  Verified before returning.
    """
    red = reduce_dims(dims)
    if red.g < 2 or red.h < 2 or red.g % 2 or red.h % 2:
        raise StrategyFailed("two-phase formula needs g and h even")
    m, n = dims.m, dims.n
    mn = m * n
    cells = []
    for x in range(m):
        cx = x + (x % 2)
        sx = -1 if x % 2 else 1
        for y in range(n):
            ay = (2 * (y // 2) + 1) * (-1 if y % 2 else 1)
            sy = -1 if y % 2 else 1
            u = sx * ay + n * sy * cx
            cells.append((u + mn - 1) // 2)
    board = new_board(m, n, cells)
    if not is_zero_discrepancy(board, dims.k, dims.l):
        raise StrategyFailed("two-phase output failed verification")
    return board


def build_backtrack(dims: Dims, budget: int = DEFAULT_BUILD_BUDGET) -> Board:
    """First zero-discrepancy board in lexicographic order (value 0 at
    the origin), found by pruned depth-first search."""
    verdict = decide(dims)
    if not verdict.feasible:
        raise Infeasible(verdict.reason)
    board = oracle.find_first_witness(dims, budget)
    if board is None:
        raise StrategyFailed(
            "exhaustive search found no witness for a tuple the decision "
            "rule calls feasible; the rule is wrong for these dims"
        )
    return board


def _strategies() -> list:
    def red(dims):
        return reduce_dims(dims)

    return [
        Strategy(
            "single_region",
            lambda d: red(d).g == d.m and red(d).h == d.n,
            _row_major,
        ),
        Strategy(
            "equal_row_sums",
            lambda d: red(d).h == d.n and (d.n * (d.m * d.n - 1)) % 2 == 0,
            lambda d: build_equal_row_sums(d.m, d.n),
        ),
        Strategy(
            "equal_col_sums",
            lambda d: red(d).g == d.m and (d.m * (d.m * d.n - 1)) % 2 == 0,
            lambda d: build_equal_col_sums(d.m, d.n),
        ),
        Strategy(
            "two_phase",
            lambda d: red(d).g % 2 == 0 and red(d).h % 2 == 0,
            build_two_phase,
        ),
    ]


STRATEGIES = _strategies()


def try_formula_strategies(dims: Dims) -> Optional[Board]:
    """First applicable closed-form strategy whose output verifies, or
    None (no backtracking; cheap enough to call from decide)."""
    for strat in STRATEGIES:
        if not strat.applies(dims):
            continue
        try:
            board = strat.make(dims)
        except (ParityObstruction, StrategyFailed):
            continue
        if is_zero_discrepancy(board, dims.k, dims.l):
            return board
    return None


def build(dims: Dims, budget: int = DEFAULT_BUILD_BUDGET) -> Board:
    """A verified zero-discrepancy board for feasible dims.

    Deterministic: the first applicable strategy wins, and each strategy
    is itself deterministic.  Raises Infeasible or, if only backtracking
    applies and the budget runs out, SizeLimit.
    """
    verdict = decide(dims)
    if not verdict.feasible:
        raise Infeasible(verdict.reason)
    board = try_formula_strategies(dims)
    if board is not None:
        return board
    try:
        return build_backtrack(dims, budget)
    except BudgetExceeded as e:
        raise SizeLimit(
            f"no strategy produced a board for {dims} within budget {budget}"
        ) from e


__all__ = [
    "Strategy",
    "STRATEGIES",
    "build",
    "build_equal_row_sums",
    "build_equal_col_sums",
    "build_two_phase",
    "build_backtrack",
    "try_formula_strategies",
    "transpose",
    "DEFAULT_BUILD_BUDGET",
]
