"""Exhaustive ground truth for small boards: feasibility, witness
counting, and exact minimum discrepancy.

The search assigns values to cells in row-major order (candidate values
ascending) so boards are enumerated in lexicographic order.  Symmetry
reduction optionally pins value 0 at cell (0, 0), justified by cyclic
shift invariance of the region-sum property.  Pruning: a region whose
last row-major cell is filled must hit sigma exactly; partially filled
regions are bounded by the smallest/largest unused values.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .errors import BudgetExceeded
from .grid import Board, Dims, target_sum_x2

DEFAULT_BUDGET = 50_000_000


class Status(enum.Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    BUDGET_EXCEEDED = "budget_exceeded"


class Objective(enum.Enum):
    SPREAD = "spread"
    MAX_ABS_DEV_X2 = "max_abs_dev_x2"


@dataclass(frozen=True)
class OracleResult:
    status: Status
    witness: Optional[Board]
    nodes_explored: int


def _cell_regions(dims: Dims) -> list:
    """For each cell, the region ids (i*n+j) of all windows containing it."""
    m, n, k, l = dims.m, dims.n, dims.k, dims.l
    out = []
    for x in range(m):
        for y in range(n):
            regs = []
            for di in range(k):
                for dj in range(l):
                    regs.append(((x - di) % m) * n + (y - dj) % n)
            out.append(regs)
    return out


class _ZeroSearch:
    """Backtracking search for boards whose region sums all equal sigma."""

    def __init__(self, dims: Dims, fix_origin: bool = True):
        self.dims = dims
        self.mn = dims.m * dims.n
        self.kl = dims.k * dims.l
        self.fix_origin = fix_origin
        t2 = target_sum_x2(dims)
        self.sigma = t2 // 2 if t2 % 2 == 0 else None
        self.cell_regions = _cell_regions(dims)

    def run(self, budget: int, count_all: bool = False):
        """Returns (status, witness, count, nodes)."""
        if self.sigma is None:
            # all region sums are integers; a half-integral target is out
            return Status.INFEASIBLE, None, 0, 0
        mn, kl, sigma = self.mn, self.kl, self.sigma
        used = [False] * mn
        cells = [0] * mn
        rsum = [0] * mn
        rcnt = [0] * mn
        regions = self.cell_regions
        self._nodes = 0
        self._count = 0
        self._witness = None
        self._budget = budget

        def smallest_unused(r):
            s, got, v = 0, 0, 0
            while got < r:
                if not used[v]:
                    s += v
                    got += 1
                v += 1
            return s

        def largest_unused(r):
            s, got, v = 0, 0, mn - 1
            while got < r:
                if not used[v]:
                    s += v
                    got += 1
                v -= 1
            return s

        def place_ok(pos, v):
            """Apply value v at cell pos; False (after full update) if pruned."""
            ok = True
            for r in regions[pos]:
                rsum[r] += v
                rcnt[r] += 1
            for r in regions[pos]:
                cnt = rcnt[r]
                if cnt == kl:
                    if rsum[r] != sigma:
                        ok = False
                        break
                else:
                    rest = kl - cnt
                    need = sigma - rsum[r]
                    if need < smallest_unused(rest) or need > largest_unused(rest):
                        ok = False
                        break
            return ok

        def unplace(pos, v):
            for r in regions[pos]:
                rsum[r] -= v
                rcnt[r] -= 1

        def rec(pos):
            if pos == mn:
                self._count += 1
                if self._witness is None:
                    self._witness = Board(
                        self.dims.m, self.dims.n, tuple(cells)
                    )
                return not count_all  # stop at first witness unless counting
            vals = (0,) if (pos == 0 and self.fix_origin) else range(mn)
            for v in vals:
                if used[v]:
                    continue
                self._nodes += 1
                if self._nodes > self._budget:
                    raise BudgetExceeded(f"node budget {self._budget} exhausted")
                used[v] = True
                cells[pos] = v
                if place_ok(pos, v):
                    if rec(pos + 1):
                        unplace(pos, v)
                        used[v] = False
                        return True
                unplace(pos, v)
                used[v] = False
            return False

        try:
            rec(0)
        except BudgetExceeded:
            return Status.BUDGET_EXCEEDED, self._witness, self._count, self._nodes
        status = Status.FEASIBLE if self._witness is not None else Status.INFEASIBLE
        return status, self._witness, self._count, self._nodes


def oracle_decide(
    dims: Dims, budget: int = DEFAULT_BUDGET, fix_origin: bool = True
) -> OracleResult:
    """Exhaustive feasibility decision; Infeasible only after the full
    (symmetry-reduced) space has been exhausted."""
    status, witness, _, nodes = _ZeroSearch(dims, fix_origin).run(budget)
    return OracleResult(status, witness, nodes)


def count_witnesses(dims: Dims, budget: int = DEFAULT_BUDGET) -> int:
    """Number of zero-discrepancy boards with value 0 fixed at (0, 0)."""
    status, _, count, _ = _ZeroSearch(dims, fix_origin=True).run(
        budget, count_all=True
    )
    if status is Status.BUDGET_EXCEEDED:
        raise BudgetExceeded("witness count incomplete within budget")
    return count


def find_first_witness(dims: Dims, budget: int) -> Optional[Board]:
    """First zero-discrepancy board in lexicographic order (0 at origin),
    or None if the search space is exhausted.  Raises BudgetExceeded."""
    status, witness, _, _ = _ZeroSearch(dims, fix_origin=True).run(budget)
    if status is Status.BUDGET_EXCEEDED:
        raise BudgetExceeded("witness search incomplete within budget")
    return witness


def oracle_min_discrepancy(
    dims: Dims,
    objective: Objective = Objective.SPREAD,
    budget: int = DEFAULT_BUDGET,
):
    """Global optimum of the objective over all boards, with the
    lexicographically smallest witness attaining it.

    Both objectives are invariant under cyclic shifts, so value 0 is
    pinned at the origin; the lexicographic minimum over all boards
    starts with 0, hence lies inside the reduced space.
    """
    m, n = dims.m, dims.n
    mn = m * n
    kl = dims.k * dims.l
    t2 = target_sum_x2(dims)
    regions = _cell_regions(dims)
    lower = 0 if t2 % 2 == 0 else 1  # integer sums cannot all hit a half sum

    used = [False] * mn
    cells = [0] * mn
    rsum = [0] * mn
    rcnt = [0] * mn

    best = {"obj": None, "board": None, "nodes": 0}

    def partial_obj():
        lo = hi = None
        dev = 0
        for r in range(mn):
            if rcnt[r] == kl:
                s = rsum[r]
                lo = s if lo is None or s < lo else lo
                hi = s if hi is None or s > hi else hi
                d = abs(2 * s - t2)
                dev = d if d > dev else dev
        if objective is Objective.SPREAD:
            return 0 if lo is None else hi - lo
        return dev

    def rec(pos):
        if pos == mn:
            obj = partial_obj()
            if best["obj"] is None or obj < best["obj"]:
                best["obj"] = obj
                best["board"] = tuple(cells)
            return
        vals = (0,) if pos == 0 else range(mn)
        for v in vals:
            if used[v]:
                continue
            best["nodes"] += 1
            if best["nodes"] > budget:
                raise BudgetExceeded(f"node budget {budget} exhausted")
            used[v] = True
            cells[pos] = v
            for r in regions[pos]:
                rsum[r] += v
                rcnt[r] += 1
            if best["obj"] is None or partial_obj() <= best["obj"]:
                # strict pruning would drop lex ties; <= keeps the first
                if best["obj"] is None or not (
                    best["obj"] == lower and best["board"] is not None
                ):
                    rec(pos + 1)
            for r in regions[pos]:
                rsum[r] -= v
                rcnt[r] -= 1
            used[v] = False

    rec(0)
    return best["obj"], Board(m, n, best["board"])


__all__ = [
    "Status",
    "Objective",
    "OracleResult",
    "oracle_decide",
    "oracle_min_discrepancy",
    "count_witnesses",
    "find_first_witness",
    "DEFAULT_BUDGET",
]
