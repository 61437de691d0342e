"""Exact decision of zero-discrepancy feasibility, plus the linear-algebra
structure of the constraint system.

Feasibility depends on (m, n, k, l) only through (m, n, g, h) with
g = gcd(k, m), h = gcd(l, n): the space of real matrices with all k x l
toroidal sums equal coincides with the one for g x h regions and is
spanned by c + G(x mod g, y) + H(x, y mod h) with G zero-sum over the g
row residues per column and H zero-sum over the h column residues per
row.  Three obstructions remain for integer permutations:

* capacity: g = 1 with h < n forces all 1 x h window sums equal within
  rows, impossible for distinct entries (symmetrically for h = 1, g < m);
* parity: the forced g x h region sum g*h*(mn-1)/2 must be an integer;
* the trivial 1 x 1 board is always fine.

The resulting rule is validated computationally against the exhaustive
search in :mod:`equigrid.oracle` (see the acceptance tests); any
disagreement there is a hard bug.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .errors import CapExceeded
from .grid import Board, Dims, target_sum_x2

DEFAULT_RANK_CAP = 64


@dataclass(frozen=True)
class ReducedDims:
    """gcd-reduced region parameters: g = gcd(k,m), h = gcd(l,n)."""

    g: int
    h: int
    p: int  # m // g
    q: int  # n // h


class Reason(enum.Enum):
    TRIVIAL = "trivial"
    CAPACITY_ROW = "capacity_row"
    CAPACITY_COL = "capacity_col"
    PARITY = "parity"
    CONSTRUCTED = "constructed"


@dataclass(frozen=True)
class Verdict:
    feasible: bool
    reason: Reason
    witness: Optional[Board] = None


def reduce_dims(dims: Dims) -> ReducedDims:
    g = math.gcd(dims.k, dims.m)
    h = math.gcd(dims.l, dims.n)
    return ReducedDims(g, h, dims.m // g, dims.n // h)


def decide(dims: Dims, with_witness: bool = False) -> Verdict:
    """Decide feasibility; reason codes are checked in a fixed order
    (trivial, capacity row/col, parity) so output is deterministic.

    With ``with_witness`` a verified board is attached whenever one of
    the closed-form construction strategies applies (backtracking is
    never triggered from here, keeping decide cheap and total).
    """
    m, n = dims.m, dims.n
    mn = m * n
    red = reduce_dims(dims)
    g, h = red.g, red.h

    if mn == 1:
        return Verdict(True, Reason.TRIVIAL, Board(1, 1, (0,)))
    if g == 1 and h < n:
        return Verdict(False, Reason.CAPACITY_ROW)
    if h == 1 and g < m:
        return Verdict(False, Reason.CAPACITY_COL)
    if (g * h * (mn - 1)) % 2 == 1:
        return Verdict(False, Reason.PARITY)

    witness = None
    if with_witness:
        from . import builder

        witness = builder.try_formula_strategies(dims)
    return Verdict(True, Reason.CONSTRUCTED, witness)


def solution_space_dimension(dims: Dims) -> int:
    """Dimension of the affine space of real m x n matrices whose k x l
    toroidal sums are all equal: 1 + (g-1)n + m(h-1) - (g-1)(h-1)."""
    red = reduce_dims(dims)
    g, h = red.g, red.h
    return 1 + (g - 1) * dims.n + dims.m * (h - 1) - (g - 1) * (h - 1)


def _window_cells(dims: Dims, i: int, j: int):
    m, n = dims.m, dims.n
    for di in range(dims.k):
        for dj in range(dims.l):
            yield ((i + di) % m) * n + (j + dj) % n


def constraint_matrix(dims: Dims) -> list:
    """Integer matrix of the (mn-1) constraints S(i,j) - S(0,0) = 0 over
    the mn cell variables."""
    m, n = dims.m, dims.n
    base = [0] * (m * n)
    for c in _window_cells(dims, 0, 0):
        base[c] += 1
    rows = []
    for i in range(m):
        for j in range(n):
            if i == 0 and j == 0:
                continue
            row = [-b for b in base]
            for c in _window_cells(dims, i, j):
                row[c] += 1
            rows.append(row)
    return rows


def integer_rank(rows: list) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination.

    Entries stay exact integers throughout; no floating point.
    """
    a = [list(r) for r in rows]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank = 0
    prev = 1
    row = 0
    for col in range(ncols):
        pivot = None
        for r in range(row, nrows):
            if a[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        a[row], a[pivot] = a[pivot], a[row]
        pv = a[row][col]
        for r in range(row + 1, nrows):
            factor = a[r][col]
            for c in range(col, ncols):
                a[r][c] = (pv * a[r][c] - factor * a[row][c]) // prev
        prev = pv
        row += 1
        rank += 1
        if row == nrows:
            break
    return rank


def constraint_rank(dims: Dims, cap: int = DEFAULT_RANK_CAP) -> int:
    """Exact rank of the region-sum-equality constraint system.

    Independent cross-check of :func:`solution_space_dimension`:
    mn - constraint_rank(dims) must equal it.
    """
    if dims.m * dims.n > cap:
        raise CapExceeded(f"{dims.m * dims.n} variables exceeds cap {cap}")
    return integer_rank(constraint_matrix(dims))


__all__ = [
    "ReducedDims",
    "Reason",
    "Verdict",
    "reduce_dims",
    "decide",
    "solution_space_dimension",
    "constraint_rank",
    "integer_rank",
    "constraint_matrix",
    "target_sum_x2",
    "DEFAULT_RANK_CAP",
]
