"""Toroidal boards, region-sum tables, discrepancy statistics, and the
matrix text format.

A board is an m x n arrangement of the integers 0..mn-1.  A region is a
k x l window whose row/column indices wrap around modulo m and n.  All
statistics are exact integers; the common region sum sigma = k*l*(mn-1)/2
may be half-integral, so it is carried doubled (``target_x2``).
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    LengthMismatch,
    NotAPermutation,
    ParseError,
    RegionTooLarge,
)


@dataclass(frozen=True)
class Dims:
    """Board dimensions (m, n) together with a region size (k, l)."""

    m: int
    n: int
    k: int
    l: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError(f"board dimensions must be >= 1, got {self.m}x{self.n}")
        if not (1 <= self.k <= self.m):
            raise ValueError(f"region height k={self.k} outside 1..{self.m}")
        if not (1 <= self.l <= self.n):
            raise ValueError(f"region width l={self.l} outside 1..{self.n}")


@dataclass(frozen=True)
class Board:
    """An m x n grid holding each of 0..mn-1 exactly once (row-major)."""

    m: int
    n: int
    cells: tuple

    def cell(self, x: int, y: int) -> int:
        return self.cells[x * self.n + y]

    def rows(self) -> list:
        n = self.n
        return [list(self.cells[i * n : (i + 1) * n]) for i in range(self.m)]


@dataclass(frozen=True)
class RegionSumTable:
    """All mn toroidal k x l region sums; sums[i][j] is the window whose
    top-left corner is (i, j)."""

    dims: Dims
    sums: tuple  # m tuples of n ints


@dataclass(frozen=True)
class DiscrepancyReport:
    """Exact deviation statistics of the region sums from sigma.

    target_x2 is 2*sigma = k*l*(mn-1).  max_abs_dev_x2 is the maximum of
    |2*S(i,j) - target_x2| and l2_dev_x4 the sum of its squares.
    """

    target_x2: int
    min_sum: int
    max_sum: int
    spread: int
    max_abs_dev_x2: int
    l2_dev_x4: int


def new_board(m: int, n: int, values) -> Board:
    """Validate *values* as a permutation of 0..mn-1 and wrap it."""
    values = list(values)
    mn = m * n
    if len(values) != mn:
        raise LengthMismatch(f"expected {mn} values for {m}x{n}, got {len(values)}")
    seen = [False] * mn
    for v in values:
        if not isinstance(v, int) or v < 0 or v >= mn:
            raise NotAPermutation(f"value {v} outside 0..{mn - 1}")
        if seen[v]:
            raise NotAPermutation(f"duplicate value {v}")
        seen[v] = True
    return Board(m, n, tuple(values))


def board_from_rows(rows) -> Board:
    """Convenience constructor from a list of row lists."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    flat = [v for row in rows for v in row]
    return new_board(m, n, flat)


def target_sum_x2(dims: Dims) -> int:
    """Twice the common region sum forced by averaging: k*l*(mn-1)."""
    return dims.k * dims.l * (dims.m * dims.n - 1)


def _check_region(board: Board, k: int, l: int):
    if not (1 <= k <= board.m) or not (1 <= l <= board.n):
        raise RegionTooLarge(
            f"region {k}x{l} does not fit a {board.m}x{board.n} board"
        )


def region_sum_table(board: Board, k: int, l: int) -> RegionSumTable:
    """All toroidal k x l window sums, in O(mn) total time.

    First build vertical strips (k consecutive rows, one column) by a
    sliding update down the rows, then slide an l-wide window across
    each strip row.
    """
    _check_region(board, k, l)
    m, n, cells = board.m, board.n, board.cells

    # strip[i][j] = sum of cells (i..i+k-1 mod m, j)
    strip = [[0] * n for _ in range(m)]
    for j in range(n):
        s = 0
        for r in range(k):
            s += cells[r * n + j]
        strip[0][j] = s
        for i in range(1, m):
            s += cells[((i + k - 1) % m) * n + j] - cells[(i - 1) * n + j]
            strip[i][j] = s

    sums = []
    for i in range(m):
        row = strip[i]
        s = sum(row[:l])
        out = [0] * n
        out[0] = s
        for j in range(1, n):
            s += row[(j + l - 1) % n] - row[j - 1]
            out[j] = s
        sums.append(tuple(out))
    return RegionSumTable(Dims(m, n, k, l), tuple(sums))


def region_sum_table_naive(board: Board, k: int, l: int) -> RegionSumTable:
    """O(mn*kl) double-loop reference used as an independent oracle."""
    _check_region(board, k, l)
    m, n = board.m, board.n
    sums = tuple(
        tuple(
            sum(
                board.cell((i + di) % m, (j + dj) % n)
                for di in range(k)
                for dj in range(l)
            )
            for j in range(n)
        )
        for i in range(m)
    )
    return RegionSumTable(Dims(m, n, k, l), sums)


def discrepancy_report(board: Board, k: int, l: int) -> DiscrepancyReport:
    """Exact deviation statistics of all k x l region sums."""
    table = region_sum_table(board, k, l)
    t2 = k * l * (board.m * board.n - 1)
    flat = [s for row in table.sums for s in row]
    lo, hi = min(flat), max(flat)
    devs = [2 * s - t2 for s in flat]
    return DiscrepancyReport(
        target_x2=t2,
        min_sum=lo,
        max_sum=hi,
        spread=hi - lo,
        max_abs_dev_x2=max(abs(d) for d in devs),
        l2_dev_x4=sum(d * d for d in devs),
    )


def is_zero_discrepancy(board: Board, k: int, l: int) -> bool:
    """True iff every toroidal k x l region has the same sum."""
    table = region_sum_table(board, k, l)
    first = table.sums[0][0]
    return all(s == first for row in table.sums for s in row)


def write_matrix(board: Board) -> str:
    """Serialize: '<m> <n>' header line, then m rows of n decimals."""
    lines = [f"{board.m} {board.n}"]
    for row in board.rows():
        lines.append(" ".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def _parse_int(token: str, line: int, col: int) -> int:
    if not token.lstrip("-").isdigit():
        raise ParseError(f"expected integer, got {token!r}", line, col)
    return int(token)


def _tokens_with_cols(text_line: str):
    out = []
    col = 0
    for tok in text_line.split(" "):
        if tok == "":
            # double space or leading space is malformed
            raise ParseError("unexpected blank field", 0, col + 1)
        out.append((tok, col + 1))
        col += len(tok) + 1
    return out


def read_matrix(text: str) -> Board:
    """Parse the matrix text format; inverse of :func:`write_matrix`."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ParseError("empty input", 1, 1)

    def line_tokens(idx):
        try:
            return _tokens_with_cols(lines[idx])
        except ParseError as e:
            raise ParseError("unexpected blank field", idx + 1, e.col) from None

    header = line_tokens(0)
    if len(header) != 2:
        raise ParseError("header must be '<m> <n>'", 1, 1)
    m = _parse_int(header[0][0], 1, header[0][1])
    n = _parse_int(header[1][0], 1, header[1][1])
    if m < 1 or n < 1:
        raise ParseError("dimensions must be >= 1", 1, 1)
    if len(lines) != m + 1:
        raise ParseError(f"expected {m} row lines, got {len(lines) - 1}", len(lines), 1)

    values = []
    for i in range(m):
        toks = line_tokens(i + 1)
        if len(toks) != n:
            raise ParseError(f"expected {n} values, got {len(toks)}", i + 2, 1)
        for tok, col in toks:
            values.append(_parse_int(tok, i + 2, col))
    return new_board(m, n, values)
