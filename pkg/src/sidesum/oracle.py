"""Independent integer-grid brute force over D x D boards.

Enumerates every tiling of a D x D board by exactly n integer-sided
squares with plain lowest-leftmost-cell backtracking over an integer
height profile.  Scaled by 1/D this covers exactly the rational tilings
whose coordinates have denominators dividing D, so it cross-validates the
symbolic search on that sublattice without sharing any code with it:
no affine expressions, no LP, just integers.

The oracle is deliberately incomplete over denominators; it is a
consistency check and a source of independently computed expected values,
never the primary verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from gmpy2 import mpq

from .errors import DomainError, ResourceLimitError
from .geometry import Tile, Tiling, verify


@dataclass(frozen=True, slots=True)
class GridResult:
    """max_sum None means no tiling of the board into n squares exists."""

    n: int
    board: int
    max_sum: Optional[int]
    witnesses: tuple[tuple[tuple[int, int, int], ...], ...]
    count: int  # number of complete tilings enumerated


def grid_enumerate(n: int, board: int, max_board: int = 15) -> GridResult:
    """Exact maximum of the side sum over all tilings of a board x board
    square into exactly n integer-sided tiles, with all maximizing tilings
    and the total tiling count.

    Backtracking fills the lowest-leftmost empty cell; a square placed
    there spans the run of equal-height columns to its right, bounded by
    the board top.  Exact pruning only (area window and empty-region
    count), so ``count`` is the true number of tilings.
    """
    if n < 1:
        raise DomainError("need at least one tile")
    if board < 1:
        raise DomainError("board side must be positive")
    if board > max_board:
        raise ResourceLimitError(f"board {board} exceeds the limit {max_board}")

    heights = [0] * board
    placed: list[tuple[int, int, int]] = []
    best: Optional[int] = None
    witnesses: list[tuple[tuple[int, int, int], ...]] = []
    count = 0
    area_total = board * board

    def recurse(remaining: int, filled: int, side_sum: int):
        nonlocal best, count
        h = min(heights)
        if h == board:
            if remaining == 0:
                count += 1
                if best is None or side_sum > best:
                    best = side_sum
                    witnesses.clear()
                if side_sum == best:
                    witnesses.append(tuple(placed))
            return
        if remaining == 0:
            return
        free = area_total - filled
        cap = board - h
        if free < remaining or free > remaining * cap * cap:
            return
        # each run of not-yet-full columns needs at least one more tile
        runs = 0
        prev_full = True
        for col_h in heights:
            full = col_h == board
            if not full and prev_full:
                runs += 1
            prev_full = full
        if runs > remaining:
            return
        j = heights.index(h)
        run = 0
        while j + run < board and heights[j + run] == h:
            run += 1
        for s in range(1, min(run, cap) + 1):
            for c in range(j, j + s):
                heights[c] += s
            placed.append((j, h, s))
            recurse(remaining - 1, filled + s * s, side_sum + s)
            placed.pop()
            for c in range(j, j + s):
                heights[c] -= s
        return

    recurse(n, 0, 0)
    return GridResult(n=n, board=board, max_sum=best, witnesses=tuple(witnesses), count=count)


def grid_to_tiling(tiles: tuple[tuple[int, int, int], ...], board: int) -> Tiling:
    """Scale an integer tiling of a board x board square to the unit square."""
    d = mpq(board)
    t = Tiling(tuple(Tile(mpq(x) / d, mpq(y) / d, mpq(s) / d) for x, y, s in tiles))
    v = verify(t, require_full_cover=True)
    if not v:
        raise DomainError(f"not a valid integer tiling: {v.detail}")
    return t
