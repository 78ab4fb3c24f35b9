"""Exact rational linear programming by two-phase primal simplex.

Problems are tiny (a dozen variables, a few dozen rows) but must be solved
exactly: optima are rational vertices and the search's correctness rests on
exact feasibility answers.  Bland's rule is used for both the entering and
leaving choices, which guarantees termination and makes every solve
deterministic, so reported vertices are reproducible.

Conventions: a LinProgram maximizes an affine objective over the set
{ x >= 0 : row(x) >= 0 for every row }.  Variables are the integer ids of
the affine expressions; every variable is implicitly nonnegative (callers
that need a genuinely free variable must shift it).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from gmpy2 import mpq

from .numerics import AffineExpr, Rational

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = mpq(0)
_ONE = mpq(1)


@dataclass(frozen=True, slots=True)
class LinProgram:
    """max objective  s.t.  row >= 0 for each row,  all variables >= 0."""

    objective: AffineExpr
    rows: tuple[AffineExpr, ...]


@dataclass(frozen=True, slots=True)
class LpResult:
    status: str
    value: Optional[Rational] = None
    point: Optional[dict] = None

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def lp_max(program: LinProgram) -> LpResult:
    return maximize(program.objective, program.rows)


def maximize(objective: AffineExpr, rows: Iterable[AffineExpr]) -> LpResult:
    """Solve max objective over {x >= 0, rows >= 0}; exact and deterministic."""
    var_ids = set(objective.terms)
    mat_rows = []
    for e in rows:
        if e.is_const:
            if e.const < 0:
                return LpResult(INFEASIBLE)
            continue
        var_ids.update(e.terms)
        mat_rows.append(e)

    var_list = sorted(var_ids)
    vindex = {v: i for i, v in enumerate(var_list)}
    n = len(var_list)
    if n == 0:
        return LpResult(OPTIMAL, objective.const, {})

    m = len(mat_rows)
    # Columns: structural 0..n-1, slack n..n+m-1, artificial beyond; final
    # column is the right-hand side.  Row sense: sum(-coef) x <= const.
    neg = [r for r, e in enumerate(mat_rows) if e.const < 0]
    n_art = len(neg)
    ncols = n + m + n_art
    T = [[_ZERO] * (ncols + 1) for _ in range(m)]
    basis = [0] * m
    ai = 0
    for r, e in enumerate(mat_rows):
        flip = e.const < 0
        sign = -_ONE if flip else _ONE
        row = T[r]
        for v, c in e.terms.items():
            row[vindex[v]] = -c * sign
        row[n + r] = sign
        row[ncols] = e.const * sign
        if flip:
            col = n + m + ai
            ai += 1
            row[col] = _ONE
            basis[r] = col
        else:
            basis[r] = n + r

    rhs_col = ncols
    live = list(range(m))  # redundant rows found in phase 1 are dropped

    def pivot(r: int, j: int, zrow):
        row = T[r]
        piv = row[j]
        if piv != 1:
            inv = 1 / piv
            row = [x * inv if x else x for x in row]
            T[r] = row
        for i in live:
            if i == r:
                continue
            other = T[i]
            f = other[j]
            if f:
                T[i] = [a - f * b if b else a for a, b in zip(other, row)]
        f = zrow[j]
        if f:
            zrow[:] = [a - f * b if b else a for a, b in zip(zrow, row)]
        basis[r] = j

    def reduced_costs(cost):
        """Row of reduced costs c_j - c_B . B^-1 A_j, kept updated by pivot."""
        zrow = list(cost) + [_ZERO]
        for r in live:
            cb = cost[basis[r]]
            if cb:
                row = T[r]
                zrow[:] = [a - cb * b if b else a for a, b in zip(zrow, row)]
        return zrow

    def run_simplex(zrow, allowed_cols) -> Optional[str]:
        """Bland's rule throughout; returns UNBOUNDED or None (optimal)."""
        while True:
            entering = -1
            for j in range(allowed_cols):
                if zrow[j] > 0:
                    entering = j
                    break
            if entering < 0:
                return None
            leaving = -1
            best = None
            for r in live:
                coef = T[r][entering]
                if coef > 0:
                    ratio = T[r][rhs_col] / coef
                    if best is None or ratio < best or (
                        ratio == best and basis[r] < basis[leaving]
                    ):
                        best = ratio
                        leaving = r
            if leaving < 0:
                return UNBOUNDED
            pivot(leaving, entering, zrow)

    if n_art:
        cost1 = [_ZERO] * ncols
        for col in range(n + m, ncols):
            cost1[col] = -_ONE
        zrow1 = reduced_costs(cost1)
        run_simplex(zrow1, ncols)  # bounded above by 0, never unbounded
        total = sum((T[r][rhs_col] for r in live if basis[r] >= n + m), _ZERO)
        if total != 0:
            return LpResult(INFEASIBLE)
        for r in list(live):
            if basis[r] >= n + m:
                # degenerate artificial still basic: pivot it out or drop row
                row = T[r]
                for j in range(n + m):
                    if row[j] != 0:
                        pivot(r, j, zrow1)
                        break
                else:
                    live.remove(r)

    cost2 = [_ZERO] * ncols
    for v, c in objective.terms.items():
        cost2[vindex[v]] = c
    status = run_simplex(reduced_costs(cost2), n + m)
    if status == UNBOUNDED:
        return LpResult(UNBOUNDED)

    point = {v: _ZERO for v in var_list}
    for r in live:
        if basis[r] < n:
            point[var_list[basis[r]]] = T[r][rhs_col]
    value = objective.const + sum(
        (c * point[v] for v, c in objective.terms.items()), _ZERO
    )
    return LpResult(OPTIMAL, value, point)
