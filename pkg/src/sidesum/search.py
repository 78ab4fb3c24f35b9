"""Complete enumeration of unit-square tilings by exactly n squares, with
exact maximization of the total side length per combinatorial structure.

The state of a partial tiling is a skyline: the staircase boundary of the
region covered so far, encoded as segments whose x-extents and heights are
affine expressions over the side-length variables, plus a store of linear
constraints accumulated along the branch.  The invariant driving the
search: the lowest-leftmost uncovered point of any partial tiling is the
lower-left corner of exactly one tile, so placing tiles there in order
generates every tiling exactly once.

Branching happens in two places.  Placing a tile on the minimal segment
forks on whether the new side equals the segment width or falls short of
it; and whenever the order of two segment heights is not determined by the
constraint store, the node forks into "less", "equal" and "greater"
children (the equality child records a linear equality and re-merges
segments).  Exact sign questions are answered by evaluating cached strictly
feasible sample points first and falling back to exact LP feasibility
tests; strict inequalities are handled through an auxiliary margin
variable, so no question is ever answered approximately.

At a leaf every remaining segment must reach height 1; the side sum is then
maximized by exact LP over the closure of the branch region.  A second LP
maximizes the minimum side on the optimal face, which both rejects faces
that are only attained with degenerate zero-size tiles (those points are
tilings with fewer squares and belong to no n-square branch) and produces a
strictly positive witness whenever one exists.  Every witness is re-checked
by the independent geometric verifier before it is reported.

Because pruning against the incumbent is strict (a branch dies only when
its upper bound is strictly below the incumbent) and every incumbent is the
side sum of a genuine tiling, the reported maximum and canonical witness
set are independent of seeding, exploration order and worker count.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from gmpy2 import mpq

from .constructions import best_known_sigma
from .errors import DomainError, ResourceLimitError
from .geometry import Tile, Tiling, canonical_form, sigma, to_json, verify
from .lp import INFEASIBLE, OPTIMAL, maximize
from .numerics import AffineExpr, Rational

NEG, ZERO, POS = -1, 0, 1
UNKNOWN = None

_ZERO = mpq(0)
_ONE_EXPR = AffineExpr(1)
_MAX_SAMPLES = 6


class StoreInconsistent(Exception):
    """The constraint store has become infeasible; the caller prunes."""


class ConstraintStore:
    """Triangular equality substitutions plus strict/non-strict inequalities.

    Every stored expression is kept normalized through the substitution map
    (applying the map is a fixpoint), so free variables are exactly the
    unsubstituted ones and syntactic equality of expressions is meaningful.
    """

    __slots__ = ("subst", "ge", "gt")

    def __init__(self, subst=None, ge=None, gt=None):
        self.subst = subst if subst is not None else {}
        self.ge = ge if ge is not None else {}
        self.gt = gt if gt is not None else {}

    def copy(self) -> "ConstraintStore":
        return ConstraintStore(dict(self.subst), dict(self.ge), dict(self.gt))

    def __getstate__(self):
        return (self.subst, self.ge, self.gt)

    def __setstate__(self, state):
        self.subst, self.ge, self.gt = state

    def normalize(self, e: AffineExpr) -> AffineExpr:
        return e.substitute(self.subst)

    def add_ge(self, e: AffineExpr):
        """Add e >= 0."""
        e = e.substitute(self.subst)
        if e.is_const:
            if e.const < 0:
                raise StoreInconsistent
            return
        k = e.key()
        if k not in self.gt:
            self.ge.setdefault(k, e)

    def add_gt(self, e: AffineExpr):
        """Add e > 0 (strict)."""
        e = e.substitute(self.subst)
        if e.is_const:
            if e.const <= 0:
                raise StoreInconsistent
            return
        k = e.key()
        self.gt.setdefault(k, e)
        self.ge.pop(k, None)

    def add_eq(self, e: AffineExpr) -> Optional[int]:
        """Add e == 0 by eliminating its newest variable; returns that
        variable id (or None for a trivially true constant equality)."""
        e = e.substitute(self.subst)
        if e.is_const:
            if e.const != 0:
                raise StoreInconsistent
            return None
        v = max(e.terms)
        coeff = e.terms[v]
        rhs = AffineExpr(e.const, {u: c for u, c in e.terms.items() if u != v}).scale(
            -1 / coeff
        )
        binding = {v: rhs}
        new_subst = {u: expr.substitute(binding) for u, expr in self.subst.items()}
        new_subst[v] = rhs
        self.subst = new_subst
        old_ge, old_gt = self.ge, self.gt
        self.ge, self.gt = {}, {}
        for expr in old_gt.values():
            self.add_gt(expr.substitute(binding))
        for expr in old_ge.values():
            self.add_ge(expr.substitute(binding))
        return v

    def rows(self) -> list[AffineExpr]:
        """All inequalities with strictness relaxed (the closure)."""
        return list(self.gt.values()) + list(self.ge.values())


def _strict_sample(store: ConstraintStore, extra_gt=(), extra_eq=()) -> Optional[dict]:
    """A point satisfying the store with every strict inequality strictly,
    or None.  Found by maximizing a margin variable lam subject to
    e >= lam for each strict row; the system is strictly feasible iff the
    maximum is positive."""
    rows = []
    lam = 0
    for e in list(store.gt.values()) + list(extra_gt):
        for v in e.terms:
            if v >= lam:
                lam = v + 1
    for e in store.ge.values():
        for v in e.terms:
            if v >= lam:
                lam = v + 1
    for q in extra_eq:
        for v in q.terms:
            if v >= lam:
                lam = v + 1
    lam_term = AffineExpr.variable(lam, -1)
    for e in list(store.gt.values()) + list(extra_gt):
        rows.append(e + lam_term)
    rows.extend(store.ge.values())
    for q in extra_eq:
        rows.append(q)
        rows.append(-q)
    rows.append(AffineExpr(1, {lam: mpq(-1)}))  # cap, keeps the LP bounded
    res = maximize(AffineExpr.variable(lam), rows)
    if res.status != OPTIMAL or res.value <= 0:
        return None
    point = dict(res.point)
    point.pop(lam, None)
    return point


def sign_of(e: AffineExpr, store: ConstraintStore, samples=None, memo=None):
    """Exact sign of e over the store's strictly feasible set.

    Returns NEG, ZERO or POS when the sign is the same at every strictly
    feasible point, UNKNOWN when at least two signs are attainable, and
    raises StoreInconsistent when the store itself is strictly infeasible.

    Cached strictly feasible sample points settle most queries for free.
    The LP fallback exploits a convexity fact: when the strict region is
    nonempty, its closure equals the relaxed polyhedron, so the range of e
    over the strict region is read off two closure LPs, and only the "is
    e == 0 strictly attainable" question on a one-sided range needs a
    feasibility probe with the margin variable.
    """
    e = store.normalize(e)
    if e.is_const:
        c = e.const
        return POS if c > 0 else (NEG if c < 0 else ZERO)
    key = e.key()
    if memo is not None:
        hit = memo.get(key, "miss")
        if hit != "miss":
            return hit
    neg_seen = pos_seen = zero_seen = False
    if samples:
        for s in samples:
            val = e.evaluate(s)
            if val > 0:
                pos_seen = True
            elif val < 0:
                neg_seen = True
            else:
                zero_seen = True
            if neg_seen + pos_seen + zero_seen >= 2:
                break

    def settle(result):
        if memo is not None:
            memo[key] = result
            memo[(-e).key()] = UNKNOWN if result is UNKNOWN else -result
        return result

    def remember_interior(vertex, extreme):
        # A point strictly between samples[0] and a closure vertex is
        # strictly feasible; place it so that e lands at extreme/2, giving
        # later queries (and fork children) a witness of this sign of e.
        if not samples or len(samples) >= _MAX_SAMPLES:
            return
        p = samples[0]
        ep = e.evaluate(p)
        t = (ep - extreme / 2) / (ep - extreme)
        q = {v: pv + t * (vertex.get(v, _ZERO) - pv) for v, pv in p.items()}
        samples.append(q)

    if neg_seen + pos_seen + zero_seen >= 2:
        return settle(UNKNOWN)

    rows = store.rows()
    lo_zero = hi_zero = False
    if not neg_seen:
        res = maximize(-e, rows)
        if res.status != OPTIMAL:
            if res.status == INFEASIBLE:
                raise StoreInconsistent
            raise RuntimeError("sign LP cannot be unbounded on a bounded region")
        lo = -res.value
        if lo > 0:
            return settle(POS)
        neg_seen = lo < 0
        lo_zero = lo == 0
        if neg_seen:
            remember_interior(res.point, lo)
    if neg_seen and (pos_seen or zero_seen):
        return settle(UNKNOWN)
    if not pos_seen:
        res = maximize(e, rows)
        if res.status != OPTIMAL:
            if res.status == INFEASIBLE:
                raise StoreInconsistent
            raise RuntimeError("sign LP cannot be unbounded on a bounded region")
        hi = res.value
        if hi < 0:
            return settle(NEG)
        pos_seen = hi > 0
        hi_zero = hi == 0
        if pos_seen:
            remember_interior(res.point, hi)
    if lo_zero and hi_zero:
        return settle(ZERO)
    if neg_seen and pos_seen:
        return settle(UNKNOWN)
    # one-sided range touching zero: POS/NEG unless e == 0 is strictly attainable
    if not zero_seen:
        point = _strict_sample(store, extra_eq=(e,))
        if point is not None:
            zero_seen = True
            if samples is not None and len(samples) < _MAX_SAMPLES:
                samples.append(point)
    if zero_seen:
        if not (neg_seen or pos_seen):
            return settle(ZERO)
        return settle(UNKNOWN)
    return settle(POS if pos_seen else NEG)


class _Node:
    """One branch of the search: skyline segments, placed tiles, store."""

    __slots__ = ("segs", "tiles", "placed", "nvars", "store", "samples", "signs")

    def __init__(self, segs, tiles, placed, nvars, store, samples, signs):
        self.segs = segs  # tuple of (x_left, x_right, height) AffineExpr triples
        self.tiles = tiles  # tuple of (x, y, side_var)
        self.placed = placed
        self.nvars = nvars
        self.store = store
        self.samples = samples
        self.signs = signs

    def __getstate__(self):
        return (self.segs, self.tiles, self.placed, self.nvars, self.store, self.samples, self.signs)

    def __setstate__(self, state):
        (self.segs, self.tiles, self.placed, self.nvars, self.store, self.samples, self.signs) = state

    def sign(self, e: AffineExpr):
        return sign_of(e, self.store, self.samples, self.signs)


def _inherit_signs(signs: dict, *facts) -> dict:
    out = {k: v for k, v in signs.items() if v is not UNKNOWN}
    for e, sg in facts:
        out[e.key()] = sg
        out[(-e).key()] = -sg
    return out


def _renorm_segs(segs, store):
    return tuple(
        (store.normalize(xl), store.normalize(xr), store.normalize(h))
        for xl, xr, h in segs
    )


def _renorm_tiles(tiles, store):
    return tuple((store.normalize(x), store.normalize(y), sv) for x, y, sv in tiles)


def _merge_equal_neighbors(segs: list) -> list:
    """Merge adjacent segments whose heights are syntactically equal."""
    i = 0
    while i + 1 < len(segs):
        if segs[i][2] == segs[i + 1][2]:
            segs[i : i + 2] = [(segs[i][0], segs[i + 1][1], segs[i][2])]
            if i:
                i -= 1
        else:
            i += 1
    return segs


@dataclass
class _Ctx:
    """Mutable search context: options, counters and the result accumulator."""

    n: int
    seed: Optional[Rational]
    all_optima: bool
    collect_leaves: bool
    budget: int
    incumbent: Optional[Rational] = None
    best: Optional[Rational] = None
    witnesses: dict = field(default_factory=dict)  # canonical json -> (Tiling, face_dim)
    leaf_log: list = field(default_factory=list)
    nodes: int = 0
    leaves: int = 0
    pruned: int = 0
    degenerate_leaves: int = 0

    def __post_init__(self):
        self.incumbent = self.seed

    def record_leaf(self, value, tiling, store, objective, nfree):
        if self.collect_leaves:
            self.leaf_log.append((value, tiling))
        if self.best is not None and value < self.best:
            return
        if self.best is None or value > self.best:
            self.best = value
            self.witnesses = {}
        canon = canonical_form(tiling)
        key = to_json(canon)
        if key not in self.witnesses:
            face_dim = _face_dimension(store, objective, value, nfree)
            if self.all_optima or not self.witnesses or key < min(self.witnesses):
                self.witnesses[key] = (canon, face_dim)
                if not self.all_optima and len(self.witnesses) > 1:
                    top = min(self.witnesses)
                    self.witnesses = {top: self.witnesses[top]}
        if self.incumbent is None or value > self.incumbent:
            self.incumbent = value


def _face_dimension(store: ConstraintStore, objective: AffineExpr, value, nfree: int) -> int:
    """Dimension of the optimal face {rows >= 0, objective == value}."""
    rows = store.rows()
    face = rows + [objective - AffineExpr(value), AffineExpr(value) - objective]
    normals = [dict(objective.terms)]
    for r in rows:
        res = maximize(r, face)
        if res.status == OPTIMAL and res.value == 0:
            normals.append(dict(r.terms))
    # rank of the tight normals by exact Gaussian elimination
    basis: dict[int, dict] = {}
    rank = 0
    for row in normals:
        row = dict(row)
        while row:
            pivot = max(row)
            ref = basis.get(pivot)
            if ref is None:
                basis[pivot] = {v: c / row[pivot] for v, c in row.items()}
                rank += 1
                break
            f = row[pivot]
            for v, c in ref.items():
                acc = row.get(v, _ZERO) - f * c
                if acc == 0:
                    row.pop(v, None)
                else:
                    row[v] = acc
    return nfree - rank


def _fork_three(node: _Node, segs: list, d: AffineExpr) -> list[_Node]:
    """Children for an undetermined height comparison d: the < 0, == 0 and
    > 0 cases, which are exhaustive and pairwise disjoint."""
    children = []
    segs_t = tuple(segs)
    for case in (NEG, ZERO, POS):
        store = node.store.copy()
        try:
            if case == NEG:
                store.add_gt(-d)
            elif case == POS:
                store.add_gt(d)
            else:
                bound = store.add_eq(d)
        except StoreInconsistent:
            continue
        if case == ZERO:
            samples = []
            for s in node.samples:
                if d.evaluate(s) == 0:
                    s2 = dict(s)
                    if bound is not None:
                        s2.pop(bound, None)
                    samples.append(s2)
            signs = {}
            child_segs = _renorm_segs(segs_t, store)
            child_tiles = _renorm_tiles(node.tiles, store)
        else:
            samples = []
            for s in node.samples:
                val = d.evaluate(s)
                if (val > 0) if case == POS else (val < 0):
                    samples.append(dict(s))
            signs = _inherit_signs(node.signs, (d, case))
            child_segs = segs_t
            child_tiles = node.tiles
        if not samples:
            point = _strict_sample(store)
            if point is None:
                continue
            samples = [point]
        children.append(
            _Node(child_segs, child_tiles, node.placed, node.nvars, store, samples, signs)
        )
    return children


def _place(node: _Node, segs: list, cand: int, equal_width: bool) -> Optional[_Node]:
    """Place the next tile at the left end of the minimal segment, its side
    either exactly the segment width or strictly less."""
    xl, xr, h = segs[cand]
    width = xr - xl
    svar = node.nvars
    s_expr = AffineExpr.variable(svar)
    store = node.store.copy()
    try:
        store.add_gt(s_expr)
        store.add_ge(_ONE_EXPR - h - s_expr)
        if equal_width:
            store.add_eq(s_expr - width)
        else:
            store.add_gt(width - s_expr)
    except StoreInconsistent:
        return None

    tiles = node.tiles + ((xl, h, svar),)
    if equal_width:
        raised = h + width
        new_segs = tuple(segs[:cand]) + ((xl, xr, raised),) + tuple(segs[cand + 1 :])
        samples = []
        for s in node.samples:
            if (_ONE_EXPR - h - width).evaluate(s) >= 0:
                samples.append(dict(s))
        signs = {}
        new_segs = _renorm_segs(new_segs, store)
        tiles = _renorm_tiles(tiles, store)
    else:
        mid = xl + s_expr
        new_segs = (
            tuple(segs[:cand])
            + ((xl, mid, h + s_expr), (mid, xr, h))
            + tuple(segs[cand + 1 :])
        )
        samples = []
        for s in node.samples:
            room = min(width.evaluate(s), 1 - h.evaluate(s))
            if room > 0:
                s2 = dict(s)
                s2[svar] = room / 2
                samples.append(s2)
        signs = _inherit_signs(node.signs)
    if not samples:
        point = _strict_sample(store)
        if point is None:
            return None
        samples = [point]
    return _Node(new_segs, tiles, node.placed + 1, node.nvars + 1, store, samples, signs)


def _expand(node: _Node, ctx: _Ctx) -> list[_Node]:
    if node.placed == ctx.n:
        _finalize_leaf(node, ctx)
        return []

    segs = _merge_equal_neighbors(list(node.segs))

    # Find the leftmost provably minimal segment, forking when a comparison
    # is undetermined and merging adjacent provably equal segments.
    while True:
        cand = 0
        implied = None
        fork = None
        j = 1
        while j < len(segs):
            d = segs[j][2] - segs[cand][2]
            try:
                sg = node.sign(d)
            except StoreInconsistent:
                return []
            if sg is UNKNOWN:
                fork = d
                break
            if sg == NEG:
                cand = j
            elif sg == ZERO and j == cand + 1:
                implied = d
                break
            j += 1
        if fork is not None:
            return _fork_three(node, segs, fork)
        if implied is not None:
            # provably equal adjacent heights: fold the implied equality into
            # the store so the segments merge syntactically, then rescan
            store = node.store.copy()
            try:
                bound = store.add_eq(store.normalize(implied))
            except StoreInconsistent:
                return []
            samples = []
            for s in node.samples:
                s2 = dict(s)
                if bound is not None:
                    s2.pop(bound, None)
                samples.append(s2)
            if not samples:
                point = _strict_sample(store)
                if point is None:
                    return []
                samples = [point]
            node = _Node(
                _renorm_segs(tuple(segs), store),
                _renorm_tiles(node.tiles, store),
                node.placed,
                node.nvars,
                store,
                samples,
                {},
            )
            segs = _merge_equal_neighbors(list(node.segs))
            continue
        break

    # Upper bound: every future tile sits above the current minimum height,
    # so its side is at most 1 - h_min.  Strictly below the incumbent kills
    # the branch; ties survive so that every optimum is reached.
    if ctx.incumbent is not None:
        remaining = ctx.n - node.placed
        h_min = segs[cand][2]
        obj = (_ONE_EXPR - h_min).scale(remaining)
        for _, _, sv in node.tiles:
            obj = obj + AffineExpr.variable(sv)
        obj = node.store.normalize(obj)
        # The LP can only prune when its maximum is below the incumbent, so
        # any sample already at or above the incumbent makes it pointless.
        if all(obj.evaluate(s) < ctx.incumbent for s in node.samples):
            res = maximize(obj, node.store.rows())
            if res.status == INFEASIBLE:
                return []
            if res.status != OPTIMAL:
                raise RuntimeError("relaxation LP cannot be unbounded: sides lie in [0, 1]")
            if res.value < ctx.incumbent:
                ctx.pruned += 1
                return []

    children = []
    for equal_width in (True, False):
        child = _place(node, segs, cand, equal_width)
        if child is not None:
            children.append(child)
    return children


def _finalize_leaf(node: _Node, ctx: _Ctx):
    ctx.leaves += 1
    store = node.store.copy()
    try:
        for _, _, h in node.segs:
            e = store.normalize(h) - _ONE_EXPR
            store.add_eq(e)
    except StoreInconsistent:
        return
    sample = _strict_sample(store)
    if sample is None:
        return

    objective = AffineExpr(0)
    for _, _, sv in node.tiles:
        objective = objective + AffineExpr.variable(sv)
    objective = store.normalize(objective)
    res = maximize(objective, store.rows())
    if res.status != OPTIMAL:
        raise RuntimeError("leaf LP must be feasible and bounded")
    value = res.value
    if (
        not ctx.collect_leaves
        and ctx.incumbent is not None
        and value < ctx.incumbent
    ):
        return

    # Maximize the minimum side on the optimal face: a positive optimum
    # certifies a genuine n-tile witness; zero means the face only contains
    # degenerate (fewer-tile) limit points, which belong to no branch.
    mu = node.nvars
    face = store.rows() + [
        objective - AffineExpr(value),
        AffineExpr(value) - objective,
    ]
    mu_rows = list(face)
    for _, _, sv in node.tiles:
        mu_rows.append(store.normalize(AffineExpr.variable(sv)) - AffineExpr.variable(mu))
    res2 = maximize(AffineExpr.variable(mu), mu_rows)
    if res2.status != OPTIMAL:
        raise RuntimeError("face LP cannot fail: the optimum is attained")
    if res2.value <= 0:
        ctx.degenerate_leaves += 1
        return

    assignment = {v: val for v, val in res2.point.items() if v != mu}
    for v in range(node.nvars):
        if v not in assignment:
            rhs = store.subst.get(v)
            assignment[v] = rhs.evaluate(assignment) if rhs is not None else _ZERO
    tiles = tuple(
        Tile(x.evaluate(assignment), y.evaluate(assignment), assignment[sv])
        for x, y, sv in node.tiles
    )
    tiling = Tiling(tiles)
    verdict = verify(tiling, require_full_cover=True)
    if not verdict or sigma(tiling) != value:
        raise RuntimeError(f"internal soundness violation at a leaf: {verdict.detail}")
    nfree = node.nvars - len(store.subst)
    ctx.record_leaf(value, tiling, store, objective, nfree)


@dataclass(frozen=True, slots=True)
class SearchResult:
    """Outcome of enumerate_max; max_sigma None means no tiling exists.

    ``leaves`` counts every branch that placed all n tiles, including those
    whose constraint store then turned out inconsistent; ``witnesses`` are
    canonical forms, verified and deduplicated up to the square's
    symmetries, with their optimal-face dimensions in
    ``witness_face_dims`` (0 means the optimum is an isolated point of its
    branch, i.e. the tiling is rigid)."""

    n: int
    max_sigma: Optional[Rational]
    witnesses: tuple[Tiling, ...]
    nodes_explored: int
    leaves: int
    pruned: int
    degenerate_leaves: int
    witness_face_dims: tuple[int, ...]
    leaf_log: tuple = ()

    @property
    def infeasible(self) -> bool:
        return self.max_sigma is None


def _root() -> _Node:
    zero = AffineExpr(0)
    one = AffineExpr(1)
    return _Node(((zero, one, zero),), (), 0, 0, ConstraintStore(), [{}], {})


def _run_dfs(root: _Node, ctx: _Ctx):
    stack = [root]
    while stack:
        node = stack.pop()
        ctx.nodes += 1
        if ctx.nodes > ctx.budget:
            raise ResourceLimitError(
                f"node budget {ctx.budget} exceeded", partial=_result_from_ctx(ctx)
            )
        children = _expand(node, ctx)
        stack.extend(reversed(children))


def _result_from_ctx(ctx: _Ctx) -> SearchResult:
    items = sorted(ctx.witnesses.items())
    log = tuple(sorted(ctx.leaf_log, key=lambda p: (-p[0], to_json(p[1]))))
    return SearchResult(
        n=ctx.n,
        max_sigma=ctx.best,
        witnesses=tuple(t for _, (t, _) in items),
        nodes_explored=ctx.nodes,
        leaves=ctx.leaves,
        pruned=ctx.pruned,
        degenerate_leaves=ctx.degenerate_leaves,
        witness_face_dims=tuple(dim for _, (_, dim) in items),
        leaf_log=log,
    )


def _run_subtree(args):
    node, n, seed, all_optima, collect_leaves, budget = args
    ctx = _Ctx(n=n, seed=seed, all_optima=all_optima, collect_leaves=collect_leaves, budget=budget)
    _run_dfs(node, ctx)
    return ctx


def _merge_ctx(main: _Ctx, part: _Ctx):
    main.nodes += part.nodes
    main.leaves += part.leaves
    main.pruned += part.pruned
    main.degenerate_leaves += part.degenerate_leaves
    main.leaf_log.extend(part.leaf_log)
    if part.best is None:
        return
    if main.best is None or part.best > main.best:
        main.best = part.best
        main.witnesses = {}
    if part.best == main.best:
        for key, payload in part.witnesses.items():
            if key not in main.witnesses:
                main.witnesses[key] = payload
        if not main.all_optima and main.witnesses:
            top = min(main.witnesses)
            main.witnesses = {top: main.witnesses[top]}
    if main.incumbent is None or part.best > main.incumbent:
        main.incumbent = part.best


def enumerate_max(
    n: int,
    *,
    all_optima: bool = False,
    prune_with_incumbent: Optional[Rational] = None,
    workers: int = 1,
    node_budget: int = 10**8,
    max_n: int = 9,
    collect_leaves: bool = False,
) -> SearchResult:
    """Exact maximum side sum over all tilings of the unit square by exactly
    n squares, with verified witnesses; None/infeasible when no tiling
    exists (n of 2, 3 or 5).

    The search seeds its incumbent with the best explicit construction (a
    genuine tiling, hence a valid lower bound) unless
    ``prune_with_incumbent`` overrides it; an override MUST itself be the
    side sum of some n-tile tiling, since pruning trusts it as a lower
    bound.  Results are deterministic and identical for every worker count;
    node counters may differ between sequential and parallel runs because
    incumbent improvements propagate differently.
    """
    if n < 1:
        raise DomainError("need at least one tile")
    if n > max_n:
        raise ResourceLimitError(
            f"n={n} exceeds the configured limit {max_n}; raise max_n explicitly"
        )
    seed = prune_with_incumbent if prune_with_incumbent is not None else best_known_sigma(n)
    ctx = _Ctx(
        n=n,
        seed=seed,
        all_optima=all_optima,
        collect_leaves=collect_leaves,
        budget=node_budget,
    )
    if workers <= 1:
        _run_dfs(_root(), ctx)
        return _result_from_ctx(ctx)

    # Parallel mode: expand a deterministic frontier breadth-first, then
    # hand each frontier subtree to a worker.  Workers do not share
    # incumbents (each starts from the seed), so the merged result is
    # reproducible for any worker count.
    frontier = [_root()]
    threshold = 64
    while frontier and len(frontier) < threshold:
        node = frontier.pop(0)
        ctx.nodes += 1
        frontier.extend(_expand(node, ctx))
    if frontier:
        import concurrent.futures

        tasks = [
            (node, n, seed, all_optima, collect_leaves, node_budget)
            for node in frontier
        ]
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_run_subtree, tasks):
                _merge_ctx(ctx, part)
    if ctx.nodes > node_budget:
        raise ResourceLimitError(
            f"node budget {node_budget} exceeded", partial=_result_from_ctx(ctx)
        )
    return _result_from_ctx(ctx)
