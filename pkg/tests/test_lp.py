import itertools
import random

from gmpy2 import mpq

from sidesum.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, LinProgram, lp_max, maximize
from sidesum.numerics import AffineExpr

ZERO = mpq(0)


def expr(const, coeffs):
    return AffineExpr(mpq(const), {v: mpq(c) for v, c in coeffs.items() if c})


def brute_force_max(objective, rows, nvars):
    """Independent oracle: enumerate candidate vertices as exact solutions
    of n-subsets of tight hyperplanes (rows or coordinate planes), keep the
    feasible ones, take the best.  Exponential and only for tiny LPs."""
    hyperplanes = []
    for e in rows:
        normal = [e.terms.get(v, ZERO) for v in range(nvars)]
        hyperplanes.append((normal, -e.const))
    for v in range(nvars):
        normal = [ZERO] * nvars
        normal[v] = mpq(1)
        hyperplanes.append((normal, ZERO))

    def solve(subset):
        # Gaussian elimination on the chosen tight constraints
        mat = [list(hyperplanes[i][0]) + [hyperplanes[i][1]] for i in subset]
        cols = list(range(nvars))
        piv_rows = []
        piv_cols = []
        r = 0
        for c in cols:
            pivot = None
            for rr in range(r, len(mat)):
                if mat[rr][c] != 0:
                    pivot = rr
                    break
            if pivot is None:
                continue
            mat[r], mat[pivot] = mat[pivot], mat[r]
            inv = 1 / mat[r][c]
            mat[r] = [x * inv for x in mat[r]]
            for rr in range(len(mat)):
                if rr != r and mat[rr][c] != 0:
                    f = mat[rr][c]
                    mat[rr] = [a - f * b for a, b in zip(mat[rr], mat[r])]
            piv_rows.append(r)
            piv_cols.append(c)
            r += 1
            if r == len(mat):
                break
        for rr in range(r, len(mat)):
            if mat[rr][nvars] != 0:
                return None  # inconsistent subset
        if len(piv_cols) < nvars:
            return None  # underdetermined: not a vertex
        point = [ZERO] * nvars
        for row_i, c in zip(piv_rows, piv_cols):
            point[c] = mat[row_i][nvars]
        return point

    def feasible(point):
        if any(x < 0 for x in point):
            return False
        for e in rows:
            val = e.const + sum(
                (c * point[v] for v, c in e.terms.items()), ZERO
            )
            if val < 0:
                return False
        return True

    best = None
    total = len(hyperplanes)
    for subset in itertools.combinations(range(total), nvars):
        point = solve(subset)
        if point is None or not feasible(point):
            continue
        val = objective.const + sum(
            (c * point[v] for v, c in objective.terms.items()), ZERO
        )
        if best is None or val > best:
            best = val
    return best


class TestBasics:
    def test_single_variable_box(self):
        res = maximize(expr(0, {0: 1}), [expr(1, {0: -1}), expr(0, {0: 1})])
        assert res.status == OPTIMAL and res.value == 1 and res.point[0] == 1

    def test_equality_via_paired_rows(self):
        rows = [expr(1, {0: -1, 1: -1}), expr(-1, {0: 1, 1: 1})]
        res = maximize(expr(0, {0: 1, 1: 1}), rows)
        assert res.status == OPTIMAL and res.value == 1

    def test_infeasible(self):
        rows = [expr(-1, {0: -1}), expr(0, {0: 1})]  # x <= -1, x >= 0
        assert maximize(expr(0, {0: 1}), rows).status == INFEASIBLE

    def test_unbounded(self):
        assert maximize(expr(0, {0: 1}), [expr(0, {0: 1})]).status == UNBOUNDED

    def test_constant_objective_feasibility_only(self):
        res = maximize(AffineExpr(mpq(7)), [expr(1, {0: -1})])
        assert res.status == OPTIMAL and res.value == 7
        res = maximize(AffineExpr(mpq(7)), [expr(-1, {}), expr(1, {0: -1})])
        assert res.status == INFEASIBLE

    def test_linprogram_wrapper(self):
        p = LinProgram(expr(0, {0: 1}), (expr(1, {0: -1}),))
        assert lp_max(p).value == 1


class TestEightTileStructureByHand:
    def test_leaf_system_reproduces_the_optimal_sides(self):
        """The constraint system of the optimal 8-tile structure, written
        out by hand as paired inequalities; its exact LP optimum must be
        13/5 at the known side assignment."""
        s = list(range(1, 9))
        equalities = [
            expr(-1, {s[1]: 1, s[0]: 1}),             # second tile closes the bottom row
            expr(0, {s[1]: 1, s[2]: 1, s[0]: -1}),    # step edge meets the corner tile top
            expr(-1, {s[3]: 1, s[0]: 1, s[2]: 1}),    # fourth tile reaches the right edge
            expr(0, {s[1]: 1, s[3]: 1, s[0]: -1}),    # raised run levels with the corner tile
            expr(0, {s[5]: 1, s[4]: -1}),             # the two upper mirror tiles agree
            expr(-1, {s[6]: 1, s[4]: 1, s[5]: 1}),    # seventh closes the upper row
            expr(-1, {s[7]: 1, s[4]: 1, s[5]: 1}),    # eighth sits directly above it
            expr(-1, {s[0]: 1, s[4]: 1}),             # left column reaches the top
            expr(-1, {s[0]: 1, s[6]: 1, s[7]: 1}),    # right column reaches the top
        ]
        rows = []
        for e in equalities:
            rows.append(e)
            rows.append(-e)
        for v in s:
            rows.append(expr(0, {v: 1}))
        objective = AffineExpr(ZERO, {v: mpq(1) for v in s})
        res = maximize(objective, rows)
        assert res.status == OPTIMAL
        assert res.value == mpq(13, 5)
        sides = [res.point[v] for v in s]
        assert sides == [
            mpq(3, 5), mpq(2, 5), mpq(1, 5), mpq(1, 5),
            mpq(2, 5), mpq(2, 5), mpq(1, 5), mpq(1, 5),
        ]


class TestAgainstBruteForce:
    def test_random_small_instances(self):
        rng = random.Random(1234)
        for trial in range(250):
            nvars = rng.randint(1, 4)
            nrows = rng.randint(1, 6)
            rows = []
            for _ in range(nrows):
                coeffs = {v: rng.randint(-4, 4) for v in range(nvars)}
                rows.append(expr(rng.randint(-4, 6), coeffs))
            # a box keeps everything bounded so the oracle applies
            for v in range(nvars):
                rows.append(expr(rng.randint(1, 5), {v: -1}))
            objective = expr(0, {v: rng.randint(-3, 3) for v in range(nvars)})
            res = maximize(objective, rows)
            want = brute_force_max(objective, rows, nvars)
            if want is None:
                assert res.status == INFEASIBLE, f"trial {trial}"
            else:
                assert res.status == OPTIMAL and res.value == want, f"trial {trial}"

    def test_degenerate_instances_terminate(self):
        # classic cycling-prone setup; Bland's rule must terminate
        rows = [
            expr(0, {0: mpq(-1, 4), 1: 60, 2: mpq(1, 25), 3: -9}),
            expr(0, {0: mpq(-1, 2), 1: 90, 2: mpq(1, 50), 3: -3}),
            expr(1, {2: -1}),
        ]
        objective = expr(0, {0: mpq(3, 4), 1: -150, 2: mpq(1, 50), 3: -6})
        res = maximize(objective, rows)
        assert res.status == OPTIMAL
        assert res.value == mpq(1, 20)
