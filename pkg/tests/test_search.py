import pytest
from gmpy2 import mpq

from sidesum.constructions import figure8, grid, merge_block
from sidesum.errors import DomainError, ResourceLimitError
from sidesum.geometry import canonical_form, sigma, to_json, verify
from sidesum.numerics import AffineExpr
from sidesum.search import (
    NEG,
    POS,
    UNKNOWN,
    ZERO,
    ConstraintStore,
    StoreInconsistent,
    enumerate_max,
    sign_of,
)


def var(v):
    return AffineExpr.variable(v)


class TestSignOf:
    def test_bound_variable_sign(self):
        store = ConstraintStore()
        store.add_eq(var(1) - AffineExpr(mpq(3, 5)))
        assert sign_of(AffineExpr(1) - var(1), store, samples=[{}]) == POS

    def test_unconstrained_difference_unknown(self):
        store = ConstraintStore()
        for v in (1, 2):
            store.add_gt(var(v))
            store.add_gt(AffineExpr(1) - var(v))
        samples = [{1: mpq(1, 2), 2: mpq(1, 2)}]
        assert sign_of(var(1) - var(2), store, samples=samples) is UNKNOWN

    def test_forced_zero(self):
        store = ConstraintStore()
        store.add_ge(var(1) - AffineExpr(1))
        store.add_ge(AffineExpr(1) - var(1))
        assert sign_of(var(1) - AffineExpr(1), store, samples=[{1: mpq(1)}]) == ZERO

    def test_negative(self):
        store = ConstraintStore()
        store.add_gt(var(1))
        store.add_gt(AffineExpr(mpq(1, 3)) - var(1))
        assert sign_of(var(1) - AffineExpr(1), store, samples=[{1: mpq(1, 4)}]) == NEG

    def test_inconsistent_store_signals(self):
        store = ConstraintStore()
        store.add_ge(var(1) - AffineExpr(2))  # x >= 2
        store.add_ge(AffineExpr(1) - var(1))  # x <= 1
        with pytest.raises(StoreInconsistent):
            sign_of(var(1), store, samples=[])

    def test_constant_fast_path(self):
        store = ConstraintStore()
        assert sign_of(AffineExpr(mpq(-2)), store) == NEG
        assert sign_of(AffineExpr(0), store) == ZERO


class TestConstraintStore:
    def test_equality_substitutes_everywhere(self):
        store = ConstraintStore()
        store.add_gt(var(1))
        store.add_gt(var(2) - var(1))
        store.add_eq(var(2) - AffineExpr(mpq(1, 2)))
        # the inequality 2 > 1 must now mention only variable 1
        assert all(set(e.terms) <= {1} for e in store.rows())

    def test_contradictory_equality(self):
        store = ConstraintStore()
        store.add_eq(var(1) - AffineExpr(1))
        with pytest.raises(StoreInconsistent):
            store.add_eq(var(1) - AffineExpr(2))


class TestEnumerate:
    def test_single_tile(self, small_search_results):
        r = small_search_results[1]
        assert r.max_sigma == 1
        assert to_json(r.witnesses[0]) == '{"n": 1, "tiles": [{"x": "0", "y": "0", "s": "1"}]}'

    def test_impossible_counts(self, small_search_results):
        for n in (2, 3, 5):
            r = small_search_results[n]
            assert r.infeasible and r.max_sigma is None and not r.witnesses

    def test_four_tiles(self, small_search_results):
        r = small_search_results[4]
        assert r.max_sigma == 2
        assert to_json(r.witnesses[0]) == to_json(canonical_form(grid(2)))

    def test_six_tiles(self, small_search_results):
        r = small_search_results[6]
        assert r.max_sigma == mpq(7, 3)
        assert to_json(r.witnesses[0]) == to_json(canonical_form(merge_block(grid(3), 0, 2)))

    def test_seven_tiles(self, small_search_results):
        assert small_search_results[7].max_sigma == mpq(5, 2)

    def test_witnesses_verify_and_match_reported_max(self, small_search_results):
        for r in small_search_results.values():
            for w in r.witnesses:
                assert verify(w, require_full_cover=True).ok
                assert sigma(w) == r.max_sigma

    def test_determinism_and_worker_invariance(self):
        runs = [
            enumerate_max(6),
            enumerate_max(6),
            enumerate_max(6, workers=2),
            enumerate_max(6, workers=3),
        ]
        keys = {(str(r.max_sigma), tuple(to_json(w) for w in r.witnesses)) for r in runs}
        assert len(keys) == 1

    def test_incumbent_seeding_does_not_change_results(self):
        default = enumerate_max(6)
        low = enumerate_max(6, prune_with_incumbent=mpq(1))
        exact = enumerate_max(6, prune_with_incumbent=mpq(7, 3))
        assert default.max_sigma == low.max_sigma == exact.max_sigma
        assert (
            [to_json(w) for w in default.witnesses]
            == [to_json(w) for w in low.witnesses]
            == [to_json(w) for w in exact.witnesses]
        )

    def test_pruning_hides_nothing(self):
        # incumbent 0 disables the bound prune entirely; the exhaustive run
        # must reproduce the same maximum and the same complete witness set
        pruned = enumerate_max(6, all_optima=True)
        full = enumerate_max(6, all_optima=True, prune_with_incumbent=mpq(0))
        assert full.nodes_explored >= pruned.nodes_explored
        assert pruned.max_sigma == full.max_sigma
        assert [to_json(w) for w in pruned.witnesses] == [to_json(w) for w in full.witnesses]

    def test_all_optima_collects_each_class_once(self):
        r = enumerate_max(4, all_optima=True)
        assert len(r.witnesses) == 1  # the 2x2 grid is the unique optimum

    def test_face_dimensions_are_zero_for_rigid_optima(self, small_search_results):
        for n in (1, 4, 6, 7):
            assert all(d == 0 for d in small_search_results[n].witness_face_dims)

    def test_resource_guards(self):
        with pytest.raises(ResourceLimitError):
            enumerate_max(10)
        with pytest.raises(DomainError):
            enumerate_max(0)
        with pytest.raises(ResourceLimitError) as err:
            enumerate_max(6, node_budget=10)
        assert err.value.partial is not None

    def test_leaf_log_contents(self):
        r = enumerate_max(4, collect_leaves=True)
        assert r.leaf_log
        for value, tiling in r.leaf_log:
            assert verify(tiling, require_full_cover=True).ok
            assert sigma(tiling) == value
