"""Test searches for large mean subtree order."""
import logging
import math
from fractions import Fraction
import networkx as nx
import pytest
from subtree_order import search
from subtree_order.closed_forms import local_max_asymptotic, optimal_positions
from subtree_order.counting import (
    SubtreeAggregate,
    brute_force_counts,
    mean_subtree_order,
)
from subtree_order.families import Star, UnbalancedDoubleBroom
from subtree_order.generation import generate_free_trees


_LOGGER = logging.getLogger(__name__)


@pytest.mark.parametrize("n", range(4, 9), ids=str)
def test_star_optimal(n):
    """Test that the star is the unique optimum for small orders."""
    result = search.exhaustive_optimal(n)
    assert len(result.best_trees) == 1
    star = Star(n).build().to_networkx()
    assert nx.is_isomorphic(result.best_trees[0].to_networkx(), star)
    assert result.best_value == mean_subtree_order(Star(n).build())


def test_double_star_optimal():
    """Test that the double-star is the unique optimum of order 9."""
    result = search.exhaustive_optimal(9)
    assert result.best_value == Fraction(779, 159)
    assert result.trees_examined == 47
    (tree,) = result.best_trees
    double_star = UnbalancedDoubleBroom(2, 3, 4).build().to_networkx()
    assert nx.is_isomorphic(tree.to_networkx(), double_star)
    assert result.records() == ["n=9 mu=779/159 tree=0 1 2 2 2 1 1 1 1"]
    assert result.leaf_counts == [7]
    assert result.diameters == [3]
    assert result.caterpillar_flags == [True]
    table = result.table
    assert list(table["sigma"]) == [159]
    assert list(table["tau"]) == [779]


@pytest.mark.parametrize("n", range(2, 13), ids=str)
def test_optima_are_caterpillars(n):
    """Test that every optimum of a small order is a caterpillar."""
    result = search.exhaustive_optimal(n)
    assert all(result.caterpillar_flags)


@pytest.mark.slow
@pytest.mark.parametrize("n", range(13, 19), ids=str)
def test_larger_optima_are_caterpillars(n):
    """Test that every optimum up to order 18 is a caterpillar."""
    result = search.exhaustive_optimal(n)
    assert result.caterpillar_flags
    assert all(result.caterpillar_flags)


@pytest.mark.parametrize("n", range(2, 10), ids=str)
def test_exhaustive_oracle(n):
    """Test the search optimum against enumeration of every tree."""
    best = max(
        brute_force_counts(tree).mean for tree in generate_free_trees(n)
    )
    assert search.exhaustive_optimal(n).best_value == best


@pytest.mark.parametrize("n", [10, 11], ids=str)
def test_worker_count_independence(n):
    """Test that results do not depend on workers or chunking."""
    serial = search.exhaustive_optimal(n, jobs=1)
    parallel = search.exhaustive_optimal(n, jobs=2, chunk_size=7)
    assert parallel.canonical_forms == serial.canonical_forms
    assert parallel.best_counts == serial.best_counts
    assert parallel.trees_examined == serial.trees_examined
    assert str(parallel) == str(serial)


@pytest.mark.slow
@pytest.mark.parametrize("n", [12, 14], ids=str)
def test_eight_workers(n):
    """Test that eight workers reproduce the serial result."""
    serial = search.exhaustive_optimal(n, jobs=1)
    parallel = search.exhaustive_optimal(n, jobs=8)
    assert parallel.canonical_forms == serial.canonical_forms
    assert parallel.best_counts == serial.best_counts
    assert parallel.trees_examined == serial.trees_examined
    assert parallel.records() == serial.records()


@pytest.mark.parametrize(
    "kwargs",
    [{"n": 1}, {"n": 21}, {"n": 10, "cap": 25}, {"n": 10, "chunk_size": 0}],
    ids=str,
)
def test_exhaustive_rejects(kwargs):
    """Test search argument validation."""
    with pytest.raises(ValueError):
        search.exhaustive_optimal(**kwargs)


def test_compare():
    """Test exact comparison of means."""
    assert search.compare(SubtreeAggregate(3, 6), SubtreeAggregate(1, 2)) == 0
    assert search.compare(SubtreeAggregate(3, 7), SubtreeAggregate(1, 2)) == 1
    assert search.compare(SubtreeAggregate(3, 5), SubtreeAggregate(1, 2)) == -1


def test_result_validation():
    """Test that optima must share one mean."""
    tree = Star(3).build()
    with pytest.raises(ValueError):
        search.SearchResult(3, [], [], 0, None)
    with pytest.raises(ValueError):
        search.SearchResult(
            3,
            [tree, tree],
            [SubtreeAggregate(6, 10), SubtreeAggregate(6, 11)],
            2,
            None,
        )


@pytest.mark.parametrize(
    "n,leaves_per_end,mean",
    [(4, 1, Fraction(2)), (9, 3, Fraction(487, 103))],
    ids=str,
)
def test_best_double_broom(n, leaves_per_end, mean):
    """Test the best balanced double brooms."""
    found, aggregate, value = search.best_double_broom(n)
    assert found == leaves_per_end
    assert value == mean == aggregate.mean


def test_best_double_broom_rejects():
    """Test order validation."""
    with pytest.raises(ValueError):
        search.best_double_broom(3)


@pytest.mark.parametrize("n", [100, 1000, 10**4, 10**5], ids=str)
def test_best_double_broom_leaf_count(n):
    """Test that the best double broom has about 2 log2(n) leaves per end."""
    leaves_per_end, _, _ = search.best_double_broom(n)
    assert abs(leaves_per_end - 2 * math.log2(n)) <= 3


def test_best_unbalanced_double_broom():
    """Test that the unbalanced sweep finds the double-star at n = 9."""
    spec, aggregate, value = search.best_unbalanced_double_broom(9)
    assert spec == UnbalancedDoubleBroom(2, 3, 4)
    assert value == Fraction(779, 159) == aggregate.mean


@pytest.mark.parametrize(
    "n,expected",
    [(3, (1, 1, Fraction(2))), (5, (1, 3, Fraction(29, 9)))],
    ids=str,
)
def test_best_broom_local(n, expected):
    """Test the best broom for the local mean."""
    assert search.best_broom_local(n) == expected


@pytest.mark.parametrize("n", [100, 1000, 10**4, 10**5], ids=str)
def test_best_broom_local_leaf_count(n):
    """Test that the best local broom has about 2 log2(n) leaves."""
    _, num_leaves, _ = search.best_broom_local(n)
    assert abs(num_leaves - math.floor(2 * math.log2(n))) <= 1


@pytest.mark.parametrize("n", [2**10, 2**12, 2**14], ids=str)
def test_best_broom_local_trend(n):
    """Test the best local mean against its leading terms."""
    _, _, mean = search.best_broom_local(n)
    assert abs(float(mean) - local_max_asymptotic(n)) < 0.05


@pytest.mark.parametrize(
    "ell,positions,expected",
    [
        (10, [Fraction(1, 3), Fraction(2, 3)], [3, 7]),
        (10, [0, 0], [0, 1]),
        (10, [1, 1], [9, 10]),
        (4, [Fraction(1, 2)], [2]),
        (2, [0, 0, 0], [0, 1, 2]),
    ],
    ids=str,
)
def test_support_indices(ell, positions, expected):
    """Test rounding and collision handling of support indices."""
    assert search.support_indices(ell, positions) == expected


def test_support_indices_overflow():
    """Test that too many supports are rejected."""
    with pytest.raises(ValueError):
        search.support_indices(1, [0, 0, 0])


def test_caterpillar_spec():
    """Test the support-leaf caterpillar layout."""
    spec = search.caterpillar_spec(25, 2, 6)
    assert (spec.ell, spec.m, spec.positions) == (10, 6, (3, 7))
    assert search.support_leaf_caterpillar(25, 2, 6).n == 25
    assert spec.positions == tuple(
        search.support_indices(10, optimal_positions(2))
    )
    with pytest.raises(ValueError):
        search.caterpillar_spec(25, 2, 11)


@pytest.mark.parametrize("n", [25, 40, 100], ids=str)
def test_caterpillar_beats_double_broom(n):
    """Test that the best caterpillar beats every balanced double broom."""
    result = search.best_caterpillar(n)
    _, _, broom_value = search.best_double_broom(n)
    assert result.best_value > broom_value
    (spec,) = result.specs
    assert spec.order == n
    assert mean_subtree_order(spec.build()) == result.best_value


def test_caterpillar_rejects_small_orders():
    """Test the order requirement of the caterpillar construction."""
    with pytest.raises(ValueError):
        search.best_caterpillar(24)
