"""Test exact subtree counting."""
import logging
from fractions import Fraction
import pytest
from testfixtures import LogCapture
from common import landmark_spec, random_trees, small_trees
from subtree_order import counting
from subtree_order.families import Path, Star
from subtree_order.tree import RootedTree, Tree


_LOGGER = logging.getLogger(__name__)
STAR9 = Star(9).build()
PATH4 = Path(4).build()


@pytest.mark.parametrize(
    "name,mean,density",
    [
        ("star9", Fraction(161, 33), Fraction(161, 297)),
        ("double_star9", Fraction(779, 159), Fraction(779, 1431)),
    ],
    ids=str,
)
def test_nine_vertex_landmarks(name, mean, density):
    """Test the star and double-star means of order 9."""
    tree = landmark_spec(name).build()
    assert counting.mean_subtree_order(tree) == mean
    assert counting.density(tree) == density


@pytest.mark.parametrize("n", range(1, 9), ids=str)
def test_oracle(n):
    """Test global, rooted and per-vertex counts against enumeration."""
    for tree in small_trees(n, n):
        assert counting.global_counts(tree) == counting.brute_force_counts(
            tree
        )
        per_vertex = counting.per_vertex_counts(tree)
        for vertex in range(n):
            expected = counting.brute_force_counts(tree, {vertex})
            assert per_vertex[vertex] == expected
            assert counting.rooted_counts(RootedTree(tree, vertex)) == (
                expected
            )


@pytest.mark.slow
def test_random_tree_oracle():
    """Test counts of random labelled trees of order 11 to 16."""
    for tree in random_trees(200, 11, 16, seed=2024):
        assert counting.global_counts(tree) == counting.brute_force_counts(
            tree
        )
        per_vertex = counting.per_vertex_counts(tree)
        for vertex in range(tree.n):
            expected = counting.brute_force_counts(tree, {vertex})
            assert per_vertex[vertex] == expected


@pytest.mark.parametrize("n", range(1, 10), ids=str)
def test_vertex_sum(n):
    """Test that per-vertex counts sum to the total order."""
    for tree in small_trees(n, n):
        per_vertex = counting.per_vertex_counts(tree)
        total = counting.global_counts(tree).total_order
        assert sum(aggregate.count for aggregate in per_vertex) == total


def test_rooted_aggregates():
    """Test the down-pass values of every vertex."""
    aggregates = counting.rooted_aggregates(PATH4, 0)
    assert [tuple(a) for a in aggregates] == [(4, 10), (3, 6), (2, 3), (1, 1)]


def test_rooted_input():
    """Test that bare trees are rooted at 0 and other input is rejected."""
    assert counting.rooted_counts(STAR9) == (256, 1280)
    with pytest.raises(ValueError):
        counting.rooted_counts("tree 1")


def test_local_means():
    """Test local means and defects on the star."""
    assert counting.local_mean(STAR9, 0) == 5
    assert counting.local_mean(STAR9, 1) == Fraction(705, 129)
    assert counting.defect(RootedTree(STAR9, 0)) == 4
    assert counting.defect(Path(2).build()) == Fraction(1, 2)
    with pytest.raises(ValueError):
        counting.local_mean(STAR9, 9)


@pytest.mark.parametrize("n", range(2, 9), ids=str)
def test_local_exceeds_global(n):
    """Test that every local mean exceeds the global mean."""
    for tree in small_trees(n, n):
        mean = counting.mean_subtree_order(tree)
        for vertex in range(n):
            assert counting.local_mean(tree, vertex) > mean


def test_set_mean():
    """Test means over subtrees containing a vertex set."""
    assert counting.set_mean(STAR9, []) == Fraction(161, 33)
    assert counting.set_mean(STAR9, [3]) == Fraction(705, 129)
    assert counting.set_mean(STAR9, [1, 2]) == 6
    assert counting.set_mean(Path(3).build(), [0, 2]) == 3
    assert counting.brute_force_counts(STAR9, {1, 2}) == (64, 384)
    with pytest.raises(ValueError):
        counting.set_mean(STAR9, [0, 9])


def test_set_mean_duplicates():
    """Test that duplicate vertices are ignored with a warning."""
    with LogCapture() as capture:
        value = counting.set_mean(STAR9, [1, 2, 1])
    assert value == 6
    messages = [record.getMessage() for record in capture.records]
    assert any("duplicate" in message for message in messages)
    assert any(record.levelname == "WARNING" for record in capture.records)


@pytest.mark.parametrize("n", range(2, 8), ids=str)
def test_set_mean_oracle(n):
    """Test set means against enumeration for every pair of vertices."""
    for tree in small_trees(n, n):
        for first in range(n):
            for second in range(first, n):
                required = {first, second}
                expected = counting.brute_force_counts(tree, required).mean
                assert counting.set_mean(tree, required) == expected


@pytest.mark.parametrize("exponent", [Fraction(1, 4), 0.25], ids=str)
def test_central_part(exponent):
    """Test the central part of the star."""
    assert counting.central_part(STAR9, exponent) == [0]


@pytest.mark.parametrize("exponent", [0, Fraction(1, 2), 0.7], ids=str)
def test_central_part_exponent(exponent):
    """Test exponent validation."""
    with pytest.raises(ValueError):
        counting.central_part(STAR9, exponent)


def test_subtree_core():
    """Test subtree cores."""
    assert counting.subtree_core(STAR9) == [0]
    assert counting.subtree_core(PATH4) == [1, 2]
    assert counting.subtree_core(Tree(1, [])) == [0]


def test_leaf_bound():
    """Test the leaf bound on small cases."""
    assert counting.leaf_bound_holds(STAR9)
    assert counting.leaf_bound_holds(Path(2).build())
    for tree in small_trees(8):
        assert counting.leaf_bound_holds(tree)


def test_branch_trees():
    """Test augmented branches."""
    branches = counting.branch_trees(STAR9, 0)
    assert len(branches) == 8
    assert all(branch.n == 2 and branch.root == 0 for branch in branches)
    (whole,) = counting.branch_trees(STAR9, 4)
    assert whole.n == 9
    assert counting.rooted_counts(whole) == counting.rooted_counts(
        RootedTree(STAR9, 4)
    )


def test_oracle_cap():
    """Test the enumeration cap."""
    with pytest.raises(ValueError):
        counting.brute_force_counts(Path(21).build())


def test_per_vertex_table():
    """Test the per-vertex table."""
    table = counting.per_vertex_table(STAR9)
    assert list(table.columns) == [
        "vertex",
        "sigma_v",
        "t_v",
        "local_mean",
        "in_central_part",
        "in_core",
    ]
    assert len(table) == 9
    assert table.loc[0, "sigma_v"] == 256
    assert table["in_core"].sum() == 1
    assert table.loc[0, "in_central_part"]
