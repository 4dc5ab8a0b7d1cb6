"""Test exhaustive free-tree generation."""
import logging
from itertools import islice
import networkx as nx
import pytest
from common import FREE_TREE_COUNTS
from subtree_order.generation import (
    count_free_trees,
    generate_free_trees,
    generate_level_sequences,
    graph_levels,
)
from subtree_order.tree import canonical_form, tree_from_level_sequence


_LOGGER = logging.getLogger(__name__)


@pytest.mark.parametrize("n", FREE_TREE_COUNTS.index, ids=str)
def test_counts(n):
    """Test the number of generated trees."""
    assert count_free_trees(n) == FREE_TREE_COUNTS.loc[n, "count"]


@pytest.mark.parametrize("n", range(2, 11), ids=str)
def test_counts_networkx(n):
    """Test counts against networkx."""
    assert count_free_trees(n) == nx.number_of_nonisomorphic_trees(n)


@pytest.mark.parametrize("n", range(1, 11), ids=str)
def test_pairwise_nonisomorphic(n):
    """Test that every tree is valid and no two are isomorphic."""
    forms = set()
    for tree in generate_free_trees(n):
        assert tree.n == n
        assert len(tree.edges) == n - 1
        forms.add(canonical_form(tree))
    assert len(forms) == FREE_TREE_COUNTS.loc[n, "count"]


@pytest.mark.parametrize("n", [1, 2, 3], ids=str)
def test_tiny_orders(n):
    """Test the single tree of tiny orders."""
    trees = list(generate_free_trees(n))
    assert len(trees) == 1
    assert nx.diameter(trees[0].to_networkx()) == n - 1


def test_sub_ranges():
    """Test that start/stop ordinals select contiguous pieces."""
    full = list(generate_level_sequences(11))
    pieces = []
    for start in range(0, len(full), 40):
        pieces += list(generate_level_sequences(11, start, start + 40))
    assert pieces == full
    assert list(islice(generate_level_sequences(11), 5)) == full[:5]


@pytest.mark.parametrize("n", [0, -3, 25], ids=str)
def test_rejects_orders(n):
    """Test order validation, including the cap."""
    with pytest.raises(ValueError):
        list(generate_level_sequences(n))


def test_custom_cap():
    """Test that a lower cap is honored."""
    with pytest.raises(ValueError):
        count_free_trees(9, cap=8)


@pytest.mark.parametrize(
    "graph,expected",
    [
        (nx.path_graph(3), (0, 1, 2)),
        (nx.star_graph(3), (0, 1, 1, 1)),
        (nx.Graph([(0, 1), (1, 2), (0, 3), (3, 4)]), (0, 1, 2, 1, 2)),
    ],
    ids=str,
)
def test_graph_levels(graph, expected):
    """Test depths read from preorder labels."""
    assert graph_levels(graph) == expected


def test_graph_levels_rejects_other_labels():
    """Test that a vertex without a smaller neighbor is rejected."""
    with pytest.raises(ValueError):
        graph_levels(nx.Graph([(0, 2), (2, 1)]))


@pytest.mark.parametrize("n", range(2, 9), ids=str)
def test_graph_levels_rebuild(n):
    """Test that level sequences rebuild the networkx trees."""
    for graph in nx.nonisomorphic_trees(n):
        tree = tree_from_level_sequence(graph_levels(graph))
        assert nx.is_isomorphic(tree.to_networkx(), graph)
