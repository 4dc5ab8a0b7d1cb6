"""Exhaustive generation of free trees.

Trees come from :func:`networkx.nonisomorphic_trees`, one per isomorphism
class, and are streamed as level sequences (preorder depths of a rooted
embedding at a center).  networkx labels the vertices of each tree in that
preorder, so every vertex other than 0 has exactly one smaller neighbor,
its parent.
"""
import logging
from itertools import islice
import networkx as nx
from .tree import tree_from_level_sequence


_LOGGER = logging.getLogger(__name__)
FREE_TREE_CAP = 24


def _check_order(n, cap):
    if int(n) != n or n < 1:
        err = f"Tree order must be a positive integer, got {n}."
        raise ValueError(err)
    if n > cap:
        err = f"Tree order {n} exceeds the generation cap {cap}."
        raise ValueError(err)


def graph_levels(graph) -> tuple:
    """Level sequence of a preorder-labeled tree graph.

    :param networkx.Graph graph:  tree on ``0..n-1`` labeled in preorder
    :returns:  depth tuple starting with 0
    """
    levels = [0] * graph.number_of_nodes()
    for vertex in range(1, len(levels)):
        parent = min(graph.neighbors(vertex))
        if parent >= vertex:
            err = f"Vertex {vertex} has no smaller neighbor."
            raise ValueError(err)
        levels[vertex] = levels[parent] + 1
    return tuple(levels)


def _level_sequences(n):
    if n == 1:
        yield (0,)
        return
    for graph in nx.nonisomorphic_trees(n):
        yield graph_levels(graph)


def generate_level_sequences(n, start=0, stop=None, cap=FREE_TREE_CAP):
    """Stream one level sequence per free tree of order ``n``.

    The stream order is fixed, so ``start``/``stop`` ordinals select
    independent contiguous sub-ranges.

    :param int n:  tree order
    :param int start:  ordinal of the first sequence to yield
    :param int stop:  ordinal past the last sequence, None for all
    :param int cap:  largest accepted order
    :returns:  generator of depth tuples
    """
    _check_order(n, cap)
    yield from islice(_level_sequences(n), start, stop)


def generate_free_trees(n, start=0, stop=None, cap=FREE_TREE_CAP):
    """Stream one :class:`~subtree_order.tree.Tree` per isomorphism class.

    Vertices are labeled in preorder of the level sequence.

    :param int n:  tree order
    :param int start:  ordinal of the first tree to yield
    :param int stop:  ordinal past the last tree, None for all
    :param int cap:  largest accepted order
    :returns:  generator of trees
    """
    count = 0
    for levels in generate_level_sequences(n, start, stop, cap):
        count += 1
        yield tree_from_level_sequence(levels)
    _LOGGER.debug(f"Generated {count} free trees of order {n}.")


def count_free_trees(n, cap=FREE_TREE_CAP) -> int:
    """Number of free trees of order ``n`` by explicit enumeration."""
    return sum(1 for _ in generate_level_sequences(n, cap=cap))
