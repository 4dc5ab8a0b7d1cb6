"""Functions used by all tests."""
import itertools
import logging
import random
from pathlib import Path
import networkx as nx
import pandas as pd
from subtree_order.families import FAMILIES
from subtree_order.generation import generate_free_trees
from subtree_order.tree import Tree


_LOGGER = logging.getLogger(__name__)
DATA_DIR = Path("tests/data")
FREE_TREE_COUNTS = pd.read_csv(
    DATA_DIR / Path("free_tree_counts.csv"), index_col="n"
)
LANDMARKS = pd.read_csv(DATA_DIR / Path("landmarks.csv"), index_col="name")


def landmark_spec(name):
    """Family spec of a landmark tree.

    :param str name:  row name in ``landmarks.csv``
    :returns:  family spec
    """
    row = LANDMARKS.loc[name, :]
    params = {}
    for item in row["params"].split():
        key, value = item.split("=")
        params[key] = int(value)
    return FAMILIES[row["family"]](**params)


def small_trees(n_max, n_min=1):
    """Every free tree with ``n_min <= n <= n_max``."""
    for n in range(n_min, n_max + 1):
        yield from generate_free_trees(n)


def labelled_trees(n):
    """Every labelled tree on ``n >= 3`` vertices, from Prufer sequences."""
    for sequence in itertools.product(range(n), repeat=n - 2):
        graph = nx.from_prufer_sequence(list(sequence))
        yield Tree(n, list(graph.edges()))


def relabel(tree, seed):
    """Random relabeling of a tree.

    :param Tree tree:  tree to relabel
    :param int seed:  random seed
    :returns:  isomorphic tree
    """
    permutation = list(range(tree.n))
    random.Random(seed).shuffle(permutation)
    edges = [(permutation[u], permutation[v]) for u, v in tree.edges]
    return Tree(tree.n, edges)


def random_trees(count, n_min, n_max, seed=0):
    """Uniform random labelled trees from random Prufer sequences.

    :param int count:  number of trees
    :param int n_min:  smallest order, at least 3
    :param int n_max:  largest order
    :param int seed:  random seed
    :returns:  generator of trees
    """
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(n_min, n_max)
        sequence = [rng.randrange(n) for _ in range(n - 2)]
        graph = nx.from_prufer_sequence(sequence)
        yield Tree(n, list(graph.edges()))
