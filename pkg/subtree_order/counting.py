"""Exact subtree counting.

All counts are Python integers, so nothing overflows.  Rooted quantities
propagate as integer pairs ``(s, t)``: the number of subtrees containing
the root and their total order.  A child ``c`` enters its parent's product
as the branch pair ``(1 + s_c, t_c)`` (skip the branch, or take any subtree
rooted at ``c``), and branch pairs combine as

    (w1, u1) * (w2, u2) = (w1 * w2, u1 * w2 + u2 * w1)

with identity ``(1, 0)``.  A vertex whose branch product is ``(W, U)`` has
``s = W`` and ``t = W + U``.
"""
import logging
from fractions import Fraction
import pandas as pd
from .general import popcount
from .tree import RootedTree, Tree, leaves, steiner_vertices


_LOGGER = logging.getLogger(__name__)
ORACLE_CAP = 20
CENTRAL_PART_EXPONENT = Fraction(1, 4)
IDENTITY = (1, 0)


class SubtreeAggregate:
    """Number of subtrees answering a counting question and their total
    order."""

    def __init__(self, count, total_order):
        """Initialize.

        :param int count:  number of subtrees
        :param int total_order:  sum of their vertex counts
        """
        self.count = count
        self.total_order = total_order

    @property
    def mean(self) -> Fraction:
        """Mean order ``total_order / count``."""
        return Fraction(self.total_order, self.count)

    def __iter__(self):
        yield self.count
        yield self.total_order

    def __eq__(self, other):
        if isinstance(other, SubtreeAggregate):
            other = tuple(other)
        if isinstance(other, tuple):
            return tuple(self) == other
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self))

    def __repr__(self):
        return f"SubtreeAggregate({self.count}, {self.total_order})"

    def __str__(self):
        return f"count={self.count} total={self.total_order}"


def combine(left, right) -> tuple:
    """Product of two branch pairs."""
    return (left[0] * right[0], left[1] * right[0] + right[1] * left[0])


def branch_pair(count, total_order) -> tuple:
    """Branch pair of a child subtree with rooted counts ``(s, t)``."""
    return (1 + count, total_order)


def _finish(product) -> tuple:
    return product[0], product[0] + product[1]


def _down_pass(tree, root) -> tuple:
    """Rooted ``(s, t)`` for every vertex of ``tree`` rooted at ``root``.

    :returns:  (list of (s, t) pairs, parent list, BFS order)
    """
    order, parent = tree.bfs(root)
    down = [None] * tree.n
    for vertex in reversed(order):
        count, total = 1, 1
        for nbr in tree.neighbors(vertex):
            if nbr == parent[vertex]:
                continue
            child_count, child_total = down[nbr]
            # fold one branch: (s, t) -> (s (1 + sc), t (1 + sc) + s tc)
            total = total * (1 + child_count) + count * child_total
            count *= 1 + child_count
        down[vertex] = (count, total)
    return down, parent, order


def rooted_aggregates(tree, root=0) -> list:
    """Rooted counts of every vertex's subtree for a fixed root.

    :param Tree tree:  input tree
    :param int root:  root label
    :returns:  list of :class:`SubtreeAggregate`, indexed by vertex
    """
    down, _, _ = _down_pass(tree, root)
    return [SubtreeAggregate(s, t) for s, t in down]


def _as_rooted(rooted) -> RootedTree:
    if isinstance(rooted, RootedTree):
        return rooted
    if isinstance(rooted, Tree):
        return RootedTree(rooted, 0)
    err = f"Expected a RootedTree, got {type(rooted).__name__}."
    raise ValueError(err)


def rooted_counts(rooted) -> SubtreeAggregate:
    """Subtrees containing the root and their total order.

    :param RootedTree rooted:  rooted tree (a bare :class:`Tree` is rooted
        at vertex 0)
    :returns:  ``(s, t)`` aggregate
    """
    rooted = _as_rooted(rooted)
    down, _, _ = _down_pass(rooted.tree, rooted.root)
    return SubtreeAggregate(*down[rooted.root])


def global_counts(tree) -> SubtreeAggregate:
    """Total number of subtrees and their total order.

    Both totals come from one down pass rooted at vertex 0: every subtree
    is counted once, at its vertex closest to vertex 0.  The total order
    therefore equals the sum of the subtree counts of
    :func:`per_vertex_counts` without running the rerooting pass.
    """
    down, _, _ = _down_pass(tree, 0)
    sigma = sum(s for s, _ in down)
    tau = sum(t for _, t in down)
    return SubtreeAggregate(sigma, tau)


def per_vertex_counts(tree) -> list:
    """Subtrees containing each vertex, and their total order.

    One down pass and one rerooting pass; the parent side of every child is
    assembled from prefix and suffix products of the sibling branch pairs,
    so no division is needed.

    :param Tree tree:  input tree
    :returns:  list of :class:`SubtreeAggregate` ``(sigma_v, t_v)``
    """
    down, parent, order = _down_pass(tree, 0)
    up = [None] * tree.n
    result = [None] * tree.n
    for vertex in order:
        kids = [nbr for nbr in tree.neighbors(vertex) if nbr != parent[vertex]]
        pairs = [branch_pair(*down[child]) for child in kids]
        if up[vertex] is not None:
            pairs.append(branch_pair(*up[vertex]))
        prefix = [IDENTITY]
        for pair in pairs:
            prefix.append(combine(prefix[-1], pair))
        result[vertex] = SubtreeAggregate(*_finish(prefix[-1]))
        suffix = IDENTITY
        for index in range(len(pairs) - 1, -1, -1):
            if index < len(kids):
                outside = combine(prefix[index], suffix)
                up[kids[index]] = _finish(outside)
            suffix = combine(pairs[index], suffix)
    return result


def mean_subtree_order(tree) -> Fraction:
    """Mean order of all subtrees."""
    return global_counts(tree).mean


def density(tree) -> Fraction:
    """Mean subtree order divided by the order of the tree."""
    return mean_subtree_order(tree) / tree.n


def local_mean(tree, vertex) -> Fraction:
    """Mean order of the subtrees containing a vertex."""
    if not 0 <= vertex < tree.n:
        err = f"Vertex {vertex} is not in a tree of order {tree.n}."
        raise ValueError(err)
    return rooted_counts(RootedTree(tree, vertex)).mean


def defect(rooted) -> Fraction:
    """Expected number of vertices missed by a random root-containing
    subtree, ``n - t/s``."""
    rooted = _as_rooted(rooted)
    return rooted.n - rooted_counts(rooted).mean


def _requested_set(tree, vertices) -> set:
    vertices = list(vertices)
    requested = set(vertices)
    if len(requested) != len(vertices):
        _LOGGER.warning(f"Ignoring duplicate vertices in {vertices}.")
    for vertex in requested:
        if not 0 <= vertex < tree.n:
            err = f"Vertex {vertex} is not in a tree of order {tree.n}."
            raise ValueError(err)
    return requested


def set_mean(tree, vertices) -> Fraction:
    """Mean order of the subtrees containing every vertex of a set.

    The Steiner tree of the set is contracted to one vertex, whose branches
    are the pieces hanging off the Steiner tree; rooted counting at the
    contracted vertex plus the ``|Steiner| - 1`` contracted vertices gives
    the mean in the original tree.

    :param Tree tree:  input tree
    :param vertices:  required vertices; empty gives the global mean
    :returns:  exact mean
    """
    requested = _requested_set(tree, vertices)
    if not requested:
        return mean_subtree_order(tree)
    steiner = steiner_vertices(tree, requested)
    down, parent, _ = _down_pass(tree, min(requested))
    product = IDENTITY
    for vertex in sorted(steiner):
        for nbr in tree.neighbors(vertex):
            if nbr in steiner or nbr == parent[vertex]:
                continue
            product = combine(product, branch_pair(*down[nbr]))
    count, total = _finish(product)
    return len(steiner) - 1 + Fraction(total, count)


def _exact_exponent(exponent) -> Fraction:
    if isinstance(exponent, float):
        exponent = Fraction(exponent).limit_denominator(10**4)
    exponent = Fraction(exponent)
    if not 0 < exponent < Fraction(1, 2):
        err = f"Central part exponent must lie in (0, 1/2), got {exponent}."
        raise ValueError(err)
    return exponent


def central_part(tree, exponent=CENTRAL_PART_EXPONENT) -> list:
    """Vertices in at least ``sigma / (1 + n**-exponent)`` subtrees.

    The threshold is irrational in general; with ``exponent = p/q`` the
    test ``sigma_v * (1 + n**(-p/q)) >= sigma`` is decided exactly as
    ``sigma_v**q >= (sigma - sigma_v)**q * n**p``.

    :param Tree tree:  input tree
    :param exponent:  rational (or float) exponent in (0, 1/2)
    :returns:  sorted list of vertices
    """
    exponent = _exact_exponent(exponent)
    power, root = exponent.numerator, exponent.denominator
    sigma = global_counts(tree).count
    scale = tree.n**power
    result = []
    for vertex, aggregate in enumerate(per_vertex_counts(tree)):
        sigma_v = aggregate.count
        if sigma_v >= sigma:
            result.append(vertex)
        elif sigma_v**root >= (sigma - sigma_v) ** root * scale:
            result.append(vertex)
    return result


def subtree_core(tree) -> list:
    """Vertices contained in the greatest number of subtrees.

    :returns:  sorted list with one or two vertices
    """
    counts = [aggregate.count for aggregate in per_vertex_counts(tree)]
    best = max(counts)
    core = [vertex for vertex, count in enumerate(counts) if count == best]
    if len(core) > 2:
        err = f"Subtree core with {len(core)} vertices: {core}"
        raise RuntimeError(err)
    return core


def brute_force_counts(tree, required=None, cap=ORACLE_CAP):
    """Count subtrees by enumerating connected vertex sets.

    Each connected set is generated once, from its smallest vertex (the
    anchor), by deciding frontier vertices larger than the anchor in
    increasing order: include (the frontier grows by its neighbors) or
    exclude for good.

    :param Tree tree:  input tree
    :param required:  vertices every counted subtree must contain
    :param int cap:  largest accepted order
    :returns:  :class:`SubtreeAggregate`
    """
    if tree.n > cap:
        err = f"Tree order {tree.n} exceeds the oracle cap {cap}."
        raise ValueError(err)
    required = _requested_set(tree, required or ())
    required_mask = sum(1 << vertex for vertex in required)
    neighbor_mask = [
        sum(1 << nbr for nbr in tree.neighbors(vertex))
        for vertex in range(tree.n)
    ]
    count = total = 0
    for anchor in range(tree.n):
        if required and anchor > min(required):
            break
        allowed = ~((1 << (anchor + 1)) - 1)
        stack = [(1 << anchor, neighbor_mask[anchor] & allowed, 0)]
        while stack:
            chosen, frontier, excluded = stack.pop()
            if not frontier:
                if chosen & required_mask == required_mask:
                    count += 1
                    total += popcount(chosen)
                continue
            low_bit = frontier & -frontier
            vertex = low_bit.bit_length() - 1
            rest = frontier ^ low_bit
            stack.append((chosen, rest, excluded | low_bit))
            grown = chosen | low_bit
            stack.append(
                (
                    grown,
                    (rest | (neighbor_mask[vertex] & allowed))
                    & ~grown
                    & ~excluded,
                    excluded,
                )
            )
    return SubtreeAggregate(count, total)


def leaf_bound_holds(tree) -> bool:
    """Check ``mu <= n - L/2`` exactly, with ``L`` the number of leaves.

    Trees with at most two vertices are exempt (every vertex is a leaf).
    """
    if tree.n <= 2:
        return True
    aggregate = global_counts(tree)
    num_leaves = len(leaves(tree))
    return 2 * aggregate.total_order <= (2 * tree.n - num_leaves) * (
        aggregate.count
    )


def branch_trees(tree, vertex) -> list:
    """Augmented branches at a vertex.

    Each component of ``tree - vertex`` together with ``vertex`` and the
    connecting edge, relabeled so that ``vertex`` is 0 and the rest follow
    in breadth-first order.

    :returns:  list of :class:`RootedTree` rooted at 0, one per neighbor
    """
    _, parent = tree.bfs(vertex)
    branches = []
    for start in tree.neighbors(vertex):
        labels = {vertex: 0, start: 1}
        edges = [(0, 1)]
        queue = [start]
        for current in queue:
            for nbr in tree.neighbors(current):
                if nbr == parent[current]:
                    continue
                labels[nbr] = len(labels)
                edges.append((labels[current], labels[nbr]))
                queue.append(nbr)
        branches.append(RootedTree(Tree(len(labels), edges), 0))
    return branches


def per_vertex_table(tree, exponent=CENTRAL_PART_EXPONENT) -> pd.DataFrame:
    """Per-vertex counts and flags as a table.

    :returns:  DataFrame with columns ``vertex``, ``sigma_v``, ``t_v``,
        ``local_mean``, ``in_central_part``, ``in_core``
    """
    aggregates = per_vertex_counts(tree)
    central = set(central_part(tree, exponent))
    core = set(subtree_core(tree))
    rows = [
        {
            "vertex": vertex,
            "sigma_v": aggregate.count,
            "t_v": aggregate.total_order,
            "local_mean": aggregate.mean,
            "in_central_part": vertex in central,
            "in_core": vertex in core,
        }
        for vertex, aggregate in enumerate(aggregates)
    ]
    return pd.DataFrame(rows)
