"""Tree representation, edge-list I/O, metrics and canonical forms.

Trees are stored as vertex count plus edge list over labels ``0..n-1``; the
adjacency structure is derived once at construction.  The edge-list text
format is::

    tree <n>
    <u> <v>
    ...

with ``n - 1`` edge lines, 0-based labels, ASCII, LF-terminated.
"""
import logging
from collections import deque
from functools import total_ordering
import networkx as nx


_LOGGER = logging.getLogger(__name__)
HEADER = "tree"


class Tree:
    """Undirected labeled tree on vertices ``0..n-1``.

    The constructor verifies that there are exactly ``n - 1`` edges, that
    every label is in range, that no edge repeats and that the graph is
    connected (which, with ``n - 1`` edges, also makes it acyclic).
    """

    def __init__(self, num_vertices, edges):
        """Initialize and validate.

        :param int num_vertices:  number of vertices (at least 1)
        :param list edges:  pairs of vertex labels
        """
        if int(num_vertices) != num_vertices or num_vertices < 1:
            err = f"Tree needs at least one vertex, got {num_vertices}."
            raise ValueError(err)
        num_vertices = int(num_vertices)
        edges = [(int(u), int(v)) for u, v in edges]
        if len(edges) != num_vertices - 1:
            err = (
                f"Wrong edge count: a tree on {num_vertices} vertices has "
                f"{num_vertices - 1} edges, got {len(edges)}."
            )
            raise ValueError(err)
        adjacency = [[] for _ in range(num_vertices)]
        seen = set()
        for u, v in edges:
            if not (0 <= u < num_vertices and 0 <= v < num_vertices):
                err = f"Edge {u} {v} has a label outside 0..{num_vertices-1}."
                raise ValueError(err)
            if u == v:
                err = f"Self-loop at vertex {u}."
                raise ValueError(err)
            key = (min(u, v), max(u, v))
            if key in seen:
                err = f"Duplicate edge {u} {v}."
                raise ValueError(err)
            seen.add(key)
            adjacency[u].append(v)
            adjacency[v].append(u)
        self._num_vertices = num_vertices
        self._edges = tuple(edges)
        self._adjacency = tuple(tuple(sorted(nbrs)) for nbrs in adjacency)
        graph = self.to_networkx()
        if not nx.is_tree(graph):
            components = nx.number_connected_components(graph)
            err = (
                f"Disconnected: {num_vertices} vertices fall into "
                f"{components} components."
            )
            raise ValueError(err)

    @property
    def n(self) -> int:
        """Number of vertices."""
        return self._num_vertices

    @property
    def edges(self) -> tuple:
        """Edges in construction order."""
        return self._edges

    @property
    def adjacency(self) -> tuple:
        """Sorted neighbor tuple for every vertex."""
        return self._adjacency

    def neighbors(self, vertex) -> tuple:
        """Sorted neighbors of a vertex."""
        return self._adjacency[vertex]

    def degree(self, vertex) -> int:
        """Degree of a vertex."""
        return len(self._adjacency[vertex])

    def bfs(self, root) -> tuple:
        """Breadth-first order and parent array from a root.

        :param int root:  start vertex
        :returns:  (list of vertices in visiting order, parent list with
            ``-1`` for the root and unreached vertices)
        """
        parent = [-1] * self._num_vertices
        visited = [False] * self._num_vertices
        visited[root] = True
        order = [root]
        queue = deque([root])
        while queue:
            vertex = queue.popleft()
            for nbr in self._adjacency[vertex]:
                if not visited[nbr]:
                    visited[nbr] = True
                    parent[nbr] = vertex
                    order.append(nbr)
                    queue.append(nbr)
        return order, parent

    def children(self, parent) -> list:
        """Child lists for a parent array produced by :meth:`bfs`."""
        kids = [[] for _ in range(self._num_vertices)]
        for vertex, par in enumerate(parent):
            if par >= 0:
                kids[par].append(vertex)
        return kids

    def to_networkx(self) -> nx.Graph:
        """Return a :class:`networkx.Graph` copy of this tree."""
        graph = nx.Graph()
        graph.add_nodes_from(range(self._num_vertices))
        graph.add_edges_from(self._edges)
        return graph

    def __len__(self):
        return self._num_vertices

    def __eq__(self, other):
        if not isinstance(other, Tree):
            return NotImplemented
        return self._num_vertices == other.n and self._adjacency == (
            other.adjacency
        )

    def __hash__(self):
        return hash((self._num_vertices, self._adjacency))

    def __repr__(self):
        return f"Tree(n={self._num_vertices}, edges={list(self._edges)})"

    def __str__(self):
        lines = [f"{HEADER} {self._num_vertices}"]
        lines += [f"{u} {v}" for u, v in self._edges]
        return "\n".join(lines) + "\n"


class RootedTree:
    """A :class:`Tree` together with a distinguished root vertex."""

    def __init__(self, tree, root=0):
        """Initialize.

        :param Tree tree:  underlying tree
        :param int root:  root label
        """
        if not 0 <= root < tree.n:
            err = f"Root {root} is not a vertex of a tree of order {tree.n}."
            raise ValueError(err)
        self.tree = tree
        self.root = root

    @property
    def n(self) -> int:
        """Number of vertices."""
        return self.tree.n

    def __repr__(self):
        return f"RootedTree(root={self.root}, {self.tree!r})"


@total_ordering
class CanonicalForm:
    """Level sequence of a canonical rooted embedding.

    Two trees are isomorphic if and only if their canonical forms are equal.
    Forms are totally ordered lexicographically by their level sequences.
    """

    def __init__(self, level_sequence):
        self.level_sequence = tuple(level_sequence)

    def __eq__(self, other):
        if not isinstance(other, CanonicalForm):
            return NotImplemented
        return self.level_sequence == other.level_sequence

    def __lt__(self, other):
        if not isinstance(other, CanonicalForm):
            return NotImplemented
        return self.level_sequence < other.level_sequence

    def __hash__(self):
        return hash(self.level_sequence)

    def __len__(self):
        return len(self.level_sequence)

    def __repr__(self):
        return f"CanonicalForm({list(self.level_sequence)})"

    def __str__(self):
        return " ".join(str(depth) for depth in self.level_sequence)


def parse_tree(text) -> Tree:
    """Parse the edge-list text format.

    :param str text:  ``tree <n>`` header followed by ``n - 1`` edge lines
    :returns:  validated tree
    """
    lines = [line.strip() for line in text.splitlines()]
    while lines and not lines[-1]:
        lines.pop()
    if not lines:
        raise ValueError("Empty tree description.")
    header = lines[0].split()
    if len(header) != 2 or header[0] != HEADER:
        err = f"Malformed header line 1: {lines[0]!r}"
        raise ValueError(err)
    try:
        num_vertices = int(header[1])
    except ValueError as exc:
        err = f"Malformed vertex count on line 1: {lines[0]!r}"
        raise ValueError(err) from exc
    edges = []
    for iline, line in enumerate(lines[1:], start=2):
        words = line.split()
        if len(words) != 2:
            err = f"Malformed edge on line {iline}: {line!r}"
            raise ValueError(err)
        try:
            edges.append((int(words[0]), int(words[1])))
        except ValueError as exc:
            err = f"Malformed edge on line {iline}: {line!r}"
            raise ValueError(err) from exc
    return Tree(num_vertices, edges)


def format_tree(tree) -> str:
    """Serialize a tree to the edge-list text format."""
    return str(tree)


def read_tree(path) -> Tree:
    """Read a tree file in edge-list format.

    :param path:  file path
    :returns:  validated tree
    """
    with open(path, "rt", encoding="ascii") as file_:
        text = file_.read()
    try:
        return parse_tree(text)
    except ValueError as exc:
        err = f"Unable to parse tree file {path}."
        raise ValueError(err) from exc


def write_tree(tree, path):
    """Write a tree file in edge-list format."""
    with open(path, "wt", encoding="ascii", newline="\n") as file_:
        file_.write(format_tree(tree))


def tree_from_level_sequence(levels) -> Tree:
    """Build the tree encoded by a preorder level sequence.

    Vertex ``i`` is the ``i``-th entry; its parent is the closest earlier
    vertex one level up.

    :param list levels:  depths, starting with 0 for the root
    :returns:  tree labeled in preorder
    """
    levels = list(levels)
    if not levels or levels[0] != 0:
        err = f"Level sequence must start at depth 0: {levels}"
        raise ValueError(err)
    edges = []
    stack = [0]
    for vertex in range(1, len(levels)):
        depth = levels[vertex]
        if not 1 <= depth <= len(stack):
            err = f"Invalid jump to depth {depth} at position {vertex}."
            raise ValueError(err)
        del stack[depth:]
        edges.append((stack[-1], vertex))
        stack.append(vertex)
    return Tree(len(levels), edges)


def distances_from(tree, source) -> list:
    """Breadth-first distances from a vertex."""
    dist = [-1] * tree.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        vertex = queue.popleft()
        for nbr in tree.neighbors(vertex):
            if dist[nbr] < 0:
                dist[nbr] = dist[vertex] + 1
                queue.append(nbr)
    return dist


def leaves(tree) -> list:
    """Vertices of degree at most one, in label order."""
    return [v for v in range(tree.n) if tree.degree(v) <= 1]


def is_caterpillar(tree) -> bool:
    """Check whether removing all leaves leaves a path."""
    if tree.n <= 2:
        return True
    internal = [v for v in range(tree.n) if tree.degree(v) > 1]
    internal_set = set(internal)
    for vertex in internal:
        inner = sum(1 for nbr in tree.neighbors(vertex) if nbr in internal_set)
        if inner > 2:
            return False
    return True


def diameter(tree) -> tuple:
    """Longest path of a tree.

    Ties are broken toward the lexicographically smallest vertex sequence.

    :param Tree tree:  input tree
    :returns:  (number of edges, list of vertices along the path)
    """
    if tree.n == 1:
        return 0, [0]
    first = distances_from(tree, 0)
    end_a = max(range(tree.n), key=lambda v: (first[v], -v))
    dist_a = distances_from(tree, end_a)
    end_b = max(range(tree.n), key=lambda v: (dist_a[v], -v))
    dist_b = distances_from(tree, end_b)
    length = dist_a[end_b]
    # In a tree every eccentricity is attained at a diameter end.
    start = min(
        v for v in range(tree.n) if max(dist_a[v], dist_b[v]) == length
    )
    order, parent = tree.bfs(start)
    kids = tree.children(parent)
    depth = distances_from(tree, start)
    reach = list(depth)
    for vertex in reversed(order):
        par = parent[vertex]
        if par >= 0 and reach[vertex] > reach[par]:
            reach[par] = reach[vertex]
    path = [start]
    vertex = start
    while depth[vertex] < length:
        vertex = min(c for c in kids[vertex] if reach[c] == length)
        path.append(vertex)
    return length, path


def subtree_sizes(tree, root=0) -> tuple:
    """Sizes of all rooted subtrees.

    :returns:  (size list, parent list, BFS order)
    """
    order, parent = tree.bfs(root)
    size = [1] * tree.n
    for vertex in reversed(order):
        if parent[vertex] >= 0:
            size[parent[vertex]] += size[vertex]
    return size, parent, order


def centroid(tree) -> list:
    """Vertices whose removal leaves no component larger than n/2.

    :returns:  sorted list with one or two vertices
    """
    size, parent, _ = subtree_sizes(tree)
    result = []
    for vertex in range(tree.n):
        largest = tree.n - size[vertex]
        for nbr in tree.neighbors(vertex):
            if nbr != parent[vertex]:
                largest = max(largest, size[nbr])
        if 2 * largest <= tree.n:
            result.append(vertex)
    return result


def steiner_vertices(tree, required) -> set:
    """Vertices of the smallest subtree containing every required vertex.

    :param Tree tree:  input tree
    :param required:  iterable of vertex labels
    :returns:  set of vertices (empty when nothing is required)
    """
    required = set(required)
    if not required:
        return set()
    for vertex in required:
        if not 0 <= vertex < tree.n:
            err = f"Vertex {vertex} is not in a tree of order {tree.n}."
            raise ValueError(err)
    degree = [tree.degree(v) for v in range(tree.n)]
    alive = [True] * tree.n
    queue = deque(
        v for v in range(tree.n) if degree[v] <= 1 and v not in required
    )
    remaining = tree.n
    while queue and remaining > 1:
        vertex = queue.popleft()
        if not alive[vertex]:
            continue
        alive[vertex] = False
        remaining -= 1
        for nbr in tree.neighbors(vertex):
            if alive[nbr]:
                degree[nbr] -= 1
                if degree[nbr] == 1 and nbr not in required:
                    queue.append(nbr)
    return {v for v in range(tree.n) if alive[v]}


def _level_sequence(tree, root) -> tuple:
    """Canonical level sequence of the tree rooted at ``root``.

    Children are ordered by decreasing canonical subsequence.
    """
    order, parent = tree.bfs(root)
    kids = tree.children(parent)
    codes = [None] * tree.n
    for vertex in reversed(order):
        branches = sorted((codes[c] for c in kids[vertex]), reverse=True)
        code = [0]
        for branch in branches:
            code.extend(depth + 1 for depth in branch)
        codes[vertex] = tuple(code)
        for child in kids[vertex]:
            codes[child] = None
    return codes[root]


def canonical_form(tree) -> CanonicalForm:
    """Isomorphism-invariant form rooted at a centroid vertex.

    With two centroid vertices the smaller of the two sequences is used.
    """
    return CanonicalForm(
        min(_level_sequence(tree, root) for root in centroid(tree))
    )


def canonical_tree(form) -> Tree:
    """Rebuild a tree, labeled in preorder, from a canonical form."""
    if isinstance(form, CanonicalForm):
        form = form.level_sequence
    return tree_from_level_sequence(form)
