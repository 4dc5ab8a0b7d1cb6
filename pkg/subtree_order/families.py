"""Parameterized tree families.

Every family fixes its vertex labeling (stem first, then leaves) so that
built trees are byte-reproducible.
"""
import logging
import math
from .tree import Tree


_LOGGER = logging.getLogger(__name__)


class FamilySpec:
    """Base class for all tree families."""

    #: Name used in text records and on the command line.
    tag = None

    @property
    def order(self) -> int:
        """Number of vertices of the built tree."""
        raise NotImplementedError("FamilySpec does not implement order.")

    def validate(self):
        """Raise :exc:`ValueError` if the parameters are inconsistent."""
        raise NotImplementedError("FamilySpec does not implement validate.")

    def edges(self) -> list:
        """Edge list in the family's documented labeling."""
        raise NotImplementedError("FamilySpec does not implement edges.")

    def build(self) -> Tree:
        """Validate the parameters and build the tree."""
        self.validate()
        return Tree(self.order, self.edges())

    def parameters(self) -> dict:
        """Parameters by name, in declaration order."""
        return dict(vars(self))

    def __eq__(self, other):
        if type(self) is not type(other):
            return NotImplemented
        return self.parameters() == other.parameters()

    def __hash__(self):
        return hash((self.tag, repr(self.parameters())))

    def __repr__(self):
        args = ", ".join(f"{k}={v!r}" for k, v in self.parameters().items())
        return f"{type(self).__name__}({args})"

    def __str__(self):
        args = " ".join(f"{k}={v}" for k, v in self.parameters().items())
        return f"{self.tag} {args}"


def _check_integer(name, value, minimum):
    if int(value) != value or value < minimum:
        err = f"{name} must be an integer >= {minimum}, got {value}."
        raise ValueError(err)


def _path_edges(first, last) -> list:
    return [(vertex, vertex + 1) for vertex in range(first, last)]


class Path(FamilySpec):
    """Path ``0 - 1 - ... - (n-1)``."""

    tag = "path"

    def __init__(self, n):
        self.n = n

    @property
    def order(self) -> int:
        return self.n

    def validate(self):
        _check_integer("n", self.n, 1)

    def edges(self) -> list:
        return _path_edges(0, self.n - 1)


class Star(FamilySpec):
    """Star with center 0 and leaves ``1..n-1``."""

    tag = "star"

    def __init__(self, n):
        self.n = n

    @property
    def order(self) -> int:
        return self.n

    def validate(self):
        _check_integer("n", self.n, 1)

    def edges(self) -> list:
        return [(0, leaf) for leaf in range(1, self.n)]


class Broom(FamilySpec):
    """Broom: a handle with leaves attached at one end.

    +----------------------+----------------------------------------+
    | LABELS               | ROLE                                   |
    +======================+========================================+
    | 0                    | free handle end (root of the broom)    |
    +----------------------+----------------------------------------+
    | 0..a                 | handle path with ``a`` edges           |
    +----------------------+----------------------------------------+
    | a+1..a+b             | leaves attached to vertex ``a``        |
    +----------------------+----------------------------------------+
    """

    tag = "broom"

    def __init__(self, a, b):
        """Initialize.

        :param int a:  handle length (edges), at least 0
        :param int b:  number of leaves, at least 1
        """
        self.a = a
        self.b = b

    @property
    def order(self) -> int:
        return self.a + self.b + 1

    def validate(self):
        _check_integer("a", self.a, 0)
        _check_integer("b", self.b, 1)

    def edges(self) -> list:
        edges = _path_edges(0, self.a)
        edges += [(self.a, self.a + i) for i in range(1, self.b + 1)]
        return edges


class UnbalancedDoubleBroom(FamilySpec):
    """Path with possibly different leaf counts at its two ends.

    The stem is ``0..p-1``; left leaves ``p..p+L-1`` hang from vertex 0 and
    right leaves ``p+L..p+L+R-1`` from vertex ``p-1``.  ``(2, 3, 4)`` is the
    9-vertex double-star.
    """

    tag = "unbalanced-double-broom"

    def __init__(self, path_vertices, left_leaves, right_leaves):
        self.path_vertices = path_vertices
        self.left_leaves = left_leaves
        self.right_leaves = right_leaves

    @property
    def order(self) -> int:
        return self.path_vertices + self.left_leaves + self.right_leaves

    def validate(self):
        _check_integer("path_vertices", self.path_vertices, 1)
        _check_integer("left_leaves", self.left_leaves, 0)
        _check_integer("right_leaves", self.right_leaves, 0)

    def edges(self) -> list:
        stem = self.path_vertices
        edges = _path_edges(0, stem - 1)
        edges += [(0, stem + i) for i in range(self.left_leaves)]
        first_right = stem + self.left_leaves
        edges += [
            (stem - 1, first_right + i) for i in range(self.right_leaves)
        ]
        return edges


class DoubleBroom(UnbalancedDoubleBroom):
    """Path of ``n - 2s`` vertices with ``s`` leaves at each end.

    Labeling follows :class:`UnbalancedDoubleBroom`.
    """

    tag = "double-broom"

    def __init__(self, n, s):
        self.n = n
        self.s = s

    @property
    def path_vertices(self) -> int:
        return self.n - 2 * self.s

    @property
    def left_leaves(self) -> int:
        return self.s

    @property
    def right_leaves(self) -> int:
        return self.s

    def validate(self):
        _check_integer("s", self.s, 1)
        _check_integer("n", self.n, 4)
        if self.n - 2 * self.s < 2:
            err = (
                f"Double broom needs n - 2s >= 2, got n={self.n}, s={self.s}."
            )
            raise ValueError(err)


class Caterpillar(FamilySpec):
    """Caterpillar with end leaves and support leaves along the stem.

    +-------------------------+---------------------------------------+
    | LABELS                  | ROLE                                  |
    +=========================+=======================================+
    | 0..ell                  | stem                                  |
    +-------------------------+---------------------------------------+
    | ell+1..ell+m            | leaves on stem vertex 0               |
    +-------------------------+---------------------------------------+
    | ell+m+1..ell+2m         | leaves on stem vertex ``ell``         |
    +-------------------------+---------------------------------------+
    | ell+2m+1..ell+2m+k      | support leaves, one per position      |
    +-------------------------+---------------------------------------+
    """

    tag = "caterpillar"

    def __init__(self, ell, m, positions=()):
        """Initialize.

        :param int ell:  number of stem edges
        :param int m:  leaves at each stem end
        :param list positions:  stem indices of the support leaves
        """
        self.ell = ell
        self.m = m
        self.positions = tuple(positions)

    @property
    def k(self) -> int:
        """Number of support leaves."""
        return len(self.positions)

    @property
    def order(self) -> int:
        return self.ell + 1 + 2 * self.m + self.k

    def validate(self):
        _check_integer("ell", self.ell, 0)
        _check_integer("m", self.m, 0)
        for position in self.positions:
            if int(position) != position or not 0 <= position <= self.ell:
                err = (
                    f"Support position {position} is outside the stem "
                    f"0..{self.ell}."
                )
                raise ValueError(err)
        if list(self.positions) != sorted(self.positions):
            err = f"Support positions must be sorted: {self.positions}"
            raise ValueError(err)

    def edges(self) -> list:
        ell, m = self.ell, self.m
        edges = _path_edges(0, ell)
        edges += [(0, ell + 1 + i) for i in range(m)]
        edges += [(ell, ell + m + 1 + i) for i in range(m)]
        first_support = ell + 2 * m + 1
        edges += [
            (position, first_support + i)
            for i, position in enumerate(self.positions)
        ]
        return edges


class MergedBrooms(FamilySpec):
    """Several brooms glued at their free handle ends.

    Vertex 0 is the shared handle end.  Brooms are laid out in the given
    order, each as handle vertices followed by its leaves.
    """

    tag = "merged-brooms"

    def __init__(self, brooms):
        """Initialize.

        :param list brooms:  ``(handle length, leaf count)`` pairs
        """
        self.brooms = tuple((int(a), int(b)) for a, b in brooms)

    @property
    def order(self) -> int:
        return 1 + sum(a + b for a, b in self.brooms)

    def validate(self):
        if not self.brooms:
            raise ValueError("MergedBrooms needs at least one broom.")
        for a, b in self.brooms:
            _check_integer("handle length", a, 0)
            _check_integer("leaf count", b, 1)

    def edges(self) -> list:
        edges = []
        next_label = 1
        for handle, num_leaves in self.brooms:
            end = 0
            for _ in range(handle):
                edges.append((end, next_label))
                end = next_label
                next_label += 1
            for _ in range(num_leaves):
                edges.append((end, next_label))
                next_label += 1
        return edges


def three_broom(n) -> MergedBrooms:
    """Near-maximal construction of order ``n`` from three merged brooms.

    Two short brooms have handles of about 0.75 sqrt(n) and about log2(n)
    leaves; the third takes the remaining handle and one leaf fewer than
    2 log2(n).

    :param int n:  order
    :returns:  family spec of order ``n``
    """
    short_handle = max(1, round(0.75 * math.sqrt(n)))
    short_leaves = max(1, round(math.log2(n)))
    long_leaves = max(1, round(2 * math.log2(n)) - 1)
    long_handle = n - 1 - 2 * (short_handle + short_leaves) - long_leaves
    if long_handle < 0:
        err = f"Three-broom construction needs a larger order than {n}."
        raise ValueError(err)
    _LOGGER.debug(
        f"Three-broom n={n}: short ({short_handle}, {short_leaves}) x2, "
        f"long ({long_handle}, {long_leaves})."
    )
    return MergedBrooms(
        [
            (short_handle, short_leaves),
            (short_handle, short_leaves),
            (long_handle, long_leaves),
        ]
    )


FAMILIES = {
    family.tag: family
    for family in (
        Path,
        Star,
        Broom,
        DoubleBroom,
        UnbalancedDoubleBroom,
        Caterpillar,
        MergedBrooms,
    )
}


def build_family(spec) -> Tree:
    """Build the tree described by a family spec.

    :param FamilySpec spec:  family parameters
    :returns:  tree of order ``spec.order``
    """
    if not isinstance(spec, FamilySpec):
        err = f"Expected a FamilySpec, got {type(spec).__name__}."
        raise ValueError(err)
    tree = spec.build()
    _LOGGER.debug(f"Built {spec} with {tree.n} vertices.")
    return tree
