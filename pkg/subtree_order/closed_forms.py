"""Closed-form evaluators for brooms, double brooms and caterpillars.

Rational formulas are evaluated exactly with :class:`fractions.Fraction`.
Only the transcendental pieces (the periodic fluctuations, the bilateral
sum and the asymptotic bounds) use floating point, through numpy.
"""
import logging
import math
from fractions import Fraction
import numpy as np
from .counting import SubtreeAggregate


_LOGGER = logging.getLogger(__name__)
BILATERAL_TRUNCATION = 60
#: g(x) = max(G_RISE * 2**x, 1 - G_FALL * 2**x) on [0, 1]
G_RISE = 0.19
G_FALL = 0.62
G_GRID_POINTS = 10001


def _check_integer(name, value, minimum):
    if int(value) != value or value < minimum:
        err = f"{name} must be an integer >= {minimum}, got {value}."
        raise ValueError(err)


def _check_nonnegative(name, value):
    if value < 0:
        err = f"{name} must be nonnegative, got {value}."
        raise ValueError(err)


class BroomParams:
    """Broom with handle length ``a`` and ``b`` leaves."""

    def __init__(self, a, b):
        _check_integer("a", a, 0)
        _check_integer("b", b, 1)
        self.a = a
        self.b = b

    @property
    def order(self) -> int:
        return self.a + self.b + 1

    @property
    def x(self) -> int:
        """``2**b``, the number of leaf subsets."""
        return 2**self.b

    @property
    def root_count(self) -> int:
        """Subtrees of the broom containing its free handle end."""
        return self.a + self.x

    @property
    def root_total(self) -> int:
        """``a**2 - a + (2a + b) 2**b``: twice the number of broom vertices
        besides the attachment vertex, summed over those subtrees."""
        return self.a**2 - self.a + (2 * self.a + self.b) * self.x


class ReducedContext:
    """The ``(k, C)`` reduction of the part of a tree outside a broom.

    With ``ell`` subtrees containing both the root and the attachment
    vertex (total order ``s``) and ``m`` subtrees containing the root only
    (total order ``t``): ``k = m / ell`` and ``C = 2 (s m - t ell) / ell**2``.
    """

    def __init__(self, k=0, C=0):  # noqa: N803
        k, C = Fraction(k), Fraction(C)
        _check_nonnegative("k", k)
        _check_nonnegative("C", C)
        self.k = k
        self.C = C

    @classmethod
    def from_counts(cls, ell, m, s, t):
        """Build the context from the four subtree statistics."""
        if ell <= 0:
            err = f"ell must be positive, got {ell}."
            raise ValueError(err)
        return cls(Fraction(m, ell), Fraction(2 * (s * m - t * ell), ell**2))

    def __repr__(self):
        return f"ReducedContext(k={self.k}, C={self.C})"


class CaterpillarAsymptotics:
    """Support-leaf count and relative support positions along a stem."""

    def __init__(self, k, positions):
        """Initialize.

        :param int k:  number of support leaves
        :param list positions:  ``a_1 <= ... <= a_k`` in [0, 1]
        """
        _check_integer("k", k, 0)
        positions = [Fraction(position) for position in positions]
        if len(positions) != k:
            err = f"Expected {k} positions, got {len(positions)}."
            raise ValueError(err)
        if positions != sorted(positions):
            err = f"Positions must be nondecreasing: {positions}"
            raise ValueError(err)
        if positions and not (0 <= positions[0] and positions[-1] <= 1):
            err = f"Positions must lie in [0, 1]: {positions}"
            raise ValueError(err)
        self.k = k
        self.positions = positions

    @property
    def p(self) -> Fraction:
        """Linear coefficient of the subtree count."""
        return pq_values(self.k, self.positions)[0]

    @property
    def q(self) -> Fraction:
        """Quadratic coefficient of the total order."""
        return pq_values(self.k, self.positions)[1]


def broom_local_mean(n, a, b) -> Fraction:
    """Local mean at the free handle end of a broom.

    :param int n:  order, must equal ``a + b + 1``
    :param int a:  handle length
    :param int b:  number of leaves
    :returns:  ``n - (b + a n / (a + 2**b)) / 2``
    """
    broom = BroomParams(a, b)
    if n != broom.order:
        err = f"Broom with a={a}, b={b} has order {broom.order}, not {n}."
        raise ValueError(err)
    return n - Fraction(1, 2) * (b + Fraction(a * n, broom.root_count))


def double_broom_counts(n, s):
    """Subtree count and total order of a balanced double broom.

    :param int n:  order
    :param int s:  leaves at each end
    :returns:  :class:`~subtree_order.counting.SubtreeAggregate`
    """
    _check_integer("s", s, 1)
    _check_integer("n", n, 2 * s + 2)
    stem = n - 2 * s
    sigma = (
        2 ** (2 * s)
        + 2 ** (s + 1) * (stem - 1)
        + math.comb(stem - 1, 2)
        + 2 * s
    )
    tau = (
        2 ** (2 * s) * (n - s)
        + 2**s * (n - s) * (stem - 1)
        + math.comb(stem, 3)
        + 2 * s
    )
    return SubtreeAggregate(sigma, tau)


def mu_T1(ell, m, s, t, a, b) -> Fraction:  # noqa: N802
    """Local mean at the root after attaching one broom.

    :param int ell:  subtrees containing the root and the attachment vertex
    :param int m:  subtrees containing the root only
    :param int s:  total order of the ``ell`` subtrees
    :param int t:  total order of the ``m`` subtrees
    :param int a:  handle length of the broom
    :param int b:  leaf count of the broom
    """
    broom = BroomParams(a, b)
    numerator = (
        t
        + s * broom.root_count
        + Fraction(ell, 2) * broom.root_total
    )
    return numerator / (m + ell * broom.root_count)


def mu_T2(ell, m, s, t, a, b, c, d) -> Fraction:  # noqa: N802
    """Local mean at the root after attaching two brooms at one vertex."""
    first = BroomParams(a, b)
    second = BroomParams(c, d)
    product = first.root_count * second.root_count
    numerator = (
        t
        + s * product
        + Fraction(ell, 2)
        * (
            first.root_count * second.root_total
            + second.root_count * first.root_total
        )
    )
    return numerator / (m + ell * product)


def f1(k, C, a, b) -> Fraction:  # noqa: N803
    """Broom-dependent part of the one-broom local mean."""
    context = ReducedContext(k, C)
    broom = BroomParams(a, b)
    return (broom.root_total - context.C) / (context.k + broom.root_count)


def f2(k, C, a, b, c, d) -> Fraction:  # noqa: N803
    """Broom-dependent part of the two-broom local mean."""
    context = ReducedContext(k, C)
    first = BroomParams(a, b)
    second = BroomParams(c, d)
    numerator = (
        first.root_count * second.root_total
        + second.root_count * first.root_total
        - context.C
    )
    return numerator / (context.k + first.root_count * second.root_count)


def lambda_combination(k, a, b, c, d) -> tuple:
    """Coefficients that merge two brooms into one, and the combination.

    :returns:  ``(lambda_1, lambda_2, value)``; ``value`` does not depend
        on ``k``
    """
    k = Fraction(k)
    _check_nonnegative("k", k)
    _check_integer("a", a, 0)
    for name, value in (("b", b), ("c", c), ("d", d)):
        _check_integer(name, value, 1)
    x, y = 2**b, 2**d
    lambda_1 = (x * y - x * c - a * y - (c - 1) * (a - 1)) * (
        k + a + c + x * y
    )
    lambda_2 = (x * c + a * y + (c - 1) * a - c) * (k + a + c - 1 + 2 * x * y)
    value = (
        c * (c - 1) * (x * y - 1) * (x + a - 1)
        + a * ((a - 1) * (x * y - 1) + b * x * y) * (c + y - 1)
        + c * y * x * ((x - 1) * d - b)
        + y * a * d * (x * (c - 1) + 1)
        + b * x * c
    )
    return lambda_1, lambda_2, value


def merge_gaps(k, C, a, b, c, d) -> tuple:  # noqa: N803
    """Gains from merging two brooms into one broom of the same order.

    :returns:  ``(delta_1, delta_2)`` for the merged shapes
        ``(a + c, b + d)`` and ``(a + c - 1, b + d + 1)``
    """
    two = f2(k, C, a, b, c, d)
    return (
        f1(k, C, a + c, b + d) - two,
        f1(k, C, a + c - 1, b + d + 1) - two,
    )


def periodic_f(x):
    """1-periodic extension of ``x - 2**x`` on [0, 1].

    Accepts scalars or arrays.
    """
    frac = np.asarray(x, dtype=float) % 1.0
    value = frac - np.exp2(frac)
    return float(value) if np.ndim(value) == 0 else value


def periodic_g(x):
    """1-periodic extension of ``max(0.19 * 2**x, 1 - 0.62 * 2**x)``."""
    power = np.exp2(np.asarray(x, dtype=float) % 1.0)
    value = np.maximum(G_RISE * power, 1.0 - G_FALL * power)
    return float(value) if np.ndim(value) == 0 else value


def g_minimum(grid_points=G_GRID_POINTS) -> tuple:
    """Minimum of :func:`periodic_g` over one period.

    A grid search is refined with the crossing point of the two branches,
    where ``2**x = 1 / (G_RISE + G_FALL)``.

    :returns:  ``(location, value)``
    """
    grid = np.linspace(0.0, 1.0, grid_points)
    values = periodic_g(grid)
    best = int(np.argmin(values))
    location, value = float(grid[best]), float(values[best])
    crossing = -math.log2(G_RISE + G_FALL)
    if 0.0 <= crossing <= 1.0 and periodic_g(crossing) <= value:
        location, value = crossing, periodic_g(crossing)
    return location, value


def pq_values(k, positions) -> tuple:
    """Caterpillar coefficients ``p`` and ``q`` for given positions.

    :param int k:  number of support leaves
    :param list positions:  relative positions ``a_1..a_k``
    :returns:  ``(p, q)``, exact
    """
    positions = [Fraction(position) for position in positions]
    if len(positions) != k:
        err = f"Expected {k} positions, got {len(positions)}."
        raise ValueError(err)
    two = Fraction(2)
    p = two**-k + 1
    q = Fraction(1, 2) + two ** (-k - 1)
    for i, a_i in enumerate(positions, start=1):
        p += (two**-i - two ** (i - k - 1)) * a_i
        q -= (two ** (-i - 1) + two ** (i - k - 2)) * a_i**2
        q += two**-i * a_i
    return p, q


def optimal_positions(k) -> list:
    """Support positions maximizing ``q - p``: ``1 / (2**(k-2i+1) + 1)``."""
    _check_integer("k", k, 0)
    return [
        1 / (Fraction(2) ** (k - 2 * i + 1) + 1) for i in range(1, k + 1)
    ]


def bilateral_sum(parity, truncation=BILATERAL_TRUNCATION) -> float:
    """Two-sided sum of ``2**-1.5 / (2**j + 2**-j)`` over a shifted lattice.

    The offset ``j = i - (k + 1)/2`` runs over the integers for odd ``k``
    and over the half-integers for even ``k``.

    :param parity:  ``"even"``, ``"odd"`` or an integer ``k``
    :param int truncation:  largest ``|j|`` kept
    :returns:  value of the sum
    """
    if isinstance(parity, str):
        if parity not in ("even", "odd"):
            err = f"Parity must be 'even' or 'odd', got {parity!r}."
            raise ValueError(err)
        odd = parity == "odd"
    else:
        odd = int(parity) % 2 == 1
    offset = 0.0 if odd else 0.5
    lattice = np.arange(-truncation - 1, truncation + 1) + offset
    lattice = lattice[np.abs(lattice) <= truncation]
    terms = 2.0**-1.5 / (np.exp2(lattice) + np.exp2(-lattice))
    return float(np.sum(terms))


def max_mu_bounds(n) -> tuple:
    """Leading terms of the bounds on the maximum mean subtree order.

    :returns:  ``(lower, upper)`` with ``upper - lower == 2``
    """
    _check_integer("n", n, 2)
    scale = 2 * math.log2(n)
    lower = n - scale + periodic_f(scale)
    return lower, lower + 2


def local_max_asymptotic(n) -> float:
    """Leading terms of the maximum local mean, ``n - log2 n + f/2``."""
    _check_integer("n", n, 2)
    return n - math.log2(n) + periodic_f(2 * math.log2(n)) / 2


def centroid_local_bound(n) -> float:
    """Leading terms of the bound on the local mean at a centroid vertex."""
    return max_mu_bounds(n)[1]


def caterpillar_lower_bound(n) -> float:
    """Leading terms of the mean achieved by the support-leaf
    caterpillars."""
    _check_integer("n", n, 2)
    scale = 2 * math.log2(0.9 * n)
    return n - scale + periodic_f(scale)


def double_broom_asymptotic(n, s) -> float:
    """Leading terms of a double broom's mean, ``n - s - n**2 / 2**s``."""
    return n - s - n**2 / 2**s
