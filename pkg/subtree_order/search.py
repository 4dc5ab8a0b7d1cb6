"""Searches for trees and family members with large mean subtree order.

Every ranking compares exact ratios by cross-multiplication.  Ties are
broken deterministically (canonical form for free trees, smallest parameter
for families), so results do not depend on the worker count.
"""
import logging
import math
import time
from datetime import timedelta
from fractions import Fraction
import pandas as pd
from .closed_forms import (
    broom_local_mean,
    double_broom_counts,
    optimal_positions,
)
from .counting import global_counts
from .families import Caterpillar, UnbalancedDoubleBroom, build_family
from .general import chunked, format_exact, parallel_map
from .generation import generate_level_sequences
from .tree import (
    canonical_form,
    canonical_tree,
    diameter,
    is_caterpillar,
    leaves,
    tree_from_level_sequence,
)


_LOGGER = logging.getLogger(__name__)
SEARCH_CAP = 20
SEARCH_HARD_CAP = 24
CHUNK_SIZE = 2000
DEFAULT_K_RANGE = range(0, 9)
DEFAULT_PERTURB_RADIUS = 2
M_WINDOW = 3


def compare(first, second) -> int:
    """Compare the means of two aggregates exactly.

    :returns:  1, 0 or -1 as ``first`` is larger, equal or smaller
    """
    left = first.total_order * second.count
    right = second.total_order * first.count
    return (left > right) - (left < right)


class SearchResult:
    """Optimal trees found by a search."""

    def __init__(
        self, n, best_trees, best_counts, trees_examined, elapsed, specs=()
    ):
        """Initialize.

        :param int n:  order of the searched trees
        :param list best_trees:  every optimum, in canonical order
        :param list best_counts:  :class:`SubtreeAggregate` of each optimum
        :param int trees_examined:  number of evaluated trees
        :param timedelta elapsed:  wall-clock duration
        :param list specs:  family specs of the optima, when known
        """
        if not best_trees:
            raise ValueError("A search result needs at least one tree.")
        values = {aggregate.mean for aggregate in best_counts}
        if len(values) != 1:
            err = f"Optimal trees disagree on the mean: {sorted(values)}"
            raise ValueError(err)
        self.n = n
        self.best_trees = list(best_trees)
        self.best_counts = list(best_counts)
        self.trees_examined = trees_examined
        self.elapsed = elapsed
        self.specs = list(specs)

    @property
    def best_value(self) -> Fraction:
        """Mean subtree order shared by all optima."""
        return self.best_counts[0].mean

    @property
    def canonical_forms(self) -> list:
        return [canonical_form(tree) for tree in self.best_trees]

    @property
    def leaf_counts(self) -> list:
        return [len(leaves(tree)) for tree in self.best_trees]

    @property
    def diameters(self) -> list:
        return [diameter(tree)[0] for tree in self.best_trees]

    @property
    def caterpillar_flags(self) -> list:
        return [is_caterpillar(tree) for tree in self.best_trees]

    @property
    def table(self) -> pd.DataFrame:
        """One row per optimum."""
        return pd.DataFrame(
            {
                "canonical_form": [str(f) for f in self.canonical_forms],
                "sigma": [a.count for a in self.best_counts],
                "tau": [a.total_order for a in self.best_counts],
                "leaf_count": self.leaf_counts,
                "diameter": self.diameters,
                "is_caterpillar": self.caterpillar_flags,
            }
        )

    def records(self) -> list:
        """Text records ``n=<n> mu=<tau>/<sigma> tree=<canonical form>``."""
        return [
            f"n={self.n} mu={aggregate.total_order}/{aggregate.count} "
            f"tree={form}"
            for aggregate, form in zip(self.best_counts, self.canonical_forms)
        ]

    def __str__(self):
        return "\n".join(self.records())


class _ChunkBest:
    """Running optimum over part of the search space.

    Candidates are kept as ``{canonical level sequence: aggregate}``.
    """

    def __init__(self):
        self.best = None
        self.candidates = {}
        self.examined = 0

    def offer(self, aggregate, form_factory):
        self.examined += 1
        if self.best is None:
            order = 1
        else:
            order = compare(aggregate, self.best)
        if order > 0:
            self.best = aggregate
            self.candidates = {}
        if order >= 0:
            self.candidates[form_factory()] = aggregate

    def merge(self, other):
        """Fold another chunk result in; associative and commutative."""
        self.examined += other.examined
        if other.best is None:
            return
        order = 1 if self.best is None else compare(other.best, self.best)
        if order > 0:
            self.best = other.best
            self.candidates = dict(other.candidates)
        elif order == 0:
            self.candidates.update(other.candidates)


def _best_in_chunk(chunk) -> _ChunkBest:
    """Evaluate a chunk of level sequences (runs in worker processes)."""
    result = _ChunkBest()
    for levels in chunk:
        tree = tree_from_level_sequence(levels)
        result.offer(
            global_counts(tree),
            lambda: canonical_form(tree).level_sequence,
        )
    return result


def exhaustive_optimal(
    n,
    jobs=1,
    cap=SEARCH_CAP,
    hard_cap=SEARCH_HARD_CAP,
    chunk_size=CHUNK_SIZE,
) -> SearchResult:
    """Maximize the mean subtree order over all free trees of order ``n``.

    :param int n:  tree order, ``2 <= n <= cap``
    :param int jobs:  worker processes, None for all CPUs
    :param int cap:  largest accepted order
    :param int hard_cap:  upper limit for ``cap``
    :param int chunk_size:  level sequences per work item
    :returns:  every optimal tree, sorted by canonical form
    """
    if cap > hard_cap:
        err = f"Search cap {cap} exceeds the hard cap {hard_cap}."
        raise ValueError(err)
    if int(n) != n or not 2 <= n <= cap:
        err = f"Exhaustive search needs 2 <= n <= {cap}, got {n}."
        raise ValueError(err)
    start = time.monotonic()
    total = _ChunkBest()
    chunks = chunked(generate_level_sequences(n, cap=hard_cap), chunk_size)
    for ichunk, part in enumerate(parallel_map(_best_in_chunk, chunks, jobs)):
        _LOGGER.debug(f"Merged chunk {ichunk} ({part.examined} trees).")
        total.merge(part)
    forms = sorted(total.candidates)
    elapsed = timedelta(seconds=time.monotonic() - start)
    result = SearchResult(
        n,
        [canonical_tree(form) for form in forms],
        [total.candidates[form] for form in forms],
        total.examined,
        elapsed,
    )
    _LOGGER.info(
        f"Exhaustive search n={n}: {total.examined} trees, "
        f"{len(forms)} optimal, mu={format_exact(result.best_value)}, "
        f"{elapsed.total_seconds():.1f} s."
    )
    return result


def best_double_broom(n) -> tuple:
    """Best balanced double broom of order ``n``.

    A double broom has ``2s`` leaves, so its mean is at most ``n - s``; the
    sweep stops once that bound cannot beat the best value.

    :param int n:  order, at least 4
    :returns:  ``(s, SubtreeAggregate, mean)``, smallest ``s`` on ties
    """
    if int(n) != n or n < 4:
        err = f"Double brooms need n >= 4, got {n}."
        raise ValueError(err)
    best = None
    for leaves_per_end in range(1, (n - 2) // 2 + 1):
        if best is not None and n - leaves_per_end <= best[2]:
            break
        aggregate = double_broom_counts(n, leaves_per_end)
        if best is None or aggregate.mean > best[2]:
            best = (leaves_per_end, aggregate, aggregate.mean)
    _LOGGER.debug(f"Best double broom n={n}: s={best[0]}.")
    return best


def best_unbalanced_double_broom(n) -> tuple:
    """Best double broom with independent leaf counts at the two ends.

    Exploratory only.  Ties go to the smaller total leaf count, then to the
    smaller left count.

    :returns:  ``(UnbalancedDoubleBroom, SubtreeAggregate, mean)``
    """
    if int(n) != n or n < 4:
        err = f"Double brooms need n >= 4, got {n}."
        raise ValueError(err)
    best = None
    for num_leaves in range(2, n - 1):
        if best is not None and Fraction(2 * n - num_leaves, 2) <= best[2]:
            break
        for left in range(1, num_leaves // 2 + 1):
            spec = UnbalancedDoubleBroom(
                n - num_leaves, left, num_leaves - left
            )
            aggregate = global_counts(build_family(spec))
            if best is None or aggregate.mean > best[2]:
                best = (spec, aggregate, aggregate.mean)
    return best


def best_broom_local(n) -> tuple:
    """Broom of order ``n`` with the largest local mean at its handle end.

    The local mean is at most ``n - b/2``, which bounds the sweep.

    :returns:  ``(a, b, mean)``, smallest ``b`` on ties
    """
    if int(n) != n or n < 3:
        err = f"Brooms for the local mean need n >= 3, got {n}."
        raise ValueError(err)
    best = None
    for num_leaves in range(1, n):
        if best is not None and n - Fraction(num_leaves, 2) <= best[2]:
            break
        handle = n - 1 - num_leaves
        value = broom_local_mean(n, handle, num_leaves)
        if best is None or value > best[2]:
            best = (handle, num_leaves, value)
    return best


def _round_half_up(value) -> int:
    return math.floor(Fraction(value) + Fraction(1, 2))


def support_indices(ell, positions) -> list:
    """Stem indices for relative support positions.

    Each position is rounded half up to ``a * ell``.  An index already in
    use moves to the nearest free index toward the closer stem end, or
    toward the middle if that side is full.

    :param int ell:  number of stem edges
    :param list positions:  relative positions in [0, 1]
    :returns:  sorted distinct indices
    """
    if len(positions) > ell + 1:
        err = f"{len(positions)} supports do not fit on a stem of {ell}."
        raise ValueError(err)
    taken = set()
    for position in positions:
        target = _round_half_up(Fraction(position) * ell)
        outward = -1 if 2 * target < ell else 1
        candidates = [target]
        for step in range(1, ell + 1):
            candidates.append(target + outward * step)
        for step in range(1, ell + 1):
            candidates.append(target - outward * step)
        for index in candidates:
            if 0 <= index <= ell and index not in taken:
                taken.add(index)
                break
    return sorted(taken)


def caterpillar_spec(n, k, m) -> Caterpillar:
    """Caterpillar with ``m`` leaves per end and ``k`` supports placed at
    the optimal relative positions."""
    if int(k) != k or k < 0:
        err = f"k must be a nonnegative integer, got {k}."
        raise ValueError(err)
    if int(m) != m or m < 1:
        err = f"m must be a positive integer, got {m}."
        raise ValueError(err)
    ell = n - 1 - 2 * m - k
    if ell < max(k, 1):
        err = f"Infeasible caterpillar: n={n}, k={k}, m={m} gives ell={ell}."
        raise ValueError(err)
    return Caterpillar(ell, m, support_indices(ell, optimal_positions(k)))


def support_leaf_caterpillar(n, k, m):
    """Build the support-leaf caterpillar of order ``n``.

    :param int n:  order
    :param int k:  number of support leaves
    :param int m:  leaves at each stem end
    :returns:  :class:`~subtree_order.tree.Tree`
    """
    return build_family(caterpillar_spec(n, k, m))


def _m_window(n, k) -> range:
    center = math.floor(2 * math.log2(0.9 * n)) - k // 2
    return range(max(1, center - M_WINDOW), center + M_WINDOW + 1)


def _perturb(spec, best, radius) -> tuple:
    """Coordinate-wise improvement of the support indices.

    :returns:  (spec, aggregate, number of evaluated trees)
    """
    examined = 0
    positions = list(spec.positions)
    for index in range(len(positions)):
        for delta in range(-radius, radius + 1):
            moved = positions[index] + delta
            if delta == 0 or not 0 <= moved <= spec.ell:
                continue
            if moved in positions:
                continue
            trial = sorted(positions[:index] + [moved] + positions[index + 1:])
            candidate = Caterpillar(spec.ell, spec.m, trial)
            aggregate = global_counts(build_family(candidate))
            examined += 1
            if compare(aggregate, best) > 0:
                spec, best = candidate, aggregate
        positions = list(spec.positions)
    return spec, best, examined


def best_caterpillar(
    n, k_range=DEFAULT_K_RANGE, perturb_radius=DEFAULT_PERTURB_RADIUS
) -> SearchResult:
    """Best support-leaf caterpillar of order ``n``.

    Every ``k`` in ``k_range`` is tried with ``m`` in a window of
    ``+-3`` around ``floor(2 log2(0.9 n)) - k/2``; then the support indices
    of the best configuration are perturbed one at a time within
    ``+-perturb_radius``.

    :param int n:  order, at least 25
    :param k_range:  support-leaf counts to try
    :param int perturb_radius:  largest index shift
    :returns:  single-tree search result carrying the caterpillar spec
    """
    if int(n) != n or n < 25:
        err = f"The caterpillar construction needs n >= 25, got {n}."
        raise ValueError(err)
    start = time.monotonic()
    best_spec = best = None
    examined = 0
    for k in k_range:
        for m in _m_window(n, k):
            if n - 1 - 2 * m - k < max(k, 1):
                continue
            spec = caterpillar_spec(n, k, m)
            aggregate = global_counts(build_family(spec))
            examined += 1
            if best is None or compare(aggregate, best) > 0:
                best_spec, best = spec, aggregate
    if best is None:
        err = f"No feasible caterpillar for n={n} and k in {k_range}."
        raise ValueError(err)
    best_spec, best, extra = _perturb(best_spec, best, perturb_radius)
    examined += extra
    tree = build_family(best_spec)
    elapsed = timedelta(seconds=time.monotonic() - start)
    _LOGGER.debug(
        f"Best caterpillar n={n}: ell={best_spec.ell} m={best_spec.m} "
        f"positions={list(best_spec.positions)} from {examined} trees."
    )
    return SearchResult(
        n, [tree], [best], examined, elapsed, [best_spec]
    )
