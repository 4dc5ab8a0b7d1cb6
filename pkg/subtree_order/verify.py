"""Machine checks of the broom inequalities, the caterpillar improvement
and the structural properties of subtree counts.

Failures are data: every check returns a :class:`VerificationReport` whose
``passed`` flag is false when a failure witness was recorded.
"""
import logging
from fractions import Fraction
from functools import partial
import networkx as nx
import pandas as pd
from . import counting
from .closed_forms import (
    f1,
    lambda_combination,
    max_mu_bounds,
    merge_gaps,
    centroid_local_bound,
)
from .families import build_family, three_broom
from .general import format_ratio, parallel_map
from .generation import generate_free_trees
from .search import (
    DEFAULT_K_RANGE,
    DEFAULT_PERTURB_RADIUS,
    best_caterpillar,
    best_double_broom,
    exhaustive_optimal,
)
from .tree import (
    RootedTree,
    centroid,
    diameter,
    format_tree,
    is_caterpillar,
    leaves,
    steiner_vertices,
)


_LOGGER = logging.getLogger(__name__)
BROOM_MAXIMIZER_NMAX = 46
BROOM_MAXIMIZER_SAMPLES = [(k, c) for k in (0, 1, 10) for c in (0, 1, 10)]
NO_DOUBLE_BROOM_RANGE = (25, 1000)
NO_DOUBLE_BROOM_LIMIT = 5000
PROPERTY_NMAX = 10
PROPERTY_HARD_MAX = 12
MONOTONICITY_NMAX = 9
ORACLE_NMAX = 10
BRACKET_SLACK = 3
THREE_BROOM_ORDER = 4096
THREE_BROOM_SLACK = 1


class VerificationReport:
    """Outcome of one check.

    Cases are recorded in evaluation order; a failing case carries a
    witness (the failing parameters or tree).
    """

    def __init__(self, check_name):
        self.check_name = check_name
        self.cases = []
        self.failures = []
        self.witnesses = []
        self.notes = []

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def cases_tested(self) -> int:
        return len(self.cases)

    def record(self, case, ok, witness=None):
        """Record one case.

        :param tuple case:  case parameters
        :param bool ok:  outcome
        :param witness:  failure witness (defaults to the case itself)
        """
        self.cases.append((tuple(case), bool(ok)))
        if not ok:
            self.failures.append(case if witness is None else witness)
            _LOGGER.debug(f"{self.check_name}: case {case} failed.")

    def confirm(self, witness):
        """Keep a confirming witness such as an extremal tuple."""
        self.witnesses.append(witness)

    def note(self, text):
        self.notes.append(text)
        _LOGGER.info(f"{self.check_name}: {text}")

    @property
    def table(self) -> pd.DataFrame:
        """One row per case with columns ``check``, ``case``, ``status``."""
        return pd.DataFrame(
            {
                "check": [self.check_name] * len(self.cases),
                "case": [case for case, _ in self.cases],
                "status": ["pass" if ok else "fail" for _, ok in self.cases],
            }
        )

    def lines(self) -> list:
        """Line records ``check=<name> case=<tuple> status=<pass|fail>``."""
        return [
            f"check={self.check_name} case={case} "
            f"status={'pass' if ok else 'fail'}"
            for case, ok in self.cases
        ]

    def __str__(self):
        status = "PASSED" if self.passed else "FAILED"
        lines = [
            f"{self.check_name}: {status} "
            f"({self.cases_tested} cases, {len(self.failures)} failures)"
        ]
        lines += [f"  note: {note}" for note in self.notes]
        lines += [f"  witness: {witness}" for witness in self.witnesses]
        for failure in self.failures:
            text = str(failure).rstrip("\n").replace("\n", "\n    ")
            lines.append(f"  failure: {text}")
        return "\n".join(lines)


def _f1_maximizers(k, C, total) -> tuple:  # noqa: N803
    values = {
        (total - b, b): f1(k, C, total - b, b) for b in range(1, total + 1)
    }
    best = max(values.values())
    return sorted(ab for ab, value in values.items() if value == best), best


def check_broom_maximizers(
    n_max=BROOM_MAXIMIZER_NMAX, samples=BROOM_MAXIMIZER_SAMPLES
):
    """Maximizers of the one-broom term satisfy ``2**b >= 3a``.

    For ``k = C = 0`` every ``N`` in ``2..n_max`` is checked exactly;
    ``N = 2`` must have exactly the maximizers ``(0, 2)`` and ``(1, 1)``
    with value 2.  Other ``(k, C)`` samples corroborate.

    :param int n_max:  largest total ``N = a + b``
    :param list samples:  ``(k, C)`` pairs to spot-check
    :returns:  :class:`VerificationReport`
    """
    if n_max < 2:
        err = f"n_max must be at least 2, got {n_max}."
        raise ValueError(err)
    report = VerificationReport("broom-maximizers")
    for total in range(2, n_max + 1):
        maximizers, value = _f1_maximizers(0, 0, total)
        if total == 2:
            ok = maximizers == [(0, 2), (1, 1)] and value == 2
        else:
            ok = all(2**b >= 3 * a for a, b in maximizers)
        report.record((0, 0, total), ok, (0, 0, total, maximizers, value))
        report.confirm((total, maximizers, format_ratio(value)))
    for k, C in samples:  # noqa: N806
        if k == 0 and C == 0:
            continue
        for total in range(2, n_max + 1):
            maximizers, value = _f1_maximizers(k, C, total)
            ok = all(2**b >= 3 * a for a, b in maximizers)
            report.record((k, C, total), ok, (k, C, total, maximizers))
    report.note(f"checked N = 2..{n_max} and {len(samples)} (k, C) samples")
    return report


class MergeGrid:
    """Integer grid for the two-brooms-into-one check."""

    def __init__(
        self,
        a_max=8,
        b_max=10,
        c_max=8,
        d_max=10,
        k_samples=(0, 1, 5, 100, Fraction(1, 2), Fraction(7, 3)),
        constant_samples=(0, 1, Fraction(7, 3)),
    ):
        self.a_values = range(0, a_max + 1)
        self.b_values = range(1, b_max + 1)
        self.c_values = range(1, c_max + 1)
        self.d_values = range(1, d_max + 1)
        self.k_samples = tuple(Fraction(k) for k in k_samples)
        self.constant_samples = tuple(Fraction(c) for c in constant_samples)

    def tuples(self):
        """Grid points ``(a, b, c, d)`` with ``2**b >= 3a``, ``2**d >= 3c``."""
        for a in self.a_values:
            for b in self.b_values:
                if 2**b < 3 * a:
                    continue
                for c in self.c_values:
                    for d in self.d_values:
                        if 2**d >= 3 * c:
                            yield a, b, c, d


def check_broom_merge(grid=None):
    """Merging two brooms into one of the two candidate shapes helps.

    For every grid tuple and sample ``k``: ``lambda_1 >= 0``,
    ``lambda_2 > 0`` and the combination value is positive; for every
    sample ``C`` the identity
    ``lambda_1 * delta_1 + lambda_2 * delta_2 == value`` holds exactly and
    ``max(delta_1, delta_2) > 0``.

    :param MergeGrid grid:  grid bounds (defaults if None)
    :returns:  :class:`VerificationReport`
    """
    grid = grid or MergeGrid()
    report = VerificationReport("broom-merge")
    smallest = None
    for a, b, c, d in grid.tuples():
        for k in grid.k_samples:
            lambda_1, lambda_2, value = lambda_combination(k, a, b, c, d)
            ok = lambda_1 >= 0 and lambda_2 > 0 and value > 0
            for C in grid.constant_samples:  # noqa: N806
                delta_1, delta_2 = merge_gaps(k, C, a, b, c, d)
                ok = ok and lambda_1 * delta_1 + lambda_2 * delta_2 == value
                ok = ok and max(delta_1, delta_2) > 0
            report.record((a, b, c, d, k), ok)
            if smallest is None or value < smallest[0]:
                smallest = (value, (a, b, c, d))
    if smallest is not None:
        report.confirm(smallest)
        report.note(
            f"smallest combination value {smallest[0]} at (a, b, c, d) = "
            f"{smallest[1]}"
        )
    return report


def _no_double_broom_case(n, k_range, perturb_radius) -> tuple:
    caterpillar = best_caterpillar(n, k_range, perturb_radius)
    leaves_per_end, _, broom_value = best_double_broom(n)
    return n, caterpillar.best_value, broom_value, leaves_per_end


def check_no_double_broom(
    n_min=NO_DOUBLE_BROOM_RANGE[0],
    n_max=NO_DOUBLE_BROOM_RANGE[1],
    jobs=1,
    k_range=DEFAULT_K_RANGE,
    perturb_radius=DEFAULT_PERTURB_RADIUS,
):
    """The best support-leaf caterpillar beats every balanced double broom.

    :param int n_min:  first order (at least 25)
    :param int n_max:  last order (at most 5000)
    :param int jobs:  worker processes, None for all CPUs
    :returns:  :class:`VerificationReport` with the margin range in its
        notes
    """
    lowest, highest = NO_DOUBLE_BROOM_RANGE[0], NO_DOUBLE_BROOM_LIMIT
    if not lowest <= n_min <= n_max <= highest:
        err = (
            f"Order range must satisfy {lowest} <= n_min <= n_max <= "
            f"{highest}, got {n_min}..{n_max}."
        )
        raise ValueError(err)
    report = VerificationReport("no-double-broom")
    worker = partial(
        _no_double_broom_case, k_range=k_range, perturb_radius=perturb_radius
    )
    margins = []
    for n, caterpillar, broom, leaves_per_end in parallel_map(
        worker, range(n_min, n_max + 1), jobs
    ):
        margin = caterpillar - broom
        margins.append((margin, n))
        report.record((n,), margin > 0, (n, leaves_per_end, margin))
    low, high = min(margins), max(margins)
    report.confirm(("min margin", low[1], float(low[0])))
    report.note(
        f"margin range {float(low[0]):.6f} (n={low[1]}) to "
        f"{float(high[0]):.6f} (n={high[1]})"
    )
    return report


def _is_unimodal(values) -> bool:
    """True if the sequence never strictly increases after a strict
    decrease."""
    decreased = False
    for previous, current in zip(values, values[1:]):
        if current < previous:
            decreased = True
        elif current > previous and decreased:
            return False
    return True


def _path_between(parent, source, target) -> list:
    path = [target]
    while path[-1] != source:
        path.append(parent[path[-1]])
    return path


def _defect_bound_holds(count, defect) -> bool:
    # s <= 2**(2 * defect) with 2 * defect = P/Q  <=>  s**Q <= 2**P
    twice = 2 * defect
    return count**twice.denominator <= 2**twice.numerator


class _PropertyChecker:
    """Checks every structural property on one tree."""

    def __init__(self, tree, global_impl, rooted_impl, per_vertex_impl):
        self.tree = tree
        self.global_impl = global_impl
        self.rooted_impl = rooted_impl
        self.per_vertex_impl = per_vertex_impl

    def oracle(self) -> bool:
        tree = self.tree
        if self.global_impl(tree) != counting.brute_force_counts(tree):
            return False
        per_vertex = self.per_vertex_impl(tree)
        for vertex in range(tree.n):
            expected = counting.brute_force_counts(tree, {vertex})
            if per_vertex[vertex] != expected:
                return False
            if self.rooted_impl(RootedTree(tree, vertex)) != expected:
                return False
        return True

    def vertex_sum(self) -> bool:
        per_vertex = self.per_vertex_impl(self.tree)
        total = self.global_impl(self.tree).total_order
        return sum(aggregate.count for aggregate in per_vertex) == total

    def local_vs_global(self) -> bool:
        mean = self.global_impl(self.tree).mean
        for aggregate in self.per_vertex_impl(self.tree):
            if aggregate.mean < mean:
                return False
            if self.tree.n >= 2 and aggregate.mean == mean:
                return False
        return True

    def monotonicity(self) -> bool:
        tree = self.tree
        means, steiner = {}, {}
        for mask in range(1 << tree.n):
            members = [v for v in range(tree.n) if mask >> v & 1]
            means[mask] = counting.set_mean(tree, members)
            steiner[mask] = frozenset(steiner_vertices(tree, members))
        for mask, mean in means.items():
            for vertex in range(tree.n):
                if mask >> vertex & 1:
                    continue
                larger = mask | 1 << vertex
                if means[larger] < mean:
                    return False
                same = steiner[mask] == steiner[larger]
                if mask == 0 and tree.n == 1:
                    same = True
                if (means[larger] == mean) != same:
                    return False
        return True

    def defects(self) -> bool:
        tree = self.tree
        for root in range(tree.n):
            rooted = RootedTree(tree, root)
            aggregate = self.rooted_impl(rooted)
            value = rooted.n - aggregate.mean
            if not _defect_bound_holds(aggregate.count, value):
                return False
            branches = counting.branch_trees(tree, root)
            parts = [
                branch.n - self.rooted_impl(branch).mean
                for branch in branches
            ]
            if value != sum(parts):
                return False
            local_parts = [
                self.rooted_impl(branch).mean - 1 for branch in branches
            ]
            if aggregate.mean - 1 != sum(local_parts):
                return False
        return True

    def unimodality(self) -> bool:
        tree = self.tree
        counts = [a.count for a in self.per_vertex_impl(tree)]
        ends = leaves(tree)
        for index, source in enumerate(ends):
            _, parent = tree.bfs(source)
            for target in ends[index + 1:]:
                path = _path_between(parent, source, target)
                if not _is_unimodal([counts[v] for v in path]):
                    return False
        return True

    def central_part(self) -> bool:
        part = counting.central_part(self.tree)
        if not part:
            return True
        return nx.is_connected(self.tree.to_networkx().subgraph(part))

    def leaf_bound(self) -> bool:
        return counting.leaf_bound_holds(self.tree)

    def core(self) -> bool:
        try:
            core = counting.subtree_core(self.tree)
        except RuntimeError:
            return False
        return 1 <= len(core) <= 2


PROPERTIES = (
    "oracle",
    "vertex_sum",
    "local_vs_global",
    "monotonicity",
    "defects",
    "unimodality",
    "central_part",
    "leaf_bound",
    "core",
)


def run_property_suite(
    n_max=PROPERTY_NMAX,
    global_impl=counting.global_counts,
    rooted_impl=counting.rooted_counts,
    per_vertex_impl=counting.per_vertex_counts,
    monotonicity_nmax=MONOTONICITY_NMAX,
    oracle_nmax=ORACLE_NMAX,
):
    """Check the structural properties on every free tree up to ``n_max``.

    The counting implementations are injectable so that a deliberately
    broken one can be shown to fail.

    :param int n_max:  largest order, at most 12
    :returns:  :class:`VerificationReport` with one case per property and
        order; failures carry the offending tree
    """
    if n_max > PROPERTY_HARD_MAX:
        err = f"Property suite is limited to n <= {PROPERTY_HARD_MAX}."
        raise ValueError(err)
    report = VerificationReport("properties")
    for n in range(1, n_max + 1):
        trees = list(generate_free_trees(n))
        for name in PROPERTIES:
            if name == "monotonicity" and n > monotonicity_nmax:
                continue
            if name == "oracle" and n > oracle_nmax:
                continue
            failures = []
            for tree in trees:
                checker = _PropertyChecker(
                    tree, global_impl, rooted_impl, per_vertex_impl
                )
                if not getattr(checker, name)():
                    failures.append(tree)
            witness = None
            if failures:
                witness = f"{name} n={n}\n{format_tree(failures[0])}"
            report.record((name, n), not failures, witness)
        _LOGGER.debug(f"Property suite finished n={n} ({len(trees)} trees).")
    report.note(f"all free trees with 1 <= n <= {n_max}")
    return report


def _max_off_path_branch(tree, path) -> int:
    on_path = set(path)
    graph = tree.to_networkx()
    graph.remove_nodes_from(on_path)
    sizes = [len(part) for part in nx.connected_components(graph)]
    return max(sizes, default=0)


def evaluate_three_broom(n=THREE_BROOM_ORDER, slack=THREE_BROOM_SLACK):
    """Mean of the three-broom construction against the bounds.

    :returns:  dict with the spec, mean, bounds and bracket flag
    """
    spec = three_broom(n)
    mean = counting.mean_subtree_order(build_family(spec))
    lower, upper = max_mu_bounds(n)
    within = lower - slack <= mean <= upper + slack
    if not within:
        _LOGGER.warning(
            f"Three-broom n={n}: mu={float(mean):.6f} outside "
            f"[{lower - slack:.6f}, {upper + slack:.6f}]."
        )
    return {
        "spec": spec,
        "mu": mean,
        "lower": lower,
        "upper": upper,
        "within_bracket": within,
    }


def diagnostics(tree, three_broom_n=None) -> dict:
    """Structural summary of a tree.

    :param Tree tree:  tree to describe
    :param int three_broom_n:  also evaluate the three-broom construction
        of this order
    :returns:  dict of named values, in a fixed order
    """
    aggregate = counting.global_counts(tree)
    length, path = diameter(tree)
    centers = centroid(tree)
    report = {
        "n": tree.n,
        "sigma": aggregate.count,
        "tau": aggregate.total_order,
        "mu": aggregate.mean,
        "density": aggregate.mean / tree.n,
        "diameter": length,
        "diameter_gap": tree.n - length,
        "centroid": centers,
        "subtree_core": counting.subtree_core(tree),
        "central_part_size": len(counting.central_part(tree)),
        "leaf_count": len(leaves(tree)),
        "is_caterpillar": is_caterpillar(tree),
        "max_off_diameter_branch": _max_off_path_branch(tree, path),
        "sigma_per_n4": aggregate.count / tree.n**4,
        "centroid_local_means": [
            counting.local_mean(tree, v) for v in centers
        ],
    }
    if tree.n >= 2:
        report["centroid_local_bound"] = centroid_local_bound(tree.n)
    if three_broom_n is not None:
        report["three_broom"] = evaluate_three_broom(three_broom_n)
    return report


def check_asymptotic_bracket(
    n_values=range(16, 21),
    three_broom_n=THREE_BROOM_ORDER,
    jobs=1,
    slack=BRACKET_SLACK,
    three_broom_slack=THREE_BROOM_SLACK,
):
    """Compare exhaustive optima and the three-broom with the bounds.

    Report-only: misses are recorded as failed cases and logged, never
    raised.

    :param n_values:  orders for the exhaustive search
    :param int three_broom_n:  order of the three-broom, None to skip
    :returns:  :class:`VerificationReport`
    """
    report = VerificationReport("asymptotic-bracket")
    for n in n_values:
        result = exhaustive_optimal(n, jobs=jobs)
        lower, upper = max_mu_bounds(n)
        ok = lower - slack <= result.best_value <= upper + slack
        if not ok:
            _LOGGER.warning(
                f"Exhaustive optimum n={n} outside the bracket with slack "
                f"{slack}."
            )
        report.record(("exhaustive", n), ok, (n, result.best_value))
        value = format_ratio(result.best_value)
        report.confirm((n, value, f"{lower:.6f}", f"{upper:.6f}"))
    if three_broom_n is not None:
        evaluation = evaluate_three_broom(three_broom_n, three_broom_slack)
        report.record(
            ("three-broom", three_broom_n),
            evaluation["within_bracket"],
            (three_broom_n, float(evaluation["mu"])),
        )
        report.note(
            f"three-broom n={three_broom_n}: mu~{float(evaluation['mu']):.6f}"
            f" bounds [{evaluation['lower']:.6f}, {evaluation['upper']:.6f}]"
        )
    return report
