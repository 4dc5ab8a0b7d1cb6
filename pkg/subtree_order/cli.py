"""Command-line front end.

Exit codes: 0 on success, 1 when a check fails or a file cannot be read or
written, 2 on usage errors.  Rationals are printed exactly, followed by a
decimal approximation.
"""
import argparse
import logging
import sys
from fractions import Fraction
from . import closed_forms, counting, families, search, verify
from .general import format_ratio
from .tree import RootedTree, read_tree, write_tree


_LOGGER = logging.getLogger(__name__)
EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
FAMILY_PARAMETERS = {
    "path": ("n",),
    "star": ("n",),
    "broom": ("a", "b"),
    "double-broom": ("n", "s"),
    "caterpillar": ("ell", "m"),
    "three-broom": ("n",),
}
VERIFY_RANGES = {
    "lemma1": (None, verify.BROOM_MAXIMIZER_NMAX),
    "proposition": (None, None),
    "no-double-broom": verify.NO_DOUBLE_BROOM_RANGE,
    "properties": (None, verify.PROPERTY_NMAX),
    "bracket": (16, 20),
}
VERIFY_ALIASES = {
    "broom-maximizers": "lemma1",
    "broom-merge": "proposition",
}


def _integer_list(text) -> list:
    """Parse ``1,2,3``."""
    try:
        return [int(item) for item in text.split(",") if item.strip()]
    except ValueError as exc:
        err = f"Expected comma-separated integers, got {text!r}."
        raise argparse.ArgumentTypeError(err) from exc


def _summary(aggregate, n) -> str:
    return (
        f"sigma={aggregate.count} tau={aggregate.total_order} "
        f"mu={format_ratio(aggregate.mean)} "
        f"density={format_ratio(aggregate.mean / n)}"
    )


def _render(value) -> str:
    """Text form of a diagnostics value; rationals print exactly."""
    if isinstance(value, Fraction):
        return format_ratio(value)
    if isinstance(value, float):
        return f"{value:.6f}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_render(item) for item in value) + "]"
    return str(value)


def _compute(args) -> int:
    tree = read_tree(args.tree)
    print(_summary(counting.global_counts(tree), tree.n))
    if args.root is not None:
        rooted = counting.rooted_counts(RootedTree(tree, args.root))
        print(
            f"root={args.root} s={rooted.count} t={rooted.total_order} "
            f"local_mean={format_ratio(rooted.mean)} "
            f"defect={format_ratio(tree.n - rooted.mean)}"
        )
    if args.set is not None:
        mean = counting.set_mean(tree, args.set)
        members = ",".join(str(v) for v in args.set)
        print(f"set={members} mean={format_ratio(mean)}")
    if args.all:
        table = counting.per_vertex_table(tree)
        for row in table.itertuples(index=False):
            print(
                f"vertex={row.vertex} sigma_v={row.sigma_v} t_v={row.t_v} "
                f"local_mean={format_ratio(row.local_mean)} "
                f"central={row.in_central_part} core={row.in_core}"
            )
        for key, value in verify.diagnostics(tree).items():
            if key in ("n", "sigma", "tau", "mu", "density"):
                continue
            print(f"{key}={_render(value)}")
    return EXIT_OK


def _family_spec(args) -> families.FamilySpec:
    missing = [
        f"--{name}"
        for name in FAMILY_PARAMETERS[args.family]
        if getattr(args, name) is None
    ]
    if missing:
        err = f"Family {args.family} needs {' and '.join(missing)}."
        raise ValueError(err)
    if args.family == "path":
        return families.Path(args.n)
    if args.family == "star":
        return families.Star(args.n)
    if args.family == "broom":
        return families.Broom(args.a, args.b)
    if args.family == "double-broom":
        return families.DoubleBroom(args.n, args.s)
    if args.family == "caterpillar":
        return families.Caterpillar(args.ell, args.m, args.positions)
    return families.three_broom(args.n)


def _family(args) -> int:
    spec = _family_spec(args)
    tree = spec.build()
    print(f"family={spec}")
    print(_summary(counting.global_counts(tree), tree.n))
    if args.emit:
        write_tree(tree, args.emit)
        _LOGGER.info(f"Wrote {spec} to {args.emit}.")
    return EXIT_OK


def _search(args) -> int:
    if args.kind == "exhaustive":
        result = search.exhaustive_optimal(args.n, jobs=args.jobs)
        print(result)
        print(f"examined={result.trees_examined}")
    elif args.kind == "double-broom":
        leaves_per_end, aggregate, _ = search.best_double_broom(args.n)
        print(f"n={args.n} s={leaves_per_end} {_summary(aggregate, args.n)}")
    elif args.kind == "broom-local":
        handle, num_leaves, mean = search.best_broom_local(args.n)
        print(
            f"n={args.n} a={handle} b={num_leaves} "
            f"local_mean={format_ratio(mean)}"
        )
    else:
        result = search.best_caterpillar(args.n, range(0, args.kmax + 1))
        print(
            f"n={result.n} family={result.specs[0]} "
            f"mu={format_ratio(result.best_value)}"
        )
    return EXIT_OK


def _verify(args) -> int:
    check = VERIFY_ALIASES.get(args.check, args.check)
    low, high = VERIFY_RANGES[check]
    nmin = low if args.nmin is None else args.nmin
    nmax = high if args.nmax is None else args.nmax
    if check == "lemma1":
        report = verify.check_broom_maximizers(nmax)
    elif check == "proposition":
        grid = verify.MergeGrid(
            args.amax, args.bmax, args.cmax, args.dmax
        )
        report = verify.check_broom_merge(grid)
    elif check == "no-double-broom":
        report = verify.check_no_double_broom(nmin, nmax, jobs=args.jobs)
    elif check == "properties":
        report = verify.run_property_suite(nmax)
    else:
        report = verify.check_asymptotic_bracket(
            range(nmin, nmax + 1), args.three_broom_n, jobs=args.jobs
        )
    if args.records:
        print("\n".join(report.lines()))
    print(report)
    if check == "bracket":
        return EXIT_OK
    return EXIT_OK if report.passed else EXIT_FAILURE


def _asymptotics(args) -> int:
    if args.quantity == "bounds" and args.n is None:
        raise ValueError("Asymptotic bounds need --n.")
    if args.quantity == "f":
        print(f"f({args.x})={closed_forms.periodic_f(args.x):.6f}")
    elif args.quantity == "g":
        print(f"g({args.x})={closed_forms.periodic_g(args.x):.6f}")
    elif args.quantity == "g-minimum":
        location, value = closed_forms.g_minimum()
        print(f"argmin={location:.6f} min={value:.6f}")
    elif args.quantity == "bounds":
        lower, upper = closed_forms.max_mu_bounds(args.n)
        local = closed_forms.local_max_asymptotic(args.n)
        caterpillar = closed_forms.caterpillar_lower_bound(args.n)
        print(
            f"n={args.n} lower={lower:.6f} upper={upper:.6f} "
            f"local_max={local:.6f} caterpillar={caterpillar:.6f}"
        )
    elif args.n is None:
        value = closed_forms.bilateral_sum(args.parity)
        print(f"parity={args.parity} sum={value:.6f}")
    else:
        value = closed_forms.bilateral_sum(args.n)
        parity = "odd" if args.n % 2 else "even"
        print(f"k={args.n} parity={parity} sum={value:.6f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    """Argument parser for every subcommand."""
    parser = argparse.ArgumentParser(
        prog="subtree-order",
        description="Exact mean subtree order of trees.",
    )
    parser.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="logging level for messages on stderr",
    )
    workers = argparse.ArgumentParser(add_help=False)
    workers.add_argument(
        "--jobs",
        type=int,
        default=None,
        help="worker processes (default: all CPUs)",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    compute = commands.add_parser("compute", help="invariants of one tree")
    compute.add_argument("--tree", required=True, help="edge-list file")
    compute.add_argument("--root", type=int, help="report rooted counts")
    compute.add_argument(
        "--set", type=_integer_list, help="comma-separated vertex set"
    )
    compute.add_argument(
        "--all", action="store_true", help="per-vertex table and diagnostics"
    )
    compute.set_defaults(handler=_compute)

    family = commands.add_parser("family", help="build a family member")
    family.add_argument("family", choices=list(FAMILY_PARAMETERS))
    family.add_argument("--n", type=int, help="order")
    family.add_argument("--a", type=int, help="broom handle length")
    family.add_argument("--b", type=int, help="broom leaf count")
    family.add_argument("--s", type=int, help="leaves per double-broom end")
    family.add_argument("--ell", type=int, help="caterpillar stem edges")
    family.add_argument("--m", type=int, help="caterpillar end leaves")
    family.add_argument(
        "--positions",
        type=_integer_list,
        default=[],
        help="comma-separated support indices on the stem",
    )
    family.add_argument("--emit", help="write the tree to this file")
    family.set_defaults(handler=_family)

    finder = commands.add_parser(
        "search", parents=[workers], help="search for large means"
    )
    finder.add_argument(
        "kind",
        choices=["exhaustive", "double-broom", "broom-local", "caterpillar"],
    )
    finder.add_argument("--n", type=int, required=True, help="order")
    finder.add_argument(
        "--kmax",
        type=int,
        default=max(search.DEFAULT_K_RANGE),
        help="largest number of caterpillar support leaves",
    )
    finder.set_defaults(handler=_search)

    checker = commands.add_parser(
        "verify", parents=[workers], help="run a machine check"
    )
    checker.add_argument(
        "check", choices=list(VERIFY_RANGES) + list(VERIFY_ALIASES)
    )
    checker.add_argument("--nmin", type=int, help="smallest order")
    checker.add_argument("--nmax", type=int, help="largest order")
    checker.add_argument("--amax", type=int, default=8)
    checker.add_argument("--bmax", type=int, default=10)
    checker.add_argument("--cmax", type=int, default=8)
    checker.add_argument("--dmax", type=int, default=10)
    checker.add_argument(
        "--three-broom-n",
        type=int,
        default=verify.THREE_BROOM_ORDER,
        help="order of the three-broom construction (bracket only)",
    )
    checker.add_argument(
        "--records", action="store_true", help="print one line per case"
    )
    checker.set_defaults(handler=_verify)

    asymptotic = commands.add_parser(
        "asymptotics", help="evaluate asymptotic terms"
    )
    asymptotic.add_argument(
        "quantity",
        choices=["f", "g", "g-minimum", "bounds", "bilateral-sum"],
    )
    asymptotic.add_argument("--x", type=float, default=0.0)
    asymptotic.add_argument(
        "--n", type=int, help="order, or support count for bilateral-sum"
    )
    asymptotic.add_argument(
        "--parity", choices=["even", "odd"], default="odd"
    )
    asymptotic.set_defaults(handler=_asymptotics)
    return parser


def run(argv) -> int:
    """Parse arguments, dispatch, and map failures to exit codes.

    :param list argv:  arguments without the program name
    :returns:  exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=args.log_level, stream=sys.stderr)
    try:
        return args.handler(args)
    except ValueError as exc:
        _LOGGER.error(f"{exc}")
        return EXIT_USAGE
    except OSError as exc:
        _LOGGER.error(f"{exc}")
        return EXIT_FAILURE


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
