"""Command-line driver.

Exit codes follow one convention everywhere: 0 means the computation
succeeded (and, for yes/no questions, the answer is yes); 1 means the
queried property is false and a counterexample or explanation was
printed; 2 means the invocation or an input file was malformed, with a
single-line diagnostic on stderr naming the file, line, and cause.

The seed argument of every subcommand is either a catalog key (which
brings along that example's naming convention, presentation, and
reference exploration) or the path of a seed file.  All output is
deterministic: same invocation, same bytes.
"""

from __future__ import annotations

import argparse
import sys

from .catalog import CATALOG_KEYS, catalog
from .exact import format_gaussian
from .forms import (
    FormFileError,
    check_invariance,
    emit_form_file,
    form_degree,
    form_difference,
    forms_equal,
    parse_form_file,
    reduce_to_chart,
    wp_form,
)
from .laurent import Inhomogeneous
from .regularity import (
    AlgebraPoint,
    HypothesisViolated,
    PointFileError,
    VanishingPattern,
    constant_vanishing_oracle,
    deep_witness,
    find_regularizing_seed,
    parse_point_file,
    point_vanishing_oracle,
    propagate_point,
    regularize_at,
    tangent_dimension,
    vanishing_pattern,
)
from .seeds import (
    MutationArithmeticError,
    NotAcyclic,
    NotFoundWithinBudget,
    SeedFileError,
    acyclic_presentation,
    emit_seed_file,
    explore,
    find_directed_cycle,
    find_acyclic_seed,
    parse_seed_file,
)


class _UsageError(Exception):
    """Bad invocation or bad input discovered after argparse."""


def _read_file(path):
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def _resolve_seed(token):
    """A seed argument is a catalog key or a seed-file path.  Returns
    (seed, catalog-entry-or-None)."""
    if token in CATALOG_KEYS:
        entry = catalog(token)
        return entry.seed, entry
    try:
        with open(token, encoding="utf-8") as handle:
            text = handle.read()
    except OSError:
        raise _UsageError(
            f"{token!r} is not a catalog key ({', '.join(CATALOG_KEYS)}) "
            f"and not a readable seed file") from None
    return parse_seed_file(text, token), None


def _load_point(path):
    return parse_point_file(_read_file(path), path)


def _emit_point(assignment):
    return "".join(f"{name} = {format_gaussian(value)}\n"
                   for name, value in assignment.items())


def _cycle_text(cycle):
    return " -> ".join(str(i) for i in cycle)


def _parse_index_list(text, what):
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise _UsageError(
            f"{what} must be a comma-separated integer list, got {text!r}"
        ) from None


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_catalog(args):
    try:
        entry = catalog(args.key)
    except KeyError as exc:
        raise _UsageError(exc.args[0]) from None
    if args.form is not None:
        if args.form not in entry.forms:
            raise _UsageError(
                f"entry {args.key!r} has no form {args.form!r} "
                f"(available: {', '.join(sorted(entry.forms)) or 'none'})")
        sys.stdout.write(emit_form_file(entry.forms[args.form]))
        return 0
    if args.point is not None:
        if args.point not in entry.points:
            raise _UsageError(
                f"entry {args.key!r} has no point {args.point!r} "
                f"(available: {', '.join(sorted(entry.points)) or 'none'})")
        sys.stdout.write(_emit_point(entry.points[args.point].assignment))
        return 0
    sys.stdout.write(emit_seed_file(entry.seed))
    return 0


def _cmd_mutate(args):
    seed, entry = _resolve_seed(args.seed)
    namer = entry.namer if entry is not None else None
    current = seed
    for k in args.directions:
        if not (1 <= k <= current.matrix.m):
            raise _UsageError(
                f"direction {k} outside 1..{current.matrix.m}")
        name = namer(current, k) if namer is not None else None
        try:
            current = current.mutated(k, name)
        except MutationArithmeticError as exc:
            print(f"mutation failed: {exc}")
            return 1
    sys.stdout.write(emit_seed_file(current))
    return 0


def _cmd_explore(args):
    seed, entry = _resolve_seed(args.seed)
    namer = entry.namer if entry is not None else None
    result = explore(seed, max_seeds=args.max_seeds, max_depth=args.max_depth,
                     namer=namer)
    print(f"clusters {len(result.seeds)}")
    print(f"variables {result.n_variables}")
    print(f"truncated {'yes' if result.truncated else 'no'}")
    for no, s in enumerate(result.seeds, 1):
        print(f"cluster {no}: {' '.join(s.names)}")
    initial = set(seed.names)
    for name, expansion in result.variables.items():
        if name not in initial:
            print(f"variable {name} = {expansion.to_expr()}")
    return 0


def _cmd_acyclic(args):
    seed, _ = _resolve_seed(args.seed)
    if args.search is None:
        cycle = find_directed_cycle(seed.matrix)
        if cycle is None:
            print("acyclic")
            return 0
        print(f"cycle: {_cycle_text(cycle)}")
        return 1
    try:
        found = find_acyclic_seed(seed, max_seeds=args.search)
    except NotFoundWithinBudget as exc:
        print(f"no acyclic seed found: {exc}")
        return 1
    sys.stdout.write(emit_seed_file(found))
    return 0


def _present(seed, entry):
    if entry is not None and entry.presentation is not None:
        return entry.presentation
    return acyclic_presentation(seed)


def _cmd_present(args):
    seed, entry = _resolve_seed(args.seed)
    try:
        pres = _present(seed, entry)
    except NotAcyclic as exc:
        print(f"not acyclic: cycle {_cycle_text(exc.cycle)}")
        return 1
    print(f"generators {' '.join(pres.table.names)}")
    if pres.frozen_names:
        print(f"frozen {' '.join(pres.frozen_names)}")
    for rel in pres.relations:
        print(f"relation {rel.to_expr()}")
    return 0


def _cmd_wp(args):
    seed, _ = _resolve_seed(args.seed)
    sys.stdout.write(emit_form_file(wp_form(seed)))
    return 0


def _cmd_equal(args):
    seed, _ = _resolve_seed(args.seed)
    forms = []
    for path in (args.form_a, args.form_b):
        parsed = parse_form_file(_read_file(path), seed, path)
        forms.append(reduce_to_chart(parsed, seed))
    if forms_equal(forms[0], forms[1]):
        print("equal")
        return 0
    print("not equal")
    diff = form_difference(forms[0], forms[1])
    print("difference (first - second):")
    sys.stdout.write(emit_form_file(diff))
    return 1


def _cmd_invariance(args):
    seed, _ = _resolve_seed(args.seed)
    if args.depth < 1:
        raise _UsageError("--depth must be at least 1")
    report = check_invariance(seed, args.depth)
    failures = 0
    for ks, ok in report:
        label = ",".join(str(k) for k in ks)
        print(f"{label} {'pass' if ok else 'FAIL'}")
        failures += 0 if ok else 1
    if failures:
        print(f"{failures} of {len(report)} sequences fail")
        return 1
    print(f"all {len(report)} sequences pass")
    return 0


def _pattern_from_args(args, seed):
    if args.pattern is not None:
        indices = _parse_index_list(args.pattern, "--pattern")
        try:
            return VanishingPattern(seed, frozenset(indices)), None
        except ValueError as exc:
            raise _UsageError(str(exc)) from None
    values = _load_point(args.point)
    point = AlgebraPoint(values)
    try:
        return vanishing_pattern(point, seed), point
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _cmd_regularize(args):
    seed, entry = _resolve_seed(args.seed)
    namer = entry.namer if entry is not None else None
    pattern, point = _pattern_from_args(args, seed)
    if args.search is None:
        try:
            form = regularize_at(seed, pattern, namer=namer)
        except HypothesisViolated as exc:
            a, b = exc.pair
            print(f"hypothesis violated: vanishing variables {a} and {b} "
                  f"are exchange-adjacent (B_{a}{b} = {seed.matrix.b(a, b)})")
            return 1
        sys.stdout.write(emit_form_file(form))
        return 0
    oracle = (point_vanishing_oracle(point) if point is not None
              else constant_vanishing_oracle(pattern.indices))
    try:
        found, form = find_regularizing_seed(
            seed, oracle, max_seeds=args.search, namer=namer)
    except NotFoundWithinBudget as exc:
        print(f"no regularizing seed found: {exc}")
        return 1
    sys.stdout.write(emit_seed_file(found))
    print("form:")
    sys.stdout.write(emit_form_file(form))
    return 0


def _cmd_tangent(args):
    seed, entry = _resolve_seed(args.seed)
    try:
        pres = _present(seed, entry)
    except NotAcyclic as exc:
        print(f"not acyclic: cycle {_cycle_text(exc.cycle)}")
        return 1
    values = _load_point(args.point)
    point = AlgebraPoint(values, pres)
    try:
        dim = tangent_dimension(pres, point)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    print(dim)
    return 0


def _cmd_grade(args):
    seed, entry = _resolve_seed(args.seed)
    if args.weights is not None:
        ws = _parse_index_list(args.weights, "--weights")
        if len(ws) != len(seed.names):
            raise _UsageError(
                f"--weights needs {len(seed.names)} entries "
                f"(one per variable), got {len(ws)}")
        weights = dict(zip(seed.names, ws))
    elif entry is not None:
        weights = dict(entry.weights)
    else:
        weights = {name: 1 for name in seed.names}
    form = wp_form(seed)
    try:
        degree = form_degree(form, weights)
    except Inhomogeneous as exc:
        print(f"inhomogeneous: {exc}")
        return 1
    except ValueError as exc:
        print(str(exc))
        return 1
    print(degree)
    return 0


def _cmd_deep(args):
    seed, entry = _resolve_seed(args.seed)
    if entry is not None:
        exploration = entry.exploration
    else:
        if args.max_seeds is None:
            raise _UsageError("--max-seeds is required for file seeds")
        exploration = explore(seed, max_seeds=args.max_seeds)
    values = _load_point(args.point)
    point = AlgebraPoint(values, exploration)
    full, issues = propagate_point(point, exploration)
    if issues:
        raise _UsageError(f"invalid point: {issues[0]}")
    report = deep_witness(full, exploration)
    for no, (s, status) in enumerate(zip(exploration.seeds,
                                         report.cluster_status), 1):
        print(f"cluster {no} ({' '.join(s.names)}): {status}")
    print(f"verdict {report.verdict}")
    return 0 if report.verdict in ("deep", "deep-relative") else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="clusterwp",
        description="Exact mutation, 2-form, and regularity computations "
                    "on cluster charts.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="emit a built-in example")
    p.add_argument("key", help=f"one of: {', '.join(CATALOG_KEYS)}")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--form", metavar="NAME",
                       help="emit this named form instead of the seed")
    group.add_argument("--point", metavar="NAME",
                       help="emit this named point instead of the seed")
    p.set_defaults(func=_cmd_catalog)

    p = sub.add_parser("mutate", help="mutate a seed along directions")
    p.add_argument("seed")
    p.add_argument("directions", nargs="+", type=int, metavar="k")
    p.set_defaults(func=_cmd_mutate)

    p = sub.add_parser("explore", help="breadth-first mutation census")
    p.add_argument("seed")
    p.add_argument("--max-seeds", type=int, default=1000)
    p.add_argument("--max-depth", type=int, default=16)
    p.set_defaults(func=_cmd_explore)

    p = sub.add_parser("acyclic",
                       help="test acyclicity, or search for an acyclic seed")
    p.add_argument("seed")
    p.add_argument("--search", type=int, metavar="N",
                   help="search up to N seeds for an acyclic one")
    p.set_defaults(func=_cmd_acyclic)

    p = sub.add_parser("present",
                       help="generators and exchange relations (acyclic only)")
    p.add_argument("seed")
    p.set_defaults(func=_cmd_present)

    p = sub.add_parser("wp", help="the chart 2-form of a seed")
    p.add_argument("seed")
    p.set_defaults(func=_cmd_wp)

    p = sub.add_parser("equal",
                       help="compare two form files over a seed's chart")
    p.add_argument("seed")
    p.add_argument("form_a")
    p.add_argument("form_b")
    p.set_defaults(func=_cmd_equal)

    p = sub.add_parser("invariance",
                       help="pull back mutated charts' forms and compare")
    p.add_argument("seed")
    p.add_argument("--depth", type=int, required=True)
    p.set_defaults(func=_cmd_invariance)

    p = sub.add_parser("regularize",
                       help="regularizing rewrite at a vanishing pattern")
    p.add_argument("seed")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--point", metavar="FILE",
                       help="read the vanishing pattern off a point file")
    group.add_argument("--pattern", metavar="I,J,...",
                       help="vanishing chart indices")
    p.add_argument("--search", type=int, metavar="N",
                   help="search up to N seeds for a chart where the "
                        "rewrite applies")
    p.set_defaults(func=_cmd_regularize)

    p = sub.add_parser("tangent",
                       help="tangent dimension at a presentation point")
    p.add_argument("seed")
    p.add_argument("--point", metavar="FILE", required=True)
    p.set_defaults(func=_cmd_tangent)

    p = sub.add_parser("grade", help="weighted degree of the chart 2-form")
    p.add_argument("seed")
    p.add_argument("--weights", metavar="W1,...",
                   help="integer weight per variable (default: all ones)")
    p.set_defaults(func=_cmd_grade)

    p = sub.add_parser("deep",
                       help="deep-point witness over an exploration")
    p.add_argument("seed")
    p.add_argument("--point", metavar="FILE", required=True)
    p.add_argument("--max-seeds", type=int, metavar="N",
                   help="exploration budget for file seeds (catalog seeds "
                        "use their reference exploration)")
    p.set_defaults(func=_cmd_deep)

    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SeedFileError, FormFileError, PointFileError, _UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
