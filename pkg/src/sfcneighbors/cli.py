"""Command line interface: ``sfc <command> ...``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import RegularityError, SFCError
from .neighbor_engine import (
    build_multilevel,
    dumps_multilevel,
    find_neighbor,
    make_node,
    neighbor,
    neighbor_multilevel,
)
from .optimized_curves import hilbert2d_state_fast
from .render import RenderOptions, render_svg
from .spec_model import CATALOG, builtin, canonical_name, load_spec
from .table_gen import dumps_tables, state_group, verify_spec
from .table_gen.tables import compile_spec
from .tree_core import AlgebraicNode, compute_state, coords_to_position, position_to_coords

CLAUSES = ("P1'", "P2'", "R1'", "R2'", "R3'")


class UsageError(SFCError):
    pass


def _spec(args):
    path = getattr(args, "spec", None)
    name = getattr(args, "curve_flag", None) or args.curve
    if path and name:
        raise UsageError("give either a curve name or --spec FILE, not both")
    if not path and name and (name.endswith(".json") or Path(name).is_file()):
        path = name
    if path:
        return load_spec(Path(path).read_text())
    if not name:
        raise UsageError("give a curve name or --spec FILE")
    return builtin(name)


def _write(text: str, out):
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _tables(spec):
    return compile_spec(spec, strict=True)


def cmd_tables(args):
    spec = _spec(args)
    tables = _tables(spec)
    text = dumps_tables(tables)
    if args.depth > 1:
        text += dumps_multilevel(build_multilevel(tables, args.depth))
    _write(text, args.out)
    return 0


def cmd_verify(args):
    spec = _spec(args)
    result = verify_spec(spec)
    print(f"curve {spec.name or '-'}")
    for clause in CLAUSES:
        print(f"{clause} {result.report.verdict(clause)}")
    if result.tables is not None:
        print(f"palindrome {'true' if result.tables.palindrome else 'false'}")
    else:
        print("palindrome skipped")
    for v in result.report.violations[: args.max_violations]:
        print(f"  {v}")
    extra = len(result.report.violations) - args.max_violations
    if extra > 0:
        print(f"  ... {extra} more")
    return 0 if result.report.ok else 1


def cmd_group(args):
    spec = _spec(args)
    group = state_group(spec)
    if group is None:
        print("non-invertible: some child-state map is not a bijection")
        return 1
    print(f"order {group.order}")
    print(f"abelian {'true' if group.is_abelian else 'false'}")
    print("generators " + " ".join(group.cycles(g) for g in group.generators))
    print("elements " + " ".join(group.element_strings()))
    return 0


def _node_text(tables, position, state):
    if position is None or position < 0:
        return "none"
    return f"{position} {tables.state_names[state]}"


def cmd_neighbor(args):
    spec = _spec(args)
    tables = _tables(spec)
    f = tables.facet_spec.parse_facet(args.facet)
    if args.assume_state is not None:
        s = tables.state_index(args.assume_state)
        w = neighbor(tables, AlgebraicNode(args.level, args.position, s), f)
        print("none" if w is None else _node_text(tables, w.position, w.state))
        return 0
    if args.depth > 1:
        mlt = build_multilevel(tables, args.depth)
        w = neighbor_multilevel(mlt, make_node(tables, args.level, args.position), f)
        print("none" if w is None else _node_text(tables, w.position, w.state))
        return 0
    position, state = find_neighbor(tables, args.level, args.position, f)
    print(_node_text(tables, position, state))
    return 0


def cmd_state(args):
    spec = _spec(args)
    if args.fast and canonical_name(spec.name) == "hilbert2d_global":
        s = hilbert2d_state_fast(args.level, args.position)
    else:
        s = compute_state(spec, args.level, args.position)
    print(spec.state_name(s))
    return 0


def cmd_coords(args):
    spec = _spec(args)
    if args.coords is not None:
        print(coords_to_position(spec, args.level, args.coords))
        return 0
    if args.position is None:
        raise UsageError("give a position or --coords")
    print(" ".join(map(str, position_to_coords(spec, args.level, args.position))))
    return 0


def cmd_render(args):
    spec = _spec(args)
    base = spec.branching if args.base == "b" else int(args.base)
    options = RenderOptions(
        level=args.level,
        show_labels=args.labels,
        label_base=base,
        curve_level_offset=args.offset,
        canvas=args.size,
    )
    _write(render_svg(spec, options), args.out)
    return 0


def cmd_bench(args):
    from .bench import bench_curve, parse_levels, rows_to_csv

    if args.samples < 100_000 and not args.allow_small:
        raise UsageError("--samples must be at least 100000 (use --allow-small for quick runs)")
    if args.reps < 3 and not args.allow_small:
        raise UsageError("--reps must be at least 3")
    rows = list(bench_curve(args.curve, args.kernel, parse_levels(args.levels), args.samples, args.reps,
                            args.depth, args.seed))
    _write(rows_to_csv(rows), args.out)
    return 0


def _add_source(p, flags=False):
    """Curve argument: builtin name or JSON spec path; ``flags`` adds --curve/--spec."""
    if flags:
        p.add_argument("curve", nargs="?", help="builtin curve name or JSON spec file")
        p.add_argument("--curve", dest="curve_flag", help="builtin curve name")
        p.add_argument("--spec", help="JSON specification file")
    else:
        p.add_argument("curve", help="builtin curve name or JSON spec file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sfc", description="Space-filling curve neighbor tables and queries.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tables", help="compile and print lookup tables")
    _add_source(p, flags=True)
    p.add_argument("--depth", "-K", type=int, default=1, help="also emit K-level tables")
    p.add_argument("--out", "-o", help="output file (default stdout)")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("verify", help="check regularity clauses and the palindrome property")
    _add_source(p, flags=True)
    p.add_argument("--max-violations", type=int, default=10)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("group", help="print the group generated by the child-state maps")
    _add_source(p, flags=True)
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("neighbor", help="neighbor of a node across a facet")
    _add_source(p)
    p.add_argument("level", type=int)
    p.add_argument("position", type=int)
    p.add_argument("facet", help="facet number or name (left, right, down, up, ...)")
    p.add_argument("--assume-state", help="run the query with this state instead of the true one")
    p.add_argument("--depth", "-K", type=int, default=1, help="use K-level tables")
    p.set_defaults(func=cmd_neighbor)

    p = sub.add_parser("state", help="state of a node")
    _add_source(p)
    p.add_argument("level", type=int)
    p.add_argument("position", type=int)
    p.add_argument("--fast", action="store_true", help="bit-count method for the 2D Hilbert curve")
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("coords", help="grid coordinates of a position, or the reverse")
    _add_source(p)
    p.add_argument("level", type=int)
    p.add_argument("position", type=int, nargs="?")
    p.add_argument("--coords", type=int, nargs="+", help="coordinates to convert to a position")
    p.set_defaults(func=cmd_coords)

    p = sub.add_parser("render", help="write an SVG picture of a 2D curve")
    _add_source(p)
    p.add_argument("level", type=int)
    p.add_argument("--labels", choices=("none", "positions", "states"), default="none")
    p.add_argument("--base", default="10", help="label base: 10 or b")
    p.add_argument("--offset", type=int, choices=(0, 1), default=0, help="draw the curve this many levels finer")
    p.add_argument("--size", type=int, default=512)
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("bench", help="time neighbor queries; prints CSV")
    p.add_argument("curve")
    p.add_argument("--kernel", choices=("general", "iterative", "multilevel", "fast"), default="general")
    p.add_argument("--levels", default="5..30")
    p.add_argument("--samples", "-n", type=int, default=5_000_000)
    p.add_argument("--reps", "-r", type=int, default=15)
    p.add_argument("--depth", "-K", type=int, default=2, help="table depth for the multilevel kernel")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--allow-small", action="store_true", help="permit fewer samples or reps")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_bench)

    sub.add_parser("list", help="list builtin curves").set_defaults(func=cmd_list)
    return parser


def cmd_list(args):
    for name in sorted(CATALOG):
        print(name)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except RegularityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except UsageError as exc:
        parser.error(str(exc))
    except (SFCError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
