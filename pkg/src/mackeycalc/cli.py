"""Command-line entry point.

Usage:
    mackeycalc catalog [--group K4]
    mackeycalc show --group K4 --coeff "phi*_LDR(F2)"
    mackeycalc burnside --group C2
    mackeycalc norm --group K4 --from e
    mackeycalc quotient --group C2 --ideal C2:2
    mackeycalc fixedpoints --group K4 --norm e --at L
    mackeycalc bredon --group K4 --coeff F2 --rho-bar 3 --degree 3
    mackeycalc chart --coeff NeK_F2 --x=-8..8 --y=-5..5 --out charts/NeK_F2
    mackeycalc c2chart --coeff F2 --x=-4..4 --y=-4..4
    mackeycalc identify diagram.json
    mackeycalc hilbert --x 0..6 --y=-6..-1
    mackeycalc crosscheck --x 0..6 --y=-6..-1
    mackeycalc validate
"""

import argparse
import sys
from collections.abc import Callable
from pathlib import Path

from mackeycalc.algebra.grouptab import get_table
from mackeycalc.bredon.cells import RepDegree
from mackeycalc.bredon.chart import ChartManifest, chart
from mackeycalc.bredon.homology import cohomology, homology
from mackeycalc.charts.cache import ChartCache
from mackeycalc.charts.renderer import render_chart, render_green, render_lewis, render_tambara
from mackeycalc.common import get_logger
from mackeycalc.common.config import get_settings
from mackeycalc.common.errors import InfiniteLevelError
from mackeycalc.common.logging import configure_logging
from mackeycalc.gradedring.annotations import chart_annotations
from mackeycalc.gradedring.crosscheck import cross_check
from mackeycalc.gradedring.presentation import basis_table, hilbert
from mackeycalc.gradedring.reference import subring_violations
from mackeycalc.mackey import catalog
from mackeycalc.mackey.change import geometric_fixed
from mackeycalc.mackey.functor import MackeyFunctor, validate
from mackeycalc.mackey.identify import identify
from mackeycalc.mackey.serialize import dumps, loads
from mackeycalc.tambara import serialize as tambara_serialize
from mackeycalc.tambara.burnside import burnside
from mackeycalc.tambara.green import TambaraFunctor, green_geometric_fixed
from mackeycalc.tambara.ideals import ideal_generate, quotient
from mackeycalc.tambara.norms import norm_constant_f2

log = get_logger(__name__)


class UnknownCoefficientError(ValueError):
    def __init__(self, group: str, name: str):
        self.group = group
        self.name = name
        super().__init__(f"Unknown coefficient: {name}. Available for {group}: {catalog.list_entries(group)}")


# =============================================================================
# Argument parsing helpers
# =============================================================================


def parse_range(text: str) -> tuple[int, int]:
    """'-8..8' -> (-8, 8); a single integer is a one-point range."""
    lo, sep, hi = text.partition("..")
    try:
        bounds = (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"Invalid range: {text}. Expected LO..HI") from None
    if bounds[0] > bounds[1]:
        raise argparse.ArgumentTypeError(f"Empty range: {text}")
    return bounds


def parse_signs(text: str) -> dict[str, int]:
    """'L=1,D=2' -> {'L': 1, 'D': 2}."""
    signs: dict[str, int] = {}
    for part in filter(None, text.split(",")):
        sub, sep, mult = part.partition("=")
        if not sep:
            raise ValueError(f"Invalid sign multiplicity: {part}. Expected SUB=N")
        signs[sub.strip()] = int(mult)
    return signs


def parse_ideal(t: TambaraFunctor, specs: list[str]) -> list[tuple[str, tuple[int, ...]]]:
    """Ideal generators 'SUB:k' (the scalar k) or 'SUB:c0,c1,...' (coordinates); 'zero' adds nothing."""
    gens = []
    for spec in specs:
        if spec == "zero":
            continue
        sub, sep, value = spec.partition(":")
        if not sep or sub not in t.table.subgroups:
            raise ValueError(f"Unknown ideal generator: {spec}. Expected SUB:VALUE with SUB in {list(t.table.subgroups)}")
        coords = [int(c) for c in value.split(",")]
        gens.append((sub, tuple(coords) if len(coords) > 1 else t.green.scalar(sub, coords[0])))
    return gens


def resolve_coefficient(group: str, name: str) -> MackeyFunctor:
    """Catalog name first, then a Lewis-diagram file."""
    if name in catalog.list_entries(group):
        return catalog.get_functor(group, name)
    path = Path(name)
    if path.suffix == ".json" and path.exists():
        m = loads(path.read_text())
        if m.table.group_id != group:
            raise ValueError(f"{path} is a functor over {m.table.group_id}, not {group}")
        return m
    raise UnknownCoefficientError(group, name)


def _write(path: Path, content: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(content)
    log.info("file_written", path=str(path), length=len(content))


# =============================================================================
# Commands
# =============================================================================


def cmd_catalog(args: argparse.Namespace) -> int:
    for group in [args.group] if args.group else ["e", "C2", "K4"]:
        for entry in catalog.entries(group):
            print(f"{group:3} {entry.name:28} {entry.description}")
    return 0


def cmd_show(args: argparse.Namespace) -> int:
    m = resolve_coefficient(args.group, args.coeff)
    print(dumps(m) if args.json else render_lewis(m), end="")
    return 0


def _print_tambara(t: TambaraFunctor, as_json: bool) -> None:
    print(tambara_serialize.dumps(t) if as_json else render_tambara(t), end="")


def cmd_burnside(args: argparse.Namespace) -> int:
    t = burnside(args.group).validate()
    _print_tambara(t, args.json)
    return 0


def cmd_norm(args: argparse.Namespace) -> int:
    t = norm_constant_f2(get_table(args.group), args.source).validate()
    _print_tambara(t, args.json)
    return 0


def cmd_quotient(args: argparse.Namespace) -> int:
    base = tambara_serialize.loads(Path(args.tambara).read_text()) if args.tambara else burnside(args.group)
    ideal = ideal_generate(base, parse_ideal(base, args.ideal))
    try:
        q = quotient(base, ideal, args.name)
    except InfiniteLevelError as e:
        log.error("quotient_infinite", level=e.level, divisors=e.divisors)
        print(f"error: {e}", file=sys.stderr)
        return 1
    _print_tambara(q.validate(), args.json)
    return 0


def cmd_fixedpoints(args: argparse.Namespace) -> int:
    if args.norm is not None:
        g = green_geometric_fixed(norm_constant_f2(get_table(args.group), args.norm), args.at)
        print(render_green(g.validate()), end="")
        return 0
    if args.coeff is None:
        raise ValueError("fixedpoints needs --coeff or --norm")
    m = geometric_fixed(resolve_coefficient(args.group, args.coeff), args.at)
    print(render_lewis(m), end="")
    return 1 if validate(m) else 0


def cmd_bredon(args: argparse.Namespace) -> int:
    m = resolve_coefficient(args.group, args.coeff)
    table = m.table
    if args.rho_bar is not None:
        v = RepDegree.rho_bar(table, args.rho_bar, args.trivial)
    else:
        v = RepDegree(args.trivial, parse_signs(args.signs or ""))
    compute = cohomology if args.cohomology else homology
    result = compute(v, m, args.degree)
    found = identify(result)
    print(f"{result.name} = {found.name}")
    print(render_lewis(result), end="")
    return 0


def _chart(args: argparse.Namespace, group: str) -> int:
    settings = get_settings()
    m = resolve_coefficient(group, args.coeff)
    cache = None
    if settings.cache_enabled and not args.no_cache:
        cache = ChartCache(args.cache_dir or settings.cache_path)
    workers = args.workers or settings.chart_workers

    reference: ChartManifest | None = None
    if not args.no_shade and m.name != "F2":
        reference = chart(
            resolve_coefficient(group, "F2"), args.x, args.y, cache=cache, workers=workers
        )
    annotations = chart_annotations(m.name, args.x, args.y) if group == "K4" else []
    manifest = chart(
        m, args.x, args.y, shade_against=reference, cache=cache, workers=workers, annotations=annotations
    )

    if args.out is None:
        print(render_chart(manifest, "txt"), end="")
        return 0
    out = Path(args.out)
    _write(out.with_suffix(".json"), manifest.dumps())
    for fmt in args.format:
        _write(out.with_suffix(f".{fmt}"), render_chart(manifest, fmt))
    unidentified = [key for key, c in manifest.cells.items() if c.name == "unidentified"]
    if unidentified:
        log.warning("chart_unidentified_cells", cells=sorted(unidentified))
    return 0


def cmd_chart(args: argparse.Namespace) -> int:
    return _chart(args, args.group)


def cmd_c2chart(args: argparse.Namespace) -> int:
    return _chart(args, "C2")


def cmd_identify(args: argparse.Namespace) -> int:
    m = loads(Path(args.file).read_text())
    problems = validate(m)
    if problems:
        log.error("invalid_functor", file=args.file, violations=problems[:5])
        return 1
    found = identify(m)
    print(found.name)
    return 0 if found.identified else 1


def cmd_hilbert(args: argparse.Namespace) -> int:
    table = basis_table(args.x, args.y)
    for y in range(args.y[1], args.y[0] - 1, -1):
        for x in range(args.x[0], args.x[1] + 1):
            monomials = table.get((x, y), [])
            if monomials or args.all:
                print(f"({x}, {y}) dim {hilbert(x, y)}: {', '.join(monomials)}")
    return 0


def cmd_crosscheck(args: argparse.Namespace) -> int:
    report = cross_check(args.x, args.y)
    for (x, y), (ring, bredon) in sorted(report.dimensions.items()):
        mark = "" if ring == bredon else "  MISMATCH"
        print(f"({x}, {y}) ring {ring} bredon {bredon}{mark}")
    if not report.ok:
        log.error("crosscheck_failed", mismatches=report.mismatches)
        return 1
    return 0


def cmd_validate(args: argparse.Namespace) -> int:
    failures: list[str] = []
    for group in ["e", "C2", "K4"]:
        for entry in catalog.entries(group):
            problems = validate(entry.value)
            if problems:
                failures.append(f"{group}/{entry.name}: {problems[0]}")
        failures += [f"burnside({group}): {p}" for p in burnside(group).violations()]
    for table, sub in [(get_table("C2"), "e"), (get_table("K4"), "e"), (get_table("K4"), "D")]:
        failures += [f"norm {sub}->{table.group_id}: {p}" for p in norm_constant_f2(table, sub).violations()]
    failures += [f"gradedring: {p}" for p in subring_violations()]
    for failure in failures:
        print(failure)
    log.info("validation_finished", failures=len(failures))
    return 1 if failures else 0


# =============================================================================
# Parser
# =============================================================================


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mackeycalc", description="Mackey and Tambara functor calculator")
    parser.add_argument("--json-logs", action="store_true", help="Emit JSON logs on stderr")
    parser.add_argument("--log-level", default=None, help="Log level (default from settings)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Callable[[argparse.Namespace], int], summary: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=summary)
        p.set_defaults(handler=handler)
        return p

    p = add("catalog", cmd_catalog, "List named Mackey functors")
    p.add_argument("--group", choices=["e", "C2", "K4"])

    p = add("show", cmd_show, "Print a catalog entry or Lewis-diagram file")
    p.add_argument("--group", default="K4", choices=["e", "C2", "K4"])
    p.add_argument("--coeff", required=True)
    p.add_argument("--json", action="store_true")

    p = add("burnside", cmd_burnside, "Print the Burnside Tambara functor")
    p.add_argument("--group", default="K4", choices=["e", "C2", "K4"])
    p.add_argument("--json", action="store_true")

    p = add("norm", cmd_norm, "Print the norm of the constant F2 from a subgroup")
    p.add_argument("--group", default="K4", choices=["C2", "K4"])
    p.add_argument("--from", dest="source", required=True, help="Subgroup the norm starts from")
    p.add_argument("--json", action="store_true")

    p = add("quotient", cmd_quotient, "Quotient a Tambara functor by the ideal generated by elements")
    p.add_argument("--group", default="C2", choices=["e", "C2", "K4"])
    p.add_argument("--tambara", help="Tambara document to quotient (default: the Burnside functor)")
    p.add_argument("--ideal", nargs="+", required=True, help="Generators SUB:k or SUB:c0,c1,..., or 'zero'")
    p.add_argument("--name", default=None)
    p.add_argument("--json", action="store_true")

    p = add("fixedpoints", cmd_fixedpoints, "Geometric fixed points of a Mackey functor or a norm")
    p.add_argument("--group", default="K4", choices=["C2", "K4"])
    p.add_argument("--coeff")
    p.add_argument("--norm", help="Use the norm of F2 from this subgroup instead of --coeff")
    p.add_argument("--at", required=True, help="Subgroup whose geometric fixed points are taken")

    p = add("bredon", cmd_bredon, "Bredon homology or cohomology of a representation sphere")
    p.add_argument("--group", default="K4", choices=["e", "C2", "K4"])
    p.add_argument("--coeff", required=True)
    p.add_argument("--rho-bar", type=int, help="Multiple of the reduced regular representation")
    p.add_argument("--signs", help="Sign multiplicities, e.g. L=1,D=-1")
    p.add_argument("--trivial", type=int, default=0)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--cohomology", action="store_true")

    for name, handler in [("chart", cmd_chart), ("c2chart", cmd_c2chart)]:
        p = add(name, handler, "Chart of pi_{x + y rho_bar} of the Eilenberg-Mac Lane spectrum")
        if name == "chart":
            p.add_argument("--group", default="K4", choices=["C2", "K4"])
        p.add_argument("--coeff", required=True)
        p.add_argument("--x", type=parse_range, required=True)
        p.add_argument("--y", type=parse_range, required=True)
        p.add_argument("--out", help="Output path stem; writes .json plus each --format")
        p.add_argument("--format", nargs="*", default=["txt", "svg"], choices=["txt", "svg"])
        p.add_argument("--cache-dir", help="Override MACKEYCALC_CACHE_DIR")
        p.add_argument("--no-cache", action="store_true")
        p.add_argument("--no-shade", action="store_true", help="Skip shading against the constant F2 chart")
        p.add_argument("--workers", type=int, default=None)

    p = add("identify", cmd_identify, "Identify a Lewis-diagram file against the catalog")
    p.add_argument("file")

    p = add("hilbert", cmd_hilbert, "Basis monomials of the positive-cone ring")
    p.add_argument("--x", type=parse_range, required=True)
    p.add_argument("--y", type=parse_range, required=True)
    p.add_argument("--all", action="store_true", help="Also print zero bidegrees")

    p = add("crosscheck", cmd_crosscheck, "Compare ring dimensions with the constant F2 chart")
    p.add_argument("--x", type=parse_range, required=True)
    p.add_argument("--y", type=parse_range, required=True)

    add("validate", cmd_validate, "Check every catalog entry, Burnside functor and norm")
    return parser


def main(argv: list[str] | None = None) -> None:
    """CLI entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = get_settings()
    configure_logging(
        json_output=args.json_logs or settings.json_logs,
        level=args.log_level or settings.log_level,
    )
    log.debug("command_started", command=args.command)

    try:
        code = args.handler(args)
    except UnknownCoefficientError as e:
        log.error("unknown_coefficient", group=e.group, name=e.name)
        print(f"error: {e}", file=sys.stderr)
        for name in catalog.list_entries(e.group):
            print(f"  {name}", file=sys.stderr)
        sys.exit(1)
    except (ValueError, KeyError, OSError) as e:
        log.error("command_failed", command=args.command, error=str(e))
        print(f"error: {e}", file=sys.stderr)
        sys.exit(1)

    if code:
        sys.exit(code)


if __name__ == "__main__":
    main()
