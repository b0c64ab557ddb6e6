"""
FocalFront - Command Line

    focalfront analyze SPEC --point U,V [--order N] [--json OUT]
    focalfront mesh SPEC --which f|focal --region u0,u1,v0,v1 --res NxM --out FILE
    focalfront trace SPEC --which f|focal --seed U,V --steps K --out FILE
    focalfront fixtures list | show NAME

SPEC is a surface file or fixture:NAME. Exit status: 0 clean, 2 when an
Unresolved verdict is present, 1 on error.
"""

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path

from focalfront import __version__
from focalfront.config import get_settings
from focalfront.errors import FocalFrontError
from focalfront.services.fixtures import fixture_entry, get_fixture, list_fixtures
from focalfront.services.mesh import export_mesh, write_mesh
from focalfront.services.reports import AnalysisRequest, dump_report, run_report, verdict_line
from focalfront.services.specfile import format_surface_spec, load_surface
from focalfront.services.tracing import trace_singular_curve, write_trace


def _pair(text: str, convert=Fraction) -> tuple:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise ValueError(f"expected 'U,V', got {text!r}")
    return convert(parts[0]), convert(parts[1])


def _region(text: str) -> tuple[float, float, float, float]:
    parts = [float(p) for p in text.split(",")]
    if len(parts) != 4:
        raise ValueError(f"expected 'u0,u1,v0,v1', got {text!r}")
    return tuple(parts)


def _resolution(text: str) -> tuple[int, int]:
    n, _, m = text.lower().partition("x")
    return int(n), int(m)


def _request(args: argparse.Namespace, outputs: set[str]) -> AnalysisRequest:
    surface = load_surface(args.spec)
    point = _pair(args.point) if getattr(args, "point", None) else None
    return AnalysisRequest(
        surface=surface,
        point=point,
        jet_order=args.order,
        eps_zero=args.eps_zero,
        eps_div=args.eps_div,
        outputs=frozenset(outputs),
    )


# =============================================================================
# Subcommands
# =============================================================================


def cmd_analyze(args: argparse.Namespace) -> int:
    outputs = {"report"} | ({"congruence-check"} if args.congruence else set())
    request = _request(args, outputs)
    settings = request.resolve_settings()
    document = run_report(request, settings)
    text = dump_report(document, settings)
    if args.json:
        Path(args.json).write_text(text, encoding="utf-8")
        print(verdict_line(document))
    else:
        sys.stdout.write(text)
    for error in document.errors:
        print(f"error: {error.provenance}: {error.message}", file=sys.stderr)
    return document.exit_status


def cmd_mesh(args: argparse.Namespace) -> int:
    request = _request(args, {"mesh"})
    mesh = export_mesh(request, _region(args.region), _resolution(args.res), args.which)
    path = write_mesh(mesh, args.out)
    print(f"wrote {len(mesh.vertices)} vertices, {len(mesh.faces)} faces to {path}")
    return 0


def cmd_trace(args: argparse.Namespace) -> int:
    request = _request(args, {"singular-curve"})
    seed = _pair(args.seed, float) if args.seed else None
    points = trace_singular_curve(request, args.which, seed, args.steps)
    path = write_trace(points, args.out)
    print(f"wrote {len(points)} vertices to {path}")
    return 0


def cmd_fixtures(args: argparse.Namespace) -> int:
    if args.action == "list":
        for name in list_fixtures():
            print(f"{name:<20} {fixture_entry(name).description}")
        return 0
    if not args.name:
        raise ValueError("fixtures show needs a NAME")
    sys.stdout.write(format_surface_spec(get_fixture(args.name)))
    return 0


# =============================================================================
# Parser
# =============================================================================


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("spec", help="surface file, or fixture:NAME")
    parser.add_argument("--order", type=int, default=None, help="jet order (4-10)")
    parser.add_argument("--eps-zero", type=float, default=None, help="zero tolerance")
    parser.add_argument("--eps-div", type=float, default=None, help="division tolerance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="focalfront", description="Singularities and focal surfaces of wave fronts"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="classify f and its focal surface at a point")
    _add_common(analyze)
    analyze.add_argument("--point", default=None, help="U,V (rationals allowed); default: the surface's marked point")
    analyze.add_argument("--json", default=None, metavar="OUT", help="write the report here")
    analyze.add_argument("--congruence", action="store_true", help="add the normal congruence check")
    analyze.set_defaults(handler=cmd_analyze)

    mesh = sub.add_parser("mesh", help="export an OBJ mesh of f or the focal surface")
    _add_common(mesh)
    mesh.add_argument("--which", choices=("f", "focal"), default="f")
    mesh.add_argument("--region", default="-1,1,-1,1", help="u0,u1,v0,v1")
    mesh.add_argument("--res", default="41x41", help="NxM samples")
    mesh.add_argument("--out", required=True)
    mesh.set_defaults(handler=cmd_mesh)

    trace = sub.add_parser("trace", help="trace a singular curve to CSV")
    _add_common(trace)
    trace.add_argument("--which", choices=("f", "focal"), default="f")
    trace.add_argument("--seed", default=None, help="U,V; default: the surface's marked point")
    trace.add_argument("--steps", type=int, default=50)
    trace.add_argument("--out", required=True)
    trace.set_defaults(handler=cmd_trace)

    fixtures = sub.add_parser("fixtures", help="list or show registered surfaces")
    fixtures.add_argument("action", choices=("list", "show"))
    fixtures.add_argument("name", nargs="?")
    fixtures.set_defaults(handler=cmd_fixtures)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    settings = get_settings()
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else getattr(logging, settings.log_level),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.handler(args)
    except (FocalFrontError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
