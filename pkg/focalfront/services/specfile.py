"""
FocalFront - Surface Specification Files

Text format, one assignment per line:

    # swallowtail with a cuspidal-edge focal surface
    name = sw-ce
    x = u^2/2 - v
    y = -u^3/3 + u*v
    z = -u^4/8 + u^2*v/2
    point = 0, 0

A JSON object with the same keys is accepted as well.
"""

import json
import re
from fractions import Fraction
from pathlib import Path
from tokenize import TokenError

import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from focalfront.errors import ParseError, RationalOverflow
from focalfront.geometry.polynomials import U, V, SurfaceSpec, to_poly

COMPONENT_KEYS = ("x", "y", "z")
KNOWN_KEYS = frozenset(COMPONENT_KEYS + ("point", "name", "description"))
LITERAL_LIMIT = 10**60

_ALLOWED = re.compile(r"[uv0-9+\-*/^()\s]")
_EXPONENT = re.compile(r"(\^|\*\*)\s*")
_INTEGER = re.compile(r"\d+")
_ASSIGNMENT = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.*?)\s*$")
_TRANSFORMATIONS = standard_transformations + (convert_xor,)


def _check_literals(text: str, line: int, offset: int) -> None:
    for match in _INTEGER.finditer(text):
        if int(match.group()) > LITERAL_LIMIT:
            raise RationalOverflow(
                f"literal {match.group()[:12]}... exceeds 10^60 (line {line}, column {offset + match.start() + 1})",
                "parse_surface_spec",
                line=line,
                column=offset + match.start() + 1,
            )


def parse_expression(text: str, line: int = 0, offset: int = 0) -> sympy.Poly:
    """Parse one polynomial expression in u, v with exact rational coefficients."""
    if not text.strip():
        raise ParseError("empty expression", line, offset + 1)
    for index, char in enumerate(text):
        if not _ALLOWED.match(char):
            raise ParseError(f"unexpected character {char!r}", line, offset + index + 1)
    for match in _EXPONENT.finditer(text):
        rest = text[match.end():]
        if not rest[:1].isdigit():
            raise ParseError(
                "exponents must be non-negative integer literals", line, offset + match.start() + 1
            )
    _check_literals(text, line, offset)

    try:
        expr = parse_expr(text, local_dict={"u": U, "v": V}, transformations=_TRANSFORMATIONS)
    except (SyntaxError, TypeError, TokenError) as exc:
        raise ParseError(f"malformed expression ({exc.__class__.__name__})", line, offset + 1) from exc

    expr = sympy.expand(expr)
    if expr.has(sympy.zoo, sympy.oo, sympy.nan):
        raise ParseError("division by zero", line, offset + 1)
    if not expr.is_polynomial(U, V):
        raise ParseError("expression is not a polynomial in u, v", line, offset + 1)
    return to_poly(expr)


def _parse_point(text: str, line: int) -> tuple[Fraction, Fraction]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise ParseError("point needs two coordinates 'U, V'", line, 1)
    try:
        point = tuple(Fraction(p) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad point coordinate ({exc})", line, 1) from exc
    for coord in point:
        if abs(coord.numerator) > LITERAL_LIMIT or coord.denominator > LITERAL_LIMIT:
            raise RationalOverflow("point coordinate exceeds 10^60", "parse_surface_spec", line=line)
    return point


def _build(fields: dict[str, tuple[str, int, int]]) -> SurfaceSpec:
    parsed = {k: parse_expression(*entry) for k, entry in fields.items() if k in COMPONENT_KEYS}
    missing = [k for k in COMPONENT_KEYS if k not in parsed]
    if missing:
        raise ParseError(f"missing component(s): {', '.join(missing)}", 0, 0)
    components = tuple(parsed[k] for k in COMPONENT_KEYS)
    point = (Fraction(0), Fraction(0))
    if "point" in fields:
        point = _parse_point(fields["point"][0], fields["point"][1])
    return SurfaceSpec(
        components=components,
        point=point,
        name=fields.get("name", ("surface", 0, 0))[0],
        description=fields.get("description", ("", 0, 0))[0],
    )


def _parse_json(text: str) -> SurfaceSpec:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from exc
    if not isinstance(document, dict):
        raise ParseError("JSON surface must be an object", 1, 1)
    unknown = sorted(set(document) - KNOWN_KEYS)
    if unknown:
        raise ParseError(f"unknown key(s): {', '.join(unknown)}", 1, 1)
    fields: dict[str, tuple[str, int, int]] = {}
    for key, value in document.items():
        if key == "point" and isinstance(value, list):
            value = ", ".join(str(v) for v in value)
        fields[key] = (str(value), 1, 0)
    return _build(fields)


def parse_surface_spec(text: str) -> SurfaceSpec:
    """
    Parse the text (or JSON) surface format.

    Raises:
        ParseError: malformed line, unknown or duplicate key, bad expression.
        RationalOverflow: a literal beyond 10^60.
    """
    if text.lstrip().startswith("{"):
        return _parse_json(text)

    fields: dict[str, tuple[str, int, int]] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        match = _ASSIGNMENT.match(line)
        if not match:
            raise ParseError("expected 'key = value'", number, 1)
        key, value = match.group(1), match.group(2)
        if key not in KNOWN_KEYS:
            raise ParseError(f"unknown key {key!r}", number, match.start(1) + 1)
        if key in fields:
            raise ParseError(f"duplicate key {key!r}", number, match.start(1) + 1)
        fields[key] = (value, number, match.start(2))
    return _build(fields)


def format_surface_spec(spec: SurfaceSpec) -> str:
    """Render a surface in the text format; parse_surface_spec inverts it exactly."""
    lines = [f"name = {spec.name}"]
    if spec.description:
        lines.append(f"description = {spec.description}")
    for key, expr in zip(COMPONENT_KEYS, spec.exprs):
        lines.append(f"{key} = {sympy.sstr(expr).replace('**', '^')}")
    lines.append(f"point = {spec.point[0]}, {spec.point[1]}")
    return "\n".join(lines) + "\n"


def load_surface(source: str) -> SurfaceSpec:
    """A spec file path, or fixture:NAME for a registered fixture."""
    if source.startswith("fixture:"):
        from focalfront.services.fixtures import get_fixture

        return get_fixture(source.split(":", 1)[1])
    return parse_surface_spec(Path(source).read_text(encoding="utf-8"))
