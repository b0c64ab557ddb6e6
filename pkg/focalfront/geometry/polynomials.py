"""
FocalFront - Exact Polynomial Maps

Polynomial surface specifications over exact rationals (sympy) and their
conversion to floating-point jets at arbitrary base points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from math import comb
from typing import Iterable, Sequence

import numpy as np
import sympy

from focalfront.geometry.jets import Jet2, JetVec3

U, V = sympy.symbols("u v")


def to_poly(expr: sympy.Expr | sympy.Poly | int | Fraction) -> sympy.Poly:
    """Coerce an expression to a Poly in (u, v) over the rationals."""
    if isinstance(expr, sympy.Poly):
        return sympy.Poly(expr.as_expr(), U, V, domain="QQ")
    if isinstance(expr, Fraction):
        expr = sympy.Rational(expr.numerator, expr.denominator)
    return sympy.Poly(sympy.sympify(expr), U, V, domain="QQ")


def coefficient_matrix(poly: sympy.Poly) -> np.ndarray:
    """Dense float matrix M with M[a, b] the coefficient of u^a v^b."""
    degree = max(poly.total_degree(), 0)
    matrix = np.zeros((degree + 1, degree + 1))
    for (a, b), coeff in poly.terms():
        matrix[a, b] = float(coeff)
    return matrix


def _shift_operator(x0: float, size: int) -> np.ndarray:
    """T[i, a] = C(a, i) x0^(a - i): re-expands powers of x about x0."""
    op = np.zeros((size, size))
    for a in range(size):
        for i in range(a + 1):
            op[i, a] = comb(a, i) * x0 ** (a - i)
    return op


def matrix_jet(matrix: np.ndarray, base_point: tuple[float, float], order: int) -> Jet2:
    """Taylor expansion of the polynomial with coefficient matrix at base_point."""
    size = matrix.shape[0]
    shifted = _shift_operator(base_point[0], size) @ matrix @ _shift_operator(base_point[1], size).T
    coeffs = np.zeros((order + 1, order + 1))
    n = min(size, order + 1)
    coeffs[:n, :n] = shifted[:n, :n]
    return Jet2(coeffs, base_point)


def polynomial_jet(poly: sympy.Poly, base_point: tuple[float, float], order: int) -> Jet2:
    return matrix_jet(coefficient_matrix(poly), base_point, order)


def exact_quotient(poly: sympy.Poly, divisor: sympy.Poly) -> sympy.Poly | None:
    """poly / divisor when the division is exact, otherwise None."""
    quotient, remainder = sympy.div(poly, divisor, U, V, domain="QQ")
    if not remainder.is_zero:
        return None
    return to_poly(quotient)


def restrict_to_axis(poly: sympy.Poly) -> sympy.Poly:
    """The polynomial p(u, 0), still as a Poly in (u, v)."""
    return to_poly(poly.as_expr().subs(V, 0))


def poly_cross(a: Sequence[sympy.Poly], b: Sequence[sympy.Poly]) -> tuple[sympy.Poly, ...]:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def poly_gcd(polys: Iterable[sympy.Poly]) -> sympy.Poly:
    nonzero = [p for p in polys if not p.is_zero]
    if not nonzero:
        return to_poly(0)
    return reduce(lambda a, b: to_poly(sympy.gcd(a, b)), nonzero)


def _single_line(text: str) -> str:
    return " ".join(text.replace("#", " ").split())


def _as_fraction(value: float | Fraction | int | str) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


# =============================================================================
# Surface specification
# =============================================================================


@dataclass(frozen=True)
class SurfaceSpec:
    """
    A polynomial map (u, v) -> R^3 with exact rational coefficients.

    The singular curve is expected on {v = 0}; that and the orientation
    convention are verified downstream (check_adapted) rather than trusted.
    """

    components: tuple[sympy.Poly, sympy.Poly, sympy.Poly]
    point: tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))
    name: str = "surface"
    description: str = ""
    orientation_convention: str = "lambda_v > 0 at the marked point"

    def __post_init__(self) -> None:
        # names and descriptions are single-line text fields without comments
        object.__setattr__(self, "name", _single_line(self.name))
        object.__setattr__(self, "description", _single_line(self.description))

    @classmethod
    def from_expressions(
        cls,
        exprs: Sequence[sympy.Expr | str],
        point: Sequence[float | Fraction | int | str] = (0, 0),
        name: str = "surface",
        description: str = "",
    ) -> SurfaceSpec:
        polys = tuple(to_poly(sympy.sympify(e, locals={"u": U, "v": V})) for e in exprs)
        if len(polys) != 3:
            raise ValueError("a surface needs exactly three components")
        return cls(
            components=polys,
            point=(_as_fraction(point[0]), _as_fraction(point[1])),
            name=name,
            description=description,
        )

    # -------------------------------------------------------------------------
    # Exact derivatives
    # -------------------------------------------------------------------------

    def derivative(self, i: int, j: int) -> tuple[sympy.Poly, sympy.Poly, sympy.Poly]:
        out = []
        for comp in self.components:
            p = comp
            for _ in range(i):
                p = p.diff(U)
            for _ in range(j):
                p = p.diff(V)
            out.append(to_poly(p))
        return tuple(out)

    @cached_property
    def _matrices(self) -> dict[tuple[int, int], list[np.ndarray]]:
        return {}

    def derivative_jets(self, i: int, j: int, base_point: tuple[float, float], order: int) -> JetVec3:
        """Jets of d^(i+j) f / du^i dv^j at base_point, exact to the given order."""
        cache = self._matrices
        if (i, j) not in cache:
            cache[(i, j)] = [coefficient_matrix(p) for p in self.derivative(i, j)]
        return JetVec3([matrix_jet(m, base_point, order) for m in cache[(i, j)]])

    def jets(self, base_point: tuple[float, float], order: int) -> JetVec3:
        return self.derivative_jets(0, 0, base_point, order)

    def evaluate(self, u: float, v: float) -> np.ndarray:
        return self.jets((u, v), 0).value

    @property
    def point_float(self) -> tuple[float, float]:
        return float(self.point[0]), float(self.point[1])

    @property
    def exprs(self) -> tuple[sympy.Expr, sympy.Expr, sympy.Expr]:
        return tuple(p.as_expr() for p in self.components)

    def compose(self, u_expr: sympy.Expr, v_expr: sympy.Expr, name: str | None = None) -> SurfaceSpec:
        """Precompose with the polynomial change (u, v) -> (u_expr, v_expr)."""
        new = tuple(
            to_poly(sympy.expand(e.subs({U: u_expr, V: v_expr}, simultaneous=True)))
            for e in self.exprs
        )
        return SurfaceSpec(
            components=new,
            point=self.point,
            name=name or f"{self.name}-composed",
            description=self.description,
        )
