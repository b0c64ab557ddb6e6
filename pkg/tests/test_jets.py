"""Truncated Taylor jet arithmetic against sympy."""

from math import factorial

import numpy as np
import pytest
import sympy

from focalfront.errors import (
    DivisionBySingularJet,
    NotDivisible,
    OrderExceeded,
    SqrtOfNonpositiveJet,
)
from focalfront.geometry.jets import (
    Jet1,
    Jet2,
    divide_by_coordinate,
    jet_arith,
    jet_sqrt,
    partial,
    vanishing_order,
)
from focalfront.geometry.polynomials import U, V, SurfaceSpec, polynomial_jet, to_poly


def taylor(expr: sympy.Expr, base: tuple[float, float], order: int) -> np.ndarray:
    """Coefficient matrix of expr at base from sympy derivatives."""
    out = np.zeros((order + 1, order + 1))
    at = {U: sympy.Rational(base[0]), V: sympy.Rational(base[1])}
    for i in range(order + 1):
        d_u = expr
        for _ in range(i):
            d_u = sympy.diff(d_u, U)
        for j in range(order + 1 - i):
            d = d_u
            for _ in range(j):
                d = sympy.diff(d, V)
            out[i, j] = float(d.subs(at)) / (factorial(i) * factorial(j))
    return out


def jet_of(expr: sympy.Expr, base: tuple[float, float], order: int) -> Jet2:
    return polynomial_jet(to_poly(expr), base, order)


BASE = (0.3, -0.2)


class TestArithmetic:
    def test_polynomial_jet_matches_taylor(self):
        expr = U**3 * V - 2 * U * V**2 + sympy.Rational(1, 3) * V**4 + 5
        jet = jet_of(expr, BASE, 5)
        assert np.allclose(jet.coeffs, taylor(expr, BASE, 5), atol=1e-12)

    def test_product_is_exact_for_polynomials(self):
        a = 1 + U - V**2 + U * V
        b = 2 - U**2 + 3 * V
        product = jet_arith(jet_of(a, BASE, 6), jet_of(b, BASE, 6), "mul")
        assert np.allclose(product.coeffs, taylor(sympy.expand(a * b), BASE, 6), atol=1e-12)

    def test_reciprocal(self):
        b = 2 + U + V**2
        quotient = jet_arith(Jet2.constant(1.0, BASE, 5), jet_of(b, BASE, 5), "div")
        assert np.allclose(quotient.coeffs, taylor(1 / b, BASE, 5), atol=1e-10)

    def test_sqrt(self):
        a = 4 + U - V + U * V
        root = jet_sqrt(jet_of(a, BASE, 5))
        assert np.allclose(root.coeffs, taylor(sympy.sqrt(a), BASE, 5), atol=1e-10)
        assert np.allclose((root * root).coeffs, jet_of(a, BASE, 5).coeffs, atol=1e-10)

    def test_product_of_random_cubics(self):
        rng = np.random.default_rng(3)
        monomials = [U**i * V**j for i in range(4) for j in range(4 - i)]
        for _ in range(10):
            a, b = (sum(int(c) * m for c, m in zip(rng.integers(-4, 5, len(monomials)), monomials)) for _ in range(2))
            product = jet_of(a, BASE, 6) * jet_of(b, BASE, 6)
            expected = taylor(sympy.expand(a * b), BASE, 6)
            assert np.max(np.abs(product.coeffs - expected)) <= 1e-12 * max(1.0, np.max(np.abs(expected)))

    def test_sqrt_squares_back_on_random_jets(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            coeffs = rng.uniform(-1.0, 1.0, (6, 6))
            coeffs[0, 0] = rng.uniform(1.0, 3.0)
            a = Jet2(coeffs, BASE)
            root = jet_sqrt(a)
            assert (root * root - a).max_abs() <= 1e-12 * max(1.0, root.max_abs()) ** 2

    def test_result_order_is_the_lowest_operand_order(self):
        a = jet_of(1 + U, BASE, 6)
        b = jet_of(1 + V, BASE, 3)
        assert (a * b).order == 3
        assert (a + b).order == 3

    def test_evaluate_near_base_point(self):
        expr = 1 + U * V - V**3
        jet = jet_of(expr, BASE, 4)
        assert jet.evaluate(0.35, -0.1) == pytest.approx(float(expr.subs({U: 0.35, V: -0.1})))


class TestCalculus:
    def test_diff_lowers_the_order(self):
        expr = U**2 * V**3 + U
        jet = jet_of(expr, BASE, 6)
        assert jet.diff_u().order == 5
        assert np.allclose(jet.diff_v().coeffs, taylor(sympy.diff(expr, V), BASE, 5), atol=1e-12)

    def test_partial_and_hessian(self):
        expr = U**3 - 2 * U * V + V**2
        jet = jet_of(expr, BASE, 4)
        assert partial(jet, 2, 0) == pytest.approx(6 * BASE[0])
        assert np.allclose(jet.hessian(), [[6 * BASE[0], -2.0], [-2.0, 2.0]])

    def test_partial_matches_central_differences(self):
        rng = np.random.default_rng(9)
        monomials = [U**i * V**j for i in range(6) for j in range(6 - i)]
        h = 1e-4
        for _ in range(50):
            expr = sum(int(c) * m for c, m in zip(rng.integers(-3, 4, len(monomials)), monomials))
            f = sympy.lambdify((U, V), expr)
            u, v = (float(x) for x in rng.uniform(-0.5, 0.5, 2))
            jet = jet_of(expr, (u, v), 5)
            differences = {
                (1, 0): (f(u + h, v) - f(u - h, v)) / (2 * h),
                (0, 1): (f(u, v + h) - f(u, v - h)) / (2 * h),
                (2, 0): (f(u + h, v) - 2 * f(u, v) + f(u - h, v)) / h**2,
                (0, 2): (f(u, v + h) - 2 * f(u, v) + f(u, v - h)) / h**2,
                (1, 1): (f(u + h, v + h) - f(u + h, v - h) - f(u - h, v + h) + f(u - h, v - h)) / (4 * h**2),
            }
            for (i, j), estimate in differences.items():
                exact = partial(jet, i, j)
                assert abs(exact - estimate) <= 1e-5 * max(1.0, abs(exact))

    def test_partial_beyond_order(self):
        jet = jet_of(U, BASE, 3)
        with pytest.raises(OrderExceeded):
            partial(jet, 3, 1)

    def test_gradient_of_constant_order_zero_jet(self):
        with pytest.raises(OrderExceeded):
            Jet2.constant(1.0, BASE, 0).gradient

    def test_divide_by_coordinate(self):
        base = (0.3, 0.0)
        jet = jet_of(V * (1 + U) + V**2, base, 5)
        quotient = divide_by_coordinate(jet, "v")
        assert quotient.order == 4
        assert np.allclose(quotient.coeffs, taylor(1 + U + V, base, 4), atol=1e-12)

    def test_divide_by_coordinate_refuses_nonvanishing_jet(self):
        with pytest.raises(NotDivisible):
            divide_by_coordinate(jet_of(1 + V, (0.0, 0.0), 4), "v")

    def test_multiply_by_coordinate_raises_the_order(self):
        jet = jet_of(1 + U, (0.0, 0.0), 3)
        product = jet.multiply_by_coordinate("v")
        assert product.order == 4
        assert product.coeffs[0, 1] == 1.0 and product.coeffs[1, 1] == 1.0


class TestFailures:
    def test_division_by_vanishing_constant_term(self):
        with pytest.raises(DivisionBySingularJet):
            Jet2.coordinate("u", (0.0, 0.0), 4).reciprocal()

    def test_sqrt_of_nonpositive(self):
        with pytest.raises(SqrtOfNonpositiveJet):
            jet_sqrt(Jet2.constant(-1.0, (0.0, 0.0), 3))

    def test_error_carries_provenance(self):
        with pytest.raises(DivisionBySingularJet) as info:
            jet_arith(Jet2.constant(1.0, BASE, 2), Jet2.constant(0.0, BASE, 2), "div")
        assert info.value.provenance == "jet_arith"


class TestVanishingOrder:
    def test_leading_term(self):
        assert vanishing_order(Jet1([0.0, 0.0, 3.0, 1.0])) == 2

    def test_identically_zero_reports_beyond_order(self):
        assert vanishing_order(Jet1([0.0, 0.0, 0.0])) == 3

    def test_tolerance_is_relative(self):
        assert vanishing_order(Jet1([1e-12, 5.0]), eps=1e-9) == 1


def test_graph_area_density_matches_sympy():
    """|f_u x f_v| of random graphs z = h(u, v) against sqrt(1 + h_u^2 + h_v^2)."""
    rng = np.random.default_rng(7)
    monomials = [U**i * V**j for i in range(6) for j in range(6 - i) if i + j >= 1]
    for _ in range(10):
        coeffs = rng.integers(-3, 4, len(monomials))
        h = sum(int(c) * m for c, m in zip(coeffs, monomials))
        spec = SurfaceSpec.from_expressions([U, V, h])
        base = tuple(float(x) for x in rng.uniform(-0.5, 0.5, 2))
        f_u = spec.derivative_jets(1, 0, base, 5)
        f_v = spec.derivative_jets(0, 1, base, 5)
        area = f_u.cross(f_v).norm()
        oracle = sympy.sqrt(1 + sympy.diff(h, U) ** 2 + sympy.diff(h, V) ** 2)
        expected = taylor(oracle, base, 3)
        for i in range(4):
            for j in range(4 - i):
                scale = max(1.0, abs(expected[i, j]))
                assert abs(area.coeffs[i, j] - expected[i, j]) <= 1e-8 * scale
