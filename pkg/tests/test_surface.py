"""Unit normal, signed area density, adapted charts and the moving frame."""

import numpy as np
import pytest

from focalfront.errors import DegenerateNormal, NotAdapted, OrderExceeded, UnsupportedKind
from focalfront.geometry.jets import det3
from focalfront.geometry.polynomials import SurfaceSpec
from focalfront.geometry.surface import (
    FrontKind,
    ab_identity,
    check_adapted,
    compute_normal,
    evaluate_jets,
    frame_maps,
    normal_data,
    null_function,
    second_derivative_frame,
    signed_area_density,
    weingarten,
)

from conftest import WORKED_EXAMPLES


class TestAdaptedCoordinates:
    def test_worked_example_is_strongly_adapted(self, surface, settings):
        status = check_adapted(surface("sw-ce"), settings=settings)
        assert status.kind == FrontKind.SECOND_KIND
        assert status.adapted
        assert status.null_condition == "f_u(p) = 0"
        assert status.unit_speed is True
        assert status.strongly_adapted is True

    def test_regular_point(self, surface, settings):
        status = check_adapted(surface("paraboloid"), settings=settings)
        assert status.kind == FrontKind.REGULAR
        assert status.regular

    def test_first_kind_normal_form(self, surface, settings):
        status = check_adapted(surface("cuspidal-edge"), settings=settings)
        assert status.kind == FrontKind.FIRST_KIND
        assert status.singular_curve_on_axis

    def test_null_function_of_worked_example(self, surface, settings):
        e = null_function(surface("sw-ce"), (0.0, 0.0), 6, settings=settings)
        assert np.allclose(e.coeffs[:3], [0.0, 1.0, 0.0], atol=1e-12)

    def test_null_function_vanishes_to_second_order_at_a_butterfly(self, surface, settings):
        e = null_function(surface("cbf-sw"), (0.0, 0.0), 6, settings=settings)
        assert abs(e.coeffs[0]) < 1e-12 and abs(e.coeffs[1]) < 1e-12
        assert abs(e.coeffs[2]) > 1e-3


class TestNormal:
    def test_axis_factor_route(self, surface, settings):
        data = normal_data(surface("cuspidal-edge"), (0.0, 0.0), 6, settings)
        assert data.route == "axis-factor"
        assert data.v_power == 1
        assert np.isclose(np.linalg.norm(data.nu.value), 1.0)

    def test_gcd_route(self, surface, settings):
        data = normal_data(surface("swallowtail"), (0.0, 0.0), 6, settings)
        assert data.route == "gcd"
        assert data.lam.value == pytest.approx(0.0, abs=1e-12)
        assert data.lam.gradient[0] > 0.0

    def test_regular_route(self, surface, settings):
        lam, lam_hat = signed_area_density(surface("paraboloid"), (0.1, 0.2), 6, settings)
        assert lam_hat is None
        assert lam.value == pytest.approx(np.sqrt(1 + 0.1**2 + 0.4**2))

    def test_corank_two_has_no_normal(self, settings):
        spec = SurfaceSpec.from_expressions(["u**2", "v**2", "u*v"])
        with pytest.raises(DegenerateNormal):
            compute_normal(spec, (0.0, 0.0), 6, settings)

    def test_order_above_maximum(self, surface, settings):
        with pytest.raises(OrderExceeded):
            evaluate_jets(surface("sw-ce"), (0.0, 0.0), 11, settings)


class TestFrame:
    def test_worked_example_normal_and_density(self, frame_of):
        frame = frame_of("sw-ce")
        assert frame.kind == FrontKind.SECOND_KIND
        assert np.allclose(frame.nu.value, [0.0, 0.0, 1.0])
        # λ̂ = 1 + u^2/2 and λ = v λ̂
        assert frame.lam_hat.coeffs[0, 0] == pytest.approx(1.0)
        assert frame.lam_hat.coeffs[2, 0] == pytest.approx(0.5)
        assert np.allclose(frame.lam.gradient, [0.0, 1.0])

    def test_moved_frame_keeps_the_chart(self, frame_of):
        moved = frame_of("sw-ce").at((0.1, 0.05))
        assert moved.kind == FrontKind.SECOND_KIND
        assert moved.lam.value == pytest.approx(0.05 * (1 + 0.1**2 / 2))

    @pytest.mark.parametrize("name", WORKED_EXAMPLES)
    def test_lambda_is_the_determinant(self, name, frame_of, assert_jets_close):
        frame = frame_of(name)
        assert_jets_close(det3(frame.f_u, frame.f_v, frame.nu), frame.lam)

    @pytest.mark.parametrize("name", WORKED_EXAMPLES)
    def test_normal_is_unit_and_orthogonal(self, name, frame_of):
        frame = frame_of(name)
        assert (frame.nu.dot(frame.nu) - 1.0).max_abs() < 1e-8
        assert frame.nu.dot(frame.f_u).max_abs() < 1e-8
        assert frame.nu.dot(frame.f_v).max_abs() < 1e-8

    def test_lambda_v_is_positive(self, frame_of):
        for name in WORKED_EXAMPLES:
            assert frame_of(name).lam.gradient[1] > 0

    def test_first_kind_frame(self, frame_of):
        frame = frame_of("cuspidal-edge")
        assert frame.kind == FrontKind.FIRST_KIND
        assert frame.lam_hat.value == pytest.approx(2.0)

    def test_unadapted_normal_form(self, surface, settings):
        with pytest.raises(NotAdapted):
            frame_maps(surface("swallowtail"), (0.0, 0.0), 6, settings)


class TestStructureEquations:
    @pytest.mark.parametrize("name", WORKED_EXAMPLES)
    def test_weingarten(self, name, frame_of, assert_jets_close):
        frame = frame_of(name)
        nu_u, nu_v = weingarten(frame)
        assert_jets_close(nu_u, frame.nu_u)
        assert_jets_close(nu_v, frame.nu_v)

    @pytest.mark.parametrize("name", WORKED_EXAMPLES)
    def test_second_derivative_frame(self, name, frame_of, assert_jets_close):
        for direct, expansion in second_derivative_frame(frame_of(name)).values():
            assert_jets_close(direct, expansion)

    @pytest.mark.parametrize("name", WORKED_EXAMPLES)
    def test_ab_identity(self, name, frame_of, assert_jets_close):
        lhs, rhs = ab_identity(frame_of(name))
        assert_jets_close(lhs, rhs)

    def test_structure_equations_need_the_second_kind(self, frame_of):
        with pytest.raises(UnsupportedKind):
            weingarten(frame_of("paraboloid"))
