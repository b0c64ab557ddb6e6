"""Focal surface Ĉ = f + ρ̂ν: classification, contact order and rational boundedness."""

import numpy as np
import pytest

from focalfront.errors import VanishingBoundedCurvature
from focalfront.geometry.classify import Criterion
from focalfront.geometry.curvature import curvature_data, frame_xy, principal_split
from focalfront.geometry.focal import (
    FOCAL_SCALAR_NAMES,
    FocalClass,
    V_tilde_rho,
    classify_focal,
    congruence_density,
    decide_focal,
    focal_bounded_surface,
    focal_density_routes,
    focal_front_witness,
    focal_K_rational_bounded,
    focal_normal_and_density,
    focal_surface,
)
from focalfront.geometry.jets import Jet2, JetVec3, det3
from focalfront.geometry.surface import FrontKind, check_adapted, frame_from_jets
from focalfront.services.fixtures import FIXTURES
from focalfront.services.reports import AnalysisRequest
from focalfront.services.tracing import trace_singular_curve

from conftest import WORKED_EXAMPLES


def scalars(**values: float) -> dict[str, Criterion]:
    return {name: Criterion(values.get(name, 0.0), 1e-9) for name in FOCAL_SCALAR_NAMES}


@pytest.fixture
def analyzed(frame_of, settings):
    def build(name: str):
        frame = frame_of(name)
        return frame, curvature_data(frame, settings)

    return build


class TestDecisionTable:
    def test_first_kind_points_map_to_regular_points(self):
        assert decide_focal(FrontKind.FIRST_KIND, scalars()) == FocalClass.REGULAR_POINT

    def test_regular_point_of_the_focal_surface(self):
        assert decide_focal(FrontKind.SECOND_KIND, scalars(V_tilde_rho=0.3)) == FocalClass.REGULAR_POINT

    @pytest.mark.parametrize(
        "values, expected",
        [
            ({"V_tilde_rho_u": 1.0, "V_tilde_V_tilde_rho": 1.0}, FocalClass.CUSPIDAL_EDGE),
            (
                {"V_tilde_rho_v": 1.0, "V_V_tilde_rho": 1.0, "V_tilde_V_tilde_V_tilde_rho": -3.0},
                FocalClass.SWALLOWTAIL,
            ),
            ({"V_tilde_rho_v": 1.0}, FocalClass.UNRESOLVED),
            ({"hessian_det": 2.0}, FocalClass.CUSPIDAL_LIPS),
            ({"hessian_det": -2.0, "V_tilde_V_tilde_V_tilde_rho": 1.0}, FocalClass.CUSPIDAL_BEAKS),
            ({"hessian_det": -2.0}, FocalClass.DEGENERATE_OTHER),
            ({}, FocalClass.UNRESOLVED),
        ],
    )
    def test_second_kind_rows(self, values, expected):
        assert decide_focal(FrontKind.SECOND_KIND, scalars(**values)) == expected


class TestWorkedExamples:
    @pytest.mark.parametrize("name", WORKED_EXAMPLES)
    def test_focal_class(self, name, analyzed, settings):
        frame, data = analyzed(name)
        report = classify_focal(frame, data, settings)
        assert report.focal_class == FIXTURES[name].expected_focal_class
        assert report.initial_kind == FrontKind.SECOND_KIND
        assert report.is_front

    @pytest.mark.parametrize("name, expected", [("sw-ce", 1), ("cbf-sw", 2)])
    def test_contact_order(self, name, expected, analyzed, settings):
        frame, data = analyzed(name)
        assert classify_focal(frame, data, settings).contact_order == expected

    def test_cuspidal_edge_scalars(self, analyzed, settings):
        # Ṽρ̂ = -u(1 + u²/2)³ on sw-ce
        frame, data = analyzed("sw-ce")
        vr = V_tilde_rho(data)
        assert vr.value == pytest.approx(0.0, abs=1e-12)
        assert np.allclose(vr.gradient, [-1.0, 0.0], atol=1e-9)
        report = classify_focal(frame, data, settings)
        assert report.scalars["V_tilde_V_tilde_rho"].value == pytest.approx(1.0)

    def test_swallowtail_scalars(self, analyzed, settings):
        frame, data = analyzed("cbf-sw")
        s = classify_focal(frame, data, settings).scalars
        assert s["V_tilde_rho"].vanishes
        assert s["V_tilde_rho_u"].vanishes
        assert s["V_tilde_V_tilde_rho"].vanishes
        assert s["V_tilde_rho_v"].value > 0
        assert not s["V_V_tilde_rho"].vanishes
        assert s["V_tilde_V_tilde_V_tilde_rho"].value < 0

    def test_hessian_sign_separates_beaks_from_lips(self, analyzed, settings):
        beaks = classify_focal(*analyzed("cbf-cbk"), settings).scalars
        lips = classify_focal(*analyzed("cbf-clp"), settings).scalars
        assert beaks["V_tilde_rho_u"].vanishes and beaks["V_tilde_rho_v"].vanishes
        assert beaks["hessian_det"].value < 0
        assert lips["hessian_det"].value > 0

    @pytest.mark.parametrize("name, expected", [("cbf-cbk", (-1.0, 0.0, 6.0)), ("cbf-clp", (-1.0, 0.0, -6.0))])
    def test_hessian_entries(self, name, expected, analyzed, settings):
        s = classify_focal(*analyzed(name), settings).scalars
        entries = (s["hessian_uu"].value, s["hessian_uv"].value, s["hessian_vv"].value)
        assert entries == pytest.approx(expected, abs=1e-6)

    def test_swallowtail_values_in_the_fixture_chart(self, analyzed, settings):
        # |f_v(p)| = √2, so the chart is adapted but not unit speed; the
        # values keep the signs of the strongly adapted ones (2, -4)
        frame, data = analyzed("cbf-sw")
        assert np.linalg.norm(frame.f_v.value) == pytest.approx(np.sqrt(2.0))
        s = classify_focal(frame, data, settings).scalars
        assert s["V_tilde_rho_u"].value == pytest.approx(0.0, abs=1e-6)
        assert s["V_tilde_rho_v"].value == pytest.approx(3.0, abs=1e-6)
        assert s["V_tilde_V_tilde_rho"].value == pytest.approx(0.0, abs=1e-6)
        assert s["V_tilde_V_tilde_V_tilde_rho"].value == pytest.approx(-32.0, abs=1e-6)

    @pytest.mark.parametrize("name", WORKED_EXAMPLES)
    def test_second_derivative_along_the_null_direction(self, name, analyzed, settings):
        # Ṽ(Ṽρ̂)(p) = e'(0) κ̂(p) λ_v(p)
        frame, data = analyzed(name)
        assert check_adapted(frame.spec, settings=settings).adapted
        expected = frame.e_series.derivative(1) * data.kappa_hat.value * frame.lam.gradient[1]
        value = classify_focal(frame, data, settings).scalars["V_tilde_V_tilde_rho"].value
        assert value == pytest.approx(expected, abs=1e-8)

    @pytest.mark.parametrize("name", WORKED_EXAMPLES)
    def test_focal_surface_is_a_front(self, name, analyzed, settings):
        frame, data = analyzed(name)
        assert focal_front_witness(frame, data, settings) > 1e-6


class TestFocalNormal:
    @pytest.mark.parametrize("name", WORKED_EXAMPLES)
    def test_normal_is_orthogonal_to_the_focal_surface(self, name, analyzed, settings):
        frame, data = analyzed(name)
        e2, _ = focal_normal_and_density(frame, data, settings)
        C = focal_surface(frame, data)
        for tangent in (C.diff_u(), C.diff_v()):
            assert tangent.dot(e2).max_abs() <= 1e-8 * max(1.0, tangent.max_abs())

    @pytest.mark.parametrize("name", WORKED_EXAMPLES)
    def test_density_routes_agree(self, name, analyzed, settings, assert_jets_close):
        frame, data = analyzed(name)
        routes = focal_density_routes(frame, data, settings)
        assert_jets_close(routes["exact"], routes["det"])
        assert_jets_close(routes["closed_form"], routes["det"])
        assert classify_focal(frame, data, settings).density_routes_agree

    @pytest.mark.parametrize("name", WORKED_EXAMPLES)
    def test_null_direction_of_the_focal_surface(self, name, analyzed, assert_jets_close):
        # dĈ(Ṽ) = (Ṽρ̂)ν
        frame, data = analyzed(name)
        C = focal_surface(frame, data)
        Vt = data.V_tilde
        assert_jets_close(C.diff_u() * Vt[0] + C.diff_v() * Vt[1], frame.nu * V_tilde_rho(data))

    def test_focal_surface_of_the_worked_example(self, analyzed):
        # Ĉ = f + v·(-u²/2, -u, 1)
        frame, data = analyzed("sw-ce")
        C = focal_surface(frame, data)
        assert np.allclose(C.value, [0.0, 0.0, 0.0], atol=1e-12)
        assert np.allclose(C.partial(0, 1), frame.f_v.value + np.array([0.0, 0.0, 1.0]), atol=1e-9)


def _focal_density_at(frame, q, settings) -> float:
    at_q = frame.at(q)
    split = principal_split(at_q, settings)
    _, _, _, e2 = frame_xy(at_q, split, settings)
    C = at_q.f + at_q.nu * split.rho_hat
    return det3(C.diff_u(), C.diff_v(), e2).value


class TestFocalSingularSet:
    def test_traced_roots_are_singular(self, frame_of, surface, settings):
        frame = frame_of("sw-ce")
        request = AnalysisRequest(surface=surface("sw-ce"))
        points = trace_singular_curve(request, "focal", (0.0, 0.0), 49, settings)
        assert len(points) == 50
        for u, v, _ in points:
            assert abs(_focal_density_at(frame, (u, v), settings)) < 1e-6

    @pytest.mark.parametrize("u", [-0.1, 0.1])
    def test_off_the_zero_set_is_regular(self, u, frame_of, settings):
        frame = frame_of("sw-ce")
        for v in np.linspace(0.05, 0.5, 10):
            assert abs(_focal_density_at(frame, (u, float(v)), settings)) > 1e-6


class TestRationalBoundedness:
    @pytest.mark.parametrize("name", ["sw-ce", "cbf-sw"])
    def test_routes_agree(self, name, analyzed, settings):
        frame, data = analyzed(name)
        result = focal_K_rational_bounded(frame, data, settings)
        assert result.routes_agree
        assert result.focal_limiting_normal_curvature_vanishes == result.verdict

    def test_worked_example_is_sub_parabolic(self, analyzed, settings):
        frame, data = analyzed("sw-ce")
        assert focal_K_rational_bounded(frame, data, settings).verdict
        assert classify_focal(frame, data, settings).sub_parabolic


class TestNormalCongruence:
    @pytest.mark.parametrize("q, w", [((0.02, 0.01), 0.3), ((-0.03, -0.02), -0.7), ((0.01, 0.04), 0.9)])
    def test_density_factorizes(self, q, w, frame_of, settings):
        lhs, rhs = congruence_density(frame_of("sw-ce"), q, w, settings)
        assert lhs == pytest.approx(rhs, abs=1e-9)

    def test_density_factorizes_on_random_samples(self, frame_of, settings):
        frame = frame_of("sw-ce")
        rng = np.random.default_rng(11)
        for _ in range(100):
            du, dv, w = rng.uniform(-1.0, 1.0, 3)
            lhs, rhs = congruence_density(frame, (0.1 * du, 0.1 * dv), float(w), settings)
            assert abs(lhs - rhs) < 1e-8 * max(1.0, abs(lhs))


def _graph_frame(height: Jet2, settings):
    u = Jet2.coordinate("u", (0.0, 0.0), 6)
    v = Jet2.coordinate("v", (0.0, 0.0), 6)
    return frame_from_jets(JetVec3([u, v, height]), settings)


class TestBoundedFocalPoint:
    def test_sphere_focuses_at_the_center(self, settings):
        u = Jet2.coordinate("u", (0.0, 0.0), 6)
        v = Jet2.coordinate("v", (0.0, 0.0), 6)
        frame = _graph_frame((1.0 - u * u - v * v).sqrt(), settings)
        assert np.allclose(focal_bounded_surface(frame, settings=settings), [0.0, 0.0, 0.0], atol=1e-9)

    def test_cylinder_has_no_bounded_focal_point(self, settings):
        u = Jet2.coordinate("u", (0.0, 0.0), 6)
        frame = _graph_frame((1.0 - u * u).sqrt(), settings)
        with pytest.raises(VanishingBoundedCurvature):
            focal_bounded_surface(frame, settings=settings)

    def test_paraboloid(self, frame_of, settings):
        # κ = 1 at the vertex, normal (0, 0, 1)
        point = focal_bounded_surface(frame_of("paraboloid"), settings=settings)
        assert np.allclose(point, [0.0, 0.0, 1.0])
