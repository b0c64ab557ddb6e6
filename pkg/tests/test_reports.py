"""Report orchestration, OBJ meshes and singular curve traces."""

import json
from fractions import Fraction

import numpy as np
import pytest

from focalfront.errors import EmptyMesh, LostCurve
from focalfront.geometry.classify import SingularityClass
from focalfront.geometry.focal import FocalClass
from focalfront.models import ErrorRecord, ReportDocument
from focalfront.services import mesh as mesh_module
from focalfront.services.mesh import export_mesh, grid_faces, stitched_faces
from focalfront.services.reports import (
    EXIT_CLEAN,
    EXIT_ERROR,
    EXIT_UNRESOLVED,
    AnalysisRequest,
    dump_report,
    exit_status,
    run_report,
    verdict_line,
)
from focalfront.services.tracing import trace_singular_curve, trace_to_csv


@pytest.fixture
def request_for(surface):
    def build(name: str, **overrides) -> AnalysisRequest:
        return AnalysisRequest(surface=surface(name), **overrides)

    return build


class TestAnalysisRequest:
    @pytest.mark.parametrize(
        "overrides",
        [{"jet_order": 3}, {"jet_order": 11}, {"eps_zero": 0.0}, {"eps_div": -1e-9}, {"outputs": frozenset({"movie"})}],
    )
    def test_rejects_bad_overrides(self, overrides, request_for):
        with pytest.raises(ValueError):
            request_for("sw-ce", **overrides)

    def test_overrides_reach_the_settings(self, request_for, settings):
        resolved = request_for("sw-ce", jet_order=8, eps_zero=1e-7).resolve_settings(settings)
        assert resolved.jet_order == 8
        assert resolved.eps_zero == 1e-7
        assert resolved.eps_div == settings.eps_div

    def test_point_defaults_to_the_marked_point(self, request_for):
        assert request_for("sw-ce").point_float == (0.0, 0.0)
        assert request_for("sw-ce", point=(Fraction(1, 2), Fraction(0))).point_float == (0.5, 0.0)


class TestRunReport:
    def test_worked_example(self, request_for, settings):
        document = run_report(request_for("sw-ce"), settings)
        assert document.errors == []
        assert document.singularity.singularity_class == SingularityClass.SWALLOWTAIL
        assert document.focal.focal_class == FocalClass.CUSPIDAL_EDGE
        assert document.focal.contact_order == 1
        assert document.conventions.strongly_adapted
        assert document.curvature.mu_c == pytest.approx(1.0)
        assert document.curvature.kappa_nu == pytest.approx(0.0, abs=1e-9)
        assert document.curvature.lambda_gauss == pytest.approx(0.0, abs=1e-9)
        assert document.curvature.twice_lambda_mean == pytest.approx(1.0)
        assert document.focal.density_routes_agree
        assert document.exit_status == EXIT_CLEAN

    def test_focal_lips(self, request_for, settings):
        document = run_report(request_for("cbf-clp"), settings)
        assert document.singularity.singularity_class == SingularityClass.CUSPIDAL_BUTTERFLY
        assert document.focal.focal_class == FocalClass.CUSPIDAL_LIPS

    def test_umbilic_is_a_note_not_an_error(self, request_for, settings):
        document = run_report(request_for("plane"), settings)
        assert document.errors == []
        assert document.curvature is None
        assert any("skipped" in note for note in document.notes)
        assert document.exit_status == EXIT_CLEAN

    def test_unresolved_exit_status(self, request_for, settings):
        document = run_report(request_for("non-admissible"), settings)
        assert document.unresolved
        assert document.exit_status == EXIT_UNRESOLVED

    def test_congruence_check(self, request_for, settings):
        outputs = frozenset({"report", "congruence-check"})
        document = run_report(request_for("sw-ce", outputs=outputs), settings)
        assert document.congruence.samples > 0
        assert document.congruence.passed

    def test_tolerances_are_recorded(self, request_for, settings):
        document = run_report(request_for("sw-ce", eps_zero=1e-8), settings)
        assert document.tolerances["eps_zero"] == 1e-8

    def test_errors_dominate_the_exit_status(self):
        document = ReportDocument(
            schema_version="1.0",
            surface="s",
            spec="",
            point=(0.0, 0.0),
            jet_order=6,
            tolerances={},
            errors=[ErrorRecord(error="DegenerateNormal", provenance="compute_normal", message="x")],
            unresolved=True,
        )
        assert exit_status(document) == EXIT_ERROR

    def test_verdict_line(self, request_for, settings):
        line = verdict_line(run_report(request_for("sw-ce"), settings))
        assert "Swallowtail" in line and "CuspidalEdge" in line


class TestSerialization:
    def test_dump_is_byte_identical(self, request_for, settings):
        first = dump_report(run_report(request_for("cbf-sw"), settings), settings)
        second = dump_report(run_report(request_for("cbf-sw"), settings), settings)
        assert first == second

    def test_dump_is_sorted_json(self, request_for, settings):
        text = dump_report(run_report(request_for("sw-ce"), settings), settings)
        payload = json.loads(text)
        assert payload["schema_version"] == "1.0"
        assert list(payload) == sorted(payload)
        assert text.endswith("\n")


class TestMesh:
    def test_grid_faces(self):
        assert grid_faces(2, 2).tolist() == [[0, 2, 3], [0, 3, 1]]
        assert len(grid_faces(4, 3)) == 2 * 3 * 2

    def test_plane(self, request_for, settings):
        mesh = export_mesh(request_for("plane"), (0.0, 1.0, 0.0, 1.0), (2, 2), "f", settings)
        assert len(mesh.vertices) == 4
        assert len(mesh.faces) == 2
        obj = mesh.to_obj()
        assert sum(line.startswith("v ") for line in obj.splitlines()) == 4
        assert "f 1 3 4" in obj

    def test_focal_vertices(self, request_for, settings):
        mesh = export_mesh(request_for("sw-ce"), (-0.2, 0.2, -0.1, 0.1), (3, 3), "focal", settings)
        assert len(mesh.vertices) == 9
        spec = request_for("sw-ce").surface
        for (u, v), vertex in zip(mesh.params, mesh.vertices):
            # Ĉ = f + v·(-u²/2, -u, 1)
            expected = spec.evaluate(u, v) + v * np.array([-u * u / 2, -u, 1.0])
            assert np.allclose(vertex, expected, atol=1e-9)

    def test_stitched_faces_close_a_missing_corner(self):
        keep = np.ones(9, dtype=bool)
        keep[4] = False
        faces = stitched_faces(3, 3, keep)
        assert len(faces) == 4
        assert faces.max() == 7
        keep = np.ones(9, dtype=bool)
        keep[0] = False
        assert len(stitched_faces(3, 3, keep)) == 7

    @pytest.mark.parametrize("hole, faces", [((0.0, 0.0), 4), ((-0.2, -0.1), 7)])
    def test_dropped_focal_samples_are_holes(self, hole, faces, request_for, settings, monkeypatch):
        evaluate = mesh_module.focal_point

        def dropping(frame, q, settings):
            return None if np.allclose(q, hole) else evaluate(frame, q, settings)

        monkeypatch.setattr(mesh_module, "focal_point", dropping)
        mesh = export_mesh(request_for("sw-ce"), (-0.2, 0.2, -0.1, 0.1), (3, 3), "focal", settings)
        assert len(mesh.vertices) == 8
        assert len(mesh.faces) == faces
        assert np.allclose(mesh.holes, [hole])
        assert len(mesh.params) == 8
        assert "# hole" in mesh.to_obj()

    def test_umbilic_focal_mesh_is_empty(self, request_for, settings):
        with pytest.raises(EmptyMesh):
            export_mesh(request_for("plane"), (0.0, 1.0, 0.0, 1.0), (3, 3), "focal", settings)

    @pytest.mark.parametrize("region, resolution", [((0, 1, 0, 1), (1, 5)), ((1, 0, 0, 1), (3, 3))])
    def test_bad_grid(self, region, resolution, request_for, settings):
        with pytest.raises(ValueError):
            export_mesh(request_for("plane"), region, resolution, "f", settings)


class TestTrace:
    def test_singular_curve_of_the_worked_example(self, request_for, settings):
        points = trace_singular_curve(request_for("sw-ce"), "f", (0.1, 0.01), 10, settings)
        assert len(points) == 11
        assert all(abs(v) < 1e-9 and residual < 1e-8 for _, v, residual in points)
        assert points[-1][0] > points[0][0]

    def test_focal_singular_curve(self, request_for, settings):
        # Ṽρ̂ = -u(1 + u²/2)³ vanishes on u = 0
        points = trace_singular_curve(request_for("sw-ce"), "focal", (0.01, 0.0), 5, settings)
        assert all(abs(u) < 1e-9 for u, _, _ in points)
        assert abs(points[-1][1] - points[0][1]) == pytest.approx(5 * settings.trace_step, rel=1e-3)

    def test_far_seed_is_lost(self, request_for, settings):
        with pytest.raises(LostCurve):
            trace_singular_curve(request_for("sw-ce"), "f", (0.0, 3.0), 5, settings)

    def test_regular_surface_has_no_curve(self, request_for, settings):
        with pytest.raises(LostCurve):
            trace_singular_curve(request_for("plane"), "f", (0.0, 0.0), 5, settings)

    def test_csv(self):
        text = trace_to_csv([(0.1, 0.0, 1e-12), (0.12, 0.0, 0.0)])
        lines = text.splitlines()
        assert lines[0] == "u,v,residual"
        assert lines[1] == "0.1,0,1.000e-12"
        assert len(lines) == 3
