"""FocalFront - Services Package"""
from focalfront.services.fixtures import get_fixture, list_fixtures
from focalfront.services.mesh import Mesh, export_mesh, write_mesh
from focalfront.services.reports import AnalysisRequest, dump_report, run_report
from focalfront.services.specfile import format_surface_spec, load_surface, parse_surface_spec
from focalfront.services.tracing import trace_singular_curve, trace_to_csv, write_trace

__all__ = [
    "get_fixture",
    "list_fixtures",
    "Mesh",
    "export_mesh",
    "write_mesh",
    "AnalysisRequest",
    "dump_report",
    "run_report",
    "format_surface_spec",
    "load_surface",
    "parse_surface_spec",
    "trace_singular_curve",
    "trace_to_csv",
    "write_trace",
]
