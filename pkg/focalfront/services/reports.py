"""
FocalFront - Analysis Reports

Runs the classification, curvature and focal analyses for one request and
assembles a deterministic ReportDocument.
"""

import json
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from focalfront.config import Settings, get_settings
from focalfront.errors import (
    DegenerateFrame,
    DegeneratePoint,
    FocalFrontError,
    InconsistentNullDirection,
    NotAdapted,
    NotAFront,
    UmbilicDegeneracy,
    UnsupportedKind,
    VanishingBoundedCurvature,
)
from focalfront.geometry.classify import SingularityClass, SingularityReport, classify_point
from focalfront.geometry.curvature import (
    CurvatureData,
    curvature_data,
    gauss_mean_regular,
    sub_parabolic_ridge,
)
from focalfront.geometry.focal import FocalClass, FocalReport, classify_focal, congruence_density
from focalfront.geometry.polynomials import SurfaceSpec
from focalfront.geometry.surface import FrontFrame, FrontKind, check_adapted, frame_maps, normal_data
from focalfront.models import (
    CongruenceCheck,
    ConventionRecord,
    Criterion,
    CurvatureSummary,
    ErrorRecord,
    FocalReportModel,
    ReportDocument,
    SingularityReportModel,
)
from focalfront.services.specfile import format_surface_spec

logger = logging.getLogger(__name__)

OUTPUTS = frozenset({"report", "mesh", "singular-curve", "congruence-check"})

# Invariant undefined at this point rather than a failure of the analysis.
NOT_APPLICABLE = (
    NotAdapted,
    DegeneratePoint,
    InconsistentNullDirection,
    UnsupportedKind,
    UmbilicDegeneracy,
    NotAFront,
    DegenerateFrame,
    VanishingBoundedCurvature,
)

EXIT_CLEAN = 0
EXIT_ERROR = 1
EXIT_UNRESOLVED = 2

CONGRUENCE_SAMPLES = 100
CONGRUENCE_RADIUS = 0.05


@dataclass(frozen=True)
class AnalysisRequest:
    """One analysis of a surface at a point, with per-request overrides."""

    surface: SurfaceSpec
    point: tuple[Fraction, Fraction] | None = None
    jet_order: int | None = None
    eps_zero: float | None = None
    eps_div: float | None = None
    outputs: frozenset[str] = field(default_factory=lambda: frozenset({"report"}))

    def __post_init__(self) -> None:
        if self.jet_order is not None and not 4 <= self.jet_order <= 10:
            raise ValueError(f"jet_order must lie in [4, 10], got {self.jet_order}")
        for name in ("eps_zero", "eps_div"):
            value = getattr(self, name)
            if value is not None and not value > 0:
                raise ValueError(f"{name} must be positive, got {value}")
        unknown = set(self.outputs) - OUTPUTS
        if unknown:
            raise ValueError(f"unknown output(s): {', '.join(sorted(unknown))}")

    @property
    def point_float(self) -> tuple[float, float]:
        point = self.point if self.point is not None else self.surface.point
        return float(point[0]), float(point[1])

    def resolve_settings(self, settings: Settings | None = None) -> Settings:
        """Base settings with this request's overrides applied."""
        settings = settings or get_settings()
        update = {
            key: value
            for key, value in (
                ("jet_order", self.jet_order),
                ("eps_zero", self.eps_zero),
                ("eps_div", self.eps_div),
            )
            if value is not None
        }
        return settings.model_copy(update=update) if update else settings


# =============================================================================
# Report sections
# =============================================================================


def _criteria(criteria: dict) -> list[Criterion]:
    return [
        Criterion(
            name=name,
            value=c.value,
            tolerance=c.tolerance,
            margin=c.margin,
            verdict="zero" if c.vanishes else "nonzero",
        )
        for name, c in criteria.items()
    ]


def singularity_section(report: SingularityReport) -> SingularityReportModel:
    return SingularityReportModel(
        singularity_class=report.singularity_class,
        kind=report.kind,
        admissible_order=report.admissible_order,
        admissible_exhausted=report.admissible_exhausted,
        is_front=report.is_front,
        front_margin=report.front_margin,
        point=report.point,
        criteria=_criteria(report.criteria),
        warnings=list(report.warnings),
    )


def convention_section(spec: SurfaceSpec, p: tuple[float, float], settings: Settings) -> ConventionRecord:
    status = check_adapted(spec, p, settings)
    route, v_power = "cross", 0
    try:
        normal = normal_data(spec, p, settings.jet_order, settings)
        route, v_power = normal.route, normal.v_power
    except FocalFrontError as exc:
        route = f"unavailable ({exc.__class__.__name__})"
    return ConventionRecord(
        kind=status.kind,
        orientation=spec.orientation_convention,
        normal_route=route,
        v_power=v_power,
        regular=status.regular,
        singular_curve_on_axis=status.singular_curve_on_axis,
        null_condition=status.null_condition,
        unit_speed=status.unit_speed,
        strongly_adapted=status.strongly_adapted,
        margins=status.margins,
    )


def curvature_section(frame: FrontFrame, data: CurvatureData, settings: Settings) -> CurvatureSummary:
    ridge = sub_parabolic_ridge(frame, data.split, settings)
    K = H = None
    if frame.kind == FrontKind.REGULAR:
        K, H = gauss_mean_regular(frame, settings=settings)
    return CurvatureSummary(
        kappa=data.kappa.value,
        kappa_hat=data.kappa_hat.value,
        rho_hat=data.rho_hat.value,
        branch_sign=data.split.branch_sign,
        branch_margin=data.split.branch_margin,
        kappa_nu=data.kappa_nu,
        mu_c=data.mu_c,
        eta_kappa=ridge.eta_kappa,
        sub_parabolic=ridge.is_sub_parabolic,
        V_kappa=ridge.V_kappa,
        ridge=ridge.is_ridge,
        lambda_gauss=data.split.lambda_gauss.value,
        twice_lambda_mean=data.split.twice_lambda_mean.value,
        gaussian_curvature=K,
        mean_curvature=H,
    )


def focal_section(report: FocalReport) -> FocalReportModel:
    rb = report.rational_boundedness
    return FocalReportModel(
        focal_class=report.focal_class,
        initial_kind=report.initial_kind,
        is_front=report.is_front,
        front_margin=report.front_margin,
        contact_order=report.contact_order,
        focal_K_rationally_bounded=report.focal_K_rationally_bounded,
        det_y=rb.det_y if rb else None,
        V_tilde_kappa=rb.V_tilde_kappa if rb else None,
        routes_agree=rb.routes_agree if rb else None,
        density_routes_agree=report.density_routes_agree,
        focal_limiting_normal_curvature_vanishes=(
            rb.focal_limiting_normal_curvature_vanishes if rb else None
        ),
        sub_parabolic=report.sub_parabolic,
        kappa_hat_sign=report.kappa_hat_sign,
        scalars=_criteria(report.scalars),
        warnings=list(report.warnings),
    )


def congruence_check(
    frame: FrontFrame, settings: Settings, samples: int = CONGRUENCE_SAMPLES, seed: int = 0
) -> CongruenceCheck:
    """
    Compare det(F_u, F_v, F_w) with (1 - wκ)(λ - κ̂w) at random (q, w) near p.

    Samples where the frame cannot be moved (or the split fails) are skipped.
    """
    rng = np.random.default_rng(seed)
    u0, v0 = frame.base_point
    worst = 0.0
    used = 0
    for _ in range(samples):
        du, dv, w = rng.uniform(-1.0, 1.0, 3)
        q = (u0 + CONGRUENCE_RADIUS * du, v0 + CONGRUENCE_RADIUS * dv)
        try:
            lhs, rhs = congruence_density(frame, q, float(w), settings)
        except NOT_APPLICABLE:
            continue
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs)))
        used += 1
    tol = settings.identity_tolerance
    logger.debug(f"congruence check: {used}/{samples} samples, max residual {worst:.3e}")
    return CongruenceCheck(samples=used, max_residual=worst, tolerance=tol, passed=used > 0 and worst < tol)


def _error_record(exc: FocalFrontError) -> ErrorRecord:
    return ErrorRecord(error=exc.__class__.__name__, provenance=exc.provenance, message=exc.message)


# =============================================================================
# Orchestration
# =============================================================================


def run_report(request: AnalysisRequest, settings: Settings | None = None) -> ReportDocument:
    """
    Analyze the request's surface at its point.

    Failures are collected into the document's errors with their provenance;
    invariants that do not exist at the point are recorded as notes.
    """
    settings = request.resolve_settings(settings)
    spec = request.surface
    p = request.point_float
    document = ReportDocument(
        schema_version=settings.schema_version,
        surface=spec.name,
        spec=format_surface_spec(spec),
        point=p,
        jet_order=settings.jet_order,
        tolerances={"eps_zero": settings.eps_zero, "eps_div": settings.eps_div},
    )
    logger.info(f"Analyzing {spec.name} at {p} (order {settings.jet_order})")

    try:
        report = classify_point(spec, p, settings.jet_order, settings)
        document.singularity = singularity_section(report)
    except FocalFrontError as exc:
        document.errors.append(_error_record(exc))

    try:
        document.conventions = convention_section(spec, p, settings)
    except FocalFrontError as exc:
        document.errors.append(_error_record(exc))

    frame = data = None
    try:
        frame = frame_maps(spec, p, settings.jet_order, settings)
        data = curvature_data(frame, settings)
        document.curvature = curvature_section(frame, data, settings)
        document.focal = focal_section(classify_focal(frame, data, settings))
    except NOT_APPLICABLE as exc:
        document.notes.append(f"curvature and focal analysis skipped: {exc}")
    except FocalFrontError as exc:
        document.errors.append(_error_record(exc))

    if "congruence-check" in request.outputs:
        if frame is not None and data is not None:
            document.congruence = congruence_check(frame, settings)
        else:
            document.notes.append("congruence check skipped: no principal split at the point")

    document.unresolved = (
        document.singularity is not None
        and document.singularity.singularity_class == SingularityClass.UNRESOLVED
    ) or (document.focal is not None and document.focal.focal_class == FocalClass.UNRESOLVED)
    document.exit_status = exit_status(document)
    return document


def exit_status(document: ReportDocument) -> int:
    if document.errors:
        return EXIT_ERROR
    if document.unresolved:
        return EXIT_UNRESOLVED
    return EXIT_CLEAN


# =============================================================================
# Serialization
# =============================================================================


def _round(value: Any, digits: int) -> Any:
    if isinstance(value, float):
        if not math.isfinite(value):
            return None
        rounded = float(f"{value:.{digits}g}")
        return 0.0 if rounded == 0 else rounded
    if isinstance(value, dict):
        return {k: _round(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round(v, digits) for v in value]
    return value


def report_payload(document: ReportDocument, settings: Settings | None = None) -> dict:
    """The document as plain JSON types, floats rounded to float_digits, non-finite as null."""
    settings = settings or get_settings()
    return _round(document.model_dump(mode="json"), settings.float_digits)


def dump_report(document: ReportDocument, settings: Settings | None = None) -> str:
    """JSON with sorted keys and rounded floats; identical documents give identical bytes."""
    payload = report_payload(document, settings)
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def verdict_line(document: ReportDocument) -> str:
    """One-line summary used by the CLI and the demo script."""
    f_class = document.singularity.singularity_class.value if document.singularity else "error"
    focal = document.focal.focal_class.value if document.focal else "-"
    contact = document.focal.contact_order if document.focal and document.focal.contact_order else "-"
    return f"{document.surface:<20} f={f_class:<18} focal={focal:<16} contact={contact}"
