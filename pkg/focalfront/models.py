"""
FocalFront - Data Models

Pydantic schemas for every structure that leaves the library: report
documents, API payloads and fixture listings.
"""

from pydantic import BaseModel, Field, model_validator

from focalfront.geometry.classify import PointKind, SingularityClass
from focalfront.geometry.focal import FocalClass
from focalfront.geometry.surface import FrontKind


# =============================================================================
# Report building blocks
# =============================================================================


class Criterion(BaseModel):
    """A scalar read by a decision table, with its tolerance band."""
    name: str
    value: float
    tolerance: float
    margin: float
    verdict: str = Field(pattern="^(zero|nonzero)$")


class SingularityReportModel(BaseModel):
    """Classification of the initial surface at the marked point."""
    singularity_class: SingularityClass
    kind: PointKind
    admissible_order: int | None = None
    admissible_exhausted: bool = False
    is_front: bool
    front_margin: float
    point: tuple[float, float]
    criteria: list[Criterion]
    warnings: list[str] = Field(default_factory=list)


class CurvatureSummary(BaseModel):
    """Principal data and singular-point invariants at the marked point."""
    kappa: float
    kappa_hat: float
    rho_hat: float
    branch_sign: float
    branch_margin: float
    kappa_nu: float | None = None
    mu_c: float | None = None
    eta_kappa: float
    sub_parabolic: bool
    V_kappa: float
    ridge: bool
    lambda_gauss: float | None = None  # λK, smooth across the singular curve
    twice_lambda_mean: float | None = None
    gaussian_curvature: float | None = None  # regular points only
    mean_curvature: float | None = None


class FocalReportModel(BaseModel):
    """Classification of the focal surface Ĉ at the marked point."""
    focal_class: FocalClass
    initial_kind: FrontKind
    is_front: bool
    front_margin: float
    contact_order: int | None = None
    focal_K_rationally_bounded: bool | None = None
    det_y: float | None = None
    V_tilde_kappa: float | None = None
    routes_agree: bool | None = None
    density_routes_agree: bool | None = None
    focal_limiting_normal_curvature_vanishes: bool | None = None
    sub_parabolic: bool | None = None
    kappa_hat_sign: float
    scalars: list[Criterion]
    warnings: list[str] = Field(default_factory=list)


class ConventionRecord(BaseModel):
    """Orientation and adapted-position conventions found at the marked point."""
    kind: FrontKind
    orientation: str
    normal_route: str
    v_power: int = 0
    regular: bool
    singular_curve_on_axis: bool
    null_condition: str | None = None
    unit_speed: bool | None = None
    strongly_adapted: bool | None = None
    margins: dict[str, float] = Field(default_factory=dict)


class CongruenceCheck(BaseModel):
    """Factorization of the normal congruence density at sampled (q, w)."""
    samples: int
    max_residual: float
    tolerance: float
    passed: bool


class ErrorRecord(BaseModel):
    """One failure, attributed to the operation that raised it."""
    error: str
    provenance: str
    message: str


class ReportDocument(BaseModel):
    """Everything run_report produces for one request."""
    schema_version: str
    surface: str
    spec: str
    point: tuple[float, float]
    jet_order: int
    tolerances: dict[str, float]
    singularity: SingularityReportModel | None = None
    conventions: ConventionRecord | None = None
    curvature: CurvatureSummary | None = None
    focal: FocalReportModel | None = None
    congruence: CongruenceCheck | None = None
    notes: list[str] = Field(default_factory=list)
    errors: list[ErrorRecord] = Field(default_factory=list)
    unresolved: bool = False
    exit_status: int = 0


# =============================================================================
# API payloads
# =============================================================================


class AnalysisPayload(BaseModel):
    """Schema for requesting an analysis over HTTP."""
    spec: str | None = None
    fixture: str | None = None
    point: tuple[str, str] | None = None  # rationals such as "1/2"
    order: int | None = Field(default=None, ge=4, le=10)
    eps_zero: float | None = Field(default=None, gt=0)
    eps_div: float | None = Field(default=None, gt=0)
    outputs: list[str] = Field(default_factory=lambda: ["report"])

    @model_validator(mode="after")
    def check_one_source(self) -> "AnalysisPayload":
        if (self.spec is None) == (self.fixture is None):
            raise ValueError("give exactly one of 'spec' or 'fixture'")
        return self


class FixtureSummary(BaseModel):
    """Schema for a fixture listing entry."""
    name: str
    description: str
    point: tuple[str, str]


class FixtureDetail(FixtureSummary):
    """Schema for a single fixture, including its spec text."""
    spec: str
    components: tuple[str, str, str]
    expected_class: SingularityClass | None = None
    expected_focal_class: FocalClass | None = None
    expected_contact_order: int | None = None
