"""
FocalFront - Focal Surfaces

The focal surface Ĉ = f + ρ̂ν of the unbounded principal curvature, its
unit normal e₂ and area density, the classification of its singular
point, the contact order of the two singular curves, and rational
boundedness of its Gaussian curvature. The bounded-side focal point
C = f + ν/κ is constructed pointwise only.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping

import numpy as np

from focalfront.config import Settings, get_settings
from focalfront.errors import (
    DegenerateContact,
    DegenerateFocalSingularity,
    DegenerateFrame,
    DivisionBySingularJet,
    UmbilicDegeneracy,
    UnsupportedKind,
    VanishingBoundedCurvature,
)
from focalfront.geometry.classify import Criterion
from focalfront.geometry.curvature import (
    CurvatureData,
    curvature_data,
    directional_value,
    principal_split,
    scalar_principal,
    sub_parabolic_ridge,
)
from focalfront.geometry.jets import Jet2, JetVec3, det3, vanishing_order
from focalfront.geometry.surface import FrontFrame, FrontKind

logger = logging.getLogger(__name__)


class FocalClass(str, Enum):
    REGULAR_POINT = "RegularPoint"
    CUSPIDAL_EDGE = "CuspidalEdge"
    SWALLOWTAIL = "Swallowtail"
    CUSPIDAL_LIPS = "CuspidalLips"
    CUSPIDAL_BEAKS = "CuspidalBeaks"
    DEGENERATE_OTHER = "DegenerateOther"
    UNRESOLVED = "Unresolved"


@dataclass(frozen=True)
class RationalBoundedness:
    verdict: bool
    det_y: float
    V_tilde_kappa: float
    routes_agree: bool
    focal_limiting_normal_curvature_vanishes: bool


@dataclass(frozen=True)
class FocalReport:
    focal_class: FocalClass
    scalars: dict[str, Criterion]
    initial_kind: FrontKind
    is_front: bool
    front_margin: float
    contact_order: int | None
    focal_K_rationally_bounded: bool | None
    sub_parabolic: bool | None
    rational_boundedness: RationalBoundedness | None = None
    density_routes_agree: bool | None = None
    kappa_hat_sign: float = 1.0
    warnings: tuple[str, ...] = field(default_factory=tuple)


FOCAL_SCALAR_NAMES = (
    "V_tilde_rho",
    "V_tilde_rho_u",
    "V_tilde_rho_v",
    "V_V_tilde_rho",
    "V_tilde_V_tilde_rho",
    "V_tilde_V_tilde_V_tilde_rho",
    "hessian_uu",
    "hessian_uv",
    "hessian_vv",
    "hessian_det",
    "det_y",
    "V_tilde_kappa",
)


# =============================================================================
# Focal surface, normal and density
# =============================================================================


def focal_surface(frame: FrontFrame, data: CurvatureData) -> JetVec3:
    """Ĉ = f + ρ̂ν as a jet."""
    return frame.f + frame.nu * data.rho_hat


def V_tilde_rho(data: CurvatureData) -> Jet2:
    """Ṽρ̂ = Ṽ₁ρ̂_u + Ṽ₂ρ̂_v, whose zero set is the singular set of Ĉ."""
    rho = data.rho_hat
    return data.V_tilde[0] * rho.diff_u() + data.V_tilde[1] * rho.diff_v()


def focal_normal_and_density(
    frame: FrontFrame, data: CurvatureData, settings: Settings | None = None
) -> tuple[JetVec3, Jet2]:
    """
    e₂ = y / |y| and λ^Ĉ = det(Ĉ_u, Ĉ_v, e₂).

    Raises:
        DegenerateFrame: |y|(p) vanishes.
    """
    settings = settings or get_settings()
    if np.linalg.norm(data.y.value) <= settings.eps_zero:
        raise DegenerateFrame(f"|y| vanishes at {frame.base_point}", "focal_normal_and_density")
    e2 = data.y.normalized()
    C = focal_surface(frame, data)
    return e2, det3(C.diff_u(), C.diff_v(), e2)


def focal_density_routes(
    frame: FrontFrame, data: CurvatureData, settings: Settings | None = None
) -> dict[str, Jet2]:
    """
    λ^Ĉ by three routes.

    "det" is det(Ĉ_u, Ĉ_v, e₂); "exact" is -(1 - ρ̂κ)(Ṽρ̂)λ̂ / |y|; "closed_form"
    is (Ṽρ̂)|y| / (Ṽ₁κ̂λ̂). All three agree coefficientwise as jets. The closed
    form needs Ṽ₁(p) != 0, which holds at second-kind points.
    """
    _, density = focal_normal_and_density(frame, data, settings)
    vr = V_tilde_rho(data)
    y_norm = data.y.norm()
    exact = -(1.0 - data.rho_hat * data.kappa) * vr * frame.lam_hat / y_norm
    closed = vr * y_norm / (data.V_tilde[0] * data.kappa_hat * frame.lam_hat)
    return {"det": density, "exact": exact, "closed_form": closed}


def density_routes_agree(
    frame: FrontFrame, data: CurvatureData, settings: Settings | None = None
) -> bool:
    """Whether every route of focal_density_routes matches the determinant coefficientwise."""
    settings = settings or get_settings()
    routes = focal_density_routes(frame, data, settings)
    det = routes.pop("det")
    for name, route in routes.items():
        gap = (route - det).max_abs()
        if gap > settings.identity_tolerance * max(1.0, det.max_abs(), route.max_abs()):
            logger.warning(f"focal density route {name} is off by {gap:.3e} at {frame.base_point}")
            return False
    return True


# =============================================================================
# Classification of Ĉ
# =============================================================================


def decide_focal(initial_kind: FrontKind, scalars: Mapping[str, Criterion]) -> FocalClass:
    """Map the focal scalars to a class; a pure function of its arguments."""
    if initial_kind == FrontKind.FIRST_KIND:
        return FocalClass.REGULAR_POINT
    if not scalars["V_tilde_rho"].vanishes:
        return FocalClass.REGULAR_POINT

    third = scalars["V_tilde_V_tilde_V_tilde_rho"]
    if not (scalars["V_tilde_rho_u"].vanishes and scalars["V_tilde_rho_v"].vanishes):
        if not scalars["V_tilde_V_tilde_rho"].vanishes:
            return FocalClass.CUSPIDAL_EDGE
        if not scalars["V_V_tilde_rho"].vanishes and not third.vanishes:
            return FocalClass.SWALLOWTAIL
        return FocalClass.UNRESOLVED

    hessian = scalars["hessian_det"]
    if hessian.vanishes:
        return FocalClass.UNRESOLVED
    if hessian.value > 0:
        return FocalClass.CUSPIDAL_LIPS
    if not third.vanishes:
        return FocalClass.CUSPIDAL_BEAKS
    return FocalClass.DEGENERATE_OTHER


def focal_scalars(
    frame: FrontFrame, data: CurvatureData, settings: Settings | None = None
) -> dict[str, Criterion]:
    """Every scalar the focal decision table reads, with margins."""
    settings = settings or get_settings()
    vr = V_tilde_rho(data)
    V, Vt = data.V, data.V_tilde
    grad = vr.gradient
    hessian = vr.hessian()
    W = Vt[0] * vr.diff_u() + Vt[1] * vr.diff_v()
    third = directional_value(Vt, W)
    y = data.y
    det_y = det3(y.diff_u(), y.diff_v(), y).value
    V_tilde_kappa = directional_value(Vt, data.kappa)

    tol = settings.eps_zero * vr.scale()
    eigenvalues = np.linalg.eigvalsh(hessian)
    hessian_tol = tol * max(1.0, float(np.max(np.abs(eigenvalues))))
    det_tol = settings.eps_zero * max(1.0, y.scale() ** 3)
    kappa_tol = settings.eps_zero * data.kappa.scale()
    return {
        "V_tilde_rho": Criterion(vr.value, tol),
        "V_tilde_rho_u": Criterion(float(grad[0]), tol),
        "V_tilde_rho_v": Criterion(float(grad[1]), tol),
        "V_V_tilde_rho": Criterion(directional_value(V, vr), tol),
        "V_tilde_V_tilde_rho": Criterion(directional_value(Vt, vr), tol),
        "V_tilde_V_tilde_V_tilde_rho": Criterion(third, tol),
        "hessian_uu": Criterion(float(hessian[0, 0]), tol),
        "hessian_uv": Criterion(float(hessian[0, 1]), tol),
        "hessian_vv": Criterion(float(hessian[1, 1]), tol),
        "hessian_det": Criterion(float(np.linalg.det(hessian)), hessian_tol),
        "det_y": Criterion(det_y, det_tol),
        "V_tilde_kappa": Criterion(V_tilde_kappa, kappa_tol),
    }


def focal_front_witness(frame: FrontFrame, data: CurvatureData, settings: Settings | None = None) -> float:
    """|(e₂)_u(p)|, nonzero where Ĉ is a front at a second-kind point."""
    e2, _ = focal_normal_and_density(frame, data, settings)
    return float(np.linalg.norm(e2.diff_u().value))


def contact_order(frame: FrontFrame, data: CurvatureData, settings: Settings | None = None) -> int:
    """
    Vanishing order at p of c(u) = e(u)·Ṽ₁(u, 0)·ρ̂_v(u, 0).

    Order 1 is 1-point contact between the singular curves of f and Ĉ,
    order 2 is 2-point contact.

    Raises:
        DegenerateContact: the singular set of Ĉ is not a regular curve at p.
    """
    settings = settings or get_settings()
    if not frame.is_second_kind:
        raise UnsupportedKind(
            f"contact order needs a second-kind point, got {frame.kind.value}", "contact_order"
        )
    vr = V_tilde_rho(data)
    gradient = float(np.linalg.norm(vr.gradient))
    if gradient <= settings.eps_zero * vr.scale():
        raise DegenerateContact(
            f"d(Ṽρ̂) vanishes at {frame.base_point} (|d(Ṽρ̂)| = {gradient:.3e})",
            "contact_order",
        )
    c = frame.e_series * data.V_tilde[0].along_u() * data.rho_hat.diff_v().along_u()
    return vanishing_order(c, settings.eps_zero)


def focal_K_rational_bounded(
    frame: FrontFrame, data: CurvatureData, settings: Settings | None = None
) -> RationalBoundedness:
    """
    Whether the Gaussian curvature of Ĉ is rationally bounded at p, which
    holds exactly at sub-parabolic points (Ṽκ(p) = 0).

    Raises:
        DegenerateFocalSingularity: d(Ṽρ̂)(p) = 0.
    """
    settings = settings or get_settings()
    scalars = focal_scalars(frame, data, settings)
    if scalars["V_tilde_rho_u"].vanishes and scalars["V_tilde_rho_v"].vanishes:
        raise DegenerateFocalSingularity(
            f"Ĉ is degenerate at {frame.base_point}", "focal_K_rational_bounded"
        )
    det_y = scalars["det_y"]
    kappa_route = scalars["V_tilde_kappa"]
    verdict = kappa_route.vanishes
    agree = det_y.vanishes == kappa_route.vanishes
    if not agree:
        logger.warning(
            f"det(y_u, y_v, y) = {det_y.value:.3e} and Ṽκ = {kappa_route.value:.3e} "
            f"disagree on vanishing at {frame.base_point}"
        )
    return RationalBoundedness(
        verdict=verdict,
        det_y=det_y.value,
        V_tilde_kappa=kappa_route.value,
        routes_agree=agree,
        focal_limiting_normal_curvature_vanishes=verdict,
    )


def classify_focal(
    frame: FrontFrame, data: CurvatureData | None = None, settings: Settings | None = None
) -> FocalReport:
    """Classify the singular point of Ĉ at p and collect its invariants."""
    settings = settings or get_settings()
    data = data or curvature_data(frame, settings)
    scalars = focal_scalars(frame, data, settings)
    focal_class = decide_focal(frame.kind, scalars)
    warnings: list[str] = list(frame.warnings)

    front_margin = focal_front_witness(frame, data, settings)
    is_front = frame.is_second_kind or front_margin > settings.eps_zero

    order = None
    boundedness = None
    routes_agree = None
    if frame.is_second_kind:
        try:
            order = contact_order(frame, data, settings)
        except DegenerateContact as exc:
            warnings.append(str(exc))
        try:
            boundedness = focal_K_rational_bounded(frame, data, settings)
        except DegenerateFocalSingularity as exc:
            warnings.append(str(exc))
        try:
            routes_agree = density_routes_agree(frame, data, settings)
        except (DegenerateFrame, DivisionBySingularJet) as exc:
            warnings.append(str(exc))

    sub_parabolic = sub_parabolic_ridge(frame, data.split, settings).is_sub_parabolic
    logger.info(f"focal surface at {frame.base_point}: {focal_class.value}")
    return FocalReport(
        focal_class=focal_class,
        scalars=scalars,
        initial_kind=frame.kind,
        is_front=is_front,
        front_margin=front_margin,
        contact_order=order,
        focal_K_rationally_bounded=boundedness.verdict if boundedness else None,
        sub_parabolic=sub_parabolic,
        rational_boundedness=boundedness,
        density_routes_agree=routes_agree,
        kappa_hat_sign=1.0 if data.kappa_hat.value >= 0 else -1.0,
        warnings=tuple(warnings),
    )


# =============================================================================
# Normal congruence and the bounded-side focal point
# =============================================================================


def congruence_density(
    frame: FrontFrame,
    q: tuple[float, float],
    w: float,
    settings: Settings | None = None,
) -> tuple[float, float]:
    """
    det(F_u, F_v, F_w) of the normal congruence F = f + wν at (q, w), and the
    factored product (1 - wκ)(λ - κ̂w).
    """
    settings = settings or get_settings()
    at_q = frame.at(q)
    lhs = det3(at_q.f_u + at_q.nu_u * w, at_q.f_v + at_q.nu_v * w, at_q.nu).value
    split = principal_split(at_q, settings)
    rhs = (1.0 - w * split.kappa.value) * (at_q.lam.value - split.kappa_hat.value * w)
    return lhs, rhs


def focal_bounded_surface(
    frame: FrontFrame, q: tuple[float, float] | None = None, settings: Settings | None = None
) -> np.ndarray:
    """
    C(q) = f(q) + ν(q) / κ(q) for the bounded principal curvature κ.

    Raises:
        VanishingBoundedCurvature: |κ(q)| <= eps_zero.
    """
    settings = settings or get_settings()
    at_q = frame if q is None or tuple(map(float, q)) == frame.base_point else frame.at(q)
    try:
        kappa = principal_split(at_q, settings).kappa.value
    except UmbilicDegeneracy:
        kappa = scalar_principal(at_q, settings)[0]
    if abs(kappa) <= settings.eps_zero:
        raise VanishingBoundedCurvature(
            f"bounded principal curvature {kappa:.3e} vanishes at {at_q.base_point}",
            "focal_bounded_surface",
            kappa=kappa,
        )
    return at_q.f.value + at_q.nu.value / kappa
