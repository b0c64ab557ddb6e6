"""
FocalFront - Singularity Classification

Classifies singular points of the initial front from directional
derivatives of the signed area density λ along a null vector field η.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping

import numpy as np

from focalfront.config import Settings
from focalfront.errors import (
    DegeneratePoint,
    InconsistentNullDirection,
    NotAdapted,
    UnsupportedKind,
)
from focalfront.geometry.jets import Jet2, vanishing_order
from focalfront.geometry.polynomials import SurfaceSpec
from focalfront.geometry.surface import (
    FrontFrame,
    FrontKind,
    _normal_data,
    _resolve,
    frame_maps,
)

logger = logging.getLogger(__name__)


class SingularityClass(str, Enum):
    REGULAR = "Regular"
    CUSPIDAL_EDGE = "CuspidalEdge"
    SWALLOWTAIL = "Swallowtail"
    CUSPIDAL_BUTTERFLY = "CuspidalButterfly"
    CUSPIDAL_LIPS = "CuspidalLips"
    CUSPIDAL_BEAKS = "CuspidalBeaks"
    NON_FRONT = "NonFront"
    UNRESOLVED = "Unresolved"


class PointKind(str, Enum):
    FIRST_KIND = "FirstKind"
    SECOND_KIND = "SecondKind"
    NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class Criterion:
    """A decisive scalar with its distance from zero and the zero verdict."""

    value: float
    tolerance: float

    @property
    def margin(self) -> float:
        return abs(self.value)

    @property
    def vanishes(self) -> bool:
        return self.margin <= self.tolerance


@dataclass(frozen=True)
class SingularityReport:
    singularity_class: SingularityClass
    kind: PointKind
    admissible_order: int | None
    admissible_exhausted: bool
    criteria: dict[str, Criterion]
    is_front: bool
    front_margin: float
    point: tuple[float, float]
    warnings: tuple[str, ...] = field(default_factory=tuple)


CRITERIA_NAMES = (
    "lambda",
    "lambda_u",
    "lambda_v",
    "eta_lambda",
    "eta_eta_lambda",
    "eta_eta_eta_lambda",
    "hessian_det",
    "dnu_eta",
)


# =============================================================================
# Decision table
# =============================================================================


def decide_singularity(criteria: Mapping[str, Criterion]) -> SingularityClass:
    """Map criteria values to a class; a pure function of its argument."""
    if not criteria["lambda"].vanishes:
        return SingularityClass.REGULAR
    if criteria["dnu_eta"].vanishes:
        return SingularityClass.NON_FRONT

    if not (criteria["lambda_u"].vanishes and criteria["lambda_v"].vanishes):
        if not criteria["eta_lambda"].vanishes:
            return SingularityClass.CUSPIDAL_EDGE
        if not criteria["eta_eta_lambda"].vanishes:
            return SingularityClass.SWALLOWTAIL
        if not criteria["eta_eta_eta_lambda"].vanishes:
            return SingularityClass.CUSPIDAL_BUTTERFLY
        return SingularityClass.UNRESOLVED

    hessian = criteria["hessian_det"]
    if hessian.vanishes:
        return SingularityClass.UNRESOLVED
    if hessian.value > 0:
        # Morse index 0 or 2
        return SingularityClass.CUSPIDAL_LIPS
    if not criteria["eta_eta_lambda"].vanishes:
        return SingularityClass.CUSPIDAL_BEAKS
    return SingularityClass.UNRESOLVED


# =============================================================================
# Null vector fields
# =============================================================================


def directional(eta: tuple[Jet2, Jet2], a: Jet2) -> Jet2:
    """η a = η₁ a_u + η₂ a_v as a jet."""
    return eta[0] * a.diff_u() + eta[1] * a.diff_v()


def null_vector_field(
    spec: SurfaceSpec,
    p: tuple[float, float],
    order: int,
    frame: FrontFrame | None,
    d_lambda_vanishes: bool,
) -> tuple[Jet2, Jet2]:
    """
    A null vector field η near p.

    Second kind: ∂_u + e(u)∂_v. First kind: ∂_v. Otherwise f_b projected off
    the dominant f_a, which is null along a rank-one singular curve; at
    dλ(p) = 0 a constant kernel vector of df(p).
    """
    one = Jet2.constant(1.0, p, order)
    zero = Jet2.constant(0.0, p, order)
    if frame is not None and frame.is_second_kind:
        return one, frame.e
    if frame is not None and frame.is_first_kind:
        return zero, one

    f_u = spec.derivative_jets(1, 0, p, order)
    f_v = spec.derivative_jets(0, 1, p, order)
    if d_lambda_vanishes:
        jacobian = np.column_stack([f_u.value, f_v.value])
        _, _, vt = np.linalg.svd(jacobian)
        kernel = vt[-1]
        return Jet2.constant(kernel[0], p, order), Jet2.constant(kernel[1], p, order)

    if np.linalg.norm(f_u.value) >= np.linalg.norm(f_v.value):
        return -(f_v.dot(f_u) / f_u.dot(f_u)), one
    return one, -(f_u.dot(f_v) / f_v.dot(f_v))


# =============================================================================
# Operations
# =============================================================================


def _point_kind(frame: FrontFrame | None) -> PointKind:
    if frame is not None and frame.is_second_kind:
        return PointKind.SECOND_KIND
    if frame is not None and frame.is_first_kind:
        return PointKind.FIRST_KIND
    return PointKind.NOT_APPLICABLE


def _try_frame(spec: SurfaceSpec, p, order: int, settings: Settings) -> FrontFrame | None:
    try:
        return frame_maps(spec, p, order, settings)
    except (NotAdapted, InconsistentNullDirection, DegeneratePoint) as exc:
        logger.debug(f"{spec.name}: no frame at {p} ({exc}); classifying on λ alone")
        return None


def is_front_at(
    spec: SurfaceSpec,
    p: tuple[float, float] | None = None,
    order: int | None = None,
    settings: Settings | None = None,
    frame: FrontFrame | None = None,
) -> tuple[bool, float]:
    """
    Whether f is a front at p.

    Second kind: (L̂ + eM̂)(p) ≠ 0. First kind and frame-less points:
    dν(η)(p) ≠ 0. Regular points are fronts; their margin is |λ(p)|.

    Returns:
        (verdict, margin)
    """
    settings, order = _resolve(settings, order)
    p = spec.point_float if p is None else (float(p[0]), float(p[1]))
    if frame is None:
        frame = _try_frame(spec, p, order, settings)

    if frame is not None and frame.kind == FrontKind.REGULAR:
        return True, abs(frame.lam.value)
    if frame is not None and frame.is_second_kind:
        fd = frame.fundamentals
        witness = fd.L + frame.e * fd.M
        margin = abs(witness.value)
        return margin > settings.eps_zero * witness.scale(), margin

    if frame is not None:
        nu, lam = frame.nu, frame.lam
    else:
        data = _normal_data(spec, p, order, settings)
        nu, lam = data.nu, data.lam
    tol = settings.eps_zero * lam.scale()
    d_lambda_vanishes = bool(np.all(np.abs(lam.gradient) <= tol))
    eta = null_vector_field(spec, p, order, frame, d_lambda_vanishes)
    dnu = nu.diff_u() * eta[0] + nu.diff_v() * eta[1]
    margin = float(np.linalg.norm(dnu.value))
    return margin > settings.eps_zero * dnu.scale(), margin


def admissibility_order(
    spec: SurfaceSpec,
    p: tuple[float, float] | None = None,
    order: int | None = None,
    settings: Settings | None = None,
    frame: FrontFrame | None = None,
) -> tuple[int, bool]:
    """
    Vanishing order l of e at p.

    Returns:
        (l, exhausted); exhausted means every coefficient up to the jet
        order vanished, so the true order is at least N + 1.
    """
    settings, order = _resolve(settings, order)
    if frame is None:
        p = spec.point_float if p is None else p
        frame = frame_maps(spec, p, order, settings)
    if not frame.is_second_kind:
        raise UnsupportedKind(
            f"admissibility needs a second-kind point, got {frame.kind.value}", "admissibility_order"
        )
    l = vanishing_order(frame.e_series, settings.eps_zero)
    return l, l > frame.e_series.order


def classify_point(
    spec: SurfaceSpec,
    p: tuple[float, float] | None = None,
    order: int | None = None,
    settings: Settings | None = None,
) -> SingularityReport:
    """Classify the singular point p of f from the λ criteria."""
    settings, order = _resolve(settings, order)
    p = spec.point_float if p is None else (float(p[0]), float(p[1]))
    frame = _try_frame(spec, p, order, settings)

    if frame is not None:
        lam, nu = frame.lam, frame.nu
        warnings = frame.warnings
    else:
        data = _normal_data(spec, p, order, settings)
        lam, nu = data.lam, data.nu
        warnings = (f"λ from the {data.route} normal; frame maps unavailable",)

    tol = settings.eps_zero * lam.scale()
    d_lambda_vanishes = bool(np.all(np.abs(lam.gradient) <= tol))
    eta = null_vector_field(spec, p, order, frame, d_lambda_vanishes)

    eta_lam = directional(eta, lam)
    eta2_lam = directional(eta, eta_lam)
    eta3_lam = directional(eta, eta2_lam)
    hessian = lam.hessian()
    eigenvalues = np.linalg.eigvalsh(hessian)
    hessian_det = float(np.linalg.det(hessian))

    dnu = nu.diff_u() * eta[0] + nu.diff_v() * eta[1]

    criteria = {
        "lambda": Criterion(lam.value, tol),
        "lambda_u": Criterion(float(lam.gradient[0]), tol),
        "lambda_v": Criterion(float(lam.gradient[1]), tol),
        "eta_lambda": Criterion(eta_lam.value, tol),
        "eta_eta_lambda": Criterion(eta2_lam.value, tol),
        "eta_eta_eta_lambda": Criterion(eta3_lam.value, tol),
        # |det| <= tol * max|eig| exactly when some eigenvalue sits inside the band
        "hessian_det": Criterion(hessian_det, tol * max(1.0, float(np.max(np.abs(eigenvalues))))),
        "dnu_eta": Criterion(float(np.linalg.norm(dnu.value)), settings.eps_zero * dnu.scale()),
    }
    singularity_class = decide_singularity(criteria)

    admissible: int | None = None
    exhausted = False
    if frame is not None and frame.is_second_kind:
        admissible, exhausted = admissibility_order(spec, p, order, settings, frame=frame)

    is_front = not criteria["lambda"].vanishes or not criteria["dnu_eta"].vanishes
    logger.info(f"{spec.name} at {p}: {singularity_class.value} ({_point_kind(frame).value})")
    return SingularityReport(
        singularity_class=singularity_class,
        kind=_point_kind(frame),
        admissible_order=admissible,
        admissible_exhausted=exhausted,
        criteria=criteria,
        is_front=is_front,
        front_margin=criteria["dnu_eta"].margin,
        point=p,
        warnings=tuple(warnings),
    )
