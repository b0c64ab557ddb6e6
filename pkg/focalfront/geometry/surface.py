"""
FocalFront - Surface Model

Per-point analytic data of a polynomial map: jets of f, the smooth unit
normal through the singular curve, the signed area density, the null
function e(u) and the frame maps h (second kind) or g (first kind) with
their fundamental quantities.

Charts are assumed to carry the singular curve on {v = 0}; that convention
is checked here, never assumed.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

import numpy as np
import sympy

from focalfront.config import Settings, get_settings
from focalfront.errors import (
    DegenerateNormal,
    DegeneratePoint,
    InconsistentNullDirection,
    NotAdapted,
    NotDivisible,
    OrderExceeded,
    UnsupportedKind,
)
from focalfront.geometry.jets import Jet1, Jet2, JetVec3
from focalfront.geometry.polynomials import (
    V,
    SurfaceSpec,
    exact_quotient,
    poly_cross,
    poly_gcd,
    polynomial_jet,
    restrict_to_axis,
    to_poly,
)

logger = logging.getLogger(__name__)

Point = tuple[float, float]


class FrontKind(str, Enum):
    FIRST_KIND = "FirstKind"
    SECOND_KIND = "SecondKind"
    REGULAR = "Regular"
    DEGENERATE = "Degenerate"


@dataclass(frozen=True)
class Fundamentals:
    """The six fundamental quantities of a frame, in (E, F, G, L, M, N) order."""

    E: Jet2
    F: Jet2
    G: Jet2
    L: Jet2
    M: Jet2
    N: Jet2

    @property
    def discriminant(self) -> Jet2:
        return self.E * self.G - self.F * self.F

    def values(self) -> dict[str, float]:
        return {k: getattr(self, k).value for k in ("E", "F", "G", "L", "M", "N")}


@dataclass(frozen=True)
class ChartData:
    """
    Exact polynomial data that lets a frame be rebuilt at any base point.

    Second kind: P = f_u^k(u, 0), Q = f_v^k(u, 0) for the null component k,
    h_numerator = (Q f_u - P f_v) / v, so that h = h_numerator / Q and
    e = -P / Q. First kind: g = f_v / v.
    """

    kind: FrontKind
    null_component: int | None = None
    P: sympy.Poly | None = None
    Q: sympy.Poly | None = None
    h_numerator: tuple[sympy.Poly, ...] | None = None
    g: tuple[sympy.Poly, ...] | None = None


@dataclass(frozen=True)
class NormalData:
    nu: JetVec3
    lam: Jet2
    lam_hat: Jet2 | None
    route: str  # "cross", "axis-factor" or "gcd"
    v_power: int = 0


@dataclass(frozen=True)
class AdaptedStatus:
    kind: FrontKind
    regular: bool
    singular_curve_on_axis: bool
    null_condition: str | None
    unit_speed: bool | None
    strongly_adapted: bool | None
    margins: dict[str, float] = field(default_factory=dict)

    @property
    def adapted(self) -> bool:
        return self.kind in (FrontKind.FIRST_KIND, FrontKind.SECOND_KIND) and self.singular_curve_on_axis


@dataclass(frozen=True)
class FrontFrame:
    """Immutable per-point package of ν, λ, the frame maps and fundamentals."""

    spec: SurfaceSpec | None
    base_point: Point
    order: int
    kind: FrontKind
    chart: ChartData
    f: JetVec3
    f_u: JetVec3
    f_v: JetVec3
    nu: JetVec3
    lam: Jet2
    lam_hat: Jet2
    stretch: Jet2  # λ = stretch · λ̂; the coordinate v at singular kinds, 1 when regular
    fundamentals: Fundamentals
    e: Jet2 | None = None
    e_series: Jet1 | None = None
    h: JetVec3 | None = None
    g: JetVec3 | None = None
    warnings: tuple[str, ...] = ()

    @cached_property
    def nu_u(self) -> JetVec3:
        return self.nu.diff_u()

    @cached_property
    def nu_v(self) -> JetVec3:
        return self.nu.diff_v()

    @property
    def is_second_kind(self) -> bool:
        return self.kind == FrontKind.SECOND_KIND

    @property
    def is_first_kind(self) -> bool:
        return self.kind == FrontKind.FIRST_KIND

    def at(self, point: Point) -> FrontFrame:
        """The same chart's frame rebuilt at another base point."""
        if self.spec is None:
            raise ValueError("a frame built from bare jets cannot be moved")
        return frame_maps(self.spec, point, self.order, like=self)


# =============================================================================
# Helpers
# =============================================================================


def _resolve(settings: Settings | None, order: int | None) -> tuple[Settings, int]:
    settings = settings or get_settings()
    order = settings.jet_order if order is None else order
    if order > settings.max_jet_order:
        raise OrderExceeded(
            f"requested jet order {order} exceeds the configured maximum {settings.max_jet_order}",
            "evaluate_jets",
        )
    return settings, order


def _as_point(p) -> Point:
    return float(p[0]), float(p[1])


def _tolerance(settings: Settings, *arrays: np.ndarray) -> float:
    scale = max([1.0] + [float(np.max(np.abs(a))) for a in arrays])
    return settings.eps_zero * scale


def orientation_sign(lam: Jet2, tol: float) -> float:
    """+1 or -1 so that λ_v(p) > 0, falling back to λ_u(p) then λ(p)."""
    grad = lam.gradient
    for candidate in (grad[1], grad[0], lam.value):
        if abs(candidate) > tol:
            return 1.0 if candidate > 0 else -1.0
    return 1.0


# =============================================================================
# Jets and the unit normal
# =============================================================================


def evaluate_jets(
    spec: SurfaceSpec, p: Point, order: int | None = None, settings: Settings | None = None
) -> JetVec3:
    """Exact Taylor expansion of the polynomial map at p."""
    _, order = _resolve(settings, order)
    return spec.jets(_as_point(p), order)


def _normal_data(spec: SurfaceSpec, p: Point, order: int, settings: Settings) -> NormalData:
    p = _as_point(p)
    f_u = spec.derivative_jets(1, 0, p, order)
    f_v = spec.derivative_jets(0, 1, p, order)
    tol = _tolerance(settings, f_u.value, f_v.value)

    cross = f_u.cross(f_v)
    power = 0
    while np.linalg.norm(cross.value) <= tol and cross.order > 1:
        try:
            cross = cross.divide_by_coordinate("v", settings.eps_div)
        except NotDivisible:
            break
        power += 1

    if np.linalg.norm(cross.value) > tol:
        length = cross.norm()
        nu = cross / length
        if power == 0:
            return NormalData(nu=nu, lam=length, lam_hat=None, route="cross")
        lam_hat = length
        for _ in range(power - 1):
            lam_hat = lam_hat.multiply_by_coordinate("v")
        lam = lam_hat.multiply_by_coordinate("v")
        return NormalData(nu=nu, lam=lam, lam_hat=lam_hat, route="axis-factor", v_power=power)

    # The singular curve is not the axis: pull out the common factor of f_u x f_v exactly.
    cross_poly = poly_cross(spec.derivative(1, 0), spec.derivative(0, 1))
    common = poly_gcd(cross_poly)
    if common.is_zero or common.total_degree() == 0:
        raise DegenerateNormal(
            "f_u x f_v vanishes at the point and has no common polynomial factor",
            "compute_normal",
            point=p,
        )
    reduced = JetVec3([polynomial_jet(exact_quotient(c, common), p, order) for c in cross_poly])
    if np.linalg.norm(reduced.value) <= tol:
        raise DegenerateNormal(
            "the reduced cross product still vanishes at the point (corank 2 or worse)",
            "compute_normal",
            point=p,
        )
    length = reduced.norm()
    nu = reduced / length
    lam = polynomial_jet(common, p, order) * length
    sign = orientation_sign(lam, tol)
    return NormalData(nu=nu * sign, lam=lam * sign, lam_hat=None, route="gcd")


def normal_data(
    spec: SurfaceSpec, p: Point, order: int | None = None, settings: Settings | None = None
) -> NormalData:
    """The unit normal with λ, and the route that produced it ("cross", "axis-factor" or "gcd")."""
    settings, order = _resolve(settings, order)
    return _normal_data(spec, p, order, settings)


def compute_normal(
    spec: SurfaceSpec, p: Point, order: int | None = None, settings: Settings | None = None
) -> JetVec3:
    """Unit normal jet, smooth through the singular point."""
    settings, order = _resolve(settings, order)
    return _normal_data(spec, p, order, settings).nu


def signed_area_density(
    spec: SurfaceSpec, p: Point, order: int | None = None, settings: Settings | None = None
) -> tuple[Jet2, Jet2 | None]:
    """
    λ = det(f_u, f_v, ν) as a jet.

    Returns:
        (λ, λ̂) where λ̂ = λ / v when the v-axis factorization applies, else None.
    """
    settings, order = _resolve(settings, order)
    data = _normal_data(spec, p, order, settings)
    return data.lam, data.lam_hat


def null_function(
    spec: SurfaceSpec,
    p: Point,
    order: int | None = None,
    component: int | None = None,
    settings: Settings | None = None,
) -> Jet1:
    """
    e(u) with f_u + e(u) f_v = 0 along v = 0.

    Series division against the largest component of f_v at p; the other
    components must agree with the resulting e.
    """
    settings, order = _resolve(settings, order)
    base = (float(p[0]), 0.0)
    fu = [c.along_u() for c in spec.derivative_jets(1, 0, base, order).components]
    fv = [c.along_u() for c in spec.derivative_jets(0, 1, base, order).components]
    if component is None:
        component = int(np.argmax([abs(c.value) for c in fv]))
    tol = settings.eps_zero * max([1.0] + [c.scale() for c in fu + fv])
    if abs(fv[component].value) <= tol:
        raise NotAdapted(
            "f_v vanishes at the point, no null function along the axis",
            "null_function",
            component=component,
        )
    e = -(fu[component] / fv[component])
    for j in range(3):
        if j == component:
            continue
        residual = fu[j] + e * fv[j]
        worst = float(np.max(np.abs(residual.coeffs)))
        if worst > tol:
            raise InconsistentNullDirection(
                f"component {j} disagrees with the null direction by {worst:.3e}",
                "null_function",
                component=j,
                residual=worst,
            )
    return e


# =============================================================================
# Kind detection and frames
# =============================================================================


def _detect_chart(spec: SurfaceSpec, p: Point, settings: Settings) -> ChartData:
    fu_p = spec.derivative_jets(1, 0, p, 0).value
    fv_p = spec.derivative_jets(0, 1, p, 0).value
    tol = _tolerance(settings, fu_p, fv_p)

    if np.linalg.norm(np.cross(fu_p, fv_p)) > tol:
        return ChartData(kind=FrontKind.REGULAR)
    if abs(p[1]) > tol:
        raise NotAdapted(f"singular point {p} is off the axis v = 0", "frame_maps", point=p)

    fu_poly = spec.derivative(1, 0)
    fv_poly = spec.derivative(0, 1)
    v_poly = to_poly(V)

    if np.linalg.norm(fu_p) <= tol and np.linalg.norm(fv_p) > tol:
        k = int(np.argmax(np.abs(fv_p)))
        P = restrict_to_axis(fu_poly[k])
        Q = restrict_to_axis(fv_poly[k])
        numerators = []
        for j in range(3):
            quotient = exact_quotient(Q * fu_poly[j] - P * fv_poly[j], v_poly)
            if quotient is None:
                raise InconsistentNullDirection(
                    f"f_u and f_v are not proportional along v = 0 (component {j})",
                    "frame_maps",
                    component=j,
                )
            numerators.append(quotient)
        return ChartData(
            kind=FrontKind.SECOND_KIND, null_component=k, P=P, Q=Q, h_numerator=tuple(numerators)
        )

    if np.linalg.norm(fu_p) > tol:
        g = [exact_quotient(c, v_poly) for c in fv_poly]
        if all(q is not None for q in g):
            return ChartData(kind=FrontKind.FIRST_KIND, g=tuple(g))

    raise NotAdapted(
        "singular point is neither of the second kind (f_u(p) = 0) nor of the first kind (f_v = v g)",
        "frame_maps",
        point=p,
    )


def _unit_from(cross: JetVec3, tol: float, p: Point) -> tuple[JetVec3, Jet2]:
    squared = cross.dot(cross)
    if squared.value <= tol:
        raise DegeneratePoint(
            f"dλ vanishes at {p}: the factored cross product has length {np.sqrt(max(squared.value, 0.0)):.3e}",
            "frame_maps",
            point=p,
        )
    length = squared.sqrt(tol)
    return cross / length, length


def _regular_frame(
    spec: SurfaceSpec | None,
    chart: ChartData,
    p: Point,
    order: int,
    f: JetVec3,
    f_u: JetVec3,
    f_v: JetVec3,
    tol: float,
) -> FrontFrame:
    nu, lam = _unit_from(f_u.cross(f_v), tol, p)
    nu_u, nu_v = nu.diff_u(), nu.diff_v()
    fundamentals = Fundamentals(
        E=f_u.dot(f_u),
        F=f_u.dot(f_v),
        G=f_v.dot(f_v),
        L=-f_u.dot(nu_u),
        M=-f_u.dot(nu_v),
        N=-f_v.dot(nu_v),
    )
    return FrontFrame(
        spec=spec,
        base_point=p,
        order=order,
        kind=FrontKind.REGULAR,
        chart=chart,
        f=f,
        f_u=f_u,
        f_v=f_v,
        nu=nu,
        lam=lam,
        lam_hat=lam,
        stretch=Jet2.constant(1.0, p, order),
        fundamentals=fundamentals,
    )


def frame_from_jets(f: JetVec3, settings: Settings | None = None) -> FrontFrame:
    """
    Regular frame of a surface given only by its jet (non-polynomial patches
    such as a sphere built with jet_sqrt). Such frames cannot be moved with at().
    """
    settings = settings or get_settings()
    f_u, f_v = f.diff_u(), f.diff_v()
    tol = _tolerance(settings, f_u.value, f_v.value)
    return _regular_frame(
        None, ChartData(kind=FrontKind.REGULAR), f.base_point, f_u.order, f.truncate(f_u.order), f_u, f_v, tol
    )


def frame_maps(
    spec: SurfaceSpec,
    p: Point,
    order: int | None = None,
    settings: Settings | None = None,
    like: FrontFrame | None = None,
) -> FrontFrame:
    """
    Build the FrontFrame at p.

    With like=frame, the kind and exact chart data of an existing frame are
    reused, which is how frames off the marked point are obtained (meshes,
    traces, congruence checks).
    """
    settings, order = _resolve(settings, order if order is not None else (like.order if like else None))
    p = _as_point(p)
    chart = like.chart if like is not None else _detect_chart(spec, p, settings)

    f = spec.jets(p, order)
    f_u = spec.derivative_jets(1, 0, p, order)
    f_v = spec.derivative_jets(0, 1, p, order)
    tol = _tolerance(settings, f_u.value, f_v.value)
    warnings: list[str] = []

    if chart.kind == FrontKind.SECOND_KIND:
        Q = polynomial_jet(chart.Q, p, order)
        if abs(Q.value) <= tol:
            raise NotAdapted(
                f"null component {chart.null_component} of f_v vanishes at {p}", "frame_maps", point=p
            )
        P = polynomial_jet(chart.P, p, order)
        e = -(P / Q)
        h = JetVec3([polynomial_jet(n, p, order) for n in chart.h_numerator]) / Q
        nu, lam_hat = _unit_from(h.cross(f_v), tol, p)
        stretch = Jet2.coordinate("v", p, order)
        nu_u, nu_v = nu.diff_u(), nu.diff_v()
        fundamentals = Fundamentals(
            E=h.dot(h),
            F=h.dot(f_v),
            G=f_v.dot(f_v),
            L=-h.dot(nu_u),
            M=-h.dot(nu_v),
            N=-f_v.dot(nu_v),
        )
        if like is None:
            speed = float(np.linalg.norm(f_v.value))
            if abs(speed - 1.0) > settings.eps_zero:
                warnings.append(
                    f"|f_v(p)| = {speed:.6g} is not 1; adapted-normalized identities are conditional"
                )
        frame = FrontFrame(
            spec=spec,
            base_point=p,
            order=order,
            kind=chart.kind,
            chart=chart,
            f=f,
            f_u=f_u,
            f_v=f_v,
            nu=nu,
            lam=stretch * lam_hat,
            lam_hat=lam_hat,
            stretch=stretch,
            fundamentals=fundamentals,
            e=e,
            e_series=e.along_u(),
            h=h,
            warnings=tuple(warnings),
        )
    elif chart.kind == FrontKind.FIRST_KIND:
        g = JetVec3([polynomial_jet(c, p, order) for c in chart.g])
        nu, lam_hat = _unit_from(f_u.cross(g), tol, p)
        stretch = Jet2.coordinate("v", p, order)
        nu_u, nu_v = nu.diff_u(), nu.diff_v()
        fundamentals = Fundamentals(
            E=f_u.dot(f_u),
            F=f_u.dot(g),
            G=g.dot(g),
            L=-f_u.dot(nu_u),
            M=-g.dot(nu_u),
            N=-g.dot(nu_v),
        )
        frame = FrontFrame(
            spec=spec,
            base_point=p,
            order=order,
            kind=chart.kind,
            chart=chart,
            f=f,
            f_u=f_u,
            f_v=f_v,
            nu=nu,
            lam=stretch * lam_hat,
            lam_hat=lam_hat,
            stretch=stretch,
            fundamentals=fundamentals,
            g=g,
        )
    else:
        frame = _regular_frame(spec, chart, p, order, f, f_u, f_v, tol)

    for message in frame.warnings:
        logger.warning(f"{spec.name} at {p}: {message}")
    return frame


def check_adapted(spec: SurfaceSpec, p: Point | None = None, settings: Settings | None = None) -> AdaptedStatus:
    """Report which adapted-position conventions hold at p, with margins."""
    settings = settings or get_settings()
    p = spec.point_float if p is None else _as_point(p)
    f_u = spec.derivative_jets(1, 0, p, 1).value
    f_v = spec.derivative_jets(0, 1, p, 1).value
    f_uv = spec.derivative_jets(1, 1, p, 0).value
    tol = _tolerance(settings, f_u, f_v)

    cross_norm = float(np.linalg.norm(np.cross(f_u, f_v)))
    cross_on_axis = [restrict_to_axis(c) for c in poly_cross(spec.derivative(1, 0), spec.derivative(0, 1))]
    on_axis = all(c.is_zero for c in cross_on_axis)
    margins = {
        "cross_norm": cross_norm,
        "axis_residue": max(
            [0.0] + [abs(float(coeff)) for c in cross_on_axis for coeff in c.coeffs() if not c.is_zero]
        ),
    }

    if cross_norm > tol:
        return AdaptedStatus(
            kind=FrontKind.REGULAR,
            regular=True,
            singular_curve_on_axis=on_axis,
            null_condition=None,
            unit_speed=None,
            strongly_adapted=None,
            margins=margins,
        )

    try:
        kind = _detect_chart(spec, p, settings).kind
    except (NotAdapted, InconsistentNullDirection):
        kind = FrontKind.DEGENERATE

    null_condition = None
    unit_speed = strongly = None
    if kind == FrontKind.SECOND_KIND:
        null_condition = "f_u(p) = 0"
        speed = float(np.linalg.norm(f_v))
        margins["unit_speed"] = abs(speed - 1.0)
        margins["strongly_adapted"] = abs(float(np.dot(f_uv, f_v)))
        unit_speed = margins["unit_speed"] <= settings.eps_zero
        strongly = margins["strongly_adapted"] <= tol
    elif kind == FrontKind.FIRST_KIND:
        null_condition = "f_v(u, 0) = 0"
        margins["f_u_norm"] = float(np.linalg.norm(f_u))

    return AdaptedStatus(
        kind=kind,
        regular=False,
        singular_curve_on_axis=on_axis,
        null_condition=null_condition,
        unit_speed=unit_speed,
        strongly_adapted=strongly,
        margins=margins,
    )


# =============================================================================
# Structure equations at second-kind points
# =============================================================================


def _require_second_kind(frame: FrontFrame, op: str) -> None:
    if not frame.is_second_kind:
        raise UnsupportedKind(f"{op} needs a second-kind frame, got {frame.kind.value}", op)


def weingarten(frame: FrontFrame) -> tuple[JetVec3, JetVec3]:
    """ν_u and ν_v assembled from the fundamentals and (h, f_v)."""
    _require_second_kind(frame, "weingarten")
    fd = frame.fundamentals
    E, F, G, L, M, N = fd.E, fd.F, fd.G, fd.L, fd.M, fd.N
    D = fd.discriminant
    s, e = frame.stretch, frame.e
    twisted = s * M - e * N
    h, f_v = frame.h, frame.f_v
    nu_u = (h * (F * twisted - G * L) + f_v * (F * L - E * twisted)) / D
    nu_v = (h * (F * N - G * M) + f_v * (F * M - E * N)) / D
    return nu_u, nu_v


def second_derivative_frame(frame: FrontFrame) -> dict[str, tuple[JetVec3, JetVec3]]:
    """
    h_u, h_v and f_vv in the moving frame (h, f_v, ν).

    Returns:
        name -> (directly differentiated jet, frame expansion)
    """
    _require_second_kind(frame, "second_derivative_frame")
    fd = frame.fundamentals
    E, F, G = fd.E, fd.F, fd.G
    D2 = fd.discriminant * 2.0
    h, f_v, nu = frame.h, frame.f_v, frame.nu
    h_u, h_v = h.diff_u(), h.diff_v()
    f_vv = frame.spec.derivative_jets(0, 2, frame.base_point, frame.order)
    A = h_u.dot(f_v)
    B = h_v.dot(f_v)
    E_u, E_v = E.diff_u(), E.diff_v()
    F_v, G_v = F.diff_v(), G.diff_v()

    h_u_rhs = (h * (E_u * G - F * A * 2.0) + f_v * (E * A * 2.0 - E_u * F)) / D2 + nu * fd.L
    h_v_rhs = (h * (E_v * G - F * B * 2.0) + f_v * (E * B * 2.0 - E_v * F)) / D2 + nu * fd.M
    f_vv_rhs = (
        h * (G * (F_v - B) * 2.0 - F * G_v) + f_v * (E * G_v - F * F_v * 2.0 + F * B * 2.0)
    ) / D2 + nu * fd.N
    return {"h_u": (h_u, h_u_rhs), "h_v": (h_v, h_v_rhs), "f_vv": (f_vv, f_vv_rhs)}


def ab_identity(frame: FrontFrame) -> tuple[Jet2, Jet2]:
    """Both sides of A + eB = -Ê + F̂_u + eF̂_v - vÊ_v / 2, A = <h_u, f_v>, B = <h_v, f_v>."""
    _require_second_kind(frame, "ab_identity")
    fd = frame.fundamentals
    h, f_v, e, s = frame.h, frame.f_v, frame.e, frame.stretch
    lhs = h.diff_u().dot(f_v) + e * h.diff_v().dot(f_v)
    rhs = -fd.E + fd.F.diff_u() + e * fd.F.diff_v() - s * fd.E.diff_v() * 0.5
    return lhs, rhs
