"""
FocalFront - Curvature Engine

Bounded and unbounded principal curvatures of a front near a singular
point, principal vectors, the orthogonal frame maps x and y, the limiting
normal curvature κ_ν, the normalized cuspidal curvature μ_c and
sub-parabolic / ridge detection.

All three frame kinds share one principal split. With s the stretch of the
frame (the coordinate v at singular kinds, 1 at regular points)

    K = Q / (s D),    2H = k1 / (s D)

where, for the second kind (ε = e lifted to two variables)

    k1 = Ĝ(L̂ + εM̂) - 2sF̂M̂ + sÊN̂,   Q = N̂(L̂ + εM̂) - sM̂²,   D = ÊĜ - F̂²

for the first kind

    k1 = ẼÑ - 2sF̃M̃ + sG̃L̃,   Q = L̃Ñ - sM̃²,   D = ẼG̃ - F̃²

and the ordinary GL - 2FM + EN, LN - M², EG - F² at regular points.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from focalfront.config import Settings, get_settings
from focalfront.errors import (
    DegenerateFrame,
    EvaluationOnSingularSet,
    IndeterminateLimit,
    NotAFront,
    UmbilicDegeneracy,
    UnsupportedKind,
)
from focalfront.geometry.jets import Jet2, JetVec3, vanishing_order
from focalfront.geometry.surface import FrontFrame, FrontKind

logger = logging.getLogger(__name__)

VectorField = tuple[Jet2, Jet2]


@dataclass(frozen=True)
class PrincipalSplit:
    """Principal data of a frame; iterates as (κ, κ̂, ρ̂)."""

    kappa: Jet2
    kappa_hat: Jet2
    rho_hat: Jet2
    k1: Jet2
    k2: Jet2
    Q: Jet2
    D: Jet2
    lam_hat: Jet2
    branch_sign: float
    branch_margin: float

    def __iter__(self):
        yield self.kappa
        yield self.kappa_hat
        yield self.rho_hat

    @property
    def lambda_gauss(self) -> Jet2:
        """λK = λ̂Q / D, smooth through the singular curve."""
        return self.lam_hat * self.Q / self.D

    @property
    def twice_lambda_mean(self) -> Jet2:
        """2λH = λ̂k1 / D."""
        return self.lam_hat * self.k1 / self.D


@dataclass(frozen=True)
class SubParabolicReport:
    is_sub_parabolic: bool
    eta_kappa: float
    is_ridge: bool
    V_kappa: float
    V_tilde_kappa: float
    tolerance: float


@dataclass(frozen=True)
class CurvatureData:
    frame: FrontFrame
    split: PrincipalSplit
    V: VectorField
    V_tilde: VectorField
    x: JetVec3
    y: JetVec3
    kappa_nu: float | None
    mu_c: float | None

    @property
    def kappa(self) -> Jet2:
        return self.split.kappa

    @property
    def kappa_hat(self) -> Jet2:
        return self.split.kappa_hat

    @property
    def rho_hat(self) -> Jet2:
        return self.split.rho_hat


# =============================================================================
# Principal split
# =============================================================================


def split_coefficients(frame: FrontFrame) -> tuple[Jet2, Jet2, Jet2]:
    """(k1, Q, D) for the frame's kind."""
    fd = frame.fundamentals
    s = frame.stretch
    if frame.is_second_kind:
        twisted = fd.L + frame.e * fd.M
        k1 = fd.G * twisted - s * fd.F * fd.M * 2.0 + s * fd.E * fd.N
        Q = fd.N * twisted - s * fd.M * fd.M
    elif frame.is_first_kind:
        k1 = fd.E * fd.N - s * fd.F * fd.M * 2.0 + s * fd.G * fd.L
        Q = fd.L * fd.N - s * fd.M * fd.M
    else:
        k1 = fd.G * fd.L - fd.F * fd.M * 2.0 + fd.E * fd.N
        Q = fd.L * fd.N - fd.M * fd.M
    return k1, Q, fd.discriminant


def front_witness(frame: FrontFrame) -> float:
    """(L̂ + eM̂)(p) at the second kind, Ñ(p) at the first kind."""
    fd = frame.fundamentals
    if frame.is_second_kind:
        return (fd.L + frame.e * fd.M).value
    if frame.is_first_kind:
        return fd.N.value
    return 1.0


def principal_split(frame: FrontFrame, settings: Settings | None = None) -> PrincipalSplit:
    """
    Split the principal curvatures into the bounded κ and the unbounded one.

    κ̂ = λκ̃ stays nonzero at p and ρ̂ = λ / κ̂ is the smooth radius of the
    unbounded branch.

    Raises:
        NotAFront: the Gauss map does not separate the null direction.
        UmbilicDegeneracy: both branches vanish at p.
    """
    settings = settings or get_settings()
    witness = front_witness(frame)
    if frame.kind != FrontKind.REGULAR and abs(witness) <= settings.eps_zero:
        raise NotAFront(
            f"front witness {witness:.3e} vanishes at {frame.base_point}",
            "principal_split",
            witness=witness,
        )

    k1, Q, D = split_coefficients(frame)
    s = frame.stretch.truncate(k1.order)
    disc = k1 * k1 - s * D * Q * 4.0
    if disc.value <= settings.eps_zero * max(1.0, abs(k1.value) ** 2):
        raise UmbilicDegeneracy(
            f"principal discriminant {disc.value:.3e} vanishes at {frame.base_point}",
            "principal_split",
            discriminant=disc.value,
        )
    k2 = disc.sqrt(settings.eps_zero)
    sign = 1.0 if k1.value >= 0 else -1.0
    nonzero_branch = k1 + k2 * sign

    kappa = Q * 2.0 / nonzero_branch
    kappa_hat = frame.lam_hat * nonzero_branch / (D * 2.0)
    rho_hat = frame.lam / kappa_hat
    return PrincipalSplit(
        kappa=kappa,
        kappa_hat=kappa_hat,
        rho_hat=rho_hat,
        k1=k1,
        k2=k2,
        Q=Q,
        D=D,
        lam_hat=frame.lam_hat,
        branch_sign=sign,
        branch_margin=abs(nonzero_branch.value),
    )


def scalar_principal(frame: FrontFrame, settings: Settings | None = None) -> tuple[float, float]:
    """
    The two principal curvatures at the (regular) base point as plain numbers.

    The first entry is the branch that stays bounded across the singular
    curve. Works at umbilics, where principal_split refuses.
    """
    settings = settings or get_settings()
    k1, Q, D = split_coefficients(frame)
    sD = frame.stretch.value * D.value
    if abs(sD) <= settings.eps_zero or abs(frame.lam.value) <= settings.eps_zero:
        raise EvaluationOnSingularSet(
            f"{frame.base_point} lies on the singular set", "scalar_principal"
        )
    disc = k1.value**2 - 4.0 * sD * Q.value
    root = np.sqrt(max(disc, 0.0))
    sign = 1.0 if k1.value >= 0 else -1.0
    return (k1.value - sign * root) / (2.0 * sD), (k1.value + sign * root) / (2.0 * sD)


# =============================================================================
# Principal vectors and the frame maps x, y
# =============================================================================


def _larger_row(row1: VectorField, row2: VectorField) -> VectorField:
    n1 = np.hypot(row1[0].value, row1[1].value)
    n2 = np.hypot(row2[0].value, row2[1].value)
    return row1 if n1 >= n2 else row2


def principal_vectors(frame: FrontFrame, split: PrincipalSplit) -> tuple[VectorField, VectorField]:
    """V for κ and Ṽ for the unbounded branch, in (u, v) components."""
    fd = frame.fundamentals
    E, F, G, L, M, N = fd.E, fd.F, fd.G, fd.L, fd.M, fd.N
    kappa, kappa_hat = split.kappa, split.kappa_hat
    lam, s = frame.lam, frame.stretch

    if frame.is_second_kind:
        eps = frame.e
        V = (-M + kappa * F, L - kappa * (s * E - eps * F))
        first = lam * N - kappa_hat * G
        V_tilde = (first, -(s * (lam * M - kappa_hat * F)) + eps * first)
    elif frame.is_first_kind:
        V = (N - s * kappa * G, -M + kappa * F)
        V_tilde = (s * (lam * M - kappa_hat * F), -(lam * L) + kappa_hat * E)
    else:
        V = _larger_row(
            (-M + kappa * F, L - kappa * E),
            (N - kappa * G, -(M - kappa * F)),
        )
        V_tilde = _larger_row(
            (-(lam * M - kappa_hat * F), lam * L - kappa_hat * E),
            (lam * N - kappa_hat * G, -(lam * M - kappa_hat * F)),
        )
    return V, V_tilde


def push_forward(frame: FrontFrame, X: VectorField) -> JetVec3:
    """df(X) = X₁ f_u + X₂ f_v."""
    return frame.f_u * X[0] + frame.f_v * X[1]


def d_nu(frame: FrontFrame, X: VectorField) -> JetVec3:
    """dν(X) = X₁ ν_u + X₂ ν_v."""
    return frame.nu_u * X[0] + frame.nu_v * X[1]


def frame_xy(
    frame: FrontFrame, split: PrincipalSplit, settings: Settings | None = None
) -> tuple[JetVec3, JetVec3, JetVec3, JetVec3]:
    """
    The orthogonal pair x = df(V), y with df(Ṽ) = s·y, and their normalizations.

    Raises:
        DegenerateFrame: |x|(p) or |y|(p) vanishes.
    """
    settings = settings or get_settings()
    fd = frame.fundamentals
    kappa, kappa_hat, lam, s = split.kappa, split.kappa_hat, frame.lam, frame.stretch
    V, V_tilde = principal_vectors(frame, split)

    if frame.is_second_kind:
        h, f_v = frame.h, frame.f_v
        x = h * (-(s * (fd.M - kappa * fd.F))) + f_v * (fd.L + frame.e * fd.M - s * kappa * fd.E)
        y = h * (lam * fd.N - kappa_hat * fd.G) - f_v * (lam * fd.M - kappa_hat * fd.F)
    elif frame.is_first_kind:
        f_u, g = frame.f_u, frame.g
        x = f_u * (fd.N - s * kappa * fd.G) + g * (s * (-fd.M + kappa * fd.F))
        y = f_u * (lam * fd.M - kappa_hat * fd.F) + g * (-(lam * fd.L) + kappa_hat * fd.E)
    else:
        x = push_forward(frame, V)
        y = push_forward(frame, V_tilde)

    for name, vec in (("x", x), ("y", y)):
        if np.linalg.norm(vec.value) <= settings.eps_zero:
            raise DegenerateFrame(f"|{name}| vanishes at {frame.base_point}", "frame_xy")
    e1 = x.normalized()
    e2 = y.normalized()
    return x, y, e1, e2


# =============================================================================
# Invariants at the singular point
# =============================================================================


def limiting_normal_curvature(frame: FrontFrame, settings: Settings | None = None) -> float:
    """
    κ_ν(p), the limit of <f_uu, ν> / |f_u|² along the singular curve.

    First kind: the quotient is evaluated directly at p.
    """
    settings = settings or get_settings()
    if frame.spec is None:
        raise UnsupportedKind("κ_ν needs a polynomial surface", "limiting_normal_curvature")
    f_uu = frame.spec.derivative_jets(2, 0, frame.base_point, frame.order)

    if frame.is_first_kind:
        return f_uu.dot(frame.nu).value / frame.f_u.dot(frame.f_u).value
    if not frame.is_second_kind:
        raise UnsupportedKind(
            f"κ_ν is defined at singular points, got {frame.kind.value}", "limiting_normal_curvature"
        )

    numerator = f_uu.dot(frame.nu).along_u()
    denominator = frame.f_u.dot(frame.f_u).along_u()
    k = vanishing_order(denominator, settings.eps_zero)
    if k > denominator.order:
        raise IndeterminateLimit(
            f"|f_u|² vanishes beyond jet order {denominator.order} along v = 0",
            "limiting_normal_curvature",
        )
    leading = numerator.coeffs[:k]
    if np.any(np.abs(leading) > settings.eps_zero * numerator.scale()):
        raise IndeterminateLimit(
            f"<f_uu, ν> vanishes to lower order than |f_u|² (order {k}) along v = 0",
            "limiting_normal_curvature",
        )
    return (numerator.shift_down(k) / denominator.shift_down(k)).value


def normalized_cuspidal_curvature(frame: FrontFrame) -> float:
    """μ_c = -<f_uv, ν_u> / |f_uv × f_v|² at p."""
    if not frame.is_second_kind:
        raise UnsupportedKind(
            f"μ_c is defined at second-kind points, got {frame.kind.value}",
            "normalized_cuspidal_curvature",
        )
    f_uv = frame.spec.derivative_jets(1, 1, frame.base_point, frame.order).value
    nu_u = frame.nu_u.value
    f_v = frame.f_v.value
    return float(-np.dot(f_uv, nu_u) / np.dot(np.cross(f_uv, f_v), np.cross(f_uv, f_v)))


def directional_value(X: VectorField, a: Jet2) -> float:
    """(X a)(p) from the gradient of a."""
    grad = a.gradient
    return X[0].value * grad[0] + X[1].value * grad[1]


def sub_parabolic_ridge(
    frame: FrontFrame, split: PrincipalSplit, settings: Settings | None = None
) -> SubParabolicReport:
    """
    ηκ(p) (sub-parabolic when zero) and Vκ(p) (ridge when zero).

    At regular points Ṽ plays the role of the null direction.
    """
    settings = settings or get_settings()
    kappa = split.kappa
    V, V_tilde = principal_vectors(frame, split)
    grad = kappa.gradient
    if frame.is_second_kind:
        eta_kappa = grad[0] + frame.e.value * grad[1]
    elif frame.is_first_kind:
        eta_kappa = grad[1]
    else:
        eta_kappa = directional_value(V_tilde, kappa)
    V_kappa = directional_value(V, kappa)
    V_tilde_kappa = directional_value(V_tilde, kappa)
    tol = settings.eps_zero * kappa.scale()
    return SubParabolicReport(
        is_sub_parabolic=abs(eta_kappa) <= tol,
        eta_kappa=float(eta_kappa),
        is_ridge=abs(V_kappa) <= tol,
        V_kappa=float(V_kappa),
        V_tilde_kappa=float(V_tilde_kappa),
        tolerance=tol,
    )


def gauss_mean_regular(
    frame: FrontFrame, q: tuple[float, float] | None = None, settings: Settings | None = None
) -> tuple[float, float]:
    """
    K and H at a regular point q from K = Q / (sD), 2H = k1 / (sD).

    Raises:
        EvaluationOnSingularSet: q lies on the singular set.
    """
    settings = settings or get_settings()
    at_q = frame if q is None or tuple(map(float, q)) == frame.base_point else frame.at(q)
    k1, Q, D = split_coefficients(at_q)
    sD = at_q.stretch.value * D.value
    if abs(sD) <= settings.eps_zero or abs(at_q.lam.value) <= settings.eps_zero:
        raise EvaluationOnSingularSet(
            f"{at_q.base_point} lies on the singular set (sD = {sD:.3e})", "gauss_mean_regular"
        )
    return Q.value / sD, k1.value / (2.0 * sD)


def shape_operator_eigenvalues(frame: FrontFrame) -> np.ndarray:
    """
    Principal curvatures at the base point from the dense 2x2 matrix I⁻¹II
    built from f_u, f_v and ν directly, sorted ascending.
    """
    f_u, f_v = frame.f_u.value, frame.f_v.value
    nu_u, nu_v = frame.nu_u.value, frame.nu_v.value
    first = np.array([[f_u @ f_u, f_u @ f_v], [f_v @ f_u, f_v @ f_v]])
    second = -np.array([[f_u @ nu_u, f_u @ nu_v], [f_v @ nu_u, f_v @ nu_v]])
    second = (second + second.T) / 2.0
    eigenvalues = np.linalg.eigvals(np.linalg.solve(first, second))
    return np.sort(eigenvalues.real)


def curvature_data(frame: FrontFrame, settings: Settings | None = None) -> CurvatureData:
    """Principal data, vectors, the x/y pair and the invariants at p in one bundle."""
    settings = settings or get_settings()
    split = principal_split(frame, settings)
    V, V_tilde = principal_vectors(frame, split)
    x, y, _, _ = frame_xy(frame, split, settings)

    kappa_nu = mu_c = None
    if frame.kind != FrontKind.REGULAR and frame.spec is not None:
        try:
            kappa_nu = limiting_normal_curvature(frame, settings)
        except IndeterminateLimit as exc:
            logger.warning(f"κ_ν unavailable at {frame.base_point}: {exc}")
    if frame.is_second_kind:
        mu_c = normalized_cuspidal_curvature(frame)

    return CurvatureData(
        frame=frame,
        split=split,
        V=V,
        V_tilde=V_tilde,
        x=x,
        y=y,
        kappa_nu=kappa_nu,
        mu_c=mu_c,
    )
