"""
FocalFront - Singular Curve Tracing

Predictor-corrector continuation of the zero set of λ (singular curve of f)
or of Ṽρ̂ (singular curve of Ĉ), written out as CSV.
"""

import csv
import io
import logging
from pathlib import Path
from typing import Callable, Literal

import numpy as np

from focalfront.config import Settings
from focalfront.errors import FocalFrontError, LostCurve
from focalfront.geometry.curvature import principal_split, principal_vectors
from focalfront.geometry.jets import Jet2, JetVec3
from focalfront.geometry.polynomials import exact_quotient, poly_cross, poly_gcd, polynomial_jet
from focalfront.geometry.surface import FrontFrame, frame_maps
from focalfront.services.reports import AnalysisRequest

logger = logging.getLogger(__name__)

Which = Literal["f", "focal"]
Level = Callable[[tuple[float, float]], Jet2]

# Ṽρ̂ loses three orders to ν_u, the split and the direction derivative.
FOCAL_SAMPLE_ORDER = 4


def _lambda_level(request: AnalysisRequest, frame: FrontFrame | None, settings: Settings) -> Level:
    """λ with one sign convention on the whole neighborhood."""
    spec = request.surface
    if frame is not None:
        return lambda q: frame_maps(spec, q, 1, settings, like=frame).lam

    cross = poly_cross(spec.derivative(1, 0), spec.derivative(0, 1))
    common = poly_gcd(cross)
    if common.is_zero or common.total_degree() == 0:
        raise LostCurve(f"{spec.name} has no smooth signed area density to trace", "trace_singular_curve")
    reduced = [exact_quotient(c, common) for c in cross]

    def level(q: tuple[float, float]) -> Jet2:
        length = JetVec3([polynomial_jet(c, q, 1) for c in reduced]).norm()
        return polynomial_jet(common, q, 1) * length

    return level


def _focal_level(request: AnalysisRequest, frame: FrontFrame, settings: Settings) -> Level:
    def level(q: tuple[float, float]) -> Jet2:
        at_q = frame_maps(request.surface, q, FOCAL_SAMPLE_ORDER, settings, like=frame)
        split = principal_split(at_q, settings)
        _, V_tilde = principal_vectors(at_q, split)
        rho = split.rho_hat
        return V_tilde[0] * rho.diff_u() + V_tilde[1] * rho.diff_v()

    return level


def _correct(level: Level, q: np.ndarray, settings: Settings) -> tuple[np.ndarray, float]:
    """Newton along the gradient until |F| <= trace_residual."""
    for _ in range(settings.trace_max_newton):
        jet = level((float(q[0]), float(q[1])))
        value, grad = jet.value, np.asarray(jet.gradient, dtype=float)
        if abs(value) <= settings.trace_residual:
            return q, abs(value)
        norm2 = float(grad @ grad)
        if norm2 == 0.0:
            raise LostCurve(f"gradient vanishes at {tuple(q)}", "trace_singular_curve")
        q = q - value * grad / norm2
    raise LostCurve(
        f"corrector did not converge within {settings.trace_max_newton} steps near {tuple(q)}",
        "trace_singular_curve",
    )


def trace_singular_curve(
    request: AnalysisRequest,
    which: Which = "f",
    seed: tuple[float, float] | None = None,
    steps: int = 50,
    settings: Settings | None = None,
) -> list[tuple[float, float, float]]:
    """
    Trace the singular curve of f (which="f") or of Ĉ (which="focal").

    Returns (u, v, residual) vertices, the corrected seed first.

    Raises:
        LostCurve: a correction diverges or jumps farther than trace_max_jump.
    """
    settings = request.resolve_settings(settings)
    seed = request.point_float if seed is None else (float(seed[0]), float(seed[1]))
    try:
        frame = frame_maps(request.surface, request.point_float, settings.jet_order, settings)
    except FocalFrontError:
        frame = None

    if which == "f":
        raw_level = _lambda_level(request, frame, settings)
    elif which == "focal":
        if frame is None:
            raise LostCurve("the focal surface needs a frame at the marked point", "trace_singular_curve")
        raw_level = _focal_level(request, frame, settings)
    else:
        raise ValueError(f"which must be 'f' or 'focal', got {which!r}")

    def level(q: tuple[float, float]) -> Jet2:
        try:
            return raw_level(q)
        except LostCurve:
            raise
        except FocalFrontError as exc:
            raise LostCurve(f"evaluation failed at {q}: {exc}", "trace_singular_curve") from exc

    def corrected(start: np.ndarray) -> tuple[np.ndarray, float]:
        q, residual = _correct(level, start, settings)
        jump = float(np.linalg.norm(q - start))
        if jump > settings.trace_max_jump:
            raise LostCurve(
                f"correction jumped {jump:.3g} from {tuple(start)}", "trace_singular_curve", jump=jump
            )
        return q, residual

    q, residual = corrected(np.array(seed, dtype=float))
    points = [(float(q[0]), float(q[1]), residual)]
    direction: np.ndarray | None = None
    for _ in range(steps):
        grad = np.asarray(level((float(q[0]), float(q[1]))).gradient, dtype=float)
        tangent = np.array([-grad[1], grad[0]])
        norm = float(np.linalg.norm(tangent))
        if norm == 0.0:
            raise LostCurve(f"singular point of the level set at {tuple(q)}", "trace_singular_curve")
        tangent /= norm
        if direction is None:
            if tangent[0] < 0 or (tangent[0] == 0 and tangent[1] < 0):
                tangent = -tangent
        elif tangent @ direction < 0:
            tangent = -tangent
        direction = tangent
        q, residual = corrected(q + settings.trace_step * tangent)
        points.append((float(q[0]), float(q[1]), residual))

    logger.info(f"Traced {len(points)} vertices of the {which} singular curve of {request.surface.name}")
    return points


def trace_to_csv(points: list[tuple[float, float, float]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["u", "v", "residual"])
    for u, v, residual in points:
        writer.writerow([f"{u:.12g}", f"{v:.12g}", f"{residual:.3e}"])
    return buffer.getvalue()


def write_trace(points: list[tuple[float, float, float]], path: str | Path) -> Path:
    path = Path(path)
    path.write_text(trace_to_csv(points), encoding="utf-8")
    return path
