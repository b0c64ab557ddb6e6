"""
FocalFront - Mesh Export

Samples f or its focal surface Ĉ = f + ρ̂ν over a parameter rectangle and
writes a triangulated Wavefront OBJ mesh.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal

import numpy as np

from focalfront.config import Settings
from focalfront.errors import EmptyMesh, FocalFrontError
from focalfront.geometry.curvature import principal_split
from focalfront.geometry.surface import FrontFrame, frame_maps
from focalfront.services.reports import AnalysisRequest

logger = logging.getLogger(__name__)

Which = Literal["f", "focal"]
Region = tuple[float, float, float, float]

# Off the marked point only values are needed; order 2 carries ν_u, ν_v.
SAMPLE_ORDER = 2


@dataclass
class Mesh:
    """
    Vertices in R^3 with their (u, v) samples and 0-based triangles.

    holes holds the (u, v) samples that were dropped from a focal mesh.
    """

    vertices: np.ndarray
    params: np.ndarray
    faces: np.ndarray
    holes: np.ndarray = field(default_factory=lambda: np.zeros((0, 2)))

    def to_obj(self) -> str:
        lines = [f"# focalfront mesh: {len(self.vertices)} vertices, {len(self.faces)} faces"]
        lines += [f"# hole {u:.12g} {v:.12g}" for u, v in self.holes]
        lines += [f"v {x:.12g} {y:.12g} {z:.12g}" for x, y, z in self.vertices]
        lines += [f"f {a + 1} {b + 1} {c + 1}" for a, b, c in self.faces]
        return "\n".join(lines) + "\n"


def stitched_faces(nu: int, nv: int, keep: np.ndarray) -> np.ndarray:
    """
    Triangles of an nu x nv grid over the kept vertices only.

    A cell with all four corners kept is split along one diagonal; a cell
    missing one corner is closed by the triangle on the other three.
    Indices refer to the kept vertices in grid order.
    """
    remap = np.cumsum(keep) - 1
    faces = []
    for i in range(nu - 1):
        for j in range(nv - 1):
            a, b = i * nv + j, (i + 1) * nv + j
            corners = [a, b, b + 1, a + 1]
            alive = [c for c in corners if keep[c]]
            if len(alive) == 4:
                faces.append((a, b, b + 1))
                faces.append((a, b + 1, a + 1))
            elif len(alive) == 3:
                faces.append(tuple(alive))
    return remap[np.array(faces, dtype=int).reshape(-1, 3)]


def grid_faces(nu: int, nv: int) -> np.ndarray:
    """Two triangles per cell of an nu x nv vertex grid indexed i * nv + j."""
    return stitched_faces(nu, nv, np.ones(nu * nv, dtype=bool))


def focal_point(frame: FrontFrame, q: tuple[float, float], settings: Settings) -> np.ndarray | None:
    """Ĉ(q), or None where |κ̂(q)| < eps_export or the split is unavailable."""
    try:
        at_q = frame_maps(frame.spec, q, SAMPLE_ORDER, settings, like=frame)
        split = principal_split(at_q, settings)
    except FocalFrontError:
        return None
    if abs(split.kappa_hat.value) < settings.eps_export:
        return None
    return at_q.f.value + split.rho_hat.value * at_q.nu.value


def export_mesh(
    request: AnalysisRequest,
    region: Region,
    resolution: tuple[int, int],
    which: Which = "f",
    settings: Settings | None = None,
) -> Mesh:
    """
    Triangulate f or Ĉ over region = (u0, u1, v0, v1) at resolution (nu, nv).

    Focal samples that cannot be evaluated are dropped; cells that keep three
    corners are re-stitched with one triangle and the dropped samples are
    recorded as holes.

    Raises:
        EmptyMesh: no face survives.
    """
    settings = request.resolve_settings(settings)
    nu, nv = resolution
    if nu < 2 or nv < 2:
        raise ValueError(f"resolution must be at least 2x2, got {nu}x{nv}")
    u0, u1, v0, v1 = region
    if not (u1 > u0 and v1 > v0):
        raise ValueError(f"empty region {region}")

    spec = request.surface
    us, vs = np.linspace(u0, u1, nu), np.linspace(v0, v1, nv)
    params = np.array([(u, v) for u in us for v in vs])
    if which == "f":
        vertices = np.array([spec.evaluate(u, v) for u, v in params])
        return Mesh(vertices=vertices, params=params, faces=grid_faces(nu, nv))
    if which != "focal":
        raise ValueError(f"which must be 'f' or 'focal', got {which!r}")

    frame = frame_maps(spec, request.point_float, settings.jet_order, settings)
    points = [focal_point(frame, (float(u), float(v)), settings) for u, v in params]
    keep = np.array([p is not None for p in points])
    kept_faces = stitched_faces(nu, nv, keep)
    if len(kept_faces) == 0:
        raise EmptyMesh(
            f"every focal sample of {spec.name} over {region} was dropped", "export_mesh"
        )
    dropped = int((~keep).sum())
    if dropped:
        logger.info(f"Dropped {dropped} focal samples with |κ̂| < {settings.eps_export} or no split")
    vertices = np.array([p for p in points if p is not None])
    return Mesh(vertices=vertices, params=params[keep], faces=kept_faces, holes=params[~keep])


def write_mesh(mesh: Mesh, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(mesh.to_obj(), encoding="utf-8")
    return path
