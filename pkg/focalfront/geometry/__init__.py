"""
FocalFront geometry: jets, surface frames, classification, curvature and
focal surfaces.
"""

from focalfront.geometry.classify import (
    Criterion,
    PointKind,
    SingularityClass,
    SingularityReport,
    admissibility_order,
    classify_point,
    decide_singularity,
    is_front_at,
)
from focalfront.geometry.curvature import (
    CurvatureData,
    PrincipalSplit,
    curvature_data,
    frame_xy,
    gauss_mean_regular,
    limiting_normal_curvature,
    normalized_cuspidal_curvature,
    principal_split,
    principal_vectors,
    shape_operator_eigenvalues,
    sub_parabolic_ridge,
)
from focalfront.geometry.focal import (
    FocalClass,
    FocalReport,
    classify_focal,
    congruence_density,
    contact_order,
    decide_focal,
    focal_bounded_surface,
    focal_K_rational_bounded,
    focal_normal_and_density,
    focal_surface,
)
from focalfront.geometry.jets import (
    Jet1,
    Jet2,
    JetVec3,
    divide_by_coordinate,
    jet_arith,
    jet_sqrt,
    partial,
    vanishing_order,
)
from focalfront.geometry.polynomials import SurfaceSpec
from focalfront.geometry.surface import (
    AdaptedStatus,
    FrontFrame,
    FrontKind,
    check_adapted,
    compute_normal,
    evaluate_jets,
    frame_maps,
    normal_data,
    null_function,
    signed_area_density,
)

__all__ = [
    "AdaptedStatus",
    "Criterion",
    "CurvatureData",
    "FocalClass",
    "FocalReport",
    "FrontFrame",
    "FrontKind",
    "Jet1",
    "Jet2",
    "JetVec3",
    "PointKind",
    "PrincipalSplit",
    "SingularityClass",
    "SingularityReport",
    "SurfaceSpec",
    "admissibility_order",
    "check_adapted",
    "classify_focal",
    "classify_point",
    "compute_normal",
    "congruence_density",
    "contact_order",
    "curvature_data",
    "decide_focal",
    "decide_singularity",
    "divide_by_coordinate",
    "evaluate_jets",
    "focal_bounded_surface",
    "focal_K_rational_bounded",
    "focal_normal_and_density",
    "focal_surface",
    "frame_maps",
    "normal_data",
    "frame_xy",
    "gauss_mean_regular",
    "is_front_at",
    "jet_arith",
    "jet_sqrt",
    "limiting_normal_curvature",
    "normalized_cuspidal_curvature",
    "null_function",
    "partial",
    "principal_split",
    "principal_vectors",
    "shape_operator_eigenvalues",
    "signed_area_density",
    "sub_parabolic_ridge",
    "vanishing_order",
]
