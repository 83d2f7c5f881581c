"""Theta-5 graph construction, spanning ratios, inductive path certificates
and numeric checks of the inequalities behind the 5.70 bound."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DegenerateInputError,
    GeneralPositionError,
    InductionError,
    PreconditionError,
    ThetaLabError,
)
from .geometry import Point, canonical_frame, cone_index, normalize_pair, pentagon_pab  # noqa: E402
from .induction_router import CaseLabel, PathCertificate, certify_all, inductive_path  # noqa: E402
from .spanner_metrics import shortest_path, spanning_ratio, stretch_search  # noqa: E402
from .theta_graph import ThetaGraph, build_theta_graph, validate_general_position  # noqa: E402

__all__ = [
    "__version__", "CaseLabel", "DegenerateInputError", "GeneralPositionError", "InductionError",
    "PathCertificate", "Point", "PreconditionError", "ThetaGraph", "ThetaLabError",
    "build_theta_graph", "canonical_frame", "certify_all", "cone_index", "inductive_path",
    "normalize_pair", "pentagon_pab", "shortest_path", "spanning_ratio", "stretch_search",
    "validate_general_position",
]
