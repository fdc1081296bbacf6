"""Generic spherical quadrilaterals: nets, angle feasibility, configurations and chains."""

from .angles import AngleVector, net_feasible, parse_angles
from .builders import NetLabel, build_net, classify, enumerate_primitive, parse_label
from .chains import build_chains, count_bounds
from .netcore import Net, is_isomorphic, validate_net

__all__ = [
    "AngleVector",
    "Net",
    "NetLabel",
    "build_chains",
    "build_net",
    "classify",
    "count_bounds",
    "enumerate_primitive",
    "is_isomorphic",
    "net_feasible",
    "parse_angles",
    "parse_label",
    "validate_net",
]
