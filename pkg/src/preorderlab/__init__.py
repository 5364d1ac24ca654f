"""Finite topological preordered spaces: separation, convexity, closed
preorders, quasi-pseudo-metrics, and causal structure on cone grids."""
# Load the ``closure`` submodule before binding the ``closure`` function so a
# later ``import preorderlab.closure`` cannot shadow the function.
from . import closure as _closure_module  # noqa: F401
from .core import (
    DEC,
    INC,
    FiniteTopology,
    Preorder,
    PreorderedSpace,
    Relation,
    closed_hull,
    closure,
    convex_hull,
    hull,
    interior,
    is_c_set,
    is_convex_set,
    make_space,
    open_monotone_hull,
    product_closure,
)
from .errors import (
    PreorderLabError,
    InvalidTopology,
    SizeMismatch,
    PointOutOfRange,
    InstanceTooLarge,
    NotASubrelation,
    BadArguments,
    NotNormal,
    NotConvex,
    NotCompletelyRegular,
    NotDiscrete,
    NotAQPM,
    WindowOutOfRange,
    UnknownPredicate,
    BadParameters,
    ParseError,
    InvariantBreach,
)
from .props import PropertyReport, property_battery

__version__ = "0.1.0"

__all__ = [
    "DEC",
    "INC",
    "FiniteTopology",
    "Preorder",
    "PreorderedSpace",
    "Relation",
    "closed_hull",
    "closure",
    "convex_hull",
    "hull",
    "interior",
    "is_c_set",
    "is_convex_set",
    "make_space",
    "open_monotone_hull",
    "product_closure",
    "PreorderLabError",
    "InvalidTopology",
    "SizeMismatch",
    "PointOutOfRange",
    "InstanceTooLarge",
    "NotASubrelation",
    "BadArguments",
    "NotNormal",
    "NotConvex",
    "NotCompletelyRegular",
    "NotDiscrete",
    "NotAQPM",
    "WindowOutOfRange",
    "UnknownPredicate",
    "BadParameters",
    "ParseError",
    "InvariantBreach",
    "PropertyReport",
    "property_battery",
]
