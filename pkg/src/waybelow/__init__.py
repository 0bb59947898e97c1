"""Exact deciders for compact containment and the way-below relation.

Regions are finite unions of rational boxes, functions are piecewise linear
with rational breakpoints, and every verdict comes with a checkable certificate.
"""

from .cuntz import (
    CuntzClass,
    PositiveElement,
    WayBelowCertificate,
    cuntz_certificate,
    cuntz_leq,
    gp_constant,
    is_compact_class,
    tensor,
    tensor_certificate,
    way_below_epsilon,
    way_below_support,
)
from .ideals import Ideal, ideal_compactly_contained, ideal_from_generators, ideal_tensor, is_proper
from .instances import Instance, InstanceError
from .order import FinitePoset, compact_elements, sup, way_below_directed, way_below_literal
from .plfunc import NotCompactlyContained, PLFunction, cutdown, min_const, superlevel, urysohn
from .region import (
    DimensionError,
    Interval,
    PreconditionError,
    Region,
    Space,
    closure,
    compactly_contained,
    dilate,
    erode,
    exhaustion_capture,
    gap,
    interior,
    product,
)

__version__ = "0.1.0"

__all__ = [
    "CuntzClass",
    "PositiveElement",
    "WayBelowCertificate",
    "cuntz_certificate",
    "cuntz_leq",
    "gp_constant",
    "is_compact_class",
    "tensor",
    "tensor_certificate",
    "way_below_epsilon",
    "way_below_support",
    "Ideal",
    "ideal_compactly_contained",
    "ideal_from_generators",
    "ideal_tensor",
    "is_proper",
    "Instance",
    "InstanceError",
    "FinitePoset",
    "compact_elements",
    "sup",
    "way_below_directed",
    "way_below_literal",
    "NotCompactlyContained",
    "PLFunction",
    "cutdown",
    "min_const",
    "superlevel",
    "urysohn",
    "DimensionError",
    "Interval",
    "PreconditionError",
    "Region",
    "Space",
    "closure",
    "compactly_contained",
    "dilate",
    "erode",
    "exhaustion_capture",
    "gap",
    "interior",
    "product",
]
