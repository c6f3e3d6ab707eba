"""Friezes of positive integers, their classification, and realizations by
triangulations of polygons, annuli and the strip."""

from .core import (
    FriezeFragment,
    QuiddityRow,
    bump,
    bumped_entry,
    entry_continuant,
    entry_recurrence,
    fragment,
    shortest_period,
    verify_ptolemy,
    verify_unimodular,
)
from .classifier import (
    FINITE,
    INFINITE,
    NOT_A_FRIEZE,
    Classification,
    ClassificationError,
    classify,
    minimal_inner_points,
    polygon_order,
    realize_polygon,
)
from .annulus import (
    AnnulusTriangulation,
    Asymptotic,
    Bridging,
    Central,
    InvalidTriangulation,
    Peripheral,
    PuncturedDisc,
    asymptotic_reduction,
    bump_realization,
    check_triangulation,
    multiply_period,
    outer_quiddity,
    realize,
)
from .strip import AdjacentOnes, RoundLimitExceeded, StripTriangulation, realize_strip, strip_quiddity
from .matchings import count_by_recurrence, count_matchings, count_matchings_naive, verify_matching_theorem

__version__ = "0.1.0"

__all__ = [
    "FriezeFragment",
    "QuiddityRow",
    "bump",
    "bumped_entry",
    "entry_continuant",
    "entry_recurrence",
    "fragment",
    "shortest_period",
    "verify_ptolemy",
    "verify_unimodular",
    "FINITE",
    "INFINITE",
    "NOT_A_FRIEZE",
    "Classification",
    "ClassificationError",
    "classify",
    "minimal_inner_points",
    "polygon_order",
    "realize_polygon",
    "AnnulusTriangulation",
    "Asymptotic",
    "Bridging",
    "Central",
    "InvalidTriangulation",
    "Peripheral",
    "PuncturedDisc",
    "asymptotic_reduction",
    "bump_realization",
    "check_triangulation",
    "multiply_period",
    "outer_quiddity",
    "realize",
    "AdjacentOnes",
    "RoundLimitExceeded",
    "StripTriangulation",
    "realize_strip",
    "strip_quiddity",
    "count_by_recurrence",
    "count_matchings",
    "count_matchings_naive",
    "verify_matching_theorem",
]
