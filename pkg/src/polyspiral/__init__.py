"""Edge-to-edge regular polygon spirals and their limiting distances.

The chain of unit regular polygons with increasing side counts traces a
logarithmic spiral with growth rate 4/pi.  This package builds the exact
centre sequences and vertex chain, implements the asymptotic machinery
describing them, estimates the rigid motion aligning centres with the
spiral r = exp(4*theta/pi), and measures the limiting distances 5/6 and
7/12 (all polygons, by parity) and 7/24 (odd polygons).
"""

from .asymptotics import (
    EULER_GAMMA,
    GROWTH_RATE,
    ApproximantCoefficients,
    B1,
    B3,
    BernoulliPoly,
    EmOrder,
    Parity,
    alt_harmonic_expansion,
    approximant,
    asymptotic_form,
    detemple_bounds,
    em_sum_minus_integral,
    gap_limit,
    harmonic_expansion,
    power_sum_closed,
    power_sum_exact,
    spiral_gap,
)
from .geometry import (
    CenterSequence,
    Family,
    HarmonicPair,
    Polygon,
    PolygonChain,
    Violation,
    alt_harmonic,
    build_chain,
    centers_all,
    centers_odd,
    harmonic,
    harmonic_pair,
    step_angle,
    step_magnitude,
    validate_chain,
)
from .metrics import (
    APPROXIMANT_SCALE,
    ConvergenceRecord,
    FitError,
    RigidMotion,
    SimilarityMap,
    TARGET_SPIRAL,
    distance_table,
    fit_motion_to_approximant,
    fit_motion_to_spiral,
    inner_side_fraction,
    normalization_map,
    parity_means,
    richardson_extrapolate,
)
from .spiral import LogSpiral, nearest_distance, nearest_distances, offset_distance_profile, spiral_point

__all__ = [
    "APPROXIMANT_SCALE",
    "ApproximantCoefficients",
    "B1",
    "B3",
    "BernoulliPoly",
    "CenterSequence",
    "ConvergenceRecord",
    "EULER_GAMMA",
    "EmOrder",
    "Family",
    "FitError",
    "GROWTH_RATE",
    "HarmonicPair",
    "LogSpiral",
    "Parity",
    "Polygon",
    "PolygonChain",
    "RigidMotion",
    "SimilarityMap",
    "TARGET_SPIRAL",
    "Violation",
    "alt_harmonic",
    "alt_harmonic_expansion",
    "approximant",
    "asymptotic_form",
    "build_chain",
    "centers_all",
    "centers_odd",
    "detemple_bounds",
    "distance_table",
    "em_sum_minus_integral",
    "fit_motion_to_approximant",
    "fit_motion_to_spiral",
    "gap_limit",
    "harmonic",
    "harmonic_expansion",
    "harmonic_pair",
    "inner_side_fraction",
    "nearest_distance",
    "nearest_distances",
    "normalization_map",
    "offset_distance_profile",
    "parity_means",
    "power_sum_closed",
    "power_sum_exact",
    "richardson_extrapolate",
    "spiral_gap",
    "spiral_point",
    "step_angle",
    "step_magnitude",
    "validate_chain",
]
