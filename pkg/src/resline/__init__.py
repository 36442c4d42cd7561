"""Exact computation of invariants of formal tensor fields on a line."""

from .action import (
    Automorphism,
    TensorField,
    act,
    fractional_residue,
    normal_form,
    orbit_info,
    pairing,
    random_automorphism,
)
from .multipoly import MultiPoly
from .pmk import (
    LieTruncation,
    PmkSpec,
    center_invariants_check,
    lie_action,
    pde_residual,
    pmk_determinant,
    pmk_generating,
    pmk_gradient,
    pmk_partition,
    pmk_properties,
    pmk_square_root,
)
from .report import Report
from .scalars import Fp, RatFunc
from .series import PrecisionError, TruncatedSeries, pow_rational, residue, series_compose

__all__ = [
    "Automorphism", "Fp", "LieTruncation", "MultiPoly", "PmkSpec", "PrecisionError", "RatFunc",
    "Report", "TensorField", "TruncatedSeries", "act", "center_invariants_check",
    "fractional_residue", "lie_action", "normal_form", "orbit_info", "pairing", "pde_residual",
    "pmk_determinant", "pmk_generating", "pmk_gradient", "pmk_partition", "pmk_properties",
    "pmk_square_root", "pow_rational", "random_automorphism", "residue", "series_compose",
]
