"""Independent reference values: Laplace inversion and Monte Carlo."""

from .inversion import InversionSpec, gaver_stehfest, invert_transform, inversion_curve, talbot
from .montecarlo import McResult, McSpec, dkw_band, ks_distance, simulate_hitting

__all__ = [
    "InversionSpec",
    "McResult",
    "McSpec",
    "dkw_band",
    "gaver_stehfest",
    "invert_transform",
    "inversion_curve",
    "ks_distance",
    "simulate_hitting",
    "talbot",
]
