"""Motivic Poincare series, candidate poles and motivic volume of irreducible
quasi-ordinary hypersurface germs, in exact arithmetic."""

from .errors import QOError
from .ltseries import BivRat, LVolRat
from .motivic import (candidate_poles, motivic_volume, p_curve, p_geom, p_interior, p_ktau,
                      p_point)
from .qocore import b_set, dk_cones, jacobian_generators, sections, validate, wk_algorithm

__all__ = [
    "BivRat", "LVolRat", "QOError", "b_set", "candidate_poles", "dk_cones",
    "jacobian_generators", "motivic_volume", "p_curve", "p_geom", "p_interior", "p_ktau",
    "p_point", "sections", "validate", "wk_algorithm",
]
