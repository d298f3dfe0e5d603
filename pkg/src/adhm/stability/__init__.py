"""Stability conditions, filtrations, the W = 0 classification and walls."""
from .conditions import (CONDITIONS, check_condition, criteria_semistable, s_value, t_value,
                         verify_witness, zeta_semistable)
from .filtrations import hn_filtration, is_theta_semistable, jh_filtration, slope_theta
from .kronecker import KroneckerBlock, assemble, block_multiset, companion, kronecker_decompose
from .params import Filtration, StabilityParam, StabilityVerdict
from .w0 import (W0Class, blowup_point_maps, blowup_points, classify_W0, count_stable_w0,
                 point_to_triple, s0_stable_classes, torus_normal_form, triple_to_point)
from .walls import ChernData, candidate_walls, chamber_rep, wall_parameter, wall_signs, wall_witness
from ..quiverrep import cm_data

__all__ = [
    "CONDITIONS", "check_condition", "criteria_semistable", "s_value", "t_value", "verify_witness",
    "zeta_semistable", "hn_filtration", "is_theta_semistable", "jh_filtration", "slope_theta",
    "KroneckerBlock", "assemble", "block_multiset", "companion", "kronecker_decompose",
    "Filtration", "StabilityParam", "StabilityVerdict", "W0Class", "blowup_point_maps",
    "blowup_points", "classify_W0", "count_stable_w0", "point_to_triple", "s0_stable_classes",
    "torus_normal_form", "triple_to_point", "ChernData", "candidate_walls", "chamber_rep",
    "wall_parameter", "wall_signs", "wall_witness", "cm_data",
]
