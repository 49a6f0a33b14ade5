"""Volumes, 2-face areas and Heron-map fibers of n-simplices."""

from .catalog import build_catalog, classify_equiareal_tetrahedron, enumerate_partial_pairings, verify_fiber, volume_table
from .curves import n4_curve, n5_curve, odd_curve, verify_asymptotics, verify_odd_curve, witness_degree_certificate
from .linalg import rank_exact
from .linearization import images_equal, jacobian
from .metrics import area_map, cm_volume_squared, gram_volume_squared, heron_area_squared
from .rings import LaurentPoly, QuadExt

__version__ = "0.1.0"
