"""Kirby-Thompson invariants of bridge-trisected surfaces in the 4-sphere.

Exact combinatorial curves on punctured spheres, pants-complex search,
shadow tangles, spines of bridge trisections, and certified upper/lower
bounds for the two Kirby-Thompson invariants.
"""

from .curves import (ArcSystem, Curve, CurveError, PuncturedSphere,
                     apply_half_twist, apply_word, arc_intersection,
                     enclosed_punctures, format_arcs, format_curve,
                     geometric_intersection, parse_arcs, parse_curve,
                     parse_word, round_curve)
from .farey import curve_of_slope, farey_distance, slope_of_curve
from .pants import (DistanceResult, PantsDecomposition, PantsError,
                    distance_upper, format_pants, is_dual_edge, is_pants_edge,
                    neighbor_candidates, parse_pants, validate_pants)
from .tangles import (BridgeSplitUnlink, EfficientPair, ShadowTangle,
                      TangleError, check_edp_structure, check_parity,
                      component_count, efficient_defining_pairs,
                      enumerate_efficient, is_c_reducing, is_compressing,
                      is_cut, is_cut_reducing, is_efficient, is_reducing)
from .trisection import (Spine, SpineError, SurfaceExpr, c_reducing_witness,
                         connected_sum, distant_sum, format_spine,
                         parse_expression, parse_spine, spine_of_expression,
                         standard, validate_spine)
from .invariants import (KTCertificate, InvariantError, find_torus_cut_reducers,
                         format_certificate, kt_bounds, kt_lower, kt_upper,
                         parse_certificate, verify_certificate)
from .lemmas import LEMMA_IDS, LemmaReport, verify_all, verify_lemma

__version__ = "0.1.0"
