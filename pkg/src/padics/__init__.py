"""Exact p-adic arithmetic and the ultrametric geometry it induces on
matrix groups, Heisenberg groups, affine maps, and the tree of balls,
together with finite-quotient brute-force verification oracles.
"""

from .core import (PNorm, PRational, PrimeMismatch, check_prime, dp, dp_log,
                   dp_prime, pabs, parse_rational, rp, vp)
from .values import Exact, value_str, vadd, vcmp, veq, vle, vmax, vmin, vmul, vpow
from .gauges import (Gauge, GroupOps, Semimetric, capped_sequence_max,
                     check_axioms, gauge_to_left, gauge_to_right,
                     indicator_gauge, max_family, nested_gauge, power,
                     product_lift, truncate)
from .matrices import (PMatrix, PVector, gl_gauge, gl_gauge_capped,
                       gl_log_gauge, in_gl_j, in_gl_zp, matadd, matdet,
                       matinv, matmul, matnorm, matsub, matvec, vecnorm)
from .triangular import (SubgroupProfile, UTMatrix, diag_semimetric, dilate,
                         factor_diagonal_unipotent, grade_component,
                         haar_dimension, left_metric, nilpotent_inverse,
                         profile_subgroup_member, right_metric,
                         tplus_inverse, tri_norm)
from .heisenberg import (HPoint, embed_to_triangular, h_conjugate, h_dilate,
                         h_inv, h_mul, h_norm, h_norm_tilde,
                         h_subgroup_member)
from .affine import (AffineMap, AffineMembership, aff_L, aff_Lprime,
                     aff_apply, aff_compose, aff_inverse, aff_norm,
                     membership, to_matrix)
from .cells import (BoundedWitness, Cell, act, cell_canonical,
                    cell_contains, cell_semimetric, children, export_tree,
                    is_bounded_cellset, meet, parent, rho, separating_cell,
                    zp_cell)
from .finite import (FiniteReport, QuotientRing, brute_group_axioms,
                     coset_cover_check, count_triangular_ball, haar_ball)

__version__ = "0.1.0"
