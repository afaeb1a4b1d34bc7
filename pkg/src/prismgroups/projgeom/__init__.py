"""Projective points, lines, flags and marked boxes."""

from .boxes import (BoxClass, MarkedBox, Y0, affine_diameter, apply_word, box_b, box_class,
                    box_coordinates, box_i, box_t, get_matrix, is_convex, unit_square_box)
from .matrix import Mat3, SingularMatrixError, act_line, act_point, cross, dot, duality_conjugate
from .projective import (DegenerateError, Flag, FlagTriple, HVec, canonical, canonical_invariant,
                         flat_distance, orthogonal_pair_invariants, prism_invariant, triple_product)
