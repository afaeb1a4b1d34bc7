"""Exact and high-precision arithmetic."""

from .bigfloat import DEFAULT_PREC, context, decimal_str, to_bigfloat
from .mpoly import MPoly, NotExactError, parse, read_fixtures, write_fixture
from .quadext import SQRT3, FieldMismatchError, QuadExt
from .rat import Rat, cbrt_exact, isqrt_exact, rat, rat_str
from .ratfunc import RatFunc
from .resultant import ResultantError, resultant, sylvester_matrix
from .sturm import (RootCount, RootRefinementError, SturmChain, count_roots,
                    isolate_positive_roots, refine_root, sturm_count)
