"""Exact De Rham and Koszul homology for weighted homogeneous hypersurfaces.

Everything is computed one graded piece at a time over the rationals.
"""

from .bounds import BoundReport, candidate_degrees, example01, filtration_report, theorem2_bound
from .derham import (
    FracElem,
    FracVector,
    concentration_check,
    frac_partial,
    normal_form,
    pole_order,
    stabilized_h1,
    theta,
    truncated_h1,
)
from .eulerian import GradedOpModule, extension_closure_check, is_generalized_eulerian
from .koszul import h1_hilbert, koszul_h_dim, koszul_slice
from .linalg import Matrix, nullspace_basis, rank
from .polyring import Poly, Weights, parse_poly
from .quotient import HilbertFn, hilbert_function, isolated_singularity_check

__version__ = "0.1.0"
