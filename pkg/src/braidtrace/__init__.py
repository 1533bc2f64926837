"""Jones polynomials of braid closures, evaluated four independent ways."""

from .ajl import AJLParams, PathBasis, build_E, endpoint_prefix, enumerate_basis, rho_ajl, validate_params
from .braid import BraidWord, closure_permutation, exponent_sum, parse_braid
from .bracket import (TLDiagram, jones, normalized_f, raw_bracket, reduced_bracket, smooth_letter,
                      tl_fold_bracket)
from .errors import BraidError, ParameterError, StateSumTooLarge, TruncationError
from .hadamard import ShotPlan, TraceEstimate, estimate_jones, estimate_weighted_trace, hadamard_shot
from .kl3 import KLParams, bracket_kl3, is_unitary, jones_kl3, rho3, u_matrices, unitary_theta_ranges
from .laurent import LaurentInt, QuarterLaurent, substitute_quarter_power
from .markov import bracket_ajl, loop_count_value, markov_residual, weighted_trace

__version__ = "0.1.0"
