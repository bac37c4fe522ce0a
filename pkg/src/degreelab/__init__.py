"""degreelab: exact degree growth and dynamical degrees of self-maps.

Exact-arithmetic computation of degree sequences of polynomial,
projective rational and monomial self-maps; certified spectral radii
and dynamical degrees; spectral-gap asymptotics of degree growth;
eigenvaluations at infinity; LLL-based algebraicity certificates; and
intersection-form inequality suites on finite-rank Picard-Manin models.
"""

__version__ = "0.1.0"

from .bigfloat import BigFloat, DEFAULT_PRECISION
from .degrees import (DegreeSequence, DynDegreeEstimate, GapFit, check_gap_condition,
                      check_log_concavity, check_submultiplicative, estimate_lambda1,
                      gap_fit)
from .dynmaps import (Caps, MonomialMap, PolyMap, ProjRationalMap, compose_self,
                      degree_sequence, lambda2_via_inverse, lambda_k_monomial,
                      monomial_degree_sequence, proj_degree_sequence, proj_iterate,
                      verify_inverse)
from .errors import (ConvergenceError, DegreeLabError, DimensionError, HypothesisError,
                     InvariantError, ParseError, PrecisionError, ResourceLimitError)
from .intmatrix import IntMatrix, char_poly, det, exterior_power
from .intpoly import IntPoly, RootInterval, isolate_real_roots
from .lll import MinPolyCertificate, integer_relation, lll_min_poly, lll_reduce
from .multipoly import (MultiPoly, NEG_INF, compose, gcd_multi, parse_poly,
                        reduce_homogeneous_tuple)
from .picard_manin import (NefPool, PMClass, PMOperator, check_hodge_lower_bound,
                           check_norm_comparison, check_pairing_bound, cremona_operator, dual_path_check,
                           intersect, pell_operator, pm_degree_sequence, pm_eigenclass,
                           qbar, siu_nef_check, truncation_monotonicity)
from .registry import builtin_names, builtin_operator, load_builtin, load_map, parse_map_file
from .spectral import count_roots_in_disk, max_root_modulus, spectral_radius, sqrt_interval
from .valuations import (FractionalIdealGens, L_functional, MonomialValuation,
                         ValuationTable, certify_algebraicity, check_min_additivity,
                         eigen_weight_power_iteration, eigenvaluation_scaled_limit,
                         eval_monomial, generic_combination_check, neg_deg_valuation,
                         pushforward_monomial, value_group_matrix, verify_eigen_equation,
                         verify_valuation_axioms)
