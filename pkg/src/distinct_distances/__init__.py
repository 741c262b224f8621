"""Distinct distances on parameterized curves, Sidon sets, and distinct-distance subsets."""

from .curves import (Line, ParamSet, Polynomial, RationalCircle, Torus, classify_curve, closed_form_phi,
                     det_JT, eval_point, reparam_affine, rho, rho_partials)
from .distances import (brute_force_Q, build_histogram, cs_lower_bound, distinct_count, energy_Q,
                        isosceles_S)
from .numeric import Dual, QuantKey, angle_multiple, half_angle_point, parse_rational, quantize_key
from .sidon import (greedy_sidon, integer_sidon_subset, is_sidon, max_sidon_oracle, quantize_reduce,
                    real_sidon_subset, singer_sidon)
from .specparse import format_curve_spec, parse_curve_spec
from .subsets import (bound_exponent, exhaustive_subset_oracle, randomized_subset, recursion_H,
                      sidon_route_subset, verify_distinct_distances)

__version__ = "0.1.0"
