"""Invertible Boolean mappings in algebraic normal form."""

from .anf import (AnfFunction, anf_from_truth_table, anf_size, dep_set,
                  free_vars, op_cost, parse_anf, truth_table)
from .invcheck import (CheckOutcome, InvertibilityCertificate,
                       brute_force_invertible, check_theorem1, invert_state,
                       inverse_mapping)
from .mapping import (VectorialMapping, apply, conjugate, format_mapping,
                      is_t_function, load_mapping, nlfsr_feedback_invertible,
                      nlfsr_to_mapping, parse_mapping, relabel,
                      t_function_invertible)
from .polyperm import IntPolynomial, eval_poly, is_rivest_permutation, poly_to_mapping
from .search import SearchConfig, SearchResult, run_search, total_cost
from .seqstats import (autocorrelation, golomb_balance, golomb_runs,
                       output_sequence, sequence_report)
from .stg import CycleReport, cycle_structure, fixed_points, period_from

__version__ = "0.1.0"
