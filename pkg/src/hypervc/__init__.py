"""Vertex cover approximation in k-uniform hypergraphs."""
from hypervc.baseline import CombineParams, combine_with_seed, exhaustive_large_cover_check, greedy_matching_cover
from hypervc.dense import CandidateFamily, dense_vc, extract_candidates, extract_candidates_lwise
from hypervc.errors import BudgetExceeded, GenerationError, InputError, InvariantViolation, ParseError
from hypervc.exact import ExactResult, enumerate_min_covers, exact_min_cover, matching_lower_bound
from hypervc.hypergraph import (
    Cover,
    DensityReport,
    Hypergraph,
    degree,
    density_report,
    is_cover,
    link,
    link_of_set,
    set_degree,
    uncovered_subhypergraph,
)
from hypervc.io import parse_instance, write_instance
from hypervc.sampling import (
    RunReport,
    SamplingParams,
    compute_params,
    inner_recursion,
    outer_recursion,
    seed_quality,
)

__version__ = "0.1.0"
