"""Every supported problem kind, registered on import."""

from .base import (
    BRUTE_FORCE_LIMIT, PROBLEM_IDS, REGISTRY, ProblemDef, brute_force,
    enumerate_solutions, generate_instance, get_problem, make_instance,
    minimum_cardinality, universe_of, verify_solution, with_k,
)
from .sat import CNF, assignment_mask, decode_assignment, literal_bit
from .graphs import DigraphK, GraphK, VCVPayload
from .sets import SetFamily
from .numbers import KnapsackPayload, NumbersPayload, SchedulingPayload
from .hamilton import HamPayload, TSPPayload
from .steiner import SteinerPayload
from .facility import FacilityPayload
from .matching import MatchingPayload

__all__ = [
    "BRUTE_FORCE_LIMIT", "PROBLEM_IDS", "REGISTRY", "ProblemDef", "brute_force",
    "enumerate_solutions", "generate_instance", "get_problem", "make_instance",
    "minimum_cardinality", "universe_of", "verify_solution", "with_k",
    "CNF", "assignment_mask", "decode_assignment", "literal_bit",
    "DigraphK", "GraphK", "VCVPayload", "SetFamily", "KnapsackPayload",
    "NumbersPayload", "SchedulingPayload", "HamPayload", "TSPPayload",
    "SteinerPayload", "FacilityPayload", "MatchingPayload",
]
