"""Exact-arithmetic toolkit for the PureCircuit to 3-sparse win-lose game reduction."""

from .classes import GameClass, validate_class, validate_matrix
from .errors import *  # noqa: F401,F403
from .games import (BimatrixGame, MixedProfile, Rational, RegretReport, eval_payoffs, regret, renormalize,
                    transpose_swap, verify_ne, verify_wsne)
from .pipeline import ReductionTrace, compose_back_translation, read_trace, run_chain, write_trace
from .polymatrix import (RestrictedPolymatrixGame, assignment_from_wsne, from_purecircuit, poly_regret,
                         validate_restricted)
from .purecircuit import (AND, NOT, PURIFY, Gate, PureCircuitInstance, check_assignment, normalize_for_reduction,
                          validate_instance)
from .report import ValidationReport, Violation

__version__ = "0.1.0"
