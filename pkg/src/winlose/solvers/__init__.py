"""Exact equilibrium solvers used as verification oracles."""

from .common import SolveResult
from .lemke_howson import lemke_howson
from .support_enumeration import support_enumeration

__all__ = ["SolveResult", "lemke_howson", "support_enumeration"]
