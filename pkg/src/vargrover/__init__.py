"""Variational phase-angle schedules for Grover search.

Submodules: ``subspace`` (exact two-level model and Grover baselines),
``statevector`` (dense reference simulator), ``problems`` (the four
constrained angle parameterizations), ``optimizer`` (basin hopping and grid
scans), ``circuits`` (gate-level compilation), ``noise`` (T1/T2 density-matrix
simulation) and ``experiments``/``cli`` (reproduction commands).
"""

from .errors import InvariantViolation
from .problems import ProblemKind

__version__ = "0.1.0"

__all__ = ["InvariantViolation", "ProblemKind", "__version__"]
