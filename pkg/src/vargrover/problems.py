"""The four constrained variational search problems.

Each problem maps a short vector of free angles onto a full schedule of
``p`` (oracle, diffusion) angle pairs:

    P1  standard oracle (alpha = pi), one diffusion angle per step
    P2  standard oracle, a single diffusion angle shared by all steps
    P3  one angle shared by the oracle and the diffusion in every step
    P4  independent oracle and diffusion angles in every step
"""

from __future__ import annotations

import enum
import math
from typing import Callable, List, Sequence, Tuple

from . import subspace

TWO_PI = 2.0 * math.pi

Bounds = List[Tuple[float, float]]


class ProblemKind(enum.IntEnum):
    P1 = 1
    P2 = 2
    P3 = 3
    P4 = 4

    @classmethod
    def parse(cls, value) -> "ProblemKind":
        if isinstance(value, cls):
            return value
        text = str(value).strip().upper().lstrip("P")
        try:
            return cls(int(text))
        except ValueError:
            raise ValueError(f"unknown problem kind {value!r}; expected 1-4") from None

    @property
    def is_shared_angle(self) -> bool:
        return self in (ProblemKind.P2, ProblemKind.P3)


def _check_p(p: int) -> None:
    if p < 1:
        raise ValueError(f"schedule length p must be >= 1, got {p}")


def dimension(problem: ProblemKind, p: int) -> int:
    _check_p(p)
    problem = ProblemKind.parse(problem)
    if problem is ProblemKind.P1:
        return p
    if problem is ProblemKind.P4:
        return 2 * p
    return 1


def expand(problem: ProblemKind, params: Sequence[float], p: int) -> List[Tuple[float, float]]:
    """Turn free parameters into the list of ``(alpha_i, beta_i)`` steps."""
    problem = ProblemKind.parse(problem)
    params = [float(x) for x in params]
    if len(params) != dimension(problem, p):
        raise ValueError(
            f"{problem.name} with p={p} takes {dimension(problem, p)} parameters, got {len(params)}"
        )
    if problem is ProblemKind.P1:
        return [(math.pi, b) for b in params]
    if problem is ProblemKind.P2:
        return [(math.pi, params[0])] * p
    if problem is ProblemKind.P3:
        return [(params[0], params[0])] * p
    return list(zip(params[:p], params[p:]))


def objective(problem: ProblemKind, params: Sequence[float], n: int, p: int) -> float:
    """Cost of the expanded schedule: probability of missing the marked item."""
    return subspace.cost(expand(problem, params, p), n)


def make_objective(problem: ProblemKind, n: int, p: int) -> Callable[[Sequence[float]], float]:
    """Bind ``(problem, n, p)`` and return ``params -> cost``."""
    problem = ProblemKind.parse(problem)
    subspace.check_qubits(n)
    dim = dimension(problem, p)
    psi0 = subspace.initial_state(n)

    def f(params: Sequence[float]) -> float:
        if len(params) != dim:
            raise ValueError(f"expected {dim} parameters, got {len(params)}")
        return abs(subspace.apply_schedule(psi0, expand(problem, params, p), n).a_perp) ** 2

    return f


def default_bounds(problem: ProblemKind, p: int) -> Bounds:
    """Search box per coordinate.

    Shared-angle problems search [0, pi]; negating every angle conjugates the
    transfer matrices and leaves the success probability unchanged, so the
    other half period is a mirror image.  P1 and P4 search the full period.
    """
    problem = ProblemKind.parse(problem)
    dim = dimension(problem, p)
    if problem.is_shared_angle:
        return [(0.0, math.pi)] * dim
    return [(0.0, TWO_PI)] * dim


def grover_params(problem: ProblemKind, p: int) -> List[float]:
    """Free parameters that reproduce plain Grover search (all angles pi)."""
    return [math.pi] * dimension(problem, p)


def canonical_angle(theta: float) -> float:
    """Representative of ``theta`` in [0, pi] under ``theta -> 2*pi - theta``."""
    t = subspace.reduce_angle(theta)
    return TWO_PI - t if t > math.pi else t
