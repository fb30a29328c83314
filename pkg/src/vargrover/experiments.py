"""Experiment runners behind the command-line interface.

Each ``cmd_*`` function returns plain rows (lists of dicts with a fixed key
order) so the CLI can emit them as CSV or JSON.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import noise, problems, subspace
from .errors import InvariantViolation
from .optimizer import BasinHoppingConfig, OptimizationResult, basin_hop, grid_scan
from .problems import ProblemKind

TABLE1_QUBITS = (3, 4, 5, 6)
MAX_SWEEP_QUBITS = 14
MAX_NOISE_QUBITS = 4

PValue = Union[int, str, None]


@dataclass
class ComparisonRow:
    n: int
    N: int
    p_max: int
    grover_probability: float
    variational_probability: float
    improvement_percent: float
    best_angles: List[float]

    @classmethod
    def build(cls, n, p, p_grover, p_var, angles) -> "ComparisonRow":
        return cls(n, 1 << n, p, p_grover, p_var, 100.0 * (p_var - p_grover) / p_grover, list(angles))

    def check(self) -> None:
        expected = 100.0 * (self.variational_probability - self.grover_probability) / self.grover_probability
        if abs(expected - self.improvement_percent) > 1e-9:
            raise InvariantViolation("improvement_percent inconsistent with its probabilities")
        for prob in (self.grover_probability, self.variational_probability):
            if not -1e-12 <= prob <= 1.0 + 1e-12:
                raise InvariantViolation(f"probability {prob} outside [0, 1]")

    def as_row(self) -> Dict[str, object]:
        return asdict(self)


def resolve_p(p: PValue, n: int) -> int:
    """``None`` or ``"auto"`` means Grover's optimal iteration count."""
    if p is None or (isinstance(p, str) and p.strip().lower() == "auto"):
        return subspace.grover_pmax(n)
    p = int(p)
    if p < 1:
        raise ValueError(f"p must be >= 1 or 'auto', got {p}")
    return p


def report_angles(problem: ProblemKind, params: Sequence[float]) -> List[float]:
    if problem.is_shared_angle:
        return [problems.canonical_angle(x) for x in params]
    return [subspace.reduce_angle(x) for x in params]


def optimize(
    problem: ProblemKind,
    n: int,
    p: PValue = "auto",
    hops: int = 100,
    seed: int = 0,
    perturbation_scale: float = 0.5,
    temperature: float = 0.01,
) -> Tuple[OptimizationResult, ComparisonRow]:
    """Basin-hop a problem objective, started from the Grover setting.

    Starting at the all-pi point means the result can never be worse than
    Grover at the same ``p``.
    """
    problem = ProblemKind.parse(problem)
    subspace.check_qubits(n, minimum=2)
    p = resolve_p(p, n)
    config = BasinHoppingConfig(
        bounds=problems.default_bounds(problem, p),
        hop_count=hops,
        perturbation_scale=perturbation_scale,
        temperature=temperature,
        rng_seed=seed,
    )
    result = basin_hop(problems.make_objective(problem, n, p), config, x0=problems.grover_params(problem, p))
    row = ComparisonRow.build(
        n, p, subspace.grover_probability(p, n), result.success_probability,
        report_angles(problem, result.best_params),
    )
    row.check()
    return result, row


def cmd_grover(n_min: int, n_max: Optional[int] = None) -> List[Dict[str, object]]:
    n_max = n_min if n_max is None else n_max
    if not 2 <= n_min <= n_max <= 24:
        raise ValueError(f"need 2 <= n <= n_max <= 24, got n={n_min}, n_max={n_max}")
    rows = []
    for n in range(n_min, n_max + 1):
        p = subspace.grover_pmax(n)
        rows.append({
            "n": n,
            "N": 1 << n,
            "phi": subspace.grover_angle(n),
            "p_max": p,
            "probability": subspace.grover_probability(p, n),
        })
    return rows


def cmd_optimize(problem, n, p="auto", hops=100, seed=0) -> Tuple[OptimizationResult, ComparisonRow]:
    return optimize(problem, n, p, hops=hops, seed=seed)


def cmd_table1(hops: int = 100, seed: int = 0) -> List[Dict[str, object]]:
    """Shared-angle (P3) comparison against Grover for N = 8 ... 64."""
    return [optimize(ProblemKind.P3, n, "auto", hops=hops, seed=seed)[1].as_row() for n in TABLE1_QUBITS]


def cmd_sweep(problem, n: int, p: PValue = "auto", resolution: int = 10001,
              full_period: bool = False) -> List[Dict[str, object]]:
    """Success probability along the single angle of P2 or P3."""
    problem = ProblemKind.parse(problem)
    if not problem.is_shared_angle:
        raise ValueError("landscape sweeps need a one-parameter problem (2 or 3)")
    p = resolve_p(p, n)
    bounds = [(0.0, 2.0 * math.pi)] if full_period else problems.default_bounds(problem, p)
    scan = grid_scan(problems.make_objective(problem, n, p), bounds, resolution)
    return [{"angle": params[0], "probability": 1.0 - c} for params, c in scan.points]


def cmd_qubit_sweep(problem, n_max: int, n_min: int = 2, hops: int = 100,
                    seed: int = 0) -> List[Dict[str, object]]:
    if not 2 <= n_min <= n_max <= MAX_SWEEP_QUBITS:
        raise ValueError(f"need 2 <= n <= n_max <= {MAX_SWEEP_QUBITS}")
    rows = []
    for n in range(n_min, n_max + 1):
        _, row = optimize(problem, n, "auto", hops=hops, seed=seed)
        rows.append({
            "n": n,
            "p_max": row.p_max,
            "grover_probability": row.grover_probability,
            "variational_probability": row.variational_probability,
            "difference": row.variational_probability - row.grover_probability,
        })
    return rows


def cmd_noise_sweep(
    n: int = 3,
    problem=ProblemKind.P3,
    p: PValue = "auto",
    omega: Optional[str] = None,
    t1_range: Tuple[float, float] = (1e-6, 1e-2),
    t2_range: Tuple[float, float] = (1e-6, 1e-2),
    grid_points: int = 9,
    duration_1q: float = 50e-9,
    duration_2q: float = 150e-9,
    hops: int = 100,
    seed: int = 0,
) -> Tuple[List[Dict[str, object]], noise.SweepResult]:
    """Noisy success probability of the optimized schedule on a T1 x T2 grid.

    The flag column marks points whose relative gain over Grover's noiseless
    optimum stays above 5%.  The marked item defaults to all ones.
    """
    if not 2 <= n <= MAX_NOISE_QUBITS:
        raise ValueError(f"noise sweeps support 2 <= n <= {MAX_NOISE_QUBITS}")
    omega = "1" * n if omega is None else omega
    if len(omega) != n:
        raise ValueError(f"omega must have {n} bits")
    p = resolve_p(p, n)
    problem = ProblemKind.parse(problem)
    result, _ = optimize(problem, n, p, hops=hops, seed=seed)
    schedule = problems.expand(problem, result.best_params, p)
    reference = subspace.grover_probability(subspace.grover_pmax(n), n)
    sweep = noise.t1t2_sweep(
        omega, schedule,
        noise.log_grid(*t1_range, grid_points), noise.log_grid(*t2_range, grid_points),
        reference, duration_1q=duration_1q, duration_2q=duration_2q,
    )
    rows = [
        {
            "t1": pt.t1,
            "t2": pt.t2,
            "physical": pt.physical,
            "probability": pt.probability,
            "exceeds_5pct": pt.exceeds,
        }
        for pt in sweep.points
    ]
    return rows, sweep
