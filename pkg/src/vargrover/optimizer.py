"""Derivative-free optimization: bounded Nelder-Mead, basin hopping, grid scan."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

Objective = Callable[[Sequence[float]], float]
Bounds = Sequence[Tuple[float, float]]


@dataclass(frozen=True)
class BasinHoppingConfig:
    bounds: Tuple[Tuple[float, float], ...]
    hop_count: int = 100
    perturbation_scale: float = 0.5
    temperature: float = 0.01
    rng_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "bounds", tuple((float(lo), float(hi)) for lo, hi in self.bounds))
        if not self.bounds:
            raise ValueError("bounds must be non-empty")
        for lo, hi in self.bounds:
            if not lo <= hi:
                raise ValueError(f"empty interval [{lo}, {hi}]")
        if self.hop_count < 1:
            raise ValueError("hop_count must be >= 1")
        if not self.perturbation_scale > 0:
            raise ValueError("perturbation_scale must be > 0")
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")
        if not 0 <= self.rng_seed < 2**64:
            raise ValueError("rng_seed must be a 64-bit unsigned integer")


@dataclass
class OptimizationResult:
    best_params: List[float]
    best_cost: float
    success_probability: float
    evaluations: int
    trace: List[Tuple[int, float]] = field(default_factory=list)


@dataclass
class GridScan:
    points: List[Tuple[Tuple[float, ...], float]]
    best_index: int

    @property
    def best_params(self) -> Tuple[float, ...]:
        return self.points[self.best_index][0]

    @property
    def best_cost(self) -> float:
        return self.points[self.best_index][1]


def _clamp(x: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    return np.minimum(np.maximum(x, lo), hi)


def local_minimize(
    objective: Objective,
    start: Sequence[float],
    bounds: Bounds,
    xtol: float = 1e-8,
    max_evals: Optional[int] = None,
    initial_step: float = 0.1,
) -> Tuple[List[float], float]:
    """Bounded Nelder-Mead descent from ``start``.

    Trial points outside the box are clamped onto it.  Stops once every
    vertex lies within ``xtol`` of the best one, or after ``500 * dim``
    evaluations.  The start point is a simplex vertex, so the returned cost
    never exceeds ``objective(start)``.
    """
    lo = np.array([b[0] for b in bounds], dtype=float)
    hi = np.array([b[1] for b in bounds], dtype=float)
    x0 = np.asarray(start, dtype=float)
    dim = x0.size
    if dim != lo.size:
        raise ValueError(f"start has {dim} coordinates but bounds have {lo.size}")
    if np.any(x0 < lo) or np.any(x0 > hi):
        raise ValueError("start point lies outside the bounds")
    if max_evals is None:
        max_evals = 500 * dim

    def f(x):
        return float(objective(x.tolist()))

    simplex = [x0]
    for i in range(dim):
        v = x0.copy()
        width = hi[i] - lo[i]
        step = min(initial_step, 0.5 * width) if width > 0 else 0.0
        v[i] = v[i] + step if v[i] + step <= hi[i] else v[i] - step
        simplex.append(v)
    values = [f(v) for v in simplex]
    evals = len(values)

    while evals < max_evals:
        order = np.argsort(values, kind="stable")
        simplex = [simplex[i] for i in order]
        values = [values[i] for i in order]
        best = simplex[0]
        if max(float(np.max(np.abs(v - best))) for v in simplex[1:]) < xtol:
            break

        centroid = np.mean(simplex[:-1], axis=0)
        worst = simplex[-1]
        xr = _clamp(centroid + (centroid - worst), lo, hi)
        fr = f(xr)
        evals += 1
        if fr < values[0]:
            xe = _clamp(centroid + 2.0 * (centroid - worst), lo, hi)
            fe = f(xe)
            evals += 1
            if fe < fr:
                simplex[-1], values[-1] = xe, fe
            else:
                simplex[-1], values[-1] = xr, fr
            continue
        if fr < values[-2]:
            simplex[-1], values[-1] = xr, fr
            continue
        if fr < values[-1]:
            xc = _clamp(centroid + 0.5 * (xr - centroid), lo, hi)
        else:
            xc = _clamp(centroid + 0.5 * (worst - centroid), lo, hi)
        fc = f(xc)
        evals += 1
        if fc < min(fr, values[-1]):
            simplex[-1], values[-1] = xc, fc
            continue
        # shrink toward the best vertex
        for i in range(1, len(simplex)):
            simplex[i] = best + 0.5 * (simplex[i] - best)
            values[i] = f(simplex[i])
        evals += dim

    i = int(np.argmin(values))
    return simplex[i].tolist(), values[i]


def basin_hop(
    objective: Objective,
    config: BasinHoppingConfig,
    x0: Optional[Sequence[float]] = None,
) -> OptimizationResult:
    """Basin hopping with Metropolis acceptance over a bounded box.

    Each hop perturbs the current point by a uniform step of at most
    ``perturbation_scale`` per coordinate, clamps it to the box and runs
    :func:`local_minimize`.  The new minimum replaces the current point when
    it is lower, or with probability ``exp(-delta / temperature)`` otherwise.
    When ``x0`` is omitted the chain starts from a seeded uniform draw.
    """
    bounds = config.bounds
    lo = np.array([b[0] for b in bounds])
    hi = np.array([b[1] for b in bounds])
    rng = np.random.default_rng(config.rng_seed)

    count = 0

    def counted(x):
        nonlocal count
        count += 1
        return objective(x)

    start = rng.uniform(lo, hi) if x0 is None else _clamp(np.asarray(x0, dtype=float), lo, hi)
    x_cur, f_cur = local_minimize(counted, start, bounds)
    x_best, f_best = x_cur, f_cur
    trace = [(0, f_cur)]

    for hop in range(1, config.hop_count + 1):
        step = rng.uniform(-config.perturbation_scale, config.perturbation_scale, lo.size)
        trial = _clamp(np.asarray(x_cur) + step, lo, hi)
        x_new, f_new = local_minimize(counted, trial, bounds)
        u = rng.random()
        if f_new < f_cur:
            accept = True
        elif config.temperature > 0:
            accept = u < math.exp(-(f_new - f_cur) / config.temperature)
        else:
            accept = False
        if accept:
            x_cur, f_cur = x_new, f_new
            trace.append((hop, f_cur))
        if f_new < f_best:
            x_best, f_best = x_new, f_new

    return OptimizationResult(
        best_params=list(x_best),
        best_cost=f_best,
        success_probability=1.0 - f_best,
        evaluations=count,
        trace=trace,
    )


def grid_scan(objective: Objective, bounds: Bounds, resolution: int) -> GridScan:
    """Evaluate on a uniform grid with both endpoints, first axis outermost.

    The argmin is the lowest-index point attaining the minimum cost.
    """
    if not 1 <= len(bounds) <= 2:
        raise ValueError(f"grid scan supports 1 or 2 dimensions, got {len(bounds)}")
    if resolution < 2:
        raise ValueError("resolution must be >= 2 points per axis")
    axes = [np.linspace(lo, hi, resolution).tolist() for lo, hi in bounds]
    points = []
    best_index, best_cost = 0, math.inf
    for i, params in enumerate(itertools.product(*axes)):
        c = float(objective(list(params)))
        points.append((params, c))
        if c < best_cost:
            best_index, best_cost = i, c
    return GridScan(points, best_index)
