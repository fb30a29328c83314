"""T1/T2 relaxation of compiled circuits via density-matrix Kraus evolution.

Each RX gate is followed by the relaxation channel for ``duration_1q`` on its
qubit, and each CZ gate by the channel for ``duration_2q`` on both of its
qubits.  RZ gates are frame changes and stay noiseless.  The channel is
amplitude damping with ``gamma = 1 - exp(-t/T1)`` followed by pure dephasing
with ``lambda = (1 - exp(-t/T_phi)) / 2``, ``1/T_phi = 1/T2 - 1/(2 T1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import circuits
from .errors import InvariantViolation

MAX_QUBITS = 5


@dataclass(frozen=True)
class NoiseModel:
    t1: float
    t2: float
    duration_1q: float = 50e-9
    duration_2q: float = 150e-9

    def __post_init__(self):
        if not (self.t1 > 0 and self.t2 > 0):
            raise ValueError("T1 and T2 must be positive")
        # relative slack so that T2 == 2*T1 computed in floating point passes
        if self.t2 > 2.0 * self.t1 * (1 + 1e-12):
            raise ValueError(f"unphysical relaxation times: T2={self.t2} > 2*T1={2 * self.t1}")
        if not (self.duration_1q > 0 and self.duration_2q > 0):
            raise ValueError("gate durations must be positive")

    @staticmethod
    def is_physical(t1: float, t2: float) -> bool:
        return t1 > 0 and t2 > 0 and t2 <= 2.0 * t1 * (1 + 1e-12)


def relaxation_rates(noise: NoiseModel, duration: float) -> Tuple[float, float]:
    """Return ``(gamma, lambda)`` for one idle/gate period of ``duration``."""
    gamma = -math.expm1(-duration / noise.t1)
    inv_tphi = max(0.0, 1.0 / noise.t2 - 0.5 / noise.t1)
    lam = -0.5 * math.expm1(-duration * inv_tphi)
    return gamma, lam


def kraus_relaxation(noise: NoiseModel, duration: float) -> List[np.ndarray]:
    """Single-qubit Kraus operators of dephasing after amplitude damping."""
    gamma, lam = relaxation_rates(noise, duration)
    damp = [
        np.array([[1.0, 0.0], [0.0, math.sqrt(1.0 - gamma)]], dtype=complex),
        np.array([[0.0, math.sqrt(gamma)], [0.0, 0.0]], dtype=complex),
    ]
    dephase = [
        math.sqrt(1.0 - lam) * np.eye(2, dtype=complex),
        math.sqrt(lam) * np.diag([1.0, -1.0]).astype(complex),
    ]
    return [d @ a for d in dephase for a in damp]


def pure_density(state: np.ndarray) -> np.ndarray:
    state = np.asarray(state, dtype=complex)
    return np.outer(state, state.conj())


def ground_density(n: int) -> np.ndarray:
    rho = np.zeros((1 << n, 1 << n), dtype=complex)
    rho[0, 0] = 1.0
    return rho


def check_density(rho: np.ndarray, tol: float = 1e-10, psd_tol: float = 1e-9) -> None:
    """Raise :class:`InvariantViolation` unless ``rho`` is a valid state."""
    herm = float(np.max(np.abs(rho - rho.conj().T)))
    if herm > tol:
        raise InvariantViolation(f"density matrix not Hermitian (deviation {herm:.3e})")
    tr = np.trace(rho)
    if abs(tr - 1.0) > tol:
        raise InvariantViolation(f"density matrix trace {tr.real:.12f} != 1")
    low = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min())
    if low < -psd_tol:
        raise InvariantViolation(f"density matrix has eigenvalue {low:.3e} < 0")


def _unitary_step(rho: np.ndarray, gate: circuits.Gate, n: int) -> np.ndarray:
    # (U rho U^dag) = U (U rho^dag)^dag, and rho is Hermitian
    half = circuits.apply_gate(rho, gate, n)
    return circuits.apply_gate(half.conj().T, gate, n)


def _channel_step(rho: np.ndarray, kraus: Sequence[np.ndarray], q: int, n: int) -> np.ndarray:
    out = np.zeros_like(rho)
    for k in kraus:
        half = circuits.apply_1q(rho, k, q, n)
        out += circuits.apply_1q(half.conj().T, k, q, n)
    return out


def simulate_noisy(
    circuit: circuits.Circuit,
    noise: Optional[NoiseModel],
    initial: np.ndarray,
    check: bool = False,
) -> np.ndarray:
    """Evolve ``initial`` through ``circuit`` with relaxation after RX and CZ.

    ``noise=None`` gives the noiseless evolution.  With ``check=True`` the
    density-matrix invariants are verified after every gate and channel.
    """
    n = circuit.n
    if n > MAX_QUBITS:
        raise ValueError(f"density-matrix simulation limited to {MAX_QUBITS} qubits")
    if initial.shape != (1 << n, 1 << n):
        raise ValueError(f"initial state has shape {initial.shape}, expected {(1 << n, 1 << n)}")
    rho = np.array(initial, dtype=complex)
    k1 = k2 = None
    if noise is not None:
        k1 = kraus_relaxation(noise, noise.duration_1q)
        k2 = kraus_relaxation(noise, noise.duration_2q)
    for gate in circuit.gates:
        rho = _unitary_step(rho, gate, n)
        if noise is not None and gate.kind != "RZ":
            kraus = k1 if gate.kind == "RX" else k2
            for q in gate.qubits:
                rho = _channel_step(rho, kraus, q, n)
        if check:
            check_density(rho)
    return rho


def success_probability(rho: np.ndarray, omega: str) -> float:
    return float(rho[int(omega, 2), int(omega, 2)].real)


@dataclass
class SweepPoint:
    t1: float
    t2: float
    physical: bool
    probability: Optional[float]
    exceeds: bool


@dataclass
class SweepResult:
    points: List[SweepPoint]
    noiseless_probability: float
    reference_probability: float
    threshold: float

    @property
    def flagged(self) -> List[SweepPoint]:
        return [pt for pt in self.points if pt.exceeds]

    @property
    def flagged_fraction(self) -> float:
        physical = [pt for pt in self.points if pt.physical]
        return len(self.flagged) / len(physical) if physical else 0.0


def log_grid(lo: float, hi: float, points: int) -> List[float]:
    if not (0 < lo <= hi) or points < 1:
        raise ValueError("log grid needs 0 < lo <= hi and at least one point")
    if points == 1:
        return [lo]
    return np.geomspace(lo, hi, points).tolist()


def t1t2_sweep(
    omega: str,
    schedule: Sequence[Tuple[float, float]],
    t1_values: Sequence[float],
    t2_values: Sequence[float],
    reference_probability: float,
    threshold: float = 0.05,
    duration_1q: float = 50e-9,
    duration_2q: float = 150e-9,
) -> SweepResult:
    """Success probability of the compiled schedule on a T1 x T2 grid.

    Points are ordered T1-major.  A point is flagged when its relative gain
    over ``reference_probability`` (the noiseless Grover optimum) exceeds
    ``threshold``.  Grid points with ``T2 > 2 T1`` admit no physical channel;
    they are kept in the output with ``physical=False`` and no probability.
    """
    n = len(omega)
    circ = circuits.build_sequence_circuit(omega, schedule, n)
    rho0 = ground_density(n)
    noiseless = success_probability(simulate_noisy(circ, None, rho0), omega)
    points = []
    if not any(NoiseModel.is_physical(t1, t2) for t1 in t1_values for t2 in t2_values):
        raise ValueError("sweep grid contains no physical (T1, T2) pair")
    for t1 in t1_values:
        for t2 in t2_values:
            if not NoiseModel.is_physical(t1, t2):
                points.append(SweepPoint(t1, t2, False, None, False))
                continue
            model = NoiseModel(t1, min(t2, 2.0 * t1), duration_1q, duration_2q)
            prob = success_probability(simulate_noisy(circ, model, rho0), omega)
            gain = (prob - reference_probability) / reference_probability
            points.append(SweepPoint(t1, t2, True, prob, gain > threshold))
    return SweepResult(points, noiseless, reference_probability, threshold)
