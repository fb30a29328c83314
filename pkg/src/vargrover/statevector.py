"""Dense 2**n statevector simulation of the oracle and diffusion phase operators.

Bitstrings are big-endian: ``omega = "101"`` names basis index 5, with the
first character as the most significant bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Tuple, Union

import numpy as np

MAX_QUBITS = 24


@dataclass(frozen=True)
class SearchInstance:
    n: int
    omega: str

    def __post_init__(self):
        if not 1 <= self.n <= MAX_QUBITS:
            raise ValueError(f"n must lie in [1, {MAX_QUBITS}], got {self.n}")
        if len(self.omega) != self.n or set(self.omega) - {"0", "1"}:
            raise ValueError(f"omega must be a {self.n}-bit string, got {self.omega!r}")

    @property
    def index(self) -> int:
        return int(self.omega, 2)


def bitstring(index: int, n: int) -> str:
    return format(index, f"0{n}b")


def _index(omega: Union[str, int], dim: int) -> int:
    idx = int(omega, 2) if isinstance(omega, str) else int(omega)
    if not 0 <= idx < dim:
        raise IndexError(f"marked item {omega!r} out of range for dimension {dim}")
    return idx


def uniform_state(n: int) -> np.ndarray:
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"n must lie in [1, {MAX_QUBITS}], got {n}")
    N = 1 << n
    return np.full(N, 1.0 / np.sqrt(N), dtype=complex)


def apply_oracle_phase(state: np.ndarray, omega: Union[str, int], alpha: float) -> np.ndarray:
    """Return ``V(alpha) state``: the marked amplitude picks up ``e^{i alpha}``."""
    idx = _index(omega, state.shape[0])
    out = state.copy()
    out[idx] *= np.exp(1j * alpha)
    return out


def apply_diffusion_phase(state: np.ndarray, beta: float) -> np.ndarray:
    """Return ``K(beta) state = state + (e^{i beta} - 1) <s|state> |s>``.

    Rank-one update, O(N); the dense projector is never formed.
    """
    N = state.shape[0]
    overlap = state.sum() / np.sqrt(N)
    return state + (np.exp(1j * beta) - 1.0) * overlap / np.sqrt(N)


def evolve(instance: SearchInstance, schedule: Iterable[Tuple[float, float]]) -> np.ndarray:
    """Final state of the sequence applied to the uniform superposition."""
    psi = uniform_state(instance.n)
    idx = instance.index
    for alpha, beta in schedule:
        psi = apply_oracle_phase(psi, idx, alpha)
        psi = apply_diffusion_phase(psi, beta)
    return psi


def run_sequence(instance: SearchInstance, schedule: Iterable[Tuple[float, float]]) -> float:
    """Probability of measuring the marked item after the schedule."""
    psi = evolve(instance, schedule)
    return float(abs(psi[instance.index]) ** 2)
