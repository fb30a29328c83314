"""Exact two-level model of phase-parameterized amplitude amplification.

Every operator in the ansatz ``K(beta) V(alpha)`` leaves the plane spanned by

    |u> = (N-1)^(-1/2) * sum_{x != w} |x>     and     |w>

invariant, so a schedule of ``p`` steps reduces to a product of ``p`` 2x2
unitaries acting on the amplitude pair ``(a_perp, a_target)``.  This module is
the fast objective kernel for the optimizer and also carries the closed-form
Grover baselines.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence, Tuple

MAX_QUBITS = 30

Step = Tuple[float, float]
Schedule = Sequence[Step]


class SubspaceState(NamedTuple):
    """Amplitudes on ``|u>`` (uniform over non-marked items) and ``|w>``."""

    a_perp: complex
    a_target: complex

    def norm_sq(self) -> float:
        return abs(self.a_perp) ** 2 + abs(self.a_target) ** 2


@dataclass(frozen=True)
class TransferMatrix:
    """One step ``K(beta) V(alpha)`` restricted to span{|u>, |w>}."""

    m11: complex
    m12: complex
    m21: complex
    m22: complex
    n: int

    def apply(self, state: SubspaceState) -> SubspaceState:
        a, b = state
        return SubspaceState(self.m11 * a + self.m12 * b, self.m21 * a + self.m22 * b)

    def as_array(self):
        import numpy as np

        return np.array([[self.m11, self.m12], [self.m21, self.m22]], dtype=complex)

    def det(self) -> complex:
        return self.m11 * self.m22 - self.m12 * self.m21


def check_qubits(n: int, minimum: int = 1) -> int:
    """Validate a qubit count and return ``N = 2**n``."""
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"qubit count must be an int, got {n!r}")
    if not minimum <= n <= MAX_QUBITS:
        raise ValueError(f"qubit count must lie in [{minimum}, {MAX_QUBITS}], got {n}")
    return 1 << n


def reduce_angle(theta: float) -> float:
    """Map an angle into [0, 2*pi)."""
    r = math.fmod(theta, 2.0 * math.pi)
    if r < 0.0:
        r += 2.0 * math.pi
    # fmod of a value just below 0 can round up to exactly 2*pi
    return 0.0 if r >= 2.0 * math.pi else r


def initial_state(n: int) -> SubspaceState:
    """Uniform superposition written in the (|u>, |w>) basis."""
    N = check_qubits(n)
    return SubspaceState(complex(math.sqrt((N - 1) / N)), complex(1.0 / math.sqrt(N)))


def transfer_matrix(alpha: float, beta: float, n: int) -> TransferMatrix:
    """Matrix of ``K(beta) V(alpha)`` in the (|u>, |w>) basis.

    With ``a = e^{i alpha} - 1`` and ``b = e^{i beta} - 1``, ``V`` multiplies
    the |w> amplitude by ``1 + a`` and ``K = 1 + b |s><s|`` where
    ``|s> = sqrt((N-1)/N) |u> + N^(-1/2) |w>``.
    """
    N = check_qubits(n)
    a = cmath.exp(1j * alpha) - 1.0
    b = cmath.exp(1j * beta) - 1.0
    r = math.sqrt(N - 1) / N
    return TransferMatrix(
        m11=1.0 + b * (N - 1) / N,
        m12=(1.0 + a) * b * r,
        m21=b * r,
        m22=(1.0 + a) * (1.0 + b / N),
        n=n,
    )


def apply_schedule(state: SubspaceState, schedule: Iterable[Step], n: int) -> SubspaceState:
    """Apply the steps of ``schedule`` in order (first step acts first)."""
    N = check_qubits(n)
    x, y = state
    frac = (N - 1) / N
    r = math.sqrt(N - 1) / N
    inv_n = 1.0 / N
    # inlined transfer_matrix: this is the optimizer's inner loop
    for alpha, beta in schedule:
        ea = cmath.exp(1j * alpha)
        b = cmath.exp(1j * beta) - 1.0
        y = ea * y
        x, y = (1.0 + b * frac) * x + b * r * y, b * r * x + (1.0 + b * inv_n) * y
    return SubspaceState(x, y)


def success_probability(state: SubspaceState) -> float:
    return abs(state.a_target) ** 2


def cost(schedule: Schedule, n: int) -> float:
    """Weight left outside the marked state, ``<phi| (1 - |w><w|) |phi>``.

    Read off the |u> amplitude rather than as ``1 - P`` so that costs near
    zero keep full relative precision.
    """
    return abs(apply_schedule(initial_state(n), schedule, n).a_perp) ** 2


def grover_angle(n: int) -> float:
    """Rotation angle phi of one Grover iterate, ``cos(phi) = 1 - 2/N``."""
    N = check_qubits(n)
    # atan2 form stays accurate when phi is tiny
    return math.atan2(2.0 * math.sqrt(N - 1), N - 2.0)


def grover_probability(p: int, n: int) -> float:
    """Closed-form success probability after ``p`` Grover iterates."""
    if p < 0:
        raise ValueError(f"iteration count must be >= 0, got {p}")
    phi = grover_angle(n)
    return math.sin((p + 0.5) * phi) ** 2


def grover_pmax(n: int) -> int:
    """Number of Grover iterates that maximizes the success probability.

    The maximizer is one of ``floor(pi*sqrt(N)/4 - 1/2)`` and that value plus
    one; ties go to the smaller count.
    """
    N = check_qubits(n)
    lo = max(0, math.floor(math.pi * math.sqrt(N) / 4.0 - 0.5))
    p_lo, p_hi = grover_probability(lo, n), grover_probability(lo + 1, n)
    return lo + 1 if p_hi > p_lo + 1e-12 else lo


def grover_prob_by_iteration(p: int, n: int) -> float:
    """Success probability after ``p`` iterates, by repeated 2x2 rotation."""
    if p < 0:
        raise ValueError(f"iteration count must be >= 0, got {p}")
    N = check_qubits(n)
    c = 1.0 - 2.0 / N
    s = 2.0 * math.sqrt(N - 1) / N
    phi = grover_angle(n)
    x, y = math.cos(phi / 2.0), math.sin(phi / 2.0)
    for _ in range(p):
        x, y = c * x - s * y, s * x + c * y
    return y * y
