"""Compilation of the oracle and diffusion operators to {RZ, RX(+-pi/2), CZ}.

Qubit ``q`` is bit ``q`` of the basis index (little-endian), so for a marked
bitstring ``omega = w_1 w_2 ... w_n`` (big-endian, ``w_1`` most significant)
the character ``w_i`` lives on qubit ``n - i``.

Multi-controlled phases use the ancilla-free recursion

    C^k P(t) = CP(t/2; c_k, t) . C^{k-1}X(-> c_k) . CP(-t/2; c_k, t)
               . C^{k-1}X(-> c_k) . C^{k-1} P(t/2)

where the multi-controlled X gates borrow the idle target as a dirty
ancilla and are built from linear-size Toffoli ladders.  The total gate count
is quadratic in the number of controls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

HALF_PI = math.pi / 2.0
MAX_CONTROLS = 4
MAX_UNITARY_QUBITS = 6


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: Tuple[int, ...]
    theta: float = 0.0

    def __post_init__(self):
        arity = {"RZ": 1, "RX": 1, "CZ": 2}
        if self.kind not in arity:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if len(self.qubits) != arity[self.kind]:
            raise ValueError(f"{self.kind} acts on {arity[self.kind]} qubit(s), got {self.qubits}")
        if len(set(self.qubits)) != len(self.qubits) or min(self.qubits) < 0:
            raise ValueError(f"invalid qubit indices {self.qubits}")
        if self.kind == "RX" and self.theta not in (HALF_PI, -HALF_PI):
            raise ValueError(f"RX angle must be +-pi/2, got {self.theta}")

    def text(self) -> str:
        if self.kind == "CZ":
            return "CZ q{} q{}".format(*self.qubits)
        if self.kind == "RX":
            return "RX q{} {}pi/2".format(self.qubits[0], "" if self.theta > 0 else "-")
        return f"RZ q{self.qubits[0]} {self.theta!r}"


@dataclass
class Circuit:
    n: int
    gates: List[Gate] = field(default_factory=list)

    def __post_init__(self):
        for g in self.gates:
            self._check(g)

    def _check(self, gate: Gate) -> None:
        if max(gate.qubits) >= self.n:
            raise ValueError(f"gate {gate.text()} out of range for {self.n} qubits")

    def extend(self, gates: Iterable[Gate]) -> "Circuit":
        for g in gates:
            self._check(g)
            self.gates.append(g)
        return self

    def __len__(self) -> int:
        return len(self.gates)

    def counts(self) -> Dict[str, int]:
        out = {"RZ": 0, "RX": 0, "CZ": 0}
        for g in self.gates:
            out[g.kind] += 1
        return out

    def dump(self) -> str:
        """One gate per line: ``RZ q<i> <theta>``, ``RX q<i> <+-pi/2>``, ``CZ q<i> q<j>``."""
        return "".join(g.text() + "\n" for g in self.gates)

    @classmethod
    def parse(cls, n: int, text: str) -> "Circuit":
        gates = []
        for line in text.splitlines():
            parts = line.split()
            if not parts:
                continue
            kind, args = parts[0], parts[1:]
            if kind == "CZ":
                gates.append(Gate("CZ", (int(args[0][1:]), int(args[1][1:]))))
            elif kind == "RX":
                sign = -1.0 if args[1].startswith("-") else 1.0
                gates.append(Gate("RX", (int(args[0][1:]),), sign * HALF_PI))
            elif kind == "RZ":
                gates.append(Gate("RZ", (int(args[0][1:]),), float(args[1])))
            else:
                raise ValueError(f"cannot parse gate line {line!r}")
        return cls(n, gates)


# --- primitive macros -------------------------------------------------------

def _rz(q: int, theta: float) -> List[Gate]:
    return [Gate("RZ", (q,), theta)]


def _h(q: int) -> List[Gate]:
    return [Gate("RZ", (q,), HALF_PI), Gate("RX", (q,), HALF_PI), Gate("RZ", (q,), HALF_PI)]


def _hdg(q: int) -> List[Gate]:
    # inverse of _h; equal to H up to a global phase, and lets H.H cancel
    return [Gate("RZ", (q,), -HALF_PI), Gate("RX", (q,), -HALF_PI), Gate("RZ", (q,), -HALF_PI)]


def _x(q: int) -> List[Gate]:
    return [Gate("RX", (q,), HALF_PI), Gate("RX", (q,), HALF_PI)]


def _cnot(c: int, t: int) -> List[Gate]:
    return _h(t) + [Gate("CZ", (c, t))] + _hdg(t)


def _cphase(theta: float, c: int, t: int) -> List[Gate]:
    """diag(1, 1, 1, e^{i theta}) up to global phase."""
    return _rz(c, theta / 2) + _rz(t, theta / 2) + _cnot(c, t) + _rz(t, -theta / 2) + _cnot(c, t)


def _toffoli(a: int, b: int, t: int) -> List[Gate]:
    return _h(t) + mcphase_gates(math.pi, [a, b], t) + _hdg(t)


def _mcx_ladder(controls: Sequence[int], target: int, ancillas: Sequence[int]) -> List[Gate]:
    """C^m X with ``m - 2`` dirty ancillas, ``4(m - 2)`` Toffolis."""
    m = len(controls)
    c, a = controls, ancillas
    down = [(c[m - 1], a[m - 3], target)]
    down += [(c[i], a[i - 2], a[i - 1]) for i in range(m - 2, 1, -1)]
    half = down + [(c[0], c[1], a[0])] + down[1:][::-1]
    gates: List[Gate] = []
    for triple in (half[0], *half[1:], half[0], *half[1:]):
        gates += _toffoli(*triple)
    return gates


def mcx_gates(controls: Sequence[int], target: int, free: Sequence[int]) -> List[Gate]:
    """Multi-controlled X, borrowing qubits in ``free`` as dirty ancillas."""
    controls = list(controls)
    free = list(free)
    m = len(controls)
    if m == 0:
        return _x(target)
    if m == 1:
        return _cnot(controls[0], target)
    if m == 2:
        return _toffoli(controls[0], controls[1], target)
    if len(free) >= m - 2:
        return _mcx_ladder(controls, target, free[: m - 2])
    if not free:
        raise ValueError("a multi-controlled X with 3+ controls needs one spare qubit")
    # split into two halves around one borrowed qubit
    a = free[0]
    m1 = (m + 1) // 2
    first, second = controls[:m1], controls[m1:] + [a]
    g1 = mcx_gates(first, a, controls[m1:] + [target])
    g2 = mcx_gates(second, target, first)
    return g1 + g2 + g1 + g2


def mcphase_gates(theta: float, controls: Sequence[int], target: int) -> List[Gate]:
    """Phase ``e^{i theta}`` on the all-ones state of ``controls + [target]``.

    Exact up to global phase, for any number of controls and no ancillas.
    """
    controls = list(controls)
    if theta == 0.0:
        return []
    if not controls:
        return _rz(target, theta)
    if len(controls) == 1:
        return _cphase(theta, controls[0], target)
    last, rest = controls[-1], controls[:-1]
    flip = mcx_gates(rest, last, [target])
    return (
        _cphase(theta / 2, last, target)
        + flip
        + _cphase(-theta / 2, last, target)
        + flip
        + mcphase_gates(theta / 2, rest, target)
    )


# --- public builders --------------------------------------------------------

def decompose_mcphase(k: int, theta: float) -> Circuit:
    """``diag(1, ..., 1, e^{i theta})`` on ``k + 1`` qubits, ``1 <= k <= 4``."""
    if not 1 <= k <= MAX_CONTROLS:
        raise ValueError(f"control count must lie in [1, {MAX_CONTROLS}], got {k}")
    return Circuit(k + 1, mcphase_gates(theta, list(range(1, k + 1)), 0))


def _check_n(n: int) -> None:
    if not 2 <= n <= MAX_CONTROLS + 1:
        raise ValueError(f"circuit builders support 2 <= n <= {MAX_CONTROLS + 1}, got {n}")


def omega_qubit(i: int, n: int) -> int:
    """Qubit carrying character ``i`` (0-based) of a big-endian bitstring."""
    return n - 1 - i


def build_oracle_circuit(omega: str, alpha: float, n: int) -> Circuit:
    """``1 + (e^{i alpha} - 1)|omega><omega|`` up to global phase."""
    _check_n(n)
    if len(omega) != n or set(omega) - {"0", "1"}:
        raise ValueError(f"omega must be a {n}-bit string, got {omega!r}")
    flips: List[Gate] = []
    for i, ch in enumerate(omega):
        if ch == "0":
            flips += _x(omega_qubit(i, n))
    core = mcphase_gates(alpha, list(range(1, n)), 0)
    return Circuit(n, flips + core + flips)


def build_diffusion_circuit(beta: float, n: int) -> Circuit:
    """``1 + (e^{i beta} - 1)|s><s|`` up to global phase."""
    _check_n(n)
    pre: List[Gate] = []
    post: List[Gate] = []
    for q in range(n):
        pre += _h(q) + _x(q)
        post += _x(q) + _hdg(q)
    return Circuit(n, pre + mcphase_gates(beta, list(range(1, n)), 0) + post)


def build_sequence_circuit(omega: str, schedule: Sequence[Tuple[float, float]], n: int) -> Circuit:
    """Uniform-state preparation from |0...0> followed by every (oracle, diffusion) step."""
    _check_n(n)
    circ = Circuit(n)
    for q in range(n):
        circ.extend(_h(q))
    for alpha, beta in schedule:
        circ.extend(build_oracle_circuit(omega, alpha, n).gates)
        circ.extend(build_diffusion_circuit(beta, n).gates)
    return simplify(circ)


def _wrap(theta: float) -> float:
    t = math.remainder(theta, 2.0 * math.pi)
    return 0.0 if abs(t) < 1e-15 else t


def simplify(circuit: Circuit) -> Circuit:
    """Peephole pass: merge adjacent RZ, cancel RX(a)RX(-a) and CZ.CZ.

    Preserves the unitary up to global phase.
    """
    out: List[Gate | None] = []
    last: Dict[int, List[int]] = {q: [] for q in range(circuit.n)}

    def top(q):
        return last[q][-1] if last[q] else None

    def push(g):
        out.append(g)
        for q in g.qubits:
            last[q].append(len(out) - 1)

    def drop(i):
        for q in out[i].qubits:
            last[q].pop()
        out[i] = None

    for g in circuit.gates:
        if g.kind == "CZ":
            i, j = top(g.qubits[0]), top(g.qubits[1])
            if i is not None and i == j and set(out[i].qubits) == set(g.qubits):
                drop(i)
            else:
                push(g)
            continue
        q = g.qubits[0]
        i = top(q)
        prev = out[i] if i is not None else None
        if g.kind == "RZ":
            theta = _wrap(g.theta)
            if prev is not None and prev.kind == "RZ":
                theta = _wrap(prev.theta + theta)
                drop(i)
            if theta != 0.0:
                push(Gate("RZ", (q,), theta))
        elif prev is not None and prev.kind == "RX" and prev.theta == -g.theta:
            drop(i)
        else:
            push(g)
    return Circuit(circuit.n, [g for g in out if g is not None])


# --- dense verification backend ----------------------------------------------

def gate_matrix(gate: Gate) -> np.ndarray:
    if gate.kind == "RZ":
        return np.diag([np.exp(-0.5j * gate.theta), np.exp(0.5j * gate.theta)])
    if gate.kind == "RX":
        c, s = math.cos(gate.theta / 2), math.sin(gate.theta / 2)
        return np.array([[c, -1j * s], [-1j * s, c]])
    return np.diag([1.0, 1.0, 1.0, -1.0]).astype(complex)


def _bit_mask(n: int, qubits: Sequence[int]) -> np.ndarray:
    idx = np.arange(1 << n)
    mask = np.ones(1 << n, dtype=bool)
    for q in qubits:
        mask &= ((idx >> q) & 1).astype(bool)
    return mask


def apply_gate(mat: np.ndarray, gate: Gate, n: int) -> np.ndarray:
    """Left-multiply the 2**n-row array ``mat`` by the gate's operator."""
    if gate.kind == "CZ":
        out = mat.copy()
        out[_bit_mask(n, gate.qubits)] *= -1.0
        return out
    return apply_1q(mat, gate_matrix(gate), gate.qubits[0], n)


def apply_1q(mat: np.ndarray, u: np.ndarray, q: int, n: int) -> np.ndarray:
    cols = mat.shape[1]
    t = mat.reshape((2,) * n + (cols,))
    axis = n - 1 - q
    t = np.tensordot(u, t, axes=([1], [axis]))
    return np.moveaxis(t, 0, axis).reshape(1 << n, cols)


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    if circuit.n > MAX_UNITARY_QUBITS:
        raise ValueError(f"dense unitaries limited to {MAX_UNITARY_QUBITS} qubits")
    u = np.eye(1 << circuit.n, dtype=complex)
    for g in circuit.gates:
        u = apply_gate(u, g, circuit.n)
    return u


def phase_distance(u: np.ndarray, v: np.ndarray) -> float:
    """Operator-norm distance between ``u`` and ``v`` after optimal global phase."""
    overlap = np.vdot(v, u)
    phase = overlap / abs(overlap) if abs(overlap) > 1e-300 else 1.0
    return float(np.linalg.norm(u - phase * v, 2))
