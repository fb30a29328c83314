"""One test per acceptance criterion, tolerances pinned.

Run ``pytest tests/test_acceptance.py -v`` for the summary block.
"""

import math
import time

import numpy as np
import pytest

from vargrover import circuits, cli, experiments, noise, problems, statevector, subspace
from vargrover.noise import NoiseModel
from vargrover.optimizer import grid_scan
from vargrover.problems import ProblemKind


def test_c01_table1(acceptance):
    expected = {3: (2, 5.77, 2.12), 4: (3, 3.95, 2.19), 5: (4, 0.08, 2.76), 6: (6, 0.34, 2.60)}
    start = time.perf_counter()
    rows = experiments.cmd_table1()
    elapsed = time.perf_counter() - start
    ok = elapsed < 60.0
    details = []
    for row in rows:
        p, imp, angle = expected[row["n"]]
        got_angle = row["best_angles"][0]
        ok &= row["p_max"] == p
        ok &= abs(row["improvement_percent"] - imp) <= 0.1
        ok &= abs(got_angle - angle) <= 0.02
        details.append(f"N={row['N']}: {row['improvement_percent']:.3f}% @ {got_angle:.4f}")
    acceptance(1, "shared-angle improvement table", ok, "; ".join(details) + f"; {elapsed:.1f}s")
    assert ok


def test_c02_grover_baseline(acceptance):
    p_n2 = subspace.grover_probability(1, 2)
    p_n3 = subspace.grover_probability(2, 3)
    worst = 0.0
    for n in range(2, 11):
        inst = statevector.SearchInstance(n, "1" * n)
        for p in range(0, 2 * subspace.grover_pmax(n) + 1):
            sched = [(math.pi, math.pi)] * p
            closed = subspace.grover_probability(p, n)
            sub = subspace.success_probability(subspace.apply_schedule(subspace.initial_state(n), sched, n))
            sv = statevector.run_sequence(inst, sched)
            worst = max(worst, abs(closed - sub), abs(closed - sv), abs(sub - sv))
    ok = abs(p_n2 - 1.0) <= 1e-12 and abs(p_n3 - 0.9453) <= 1e-4 and worst <= 1e-9
    acceptance(2, "Grover baseline", ok, f"P(n=2)={p_n2:.12f}, P(n=3)={p_n3:.7f}, max disagreement {worst:.1e}")
    assert ok


def test_c03_subspace_statevector(acceptance):
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(1000):
        n = int(rng.integers(2, 9))
        p = int(rng.integers(1, 9))
        sched = [tuple(x) for x in rng.uniform(0, 2 * np.pi, (p, 2))]
        omega = statevector.bitstring(int(rng.integers(1 << n)), n)
        sv = statevector.run_sequence(statevector.SearchInstance(n, omega), sched)
        sub = subspace.success_probability(subspace.apply_schedule(subspace.initial_state(n), sched, n))
        worst = max(worst, abs(sv - sub))
    ok = worst <= 1e-10
    acceptance(3, "subspace/statevector equivalence", ok, f"max |diff| {worst:.1e} over 1000 schedules")
    assert ok


def test_c04_omega_independence(acceptance):
    rng = np.random.default_rng(4)
    spreads = []
    for n in (3, 4):
        sched = [tuple(x) for x in rng.uniform(0, 2 * np.pi, (3, 2))]
        probs = [statevector.run_sequence(statevector.SearchInstance(n, statevector.bitstring(i, n)), sched)
                 for i in range(1 << n)]
        spreads.append(max(probs) - min(probs))
    ok = max(spreads) <= 1e-12
    acceptance(4, "omega independence", ok, f"spreads {spreads[0]:.1e}, {spreads[1]:.1e}")
    assert ok


def test_c05_landscape(acceptance):
    f = problems.make_objective(ProblemKind.P3, 3, 2)
    scan = grid_scan(f, [(0.0, 2.0 * math.pi)], 10001)
    xs = np.array([x[0] for x, _ in scan.points])
    probs = 1.0 - np.array([c for _, c in scan.points])
    i_pi = int(np.argmin(np.abs(xs - math.pi)))
    grover = subspace.grover_probability(2, 3)
    local_at_pi = probs[i_pi] >= probs[i_pi - 1] and probs[i_pi] >= probs[i_pi + 1]
    pi_value_ok = abs(xs[i_pi] - math.pi) < 1e-12 and abs(probs[i_pi] - grover) <= 1e-12
    left = int(np.argmax(np.where(xs < math.pi, probs, -np.inf)))
    right = int(np.argmax(np.where(xs > math.pi, probs, -np.inf)))
    global_ok = probs.max() > grover + 1e-3 and abs(probs[left] - probs.max()) <= 1e-9
    ok = (local_at_pi and pi_value_ok and global_ok
          and abs(xs[left] - 2.12) <= 0.01 and abs(xs[right] - (2 * math.pi - 2.12)) <= 0.01)
    curvature = probs[i_pi - 1] - probs[i_pi]
    acceptance(5, "P3 landscape", ok,
               f"P(pi)={probs[i_pi]:.7f} matches Grover: {pi_value_ok}; local max at pi: {local_at_pi} "
               f"(neighbour - P(pi) = {curvature:+.2e}); max {probs.max():.9f} at {xs[left]:.4f} "
               f"and {xs[right]:.4f}")
    assert ok


def test_c06_problem2_null(acceptance):
    gaps = {}
    for n in range(3, 7):
        _, row = experiments.optimize(ProblemKind.P2, n)
        gaps[n] = 100 * abs(row.variational_probability - row.grover_probability)
    ok = max(gaps.values()) <= 0.1
    acceptance(6, "problem 2 null result", ok, ", ".join(f"n={n}: {g:.2e} pp" for n, g in gaps.items()))
    assert ok


def test_c07_asymptotic(acceptance):
    rows = experiments.cmd_qubit_sweep(ProblemKind.P3, 11, n_min=10)
    diffs = {r["n"]: 100 * r["difference"] for r in rows}
    p12 = subspace.grover_probability(subspace.grover_pmax(12), 12)
    ok = all(d < 0.2 for d in diffs.values()) and p12 >= 0.999
    acceptance(7, "asymptotic trend", ok,
               f"diff n=10 {diffs[10]:.4f} pp, n=11 {diffs[11]:.4f} pp, Grover P(2^12)={p12:.6f}")
    assert ok


def test_c08_never_worse(acceptance):
    worst = math.inf
    for kind in ProblemKind:
        hops = 3 if kind in (ProblemKind.P1, ProblemKind.P4) else 10
        for n in range(2, 9):
            _, row = experiments.optimize(kind, n, hops=hops)
            worst = min(worst, row.variational_probability - row.grover_probability)
    ok = worst >= -1e-9
    acceptance(8, "never worse than Grover", ok, f"min(P_var - P_grover) = {worst:.2e}")
    assert ok


def test_c09_circuits(acceptance):
    rng = np.random.default_rng(9)
    worst = 0.0
    for n in (2, 3, 4):
        dim = 1 << n
        s = np.full(dim, dim ** -0.5)
        for _ in range(100):
            alpha, beta = rng.uniform(-2 * np.pi, 2 * np.pi, 2)
            omega = statevector.bitstring(int(rng.integers(dim)), n)
            o_ref = np.eye(dim, dtype=complex)
            o_ref[int(omega, 2), int(omega, 2)] = np.exp(1j * alpha)
            d_ref = np.eye(dim) + (np.exp(1j * beta) - 1) * np.outer(s, s)
            u_o = circuits.circuit_unitary(circuits.build_oracle_circuit(omega, alpha, n))
            u_d = circuits.circuit_unitary(circuits.build_diffusion_circuit(beta, n))
            worst = max(worst, circuits.phase_distance(u_o, o_ref), circuits.phase_distance(u_d, d_ref))
    # the control-count recursion is exactly quadratic from five controls on;
    # compiled sizes for n = 2..5 must sit under that quadratic
    counts = {k: len(circuits.mcphase_gates(0.5, list(range(1, k + 1)), 0)) for k in range(1, 12)}
    quadratic = np.all(np.diff([counts[k] for k in range(5, 12)], 3) == 0)
    coeffs = np.polyfit([6, 7, 8], [counts[k] for k in (6, 7, 8)], 2)
    sizes = {n: len(circuits.build_oracle_circuit("1" * n, 0.5, n)) + len(circuits.build_diffusion_circuit(0.5, n))
             for n in range(2, 6)}
    envelope = all(sizes[n] <= 2 * np.polyval(coeffs, n - 1) + 6 * n for n in sizes)
    ok = worst <= 1e-9 and quadratic and coeffs[0] > 0 and envelope
    acceptance(9, "circuit compilation", ok,
               f"max phase distance {worst:.1e}; sizes {sizes}; leading coeff {coeffs[0]:.0f}")
    assert ok


def test_c10_noise(acceptance):
    angle = experiments.optimize(ProblemKind.P3, 3)[0].best_params[0]
    sched = [(angle, angle)] * 2
    circ = circuits.build_sequence_circuit("111", sched, 3)
    rho0 = noise.ground_density(3)
    try:
        noise.simulate_noisy(circ, NoiseModel(3e-6, 2e-6), rho0, check=True)
        invariants = True
    except Exception:
        invariants = False
    ideal = statevector.run_sequence(statevector.SearchInstance(3, "111"), sched)
    vanishing = noise.success_probability(
        noise.simulate_noisy(circ, NoiseModel(1e-4, 1e-4, 1e-18, 1e-18), rho0), "111")
    limit_ok = abs(vanishing - ideal) <= 1e-8
    grid = noise.log_grid(1e-6, 1e-2, 9)
    sweep = noise.t1t2_sweep("111", sched, grid, grid, subspace.grover_probability(2, 3))
    diag = [pt.probability for pt in sweep.points if pt.t1 == pt.t2]
    monotone = all(b >= a for a, b in zip(diag, diag[1:]))
    low, high = sweep.points[-1], sweep.points[0]
    corners = low.exceeds and not high.exceeds
    ok = invariants and limit_ok and monotone and corners
    acceptance(10, "noise qualitative reproduction", ok,
               f"limit err {abs(vanishing - ideal):.1e}; diagonal {diag[0]:.3f}..{diag[-1]:.4f}; "
               f"flagged {len(sweep.flagged)}/45")
    assert ok


def test_c11_determinism(acceptance, tmp_path):
    same = True
    for argv in (["table1"], ["noise-sweep", "--grid-points", "3", "--hops", "10"]):
        blobs = []
        for i in range(2):
            out = tmp_path / f"{argv[0]}-{i}.csv"
            assert cli.main(argv + ["--seed", "0", "--out", str(out)]) == 0
            blobs.append(out.read_bytes())
        same &= blobs[0] == blobs[1] and len(blobs[0]) > 0
    acceptance(11, "determinism", same, "table1 and noise-sweep CSV byte-identical")
    assert same
