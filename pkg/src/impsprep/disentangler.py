"""The iterative SVD disentangling engine.

Each step SVDs the 4 x 2^(n-2) amplitude block of a qubit pair and applies
the inverse left factor, concentrating the pair's weight on the rows where
the source qubit is |0>. Running a schedule executes rounds of such steps
and reverses them into a preparation circuit.

Truncation conventions
----------------------
The engine keeps two amplitude vectors: the *exact* image of the target
under all gates applied so far, and a *working* copy that is truncated
(source qubit projected to |0> and renormalized) as the schedule demands.

* PER_ROUND: the working copy is reset from the exact state after every
  round, so each round's unitaries are computed from the true current
  amplitudes. Used by the hypercube/slot-filled/grid schemes, whose rounds
  revisit already-disentangled qubits to re-squeeze residual weight.
* PER_LAYER: within a layer the working copy stays truncated (for the chain
  this reproduces the canonical sequential MPS sweep exactly) and is reset
  from the exact state only at layer boundaries.

Multiple layers repeat the schedule; later layers see the residual error of
earlier ones, so the prepared fidelity is non-decreasing in the layer count.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .circuits import Circuit, OneQubitGate, simulate
from .schedules import Schedule
from .statevec import (
    BlockMatrix,
    StateVector,
    TwoQubitGate,
    extract_block,
    infidelity,
    inverse_extract,
    zero_state,
)

PHASE_TOL = 1e-12


class TruncationMode(enum.Enum):
    PER_LAYER = "layer"
    PER_ROUND = "round"


@dataclass(frozen=True)
class DisentangleStep:
    """One executed disentangling unitary (the U^-1 of the block SVD)."""

    pair: tuple[int, int]
    unitary: np.ndarray = field(repr=False)
    retained_weight: float
    singular_values: np.ndarray = field(repr=False)


@dataclass
class PreparationResult:
    circuit: Circuit
    final_infidelity: float
    per_round_weights: list[float]
    steps: list[DisentangleStep]
    report: dict


def _fix_svd_phases(u: np.ndarray) -> np.ndarray:
    """Canonicalize the left SVD factor within its equivalence class.

    The first nonzero entry of each left-singular vector is made real
    positive (reproducible circuits under degenerate singular values) and the
    last column is rescaled so det(U) = 1. Both moves multiply U^-1 from the
    left by a block-diagonal unitary, which later SVDs absorb; the det fix
    keeps real inputs special orthogonal, hence two-CNOT implementable
    without any rewrite.
    """
    u = u.copy()
    for j in range(u.shape[1]):
        col = u[:, j]
        idx = np.flatnonzero(np.abs(col) > PHASE_TOL)
        if idx.size:
            lead = col[idx[0]]
            u[:, j] = col * (abs(lead) / lead)
    u[:, 3] = u[:, 3] * np.linalg.det(u).conjugate()
    return u


def _block_svd(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Full 4x4 left factor and the (padded) four singular values."""
    m = rows.shape[1]
    if m >= 4:
        u, s, _ = np.linalg.svd(rows, full_matrices=False)
    else:
        u, s, _ = np.linalg.svd(rows, full_matrices=True)
    lam = np.zeros(4)
    lam[: s.size] = s
    return _fix_svd_phases(u), lam


def disentangle_step(state: StateVector, a: int, b: int) -> tuple[DisentangleStep, StateVector]:
    """SVD the (a, b) block and apply U^-1; no truncation is performed.

    Returns the step record (unitary = U^-1, retained_weight = l0^2 + l1^2)
    and the transformed state. Sign/phase conventions on U's columns are
    fixed so the result is deterministic under degenerate singular values.
    """
    block = extract_block(state, a, b)
    if not np.all(np.isfinite(block.rows)):
        raise ValueError("block matrix contains non-finite entries; SVD aborted")
    u, lam = _block_svd(block.rows)
    u_inv = u.conj().T
    new_rows = u_inv @ block.rows
    new_state = inverse_extract(BlockMatrix(n=block.n, a=a, b=b, rows=new_rows))
    retained = float(lam[0] ** 2 + lam[1] ** 2)
    step = DisentangleStep(
        pair=(a, b),
        unitary=u_inv,
        retained_weight=min(1.0, retained),
        singular_values=lam,
    )
    return step, new_state


def truncate_and_renormalize(state: StateVector, a: int) -> tuple[StateVector, float]:
    """Zero every amplitude with qubit ``a`` set and rescale to unit norm.

    Returns the new state and the discarded probability mass. Masses are
    accumulated with compensated summation so near-total truncation is
    detected reliably.
    """
    if not 0 <= a < state.n:
        raise ValueError(f"qubit index {a} out of range for n = {state.n}")
    t = state.copy_amps().reshape([2] * state.n)
    moved = np.moveaxis(t, a, 0)
    discarded = math.fsum(np.abs(moved[1]).ravel() ** 2)
    kept = math.fsum(np.abs(moved[0]).ravel() ** 2)
    if kept < 1e-14:
        raise ValueError(f"truncation of qubit {a} would discard (almost) all mass")
    moved[1] = 0.0
    moved[0] /= math.sqrt(kept)
    amps = np.moveaxis(moved, 0, a).reshape(-1)
    out = StateVector(n=state.n, amps=amps)
    out.amps.setflags(write=False)
    return out, float(discarded)


def _apply_gate_to_amps(amps: np.ndarray, n: int, a: int, b: int, u4: np.ndarray) -> np.ndarray:
    t = np.moveaxis(amps.reshape([2] * n), (a, b), (0, 1)).reshape(4, -1)
    t = u4 @ t
    return np.moveaxis(t.reshape([2, 2] + [2] * (n - 2)), (0, 1), (a, b)).reshape(-1)


def _absorb_survivor(amps: np.ndarray, n: int, survivor: int) -> np.ndarray | None:
    """2x2 rotation sending the survivor's residual superposition onto |0>."""
    i1 = 1 << (n - 1 - survivor)
    v0, v1 = amps[0], amps[i1]
    nv = math.hypot(abs(v0), abs(v1))
    if nv < 1e-14:
        return None
    r = np.array([[v0.conjugate() / nv, v1.conjugate() / nv], [-v1 / nv, v0 / nv]])
    if np.abs(r - np.eye(2)).max() < PHASE_TOL:
        return None
    return r


def run_schedule(
    target: StateVector,
    schedule: Schedule,
    layers: int = 1,
    truncation_mode: TruncationMode = TruncationMode.PER_ROUND,
    rewrite_2cx: bool = False,
) -> PreparationResult:
    """Disentangle ``target`` by ``layers`` repetitions of ``schedule`` and
    return the reversed preparation circuit.

    Within a round every step is computed from the same pre-round working
    state (pairs are disjoint, so the gates commute); truncation follows
    ``truncation_mode`` as described in the module docstring. With
    ``rewrite_2cx`` each SVD unitary is replaced by its two-CNOT-implementable
    equivalence-class representative before being applied; every step keeps
    the same retained weight (the replacement only mixes amplitudes within
    the kept and discarded halves), downstream steps absorb the difference,
    and exact targets stay exact. On inexact targets the compiled circuit is
    an equally valid compilation whose infidelity agrees with the plain one
    at the truncation-error scale.

    The final single-qubit rotation aligning the survivor qubit with |0> is
    absorbed explicitly, so the emitted circuit prepares the target from
    |0...0> up to global phase and the truncation error.
    """
    if layers < 1:
        raise ValueError("layers must be >= 1")
    schedule.validate()
    if schedule.n != target.n:
        raise ValueError(f"schedule is for n = {schedule.n}, target has n = {target.n}")
    if rewrite_2cx:
        from .gatesynth import build_u2cx

    exact = target.copy_amps()
    work = exact.copy()
    n = target.n
    steps: list[DisentangleStep] = []
    per_round_weights: list[float] = []

    for _layer in range(layers):
        work = exact.copy()
        for rnd in schedule.rounds:
            if truncation_mode is TruncationMode.PER_ROUND:
                work = exact.copy()
            pre = StateVector(n=n, amps=work)
            round_steps = []
            for a, b in rnd:
                step, _ = disentangle_step(pre, a, b)
                if rewrite_2cx:
                    gate = build_u2cx(step.unitary)
                    step = DisentangleStep(
                        pair=step.pair,
                        unitary=gate,
                        retained_weight=step.retained_weight,
                        singular_values=step.singular_values,
                    )
                round_steps.append(step)
            for step in round_steps:
                a, b = step.pair
                work = _apply_gate_to_amps(work, n, a, b, step.unitary)
                exact = _apply_gate_to_amps(exact, n, a, b, step.unitary)
            if truncation_mode is TruncationMode.PER_LAYER:
                state = StateVector(n=n, amps=work)
                for a, _b in rnd:
                    state, _ = truncate_and_renormalize(state, a)
                work = state.copy_amps()
            steps.extend(round_steps)
            per_round_weights.append(
                float(np.prod([s.retained_weight for s in round_steps]))
            )

    survivor = schedule.survivor()
    gates: list = []
    rot = _absorb_survivor(exact, n, survivor)
    if rot is not None:
        gates.append(OneQubitGate(survivor, rot.conj().T))
    for step in reversed(steps):
        a, b = step.pair
        gates.append(TwoQubitGate(a, b, step.unitary.conj().T))

    circuit = Circuit(
        n=n,
        gates=gates,
        u_depth=layers * schedule.u_depth,
        scheme=schedule.scheme,
        layers=layers,
    )
    prepared = simulate(circuit, zero_state(n))
    final = infidelity(prepared, target)
    report = {
        "scheme": schedule.scheme,
        "n": n,
        "layers": layers,
        "u_depth": circuit.u_depth,
        "truncation_mode": truncation_mode.value,
        "rewrite_2cx": rewrite_2cx,
        "infidelity": final,
        "steps": len(steps),
    }
    return PreparationResult(
        circuit=circuit,
        final_infidelity=final,
        per_round_weights=per_round_weights,
        steps=steps,
        report=report,
    )


def default_truncation_mode(scheme: str) -> TruncationMode:
    """Chain/tree schemes truncate per layer, the denser schemes per round."""
    if scheme in ("chain", "ttn"):
        return TruncationMode.PER_LAYER
    return TruncationMode.PER_ROUND
