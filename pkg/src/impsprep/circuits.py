"""Gate-list circuits and their exact simulation.

A Circuit is the *preparation* object: applying its gates in order to
|0...0> approximates the compiled target. Gates are either bound 4x4
unitaries (TwoQubitGate) or bound 2x2 unitaries (OneQubitGate).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .statevec import (
    StateVector,
    TwoQubitGate,
    apply_single_qubit,
    apply_two_qubit,
    zero_state,
)

CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)


@dataclass(frozen=True)
class OneQubitGate:
    wire: int
    matrix: np.ndarray = field(repr=False)


GateLike = OneQubitGate | TwoQubitGate


@dataclass
class Circuit:
    """Ordered gate list plus depth metadata, applied first-to-last."""

    n: int
    gates: list[GateLike]
    u_depth: int = 0
    scheme: str = ""
    layers: int = 1

    def two_qubit_count(self) -> int:
        return sum(1 for g in self.gates if isinstance(g, TwoQubitGate))

    def one_qubit_count(self) -> int:
        return sum(1 for g in self.gates if isinstance(g, OneQubitGate))

    def inverse(self) -> "Circuit":
        inv: list[GateLike] = []
        for g in reversed(self.gates):
            if isinstance(g, TwoQubitGate):
                inv.append(TwoQubitGate(g.a, g.b, g.matrix.conj().T))
            else:
                inv.append(OneQubitGate(g.wire, g.matrix.conj().T))
        return Circuit(self.n, inv, self.u_depth, self.scheme, self.layers)


def apply_gate(state: StateVector, gate: GateLike) -> StateVector:
    if isinstance(gate, TwoQubitGate):
        return apply_two_qubit(state, gate)
    return apply_single_qubit(state, gate.wire, gate.matrix)


def simulate(circuit: Circuit, initial: StateVector | None = None) -> StateVector:
    """Run the circuit on |0...0> (or ``initial``) with the exact simulator."""
    state = zero_state(circuit.n) if initial is None else initial
    if state.n != circuit.n:
        raise ValueError(f"initial state has {state.n} qubits, circuit needs {circuit.n}")
    for gate in circuit.gates:
        state = apply_gate(state, gate)
    return state
