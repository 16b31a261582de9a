"""Dense statevector representation, amplitude block extraction and fidelity metrics.

Index convention: qubit 0 is the most significant bit of the basis index,
so qubit ``i`` sits at bit position ``n - 1 - i`` of the integer index.
States are value-semantic; every operation returns a fresh object and the
underlying buffer is marked read-only.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

NORM_TOL = 1e-12
UNITARY_TOL = 1e-10

_DEFAULT_MAX_QUBITS = 24


def max_qubits() -> int:
    """Qubit cap for dense vectors; override with IMPS_MAX_QUBITS."""
    return int(os.environ.get("IMPS_MAX_QUBITS", _DEFAULT_MAX_QUBITS))


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class StateVector:
    """Unit-norm complex amplitude vector over ``n`` qubits."""

    n: int
    amps: np.ndarray = field(repr=False)

    def copy_amps(self) -> np.ndarray:
        """Writable copy of the amplitude buffer."""
        return np.array(self.amps, dtype=complex)

    @property
    def dim(self) -> int:
        return 1 << self.n

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))


@dataclass(frozen=True)
class TwoQubitGate:
    """A 4x4 unitary bound to the ordered pair (a, b); ``a`` is the more
    significant wire in the gate's own 4x4 basis."""

    a: int
    b: int
    matrix: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class BlockMatrix:
    """The four amplitude rows C(x, y) of a state on the qubit pair (a, b).

    Row order is (0,0), (0,1), (1,0), (1,1); within a row the remaining
    qubits' bits run in ascending order, so flattening + inverse permuting
    is an exact bijection with the source amplitudes.
    """

    n: int
    a: int
    b: int
    rows: np.ndarray = field(repr=False)  # shape (4, 2**(n-2))

    def frobenius_norm(self) -> float:
        return float(np.linalg.norm(self.rows))


def from_amplitudes(raw) -> StateVector:
    """Build a normalized StateVector from any complex sequence.

    Raises ValueError for non-power-of-two length, an all-zero vector,
    non-finite entries, or a qubit count above the configured cap.
    """
    amps = np.asarray(raw, dtype=complex).reshape(-1)
    length = amps.size
    if length < 2 or (length & (length - 1)) != 0:
        raise ValueError(f"amplitude length {length} is not a power of two >= 2")
    if not np.all(np.isfinite(amps)):
        raise ValueError("amplitudes contain non-finite values")
    n = length.bit_length() - 1
    cap = max_qubits()
    if n > cap:
        raise ValueError(f"{n} qubits exceeds cap of {cap} (set IMPS_MAX_QUBITS to raise)")
    norm = np.linalg.norm(amps)
    if norm <= 0.0:
        raise ValueError("cannot normalize an all-zero amplitude vector")
    return StateVector(n=n, amps=_freeze(amps / norm))


def zero_state(n: int) -> StateVector:
    if n < 1:
        raise ValueError("need at least one qubit")
    amps = np.zeros(1 << n, dtype=complex)
    amps[0] = 1.0
    return StateVector(n=n, amps=_freeze(amps))


def basis_state(n: int, k: int) -> StateVector:
    amps = np.zeros(1 << n, dtype=complex)
    amps[k] = 1.0
    return StateVector(n=n, amps=_freeze(amps))


def _check_pair(n: int, a: int, b: int) -> None:
    if a == b:
        raise ValueError(f"qubit indices must differ, got a = b = {a}")
    for q in (a, b):
        if not 0 <= q < n:
            raise ValueError(f"qubit index {q} out of range for n = {n}")


def extract_block(state: StateVector, a: int, b: int) -> BlockMatrix:
    """Extract the 4 x 2^(n-2) block matrix of ``state`` on the pair (a, b)."""
    if state.n < 2:
        raise ValueError("block extraction needs n >= 2")
    _check_pair(state.n, a, b)
    t = state.amps.reshape([2] * state.n)
    t = np.moveaxis(t, (a, b), (0, 1))
    return BlockMatrix(n=state.n, a=a, b=b, rows=_freeze(t.reshape(4, -1).copy()))


def inverse_extract(block: BlockMatrix) -> StateVector:
    """Exact inverse of extract_block (bit-permutation bijection)."""
    t = block.rows.reshape([2, 2] + [2] * (block.n - 2))
    t = np.moveaxis(t, (0, 1), (block.a, block.b))
    return StateVector(n=block.n, amps=_freeze(t.reshape(-1).copy()))


def require_unitary(m: np.ndarray, tol: float = UNITARY_TOL, what: str = "matrix") -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    dim = m.shape[0]
    if m.shape != (dim, dim):
        raise ValueError(f"{what} is not square: {m.shape}")
    err = np.abs(m @ m.conj().T - np.eye(dim)).max()
    if err > tol:
        raise ValueError(f"{what} is not unitary (deviation {err:.3e} > {tol:.1e})")
    return m


def apply_two_qubit(state: StateVector, gate: TwoQubitGate) -> StateVector:
    """Apply a two-qubit gate: left-multiplies the (a, b) block matrix."""
    matrix = require_unitary(gate.matrix, what="two-qubit gate")
    block = extract_block(state, gate.a, gate.b)
    new = BlockMatrix(n=block.n, a=block.a, b=block.b, rows=matrix @ block.rows)
    return inverse_extract(new)


def apply_single_qubit(state: StateVector, wire: int, matrix: np.ndarray) -> StateVector:
    matrix = require_unitary(matrix, what="single-qubit gate")
    if not 0 <= wire < state.n:
        raise ValueError(f"qubit index {wire} out of range for n = {state.n}")
    t = state.amps.reshape([2] * state.n)
    t = np.moveaxis(t, wire, 0).reshape(2, -1)
    t = matrix @ t
    t = np.moveaxis(t.reshape([2] * state.n), 0, wire)
    return StateVector(n=state.n, amps=_freeze(t.reshape(-1).copy()))


def fidelity(phi: StateVector, psi: StateVector) -> float:
    if phi.n != psi.n:
        raise ValueError(f"dimension mismatch: {phi.n} vs {psi.n} qubits")
    return float(abs(np.vdot(phi.amps, psi.amps)) ** 2)


def infidelity(phi: StateVector, psi: StateVector) -> float:
    """1 - |<phi|psi>|^2, clipped into [0, 1] against fp round-off."""
    return float(min(1.0, max(0.0, 1.0 - fidelity(phi, psi))))


def save_amplitudes(state: StateVector, path) -> None:
    """Write one amplitude per line as ``re im`` (locale-independent)."""
    with open(path, "w", encoding="ascii") as fh:
        for z in state.amps:
            fh.write(f"{z.real:.17g} {z.imag:.17g}\n")


def load_amplitudes(path) -> StateVector:
    """Read the ``re im`` per-line format written by save_amplitudes."""
    values = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected 're im', got {line!r}")
            values.append(complex(float(parts[0]), float(parts[1])))
    return from_amplitudes(values)
