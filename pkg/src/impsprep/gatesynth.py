"""Two-qubit gate synthesis.

The disentangling unitaries produced by the block SVD are only determined up
to a block-diagonal factor diag(U1, U2): any member of that equivalence class
keeps the same weight in the top two amplitude rows. ``build_u2cx`` picks the
representative obtained by cancelling the outer factors of a (modified)
cosine-sine decomposition; that representative is a Hermitian involution with
eigenvalues (1, 1, -1, -1) and can always be realized with two CNOTs.

The realization goes through a real-orthogonal KAK factorization in the magic
basis: M^dag k M = P exp(i Theta) Q^T with P, Q in SO(4). The diagonal angles
map linearly (via the fixed sign matrix GAMMA) onto coefficients of
XX / YY / ZZ, of which at least one vanishes for this class, leaving a
two-CNOT core. A generic three-CNOT synthesizer is included as the baseline.

Wire convention inside a 4x4 gate: wire 0 is the more significant bit (the
``a`` qubit of the pair), CNOTs are written (control, target).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import cossin, schur

from .circuits import CNOT, Circuit, OneQubitGate
from .statevec import TwoQubitGate, require_unitary

RECON_TOL = 1e-9
CLASS_TOL = 1e-8
DEG_TOL = 1e-9

I2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
S_GATE = np.diag([1.0, 1j])

# Magic basis: conjugates SO(4) to SU(2) x SU(2); diagonal matrices in this
# basis are exponentials of XX/YY/ZZ.
MAGIC = np.array(
    [
        [1, 0, 0, 1j],
        [0, 1j, 1, 0],
        [0, 1j, -1, 0],
        [1, 0, 0, -1j],
    ]
) / math.sqrt(2)

# Fixed sign matrix linking diagonal phase angles Theta to Pauli-string
# coefficients Omega: Theta = GAMMA @ Omega, GAMMA^-1 = GAMMA^T / 4.
GAMMA = np.array(
    [
        [1, 1, -1, 1],
        [1, 1, 1, -1],
        [1, -1, -1, -1],
        [1, -1, 1, 1],
    ],
    dtype=float,
)

CNOT_10 = np.array(
    [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]], dtype=complex
)


@dataclass(frozen=True)
class CSDecomposition:
    """u = blockdiag(left_top, left_bottom) @ [[C, S], [S, -C]] @ blockdiag(right_top, right_bottom)."""

    left_top: np.ndarray = field(repr=False)
    left_bottom: np.ndarray = field(repr=False)
    right_top: np.ndarray = field(repr=False)
    right_bottom: np.ndarray = field(repr=False)
    cosines: np.ndarray  # descending, in [0, 1]
    sines: np.ndarray

    def middle(self) -> np.ndarray:
        c, s = np.diag(self.cosines), np.diag(self.sines)
        return np.block([[c, s], [s, -c]])

    def reassemble(self) -> np.ndarray:
        z = np.zeros((2, 2))
        left = np.block([[self.left_top, z], [z, self.left_bottom]])
        right = np.block([[self.right_top, z], [z, self.right_bottom]])
        return left @ self.middle() @ right


def cosine_sine_decompose(u: np.ndarray) -> CSDecomposition:
    """Modified cosine-sine decomposition of a 4x4 unitary.

    LAPACK's simultaneous CS decomposition is used underneath (a naive
    SVD-of-one-block construction loses the coupling between blocks when a
    cosine approaches 1); its standard middle factor [[C, -S], [S, C]] is
    converted by negating the lower-right factor.
    """
    u = require_unitary(u, what="CSD input")
    if u.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got {u.shape}")
    (q1, q2), theta, (v1h, v2h) = cossin(u, p=2, q=2, separate=True)
    c = np.cos(theta)
    s = np.sin(theta)
    dec = CSDecomposition(
        left_top=q1,
        left_bottom=q2,
        right_top=v1h,
        right_bottom=-v2h,
        cosines=np.clip(c, 0.0, 1.0),
        sines=np.clip(s, 0.0, 1.0),
    )
    err = np.abs(dec.reassemble() - u).max()
    if err > RECON_TOL:
        raise ValueError(f"CSD reassembly failed: deviation {err:.3e}")
    if dec.cosines[0] < dec.cosines[1] - 1e-12:
        raise ValueError("CSD cosines not sorted descending")
    return dec


def build_u2cx(u_inv: np.ndarray) -> np.ndarray:
    """Replace the outer CSD factors of ``u_inv`` by the inverses of the inner
    ones, yielding the two-CNOT representative of its equivalence class.

    The result equals D @ u_inv for a block-diagonal unitary D, so applying it
    in a disentangling step preserves the retained weight; it is Hermitian
    with eigenvalues (1, 1, -1, -1).
    """
    dec = cosine_sine_decompose(u_inv)
    z = np.zeros((2, 2))
    left = np.block(
        [[dec.right_top.conj().T, z], [z, dec.right_bottom.conj().T]]
    )
    right = np.block([[dec.right_top, z], [z, dec.right_bottom]])
    return left @ dec.middle() @ right


@dataclass(frozen=True)
class KakAngles:
    """Real-orthogonal KAK data: M P exp(i diag(theta)) Q^T M^dag = k."""

    theta: np.ndarray
    omega: np.ndarray
    p: np.ndarray = field(repr=False)
    q: np.ndarray = field(repr=False)

    def reconstruct(self) -> np.ndarray:
        core = self.p @ np.diag(np.exp(1j * self.theta)) @ self.q.T
        return MAGIC @ core @ MAGIC.conj().T


def _check_class_member(k: np.ndarray) -> np.ndarray:
    k = require_unitary(k, what="KAK input")
    if k.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got {k.shape}")
    eig = np.sort(np.linalg.eigvals(k).real)
    if np.abs(np.sort(np.linalg.eigvals(k)).imag).max() > CLASS_TOL or np.abs(
        eig - np.array([-1.0, -1.0, 1.0, 1.0])
    ).max() > CLASS_TOL:
        raise ValueError(
            "matrix is not in the U (Z x I) U^dag class (eigenvalues not {1, 1, -1, -1})"
        )
    return k


def magic_kak_decompose(k: np.ndarray) -> KakAngles:
    """Factor a Hermitian involution k as M P exp(i Theta) Q^T M^dag.

    Works on K = M^dag k M: the real part of K is symmetric and the imaginary
    part anticommutes with it, so an eigenbasis of Re(K) splits K into
    opposite-eigenvalue planes on which a secondary symmetric eigensolve (or,
    on the kernel of Re(K), a real Schur form of the antisymmetric remainder)
    finishes the simultaneous diagonalization. Determinant and sign fixes make
    P, Q special orthogonal with theta sorted ascending in (-pi, pi].
    """
    k = _check_class_member(k)
    kk = MAGIC.conj().T @ k @ MAGIC
    kr = (kk + kk.conj()).real / 2.0
    ki = ((kk - kk.conj()) / 2j).real
    kr = (kr + kr.T) / 2.0
    d, p1 = np.linalg.eigh(kr)
    g_raw = p1.T @ ki @ p1

    p2 = np.zeros((4, 4))
    sq = np.zeros((4, 4))  # factor with Q = P1 @ sq
    theta = np.zeros(4)
    used = [False] * 4
    for i in range(4):
        if used[i]:
            continue
        grp = [j for j in range(4) if not used[j] and abs(abs(d[j]) - abs(d[i])) < DEG_TOL]
        for j in grp:
            used[j] = True
        idx = np.array(grp)
        absd = abs(d[idx[0]])
        sub = np.ix_(idx, idx)
        if absd > DEG_TOL:
            sgn = np.sign(d[idx])
            g_blk = g_raw[sub] @ np.diag(sgn)
            g_blk = (g_blk + g_blk.T) / 2.0
            lam, w = np.linalg.eigh(g_blk)
            p2[sub] = w
            sq[sub] = np.diag(sgn) @ w
            theta[idx] = np.arctan2(lam, absd)
        else:
            # kernel of Re(K): K acts as i * (real antisymmetric square root
            # of -I); its Schur planes carry angles +-pi/2
            if len(idx) % 2:
                raise ValueError("odd-dimensional kernel of Re(K); input not in class")
            a_blk = g_raw[sub]
            a_blk = (a_blk - a_blk.T) / 2.0
            jj, zrot = schur(a_blk, output="real")
            flip = np.zeros((len(idx), len(idx)))
            for t in range(0, len(idx), 2):
                if jj[t + 1, t] < 0:
                    zrot[:, [t, t + 1]] = zrot[:, [t + 1, t]]
                theta[idx[t]] = math.pi / 2
                theta[idx[t + 1]] = -math.pi / 2
                flip[t, t + 1] = -1.0
                flip[t + 1, t] = -1.0
            p2[sub] = zrot
            sq[sub] = zrot @ flip
    p = p1 @ p2
    q = p1 @ sq

    det_p, det_q = np.linalg.det(p), np.linalg.det(q)
    if det_p < 0 and det_q < 0:
        p[:, 3] *= -1.0
        q[:, 3] *= -1.0
    elif det_p < 0:
        p[:, 3] *= -1.0
        theta[3] += math.pi
    elif det_q < 0:
        q[:, 3] *= -1.0
        theta[3] += math.pi
    theta = np.angle(np.exp(1j * theta))

    order = np.argsort(theta, kind="stable")
    p, q, theta = p[:, order], q[:, order], theta[order]
    if np.linalg.det(np.eye(4)[:, order]) < 0:
        p[:, 0] *= -1.0
        q[:, 0] *= -1.0
    for j in range(3):
        lead = np.flatnonzero(np.abs(p[:, j]) > DEG_TOL)
        if lead.size and p[lead[0], j] < 0:
            p[:, j] *= -1.0
            q[:, j] *= -1.0
    if np.linalg.det(p) < 0:
        p[:, 3] *= -1.0
        q[:, 3] *= -1.0

    omega = GAMMA.T @ theta / 4.0
    angles = KakAngles(theta=theta, omega=omega, p=p, q=q)
    err = np.abs(angles.reconstruct() - k).max()
    if err > RECON_TOL:
        raise ValueError(f"KAK reconstruction failed: deviation {err:.3e}")
    return angles


# --- primitive gate sequences ------------------------------------------------


@dataclass(frozen=True)
class Primitive:
    """Either a bound single-qubit unitary ('u', wire, matrix) or a CNOT
    ('cx', control, target) on the gate's two abstract wires {0, 1}."""

    kind: str
    wires: tuple[int, ...]
    matrix: np.ndarray | None = field(default=None, repr=False)


def _u(wire: int, matrix: np.ndarray) -> Primitive:
    return Primitive("u", (wire,), np.asarray(matrix, dtype=complex))


def _cx(control: int, target: int) -> Primitive:
    return Primitive("cx", (control, target))


@dataclass(frozen=True)
class GateSequence:
    """Primitive realization of a 4x4 unitary, exact up to global phase."""

    gates: tuple[Primitive, ...]
    cnot_count: int
    source: np.ndarray = field(repr=False)

    def matrix(self) -> np.ndarray:
        out = np.eye(4, dtype=complex)
        for g in self.gates:
            if g.kind == "cx":
                out = (CNOT if g.wires == (0, 1) else CNOT_10) @ out
            else:
                m = g.matrix
                full = np.kron(m, I2) if g.wires[0] == 0 else np.kron(I2, m)
                out = full @ out
        return out

    def single_qubit_count(self) -> int:
        return sum(1 for g in self.gates if g.kind == "u")


def _merge_singles(gates: list[Primitive]) -> list[Primitive]:
    """Fuse runs of single-qubit gates per wire; drop any that are the
    identity up to a phase (the phase only moves the global one)."""
    merged: list[Primitive] = []
    pending: dict[int, np.ndarray] = {}

    def flush(wires=(0, 1)):
        for w in wires:
            m = pending.pop(w, None)
            if m is not None and np.abs(m - m[0, 0] * I2).max() > 1e-12:
                merged.append(_u(w, m))

    for g in gates:
        if g.kind == "cx":
            flush()
            merged.append(g)
        else:
            w = g.wires[0]
            pending[w] = g.matrix @ pending.get(w, I2)
    flush()
    return merged


def _exp_ix(a: float) -> np.ndarray:
    return math.cos(a) * I2 + 1j * math.sin(a) * PAULI_X


def _exp_iz(a: float) -> np.ndarray:
    return np.diag([cmath.exp(1j * a), cmath.exp(-1j * a)])


_RX_CONJ = _exp_ix(math.pi / 4)  # maps Z -> Y under conjugation, fixes X


def _middle_sequence(omega: np.ndarray) -> tuple[list[Primitive], complex]:
    """<= 2 CNOT realization of exp(i (w1 XX + w2 YY + w3 ZZ)) requiring at
    least one coefficient to vanish mod pi/2.

    Uses CX (e^{iaX} x e^{icZ}) CX = exp(i (a XX + c ZZ)) plus single-qubit
    conjugations rotating the missing axis onto Y.
    """
    phase = 1.0 + 0j
    red = np.empty(3)
    for i, w in enumerate(omega):
        k = round(w / math.pi)
        red[i] = w - k * math.pi
        if k % 2:
            phase = -phase
    gates: list[Primitive] = []
    tail = [I2.copy(), I2.copy()]
    paulis = (PAULI_X, PAULI_Y, PAULI_Z)
    for i in range(3):
        if abs(abs(red[i]) - math.pi / 2) < 1e-10:
            phase *= 1j if red[i] > 0 else -1j
            tail[0] = paulis[i] @ tail[0]
            tail[1] = paulis[i] @ tail[1]
            red[i] = 0.0
    live = [i for i in range(3) if abs(red[i]) > 1e-10]
    if len(live) > 2:
        raise ValueError(f"no vanishing coefficient in {omega}; not two-CNOT realizable")
    if live:
        if 1 not in live:  # XX and ZZ: direct sandwich
            conj = None
            inner = (red[0], red[2])
        elif 2 not in live:  # XX and YY: rotate Z -> Y
            conj = _RX_CONJ
            inner = (red[0], red[1])
        else:  # YY and ZZ: rotate X -> Y
            conj = S_GATE
            inner = (red[1], red[2])
        if conj is not None:
            gates += [_u(0, conj.conj().T), _u(1, conj.conj().T)]
        gates += [
            _cx(0, 1),
            _u(0, _exp_ix(inner[0])),
            _u(1, _exp_iz(inner[1])),
            _cx(0, 1),
        ]
        if conj is not None:
            gates += [_u(0, conj), _u(1, conj)]
    if np.abs(tail[0] - I2).max() > 1e-12:
        gates += [_u(0, tail[0]), _u(1, tail[1])]
    return gates, phase


def _general_magic_kak(u: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """KAK of an arbitrary 4x4 unitary in the magic basis: returns (p, theta, q)
    with M p exp(i theta) q^T M^dag = u up to global phase. Unlike
    ``magic_kak_decompose`` this makes no class guarantees about theta."""
    u_su = u / np.linalg.det(u) ** 0.25
    w = MAGIC.conj().T @ u_su @ MAGIC
    o1, d, o2 = _ai_kak(w)
    theta = np.angle(np.diag(d))
    return o1, theta, o2.T


def split_tensor_product(u4: np.ndarray) -> tuple[np.ndarray, np.ndarray, complex]:
    """Split u4 = phase * (A x B) with A, B special unitary."""
    r = u4[:2, :2].copy()
    det_r = r[0, 0] * r[1, 1] - r[0, 1] * r[1, 0]
    if abs(det_r) < 0.1:
        r = u4[2:, :2].copy()
        det_r = r[0, 0] * r[1, 1] - r[0, 1] * r[1, 0]
    if abs(det_r) < 0.1:
        raise ValueError("matrix is not a tensor product of single-qubit gates")
    r /= np.sqrt(det_r)
    tmp = u4 @ np.kron(I2, r.conj().T)
    le = tmp[::2, ::2]
    det_l = le[0, 0] * le[1, 1] - le[0, 1] * le[1, 0]
    le /= np.sqrt(det_l)
    phase = np.trace(np.kron(le, r).conj().T @ u4) / 4.0
    if abs(abs(phase) - 1.0) > 1e-9:
        raise ValueError("tensor-product split failed")
    return le, r, phase


def _is_class_member(k: np.ndarray) -> bool:
    try:
        _check_class_member(k)
    except ValueError:
        return False
    return True


def synthesize_two_cnot(u2cx: np.ndarray) -> GateSequence:
    """Realize a two-CNOT-implementable 4x4 unitary with at most two CNOTs
    and at most eight single-qubit gates.

    Accepts members of the U (Z x I) U^dag class (``build_u2cx`` outputs; via
    the Hermitian-class KAK) and, through a general-KAK fallback, any unitary
    whose Pauli-string coefficients already include a vanishing one mod pi/2;
    that covers real special-orthogonal matrices (the SVDs of real
    amplitudes) and single Pauli-string exponentials. Raises ValueError for
    gates that genuinely need a third CNOT.
    """
    u2cx = np.asarray(u2cx, dtype=complex)
    if _is_class_member(u2cx):
        angles = magic_kak_decompose(u2cx)
        p, theta, q = angles.p, angles.theta, angles.q
    else:
        require_unitary(u2cx, what="synthesis input")
        p, theta, q = _general_magic_kak(u2cx)
    omega = GAMMA.T @ theta / 4.0
    left = MAGIC @ p @ MAGIC.conj().T
    right = MAGIC @ q.T @ MAGIC.conj().T
    la, lb, _ = split_tensor_product(left)
    ra, rb, _ = split_tensor_product(right)
    try:
        mid, _ = _middle_sequence(omega[1:])
    except ValueError as exc:
        raise ValueError(
            "input is not two-CNOT realizable (no vanishing Pauli-string "
            "coefficient); rewrite with build_u2cx or use synthesize_generic"
        ) from exc
    gates = [_u(0, ra), _u(1, rb)] + mid + [_u(0, la), _u(1, lb)]
    return _finish_sequence(gates, u2cx, max_cnots=2)


def _finish_sequence(gates: list[Primitive], source: np.ndarray, max_cnots: int) -> GateSequence:
    merged = _merge_singles(gates)
    ncx = sum(1 for g in merged if g.kind == "cx")
    if ncx > max_cnots:
        raise ValueError(f"synthesis produced {ncx} CNOTs, budget {max_cnots}")
    nsingle = len(merged) - ncx
    if nsingle > 8:
        raise ValueError(f"synthesis produced {nsingle} single-qubit gates, budget 8")
    seq = GateSequence(gates=tuple(merged), cnot_count=ncx, source=np.asarray(source, dtype=complex))
    rebuilt = seq.matrix()
    tr = np.trace(rebuilt.conj().T @ seq.source) / 4.0
    if abs(tr) < 1e-12:
        raise ValueError("synthesis reconstruction failed (orthogonal result)")
    err = np.abs(rebuilt * (tr / abs(tr)) - seq.source).max()
    if err > RECON_TOL:
        raise ValueError(f"synthesis reconstruction failed: deviation {err:.3e}")
    return seq


# --- generic three-CNOT baseline ---------------------------------------------

# Standard AI-type KAK in the alternative magic basis; the bookkeeping gates
# below convert its diagonal core into the central three-CNOT circuit
# CX(1,0) RZ RY CX(0,1) RY CX(1,0).
_E = np.array(
    [[1, 1j, 0, 0], [0, 0, 1j, 1], [0, 0, 1j, -1], [1, -1j, 0, 0]]
) / math.sqrt(2)
_SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)
_S0 = np.kron(np.diag([1j, 1.0]), np.eye(2))


def _rz(t: float) -> np.ndarray:
    return np.diag([cmath.exp(-1j * t / 2), cmath.exp(1j * t / 2)])


def _ry(t: float) -> np.ndarray:
    c, s = math.cos(t / 2), math.sin(t / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _real_imag_split_eigh(a: np.ndarray, factor: float):
    _, basis = np.linalg.eigh(a.real / factor + factor * a.imag)
    return basis.T @ a @ basis, basis


def _ai_kak(u: np.ndarray):
    """u = o1 @ d @ o2 with o1, o2 in SO(4) and d diagonal unitary.

    o1 is a real eigenbasis of the symmetric unitary u u^T. Each row of
    o1^T u is then a unit phase times a real unit row; the phase is read off
    the row itself (row . row = phase^2), which stays stable under degenerate
    eigenvalues of u u^T, where taking square roots of the eigenvalues would
    pick inconsistent branches near the negative real axis.
    """
    delta = u @ u.T
    d2, o1 = _real_imag_split_eigh(delta, math.pi)
    if not np.allclose(np.diag(np.diag(d2)), d2, atol=1e-7):
        _, o1 = _real_imag_split_eigh(delta, 10.0)
    o1[:, 0] = np.linalg.det(o1) * o1[:, 0]
    rows = o1.T @ u
    phases = np.sqrt(np.sum(rows * rows, axis=1))  # unit modulus, any branch
    o2 = (rows.T / phases).T
    if np.abs(o2.imag).max() > 1e-8:
        raise ValueError("orthogonal factor is not real; eigenbasis split failed")
    o2 = o2.real.copy()
    d = np.diag(phases)
    det_o2 = np.linalg.det(o2)
    o2[0] = det_o2 * o2[0]
    d[0, 0] = det_o2 * d[0, 0]
    return o1, d, o2


def _extract_central_angles(a_m: np.ndarray):
    if np.allclose(a_m[::3, 0].real, 0.0):
        apb = math.atan2(a_m[3, 0].imag, a_m[0, 0].imag)
    else:
        apb = math.atan2(a_m[3, 0].real, a_m[0, 0].real)
    if np.allclose(a_m[1:3, 1].real, 0.0):
        amb = math.atan2(a_m[1, 1].imag, a_m[2, 1].imag)
    else:
        amb = math.atan2(a_m[1, 1].real, a_m[2, 1].real)
    a = apb + amb
    b = apb - amb
    if abs(a_m[0, 0]) < 1e-12:
        apb_frac = a_m[3, 0] / math.sin(apb)
    else:
        apb_frac = a_m[0, 0] / math.cos(apb)
    if abs(a_m[2, 1]) < 1e-12:
        amb_frac = a_m[1, 1] / math.sin(amb)
    else:
        amb_frac = a_m[2, 1] / math.cos(amb)
    d = cmath.phase(amb_frac * apb_frac.conjugate())
    return a, b, d


def _is_tensor_product(u: np.ndarray) -> bool:
    u_su = u / np.linalg.det(u) ** 0.25
    g = _E.conj().T @ u_su @ _E
    tr = np.trace(g @ g.T)
    return bool(abs(tr - 4.0) < 1e-9 or abs(tr + 4.0) < 1e-9)


def synthesize_generic(u: np.ndarray) -> GateSequence:
    """Baseline synthesis of an arbitrary 4x4 unitary with at most 3 CNOTs."""
    u = require_unitary(u, what="synthesis input")
    if u.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got {u.shape}")
    if _is_tensor_product(u):
        la, lb, _ = split_tensor_product(u)
        return _finish_sequence([_u(0, la), _u(1, lb)], u, max_cnots=0)
    u_su = u / np.linalg.det(u) ** 0.25
    w = _E.conj().T @ _S0.conj().T @ _SWAP @ u_su @ _S0 @ _E
    k1, ak, k2 = _ai_kak(w)
    l1 = _E @ k1 @ _E.conj().T
    al = _E @ ak @ _E.conj().T
    l2 = _E @ k2 @ _E.conj().T
    m1 = _SWAP @ _S0 @ l1 @ _S0.conj().T @ _SWAP
    m2 = _S0 @ l2 @ _S0.conj().T
    a_m = _SWAP @ _S0 @ al @ _S0.conj().T
    a, b, d = _extract_central_angles(a_m)
    m2a, m2b, _ = split_tensor_product(m2)
    m1a, m1b, _ = split_tensor_product(m1)
    gates = [
        _u(0, m2a),
        _u(1, m2b),
        _cx(1, 0),
        _u(0, _rz(d)),
        _u(1, _ry(b)),
        _cx(0, 1),
        _u(1, _ry(a)),
        _cx(1, 0),
        _u(0, m1a),
        _u(1, m1b),
    ]
    return _finish_sequence(gates, u, max_cnots=3)


class SynthMode:
    GENERIC3 = "3cx"
    OPTIMIZED2 = "2cx"
    NONE = "none"


def synthesize_gate(gate_matrix: np.ndarray, mode: str) -> GateSequence:
    """Synthesize one preparation gate.

    In OPTIMIZED2 mode the matrix must already be an equivalence-class
    representative (a circuit compiled with ``rewrite_2cx=True``).
    """
    if mode == SynthMode.OPTIMIZED2:
        return synthesize_two_cnot(gate_matrix)
    return synthesize_generic(gate_matrix)


def synthesize_circuit(circuit: Circuit, mode: str) -> Circuit:
    """Expand every two-qubit gate of ``circuit`` into primitives.

    Returns a circuit of OneQubitGate and CNOT-valued TwoQubitGate entries
    that reproduces the input up to global phase.
    """
    out: list = []
    for g in circuit.gates:
        if isinstance(g, OneQubitGate):
            out.append(g)
            continue
        seq = synthesize_gate(g.matrix, mode)
        wires = (g.a, g.b)
        for prim in seq.gates:
            if prim.kind == "cx":
                out.append(TwoQubitGate(wires[prim.wires[0]], wires[prim.wires[1]], CNOT))
            else:
                out.append(OneQubitGate(wires[prim.wires[0]], prim.matrix))
    return Circuit(
        n=circuit.n,
        gates=out,
        u_depth=circuit.u_depth,
        scheme=circuit.scheme,
        layers=circuit.layers,
    )


def count_gates(circuit: Circuit, mode: str) -> tuple[int, int, int]:
    """(cnot_total, single_qubit_total, u_depth) after synthesis of every
    two-qubit gate in the given mode."""
    cnots = 0
    singles = 0
    for g in circuit.gates:
        if isinstance(g, OneQubitGate):
            singles += 1
            continue
        seq = synthesize_gate(g.matrix, mode)
        cnots += seq.cnot_count
        singles += seq.single_qubit_count()
    return cnots, singles, circuit.u_depth
