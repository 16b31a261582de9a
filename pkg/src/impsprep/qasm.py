"""Minimal OpenQASM-2 dialect: ``u3`` and ``cx`` statements only.

Emission is byte-deterministic for a fixed circuit; per-gate global phases
are dropped (u3 has no phase slot), so a parsed circuit reproduces the
original state up to global phase. Header metadata travels in ``// key: value``
comment lines.
"""
from __future__ import annotations

import cmath
import math
import re

import numpy as np

from .circuits import CNOT, Circuit, OneQubitGate
from .statevec import TwoQubitGate

_U3_RE = re.compile(
    r"u3\s*\(\s*([^,]+)\s*,\s*([^,]+)\s*,\s*([^)]+)\s*\)\s*q\[(\d+)\]\s*;"
)
_CX_RE = re.compile(r"cx\s*q\[(\d+)\]\s*,\s*q\[(\d+)\]\s*;")
_QREG_RE = re.compile(r"qreg\s+q\[(\d+)\]\s*;")
_HEADER_RE = re.compile(r"//\s*([\w.-]+)\s*:\s*(.*)")


def u3_matrix(theta: float, phi: float, lam: float) -> np.ndarray:
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    return np.array(
        [
            [c, -cmath.exp(1j * lam) * s],
            [cmath.exp(1j * phi) * s, cmath.exp(1j * (phi + lam)) * c],
        ]
    )


def u3_angles(m: np.ndarray) -> tuple[float, float, float]:
    """Angles with u3(theta, phi, lam) = m up to global phase."""
    a00, a01, a10 = m[0, 0], m[0, 1], m[1, 0]
    theta = 2.0 * math.atan2(abs(a10), abs(a00))
    if abs(a00) < 1e-12:  # theta = pi column
        phi = cmath.phase(a10)
        lam = cmath.phase(-a01)
    elif abs(a10) < 1e-12:  # theta = 0
        phi = 0.0
        lam = cmath.phase(m[1, 1]) - cmath.phase(a00)
    else:
        ref = cmath.phase(a00)
        phi = cmath.phase(a10) - ref
        lam = cmath.phase(-a01) - ref
    return theta, phi, lam


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def emit(circuit: Circuit, header: dict | None = None) -> str:
    """Serialize a primitive circuit (single-qubit gates and CNOTs only)."""
    lines = []
    for key, value in (header or {}).items():
        lines.append(f"// {key}: {value}")
    lines.append("OPENQASM 2.0;")
    lines.append('include "qelib1.inc";')
    lines.append(f"qreg q[{circuit.n}];")
    for g in circuit.gates:
        if isinstance(g, OneQubitGate):
            th, ph, lm = u3_angles(g.matrix)
            lines.append(f"u3({_fmt(th)},{_fmt(ph)},{_fmt(lm)}) q[{g.wire}];")
        else:
            if np.abs(g.matrix - CNOT).max() > 1e-9:
                raise ValueError(
                    "circuit contains a non-CNOT two-qubit gate; synthesize before emitting"
                )
            lines.append(f"cx q[{g.a}],q[{g.b}];")
    return "\n".join(lines) + "\n"


def parse(text: str) -> tuple[Circuit, dict]:
    """Parse the dialect back into a primitive circuit and its header dict."""
    header: dict[str, str] = {}
    gates: list = []
    n = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("//"):
            m = _HEADER_RE.match(line)
            if m:
                header[m.group(1)] = m.group(2).strip()
            continue
        if line.startswith("OPENQASM") or line.startswith("include"):
            continue
        m = _QREG_RE.match(line)
        if m:
            n = int(m.group(1))
            continue
        m = _U3_RE.match(line)
        if m:
            th, ph, lm = (float(m.group(i)) for i in (1, 2, 3))
            gates.append(OneQubitGate(int(m.group(4)), u3_matrix(th, ph, lm)))
            continue
        m = _CX_RE.match(line)
        if m:
            gates.append(TwoQubitGate(int(m.group(1)), int(m.group(2)), CNOT))
            continue
        raise ValueError(f"line {lineno}: cannot parse {line!r}")
    if n is None:
        raise ValueError("missing qreg declaration")
    return Circuit(n=n, gates=gates), header
