"""Shared test helpers: independent brute-force oracles kept deliberately
separate from the library's vectorized implementations."""
import numpy as np
import pytest

from impsprep import statevec


def haar_unitary(dim, rng):
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_state(n, rng):
    z = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return statevec.from_amplitudes(z)


def random_real_state(n, rng):
    return statevec.from_amplitudes(rng.normal(size=1 << n))


def qubit_bit(index, qubit, n):
    """Bit of `qubit` inside basis `index` (qubit 0 = most significant)."""
    return (index >> (n - 1 - qubit)) & 1


def extract_block_bitloop(amps, n, a, b):
    """Reference block extraction by explicit enumeration of basis states."""
    rows = np.zeros((4, 1 << (n - 2)), dtype=complex)
    for k in range(1 << n):
        xa = qubit_bit(k, a, n)
        xb = qubit_bit(k, b, n)
        rest = 0
        for q in range(n):
            if q in (a, b):
                continue
            rest = (rest << 1) | qubit_bit(k, q, n)
        rows[2 * xa + xb, rest] = amps[k]
    return rows


def dense_two_qubit_operator(u4, n, a, b):
    """Reference full 2^n x 2^n operator: embed u4 on (a, b) by enumeration."""
    dim = 1 << n
    full = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        xa, xb = qubit_bit(col, a, n), qubit_bit(col, b, n)
        for ya in (0, 1):
            for yb in (0, 1):
                row = col
                row = (row & ~(1 << (n - 1 - a))) | (ya << (n - 1 - a))
                row = (row & ~(1 << (n - 1 - b))) | (yb << (n - 1 - b))
                full[row, col] += u4[2 * ya + yb, 2 * xa + xb]
    return full


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
