"""Dispatch circuit gates onto the active kernel backend.

States are 1D complex128 arrays of length 2**width; qubit q owns bit
width-1-q of the flat index (qubit 0 is the most significant). All
operations mutate the state in place.
"""

from __future__ import annotations

import numpy as np

from . import backends
from .circuits import S_PHASE_VALUE

_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0)
_PAULI_1Q = {
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def ry_matrix(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    return np.array([[c, -s], [s, c]], dtype=complex)


def apply_gate(state: np.ndarray, width: int, gate, conj: bool = False):
    """Apply one gate in place; `conj` applies the complex conjugate gate
    (used for the column side of density-matrix evolution)."""
    kind, q = gate.kind, gate.qubits
    if kind == "H":
        backends.apply_1q(state, width, q[0], _H)
    elif kind == "RY":
        backends.apply_1q(state, width, q[0], ry_matrix(gate.param))
    elif kind == "S_PHASE":
        phase = np.conj(S_PHASE_VALUE) if conj else S_PHASE_VALUE
        backends.apply_phase(state, width, q[0], phase)
    elif kind == "CNOT":
        backends.apply_cnot(state, width, q[0], q[1])
    elif kind == "CSWAP":
        backends.apply_cswap(state, width, q[0], q[1], q[2])
    elif kind == "CPAULI":
        if gate.letter == "X":
            backends.apply_cnot(state, width, q[0], q[1])
        else:
            u = _PAULI_1Q[gate.letter]
            backends.apply_c1q(state, width, q[0], q[1], u.conj() if conj else u)
    else:
        raise ValueError(f"unknown gate kind {kind!r}")


def apply_layers(state: np.ndarray, width: int, layers, conj: bool = False):
    for layer in layers:
        for gate in layer:
            apply_gate(state, width, gate, conj=conj)


OP_1Q, OP_PHASE, OP_CNOT, OP_CSWAP, OP_C1Q = range(5)


def encode_program(gates):
    """Flatten gates into the (ops, params) tables `run_program` executes.

    One row per gate: ops holds [opcode, q0, q1, q2] (unused slots -1),
    params holds the 2x2 matrix entries or the phase factor.
    """
    ops = np.full((len(gates), 4), -1, dtype=np.int64)
    params = np.zeros((len(gates), 4), dtype=complex)
    for k, gate in enumerate(gates):
        q = gate.qubits
        if gate.kind in ("H", "RY"):
            ops[k, :2] = OP_1Q, q[0]
            u = _H if gate.kind == "H" else ry_matrix(gate.param)
            params[k] = u.reshape(-1)
        elif gate.kind == "S_PHASE":
            ops[k, :2] = OP_PHASE, q[0]
            params[k, 0] = S_PHASE_VALUE
        elif gate.kind == "CNOT":
            ops[k, :3] = OP_CNOT, q[0], q[1]
        elif gate.kind == "CSWAP":
            ops[k] = OP_CSWAP, q[0], q[1], q[2]
        elif gate.kind == "CPAULI":
            if gate.letter == "X":
                ops[k, :3] = OP_CNOT, q[0], q[1]
            else:
                ops[k, :3] = OP_C1Q, q[0], q[1]
                params[k] = _PAULI_1Q[gate.letter].reshape(-1)
        else:
            raise ValueError(f"unknown gate kind {gate.kind!r}")
    return ops, params


def run_program(state: np.ndarray, width: int, program):
    ops, params = program
    return backends.run_program(state, width, ops, params)


def parity_signs(n_bits: int) -> np.ndarray:
    """(-1)**popcount(k) for k = 0..2^n_bits - 1."""
    k = np.arange(1 << n_bits)
    parity = np.zeros_like(k)
    for b in range(n_bits):
        parity ^= (k >> b) & 1
    return 1.0 - 2.0 * parity


def leading_qubit_probs(probs_flat: np.ndarray, n_lead: int) -> np.ndarray:
    """Marginal distribution of the n_lead most-significant qubits."""
    return probs_flat.reshape(1 << n_lead, -1).sum(axis=1)


def parity_expectation(probs_flat: np.ndarray, n_lead: int) -> float:
    """E[(-1)^(sum of the n_lead leading bits)] under the given probabilities."""
    marginal = leading_qubit_probs(probs_flat, n_lead)
    return float(parity_signs(n_lead) @ marginal)
