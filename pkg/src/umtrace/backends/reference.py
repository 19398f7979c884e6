"""Pure-numpy gate kernels: the fallback when the compiled extension is
unavailable, and the correctness reference it is tested against.

Every function mutates `state` (1D complex128, length 2**w) in place and
returns it. Qubit q is bit w-1-q of the flat index.
"""

import numpy as np


def _axis_view(state, w, q):
    """Reshape so axis 1 is qubit q: (before, 2, after)."""
    return state.reshape(1 << q, 2, 1 << (w - 1 - q))


def apply_1q(state, w, q, u):
    v = _axis_view(state, w, q)
    a0 = v[:, 0, :].copy()
    a1 = v[:, 1, :]
    v[:, 0, :] = u[0, 0] * a0 + u[0, 1] * a1
    v[:, 1, :] = u[1, 0] * a0 + u[1, 1] * a1
    return state


def apply_phase(state, w, q, phase):
    v = _axis_view(state, w, q)
    v[:, 1, :] *= phase
    return state


def _index(w, fixed):
    """Tensor-view index tuple pinning the given {qubit: bit} assignments."""
    return tuple(fixed.get(q, slice(None)) for q in range(w))


def apply_cnot(state, w, qc, qt):
    v = state.reshape((2,) * w)
    i10 = _index(w, {qc: 1, qt: 0})
    i11 = _index(w, {qc: 1, qt: 1})
    tmp = v[i10].copy()
    v[i10] = v[i11]
    v[i11] = tmp
    return state


def apply_cswap(state, w, qc, q1, q2):
    v = state.reshape((2,) * w)
    ia = _index(w, {qc: 1, q1: 0, q2: 1})
    ib = _index(w, {qc: 1, q1: 1, q2: 0})
    tmp = v[ia].copy()
    v[ia] = v[ib]
    v[ib] = tmp
    return state


def apply_c1q(state, w, qc, qt, u):
    v = state.reshape((2,) * w)
    i0 = _index(w, {qc: 1, qt: 0})
    i1 = _index(w, {qc: 1, qt: 1})
    a0 = v[i0].copy()
    a1 = v[i1]
    v[i0] = u[0, 0] * a0 + u[0, 1] * a1
    v[i1] = u[1, 0] * a0 + u[1, 1] * a1
    return state


def run_program(state, w, ops, params):
    """Execute an encoded gate sequence (see gateops.encode_program)."""
    for k in range(ops.shape[0]):
        code, a, b, c = ops[k]
        if code == 0:
            apply_1q(state, w, a, params[k].reshape(2, 2))
        elif code == 1:
            apply_phase(state, w, a, params[k, 0])
        elif code == 2:
            apply_cnot(state, w, a, b)
        elif code == 3:
            apply_cswap(state, w, a, b, c)
        else:
            apply_c1q(state, w, a, b, params[k].reshape(2, 2))
    return state
