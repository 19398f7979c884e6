"""Gate-kernel backend selection.

The compiled extension is preferred when importable; otherwise the numpy
reference implementation is used. Set UMTRACE_BACKEND=numpy|compiled to
force a choice (forcing `compiled` raises if the extension is missing).
"""

import os

from . import reference

_CHOICES = ("compiled", "numpy")


def _load(name):
    if name == "numpy":
        return reference
    from . import _gatekernels  # noqa: may raise ImportError
    return _gatekernels


def _initial():
    forced = os.environ.get("UMTRACE_BACKEND")
    if forced is not None and forced not in _CHOICES:
        raise RuntimeError(f"UMTRACE_BACKEND must be one of {_CHOICES}, got {forced!r}")
    if forced == "numpy":
        return reference, "numpy"
    try:
        return _load("compiled"), "compiled"
    except ImportError:
        if forced == "compiled":
            raise
        return reference, "numpy"


_active, active_name = _initial()


def available_backends():
    out = []
    for name in _CHOICES:
        try:
            _load(name)
            out.append(name)
        except ImportError:
            pass
    return out


def get_backend(name):
    """The raw kernel module for `name` (for benchmarks and cross-checks)."""
    return _load(name)


def use(name):
    """Re-point the active backend; returns the previously active name."""
    global _active, active_name
    previous = active_name
    _active, active_name = _load(name), name
    return previous


def apply_1q(state, w, q, u):
    return _active.apply_1q(state, w, q, u)


def apply_phase(state, w, q, phase):
    return _active.apply_phase(state, w, q, phase)


def apply_cnot(state, w, qc, qt):
    return _active.apply_cnot(state, w, qc, qt)


def apply_cswap(state, w, qc, q1, q2):
    return _active.apply_cswap(state, w, qc, q1, q2)


def apply_c1q(state, w, qc, qt, u):
    return _active.apply_c1q(state, w, qc, qt, u)


def run_program(state, w, ops, params):
    return _active.run_program(state, w, ops, params)
