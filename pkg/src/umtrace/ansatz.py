"""The two-qubit test-state preparation used by the distillation demo.

Two layers of (R_y x R_y) followed by a CNOT (control = qubit 1), acting
on |00>. R_y(t) = exp(-i t sigma_y / 2). The first layer uses angles
(a1, a2), the second (a3, a4); this pairing reproduces the target
observable expectation 0.7547 with the default angles.
"""

from __future__ import annotations

import numpy as np

from .gateops import ry_matrix
from .states import DensityMatrix, PauliObservable, make_density, observable

DEFAULT_ANGLES = (0.8147, 0.1270, 0.2785, 0.5469)

_CNOT = np.array([[1, 0, 0, 0],
                  [0, 1, 0, 0],
                  [0, 0, 0, 1],
                  [0, 0, 1, 0]], dtype=complex)


def ansatz_unitary(angles=DEFAULT_ANGLES) -> np.ndarray:
    a1, a2, a3, a4 = angles
    layer1 = _CNOT @ np.kron(ry_matrix(a1), ry_matrix(a2))
    layer2 = _CNOT @ np.kron(ry_matrix(a3), ry_matrix(a4))
    return layer2 @ layer1


def ansatz_state(angles=DEFAULT_ANGLES) -> DensityMatrix:
    psi = ansatz_unitary(angles)[:, 0]
    return make_density(np.outer(psi, psi.conj()))


def default_observable() -> PauliObservable:
    """(sigma_z on qubit 1 + sigma_z on qubit 2) / 2."""
    return observable((0.5, "ZI"), (0.5, "IZ"))
