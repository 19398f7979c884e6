"""Dense-matrix ground truth for every estimated quantity.

Deliberately independent of the circuit and estimator code paths: matrix
powers by repeated multiplication, the cyclic-shift operator as an
explicit permutation matrix. Intended for n <= 4.
"""

from __future__ import annotations

import warnings
from functools import reduce

import numpy as np

from .states import DensityMatrix, PauliObservable

DEGENERACY_GAP = 1e-12


def shift_operator(m: int, n: int) -> np.ndarray:
    """Permutation matrix sending register contents i -> i+1 (mod m):
    |z_1 ... z_m> -> |z_m z_1 ... z_{m-1}> with n-qubit registers."""
    dim_reg = 1 << n
    dim = dim_reg ** m
    op = np.zeros((dim, dim))
    for idx in range(dim):
        digits = []
        rest = idx
        for _ in range(m):
            digits.append(rest % dim_reg)
            rest //= dim_reg
        digits.reverse()                      # digits[0] = register 1
        shifted = [digits[-1]] + digits[:-1]  # register 1 receives register m
        out = 0
        for d in shifted:
            out = out * dim_reg + d
        op[out, idx] = 1.0
    return op


def _check_states(states):
    if not states:
        raise ValueError("need at least one state")
    n = states[0].n
    if any(r.n != n for r in states):
        raise ValueError("all states must share the qubit count")
    return n


def mt_exact(states, cross_check: bool = False) -> complex:
    """Multivariate trace Tr(rho_1 rho_2 ... rho_m) via the ordered product.

    With cross_check=True (m*n <= 12) the value is re-derived as
    Tr[S (rho_1 x ... x rho_m)] from the explicit permutation matrix and
    the two paths must agree to 1e-10.
    """
    n = _check_states(states)
    product = reduce(np.matmul, [r.data for r in states])
    value = complex(np.trace(product))
    if cross_check:
        other = mt_via_shift_operator(states)
        if abs(value - other) > 1e-10:
            raise RuntimeError(
                f"product path {value} and shift-operator path {other} disagree")
    return value


def mt_via_shift_operator(states) -> complex:
    """The multivariate trace evaluated as Tr[S^(m) (x_k rho_{m+1-k})];
    m*n <= 12.

    The registers are loaded in reverse, exactly as the simulator does:
    the shift operator moves register contents forward (i -> i+1), so the
    reversed tensor order contracts to the ordered product
    Tr(rho_1 ... rho_m) instead of its conjugate.
    """
    n = _check_states(states)
    m = len(states)
    if m * n > 12:
        raise ValueError(f"m*n = {m * n} exceeds the 12-qubit permutation-matrix limit")
    big = reduce(np.kron, [r.data for r in reversed(states)])
    return complex(np.einsum("ij,ji->", shift_operator(m, n), big))


def _matrix_power(mat: np.ndarray, m: int) -> np.ndarray:
    out = mat
    for _ in range(m - 1):
        out = out @ mat
    return out


def vd_exact(rho: DensityMatrix, m: int, observable: PauliObservable) -> float:
    """Tr(O rho^m) / Tr(rho^m) by dense arithmetic."""
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    power = _matrix_power(rho.data, m)
    return float(np.trace(observable.matrix() @ power).real
                 / np.trace(power).real)


def numerator_exact(rho: DensityMatrix, m: int, observable: PauliObservable) -> float:
    return float(np.trace(observable.matrix() @ _matrix_power(rho.data, m)).real)


def top_eigen_expectation(rho: DensityMatrix, observable: PauliObservable):
    """(<u0|O|u0>, degenerate) for the dominant eigenvector u0. When the top
    eigenvalue is degenerate the eigenspace average Tr(O P0)/rank(P0) is
    returned and degenerate=True."""
    evals, evecs = np.linalg.eigh(rho.data)
    top = evals[-1]
    members = np.where(evals > top - DEGENERACY_GAP)[0]
    basis = evecs[:, members]
    value = float(np.trace(basis.conj().T @ observable.matrix() @ basis).real
                  / len(members))
    return value, len(members) > 1


def exponential_suppression_curve(rho: DensityMatrix, m_range,
                                  observable: PauliObservable):
    """[(m, |vd(m) - reference|)] where the reference is the dominant
    eigenvector expectation. Successive error ratios approach E1/E0."""
    reference, degenerate = top_eigen_expectation(rho, observable)
    if degenerate:
        warnings.warn("top eigenvalue is degenerate; using the eigenspace "
                      "average as the reference", RuntimeWarning)
    return [(m, abs(vd_exact(rho, m, observable) - reference)) for m in m_range]
