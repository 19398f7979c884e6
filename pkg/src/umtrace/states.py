"""Density matrices, Pauli strings and observables, and spectral access.

Conventions used across the whole package:
  * qubit 1 is the most-significant tensor factor (qubit q of a width-W
    system owns bit W-q of the basis-state index),
  * 1e-10 tolerance for exact-matrix checks, 1e-9 after eigensolves.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10
EIGEN_TOL = 1e-9

PAULI_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class StateValidationError(ValueError):
    """A constructed state violated one of its invariants."""


class BadDimension(StateValidationError):
    pass


class NotHermitian(StateValidationError):
    pass


class NotUnitTrace(StateValidationError):
    pass


class NotPSD(StateValidationError):
    pass


def _qubit_count(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim <= 1 or (1 << n) != dim:
        raise BadDimension(f"dimension {dim} is not a power of two >= 2")
    return n


@dataclass(frozen=True)
class DensityMatrix:
    """Validated n-qubit mixed state. Use :func:`make_density` to construct."""

    n: int
    data: np.ndarray

    def __post_init__(self):
        self.data.setflags(write=False)

    @property
    def dim(self) -> int:
        return 1 << self.n

    def to_json(self) -> str:
        rows = [[[z.real, z.imag] for z in row] for row in self.data]
        return json.dumps({"n": self.n, "rows": rows})

    @staticmethod
    def from_json(text: str) -> "DensityMatrix":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise StateValidationError(f"not valid JSON: {exc}") from None
        if not isinstance(doc, dict) or "n" not in doc or "rows" not in doc:
            raise StateValidationError("state document needs keys 'n' and 'rows'")
        n, rows = doc["n"], doc["rows"]
        dim = 1 << int(n)
        if len(rows) != dim or any(len(r) != dim for r in rows):
            raise StateValidationError(
                f"'rows' must be a {dim}x{dim} grid of [re, im] pairs")
        try:
            mat = np.array(
                [[complex(re, im) for re, im in row] for row in rows])
        except (TypeError, ValueError) as exc:
            raise StateValidationError(f"bad matrix entry: {exc}") from None
        return make_density(mat)


def make_density(matrix) -> DensityMatrix:
    """Validate a complex square matrix as a density matrix.

    Raises the specific invariant violation: BadDimension, NotHermitian,
    NotUnitTrace or NotPSD.
    """
    mat = np.asarray(matrix, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise BadDimension(f"expected a square matrix, got shape {mat.shape}")
    n = _qubit_count(mat.shape[0])
    herm_dev = np.abs(mat - mat.conj().T).max()
    if herm_dev > HERMITIAN_TOL:
        raise NotHermitian(f"max |rho - rho^dag| = {herm_dev:.3e} > {HERMITIAN_TOL}")
    tr = mat.trace()
    if abs(tr - 1.0) > TRACE_TOL:
        raise NotUnitTrace(f"trace = {tr:.12g}, must be 1 within {TRACE_TOL}")
    evals = np.linalg.eigvalsh(mat)
    if evals.min() < -PSD_TOL:
        raise NotPSD(f"smallest eigenvalue {evals.min():.3e} < -{PSD_TOL}")
    return DensityMatrix(n=n, data=mat.copy())


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigen-ensemble of a density matrix, eigenvalues descending."""

    eigenvalues: np.ndarray       # real, descending, sum 1
    eigenvectors: np.ndarray      # column k is the k-th eigenvector

    def __post_init__(self):
        self.eigenvalues.setflags(write=False)
        self.eigenvectors.setflags(write=False)

    def reconstruct(self) -> np.ndarray:
        return (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.conj().T

    def components(self):
        """(weight, eigenvector) pairs with zero weights dropped."""
        return [(float(w), self.eigenvectors[:, k])
                for k, w in enumerate(self.eigenvalues) if w > 0.0]


def spectral(rho: DensityMatrix) -> SpectralDecomposition:
    """Eigendecompose, clamp tiny negative eigenvalues to 0, renormalize."""
    evals, evecs = np.linalg.eigh(rho.data)
    order = np.argsort(evals)[::-1]
    evals, evecs = evals[order], evecs[:, order]
    evals = np.where(evals < 0.0, 0.0, evals)
    evals = evals / evals.sum()
    return SpectralDecomposition(eigenvalues=evals, eigenvectors=evecs)


@dataclass(frozen=True)
class PauliString:
    """Tensor product of single-qubit Paulis, qubit 1 leftmost."""

    letters: str

    def __post_init__(self):
        bad = set(self.letters) - set("IXYZ")
        if bad or not self.letters:
            raise ValueError(f"letters must be a nonempty string over IXYZ, got {self.letters!r}")

    @property
    def n(self) -> int:
        return len(self.letters)

    @property
    def is_identity(self) -> bool:
        return set(self.letters) == {"I"}


def pauli_matrix(p: PauliString) -> np.ndarray:
    """Dense 2^n x 2^n matrix of the string, qubit 1 as the leftmost factor."""
    mat = PAULI_MATRICES[p.letters[0]]
    for letter in p.letters[1:]:
        mat = np.kron(mat, PAULI_MATRICES[letter])
    return mat


@dataclass(frozen=True)
class PauliObservable:
    """Real-weighted sum of Pauli strings on a common qubit count."""

    terms: tuple  # of (coefficient, PauliString)

    def __post_init__(self):
        if not self.terms:
            raise ValueError("observable needs at least one term")
        n = self.terms[0][1].n
        for coeff, string in self.terms:
            if string.n != n:
                raise ValueError("all strings must share the qubit count")
            if abs(complex(coeff).imag) > 0:
                raise ValueError("coefficients must be real")

    @property
    def n(self) -> int:
        return self.terms[0][1].n

    @property
    def term_count(self) -> int:
        return len(self.terms)

    @property
    def coefficient_norm(self) -> float:
        """Sum of |a_k|, the sampling-cost constant."""
        return float(sum(abs(a) for a, _ in self.terms))

    def matrix(self) -> np.ndarray:
        out = np.zeros((1 << self.n, 1 << self.n), dtype=complex)
        for coeff, string in self.terms:
            out += coeff * pauli_matrix(string)
        return out

    def scaled(self, factor: float) -> "PauliObservable":
        return PauliObservable(tuple((a * factor, s) for a, s in self.terms))

    def to_json(self) -> str:
        return json.dumps({
            "n": self.n,
            "terms": [{"coeff": a, "letters": s.letters} for a, s in self.terms],
        })

    @staticmethod
    def from_json(text: str) -> "PauliObservable":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise StateValidationError(f"not valid JSON: {exc}") from None
        if not isinstance(doc, dict) or "terms" not in doc:
            raise StateValidationError("observable document needs key 'terms'")
        try:
            terms = tuple((float(t["coeff"]), PauliString(t["letters"]))
                          for t in doc["terms"])
            return PauliObservable(terms)
        except (KeyError, TypeError, ValueError) as exc:
            raise StateValidationError(f"bad observable term: {exc}") from None


def observable(*terms) -> PauliObservable:
    """Shorthand: observable((0.5, "ZI"), (0.5, "IZ"))."""
    return PauliObservable(tuple((float(a), PauliString(s)) for a, s in terms))


@dataclass(frozen=True)
class StateVector:
    """Pure state on N qubits, unit norm."""

    N: int
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes.setflags(write=False)

    @staticmethod
    def from_amplitudes(amps) -> "StateVector":
        vec = np.asarray(amps, dtype=complex)
        N = _qubit_count(vec.size)
        norm = np.linalg.norm(vec)
        if abs(norm - 1.0) > 1e-10:
            raise StateValidationError(f"norm = {norm:.12g}, must be 1 within 1e-10")
        return StateVector(N=N, amplitudes=vec.copy())

    def density(self) -> DensityMatrix:
        return make_density(np.outer(self.amplitudes, self.amplitudes.conj()))
