"""Exact execution engines and seeded shot sampling.

Two engines compute ancilla-parity expectations:

  * eigen-ensemble: every input density matrix is expanded over its
    eigen-components; each pure product term runs through the statevector
    kernels. Global depolarizing layers fold in analytically: unitaries
    fix the maximally mixed state and its parity expectation is 0, so one
    noisy layer multiplies the coherent weight by (1 - gamma).
  * density-matrix: the full-register density matrix is evolved gate by
    gate (rows and conjugated columns) with the depolarizing channel
    applied literally after each controlled-SWAP round.

Measurement: X basis applies H to every ancilla and reads the bit parity;
the Y (imaginary-part) basis first applies the |1> -> -i|1> phase to the
lead ancilla, which realizes a sigma_y readout there and sigma_x on the
rest. Shot sampling draws from the exact outcome distribution.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .circuits import Circuit, Gate
from .gateops import (apply_gate, encode_program, leading_qubit_probs,
                      parity_expectation, run_program)
from .states import DensityMatrix, StateVector, make_density, spectral

MAX_STATEVECTOR_WIDTH = 26
MAX_DENSITY_WIDTH = 12
ENGINE_AGREEMENT_TOL = 1e-8


class EngineDisagreement(RuntimeError):
    """Self-check mode found the two engines apart beyond tolerance."""


@dataclass(frozen=True)
class NoiseModel:
    """Global depolarizing noise: `state_noise` hits each input state at
    preparation, `layer_noise` hits the whole register after every
    controlled-SWAP round."""

    state_noise: float | None = None
    layer_noise: float = 0.0
    kind: str = "global-depolarizing"

    def __post_init__(self):
        if self.state_noise is not None and not (0.0 < self.state_noise < 1.0):
            raise ValueError(f"state_noise must lie in (0, 1), got {self.state_noise}")
        if not (0.0 <= self.layer_noise < 1.0):
            raise ValueError(f"layer_noise must lie in [0, 1), got {self.layer_noise}")
        if self.kind != "global-depolarizing":
            raise ValueError(f"unsupported noise kind {self.kind!r}")


@dataclass(frozen=True)
class MeasurementSpec:
    """Parity readout basis for the ancilla register: X estimates the real
    part, Y the imaginary part."""

    basis: str = "X"

    def __post_init__(self):
        if self.basis not in ("X", "Y"):
            raise ValueError(f"basis must be 'X' or 'Y', got {self.basis!r}")


@dataclass(frozen=True)
class MixtureState:
    """Coherent pure components plus a maximally mixed residual."""

    components: tuple  # of (weight, StateVector)
    residual: float

    def __post_init__(self):
        if any(w < 0 for w, _ in self.components) or self.residual < -1e-12:
            raise ValueError("weights must be nonnegative")
        total = sum(w for w, _ in self.components) + self.residual
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"weights + residual = {total:.15g}, must be 1")


def depolarize_state(rho: DensityMatrix, gamma0: float) -> DensityMatrix:
    """(1 - gamma0) rho + gamma0 I / 2^n for gamma0 in (0, 1)."""
    if not (0.0 < gamma0 < 1.0):
        raise ValueError(f"gamma0 must lie in (0, 1), got {gamma0}")
    mixed = np.eye(rho.dim) / rho.dim
    return make_density((1.0 - gamma0) * rho.data + gamma0 * mixed)


def _checked_inputs(circuit: Circuit, inputs, noise: NoiseModel | None):
    if len(inputs) != circuit.meta.m:
        raise ValueError(f"circuit holds {circuit.meta.m} registers, got {len(inputs)} states")
    if any(r.n != circuit.meta.n for r in inputs):
        raise ValueError(f"every input must have n = {circuit.meta.n} qubits")
    if noise is not None and noise.state_noise is not None:
        inputs = [depolarize_state(r, noise.state_noise) for r in inputs]
    # register k is loaded with state m+1-k: the composed cycle moves
    # register contents forward (i -> i+1), and under that orientation the
    # reversed loading makes the parity expectations target the ordered
    # product Tr(rho_1 rho_2 ... rho_m) rather than its conjugate
    return list(inputs)[::-1]


def _kron_vec(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.multiply.outer(a, b).reshape(-1)


def _component_states(circuit, inputs):
    """(weight, initial statevector) per eigen-component combination;
    weights sum to 1. Partial tensor products are shared across the
    combination tree, so each register level is expanded once per prefix."""
    component_lists = [spectral(r).components() for r in inputs]
    anc = np.zeros(1 << len(circuit.ancillas), dtype=complex)
    anc[0] = 1.0

    def expand(prefix_weight, prefix_vec, level):
        if level == len(component_lists):
            # freshly allocated by the last _kron_vec: safe to mutate
            yield prefix_weight, prefix_vec
            return
        for weight, vec in component_lists[level]:
            if prefix_weight * weight == 0.0:
                continue
            yield from expand(prefix_weight * weight,
                              _kron_vec(prefix_vec, vec), level + 1)

    yield from expand(1.0, _kron_vec(anc, np.ones(1)), 0)


def _coherent_weight(circuit, noise) -> float:
    gamma = noise.layer_noise if noise else 0.0
    return (1.0 - gamma) ** circuit.noisy_layer_count


def _check_width(circuit):
    if circuit.width > MAX_STATEVECTOR_WIDTH:
        raise ValueError(f"width {circuit.width} exceeds the statevector limit "
                         f"{MAX_STATEVECTOR_WIDTH}")


def _measurement_gates(circuit: Circuit, basis: str):
    gates = []
    if basis == "Y":
        gates.append(Gate("S_PHASE", (circuit.ancillas[0],)))
    gates += [Gate("H", (a,)) for a in circuit.ancillas]
    return gates


def evolve_mixture(circuit: Circuit, inputs, noise: NoiseModel | None = None) -> MixtureState:
    """Run the eigen-ensemble engine up to (not including) measurement."""
    _check_width(circuit)
    inputs = _checked_inputs(circuit, inputs, noise)
    coherent = _coherent_weight(circuit, noise)
    program = encode_program([g for layer in circuit.layers for g in layer])
    components = []
    for weight, state in _component_states(circuit, inputs):
        run_program(state, circuit.width, program)
        components.append((coherent * weight,
                           StateVector(N=circuit.width, amplitudes=state)))
    return MixtureState(components=tuple(components), residual=1.0 - coherent)


def _ensemble_parity(circuit, inputs, noise, basis) -> float:
    _check_width(circuit)
    inputs = _checked_inputs(circuit, inputs, noise)
    gates = [g for layer in circuit.layers for g in layer]
    program = encode_program(gates + _measurement_gates(circuit, basis))
    n_anc = len(circuit.ancillas)
    total = 0.0
    for weight, state in _component_states(circuit, inputs):
        run_program(state, circuit.width, program)
        total += weight * parity_expectation(np.abs(state) ** 2, n_anc)
    # the maximally mixed residual contributes parity 0
    return _coherent_weight(circuit, noise) * total


def _shifted(gate, offset):
    return type(gate)(gate.kind, tuple(q + offset for q in gate.qubits),
                      gate.param, gate.letter)


def _density_final(circuit: Circuit, inputs, noise: NoiseModel | None,
                   basis: str) -> np.ndarray:
    """Full density-matrix evolution; returns the final matrix."""
    w = circuit.width
    if w > MAX_DENSITY_WIDTH:
        raise ValueError(f"width {w} exceeds the density-matrix limit {MAX_DENSITY_WIDTH}")
    inputs = _checked_inputs(circuit, inputs, noise)
    gamma = noise.layer_noise if noise else 0.0
    dim = 1 << w
    anc = np.zeros((1 << len(circuit.ancillas),) * 2, dtype=complex)
    anc[0, 0] = 1.0
    rho = reduce(np.kron, [anc] + [r.data for r in inputs])
    flat = rho.reshape(-1)  # a 2w-qubit statevector: rows then columns
    round_ends = set(circuit.round_ends)
    for idx, layer in enumerate(circuit.layers):
        for gate in layer:
            apply_gate(flat, 2 * w, gate)
            apply_gate(flat, 2 * w, _shifted(gate, w), conj=True)
        if idx in round_ends and gamma > 0.0:
            rho *= (1.0 - gamma)
            rho[np.diag_indices(dim)] += gamma / dim
    for gate in _measurement_gates(circuit, basis):
        apply_gate(flat, 2 * w, gate)
        apply_gate(flat, 2 * w, _shifted(gate, w), conj=True)
    return rho


def _density_parity(circuit, inputs, noise, basis) -> float:
    rho = _density_final(circuit, inputs, noise, basis)
    diag = rho.diagonal().real.copy()
    return parity_expectation(diag, len(circuit.ancillas))


def _pick_engine(circuit: Circuit, inputs, engine: str) -> str:
    if engine != "auto":
        return engine
    ranks = 1
    for r in inputs:
        ranks *= r.dim
    if ranks > 4096 and circuit.width <= MAX_DENSITY_WIDTH:
        return "density"
    return "ensemble"


def run_exact(circuit: Circuit, inputs, noise: NoiseModel | None = None,
              spec: MeasurementSpec | None = None, engine: str = "auto") -> float:
    """Exact ancilla-parity expectation E[(-1)^(sum of ancilla bits)].

    engine: 'ensemble', 'density', 'auto', or 'both' (self-check: runs
    both and raises EngineDisagreement beyond 1e-8).
    """
    basis = (spec or MeasurementSpec()).basis
    if engine == "both":
        a = _ensemble_parity(circuit, inputs, noise, basis)
        b = _density_parity(circuit, inputs, noise, basis)
        if abs(a - b) > ENGINE_AGREEMENT_TOL:
            raise EngineDisagreement(f"ensemble {a!r} vs density {b!r}")
        return a
    engine = _pick_engine(circuit, inputs, engine)
    if engine == "ensemble":
        return _ensemble_parity(circuit, inputs, noise, basis)
    if engine == "density":
        return _density_parity(circuit, inputs, noise, basis)
    raise ValueError(f"unknown engine {engine!r}")


def _bitstring_probs(circuit, inputs, noise, basis) -> np.ndarray:
    n_anc = len(circuit.ancillas)
    if n_anc > 12:
        raise ValueError(f"{n_anc} ancillas exceed the 12-qubit distribution limit")
    _check_width(circuit)
    inputs = _checked_inputs(circuit, inputs, noise)
    gates = [g for layer in circuit.layers for g in layer]
    program = encode_program(gates + _measurement_gates(circuit, basis))
    coherent = _coherent_weight(circuit, noise)
    probs = np.zeros(1 << n_anc)
    for weight, state in _component_states(circuit, inputs):
        run_program(state, circuit.width, program)
        probs += (coherent * weight) * leading_qubit_probs(
            np.abs(state) ** 2, n_anc)
    probs += (1.0 - coherent) / probs.size
    return probs


def bitstring_distribution(circuit: Circuit, inputs, noise: NoiseModel | None = None,
                           spec: MeasurementSpec | None = None) -> dict:
    """Full ancilla-outcome distribution as {bitstring: probability}."""
    basis = (spec or MeasurementSpec()).basis
    probs = _bitstring_probs(circuit, inputs, noise, basis)
    n_anc = len(circuit.ancillas)
    return {format(k, f"0{n_anc}b"): float(p) for k, p in enumerate(probs)}


def distribution_csv(dist: dict) -> str:
    """Render a bitstring distribution as CSV (bitstring, probability)."""
    lines = ["bitstring,probability"]
    lines += [f"{bits},{dist[bits]:.10g}" for bits in sorted(dist)]
    return "\n".join(lines) + "\n"


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def sample_shots(circuit: Circuit, inputs, noise: NoiseModel | None,
                 spec: MeasurementSpec | None, shots: int, seed) -> np.ndarray:
    """i.i.d. parity outcomes (+1/-1) from the exact distribution."""
    expectation = run_exact(circuit, inputs, noise, spec)
    p_plus = min(max((1.0 + expectation) / 2.0, 0.0), 1.0)
    draws = _rng(seed).random(shots) < p_plus
    return np.where(draws, 1, -1).astype(np.int8)


def sample_bitstrings(circuit: Circuit, inputs, noise: NoiseModel | None,
                      spec: MeasurementSpec | None, shots: int, seed) -> np.ndarray:
    """i.i.d. ancilla bitstrings (as integers) from the exact distribution."""
    basis = (spec or MeasurementSpec()).basis
    probs = _bitstring_probs(circuit, inputs, noise, basis)
    probs = np.clip(probs, 0.0, None)
    probs /= probs.sum()
    return _rng(seed).choice(probs.size, size=shots, p=probs)
