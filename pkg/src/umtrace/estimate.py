"""Shot-based estimators for the multivariate trace, observable-weighted
numerators, ratio statistics, and the end-to-end distillation pipeline.

Shot counts come from the Hoeffding bound for outcomes in [-1, 1] with the
error budget split evenly between the real and imaginary parts:
N = ceil(2 ln(2/delta) / (eps/2)^2). `empirical_variance` fields always
refer to single-shot variance (the quantity the variance identities
constrain), not the variance of the mean.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .circuits import attach_observable, build
from .oracle import _matrix_power
from .scheduling import GREEDY
from .simulate import (MeasurementSpec, NoiseModel, depolarize_state,
                       run_exact, sample_shots)
from .states import DensityMatrix, PauliObservable, PauliString, pauli_matrix

DENOMINATOR_FLOOR = 1e-6


class DegenerateDenominator(RuntimeError):
    """The purity-style denominator estimate is too close to zero."""


@dataclass(frozen=True)
class ErrorBudget:
    epsilon: float
    delta: float
    target_variance: float | None = None

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if not (0.0 < self.delta < 1.0):
            raise ValueError(f"delta must lie in (0, 1), got {self.delta}")


def plan_shots(budget: ErrorBudget) -> int:
    """Per-basis repetitions: ceil(2 ln(2/delta) / (epsilon/2)^2)."""
    return math.ceil(2.0 * math.log(2.0 / budget.delta)
                     / (budget.epsilon / 2.0) ** 2)


@dataclass(frozen=True)
class BasisStats:
    basis: str
    mean: float
    variance: float  # single-shot sample variance
    shots: int


@dataclass(frozen=True)
class TermStats:
    coefficient: float
    letters: str
    mean: float
    variance: float
    shots: int
    epsilon: float


@dataclass(frozen=True)
class EstimateReport:
    value: complex | float
    shots_used: int
    empirical_variance: float
    budget: ErrorBudget | None
    basis_breakdown: tuple = ()
    parts: tuple = ()
    copies_used: int | None = None
    config: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        value = self.value
        if isinstance(value, complex):
            value = {"re": value.real, "im": value.imag}
        return {
            "value": value,
            "shots_used": self.shots_used,
            "empirical_variance": self.empirical_variance,
            "budget": None if self.budget is None else {
                "epsilon": self.budget.epsilon,
                "delta": self.budget.delta,
                "target_variance": self.budget.target_variance,
            },
            "basis_breakdown": [vars(b) for b in self.basis_breakdown],
            "parts": [vars(p) for p in self.parts],
            "copies_used": self.copies_used,
            "config": self.config,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    def csv_row(self) -> dict:
        value = self.value
        if isinstance(value, complex):
            value = f"{value.real:.10g}{value.imag:+.10g}j"
        else:
            value = f"{value:.10g}"
        cfg = self.config
        return {
            "m": cfg.get("m"), "n": cfg.get("n"), "s": cfg.get("s"),
            "proposition": cfg.get("proposition"),
            "gamma": cfg.get("gamma", 0.0), "gamma0": cfg.get("gamma0", 0.0),
            "shots": self.shots_used, "value": value,
            "variance": f"{self.empirical_variance:.10g}",
            "seed": cfg.get("seed"),
        }


CSV_COLUMNS = ("m", "n", "s", "proposition", "gamma", "gamma0",
               "shots", "value", "variance", "seed")


def _config(circuit, noise, seed) -> dict:
    meta = circuit.meta
    return {
        "m": meta.m, "n": meta.n, "s": meta.s, "proposition": meta.proposition,
        "policy": meta.policy, "rounds": meta.rounds,
        "gamma": noise.layer_noise if noise else 0.0,
        "gamma0": (noise.state_noise if noise and noise.state_noise else 0.0),
        "seed": seed,
    }


def _sample_stats(circuit, inputs, noise, basis, shots, rng) -> BasisStats:
    outcomes = sample_shots(circuit, inputs, noise, MeasurementSpec(basis),
                            shots, rng).astype(float)
    return BasisStats(basis=basis, mean=float(outcomes.mean()),
                      variance=float(outcomes.var(ddof=1)), shots=shots)


def estimate_mt(states, s: int, budget: ErrorBudget, seed,
                proposition: int = 1, policy: str = GREEDY,
                noise: NoiseModel | None = None,
                shots: int | None = None) -> EstimateReport:
    """Complex multivariate-trace estimate from X- and Y-basis parity runs."""
    m = len(states)
    if m < 2:
        raise ValueError(f"need at least two states, got {m}")
    circuit = build(m, states[0].n, s, proposition, policy)
    n_shots = shots if shots is not None else plan_shots(budget)
    seq = np.random.SeedSequence(seed)
    rng_x, rng_y = (np.random.default_rng(c) for c in seq.spawn(2))
    x = _sample_stats(circuit, states, noise, "X", n_shots, rng_x)
    y = _sample_stats(circuit, states, noise, "Y", n_shots, rng_y)
    return EstimateReport(
        value=complex(x.mean, y.mean),
        shots_used=2 * n_shots,
        empirical_variance=x.variance + y.variance,
        budget=budget,
        basis_breakdown=(x, y),
        config=_config(circuit, noise, seed),
    )


def identity_observable(n: int) -> PauliObservable:
    return PauliObservable(((1.0, PauliString("I" * n)),))


def estimate_numerator(rho: DensityMatrix, m: int, obs: PauliObservable,
                       s: int, budget: ErrorBudget, seed,
                       proposition: int = 1, policy: str = GREEDY,
                       noise: NoiseModel | None = None,
                       shots: int | None = None) -> EstimateReport:
    """Real part of Tr(O rho^m) as the coefficient-weighted sum of one
    parity estimate per Pauli term, each budgeted eps_k = eps / sum|a_k|."""
    norm = obs.coefficient_norm
    if norm <= 0.0:
        raise ValueError("observable has zero coefficient norm")
    if obs.n != rho.n:
        raise ValueError(f"observable acts on {obs.n} qubits, state has {rho.n}")
    circuit = build(m, rho.n, s, proposition, policy)
    inputs = [rho] * m
    eps_k = budget.epsilon / norm
    per_term = shots if shots is not None else plan_shots(
        ErrorBudget(eps_k, budget.delta))
    seq = np.random.SeedSequence(seed)
    parts = []
    for (coeff, string), child in zip(obs.terms, seq.spawn(len(obs.terms))):
        term_circuit = attach_observable(circuit, string)
        stats = _sample_stats(term_circuit, inputs, noise, "X", per_term,
                              np.random.default_rng(child))
        parts.append(TermStats(coefficient=coeff, letters=string.letters,
                               mean=stats.mean, variance=stats.variance,
                               shots=per_term, epsilon=eps_k))
    value = float(sum(p.coefficient * p.mean for p in parts))
    composite_var = float(sum(p.coefficient ** 2 * p.variance for p in parts))
    shots_used = sum(p.shots for p in parts)
    return EstimateReport(
        value=value,
        shots_used=shots_used,
        empirical_variance=composite_var,
        budget=budget,
        parts=tuple(parts),
        copies_used=m * shots_used,
        config=_config(circuit, noise, seed),
    )


@dataclass(frozen=True)
class RatioStats:
    """Printed-formula approximations for the ratio of two sample means."""

    mean: float
    mean_correction: float
    variance: float
    shots_for_target_variance: int | None


def ratio_stats(num_mean: float, den_mean: float, obs: PauliObservable,
                rho: DensityMatrix, m: int, shots: int,
                target_variance: float | None = None) -> RatioStats:
    """Mean/variance approximations of <X>/<Y> with N = shots samples each.

    Implements the printed displays verbatim, including the squared
    Var[Y] factor where a plain delta-method expansion would use Var[Y];
    a bootstrap cross-check lives in the test suite instead of a silent
    correction here.
    """
    if den_mean == 0.0:
        raise ZeroDivisionError("denominator mean is zero")
    power = _matrix_power(rho.data, m)
    term_traces = [float(np.trace(pauli_matrix(string) @ power).real)
                   for _, string in obs.terms]
    var_y = 1.0 - den_mean ** 2
    var_x = float(sum(a ** 2 * (1.0 - t ** 2)
                      for (a, _), t in zip(obs.terms, term_traces)))
    mean_correction = num_mean * var_y ** 2 / (shots * den_mean ** 3)
    variance = (num_mean ** 2 * var_y ** 2 / (shots * den_mean ** 4)
                + var_x / (shots * den_mean ** 2))
    shots_needed = None
    if target_variance is not None:
        shots_needed = math.ceil(
            num_mean ** 2 * var_y ** 2 / (target_variance * den_mean ** 4)
            + var_x / (target_variance * den_mean ** 2))
    return RatioStats(mean=num_mean / den_mean + mean_correction,
                      mean_correction=mean_correction,
                      variance=variance,
                      shots_for_target_variance=shots_needed)


@dataclass(frozen=True)
class VDResult:
    corrected: float
    noisy: float
    ideal: float | None
    numerator: EstimateReport
    denominator: EstimateReport
    config: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "corrected": self.corrected,
            "noisy": self.noisy,
            "ideal": self.ideal,
            "numerator": self.numerator.to_json_dict(),
            "denominator": self.denominator.to_json_dict(),
            "config": self.config,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    def csv_row(self) -> dict:
        """Same columns as EstimateReport rows; `value` is the corrected
        expectation and `variance` the numerator's single-shot composite."""
        row = self.numerator.csv_row()
        row["value"] = f"{self.corrected:.10g}"
        row["shots"] = (self.numerator.shots_used
                        + self.denominator.shots_used)
        return row


def _effective_state(rho, noise):
    if noise is not None and noise.state_noise is not None:
        return depolarize_state(rho, noise.state_noise)
    return rho


def virtual_distillation(rho: DensityMatrix, m: int, obs: PauliObservable,
                         s: int, budget: ErrorBudget | None = None,
                         mode: str = "exact", proposition: int = 1,
                         policy: str = GREEDY,
                         noise: NoiseModel | None = None, seed=None,
                         ideal: DensityMatrix | None = None,
                         shots: int | None = None) -> VDResult:
    """Distilled expectation Tr(O rho_eff^m) / Tr(rho_eff^m) where rho_eff
    is the input after preparation noise. Exact mode evaluates circuit
    parities exactly; shots mode runs the budgeted estimators with
    independent numerator/denominator streams."""
    if mode not in ("exact", "shots"):
        raise ValueError(f"mode must be 'exact' or 'shots', got {mode!r}")
    rho_eff = _effective_state(rho, noise)
    noisy = float(np.trace(obs.matrix() @ rho_eff.data).real)
    ideal_value = None
    if ideal is not None:
        ideal_value = float(np.trace(obs.matrix() @ ideal.data).real)

    if m == 1:
        trivial = EstimateReport(value=noisy, shots_used=0,
                                 empirical_variance=0.0, budget=budget,
                                 config={"m": 1, "seed": seed})
        unit = EstimateReport(value=1.0, shots_used=0, empirical_variance=0.0,
                              budget=budget, config={"m": 1, "seed": seed})
        return VDResult(corrected=noisy, noisy=noisy, ideal=ideal_value,
                        numerator=trivial, denominator=unit,
                        config={"m": 1, "mode": mode, "seed": seed})

    inputs = [rho] * m
    if mode == "exact":
        circuit = build(m, rho.n, s, proposition, policy)
        den_x = run_exact(circuit, inputs, noise, MeasurementSpec("X"))
        den_y = run_exact(circuit, inputs, noise, MeasurementSpec("Y"))
        num_x = num_y = 0.0
        for coeff, string in obs.terms:
            term_circuit = attach_observable(circuit, string)
            num_x += coeff * run_exact(term_circuit, inputs, noise,
                                       MeasurementSpec("X"))
            num_y += coeff * run_exact(term_circuit, inputs, noise,
                                       MeasurementSpec("Y"))
        config = _config(circuit, noise, seed)
        num_report = EstimateReport(value=complex(num_x, num_y), shots_used=0,
                                    empirical_variance=0.0, budget=budget,
                                    config=config)
        den_report = EstimateReport(value=complex(den_x, den_y), shots_used=0,
                                    empirical_variance=0.0, budget=budget,
                                    config=config)
        num_value, den_value = num_x, den_x
    else:
        if budget is None and shots is None:
            raise ValueError("shots mode needs an ErrorBudget or a shot count")
        budget = budget or ErrorBudget(epsilon=0.1, delta=0.05)
        seed_num, seed_den = (int(x) for x in
                              np.random.SeedSequence(seed).generate_state(2))
        num_report = estimate_numerator(rho, m, obs, s, budget, seed_num,
                                        proposition, policy, noise, shots)
        den_report = estimate_numerator(rho, m, identity_observable(rho.n), s,
                                        budget, seed_den, proposition,
                                        policy, noise, shots)
        num_value, den_value = num_report.value, den_report.value
        config = dict(num_report.config)

    if abs(den_value) < DENOMINATOR_FLOOR:
        raise DegenerateDenominator(
            f"denominator estimate {den_value:.3e} below {DENOMINATOR_FLOOR}")
    config = dict(config)
    config["mode"] = mode
    return VDResult(corrected=num_value / den_value, noisy=noisy,
                    ideal=ideal_value, numerator=num_report,
                    denominator=den_report, config=config)
