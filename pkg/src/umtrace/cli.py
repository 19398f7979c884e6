"""Command-line front end.

Subcommands: build, tradeoff, ansatz-state, estimate, vd. Exit codes:
0 success, 2 parameter violation, 3 malformed data file, 4 numeric
failure. UMTRACE_SEED sets the default sampling seed. All output is
deterministic for fixed flags and seed.
"""

from __future__ import annotations

import csv
import functools
import io
import sys

import click
import numpy as np

from .ansatz import DEFAULT_ANGLES, ansatz_state, default_observable
from .circuits import build
from .estimate import (DegenerateDenominator, ErrorBudget, estimate_mt,
                       virtual_distillation)
from .export import FORMATS, export_circuit
from .oracle import mt_exact
from .scheduling import (GREEDY, POLICIES, depth_bound, layer_restricted_depth,
                         schedule)
from .simulate import EngineDisagreement, NoiseModel, depolarize_state
from .states import DensityMatrix, StateValidationError

EXIT_DATA = 3
EXIT_NUMERIC = 4


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.10g}"
    return "" if x is None else str(x)


def _guarded(fn):
    """Map library errors onto the documented exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except StateValidationError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_DATA)
        except (DegenerateDenominator, EngineDisagreement,
                np.linalg.LinAlgError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_NUMERIC)
        except ValueError as exc:
            raise click.UsageError(str(exc))

    return wrapper


@click.group()
def main():
    """Controlled-cyclic-shift circuits, multivariate trace estimation, and
    error-mitigated expectation values."""


seed_option = click.option("--seed", type=int, default=0, show_default=True,
                           envvar="UMTRACE_SEED",
                           help="sampling seed (env UMTRACE_SEED)")


@main.command("build")
@click.option("--m", type=int, required=True, help="number of registers")
@click.option("--n", type=int, required=True, help="qubits per register")
@click.option("--s", type=int, required=True, help="GHZ width parameter")
@click.option("--prop", type=click.Choice(["1", "2"]), default="1",
              show_default=True)
@click.option("--policy", type=click.Choice(POLICIES), default=GREEDY,
              show_default=True)
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="text",
              show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="circuit file to write (summary only when omitted)")
@_guarded
def cmd_build(m, n, s, prop, policy, fmt, out):
    """Build one controlled-cyclic-shift circuit and report depth/width."""
    circuit = build(m, n, s, int(prop), policy)
    if out:
        with open(out, "w") as fh:
            fh.write(export_circuit(circuit, fmt))
    click.echo(f"depth={circuit.cswap_depth} qubits={circuit.width}")


@main.command("tradeoff")
@click.option("--m", type=int, required=True)
@click.option("--n", type=int, required=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@_guarded
def cmd_tradeoff(m, n, out):
    """Qubit/depth table over every s for both constructions."""
    if m < 2 or n < 1:
        raise ValueError(f"need m >= 2 and n >= 1, got m={m}, n={n}")
    rows = []
    for s in range(1, m // 2 + 1):
        greedy_rounds = schedule(m, s, GREEDY).depth
        rows.append({
            "s": s,
            "prop1_depth": n * greedy_rounds,
            "prop1_qubits": s + m * n,
            "prop2_depth": greedy_rounds,
            "prop2_qubits": (s + m) * n,
            "greedy_depth": greedy_rounds,
            "layer_restricted_depth": layer_restricted_depth(m, s),
        })
    _write_csv(out, list(rows[0]), rows)


def _write_csv(out, columns, rows):
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _fmt(v) for k, v in row.items()})
    if out:
        with open(out, "w") as fh:
            fh.write(buffer.getvalue())
    else:
        click.echo(buffer.getvalue(), nl=False)


@main.command("ansatz-state")
@click.option("--alpha", type=float, nargs=4, default=DEFAULT_ANGLES,
              show_default=True, help="rotation angles a1 a2 a3 a4")
@click.option("--gamma0", type=float, default=0.0, show_default=True,
              help="preparation depolarizing strength (0 disables)")
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@_guarded
def cmd_ansatz_state(alpha, gamma0, out):
    """Prepare the two-qubit test state, optionally depolarized, as JSON."""
    state = ansatz_state(alpha)
    if gamma0:
        state = depolarize_state(state, gamma0)
    with open(out, "w") as fh:
        fh.write(state.to_json())
    expectation = float(np.trace(default_observable().matrix()
                                 @ state.data).real)
    click.echo(f"expectation={_fmt(expectation)}")


def _load_state(path) -> DensityMatrix:
    try:
        with open(path) as fh:
            return DensityMatrix.from_json(fh.read())
    except StateValidationError as exc:
        raise StateValidationError(f"{path}: {exc}") from None


@main.command("estimate")
@click.option("--state", "state_paths", type=click.Path(exists=True),
              multiple=True, required=True,
              help="state file; repeat once per register")
@click.option("--s", type=int, required=True)
@click.option("--prop", type=click.Choice(["1", "2"]), default="1",
              show_default=True)
@click.option("--policy", type=click.Choice(POLICIES), default=GREEDY)
@click.option("--epsilon", type=float, default=0.1, show_default=True)
@click.option("--delta", type=float, default=0.05, show_default=True)
@click.option("--shots", type=int, default=None,
              help="override the planned per-basis shot count")
@click.option("--oracle-check", is_flag=True,
              help="also print the dense-matrix value and the deviation")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@seed_option
@_guarded
def cmd_estimate(state_paths, s, prop, policy, epsilon, delta, shots,
                 oracle_check, out, seed):
    """Estimate the multivariate trace of the given states."""
    states = [_load_state(p) for p in state_paths]
    budget = ErrorBudget(epsilon=epsilon, delta=delta)
    report = estimate_mt(states, s, budget, seed, proposition=int(prop),
                         policy=policy, shots=shots)
    if out:
        with open(out, "w") as fh:
            fh.write(report.to_json())
    value = report.value
    click.echo(f"estimate={_fmt(value.real)}{value.imag:+.10g}j "
               f"shots={report.shots_used}")
    if oracle_check:
        truth = mt_exact(states)
        click.echo(f"oracle={_fmt(truth.real)}{truth.imag:+.10g}j "
                   f"|diff|={_fmt(abs(value - truth))}")


VD_COLUMNS = ("m", "n", "s", "proposition", "rounds", "gamma", "gamma0",
              "mode", "corrected", "noisy", "ideal", "shots", "variance",
              "seed")


@main.command("vd")
@click.option("--m", type=int, default=5, show_default=True,
              help="number of state copies")
@click.option("--gammas", default="0.2,0.4,0.6,0.8", show_default=True,
              help="comma-separated per-round depolarizing strengths")
@click.option("--gamma0", type=float, default=0.4, show_default=True)
@click.option("--alpha", type=float, nargs=4, default=DEFAULT_ANGLES)
@click.option("--mode", type=click.Choice(["exact", "shots"]),
              default="exact", show_default=True)
@click.option("--prop", type=click.Choice(["1", "2"]), default="1",
              show_default=True)
@click.option("--epsilon", type=float, default=0.1, show_default=True)
@click.option("--delta", type=float, default=0.05, show_default=True)
@click.option("--shots", type=int, default=None,
              help="override the planned per-part shot count")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@seed_option
@_guarded
def cmd_vd(m, gammas, gamma0, alpha, mode, prop, epsilon, delta, shots, out,
           seed):
    """Distillation experiment: sweep gamma over the wide (s = floor(m/2))
    and narrow (s = 1) circuit variants."""
    try:
        gamma_list = [float(g) for g in gammas.split(",") if g.strip()]
    except ValueError:
        raise ValueError(f"cannot parse --gammas {gammas!r}")
    ideal = ansatz_state(alpha)
    obs = default_observable()
    budget = ErrorBudget(epsilon=epsilon, delta=delta)
    variants = [1] if m == 1 else sorted({max(1, m // 2), 1}, reverse=True)
    rows = []
    for s in variants:
        for gamma in gamma_list:
            noise = NoiseModel(state_noise=gamma0 or None, layer_noise=gamma)
            result = virtual_distillation(
                ideal, m, obs, s, budget=budget, mode=mode,
                proposition=int(prop), noise=noise, seed=seed, ideal=ideal,
                shots=shots)
            rows.append({
                "m": m, "n": ideal.n, "s": s,
                "proposition": result.config.get("proposition", int(prop)),
                "rounds": result.config.get("rounds", 0),
                "gamma": gamma, "gamma0": gamma0, "mode": mode,
                "corrected": result.corrected, "noisy": result.noisy,
                "ideal": result.ideal,
                "shots": (result.numerator.shots_used
                          + result.denominator.shots_used),
                "variance": result.numerator.empirical_variance,
                "seed": seed,
            })
    _write_csv(out, list(VD_COLUMNS), rows)


if __name__ == "__main__":
    main()
