"""Gate-level circuits for the controlled cyclic shift on m registers.

Two constructions share a transposition schedule:

  * sequential (proposition 1): one s-qubit GHZ ancilla register; a
    transposition expands to n controlled-SWAPs stacked across n
    sub-layers, so the controlled-SWAP depth is n * rounds on s + m*n
    qubits.
  * parallelized (proposition 2): n ancilla blocks of s qubits, block q
    controlling the swaps of qubit position q; every round is a single
    layer, so the depth is rounds on (s + m)*n qubits.

The ancilla register is prepared in one GHZ state spanning *all* ancilla
qubits (also across blocks in the parallelized form: independent block
states would change the parity statistics for entangled inputs).
Reported depth counts controlled-SWAP layers only; GHZ preparation,
controlled-Pauli insertions and measurement basis changes are excluded.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .scheduling import GREEDY, TranspositionSchedule, schedule
from .states import PauliString

GATE_KINDS = ("H", "RY", "S_PHASE", "CNOT", "CSWAP", "CPAULI")

PREP = "prep"
CSWAP_LAYER = "cswap"
PAULI_LAYER = "pauli"
PHASE_LAYER = "phase"

# phase gate used for imaginary-part readout: |0> -> |0>, |1> -> -i|1>
S_PHASE_VALUE = -1j


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple
    param: float | None = None
    letter: str | None = None

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        arity = {"H": 1, "RY": 1, "S_PHASE": 1, "CNOT": 2, "CSWAP": 3, "CPAULI": 2}
        if len(self.qubits) != arity[self.kind]:
            raise ValueError(f"{self.kind} takes {arity[self.kind]} qubits, got {self.qubits}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"{self.kind} operands must be distinct, got {self.qubits}")
        if self.kind == "RY" and self.param is None:
            raise ValueError("RY needs an angle")
        if self.kind == "CPAULI" and self.letter not in ("X", "Y", "Z"):
            raise ValueError(f"CPAULI letter must be X, Y or Z, got {self.letter!r}")


@dataclass(frozen=True)
class CircuitMeta:
    m: int
    n: int
    s: int
    proposition: int
    policy: str
    rounds: int
    pauli: str | None = None
    pauli_register: int | None = None
    imaginary: bool = False


@dataclass(frozen=True)
class Circuit:
    width: int
    ancillas: tuple          # ancilla qubit indices (always the leading qubits)
    registers: tuple         # registers[i-1] = qubit indices of work register i
    layers: tuple            # tuple of tuples of Gate
    tags: tuple              # one of PREP/CSWAP_LAYER/PAULI_LAYER/PHASE_LAYER per layer
    round_ends: tuple        # layer indices closing a controlled-SWAP round
    meta: CircuitMeta

    def __post_init__(self):
        for layer in self.layers:
            seen = set()
            for gate in layer:
                if max(gate.qubits) >= self.width:
                    raise ValueError(f"gate {gate} exceeds width {self.width}")
                if seen & set(gate.qubits):
                    raise ValueError(f"layer gates overlap on qubits: {layer}")
                seen |= set(gate.qubits)

    @property
    def cswap_depth(self) -> int:
        """Controlled-SWAP layer count, the depth figure of merit."""
        return sum(1 for t in self.tags if t == CSWAP_LAYER)

    @property
    def noisy_layer_count(self) -> int:
        return len(self.round_ends)

    def with_layers(self, extra_layers, extra_tags, **meta_changes) -> "Circuit":
        return replace(
            self,
            layers=self.layers + tuple(tuple(l) for l in extra_layers),
            tags=self.tags + tuple(extra_tags),
            meta=replace(self.meta, **meta_changes),
        )


def _ghz_prep_layers(qubits):
    """H on the first qubit, then a CNOT chain down the rest."""
    layers = [(Gate("H", (qubits[0],)),)]
    for a, b in zip(qubits, qubits[1:]):
        layers.append((Gate("CNOT", (a, b)),))
    return layers


def ghz_prep(s: int):
    """Preparation layers for (|0...0> + |1...1>)/sqrt(2) on qubits 0..s-1."""
    return _ghz_prep_layers(tuple(range(s)))


def _validate_build(m, n, s):
    if m < 2:
        raise ValueError(f"need m >= 2, got {m}")
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if not (1 <= s <= m // 2):
        raise ValueError(f"need 1 <= s <= floor(m/2) = {m // 2}, got s={s}")


def build_prop1(m: int, n: int, s: int, policy: str = GREEDY,
                sched: TranspositionSchedule | None = None) -> Circuit:
    """Sequential construction: s + m*n qubits, controlled-SWAP depth n * rounds."""
    _validate_build(m, n, s)
    if sched is None:
        sched = schedule(m, s, policy)
    width = s + m * n
    ancillas = tuple(range(s))
    registers = tuple(tuple(s + (i - 1) * n + q for q in range(n))
                      for i in range(1, m + 1))
    layers = _ghz_prep_layers(ancillas)
    tags = [PREP] * len(layers)
    round_ends = []
    for rnd in sched.rounds:
        for q in range(n):
            layer = tuple(
                Gate("CSWAP", (ancillas[k],
                               registers[t.i - 1][q],
                               registers[t.j - 1][q]))
                for k, t in enumerate(rnd))
            layers.append(layer)
            tags.append(CSWAP_LAYER)
        round_ends.append(len(layers) - 1)
    meta = CircuitMeta(m=m, n=n, s=s, proposition=1, policy=sched.policy,
                       rounds=sched.depth)
    return Circuit(width=width, ancillas=ancillas, registers=registers,
                   layers=tuple(layers), tags=tuple(tags),
                   round_ends=tuple(round_ends), meta=meta)


def build_prop2(m: int, n: int, s: int, policy: str = GREEDY,
                sched: TranspositionSchedule | None = None) -> Circuit:
    """Parallelized construction: (s + m)*n qubits, controlled-SWAP depth = rounds.

    Ancilla block q (qubits q*s .. q*s+s-1) controls the swaps of qubit
    position q of every register; one GHZ state spans all blocks.
    """
    _validate_build(m, n, s)
    if sched is None:
        sched = schedule(m, s, policy)
    width = (s + m) * n
    ancillas = tuple(range(n * s))
    registers = tuple(tuple(n * s + (i - 1) * n + q for q in range(n))
                      for i in range(1, m + 1))
    layers = _ghz_prep_layers(ancillas)
    tags = [PREP] * len(layers)
    round_ends = []
    for rnd in sched.rounds:
        layer = []
        for k, t in enumerate(rnd):
            for q in range(n):
                layer.append(Gate("CSWAP", (ancillas[q * s + k],
                                            registers[t.i - 1][q],
                                            registers[t.j - 1][q])))
        layers.append(tuple(layer))
        tags.append(CSWAP_LAYER)
        round_ends.append(len(layers) - 1)
    meta = CircuitMeta(m=m, n=n, s=s, proposition=2, policy=sched.policy,
                       rounds=sched.depth)
    return Circuit(width=width, ancillas=ancillas, registers=registers,
                   layers=tuple(layers), tags=tuple(tags),
                   round_ends=tuple(round_ends), meta=meta)


def build(m: int, n: int, s: int, proposition: int = 1,
          policy: str = GREEDY) -> Circuit:
    if proposition == 1:
        return build_prop1(m, n, s, policy)
    if proposition == 2:
        return build_prop2(m, n, s, policy)
    raise ValueError(f"proposition must be 1 or 2, got {proposition}")


def _pauli_control(circuit: Circuit, position: int) -> int:
    """Ancilla qubit controlling a Pauli on work-qubit position `position`."""
    if circuit.meta.proposition == 1:
        return circuit.ancillas[0]
    return circuit.ancillas[position * circuit.meta.s]


def attach_observable(circuit: Circuit, p: PauliString,
                      target_register: int = 1) -> Circuit:
    """Append one controlled Pauli per non-identity letter, after all swaps.

    The identity string returns the circuit unchanged (the denominator
    circuit). Controls come from the lead ancilla (sequential build) or
    from each block's first qubit (parallelized build); the target
    register defaults to register 1.
    """
    if p.n != circuit.meta.n:
        raise ValueError(f"string has {p.n} letters, registers hold {circuit.meta.n} qubits")
    if not (1 <= target_register <= circuit.meta.m):
        raise ValueError(f"target register {target_register} not in 1..{circuit.meta.m}")
    if p.is_identity:
        return circuit
    gates = [Gate("CPAULI",
                  (_pauli_control(circuit, q),
                   circuit.registers[target_register - 1][q]),
                  letter=letter)
             for q, letter in enumerate(p.letters) if letter != "I"]
    layers, used = [], set()
    for gate in gates:
        if layers and not (used & set(gate.qubits)):
            layers[-1].append(gate)
        else:
            layers.append([gate])
            used = set()
        used |= set(gate.qubits)
    return circuit.with_layers(layers, [PAULI_LAYER] * len(layers),
                               pauli=p.letters, pauli_register=target_register)


def imaginary_mode(circuit: Circuit) -> Circuit:
    """Append the measurement phase gate |1> -> -i|1> on the lead ancilla.

    X-basis parity sampling of the result estimates the imaginary part of
    the multivariate trace. A single gate suffices (and is required): the
    GHZ coherence spans all ancillas, so the |1...1> branch acquires the
    full -i phase from one qubit.
    """
    layer = (Gate("S_PHASE", (circuit.ancillas[0],)),)
    return circuit.with_layers([layer], [PHASE_LAYER], imaginary=True)


def circuit_unitary(circuit: Circuit, max_width: int = 14) -> np.ndarray:
    """Dense unitary of all layers (prep included). Brute-force test support."""
    from .gateops import apply_layers

    if circuit.width > max_width:
        raise ValueError(f"width {circuit.width} exceeds the dense limit {max_width}")
    dim = 1 << circuit.width
    unitary = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        state = np.zeros(dim, dtype=complex)
        state[col] = 1.0
        apply_layers(state, circuit.width, circuit.layers)
        unitary[:, col] = state
    return unitary


def work_register_action(circuit: Circuit, ancilla_bit: int) -> np.ndarray:
    """Action on the work registers with every ancilla pinned to |ancilla_bit>.

    Skips the GHZ preparation layers, runs the remaining layers on each
    work basis state, and checks the ancillas come back unflipped (they
    only ever act as controls). Returns the 2^(m*n)-dimensional block.
    """
    from .gateops import apply_layers

    if ancilla_bit not in (0, 1):
        raise ValueError("ancilla_bit must be 0 or 1")
    n_anc = len(circuit.ancillas)
    work_width = circuit.width - n_anc
    anc_index = (1 << n_anc) - 1 if ancilla_bit else 0
    layers = tuple(layer for layer, tag in zip(circuit.layers, circuit.tags)
                   if tag != PREP)
    dim_work = 1 << work_width
    block = np.zeros((dim_work, dim_work), dtype=complex)
    offset = anc_index << work_width
    for col in range(dim_work):
        state = np.zeros(1 << circuit.width, dtype=complex)
        state[offset + col] = 1.0
        apply_layers(state, circuit.width, layers)
        full = state.reshape(1 << n_anc, dim_work)
        off_block = np.abs(np.delete(full, anc_index, axis=0)).max() if n_anc else 0.0
        if off_block > 1e-12:
            raise RuntimeError("ancilla bits flipped; circuit is not purely controlled")
        block[:, col] = full[anc_index]
    return block
