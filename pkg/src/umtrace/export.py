"""Deterministic text emission of circuits.

Two formats: `text` (one line per layer, round-trippable through
:func:`parse_circuit`) and `qasm` (qasm-like gate list, export only).
Ancilla qubits print as a1, a2, ...; work qubits as (register, position),
both 1-based.
"""

from __future__ import annotations

import re

from .circuits import (CSWAP_LAYER, PAULI_LAYER, PHASE_LAYER, PREP, Circuit,
                       CircuitMeta, Gate)

TEXT = "text"
QASM = "qasm"
FORMATS = (TEXT, QASM)


def _qubit_name(circuit: Circuit, q: int) -> str:
    n_anc = len(circuit.ancillas)
    if q < n_anc:
        return f"a{q + 1}"
    idx = q - n_anc
    n = circuit.meta.n
    return f"({idx // n + 1},{idx % n + 1})"


def _gate_text(circuit: Circuit, gate: Gate) -> str:
    name = lambda q: _qubit_name(circuit, q)
    if gate.kind == "H":
        return f"H {name(gate.qubits[0])}"
    if gate.kind == "RY":
        return f"RY({gate.param:.12g}) {name(gate.qubits[0])}"
    if gate.kind == "S_PHASE":
        return f"S_PHASE {name(gate.qubits[0])}"
    if gate.kind == "CNOT":
        return f"CNOT {name(gate.qubits[0])}->{name(gate.qubits[1])}"
    if gate.kind == "CSWAP":
        return (f"CSWAP {name(gate.qubits[0])};"
                f"{name(gate.qubits[1])}<->{name(gate.qubits[2])}")
    if gate.kind == "CPAULI":
        return (f"CPAULI-{gate.letter} {name(gate.qubits[0])}"
                f"->{name(gate.qubits[1])}")
    raise ValueError(f"unknown gate kind {gate.kind!r}")


def _header(circuit: Circuit) -> str:
    meta = circuit.meta
    return (f"circuit prop={meta.proposition} m={meta.m} n={meta.n} s={meta.s} "
            f"policy={meta.policy} width={circuit.width} "
            f"ancillas={len(circuit.ancillas)} rounds={meta.rounds} "
            f"pauli={meta.pauli or '-'} pauli_register={meta.pauli_register or '-'} "
            f"imaginary={int(meta.imaginary)}")


def _export_text(circuit: Circuit) -> str:
    lines = [_header(circuit)]
    for k, layer in enumerate(circuit.layers, start=1):
        gates = " | ".join(_gate_text(circuit, g) for g in layer)
        lines.append(f"LAYER {k}: {gates}")
    return "\n".join(lines) + "\n"


_QASM_NAMES = {"X": "cx", "Y": "cy", "Z": "cz"}


def _export_qasm(circuit: Circuit) -> str:
    n_anc = len(circuit.ancillas)
    n_work = circuit.width - n_anc

    def name(q):
        return f"a[{q}]" if q < n_anc else f"w[{q - n_anc}]"

    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg a[{n_anc}];",
        f"qreg w[{n_work}];",
    ]
    for k, layer in enumerate(circuit.layers, start=1):
        lines.append(f"// layer {k}")
        for g in layer:
            q = g.qubits
            if g.kind == "H":
                lines.append(f"h {name(q[0])};")
            elif g.kind == "RY":
                lines.append(f"ry({g.param:.12g}) {name(q[0])};")
            elif g.kind == "S_PHASE":
                lines.append(f"sdg {name(q[0])};")
            elif g.kind == "CNOT":
                lines.append(f"cx {name(q[0])},{name(q[1])};")
            elif g.kind == "CSWAP":
                lines.append(f"cswap {name(q[0])},{name(q[1])},{name(q[2])};")
            elif g.kind == "CPAULI":
                lines.append(f"{_QASM_NAMES[g.letter]} {name(q[0])},{name(q[1])};")
    return "\n".join(lines) + "\n"


def export_circuit(circuit: Circuit, format: str = TEXT) -> str:
    if format == TEXT:
        return _export_text(circuit)
    if format == QASM:
        return _export_qasm(circuit)
    raise ValueError(f"unknown format {format!r}; choose from {FORMATS}")


_HEADER_RE = re.compile(
    r"circuit prop=(?P<prop>\d+) m=(?P<m>\d+) n=(?P<n>\d+) s=(?P<s>\d+) "
    r"policy=(?P<policy>[\w-]+) width=(?P<width>\d+) ancillas=(?P<ancillas>\d+) "
    r"rounds=(?P<rounds>\d+) pauli=(?P<pauli>[\w-]+) "
    r"pauli_register=(?P<pauli_register>[\w-]+) imaginary=(?P<imaginary>[01])")

_NAME_RE = re.compile(r"a(\d+)|\((\d+),(\d+)\)")


def _parse_qubit(token: str, n_anc: int, n: int) -> int:
    match = _NAME_RE.fullmatch(token)
    if not match:
        raise ValueError(f"bad qubit name {token!r}")
    if match.group(1):
        return int(match.group(1)) - 1
    reg, pos = int(match.group(2)), int(match.group(3))
    return n_anc + (reg - 1) * n + (pos - 1)


def _parse_gate(text: str, n_anc: int, n: int) -> Gate:
    text = text.strip()
    if text.startswith("CSWAP "):
        ctrl, targets = text[6:].split(";")
        t1, t2 = targets.split("<->")
        return Gate("CSWAP", tuple(_parse_qubit(t, n_anc, n)
                                   for t in (ctrl, t1, t2)))
    if text.startswith("CNOT "):
        c, t = text[5:].split("->")
        return Gate("CNOT", (_parse_qubit(c, n_anc, n), _parse_qubit(t, n_anc, n)))
    if text.startswith("CPAULI-"):
        letter, rest = text[7], text[9:]
        c, t = rest.split("->")
        return Gate("CPAULI", (_parse_qubit(c, n_anc, n),
                               _parse_qubit(t, n_anc, n)), letter=letter)
    if text.startswith("RY("):
        angle, target = text[3:].split(") ")
        return Gate("RY", (_parse_qubit(target, n_anc, n),), param=float(angle))
    if text.startswith("H "):
        return Gate("H", (_parse_qubit(text[2:], n_anc, n),))
    if text.startswith("S_PHASE "):
        return Gate("S_PHASE", (_parse_qubit(text[8:], n_anc, n),))
    raise ValueError(f"cannot parse gate {text!r}")


def parse_circuit(text: str) -> Circuit:
    """Rebuild a circuit from its `text` export."""
    lines = [l for l in text.splitlines() if l.strip()]
    if not lines:
        raise ValueError("empty circuit text")
    match = _HEADER_RE.fullmatch(lines[0].strip())
    if not match:
        raise ValueError(f"bad circuit header: {lines[0]!r}")
    h = match.groupdict()
    prop, m, n, s = (int(h[k]) for k in ("prop", "m", "n", "s"))
    width, n_anc, rounds = int(h["width"]), int(h["ancillas"]), int(h["rounds"])
    meta = CircuitMeta(
        m=m, n=n, s=s, proposition=prop, policy=h["policy"], rounds=rounds,
        pauli=None if h["pauli"] == "-" else h["pauli"],
        pauli_register=(None if h["pauli_register"] == "-"
                        else int(h["pauli_register"])),
        imaginary=bool(int(h["imaginary"])))
    layers, tags = [], []
    seen_cswap = 0
    for line in lines[1:]:
        body = line.split(":", 1)[1]
        gates = tuple(_parse_gate(g, n_anc, n) for g in body.split(" | "))
        kinds = {g.kind for g in gates}
        if kinds == {"CSWAP"}:
            tags.append(CSWAP_LAYER)
            seen_cswap += 1
        elif kinds == {"CPAULI"}:
            tags.append(PAULI_LAYER)
        elif kinds == {"S_PHASE"}:
            tags.append(PHASE_LAYER)
        else:
            tags.append(PREP)
        layers.append(gates)
    per_round = 1 if prop == 2 else n
    round_ends = []
    count = 0
    for idx, tag in enumerate(tags):
        if tag == CSWAP_LAYER:
            count += 1
            if count % per_round == 0:
                round_ends.append(idx)
    ancillas = tuple(range(n_anc))
    registers = tuple(tuple(n_anc + (i - 1) * n + q for q in range(n))
                      for i in range(1, m + 1))
    return Circuit(width=width, ancillas=ancillas, registers=registers,
                   layers=tuple(layers), tags=tuple(tags),
                   round_ends=tuple(round_ends), meta=meta)
