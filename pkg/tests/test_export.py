from pathlib import Path

import pytest

from umtrace import (PauliString, attach_observable, build, export_circuit,
                     imaginary_mode, parse_circuit)
from umtrace.circuits import Circuit, CircuitMeta

GOLDEN = Path(__file__).parent / "golden"


def empty_circuit():
    meta = CircuitMeta(m=2, n=1, s=1, proposition=1, policy="greedy", rounds=0)
    return Circuit(width=3, ancillas=(0,), registers=((1,), (2,)),
                   layers=(), tags=(), round_ends=(), meta=meta)


class TestTextFormat:
    def test_empty_circuit_is_header_only(self):
        text = export_circuit(empty_circuit())
        assert text.count("\n") == 1
        assert text.startswith("circuit prop=1 m=2 n=1 s=1")

    def test_golden_distillation_circuit(self):
        golden = (GOLDEN / "distillation_m5_n2_s2_prop1.txt").read_text()
        assert export_circuit(build(5, 2, 2, 1), "text") == golden

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            export_circuit(build(2, 1, 1), "svg")

    @pytest.mark.parametrize("proposition", [1, 2])
    @pytest.mark.parametrize("m,n,s", [(2, 1, 1), (5, 2, 2), (8, 1, 3),
                                       (9, 2, 4)])
    def test_roundtrip_byte_identical(self, m, n, s, proposition):
        circuit = build(m, n, s, proposition)
        text = export_circuit(circuit)
        again = parse_circuit(text)
        assert export_circuit(again) == text
        assert again == circuit

    def test_roundtrip_with_pauli_and_phase(self):
        circuit = imaginary_mode(
            attach_observable(build(4, 2, 2, 2), PauliString("XZ"), 3))
        text = export_circuit(circuit)
        again = parse_circuit(text)
        assert again == circuit
        assert export_circuit(again) == text

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_circuit("not a circuit\n")
        with pytest.raises(ValueError):
            parse_circuit("")

    def test_rotation_gate_roundtrip(self):
        from umtrace.circuits import Gate
        base = build(2, 1, 1)
        with_ry = base.with_layers([(Gate("RY", (1,), param=0.8147),)],
                                   ["prep"])
        text = export_circuit(with_ry)
        assert "RY(0.8147) (1,1)" in text
        assert parse_circuit(text) == with_ry


class TestQasmFormat:
    def test_gate_names(self):
        circuit = imaginary_mode(
            attach_observable(build(3, 2, 1), PauliString("XY")))
        qasm = export_circuit(circuit, "qasm")
        assert "OPENQASM 2.0;" in qasm
        assert "cswap a[0]," in qasm
        assert "cx a[0]," in qasm          # controlled X
        assert "cy a[0]," in qasm          # controlled Y
        assert "sdg a[0];" in qasm         # the -i phase gate
        assert "h a[0];" in qasm

    def test_controlled_z_name(self):
        qasm = export_circuit(attach_observable(build(2, 1, 1),
                                                PauliString("Z")), "qasm")
        assert "cz a[0],w[0];" in qasm

    def test_deterministic(self):
        a = export_circuit(build(6, 2, 3, 2), "qasm")
        b = export_circuit(build(6, 2, 3, 2), "qasm")
        assert a == b
