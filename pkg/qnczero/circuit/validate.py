from dataclasses import dataclass, field
from typing import List

from qnczero.circuit.ir import ANGLED_KINDS, Circuit, GateKind
from qnczero.errors import CircuitError


@dataclass
class ValidityReport:
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok

    def add(self, message):
        self.violations.append(message)


def validate(circuit: Circuit) -> ValidityReport:
    """Check the structural invariants of a circuit; never raises."""
    report = ValidityReport()
    width = circuit.qubit_count

    inputs, outputs, ancillas = (set(circuit.input_qubits), set(circuit.output_qubits),
                                 set(circuit.ancilla_qubits))
    if len(inputs) != len(circuit.input_qubits) or len(outputs) != len(circuit.output_qubits):
        report.add("duplicate qubit in input or output register")
    if inputs & outputs or inputs & ancillas or outputs & ancillas:
        report.add("input, output and ancilla registers overlap")
    if inputs | outputs | ancillas != set(range(width)):
        report.add("registers do not cover all qubits")

    written = {}
    for index, layer in enumerate(circuit.layers):
        layer_qubits = set()
        layer_writes = set()
        layer_reads = set()
        for gate in layer:
            if len(set(gate.qubits)) != len(gate.qubits):
                report.add(f"repeated qubit in gate {gate}")
            for q in gate.qubits:
                if not 0 <= q < width:
                    report.add(f"qubit {q} out of range")
                if q in layer_qubits:
                    report.add(f"layer conflict qubit {q}")
                layer_qubits.add(q)
            if gate.kind in (GateKind.FANOUT, GateKind.PARITY) and gate.arity < 2:
                report.add(f"{gate.kind.value} needs at least 2 qubits")
            if gate.kind in (GateKind.HADAMARD, GateKind.NOT, GateKind.PHASE,
                             GateKind.MEASURE_A) and gate.arity != 1:
                report.add(f"{gate.kind.value} acts on exactly one qubit")
            if gate.kind is GateKind.CONTROLLED_PHASE and gate.arity != 2:
                report.add("controlled_phase acts on exactly two qubits")
            if gate.kind in ANGLED_KINDS and gate.angle is None:
                report.add(f"{gate.kind.value} without an angle")
            if gate.kind is GateKind.ORACLE and gate.oracle is None:
                report.add("oracle gate without an oracle spec")
            if gate.kind is GateKind.MEASURE_A:
                c = gate.cbit
                if c is None or not 0 <= c < circuit.classical_bit_count:
                    report.add(f"measurement writes undefined classical bit {c}")
                elif c in written or c in layer_writes:
                    report.add(f"classical bit {c} written twice")
                else:
                    layer_writes.add(c)
            if gate.cond is not None:
                if gate.cond not in written:
                    report.add(f"undefined classical bit {gate.cond}")
                layer_reads.add(gate.cond)
        for c in layer_reads & layer_writes:
            report.add(f"layer conflict classical bit {c}")
        for c in layer_writes:
            written[c] = index
    return report


def require_valid(circuit: Circuit):
    report = validate(circuit)
    if not report.ok:
        raise CircuitError(f'invalid circuit {circuit.name}: ' + "; ".join(report.violations[:5]))
    return circuit
