from typing import Dict, List, Optional, Sequence

from qnczero.circuit.angle import PhaseAngle
from qnczero.circuit.ir import Circuit, Gate, GateKind
from qnczero.circuit.oracle import OracleSpec
from qnczero.errors import CircuitError


class CircuitBuilder:
    """Single-owner mutable builder.

    Every appended gate is placed in the earliest layer after all gates it
    depends on: gates sharing a qubit, the measurement writing a classical bit
    it reads, and, for a measurement, every earlier reader of the bit.
    """

    def __init__(self, name="circuit"):
        self.name = name
        self.qubit_count = 0
        self.cbit_count = 0
        self.layers: List[List[Gate]] = []
        self.inputs: List[int] = []
        self.outputs: List[int] = []
        self._front: List[int] = []
        self._cbit_written: Dict[int, int] = {}
        self._cbit_read: Dict[int, int] = {}

    # registers

    def _allocate(self, count):
        start = self.qubit_count
        self.qubit_count += count
        self._front.extend([0] * count)
        return list(range(start, start + count))

    def add_inputs(self, count):
        qubits = self._allocate(count)
        self.inputs.extend(qubits)
        return qubits

    def ancillas(self, count):
        return self._allocate(count)

    def ancilla(self):
        return self._allocate(1)[0]

    def mark_outputs(self, qubits):
        for q in qubits:
            if q in self.inputs:
                raise CircuitError(f'input qubit {q} cannot be an output')
        self.outputs.extend(qubits)

    def new_cbit(self):
        self.cbit_count += 1
        return self.cbit_count - 1

    # placement

    def append(self, gate: Gate):
        layer = max((self._front[q] for q in gate.qubits), default=0)
        if gate.cond is not None:
            if gate.cond not in self._cbit_written:
                raise CircuitError(f'gate reads classical bit {gate.cond} before it is written')
            layer = max(layer, self._cbit_written[gate.cond] + 1)
        if gate.cbit is not None:
            if gate.cbit in self._cbit_written:
                raise CircuitError(f'classical bit {gate.cbit} written twice')
            layer = max(layer, self._cbit_read.get(gate.cbit, -1) + 1)
        while len(self.layers) <= layer:
            self.layers.append([])
        self.layers[layer].append(gate)
        for q in gate.qubits:
            self._front[q] = layer + 1
        if gate.cond is not None:
            self._cbit_read[gate.cond] = max(self._cbit_read.get(gate.cond, -1), layer)
        if gate.cbit is not None:
            self._cbit_written[gate.cbit] = layer
        return gate

    def hadamard(self, qubit, cond=None):
        return self.append(Gate(GateKind.HADAMARD, (qubit,), cond=cond))

    def not_(self, qubit, cond=None):
        return self.append(Gate(GateKind.NOT, (qubit,), cond=cond))

    def phase(self, qubit, angle: PhaseAngle, cond=None):
        if angle.is_zero():
            return None
        return self.append(Gate(GateKind.PHASE, (qubit,), angle=angle, cond=cond))

    def cphase(self, a, b, angle: PhaseAngle, cond=None):
        if angle.is_zero():
            return None
        return self.append(Gate(GateKind.CONTROLLED_PHASE, (a, b), angle=angle, cond=cond))

    def fanout(self, control, targets: Sequence[int], cond=None):
        """Copy control onto targets; a fan-out with no targets is dropped."""
        if not targets:
            return None
        return self.append(Gate(GateKind.FANOUT, (control, *targets), cond=cond))

    def cnot(self, control, target, cond=None):
        return self.fanout(control, [target], cond=cond)

    def parity(self, sources: Sequence[int], target, cond=None):
        return self.append(Gate(GateKind.PARITY, (*sources, target), cond=cond))

    def parity_gates(self, sources: Sequence[int], target):
        """target ^= parity(sources) as Hadamards on every wire around one fan-out."""
        wires = [target, *sources]
        for q in wires:
            self.hadamard(q)
        self.fanout(target, list(sources))
        for q in wires:
            self.hadamard(q)

    def measure_a(self, qubit, angle: PhaseAngle):
        cbit = self.new_cbit()
        self.append(Gate(GateKind.MEASURE_A, (qubit,), angle=angle, cbit=cbit))
        return cbit

    def oracle(self, spec: OracleSpec, qubits: Sequence[int], cond=None):
        return self.append(Gate(GateKind.ORACLE, tuple(qubits), cond=cond, oracle=spec))

    # composition

    def embed(self, sub: Circuit, inputs: Sequence[int], qubit_map: Optional[Sequence[int]] = None):
        """Replay sub onto this builder.

        Sub inputs land on the given host qubits; every other sub qubit gets
        a fresh host ancilla unless an explicit qubit_map is passed. Returns
        the map from sub qubit ids to host qubit ids.
        """
        if qubit_map is None:
            if len(inputs) != len(sub.input_qubits):
                raise CircuitError(
                    f'{sub.name} expects {len(sub.input_qubits)} inputs, got {len(inputs)}')
            mapping = [None] * sub.qubit_count
            for s, h in zip(sub.input_qubits, inputs):
                mapping[s] = h
            for s in range(sub.qubit_count):
                if mapping[s] is None:
                    mapping[s] = self.ancilla()
        else:
            mapping = list(qubit_map)
        cbit_map = {c: self.new_cbit() for c in range(sub.classical_bit_count)}
        for gate in sub.gates():
            self.append(gate.remap(mapping, cbit_map))
        return mapping

    def build(self) -> Circuit:
        outputs = set(self.outputs)
        inputs = set(self.inputs)
        ancillas = tuple(q for q in range(self.qubit_count) if q not in outputs and q not in inputs)
        return Circuit(
            qubit_count=self.qubit_count,
            classical_bit_count=self.cbit_count,
            layers=tuple(tuple(layer) for layer in self.layers if layer),
            input_qubits=tuple(self.inputs),
            output_qubits=tuple(self.outputs),
            ancilla_qubits=ancillas,
            name=self.name,
        )


def relayer(circuit: Circuit, gates=None) -> Circuit:
    """Rebuild a circuit with ASAP placement, keeping its registers."""
    builder = CircuitBuilder(circuit.name)
    builder._allocate(circuit.qubit_count)
    builder.inputs = list(circuit.input_qubits)
    builder.outputs = list(circuit.output_qubits)
    builder.cbit_count = circuit.classical_bit_count
    for gate in (circuit.gates() if gates is None else gates):
        builder.append(gate)
    return builder.build()
