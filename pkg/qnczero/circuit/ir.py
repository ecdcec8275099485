"""Gate-level intermediate representation.

A Circuit is an immutable list of layers over integer qubit and classical-bit
ids. Qubit q is bit q of every basis label; in printed bit strings qubit 0 is
the leftmost character.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Optional, Tuple

from qnczero.circuit.angle import PhaseAngle
from qnczero.circuit.oracle import OracleSpec
from qnczero.errors import CircuitError


class GateKind(Enum):
    HADAMARD = "hadamard"
    NOT = "not"
    PHASE = "phase"
    CONTROLLED_PHASE = "controlled_phase"
    FANOUT = "fanout"
    PARITY = "parity"
    MEASURE_A = "measure_a"
    ORACLE = "oracle"

    @classmethod
    def from_str(cls, value):
        for kind in cls:
            if kind.value == value:
                return kind
        raise CircuitError(f'Unknown gate kind: {value}')


ANGLED_KINDS = (GateKind.PHASE, GateKind.CONTROLLED_PHASE, GateKind.MEASURE_A)


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    qubits: Tuple[int, ...]
    angle: Optional[PhaseAngle] = None
    cbit: Optional[int] = None          # written by MEASURE_A
    cond: Optional[int] = None          # gate applies iff this classical bit is 1
    oracle: Optional[OracleSpec] = None

    @property
    def arity(self):
        return len(self.qubits)

    @property
    def control(self):
        """FanOut control qubit."""
        return self.qubits[0]

    @property
    def targets(self):
        """FanOut targets."""
        return self.qubits[1:]

    @property
    def sources(self):
        """ParityGadget sources."""
        return self.qubits[:-1]

    @property
    def target(self):
        """ParityGadget target."""
        return self.qubits[-1]

    def is_elementary(self):
        return self.kind is not GateKind.ORACLE

    def inverse(self):
        if self.kind is GateKind.MEASURE_A:
            raise CircuitError('a measurement has no inverse')
        if self.kind in (GateKind.PHASE, GateKind.CONTROLLED_PHASE):
            return Gate(self.kind, self.qubits, angle=-self.angle, cond=self.cond)
        if self.kind is GateKind.ORACLE:
            return Gate(self.kind, self.qubits, cond=self.cond, oracle=self.oracle.inverted())
        return self

    def remap(self, qubit_map, cbit_map=None):
        def cb(c):
            if c is None or cbit_map is None:
                return c
            return cbit_map[c]
        return Gate(self.kind, tuple(qubit_map[q] for q in self.qubits), angle=self.angle,
                    cbit=cb(self.cbit), cond=cb(self.cond), oracle=self.oracle)

    def __str__(self):
        parts = [self.kind.value]
        if self.angle is not None:
            parts.append(f"({self.angle})")
        parts.append(" " + ",".join(str(q) for q in self.qubits))
        if self.cbit is not None:
            parts.append(f" -> c{self.cbit}")
        if self.cond is not None:
            parts.append(f" if c{self.cond}")
        if self.oracle is not None:
            parts.append(f" [{self.oracle.name}]")
        return "".join(parts)


@dataclass(frozen=True)
class Circuit:
    qubit_count: int
    classical_bit_count: int = 0
    layers: Tuple[Tuple[Gate, ...], ...] = ()
    input_qubits: Tuple[int, ...] = ()
    output_qubits: Tuple[int, ...] = ()
    ancilla_qubits: Tuple[int, ...] = ()
    name: str = field(default="circuit", compare=False)

    def gates(self) -> Iterator[Gate]:
        """All gates in program order."""
        for layer in self.layers:
            yield from layer

    @property
    def gate_count(self):
        return sum(len(layer) for layer in self.layers)

    def has_measurements(self):
        return any(g.kind is GateKind.MEASURE_A for g in self.gates())

    def inverse(self):
        layers = tuple(tuple(g.inverse() for g in reversed(layer)) for layer in reversed(self.layers))
        return Circuit(self.qubit_count, self.classical_bit_count, layers, self.input_qubits,
                       self.output_qubits, self.ancilla_qubits, name=f"{self.name}^-1")

    def then(self, other):
        """Sequential composition over the same register layout."""
        if (other.qubit_count, other.input_qubits, other.output_qubits) != \
                (self.qubit_count, self.input_qubits, self.output_qubits):
            raise CircuitError('cannot concatenate circuits with different register layouts')
        shifted = tuple(
            tuple(g if other.classical_bit_count == 0 else g.remap(
                range(self.qubit_count),
                {c: c + self.classical_bit_count for c in range(other.classical_bit_count)})
                for g in layer)
            for layer in other.layers)
        return Circuit(self.qubit_count, self.classical_bit_count + other.classical_bit_count,
                       self.layers + shifted, self.input_qubits, self.output_qubits,
                       self.ancilla_qubits, name=f"{self.name}+{other.name}")
