from dataclasses import asdict, dataclass

from qnczero.circuit.ir import Circuit
from qnczero.circuit.validate import require_valid


@dataclass(frozen=True)
class CircuitMetrics:
    elementary_size: int
    depth: int
    qubit_count: int
    oracle_count: int = 0
    oracle_qubit_total: int = 0

    def to_dict(self):
        return asdict(self)


def compute_metrics(circuit: Circuit) -> CircuitMetrics:
    """Size and dependency-DAG depth.

    Gate B depends on gate A when A precedes B and they share a qubit, or A
    writes the classical bit B reads, or A reads the bit B writes. Readers of
    one bit do not depend on each other. Oracle gates count depth 1 and are
    kept out of the elementary size.
    """
    require_valid(circuit)
    qubit_depth = [0] * circuit.qubit_count
    cbit_write_depth = {}
    cbit_read_depth = {}
    size = depth = oracle_count = oracle_total = 0
    for gate in circuit.gates():
        d = max((qubit_depth[q] for q in gate.qubits), default=0)
        if gate.cond is not None:
            d = max(d, cbit_write_depth[gate.cond])
        if gate.cbit is not None:
            d = max(d, cbit_read_depth.get(gate.cbit, 0))
        d += 1
        for q in gate.qubits:
            qubit_depth[q] = d
        if gate.cond is not None:
            cbit_read_depth[gate.cond] = max(cbit_read_depth.get(gate.cond, 0), d)
        if gate.cbit is not None:
            cbit_write_depth[gate.cbit] = d
        depth = max(depth, d)
        if gate.is_elementary():
            size += gate.arity
        else:
            oracle_count += 1
            oracle_total += gate.arity
    return CircuitMetrics(size, depth, circuit.qubit_count, oracle_count, oracle_total)
