from collections import defaultdict

from qnczero.circuit.builder import relayer
from qnczero.circuit.ir import Circuit, Gate, GateKind
from qnczero.circuit.validate import require_valid


def _is_plain_hadamard(gate):
    return gate.kind is GateKind.HADAMARD and gate.cond is None


def normalize_to_gadget_form(circuit: Circuit) -> Circuit:
    """Replace every Hadamard / fan-out / Hadamard sandwich by a parity gadget.

    A fan-out qualifies when, on every one of its qubits, the gate right
    before it and the gate right after it are unconditioned Hadamards. The
    sandwich maps the control to control xor parity(targets) and leaves the
    targets alone, so it becomes ParityGadget(sources=targets, target=control).
    """
    require_valid(circuit)
    gates = list(circuit.gates())
    on_qubit = defaultdict(list)
    position = {}
    for index, gate in enumerate(gates):
        for q in gate.qubits:
            position[(index, q)] = len(on_qubit[q])
            on_qubit[q].append(index)

    consumed = set()
    replaced = {}
    for index, gate in enumerate(gates):
        if gate.kind is not GateKind.FANOUT or gate.cond is not None:
            continue
        around = []
        for q in gate.qubits:
            seq = on_qubit[q]
            pos = position[(index, q)]
            if pos == 0 or pos + 1 >= len(seq):
                break
            before, after = seq[pos - 1], seq[pos + 1]
            if before in consumed or after in consumed:
                break
            if not (_is_plain_hadamard(gates[before]) and _is_plain_hadamard(gates[after])):
                break
            around.extend((before, after))
        else:
            consumed.update(around)
            replaced[index] = Gate(GateKind.PARITY, (*gate.targets, gate.control))

    if not replaced:
        return circuit
    kept = (replaced.get(i, g) for i, g in enumerate(gates) if i not in consumed)
    return relayer(circuit, kept)
