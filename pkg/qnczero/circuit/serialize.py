import json

from qnczero.circuit.angle import PhaseAngle
from qnczero.circuit.ir import Circuit, Gate, GateKind
from qnczero.circuit.oracle import OracleSpec
from qnczero.errors import CircuitError


def gate_to_dict(gate: Gate):
    out = {"kind": gate.kind.value, "qubits": list(gate.qubits)}
    if gate.angle is not None:
        out["angle"] = gate.angle.to_dict()
    if gate.cbit is not None:
        out["cbit"] = gate.cbit
    if gate.cond is not None:
        out["cond"] = gate.cond
    if gate.oracle is not None:
        out["oracle"] = gate.oracle.to_dict()
    return out


def gate_from_dict(data) -> Gate:
    angle = data.get("angle")
    oracle = data.get("oracle")
    return Gate(
        GateKind.from_str(data["kind"]),
        tuple(int(q) for q in data["qubits"]),
        angle=PhaseAngle(angle["num"], angle["den"]) if angle is not None else None,
        cbit=data.get("cbit"),
        cond=data.get("cond"),
        oracle=OracleSpec.from_dict(oracle) if oracle is not None else None,
    )


def circuit_to_dict(circuit: Circuit):
    return {
        "name": circuit.name,
        "qubits": circuit.qubit_count,
        "cbits": circuit.classical_bit_count,
        "inputs": list(circuit.input_qubits),
        "outputs": list(circuit.output_qubits),
        "layers": [[gate_to_dict(g) for g in layer] for layer in circuit.layers],
    }


def circuit_from_dict(data) -> Circuit:
    try:
        width = int(data["qubits"])
        inputs = tuple(data["inputs"])
        outputs = tuple(data["outputs"])
        layers = tuple(tuple(gate_from_dict(g) for g in layer) for layer in data["layers"])
    except (KeyError, TypeError) as e:
        raise CircuitError(f'malformed circuit JSON: {e}') from e
    taken = set(inputs) | set(outputs)
    return Circuit(
        qubit_count=width,
        classical_bit_count=int(data.get("cbits", 0)),
        layers=layers,
        input_qubits=inputs,
        output_qubits=outputs,
        ancilla_qubits=tuple(q for q in range(width) if q not in taken),
        name=data.get("name", "circuit"),
    )


def circuit_to_json(circuit: Circuit) -> str:
    return json.dumps(circuit_to_dict(circuit), sort_keys=True, separators=(",", ":"))


def circuit_from_json(text) -> Circuit:
    return circuit_from_dict(json.loads(text))
