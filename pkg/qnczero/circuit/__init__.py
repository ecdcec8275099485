from qnczero.circuit.angle import PhaseAngle
from qnczero.circuit.builder import CircuitBuilder, relayer
from qnczero.circuit.ir import Circuit, Gate, GateKind
from qnczero.circuit.metrics import CircuitMetrics, compute_metrics
from qnczero.circuit.normalize import normalize_to_gadget_form
from qnczero.circuit.oracle import OracleAction, OracleSpec, register_oracle, resolve_oracle
from qnczero.circuit.serialize import circuit_from_json, circuit_to_json
from qnczero.circuit.validate import ValidityReport, require_valid, validate
