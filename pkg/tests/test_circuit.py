import hypothesis.strategies as st
import pytest
from hypothesis import given

from qnczero.builders.fourier import build_or_exp
from qnczero.builders.or_circuits import build_or
from qnczero.builders.parity import build_parity
from qnczero.circuit.angle import HALF_PI, PI, ZERO, PhaseAngle
from qnczero.circuit.builder import CircuitBuilder, relayer
from qnczero.circuit.ir import Circuit, Gate, GateKind
from qnczero.circuit.metrics import compute_metrics
from qnczero.circuit.normalize import normalize_to_gadget_form
from qnczero.circuit.oracle import OracleSpec
from qnczero.circuit.serialize import circuit_from_json, circuit_to_json
from qnczero.circuit.validate import require_valid, validate
from qnczero.errors import CircuitError
from qnczero.simulator.analysis import states_equal_up_to_global_phase
from qnczero.simulator.runner import run_unitary
from qnczero.verify.harness import input_strings
from strategies import circuits, input_bits


def test_angle_lowest_terms():
    assert PhaseAngle(3, 6) == PhaseAngle(1, 2)
    assert PhaseAngle(-1, 2) == PhaseAngle(3, 2)
    assert PhaseAngle(5, 1) == PI
    assert PhaseAngle.dyadic(1, 2) == PhaseAngle(1, 4)
    assert str(PhaseAngle(-1, 4)) == "7pi/4"


def test_angle_rejects_bad_denominator():
    with pytest.raises(ValueError):
        PhaseAngle(1, 0)


@given(st.integers(-64, 64), st.integers(0, 6))
def test_angle_negation_cancels(num, k):
    a = PhaseAngle.dyadic(num, k)
    assert (a + -a).is_zero()
    assert (a - a) == ZERO
    assert abs(abs(a.phase()) - 1) < 1e-12


def test_quarter_turns_are_exact():
    assert HALF_PI.phase() == 1j
    assert PI.phase() == -1
    assert (HALF_PI * 3).phase() == -1j


def test_layer_conflict_reported():
    circuit = Circuit(4, layers=((Gate(GateKind.NOT, (3,)), Gate(GateKind.HADAMARD, (3,))),),
                      input_qubits=(0, 1, 2, 3))
    report = validate(circuit)
    assert not report.ok
    assert "layer conflict qubit 3" in report.violations


def test_empty_circuit_is_valid():
    assert validate(Circuit(0)).ok
    assert validate(Circuit(2, input_qubits=(0, 1))).ok


def test_undefined_classical_bit_reported():
    circuit = Circuit(1, classical_bit_count=1, layers=((Gate(GateKind.NOT, (0,), cond=0),),),
                      input_qubits=(0,))
    assert "undefined classical bit 0" in validate(circuit).violations


def test_read_in_writing_layer_reported():
    layer = (Gate(GateKind.MEASURE_A, (0,), angle=ZERO, cbit=0), Gate(GateKind.NOT, (1,), cond=0))
    circuit = Circuit(2, classical_bit_count=1, layers=(layer,), input_qubits=(0, 1))
    assert "layer conflict classical bit 0" in validate(circuit).violations


def test_fanout_onto_its_control_rejected():
    circuit = Circuit(2, layers=((Gate(GateKind.FANOUT, (0, 0)),),), input_qubits=(0, 1))
    assert not validate(circuit).ok
    with pytest.raises(CircuitError):
        require_valid(circuit)


def test_registers_must_cover_qubits():
    circuit = Circuit(3, input_qubits=(0,), output_qubits=(0, 1))
    violations = validate(circuit).violations
    assert "input, output and ancilla registers overlap" in violations
    assert "registers do not cover all qubits" in violations


def test_builder_rejects_read_before_write():
    b = CircuitBuilder()
    b.add_inputs(1)
    with pytest.raises(CircuitError):
        b.not_(0, cond=0)


def test_builder_places_gates_asap():
    b = CircuitBuilder()
    q = b.add_inputs(4)
    b.hadamard(q[0])
    b.hadamard(q[1])
    b.cnot(q[0], q[2])
    b.not_(q[3])
    circuit = b.build()
    assert [len(layer) for layer in circuit.layers] == [3, 1]


def test_single_fanout_metrics():
    circuit = Circuit(4, layers=((Gate(GateKind.FANOUT, (0, 1, 2, 3)),),), input_qubits=(0, 1, 2, 3))
    metrics = compute_metrics(circuit)
    assert (metrics.elementary_size, metrics.depth) == (4, 1)


def test_parity_three_metrics():
    metrics = compute_metrics(build_parity(3, "111"))
    assert metrics.elementary_size == 12
    assert metrics.depth == 3
    assert metrics.qubit_count == 4


def test_or_exp_three_qubit_count():
    assert compute_metrics(build_or_exp(3)).qubit_count == 23


def test_oracles_kept_out_of_size():
    b = CircuitBuilder()
    q = b.add_inputs(3)
    b.oracle(OracleSpec.make("phase_flag_zero", width=3, inverse=False), q)
    b.hadamard(q[0])
    metrics = compute_metrics(b.build())
    assert metrics.elementary_size == 1
    assert metrics.oracle_count == 1
    assert metrics.oracle_qubit_total == 3
    assert metrics.depth == 2


def test_readers_of_one_bit_share_a_layer():
    b = CircuitBuilder()
    q = b.add_inputs(3)
    c = b.measure_a(q[0], ZERO)
    b.not_(q[1], cond=c)
    b.not_(q[2], cond=c)
    circuit = b.build()
    assert [len(layer) for layer in circuit.layers] == [1, 2]
    assert compute_metrics(circuit).depth == 2


@given(circuits(measurements=True))
def test_depth_ignores_relayering(circuit):
    sequential = Circuit(circuit.qubit_count, circuit.classical_bit_count,
                         tuple((g,) for g in circuit.gates()), circuit.input_qubits,
                         circuit.output_qubits, circuit.ancilla_qubits)
    metrics = compute_metrics(circuit)
    assert validate(circuit).ok
    assert metrics.depth <= len(circuit.layers)
    assert compute_metrics(sequential).depth == metrics.depth
    assert compute_metrics(relayer(sequential)).depth == metrics.depth


@given(circuits(), circuits())
def test_size_additive(a, b):
    if a.qubit_count != b.qubit_count:
        b = relayer(Circuit(a.qubit_count, input_qubits=a.input_qubits,
                            ancilla_qubits=a.ancilla_qubits))
    joined = a.then(b)
    assert compute_metrics(joined).elementary_size == \
        compute_metrics(a).elementary_size + compute_metrics(b).elementary_size


@given(circuits(max_width=8), st.data())
def test_inverse_undoes_circuit(circuit, data):
    x = data.draw(input_bits(len(circuit.input_qubits)))
    state = run_unitary(circuit.then(circuit.inverse()), x)
    assert state.terms.keys() == {int(x[::-1], 2)}


def test_inverse_rejects_measurements():
    b = CircuitBuilder()
    b.add_inputs(1)
    b.measure_a(0, ZERO)
    with pytest.raises(CircuitError):
        b.build().inverse()


def test_parity_sandwich_becomes_gadget():
    gadget = normalize_to_gadget_form(build_parity(3, "111"))
    gates = list(gadget.gates())
    assert len(gates) == 1
    assert gates[0].kind is GateKind.PARITY
    assert gates[0].sources == (0, 1, 2)
    assert gates[0].target == 3


def test_bare_fanout_untouched():
    circuit = Circuit(3, layers=((Gate(GateKind.FANOUT, (0, 1, 2)),),), input_qubits=(0, 1, 2))
    assert normalize_to_gadget_form(circuit) is circuit


def test_gadget_form_keeps_or_exp_semantics():
    gate_level = build_or_exp(3)
    gadget = normalize_to_gadget_form(gate_level)
    assert gadget.qubit_count == gate_level.qubit_count
    assert compute_metrics(gadget).elementary_size < compute_metrics(gate_level).elementary_size
    for x in input_strings(3):
        assert states_equal_up_to_global_phase(run_unitary(gate_level, x), run_unitary(gadget, x))


def test_gadget_form_is_valid_and_equivalent_for_or():
    gate_level = build_or(5)
    gadget = normalize_to_gadget_form(gate_level)
    assert validate(gadget).ok
    for x in ("00000", "10000", "01101", "11111"):
        assert states_equal_up_to_global_phase(run_unitary(gate_level, x), run_unitary(gadget, x))


@given(circuits(measurements=True))
def test_json_round_trip_is_byte_identical(circuit):
    text = circuit_to_json(circuit)
    again = circuit_from_json(text)
    assert again == circuit
    assert circuit_to_json(again) == text


def test_json_schema_keys():
    text = circuit_to_json(build_parity(2, "11"))
    for key in ('"qubits":3', '"inputs":[0,1]', '"outputs":[2]', '"layers":'):
        assert key in text


def test_malformed_json_rejected():
    with pytest.raises(CircuitError):
        circuit_from_json('{"qubits": 2}')
