from dataclasses import dataclass, field
from typing import Dict, List, Optional

from qnczero.circuit.angle import PhaseAngle
from qnczero.circuit.ir import Circuit, Gate, GateKind
from qnczero.constants import COMPARE_TOLERANCE, PRUNE_TOLERANCE, SNAP_TOLERANCE
from qnczero.errors import SimulationError
from qnczero.simulator.sparse import apply_gate
from qnczero.simulator.state import SparseState
from qnczero.utils import build_logger

logger = build_logger("qnczero.simulator")


@dataclass
class SimulationConfig:
    check_norm: bool = field(default=True, metadata={"help": "Assert the norm after every layer."})
    snap_tolerance: float = field(default=SNAP_TOLERANCE,
                                  metadata={"help": "Amplitudes below this are dropped."})
    prune_tolerance: float = field(default=PRUNE_TOLERANCE,
                                   metadata={"help": "Branches below this probability are pruned."})
    norm_tolerance: float = field(default=COMPARE_TOLERANCE,
                                  metadata={"help": "Allowed drift of the squared norm from 1."})


DEFAULT_CONFIG = SimulationConfig()


@dataclass
class BranchOutcome:
    outcomes: Dict[int, int]
    probability: float
    final_state: SparseState


@dataclass
class BranchRun:
    """All surviving branches of one run plus the probability mass that was pruned."""
    branches: List[BranchOutcome]
    pruned_probability: float = 0.0

    @property
    def total_probability(self):
        return sum(b.probability for b in self.branches) + self.pruned_probability

    def __iter__(self):
        return iter(self.branches)

    def __len__(self):
        return len(self.branches)

    def __getitem__(self, index):
        return self.branches[index]


def initial_state(circuit: Circuit, input_bits: str, config=DEFAULT_CONFIG) -> SparseState:
    if len(input_bits) != len(circuit.input_qubits):
        raise SimulationError(f'expected {len(circuit.input_qubits)} input bits, got {len(input_bits)}')
    label = 0
    for ch, q in zip(input_bits, circuit.input_qubits):
        if ch not in "01":
            raise SimulationError(f'input must be a bit string, got {input_bits!r}')
        if ch == "1":
            label |= 1 << q
    state = SparseState.basis(circuit.qubit_count, label)
    state.snap = config.snap_tolerance
    return state


def _start(circuit, input_bits, initial, config):
    if initial is not None:
        if initial.width != circuit.qubit_count:
            raise SimulationError(f'initial state has width {initial.width}, circuit {circuit.qubit_count}')
        return initial.copy()
    return initial_state(circuit, input_bits, config)


def _check_norm(state, config, where):
    if not config.check_norm:
        return
    norm = state.norm_squared()
    if abs(norm - 1.0) > config.norm_tolerance:
        raise SimulationError(f'norm drifted to {norm:.12f} after {where}')


def _rotate_into_a_basis(state, qubit, angle: PhaseAngle):
    """Z(-theta) then H: the A(theta) basis vector for outcome b becomes |b>."""
    apply_gate(state, Gate(GateKind.PHASE, (qubit,), angle=-angle))
    apply_gate(state, Gate(GateKind.HADAMARD, (qubit,)))


def _rotate_out_of_a_basis(state, qubit, angle: PhaseAngle):
    apply_gate(state, Gate(GateKind.HADAMARD, (qubit,)))
    apply_gate(state, Gate(GateKind.PHASE, (qubit,), angle=angle))


def run_unitary(circuit: Circuit, input_bits: str = "", initial: Optional[SparseState] = None,
                config=DEFAULT_CONFIG) -> SparseState:
    if circuit.has_measurements():
        raise SimulationError(f'{circuit.name} contains measurements; use run_branches or coherent_run')
    state = _start(circuit, input_bits, initial, config)
    for index, layer in enumerate(circuit.layers):
        for gate in layer:
            apply_gate(state, gate)
        _check_norm(state, config, f"layer {index}")
    return state


def coherent_run(circuit: Circuit, input_bits: str = "", initial: Optional[SparseState] = None,
                 config=DEFAULT_CONFIG) -> SparseState:
    """Deferred-measurement run: each A(theta) measurement becomes a basis rotation
    and every gate conditioned on its bit becomes controlled by the measured qubit."""
    state = _start(circuit, input_bits, initial, config)
    controls = {}
    for index, layer in enumerate(circuit.layers):
        for gate in layer:
            if gate.kind is GateKind.MEASURE_A:
                _rotate_into_a_basis(state, gate.qubits[0], gate.angle)
                controls[gate.cbit] = gate.qubits[0]
            else:
                apply_gate(state, gate, controls=controls)
        _check_norm(state, config, f"layer {index}")
    return state


def run_branches(circuit: Circuit, input_bits: str = "", initial: Optional[SparseState] = None,
                 config=DEFAULT_CONFIG) -> BranchRun:
    """Depth-first enumeration over A(theta) measurement outcomes, outcome 0 first.

    Outcome 0 projects onto (|0> + e^{i theta}|1>)/sqrt2 and outcome 1 onto
    (|0> - e^{i theta}|1>)/sqrt2; the measured qubit is left in that vector.
    """
    gates = list(circuit.gates())
    run = BranchRun([])
    stack = [(0, _start(circuit, input_bits, initial, config), {}, 1.0)]
    while stack:
        index, state, outcomes, prob = stack.pop()
        while index < len(gates):
            gate = gates[index]
            index += 1
            if gate.kind is not GateKind.MEASURE_A:
                apply_gate(state, gate, classical=outcomes)
                continue
            qubit = gate.qubits[0]
            _rotate_into_a_basis(state, qubit, gate.angle)
            p_one = state.probability(qubit, 1)
            forks = []
            for value, p in ((0, 1.0 - p_one), (1, p_one)):
                if prob * p < config.prune_tolerance:
                    run.pruned_probability += prob * p
                else:
                    forks.append((value, p))
            if not forks:
                raise SimulationError('every outcome of a measurement was pruned')
            for value, p in reversed(forks[1:]):
                child = state.copy()
                child.project(qubit, value)
                _rotate_out_of_a_basis(child, qubit, gate.angle)
                stack.append((index, child, {**outcomes, gate.cbit: value}, prob * p))
            value, p = forks[0]
            state.project(qubit, value)
            _rotate_out_of_a_basis(state, qubit, gate.angle)
            outcomes = {**outcomes, gate.cbit: value}
            prob *= p
        _check_norm(state, config, "branch end")
        run.branches.append(BranchOutcome(outcomes, prob, state))
    logger.debug("%s: %d branches, pruned mass %.3g", circuit.name, len(run), run.pruned_probability)
    return run
