"""Dense state-vector simulation, used to cross-check the sparse simulator.

Index bit q of the state vector is qubit q. The vector is reshaped to one axis
per qubit (axis w-1-q holds qubit q) for one-qubit and oracle blocks.
"""
import numpy as np

from qnczero.circuit.ir import Circuit, GateKind
from qnczero.constants import DENSE_QUBIT_LIMIT, SNAP_TOLERANCE
from qnczero.errors import SimulationError
from qnczero.simulator.state import SparseState

H_MATRIX = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


class DenseState:
    def __init__(self, width, label=0):
        if width > DENSE_QUBIT_LIMIT:
            raise SimulationError(f'dense mode supports at most {DENSE_QUBIT_LIMIT} qubits, got {width}')
        self.width = width
        self.vector = np.zeros(1 << width, dtype=complex)
        self.vector[label] = 1.0
        self.index = np.arange(1 << width)

    def _bits(self, qubit):
        return (self.index >> qubit) & 1

    def apply_matrix(self, matrix, qubits, mask=None):
        """Apply a 2^k block; qubits[i] is bit i of the block index."""
        w = self.width
        k = len(qubits)
        psi = self.vector.reshape([2] * w)
        axes = [w - 1 - q for q in reversed(qubits)]
        psi = np.moveaxis(psi, axes, list(range(w - k, w)))
        shape = psi.shape
        flat = psi.reshape(-1, 1 << k) @ matrix.T
        psi = np.moveaxis(flat.reshape(shape), list(range(w - k, w)), axes)
        new = psi.reshape(-1)
        if mask is not None:
            new = np.where(mask, new, self.vector)
        self.vector = np.ascontiguousarray(new)

    def apply_permutation(self, new_index, mask=None):
        if mask is not None:
            new_index = np.where(mask, new_index, self.index)
        out = np.zeros_like(self.vector)
        out[new_index] = self.vector
        self.vector = out

    def apply_phase(self, phases, mask=None):
        if mask is not None:
            phases = np.where(mask, phases, 1.0)
        self.vector = self.vector * phases

    def local_values(self, qubits):
        v = np.zeros_like(self.index)
        for i, q in enumerate(qubits):
            v |= self._bits(q) << i
        return v

    def apply_gate(self, gate, mask=None):
        q = gate.qubits
        kind = gate.kind
        if kind is GateKind.HADAMARD:
            self.apply_matrix(H_MATRIX, q, mask)
        elif kind is GateKind.NOT:
            self.apply_permutation(self.index ^ (1 << q[0]), mask)
        elif kind is GateKind.PHASE:
            self.apply_phase(np.where(self._bits(q[0]) == 1, gate.angle.phase(), 1.0), mask)
        elif kind is GateKind.CONTROLLED_PHASE:
            both = (self._bits(q[0]) & self._bits(q[1])) == 1
            self.apply_phase(np.where(both, gate.angle.phase(), 1.0), mask)
        elif kind is GateKind.FANOUT:
            tmask = sum(1 << t for t in gate.targets)
            self.apply_permutation(np.where(self._bits(gate.control) == 1, self.index ^ tmask,
                                            self.index), mask)
        elif kind is GateKind.PARITY:
            parity = np.zeros_like(self.index)
            for s in gate.sources:
                parity ^= self._bits(s)
            self.apply_permutation(self.index ^ (parity << gate.target), mask)
        elif kind is GateKind.ORACLE:
            action = gate.oracle.action()
            local = self.local_values(q)
            if action.kind == "permutation":
                clear = sum(1 << x for x in q)
                table = np.asarray(action.permutation)
                mapped = table[local]
                new_index = self.index & ~clear
                for i, x in enumerate(q):
                    new_index |= ((mapped >> i) & 1) << x
                self.apply_permutation(new_index, mask)
            elif action.kind == "diagonal":
                self.apply_phase(np.asarray(action.diagonal)[local], mask)
            else:
                self.apply_matrix(np.asarray(action.matrix), q, mask)
        else:
            raise SimulationError(f'{kind.value} is not a unitary gate')

    def to_sparse(self):
        nz = np.flatnonzero(np.abs(self.vector) > SNAP_TOLERANCE)
        return SparseState.from_terms(self.width, {int(i): complex(self.vector[i]) for i in nz})


def run_dense(circuit: Circuit, input_bits: str, coherent=False) -> SparseState:
    """Dense simulation; measurements only in coherent form."""
    label = 0
    if len(input_bits) != len(circuit.input_qubits):
        raise SimulationError(f'expected {len(circuit.input_qubits)} input bits, got {len(input_bits)}')
    for ch, q in zip(input_bits, circuit.input_qubits):
        if ch == "1":
            label |= 1 << q
    state = DenseState(circuit.qubit_count, label)
    controls = {}
    for gate in circuit.gates():
        if gate.kind is GateKind.MEASURE_A:
            if not coherent:
                raise SimulationError('dense mode runs measurements only coherently')
            qubit = gate.qubits[0]
            state.apply_phase(np.where(state._bits(qubit) == 1, (-gate.angle).phase(), 1.0))
            state.apply_matrix(H_MATRIX, (qubit,))
            controls[gate.cbit] = qubit
            continue
        mask = None
        if gate.cond is not None:
            if gate.cond not in controls:
                raise SimulationError(f'classical bit {gate.cond} is not available')
            mask = state._bits(controls[gate.cond]) == 1
        state.apply_gate(gate, mask)
    return state.to_sparse()
