import math
from typing import Mapping, Optional

from qnczero.circuit.angle import PhaseAngle
from qnczero.circuit.ir import Gate, GateKind
from qnczero.errors import SimulationError
from qnczero.simulator.state import SparseState

SQRT1_2 = 1 / math.sqrt(2)


def _parity(value):
    return bin(value).count("1") & 1


def hadamard_kernel(bit):
    def kernel(terms):
        out = {}
        for l, a in terms.items():
            a *= SQRT1_2
            lo = l & ~bit
            hi = lo | bit
            out[lo] = out.get(lo, 0j) + a
            out[hi] = out.get(hi, 0j) + (-a if l & bit else a)
        return out
    return kernel


def phase_kernel(mask, angle: PhaseAngle):
    ph = angle.phase()

    def kernel(terms):
        return {l: (a * ph if (l & mask) == mask else a) for l, a in terms.items()}
    return kernel


def not_kernel(bit):
    def kernel(terms):
        return {l ^ bit: a for l, a in terms.items()}
    return kernel


def fanout_kernel(control_bit, target_mask):
    def kernel(terms):
        return {(l ^ target_mask if l & control_bit else l): a for l, a in terms.items()}
    return kernel


def parity_kernel(source_mask, target_bit):
    def kernel(terms):
        return {(l ^ target_bit if _parity(l & source_mask) else l): a for l, a in terms.items()}
    return kernel


def oracle_kernel(action, qubits):
    clear = 0
    for q in qubits:
        clear |= 1 << q
    deposit = []
    for v in range(1 << len(qubits)):
        label = 0
        for i, q in enumerate(qubits):
            if (v >> i) & 1:
                label |= 1 << q
        deposit.append(label)

    def extract(l):
        v = 0
        for i, q in enumerate(qubits):
            if (l >> q) & 1:
                v |= 1 << i
        return v

    kind = action.kind
    if kind == "permutation":
        table = action.permutation

        def kernel(terms):
            out = {}
            for l, a in terms.items():
                v = extract(l)
                action.check_support(v)
                out[(l & ~clear) | deposit[table[v]]] = a
            return out
    elif kind == "diagonal":
        diag = action.diagonal

        def kernel(terms):
            out = {}
            for l, a in terms.items():
                v = extract(l)
                action.check_support(v)
                out[l] = a * diag[v]
            return out
    else:
        columns = action.columns

        def kernel(terms):
            out = {}
            for l, a in terms.items():
                v = extract(l)
                action.check_support(v)
                rest = l & ~clear
                for w, u in columns[v]:
                    key = rest | deposit[w]
                    out[key] = out.get(key, 0j) + u * a
            return out
    return kernel


def controlled(kernel, control_bit):
    def wrapped(terms):
        on = {}
        out = {}
        for l, a in terms.items():
            if l & control_bit:
                on[l] = a
            else:
                out[l] = a
        out.update(kernel(on))
        return out
    return wrapped


def gate_kernel(gate: Gate):
    q = gate.qubits
    kind = gate.kind
    if kind is GateKind.HADAMARD:
        return hadamard_kernel(1 << q[0])
    if kind is GateKind.NOT:
        return not_kernel(1 << q[0])
    if kind is GateKind.PHASE:
        return phase_kernel(1 << q[0], gate.angle)
    if kind is GateKind.CONTROLLED_PHASE:
        return phase_kernel((1 << q[0]) | (1 << q[1]), gate.angle)
    if kind is GateKind.FANOUT:
        mask = 0
        for t in gate.targets:
            mask |= 1 << t
        return fanout_kernel(1 << gate.control, mask)
    if kind is GateKind.PARITY:
        mask = 0
        for s in gate.sources:
            mask |= 1 << s
        return parity_kernel(mask, 1 << gate.target)
    if kind is GateKind.ORACLE:
        action = gate.oracle.action()
        if action.arity != gate.arity:
            raise SimulationError(
                f'oracle {gate.oracle.name} acts on {action.arity} qubits, gate has {gate.arity}')
        return oracle_kernel(action, q)
    raise SimulationError(f'{kind.value} is not a unitary gate')


def apply_gate(state: SparseState, gate: Gate, classical: Optional[Mapping[int, int]] = None,
               controls: Optional[Mapping[int, int]] = None) -> SparseState:
    """Apply one unitary gate in place and return the state.

    A conditioned gate reads its bit from `classical`; when `controls` maps the
    bit to a qubit (coherent mode) the gate is quantum-controlled on it instead.
    """
    state.check_range(gate.qubits)
    kernel = gate_kernel(gate)
    qubits = gate.qubits
    if gate.cond is not None:
        if controls is not None and gate.cond in controls:
            control = controls[gate.cond]
            if control in qubits:
                raise SimulationError(f'gate {gate} is controlled by one of its own qubits')
            kernel = controlled(kernel, 1 << control)
            qubits = (*qubits, control)
        else:
            if classical is None or gate.cond not in classical:
                raise SimulationError(f'classical bit {gate.cond} is not available')
            if not classical[gate.cond]:
                return state
    state.transform(qubits, kernel)
    return state
