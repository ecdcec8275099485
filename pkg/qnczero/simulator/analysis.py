import math
from typing import Dict, Sequence

from qnczero.constants import COMPARE_TOLERANCE
from qnczero.errors import SimulationError
from qnczero.simulator.state import SparseState


def marginal_distribution(state: SparseState, qubits: Sequence[int]) -> Dict[str, float]:
    """Distribution of the listed qubits; the first listed qubit is the leftmost character."""
    if len(set(qubits)) != len(qubits):
        raise SimulationError('marginal qubits must be distinct')
    state.check_range(qubits)
    return state.marginal(list(qubits))


def inner_product(a: SparseState, b: SparseState) -> complex:
    """<a|b>"""
    ta, tb = a.terms, b.terms
    if len(ta) > len(tb):
        return sum(ta[l].conjugate() * amp for l, amp in tb.items() if l in ta)
    return sum(amp.conjugate() * tb[l] for l, amp in ta.items() if l in tb)


def fidelity(a: SparseState, b: SparseState) -> float:
    return abs(inner_product(a, b)) ** 2


def states_equal_up_to_global_phase(a: SparseState, b: SparseState, tol=COMPARE_TOLERANCE) -> bool:
    if a.width != b.width:
        raise SimulationError(f'cannot compare widths {a.width} and {b.width}')
    ta, tb = a.terms, b.terms
    label = max(ta, key=lambda l: abs(ta[l]))
    if abs(tb.get(label, 0j)) <= tol:
        return False
    c = ta[label] / tb[label]
    c /= abs(c)
    diff = 0.0
    for l in ta.keys() | tb.keys():
        diff += abs(ta.get(l, 0j) - c * tb.get(l, 0j)) ** 2
    return math.sqrt(diff) <= tol
