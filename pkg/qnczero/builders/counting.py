"""Low-order bits of the Hamming weight with A(theta) measurements and feedforward.

For every k < l and every guess y of the bits s_0..s_{k-1}, a copy of
|phi_k> is measured in the A(pi * sum_j y_j / 2^{k-j}) basis. When y is the
true prefix the outcome is s_k with certainty; other guesses give noise. The
outcome s_k^y survives only through t_k(y) = s_k^y AND [y == prefix], and the
parity of t_k over all y is s_k.

The prefix test is an AND over measured bits, so it is built from phases
conditioned on those bits; no quantum copies of the outcomes are made.
"""
import itertools
from fractions import Fraction
from typing import List, Sequence

from qnczero.builders.or_circuits import emit_classical_and
from qnczero.builders.reduction import copy_inputs, emit_phase_slot, or_width, uncopy_inputs
from qnczero.circuit.angle import PhaseAngle
from qnczero.circuit.builder import CircuitBuilder
from qnczero.circuit.ir import Circuit
from qnczero.errors import ParameterError


def measurement_angle(y) -> PhaseAngle:
    """pi * sum_j y_j / 2^{k-j} for the guess y = y_0..y_{k-1}."""
    k = len(y)
    return PhaseAngle.from_fraction(sum((Fraction(bit, 1 << (k - j)) for j, bit in enumerate(y)),
                                        Fraction(0)))


def feedforward_value(s, y, s_k_y) -> int:
    """t_k(y) = s_k^y AND_j (1 xor y_j xor s_j)."""
    value = s_k_y
    for y_j, s_j in zip(y, s):
        value &= 1 ^ y_j ^ s_j
    return value


def guesses(k):
    return list(itertools.product((0, 1), repeat=k))


def prefix_literals(outcome, y):
    """(cbit, wanted) literals of [y == s_0..s_{k-1}], never fewer than two.

    The empty guess is tested as [s_0 == 1], which leaves t_0 = s_0; a lone
    literal is repeated.
    """
    literals = [(outcome[(j, tuple(y[:j]))], y[j]) for j in range(len(y))]
    if not literals:
        literals = [(outcome[(0, ())], 1)]
    if len(literals) == 1:
        literals = literals * 2
    return literals


def emit_counting(b: CircuitBuilder, xs: Sequence[int], l: int) -> List[int]:
    """Write s_0..s_{l-1} (LSB first) of |x| onto fresh qubits."""
    # Step 1: 2^k copies of |phi_k> for each k < l, in (k, y-lex) order
    slots = [(k, y) for k in range(l) for y in guesses(k)]
    copies, extra = copy_inputs(b, xs, len(slots))
    phi = {}
    for inputs, key in zip(copies, slots):
        phi[key] = emit_phase_slot(b, inputs, key[0], final_hadamard=False)
    uncopy_inputs(b, xs, extra)

    # Step 2: measurements
    outcome = {key: b.measure_a(phi[key], measurement_angle(key[1])) for key in slots}

    # Step 3: t_k(y) is the prefix test copied out when s_k^y = 1
    outputs = []
    for k in range(l):
        t_k = []
        for y in guesses(k):
            match = emit_classical_and(b, prefix_literals(outcome, y))
            t = b.ancilla()
            b.cnot(match, t, cond=outcome[(k, y)])
            t_k.append(t)
        # Step 4: parity of t_k(y) over all y
        s_k = b.ancilla()
        b.parity_gates(t_k, s_k)
        outputs.append(s_k)
    return outputs


def build_counting(n: int, l: int = None) -> Circuit:
    m = or_width(n) if n >= 1 else 0
    if l is None:
        l = m
    if n < 1 or not 1 <= l <= m:
        raise ParameterError(f'counting on {n} bits needs 1 <= l <= {m}, got l={l}')
    b = CircuitBuilder(f"counting_{n}_{l}")
    xs = b.add_inputs(n)
    b.mark_outputs(emit_counting(b, xs, l))
    return b.build()
