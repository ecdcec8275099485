import functools
import math
from typing import Sequence, Tuple

from qnczero.builders.fourier import emit_fourier_exp, or_coefficients
from qnczero.builders.reduction import OrReductionSpec, emit_or_reduction, emit_phase_slot, or_width
from qnczero.circuit.angle import PhaseAngle
from qnczero.circuit.builder import CircuitBuilder
from qnczero.circuit.ir import Circuit
from qnczero.errors import ParameterError
from qnczero.utils import ceil_log2


def emit_or(b: CircuitBuilder, xs: Sequence[int]) -> int:
    """OR reduction onto m qubits followed by the parity-expansion OR on those m qubits."""
    reduced = emit_or_reduction(b, xs, OrReductionSpec(len(xs)))
    return emit_fourier_exp(b, reduced, or_coefficients(len(reduced)))


def emit_and(b: CircuitBuilder, xs: Sequence[int]) -> int:
    """AND by De Morgan; the inputs are restored afterwards."""
    for x in xs:
        b.not_(x)
    out = emit_or(b, xs)
    b.not_(out)
    for x in xs:
        b.not_(x)
    return out


def emit_classical_and(b: CircuitBuilder, literals: Sequence[Tuple[int, int]]) -> int:
    """AND of measured literals (cbit, wanted value) onto a fresh qubit.

    Slot j of the reduction carries the phase pi * v / 2^j, where v is the
    number of literals that hold minus their count, entered as phases
    conditioned on the bits themselves. v lies in [-a, 0] and vanishes
    exactly when every literal holds.
    """
    if len(literals) < 2:
        raise ParameterError(f'classical AND needs at least two literals, got {len(literals)}')
    wanted_ones = sum(wanted for _, wanted in literals)
    reduced = []
    for j in range(or_width(len(literals))):
        step = PhaseAngle.dyadic(1, j)
        conditioned = [(cbit, step if wanted else -step) for cbit, wanted in literals]
        reduced.append(emit_phase_slot(b, [], j, offset=PhaseAngle(-wanted_ones, 1 << j),
                                       conditioned=conditioned))
    out = emit_fourier_exp(b, reduced, or_coefficients(len(reduced)))
    b.not_(out)
    return out


def build_or(n: int, and_: bool = False) -> Circuit:
    if n < 1:
        raise ParameterError(f'OR needs n >= 1, got {n}')
    b = CircuitBuilder(f"{'and' if and_ else 'or'}_{n}")
    xs = b.add_inputs(n)
    b.mark_outputs([emit_and(b, xs) if and_ else emit_or(b, xs)])
    return b.build()


@functools.lru_cache(maxsize=64)
def and_circuit(n: int) -> Circuit:
    return build_or(n, and_=True)


@functools.lru_cache(maxsize=64)
def or_circuit(n: int) -> Circuit:
    return build_or(n)


def block_layout(n: int):
    """Block size ceil(log2 n) and block count ceil(n / size)."""
    size = ceil_log2(n) if n > 1 else 1
    return size, math.ceil(n / size)


def emit_or_blocked(b: CircuitBuilder, xs: Sequence[int], c: int) -> int:
    if c == 1:
        return emit_or(b, xs)
    n = len(xs)
    size, count = block_layout(n)
    if size < 2 or count < 2:
        raise ParameterError(f'OR on {n} bits cannot be split {c - 1} more times')
    padded = list(xs) + b.ancillas(size * count - n)
    outs = [emit_or_blocked(b, padded[i * size:(i + 1) * size], c - 1) for i in range(count)]
    return emit_or_blocked(b, outs, c - 1)


def build_or_blocked(n: int, c: int) -> Circuit:
    """OR_n after c - 1 rounds of splitting into blocks of ceil(log2 n) bits.

    The last block of each round is padded with zero ancillas.
    """
    if c < 1:
        raise ParameterError(f'iteration count must be >= 1, got {c}')
    if c == 1:
        return build_or(n)
    if n < 1:
        raise ParameterError(f'OR needs n >= 1, got {n}')
    b = CircuitBuilder(f"or_blocked_{n}_{c}")
    xs = b.add_inputs(n)
    b.mark_outputs([emit_or_blocked(b, xs, c)])
    return b.build()

