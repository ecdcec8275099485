"""Phase-state OR reduction.

Slot k turns the input weight |x| into the one-qubit phase state
(|0> + e^{i pi |x| / 2^k}|1>)/sqrt2: a Hadamard and a fan-out prepare a cat
state over one wire per input bit, each input bit adds its phase through a
controlled Z(pi/2^k) on its own wire, and the inverse fan-out folds the cat
back into the slot qubit.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from qnczero.circuit.angle import PhaseAngle
from qnczero.circuit.builder import CircuitBuilder
from qnczero.circuit.ir import Circuit
from qnczero.errors import ParameterError
from qnczero.utils import ceil_log2


class ReductionVariant(Enum):
    PLAIN = "plain"
    EXACT_SHIFT = "exact_shift"
    COUNTING_COPIES = "counting_copies"

    @classmethod
    def from_str(cls, value):
        for variant in cls:
            if variant.value == value:
                return variant
        raise ParameterError(f'Unknown reduction variant: {value}')


def or_width(n):
    """m = ceil(log2(n + 1))"""
    return ceil_log2(n + 1)


@dataclass(frozen=True)
class OrReductionSpec:
    n: int
    variant: ReductionVariant = ReductionVariant.PLAIN
    t: int = 0
    levels: Optional[int] = field(default=None, metadata={"help": "number of k values; defaults to m"})

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError(f'OR reduction needs n >= 1, got {self.n}')
        if self.variant is ReductionVariant.EXACT_SHIFT and not 0 <= self.t <= self.n:
            raise ParameterError(f'exact shift needs 0 <= t <= n, got t={self.t}, n={self.n}')
        if self.levels is not None and not 1 <= self.levels <= self.m:
            raise ParameterError(f'levels must lie in 1..{self.m}, got {self.levels}')

    @property
    def m(self):
        return or_width(self.n)

    @property
    def slot_levels(self) -> List[int]:
        levels = self.levels if self.levels is not None else self.m
        if self.variant is ReductionVariant.COUNTING_COPIES:
            return [k for k in range(levels) for _ in range(1 << k)]
        return list(range(levels))


def copy_inputs(b: CircuitBuilder, xs: Sequence[int], count) -> Tuple[List[List[int]], list]:
    """Fan each input out onto count-1 fresh ancillas; copy 0 is the input itself."""
    extra = [b.ancillas(count - 1) for _ in xs]
    for x, e in zip(xs, extra):
        b.fanout(x, e)
    copies = [list(xs)] + [[e[i] for e in extra] for i in range(count - 1)]
    return copies, extra


def uncopy_inputs(b: CircuitBuilder, xs: Sequence[int], extra):
    for x, e in zip(xs, extra):
        b.fanout(x, e)


def emit_phase_slot(b: CircuitBuilder, inputs: Sequence[int], k: int,
                    offset: PhaseAngle = PhaseAngle(), controlled_offsets=(), conditioned=(),
                    final_hadamard=True) -> int:
    """Prepare |phi_k> on a fresh slot qubit.

    controlled_offsets is a list of (qubit, angle): each adds angle to the
    phase when its qubit is 1. conditioned is a list of (cbit, angle) read
    from measurement outcomes instead. offset is added unconditionally.
    Every contribution sits on a cat wire of its own, so they all share one
    layer. The final Hadamard is skipped for the counting layout.
    """
    o = b.ancilla()
    b.hadamard(o)
    width = len(inputs) + len(controlled_offsets) + len(conditioned) + (0 if offset.is_zero() else 1)
    cat = b.ancillas(max(width, 1) - 1)
    b.fanout(o, cat)
    wires = iter([o] + cat)
    angle = PhaseAngle.dyadic(1, k)
    for x in inputs:
        b.cphase(x, next(wires), angle)
    for q, extra in controlled_offsets:
        b.cphase(q, next(wires), extra)
    for c, extra in conditioned:
        b.phase(next(wires), extra, cond=c)
    if not offset.is_zero():
        b.phase(next(wires), offset)
    b.fanout(o, cat)
    if final_hadamard:
        b.hadamard(o)
    return o


def emit_or_reduction(b: CircuitBuilder, xs: Sequence[int], spec: OrReductionSpec) -> List[int]:
    levels = spec.slot_levels
    copies, extra = copy_inputs(b, xs, len(levels))
    outs = []
    for inputs, k in zip(copies, levels):
        if spec.variant is ReductionVariant.EXACT_SHIFT:
            o = emit_phase_slot(b, inputs, k, offset=PhaseAngle(-spec.t, 1 << k))
        else:
            o = emit_phase_slot(b, inputs, k,
                                final_hadamard=spec.variant is ReductionVariant.PLAIN)
        outs.append(o)
    uncopy_inputs(b, xs, extra)
    return outs


def build_or_reduction(spec: OrReductionSpec) -> Circuit:
    b = CircuitBuilder(f"or_reduction_{spec.variant.value}_{spec.n}")
    xs = b.add_inputs(spec.n)
    b.mark_outputs(emit_or_reduction(b, xs, spec))
    return b.build()
