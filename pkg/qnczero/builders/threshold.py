"""Exact and threshold functions.

EX^k: the reduction is run on |x| - k (each slot pre-rotated by Z(-k pi/2^j)),
so the reduced register is all-zero exactly when |x| = k; OR on that register
followed by NOT gives the indicator. Thresholds are parities of EX^k over the
k below t (negated) or the k from t up.
"""
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from qnczero.builders.counting import emit_counting
from qnczero.builders.fourier import emit_fourier_exp, or_coefficients
from qnczero.builders.or_circuits import emit_and
from qnczero.builders.reduction import copy_inputs, emit_phase_slot, or_width, uncopy_inputs
from qnczero.circuit.angle import PhaseAngle
from qnczero.circuit.builder import CircuitBuilder
from qnczero.circuit.ir import Circuit
from qnczero.errors import ParameterError
from qnczero.utils import build_logger

logger = build_logger("qnczero.builders")


class Side(Enum):
    LOW = "low"
    HIGH = "high"

    @classmethod
    def from_str(cls, value):
        for side in cls:
            if side.value == value:
                return side
        raise ParameterError(f'Unknown threshold side: {value}')

    @classmethod
    def for_threshold(cls, n, t):
        return cls.LOW if t <= math.ceil(n / 2) else cls.HIGH


@dataclass(frozen=True)
class ThresholdSpec:
    n: int
    t: int
    l: int = 0
    side: Optional[Side] = None

    def __post_init__(self):
        if self.n < 1 or not 1 <= self.t <= self.n:
            raise ParameterError(f'threshold needs 1 <= t <= n, got t={self.t}, n={self.n}')
        if not 0 <= self.l < self.t.bit_length():
            raise ParameterError(
                f'l must satisfy 0 <= l < ceil(log2(t+1)) = {self.t.bit_length()}, got {self.l}')
        if self.side is None:
            object.__setattr__(self, "side", Side.for_threshold(self.n, self.t))
        half = math.ceil(self.n / 2)
        if self.side is Side.LOW and self.t > half:
            raise ParameterError(f'low side needs t <= {half}, got {self.t}')
        if self.side is Side.HIGH and self.t < half:
            raise ParameterError(f'high side needs t >= {half}, got {self.t}')


def emit_exact(b: CircuitBuilder, slot_inputs: Sequence[Sequence[int]], k: int,
               take: Optional[Callable[[int], int]] = None, l: int = 0) -> int:
    """EX^{k + sigma}(x) onto a fresh qubit.

    slot_inputs holds one copy of x per slot; their number fixes the reduced
    width, which must satisfy 2^width > max(n, k + sigma). With l > 0, sigma
    is the l-bit value whose bit i is read from take(i), a fresh copy per
    call; slot j gets a controlled Z(-2^i pi / 2^j) for every i <= j.
    """
    reduced = []
    for j, inputs in enumerate(slot_inputs):
        offsets = [(take(i), PhaseAngle(-(1 << i), 1 << j)) for i in range(min(l, j + 1))]
        reduced.append(emit_phase_slot(b, inputs, j, offset=PhaseAngle(-k, 1 << j),
                                       controlled_offsets=offsets))
    out = emit_fourier_exp(b, reduced, or_coefficients(len(reduced)))
    b.not_(out)
    return out


def build_exact(n: int, t: int) -> Circuit:
    if n < 1 or not 0 <= t <= n:
        raise ParameterError(f'exact function needs 0 <= t <= n, got t={t}, n={n}')
    b = CircuitBuilder(f"exact_{n}_{t}")
    xs = b.add_inputs(n)
    m = or_width(n)
    copies, extra = copy_inputs(b, xs, m)
    out = emit_exact(b, copies, t)
    uncopy_inputs(b, xs, extra)
    b.mark_outputs([out])
    return b.build()


def _emit_parity_output(b, sources, negate):
    target = b.ancilla()
    # negation lands on the fresh target, off the path of the sources
    if negate:
        b.not_(target)
    b.parity_gates(sources, target)
    return target


def exactsum_candidates(n, t, side: Side) -> List[int]:
    return list(range(t)) if side is Side.LOW else list(range(t, n + 1))


def build_threshold_exactsum(n: int, t: int) -> Circuit:
    """TH_n^t as a parity of exact functions, O(t n log n) size."""
    if n < 1 or not 1 <= t <= n:
        raise ParameterError(f'threshold needs 1 <= t <= n, got t={t}, n={n}')
    side = Side.for_threshold(n, t)
    b = CircuitBuilder(f"th_exactsum_{n}_{t}")
    xs = b.add_inputs(n)
    ks = exactsum_candidates(n, t, side)
    m = or_width(n)
    copies, extra = copy_inputs(b, xs, m * len(ks))
    outs = [emit_exact(b, copies[i * m:(i + 1) * m], k) for i, k in enumerate(ks)]
    uncopy_inputs(b, xs, extra)
    b.mark_outputs([_emit_parity_output(b, outs, negate=side is Side.LOW)])
    return b.build()


@dataclass(frozen=True)
class Candidate:
    """k = high * 2^l + sigma; gate is None, 'lt' ([sigma < tau]) or 'ge' ([sigma >= tau])."""
    high: int
    gate: Optional[str] = None


def combined_candidates(spec: ThresholdSpec) -> List[Candidate]:
    """Values of M for k = M 2^l + sigma that can decide TH_n^t, with boundary gating.

    Exactly one candidate is gated. With tau = 0 the gate is 'ge', which
    always holds, so every build runs the comparator stage.
    """
    l, t, n = spec.l, spec.t, spec.n
    tau = t & ((1 << l) - 1)
    top = t >> l
    if spec.side is Side.LOW:
        if tau:
            return [Candidate(M) for M in range(top)] + [Candidate(top, "lt")]
        return [Candidate(M) for M in range(top - 1)] + [Candidate(top - 1, "ge")]
    out = [Candidate(top, "ge")]
    out.extend(Candidate(M) for M in range(top + 1, (n >> l) + 1))
    return out


def candidate_set(spec: ThresholdSpec, sigma: int) -> List[int]:
    """Classical view of the candidate k for one value of the low bits."""
    tau = spec.t & ((1 << spec.l) - 1)
    ks = []
    for c in combined_candidates(spec):
        if c.gate == "lt" and not sigma < tau:
            continue
        if c.gate == "ge" and not sigma >= tau:
            continue
        ks.append((c.high << spec.l) + sigma)
    return ks


def comparator_terms(tau: int, l: int) -> List[List[Tuple[int, int]]]:
    """[sigma < tau] as mutually exclusive conjunctions of (bit, wanted value) literals.

    Every term has at least two literals: a lone literal is repeated, and
    tau = 0 gives the single contradictory term sigma_0 = 0 AND sigma_0 = 1.
    """
    if tau == 0:
        return [[(0, 0), (0, 1)]]
    terms = []
    for i in range(l):
        if (tau >> i) & 1:
            term = [(i, 0)] + [(j, (tau >> j) & 1) for j in range(i + 1, l)]
            terms.append(term * 2 if len(term) == 1 else term)
    return terms


def emit_less_than(b: CircuitBuilder, take, tau: int, l: int, negate=False) -> int:
    """Write [sigma < tau] (or its negation) for the l counted bits onto a fresh qubit.

    take(i) returns a fresh copy of sigma bit i. Each term is an AND of
    literals; the terms never hold together, so their parity is their OR.
    """
    term_outputs = []
    for term in comparator_terms(tau, l):
        literals = []
        for i, wanted in term:
            q = take(i)
            if wanted == 0:
                b.not_(q)
            literals.append(q)
        term_outputs.append(emit_and(b, literals))
    return _emit_parity_output(b, term_outputs, negate=negate)


def sigma_copy_counts(spec: ThresholdSpec, width: int, blocks: int) -> Dict[int, int]:
    counts = {i: blocks * max(0, width - i) for i in range(spec.l)}
    tau = spec.t & ((1 << spec.l) - 1)
    for term in comparator_terms(tau, spec.l):
        for i, _ in term:
            counts[i] += 1
    return counts


def build_threshold_combined(spec: ThresholdSpec) -> Circuit:
    """TH_n^t from the l low bits of |x| plus exact functions on the matching k only."""
    if spec.l == 0:
        return build_threshold_exactsum(spec.n, spec.t)
    n, t, l = spec.n, spec.t, spec.l
    b = CircuitBuilder(f"th_combined_{n}_{t}_{l}")
    xs = b.add_inputs(n)
    sigma = emit_counting(b, xs, l)

    candidates = combined_candidates(spec)
    k_max = (max(c.high for c in candidates) << l) + (1 << l) - 1
    width = or_width(max(n, k_max))

    # binary representation of sigma, one fresh copy per use
    counts = sigma_copy_counts(spec, width, len(candidates))
    pools = {}
    for i, s in enumerate(sigma):
        reg = b.ancillas(counts[i])
        b.fanout(s, reg)
        pools[i] = iter(reg)

    def take(i):
        return next(pools[i])

    copies, extra = copy_inputs(b, xs, width * len(candidates))
    outs = []
    for index, c in enumerate(candidates):
        out = emit_exact(b, copies[index * width:(index + 1) * width], c.high << l, take=take, l=l)
        outs.append((out, c.gate))
    uncopy_inputs(b, xs, extra)

    tau = t & ((1 << l) - 1)
    gated = []
    for out, gate in outs:
        if gate is None:
            gated.append(out)
        else:
            flag = emit_less_than(b, take, tau, l, negate=gate == "ge")
            gated.append(emit_and(b, [out, flag]))
    logger.debug("th_combined n=%d t=%d l=%d: %d candidates, width %d", n, t, l, len(outs), width)
    b.mark_outputs([_emit_parity_output(b, gated, negate=spec.side is Side.LOW)])
    return b.build()
