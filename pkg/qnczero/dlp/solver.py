import functools
import math
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from qnczero.constants import COMPARE_TOLERANCE, DEFAULT_SEED
from qnczero.dlp.circuits import DlpLayout, build_q1, build_q2
from qnczero.dlp.instance import (SafePrimeInstance, combine_parity, make_instance, mod_inverse,
                                  reduce_input)
from qnczero.errors import DlpError, ParameterError
from qnczero.simulator.runner import run_branches, run_unitary
from qnczero.simulator.state import SparseState
from qnczero.utils import build_logger

logger = build_logger("qnczero.dlp")

SOLVE_MODES = ("sample", "all_branches")


@dataclass
class DlpResult:
    q: int
    g_q: int
    x_q: int
    l_q: int
    mode: str
    # (s, s*l mod p, probability) of every branch that was inspected
    branches: List[Tuple[int, int, float]] = field(default_factory=list)

    def to_dict(self):
        return {"q": self.q, "g_q": self.g_q, "x_q": self.x_q, "l_q": self.l_q, "mode": self.mode,
                "branches": [{"s": s, "v": v, "probability": prob} for s, v, prob in self.branches]}


def _register_value(outcomes, cbits):
    return sum(outcomes[c] << i for i, c in enumerate(cbits))


@functools.lru_cache(maxsize=32)
def q1_state(q: int, g_q: int, flags="oracle") -> SparseState:
    """State after Q1 restricted to the 2m + n + 1 algorithm qubits.

    Q1 only depends on g, so any input reduces to the same circuit; extra
    flag ancillas must be back at 0.
    """
    inst = make_instance(q, g_q)
    red = reduce_input(inst, 1)
    circuit = build_q1(inst, red, flags)
    state = run_unitary(circuit)
    width = DlpLayout.for_instance(inst).width
    terms = state.terms
    if any(label >> width for label in terms):
        raise DlpError('Q1 left a phase-flag ancilla set')
    return SparseState.from_terms(width, terms)


def measured_pairs(inst: SafePrimeInstance, red, flags="oracle"):
    """Run Q2 and the readout on the cached Q1 state; yields (s, v, probability)."""
    tail = build_q2(inst, red, measure=True)
    start = q1_state(inst.q, inst.g_q, flags)
    m = inst.m
    s_cbits, v_cbits = list(range(m)), list(range(m, 2 * m))
    run = run_branches(tail, initial=start)
    logger.debug("q=%d x_q=%d: %d branches", inst.q, red.x_q, len(run))
    for branch in run:
        yield (_register_value(branch.outcomes, s_cbits), _register_value(branch.outcomes, v_cbits),
               branch.probability)


def post_process(inst: SafePrimeInstance, red, s: int, v: int) -> int:
    p = inst.p
    if s == 0:
        raise DlpError('measured s = 0')
    if math.gcd(s, p) != 1:
        raise DlpError(f'gcd(s, p) != 1 for s = {s}')
    l = v * mod_inverse(s, p) % p
    return combine_parity(l, red.parity_bit, p)


def solve_dlp(inst: SafePrimeInstance, x_q: int, seed: int = DEFAULT_SEED, mode="sample",
              flags="oracle") -> DlpResult:
    if mode not in SOLVE_MODES:
        raise ParameterError(f'Unknown solve mode: {mode}')
    red = reduce_input(inst, x_q)
    pairs = list(measured_pairs(inst, red, flags))
    if mode == "sample":
        rng = np.random.default_rng(seed)
        weights = np.array([prob for _, _, prob in pairs])
        s, v, prob = pairs[rng.choice(len(pairs), p=weights / weights.sum())]
        result = DlpResult(inst.q, inst.g_q, x_q, post_process(inst, red, s, v), mode, [(s, v, prob)])
    else:
        answers = {post_process(inst, red, s, v) for s, v, _ in pairs}
        if len(answers) != 1:
            raise DlpError(f'branches disagree on the logarithm: {sorted(answers)}')
        for s, v, prob in pairs:
            if abs(prob - 1 / (inst.p - 1)) > COMPARE_TOLERANCE:
                raise DlpError(f'branch s={s} has probability {prob}, expected 1/{inst.p - 1}')
        result = DlpResult(inst.q, inst.g_q, x_q, answers.pop(), mode, pairs)
    if pow(inst.g_q, result.l_q, inst.q) != x_q % inst.q:
        raise DlpError(f'{inst.g_q}^{result.l_q} != {x_q} mod {inst.q}')
    logger.info(f"q={inst.q} g_q={inst.g_q} x_q={x_q}: l_q={result.l_q} ({mode})")
    return result
