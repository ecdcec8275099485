"""Classical reference functions for exhaustive checks."""
from dataclasses import dataclass, field
from typing import Dict

from qnczero.builders.builder import canonical_family
from qnczero.builders.fourier import parity_value, parse_mask
from qnczero.builders.reduction import or_width
from qnczero.errors import ParameterError
from qnczero.utils import bit_string, hamming_weight


@dataclass(frozen=True)
class ClassicalFunction:
    family: str
    arity: int
    params: Dict = field(default_factory=dict, compare=False)

    @property
    def output_width(self):
        if self.family == "counting":
            return self.params.get("l") or or_width(self.arity)
        if self.family == "or_reduction":
            return or_width(self.arity)
        return 1


def classical_function(family, n, **params) -> ClassicalFunction:
    if family == "dlog":
        return ClassicalFunction("dlog", n, dict(params))
    family = canonical_family(family)
    if family == "phase_flag":
        raise ParameterError('phase flags have no classical output to compare')
    if family == "or_reduction" and (params.get("variant") or "plain") == "counting_copies":
        raise ParameterError('the counting-copies reduction has no classical output')
    return ClassicalFunction(family, n, dict(params))


def _index(x: str) -> int:
    return sum(1 << i for i, ch in enumerate(x) if ch == "1")


def oracle_eval(f: ClassicalFunction, x):
    """Classical value of f on x; bit strings give x_0 first. dlog takes an element."""
    if f.family == "dlog":
        from qnczero.dlp.instance import brute_force_log, make_instance
        return brute_force_log(make_instance(f.params["q"], f.params.get("g_q")), x)
    if len(x) != f.arity:
        raise ParameterError(f'{f.family} takes {f.arity} bits, got {len(x)}')
    weight = hamming_weight(x)
    t = f.params.get("t")
    if f.family == "parity":
        return parity_value(parse_mask(f.params["a"], f.arity), _index(x))
    if f.family in ("or", "or_exp", "or_blocked"):
        return int(weight > 0)
    if f.family == "and":
        return int(weight == f.arity)
    if f.family == "fourier_exp":
        return int(f.params["table"][_index(x)])
    if f.family == "exact":
        return int(weight == t)
    if f.family in ("th_exactsum", "th_combined", "threshold"):
        return int(weight >= t)
    if f.family == "counting":
        return weight
    if f.family == "or_reduction":
        # zero register iff the (shifted) weight vanishes
        shift = t if (f.params.get("variant") or "plain") == "exact_shift" else 0
        return int(weight != shift)
    raise ParameterError(f'Unknown classical function: {f.family}')


def expected_output(f: ClassicalFunction, x: str) -> str:
    """Output register bits the circuit must produce with certainty, as a bit string."""
    value = oracle_eval(f, x)
    if f.family == "counting":
        return bit_string(value, f.output_width)
    return str(value)
