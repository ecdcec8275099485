from qnczero.builders.counting import build_counting
from qnczero.builders.fourier import build_fourier_exp, build_or_exp
from qnczero.builders.level import choose_level
from qnczero.builders.or_circuits import build_or, build_or_blocked
from qnczero.builders.parity import build_parity
from qnczero.builders.reduction import OrReductionSpec, ReductionVariant, build_or_reduction
from qnczero.builders.threshold import (Side, ThresholdSpec, build_exact, build_threshold_combined,
                                        build_threshold_exactsum)
from qnczero.circuit.ir import Circuit
from qnczero.circuit.normalize import normalize_to_gadget_form
from qnczero.errors import ParameterError
from qnczero.utils import build_logger

logger = build_logger("qnczero.builders")

FAMILY_ALIASES = {
    "th": "threshold",
    "count": "counting",
    "exactsum": "th_exactsum",
    "combined": "th_combined",
    "blocked": "or_blocked",
}

FAMILIES = ("parity", "or_reduction", "or_exp", "fourier_exp", "or", "and", "or_blocked",
            "exact", "th_exactsum", "counting", "th_combined", "threshold", "phase_flag")


def canonical_family(name):
    name = FAMILY_ALIASES.get(name, name)
    if name not in FAMILIES:
        raise ParameterError(f"Unknown circuit family: {name}")
    return name


def _require(params, *names):
    missing = [name for name in names if params.get(name) is None]
    if missing:
        raise ParameterError(f'missing parameter(s): {", ".join(missing)}')
    return [params[name] for name in names]


def _threshold_spec(n, t, l, side):
    return ThresholdSpec(n, t, l, Side.from_str(side) if isinstance(side, str) else side)


def build_family(family, **params) -> Circuit:
    family = canonical_family(family)
    n = params.get("n")

    if family == "parity":
        n, a = _require(params, "n", "a")
        return build_parity(n, a)
    elif family == "or_reduction":
        (n,) = _require(params, "n")
        variant = params.get("variant") or "plain"
        if isinstance(variant, str):
            variant = ReductionVariant.from_str(variant)
        return build_or_reduction(OrReductionSpec(n, variant, params.get("t") or 0,
                                                  params.get("levels")))
    elif family == "or_exp":
        (n,) = _require(params, "n")
        return build_or_exp(n)
    elif family == "fourier_exp":
        n, table = _require(params, "n", "table")
        return build_fourier_exp(n, table)
    elif family in ("or", "and"):
        (n,) = _require(params, "n")
        return build_or(n, and_=family == "and")
    elif family == "or_blocked":
        (n,) = _require(params, "n")
        return build_or_blocked(n, params.get("c") or 2)
    elif family == "exact":
        n, t = _require(params, "n", "t")
        return build_exact(n, t)
    elif family == "th_exactsum":
        n, t = _require(params, "n", "t")
        return build_threshold_exactsum(n, t)
    elif family == "counting":
        (n,) = _require(params, "n")
        return build_counting(n, params.get("l"))
    elif family == "th_combined":
        n, t, l = _require(params, "n", "t", "l")
        return build_threshold_combined(_threshold_spec(n, t, l, params.get("side")))
    elif family == "threshold":
        n, t = _require(params, "n", "t")
        l = params.get("l")
        if l is None:
            l = choose_level(n, t)
        return build_threshold_combined(_threshold_spec(n, t, l, params.get("side")))
    else:
        from qnczero.dlp.circuits import build_phase_flag
        kind, m = _require(params, "kind", "m")
        return build_phase_flag(kind, m, n)


def build_circuit(family, form="gate", **params) -> Circuit:
    """Build a circuit family by name; form="gadget" folds parity sandwiches into gadgets."""
    if form not in ("gate", "gadget"):
        raise ParameterError(f'Unknown circuit form: {form}')
    circuit = build_family(family, **params)
    logger.info(f"Built {circuit.name}: {circuit.qubit_count} qubits, {len(circuit.layers)} layers")
    if form == "gadget":
        circuit = normalize_to_gadget_form(circuit)
    return circuit
