"""Size and depth sweeps against the asymptotic bound of each family."""
import math
from dataclasses import asdict, dataclass
from typing import Dict, List, Optional, Sequence

import pandas as pd
from tqdm import tqdm

from qnczero.builders.builder import build_circuit, canonical_family
from qnczero.builders.level import choose_level
from qnczero.circuit.metrics import compute_metrics
from qnczero.errors import ParameterError
from qnczero.utils import build_logger

logger = build_logger("qnczero.verify")

RATIO_SPREAD_LIMIT = 2.0


@dataclass
class ScalingRow:
    family: str
    n: int
    t: Optional[int]
    l: Optional[int]
    elementary_size: int
    depth: int
    qubit_count: int
    bound_value: float
    ratio: float

    def to_dict(self):
        return asdict(self)


def iterated_log2(n, times):
    value = float(n)
    for _ in range(times):
        value = math.log2(max(value, 2.0))
    return value


def bound_value(family, n, t=None, l=None, c=None) -> float:
    """The size bound of the family evaluated at n, without constants."""
    lg = math.log2(max(n, 2))
    if family == "parity":
        return n
    if family in ("or", "and", "or_reduction", "exact"):
        return n * lg
    if family == "or_blocked":
        return n * iterated_log2(n, c or 2)
    if family in ("or_exp", "fourier_exp"):
        return n * 2 ** n
    if family == "th_exactsum":
        return t * n * lg
    if family == "counting":
        return n * n
    if family == "th_combined":
        return 2 ** l * n + t * n * lg / 2 ** l
    if family == "threshold":
        return n * math.sqrt(min(t, n - t + 1) * lg)
    raise ParameterError(f'{family} has no size bound')


def resolve_threshold(n, params):
    """t from an absolute t or a fraction t_frac of n."""
    if params.get("t") is not None:
        return params["t"]
    if params.get("t_frac") is not None:
        return min(n, max(1, round(params["t_frac"] * n)))
    return None


def scaling_table(family, params: Dict = None, ns: Sequence[int] = (), form="gadget") -> List[ScalingRow]:
    family = canonical_family(family)
    params = dict(params or {})
    rows = []
    for n in tqdm(ns, desc=f"scaling {family}", disable=None):
        build_params = {k: v for k, v in params.items() if k != "t_frac"}
        t = resolve_threshold(n, params)
        if t is None and family in ("th_exactsum", "th_combined", "threshold"):
            raise ParameterError(f'{family} needs --t or --t-frac')
        if t is not None:
            build_params["t"] = t
        l = build_params.get("l")
        if family == "threshold" and l is None:
            l = choose_level(n, t)
        circuit = build_circuit(family, form=form, n=n, **build_params)
        metrics = compute_metrics(circuit)
        bound = bound_value(family, n, t=t, l=l, c=build_params.get("c"))
        rows.append(ScalingRow(family, n, t, l, metrics.elementary_size, metrics.depth,
                               metrics.qubit_count, bound, metrics.elementary_size / bound))
    return rows


def scaling_flags(rows: Sequence[ScalingRow]) -> Dict:
    """depth_varies: depth is not one value; ratio_spread: max/min of size/bound."""
    if not rows:
        return {"depth_varies": False, "ratio_spread": 1.0, "ratio_flagged": False}
    ratios = [r.ratio for r in rows]
    flags = {
        "depth_varies": len({r.depth for r in rows}) > 1,
        "ratio_spread": max(ratios) / min(ratios),
    }
    flags["ratio_flagged"] = flags["ratio_spread"] > RATIO_SPREAD_LIMIT
    if flags["depth_varies"] or flags["ratio_flagged"]:
        logger.warning(f"{rows[0].family}: depth_varies={flags['depth_varies']}, "
                       f"ratio_spread={flags['ratio_spread']:.3f}")
    return flags


def rows_to_frame(rows: Sequence[ScalingRow]) -> pd.DataFrame:
    return pd.DataFrame([r.to_dict() for r in rows],
                        columns=["family", "n", "t", "l", "elementary_size", "depth", "qubit_count",
                                 "bound_value", "ratio"])
