"""Exhaustive correctness checks: every input, every surviving branch."""
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Dict, List

import pandas as pd
from tqdm import tqdm

from qnczero.builders.builder import build_circuit, canonical_family
from qnczero.circuit.ir import Circuit
from qnczero.constants import COMPARE_TOLERANCE, EXHAUSTIVE_BOUNDS, GATE_LEVEL_OR_EXP_BOUND
from qnczero.errors import ParameterError
from qnczero.simulator.analysis import marginal_distribution
from qnczero.simulator.runner import coherent_run, run_branches
from qnczero.utils import build_logger, get_chunk, split_list
from qnczero.verify.oracle import ClassicalFunction, classical_function, expected_output

logger = build_logger("qnczero.verify")

# mode -> (circuit form, runner)
VERIFY_MODES = {
    "gate": ("gate", "branches"),
    "gadget": ("gadget", "branches"),
    "branches": ("gadget", "branches"),
    "coherent": ("gadget", "coherent"),
}


@dataclass
class VerificationReport:
    family: str
    params: Dict
    n: int
    mode: str
    inputs_tested: int = 0
    branches_tested: int = 0
    failures: List[Dict] = field(default_factory=list)
    # wall time; serialized only on request
    elapsed_ms: float = field(default=0.0, compare=False)

    @property
    def passed(self):
        return not self.failures

    def to_dict(self, timings=False):
        out = asdict(self)
        if not timings:
            out.pop("elapsed_ms")
        out["passed"] = self.passed
        return out


def input_strings(n):
    """All n-bit inputs, x_0 first, in order of their integer value."""
    return ["".join("1" if (v >> i) & 1 else "0" for i in range(n)) for v in range(1 << n)]


def _judge(f: ClassicalFunction, x, dist):
    if f.family == "or_reduction":
        zero = dist.get("0" * f.output_width, 0.0)
        must_vanish = expected_output(f, x) == "1"
        ok = zero <= COMPARE_TOLERANCE if must_vanish else zero >= 1 - COMPARE_TOLERANCE
        return ok, ("not " if must_vanish else "") + "0" * f.output_width
    expected = expected_output(f, x)
    return dist.get(expected, 0.0) >= 1 - COMPARE_TOLERANCE, expected


def check_inputs(circuit: Circuit, f: ClassicalFunction, inputs, runner):
    """Returns (branch count, failures) over the given inputs."""
    branches = 0
    failures = []
    outputs = list(circuit.output_qubits)
    for x in inputs:
        if runner == "coherent":
            finals = [({}, 1.0, coherent_run(circuit, x))]
        else:
            run = run_branches(circuit, x)
            if abs(run.total_probability - 1.0) > COMPARE_TOLERANCE:
                failures.append({"input": x, "outcomes": {}, "expected": "total probability 1",
                                 "observed": {"total": run.total_probability}})
            finals = [(b.outcomes, b.probability, b.final_state) for b in run]
        for outcomes, prob, state in finals:
            branches += 1
            dist = marginal_distribution(state, outputs)
            ok, expected = _judge(f, x, dist)
            if not ok:
                failures.append({"input": x, "outcomes": dict(outcomes), "probability": prob,
                                 "expected": expected, "observed": dist})
    return branches, failures


def exhaustive_bound(family, mode):
    if family == "or_exp" and VERIFY_MODES[mode][0] == "gate":
        return GATE_LEVEL_OR_EXP_BOUND
    return EXHAUSTIVE_BOUNDS.get(family)


def exhaustive_verify(family, params=None, n=None, mode="coherent", workers=1,
                      circuit: Circuit = None, num_chunks=1, chunk_idx=0) -> VerificationReport:
    """Check every input (or chunk chunk_idx of num_chunks) against the classical function."""
    params = dict(params or {})
    family = canonical_family(family)
    if mode not in VERIFY_MODES:
        raise ParameterError(f'Unknown verify mode: {mode}')
    bound = exhaustive_bound(family, mode)
    if bound is None:
        raise ParameterError(f'{family} has no exhaustive check')
    if n is None or not 1 <= n <= bound:
        raise ParameterError(f'{family} is checked exhaustively for 1 <= n <= {bound}, got n={n}')

    form, runner = VERIFY_MODES[mode]
    f = classical_function(family, n, **params)
    if circuit is None:
        circuit = build_circuit(family, form=form, n=n, **params)
    inputs = input_strings(n)
    if num_chunks > 1:
        inputs = get_chunk(inputs, num_chunks, chunk_idx)
    report = VerificationReport(family, params, n, mode, inputs_tested=len(inputs))

    start = time.perf_counter()
    if workers > 1:
        chunks = split_list(inputs, workers)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(check_inputs, circuit, f, chunk, runner) for chunk in chunks]
            for future in tqdm(futures, desc=f"verify {circuit.name}", disable=None):
                branches, failures = future.result()
                report.branches_tested += branches
                report.failures.extend(failures)
    else:
        for x in tqdm(inputs, desc=f"verify {circuit.name}", disable=None):
            branches, failures = check_inputs(circuit, f, [x], runner)
            report.branches_tested += branches
            report.failures.extend(failures)
    report.elapsed_ms = (time.perf_counter() - start) * 1000

    if report.passed:
        logger.info(f"{circuit.name} [{mode}]: {report.inputs_tested} inputs, "
                    f"{report.branches_tested} branches, pass ({report.elapsed_ms:.0f} ms)")
    else:
        logger.warning(f"{circuit.name} [{mode}]: {len(report.failures)} failures")
    return report


def report_to_frame(reports, timings=False) -> pd.DataFrame:
    rows = [{
        "family": r.family,
        "params": ";".join(f"{k}={v}" for k, v in sorted(r.params.items())),
        "n": r.n,
        "mode": r.mode,
        "cases": r.branches_tested,
        "failures": len(r.failures),
    } for r in reports]
    columns = ["family", "params", "n", "mode", "cases", "failures"]
    if timings:
        for row, r in zip(rows, reports):
            row["elapsed_ms"] = round(r.elapsed_ms, 3)
        columns.append("elapsed_ms")
    return pd.DataFrame(rows, columns=columns)
