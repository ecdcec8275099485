import itertools
import math
from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from qnczero.builders.builder import FAMILIES, build_circuit, build_family, canonical_family
from qnczero.builders.fourier import (build_fourier_exp, build_or_exp, or_coefficients,
                                      parity_expansion, parity_value, parse_mask)
from qnczero.builders.level import choose_level
from qnczero.builders.or_circuits import build_or, build_or_blocked
from qnczero.builders.parity import build_parity
from qnczero.builders.reduction import (OrReductionSpec, ReductionVariant, build_or_reduction,
                                        or_width)
from qnczero.builders.threshold import build_exact
from qnczero.circuit.metrics import compute_metrics
from qnczero.circuit.validate import validate
from qnczero.errors import ParameterError
from qnczero.simulator.analysis import marginal_distribution
from qnczero.simulator.runner import run_unitary
from qnczero.verify.harness import input_strings
from qnczero.verify.scaling import scaling_flags, scaling_table


# parity

def test_parity_of_two_ones(assert_output):
    assert_output(build_parity(2, "11"), "11", "0", mode="unitary")


def test_parity_single_bit_mask(assert_output):
    assert_output(build_parity(5, "00100"), "00100", "1", mode="unitary")
    assert_output(build_parity(5, "00100"), "11011", "0", mode="unitary")


@given(st.integers(1, 6), st.data())
def test_parity_matches_mask(n, data):
    a = data.draw(st.integers(1, (1 << n) - 1))
    x = data.draw(st.integers(0, (1 << n) - 1))
    circuit = build_parity(n, a)
    bits = "".join(str((x >> j) & 1) for j in range(n))
    dist = marginal_distribution(run_unitary(circuit, bits), circuit.output_qubits)
    assert dist == pytest.approx({str(parity_value(a, x)): 1.0})
    assert compute_metrics(circuit).elementary_size == 3 * bin(a).count("1") + 3


def test_parity_rejects_bad_masks():
    with pytest.raises(ParameterError):
        build_parity(3, "000")
    with pytest.raises(ParameterError):
        build_parity(3, "11")
    assert parse_mask("101", 3) == 0b101


# OR reduction

def test_reduction_width():
    assert len(build_or_reduction(OrReductionSpec(4)).output_qubits) == 3
    assert OrReductionSpec(7).m == 3
    assert OrReductionSpec(8).m == 4
    assert or_width(1) == 1


def test_reduction_of_zero_is_zero():
    circuit = build_or_reduction(OrReductionSpec(5))
    dist = marginal_distribution(run_unitary(circuit, "00000"), circuit.output_qubits)
    assert dist == pytest.approx({"000": 1.0})


def test_reduction_weight_two_flips_slot_one():
    circuit = build_or_reduction(OrReductionSpec(4))
    state = run_unitary(circuit, "1100")
    assert marginal_distribution(state, [circuit.output_qubits[1]]) == pytest.approx({"1": 1.0})
    assert marginal_distribution(state, [circuit.output_qubits[0]]) == pytest.approx({"0": 1.0})


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_reduction_is_orthogonal_to_zero_for_nonzero_input(n):
    circuit = build_or_reduction(OrReductionSpec(n))
    zero = "0" * or_width(n)
    for x in input_strings(n):
        dist = marginal_distribution(run_unitary(circuit, x), circuit.output_qubits)
        expected = 1.0 if "1" not in x else 0.0
        assert dist.get(zero, 0.0) == pytest.approx(expected, abs=1e-9)


def test_exact_shift_zeroes_at_t():
    circuit = build_or_reduction(OrReductionSpec(4, ReductionVariant.EXACT_SHIFT, t=2))
    for x in input_strings(4):
        dist = marginal_distribution(run_unitary(circuit, x), circuit.output_qubits)
        expected = 1.0 if x.count("1") == 2 else 0.0
        assert dist.get("000", 0.0) == pytest.approx(expected, abs=1e-9)


def test_counting_copies_layout():
    spec = OrReductionSpec(4, ReductionVariant.COUNTING_COPIES)
    assert spec.slot_levels == [0, 1, 1, 2, 2, 2, 2]
    assert len(build_or_reduction(spec).output_qubits) == 7


def test_reduction_spec_errors():
    with pytest.raises(ParameterError):
        OrReductionSpec(0)
    with pytest.raises(ParameterError):
        OrReductionSpec(3, ReductionVariant.EXACT_SHIFT, t=4)
    with pytest.raises(ParameterError):
        OrReductionSpec(3, levels=3)
    with pytest.raises(ParameterError):
        ReductionVariant.from_str("fancy")


# parity expansion

@pytest.mark.parametrize("n", range(1, 11))
def test_or_is_average_of_parities(n):
    coeffs = or_coefficients(n)
    for x in range(1 << n):
        total = sum(r * parity_value(a, x) for a, r in coeffs.items())
        assert total == Fraction(int(x != 0))


def test_or_expansion_from_truth_table():
    table = [0] + [1] * 7
    assert parity_expansion(table) == or_coefficients(3)


@given(st.integers(1, 5), st.data())
def test_parity_expansion_reconstructs_table(n, data):
    table = [0] + data.draw(st.lists(st.integers(0, 1), min_size=(1 << n) - 1,
                                     max_size=(1 << n) - 1))
    coeffs = parity_expansion(table)
    for x in range(1 << n):
        assert sum(r * parity_value(a, x) for a, r in coeffs.items()) == table[x]


def test_parity_expansion_errors():
    with pytest.raises(ParameterError):
        parity_expansion([1, 0])
    with pytest.raises(ParameterError):
        parity_expansion([0, 1, 1])


def test_or_exp_single_bit(assert_output):
    assert build_or_exp(1).qubit_count == 2
    assert_output(build_or_exp(1), "1", "1", mode="unitary")
    assert_output(build_or_exp(1), "0", "0", mode="unitary")


@pytest.mark.parametrize("n", [1, 2, 3])
def test_or_exp_gate_level_exact(n, assert_output):
    circuit = build_or_exp(n)
    assert circuit.qubit_count == 2 ** (n + 1) + n * 2 ** (n - 1) - n - 2
    for x in input_strings(n):
        assert_output(circuit, x, str(int("1" in x)), mode="unitary")


def test_or_exp_four_bits_gadget_form(assert_output):
    circuit = build_circuit("or_exp", form="gadget", n=4)
    for x in input_strings(4):
        assert_output(circuit, x, str(int("1" in x)), mode="unitary")


def test_or_exp_depth_is_flat():
    depths = {compute_metrics(build_or_exp(n)).depth for n in (2, 3, 4)}
    assert len(depths) == 1


@settings(max_examples=10)
@given(st.lists(st.integers(0, 1), min_size=7, max_size=7))
def test_fourier_exp_any_function(rest):
    table = [0] + rest
    if not any(rest):
        with pytest.raises(ParameterError):
            build_fourier_exp(3, table)
        return
    circuit = build_circuit("fourier_exp", form="gadget", n=3, table=table)
    for v, x in enumerate(input_strings(3)):
        dist = marginal_distribution(run_unitary(circuit, x), circuit.output_qubits)
        assert dist.get(str(table[v]), 0.0) == pytest.approx(1.0)


# OR, AND and blocked OR

@pytest.mark.parametrize("n", range(1, 7))
def test_or_exact(n, assert_output):
    circuit = build_circuit("or", form="gadget", n=n)
    assert validate(circuit).ok
    for x in input_strings(n):
        assert_output(circuit, x, str(int("1" in x)), mode="unitary")


def test_and_of_all_ones(assert_output):
    circuit = build_circuit("and", n=6)
    assert_output(circuit, "111111", "1", mode="unitary")
    assert_output(circuit, "111011", "0", mode="unitary")


@pytest.mark.parametrize("n", [2, 3, 4])
def test_and_exact(n, assert_output):
    circuit = build_circuit("and", form="gadget", n=n)
    for x in input_strings(n):
        assert_output(circuit, x, str(int("0" not in x)), mode="unitary")


def test_blocked_with_one_round_is_plain_or():
    assert build_or_blocked(9, 1) == build_or(9)


def test_blocked_or(assert_output):
    circuit = build_circuit("or_blocked", form="gadget", n=16, c=2)
    assert_output(circuit, "0" * 16, "0", mode="unitary")
    assert_output(circuit, "0" * 15 + "1", "1", mode="unitary")
    assert_output(circuit, "0" * 4 + "1" * 12, "1", mode="unitary")


@pytest.mark.parametrize("n", [5, 8])
def test_blocked_or_exhaustive(n, assert_output):
    circuit = build_circuit("or_blocked", form="gadget", n=n, c=2)
    for x in input_strings(n):
        assert_output(circuit, x, str(int("1" in x)), mode="unitary")


def test_blocked_or_is_smaller():
    blocked = compute_metrics(build_circuit("or_blocked", form="gadget", n=256, c=2))
    plain = compute_metrics(build_circuit("or", form="gadget", n=256))
    assert blocked.elementary_size < plain.elementary_size


def test_blocked_or_rejects_degenerate_blocks():
    with pytest.raises(ParameterError):
        build_or_blocked(2, 3)
    with pytest.raises(ParameterError):
        build_or_blocked(8, 0)


# exact

def test_exact_examples(assert_output):
    assert_output(build_exact(4, 2), "1100", "1", mode="unitary")
    assert_output(build_exact(4, 0), "0000", "1", mode="unitary")
    assert_output(build_exact(4, 0), "0100", "0", mode="unitary")


@pytest.mark.parametrize("t", range(6))
def test_exact_five_bits(t, assert_output):
    circuit = build_circuit("exact", form="gadget", n=5, t=t)
    for x in input_strings(5):
        assert_output(circuit, x, str(int(x.count("1") == t)), mode="unitary")


def test_exact_rejects_out_of_range():
    with pytest.raises(ParameterError):
        build_exact(4, 5)


# level choice

def test_choose_level_examples():
    assert choose_level(64, 32) == 3
    assert choose_level(64, 2) == 1
    assert choose_level(64, 64) == 0
    assert choose_level(1, 1) == 0


@given(st.integers(1, 300), st.data())
def test_choose_level_in_range(n, data):
    t = data.draw(st.integers(1, n))
    assert 0 <= choose_level(n, t) < t.bit_length()


def test_choose_level_rejects_bad_threshold():
    with pytest.raises(ParameterError):
        choose_level(4, 0)
    with pytest.raises(ParameterError):
        choose_level(4, 5)


# dispatch

def test_family_names():
    assert canonical_family("th") == "threshold"
    assert canonical_family("count") == "counting"
    assert "phase_flag" in FAMILIES
    with pytest.raises(ParameterError, match="Unknown circuit family"):
        canonical_family("majority")


def test_dispatch_errors():
    with pytest.raises(ParameterError):
        build_family("parity", n=3)
    with pytest.raises(ParameterError):
        build_circuit("or", form="qasm", n=3)
    with pytest.raises(ParameterError):
        build_circuit("th", n=5, t=9)


@pytest.mark.parametrize("family, params", [
    ("parity", {"a": "1" * 4}),
    ("or_reduction", {}),
    ("or", {}),
    ("and", {}),
    ("exact", {"t": 2}),
    ("th_exactsum", {"t": 2}),
    ("counting", {}),
])
def test_builder_circuits_validate(family, params):
    for form in ("gate", "gadget"):
        assert validate(build_circuit(family, form=form, n=4, **params)).ok


# depth and size

DEPTH_NS = [4, 8, 16, 33, 64]
SCALING_NS = [8, 16, 32, 64, 128, 256]


@pytest.mark.parametrize("family, params", [
    ("parity", {}),
    ("or_reduction", {}),
    ("or", {}),
    ("and", {}),
    ("or_blocked", {"c": 2}),
    ("exact", {}),
    ("th_exactsum", {}),
    ("counting", {}),
    ("th_combined", {"l": 1}),
    ("threshold", {}),
])
def test_depth_is_constant(family, params):
    depths = set()
    for n in DEPTH_NS:
        extra = dict(params)
        if family == "parity":
            extra["a"] = (1 << n) - 1
        if family in ("exact", "th_exactsum"):
            extra["t"] = n // 2
        if family in ("th_combined", "threshold"):
            extra["t"] = math.ceil(n / 2)
        circuit = build_circuit(family, form="gadget", n=n, **extra)
        depths.add(compute_metrics(circuit).depth)
    assert len(depths) == 1, depths


def test_combined_threshold_depth_is_constant_at_fixed_level():
    rows = scaling_table("th_combined", {"t_frac": 0.5, "l": 2}, [8, 16, 32, 64])
    assert not scaling_flags(rows)["depth_varies"]


@pytest.mark.slow
def test_or_size_scaling():
    rows = scaling_table("or", {}, [8, 16, 32, 64, 128, 256, 512, 1024])
    flags = scaling_flags(rows)
    assert not flags["depth_varies"]
    assert flags["ratio_spread"] <= 2.0


@pytest.mark.slow
def test_counting_size_scaling():
    rows = scaling_table("counting", {}, SCALING_NS)
    flags = scaling_flags(rows)
    assert not flags["depth_varies"]
    assert flags["ratio_spread"] <= 2.0


@pytest.mark.slow
@pytest.mark.parametrize("t_frac", [0.25, 0.5, 0.75])
def test_threshold_size_scaling(t_frac):
    rows = scaling_table("threshold", {"t_frac": t_frac}, SCALING_NS)
    flags = scaling_flags(rows)
    assert not flags["depth_varies"]
    assert flags["ratio_spread"] <= 2.0


def test_or_exp_within_exponential_bound():
    ratios = [compute_metrics(build_circuit("or_exp", form="gadget", n=n)).elementary_size
              / (n * 2 ** n) for n in (2, 3, 4, 5, 6)]
    assert max(ratios) / min(ratios) <= 2.0


def test_all_small_inputs_enumerated():
    assert input_strings(2) == ["00", "10", "01", "11"]
    assert len(set(input_strings(4))) == 16
    assert sorted(input_strings(3)) == sorted("".join(p) for p in itertools.product("01", repeat=3))
