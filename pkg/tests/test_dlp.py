import cmath
import math

import numpy as np
import pytest

from qnczero.circuit.oracle import OracleSpec
from qnczero.dlp.circuits import DlpLayout, build_a, build_dlp_circuit, build_phase_flag
from qnczero.dlp.instance import (brute_force_log, combine_parity, dx_chain_map, make_instance,
                                  mod_inverse, next_safe_prime, reduce_input)
from qnczero.dlp.oracles import amplitude_split_matrix, fourier_matrix
from qnczero.dlp.solver import measured_pairs, post_process, q1_state, solve_dlp
from qnczero.errors import DlpError, ParameterError
from qnczero.simulator.analysis import states_equal_up_to_global_phase
from qnczero.simulator.runner import run_unitary
from qnczero.simulator.state import SparseState
from qnczero.verify.harness import input_strings


def character_amplitudes(inst, g, s):
    """|chi^s> = sum_r omega^{sr} |g^r> / sqrt(p) as {z: amplitude}."""
    p, q = inst.p, inst.q
    return {pow(g, r, q): cmath.exp(2j * math.pi * s * r / p) / math.sqrt(p) for r in range(p)}


def test_instance_parameters():
    inst = make_instance(11)
    assert (inst.p, inst.n, inst.m, inst.g_q) == (5, 4, 3, 2)
    assert make_instance(7).g_q == 3
    assert make_instance(23).g_q == 5
    assert DlpLayout.for_instance(inst).width == 11


@pytest.mark.parametrize("q,g_q", [(13, None), (5, None), (11, 3), (11, 12)])
def test_instance_rejects_bad_input(q, g_q):
    with pytest.raises(ParameterError):
        make_instance(q, g_q)


def test_reduction_example():
    red = reduce_input(make_instance(11, 2), 7)
    assert (red.g, red.x, red.x_inv, red.parity_bit) == (4, 5, 9, 1)
    assert red.powers_g == (4, 5, 3)
    assert combine_parity(2, red.parity_bit, 5) == 7
    with pytest.raises(ParameterError):
        reduce_input(make_instance(11), 11)


def test_safe_primes():
    assert [next_safe_prime(lo) for lo in (0, 8, 12, 24, 48)] == [7, 11, 23, 47, 59]
    assert mod_inverse(5, 11) == 9
    with pytest.raises(ParameterError):
        mod_inverse(4, 8)


def test_brute_force_log():
    inst = make_instance(11, 2)
    assert brute_force_log(inst, 7) == 7
    assert brute_force_log(inst, 1) == 0


@pytest.mark.parametrize("p,m", [(3, 2), (5, 3), (11, 4)])
def test_fourier_block_is_unitary(p, m):
    f = fourier_matrix(p, m)
    assert np.allclose(f @ f.conj().T, np.eye(1 << m))
    assert np.allclose(fourier_matrix(p, m, inverse=True), f.conj().T)
    assert np.allclose(f[p:, p:], np.eye((1 << m) - p))


def test_fourier_entries():
    f = fourier_matrix(5, 3)
    assert f[1, 1] == pytest.approx(cmath.exp(2j * math.pi / 5) / math.sqrt(5))
    assert f[0, 4] == pytest.approx(1 / math.sqrt(5))


def test_amplitude_split_is_unitary():
    u = amplitude_split_matrix(5)
    assert np.allclose(u @ u.conj().T, np.eye(2))
    assert abs(u[1, 0]) ** 2 == pytest.approx(5 / 8)
    assert np.allclose(amplitude_split_matrix(5, inverse=True), u.conj().T)


def test_modexp_permutation():
    action = OracleSpec.make("modexp_g", q=11, g=4, m=3, n=4, inverse=False).action()
    assert action.permutation[2 | (1 << 3)] == 2 | (5 << 3)
    assert all(action.permutation[r] == r for r in range(8))
    inverse = OracleSpec.make("modexp_g", q=11, g=4, m=3, n=4, inverse=True).action()
    for v in range(1 << 7):
        assert inverse.permutation[action.permutation[v]] == v


@pytest.mark.parametrize("q,x_q", [(11, 7), (23, 10), (7, 5)])
def test_dx_eigenphase(q, x_q):
    inst = make_instance(q)
    red = reduce_input(inst, x_q)
    l = brute_force_log(inst, x_q) % inst.p
    action = OracleSpec.make("d_x", q=q, x=red.x, p=inst.p, m=inst.m, n=inst.n,
                             inverse=False).action()
    matrix = action.to_matrix()
    omega = cmath.exp(2j * math.pi / inst.p)
    for s in range(inst.p):
        for alpha in range(inst.p):
            v = np.zeros(1 << (inst.m + inst.n), dtype=complex)
            for z, amp in character_amplitudes(inst, red.g, s).items():
                v[z | (alpha << inst.n)] = amp
            assert np.allclose(matrix @ v, omega ** (s * l * alpha) * v)


@pytest.mark.parametrize("q", [7, 11, 23])
def test_dx_chain_matches_oracle(q):
    inst = make_instance(q)
    for x_q in (2, q - 2):
        red = reduce_input(inst, x_q)
        action = OracleSpec.make("d_x", q=q, x=red.x, p=inst.p, m=inst.m, n=inst.n,
                                 inverse=False).action()
        for alpha in range(inst.p):
            for y in range(1, q):
                b, a = dx_chain_map(red, y, alpha)
                assert a == alpha
                assert action.permutation[y | (alpha << inst.n)] == b | (alpha << inst.n)


def test_phase_flag_oracles():
    a = OracleSpec.make("phase_flag_A", m=2, inverse=False).action()
    assert a.diagonal[0b101] == 1j
    assert a.diagonal[0b100] == 1
    assert a.diagonal[0b001] == 1
    zero = OracleSpec.make("phase_flag_zero", width=3, inverse=True).action()
    assert zero.diagonal[0] == -1j
    assert all(d == 1 for d in zero.diagonal[1:])


@pytest.mark.parametrize("kind,m,n", [("A", 2, None), ("A", 3, None), ("zero", 1, 1), ("zero", 2, 2)])
def test_phase_flag_circuits(kind, m, n):
    circuit = build_phase_flag(kind, m, n)
    width = len(circuit.input_qubits)
    for x in input_strings(width):
        label = int(x[::-1], 2)
        s = label & ((1 << m) - 1)
        if kind == "A":
            flagged = bool(s) and (label >> m) & 1
        else:
            flagged = label == 0
        state = run_unitary(circuit, x)
        assert state.amplitude(label) == pytest.approx(1j if flagged else 1)


def test_phase_flag_errors():
    with pytest.raises(ParameterError):
        build_phase_flag("B", 2)
    with pytest.raises(ParameterError):
        build_phase_flag("zero", 2)


@pytest.mark.parametrize("q", [7, 11, 23])
def test_a_prepares_half_good_mass(q):
    inst = make_instance(q)
    layout = DlpLayout.for_instance(inst)
    state = run_unitary(build_a(inst, reduce_input(inst, 1)))
    s_mask = (1 << inst.m) - 1
    good = nonzero = 0.0
    for label, amp in state.terms.items():
        if label & s_mask:
            nonzero += abs(amp) ** 2
            if (label >> layout.anc) & 1:
                good += abs(amp) ** 2
    assert nonzero == pytest.approx(1 - 1 / inst.p)
    assert good == pytest.approx(0.5)


@pytest.mark.parametrize("q", [7, 11])
def test_q1_prepares_character_states(q):
    inst = make_instance(q)
    layout = DlpLayout.for_instance(inst)
    g = inst.g_q ** 2 % q
    terms = {}
    for s in range(1, inst.p):
        for z, amp in character_amplitudes(inst, g, s).items():
            terms[s | (z << inst.m) | (1 << layout.anc)] = amp / math.sqrt(inst.p - 1)
    expected = SparseState.from_terms(layout.width, terms)
    assert states_equal_up_to_global_phase(q1_state(q, inst.g_q), expected)


@pytest.mark.parametrize("q,x_q", [(11, 7), (11, 3), (23, 10)])
def test_q2_branches_read_s_times_l(q, x_q):
    inst = make_instance(q)
    red = reduce_input(inst, x_q)
    l = brute_force_log(inst, x_q) % inst.p
    pairs = list(measured_pairs(inst, red))
    assert sorted(s for s, _, _ in pairs) == list(range(1, inst.p))
    for s, v, prob in pairs:
        assert v == s * l % inst.p
        assert prob == pytest.approx(1 / (inst.p - 1))


@pytest.mark.parametrize("q,g_q,x_q,l_q", [(11, 2, 7, 7), (7, 3, 1, 0), (23, 5, 10, 3)])
def test_solve_examples(q, g_q, x_q, l_q):
    inst = make_instance(q, g_q)
    assert solve_dlp(inst, x_q, mode="all_branches").l_q == l_q
    assert solve_dlp(inst, x_q, seed=1).l_q == l_q


def test_sampling_is_seeded():
    inst = make_instance(11)
    first = solve_dlp(inst, 7, seed=5)
    second = solve_dlp(inst, 7, seed=5)
    assert first.branches == second.branches
    assert len(first.branches) == 1


def test_circuit_flags_agree_with_oracle_flags():
    inst = make_instance(7)
    oracle_state = q1_state(7, inst.g_q, "oracle")
    circuit_state = q1_state(7, inst.g_q, "circuit")
    assert states_equal_up_to_global_phase(oracle_state, circuit_state)
    assert solve_dlp(inst, 5, mode="all_branches", flags="circuit").l_q == 5


def test_post_process_rejects_zero_s():
    inst = make_instance(11)
    red = reduce_input(inst, 7)
    with pytest.raises(DlpError):
        post_process(inst, red, 0, 1)
    with pytest.raises(ParameterError):
        solve_dlp(inst, 7, mode="guess")


def test_full_circuit_measures_s_and_alpha():
    inst = make_instance(7)
    circuit = build_dlp_circuit(inst, reduce_input(inst, 5))
    assert circuit.classical_bit_count == 2 * inst.m
    assert list(circuit.output_qubits) == DlpLayout.for_instance(inst).readout


@pytest.mark.slow
@pytest.mark.parametrize("q", [7, 11, 23])
def test_every_element(q):
    inst = make_instance(q)
    for x_q in range(1, q):
        result = solve_dlp(inst, x_q, mode="all_branches")
        assert result.l_q == brute_force_log(inst, x_q)
        assert pow(inst.g_q, result.l_q, q) == x_q
