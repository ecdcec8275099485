"""Quantum parts of the exact discrete-log algorithm.

Register layout over 2m + n + 1 qubits: s (m), z (n), one amplitude ancilla,
alpha (m). Phase-flag circuits, when expanded, add their ancillas after alpha.
Q1 prepares sum_{s>=1} |s>|chi^s>|1> / sqrt(p-1) with a single Grover
iteration; Q2 writes s*l mod p into alpha by phase kickback from D_x.
"""
from dataclasses import dataclass
from typing import List

from qnczero.builders.or_circuits import or_circuit
from qnczero.circuit.angle import HALF_PI, ZERO
from qnczero.circuit.builder import CircuitBuilder
from qnczero.circuit.ir import Circuit
from qnczero.circuit.normalize import normalize_to_gadget_form
from qnczero.circuit.oracle import OracleSpec
from qnczero.dlp.instance import ReducedInstance, SafePrimeInstance
from qnczero.dlp.oracles import build_amplitude_split, build_arithmetic_oracle, build_fourier_oracle
from qnczero.errors import ParameterError

FLAG_MODES = ("oracle", "circuit")


@dataclass(frozen=True)
class DlpLayout:
    s: List[int]
    z: List[int]
    anc: int
    alpha: List[int]

    @classmethod
    def for_instance(cls, inst: SafePrimeInstance):
        m, n = inst.m, inst.n
        return cls(s=list(range(m)), z=list(range(m, m + n)), anc=m + n,
                   alpha=list(range(m + n + 1, 2 * m + n + 1)))

    @property
    def width(self):
        return len(self.s) + len(self.z) + 1 + len(self.alpha)

    @property
    def readout(self):
        """Measured qubits in classical-bit order: s then alpha, LSB first."""
        return self.s + self.alpha


def _allocate(b: CircuitBuilder, inst: SafePrimeInstance) -> DlpLayout:
    layout = DlpLayout.for_instance(inst)
    b.ancillas(layout.width)
    b.mark_outputs(layout.readout)
    return layout


def build_phase_flag(kind: str, m: int, n: int = None) -> Circuit:
    """Multiply flagged basis states by i using OR, a controlled phase and the inverse OR.

    kind "A": inputs s (m qubits) and one ancilla; flagged when s != 0 and the
    ancilla is 1. kind "zero": inputs m + n + 1 qubits; flagged when all are 0.
    """
    if kind not in ("A", "zero"):
        raise ParameterError(f'Unknown phase flag: {kind}')
    if m < 1 or (kind == "zero" and (n is None or n < 1)):
        raise ParameterError(f'phase flag needs m, n >= 1, got m={m}, n={n}')
    b = CircuitBuilder(f"phase_flag_{kind}_{m}" + ("" if kind == "A" else f"_{n}"))
    if kind == "A":
        qubits = b.add_inputs(m + 1)
        sub = or_circuit(m)
        mapping = b.embed(sub, qubits[:m])
        flag = mapping[sub.output_qubits[0]]
        b.cphase(flag, qubits[m], HALF_PI)
    else:
        qubits = b.add_inputs(m + n + 1)
        sub = or_circuit(m + n + 1)
        mapping = b.embed(sub, qubits)
        flag = mapping[sub.output_qubits[0]]
        b.not_(flag)
        b.phase(flag, HALF_PI)
        b.not_(flag)
    b.embed(sub.inverse(), (), qubit_map=mapping)
    return b.build()


def _emit_phase_flag(b, layout: DlpLayout, kind, inst, flags):
    m, n = inst.m, inst.n
    qubits = layout.s + [layout.anc] if kind == "A" else layout.s + layout.z + [layout.anc]
    if flags == "oracle":
        spec = (OracleSpec.make("phase_flag_A", m=m, inverse=False) if kind == "A"
                else OracleSpec.make("phase_flag_zero", width=len(qubits), inverse=False))
        b.oracle(spec, qubits)
    else:
        b.embed(normalize_to_gadget_form(build_phase_flag(kind, m, n)), qubits)


def emit_a(b, layout: DlpLayout, inst: SafePrimeInstance, red: ReducedInstance, inverse=False):
    """Steps 1-4: seed z = 1, F_p on s, g^s times z, F_p on s, then split the ancilla."""
    steps = [
        lambda inv: b.not_(layout.z[0]),
        lambda inv: b.oracle(build_fourier_oracle(inst.p, inst.m, inv), layout.s),
        lambda inv: b.oracle(build_arithmetic_oracle("modexp_g", red, inv), layout.s + layout.z),
        lambda inv: b.oracle(build_fourier_oracle(inst.p, inst.m, inv), layout.s),
        lambda inv: b.oracle(build_amplitude_split(inst.p, inv), [layout.anc]),
    ]
    for step in (reversed(steps) if inverse else steps):
        step(inverse)


def build_a(inst: SafePrimeInstance, red: ReducedInstance) -> Circuit:
    b = CircuitBuilder(f"dlp_a_{inst.q}")
    layout = _allocate(b, inst)
    emit_a(b, layout, inst, red)
    return b.build()


def emit_q1(b, layout, inst, red, flags="oracle"):
    if flags not in FLAG_MODES:
        raise ParameterError(f'Unknown flag mode: {flags}')
    emit_a(b, layout, inst, red)
    _emit_phase_flag(b, layout, "A", inst, flags)
    emit_a(b, layout, inst, red, inverse=True)
    _emit_phase_flag(b, layout, "zero", inst, flags)
    emit_a(b, layout, inst, red)


def emit_q2(b, layout, inst, red, measure=False):
    b.oracle(build_fourier_oracle(inst.p, inst.m), layout.alpha)
    b.oracle(build_arithmetic_oracle("d_x", red), layout.z + layout.alpha)
    b.oracle(build_fourier_oracle(inst.p, inst.m, inverse=True), layout.alpha)
    if measure:
        emit_readout(b, layout)


def emit_readout(b, layout):
    """Computational-basis readout of s and alpha as H then A(0)."""
    cbits = []
    for q in layout.readout:
        b.hadamard(q)
        cbits.append(b.measure_a(q, ZERO))
    return cbits


def build_q1(inst: SafePrimeInstance, red: ReducedInstance, flags="oracle") -> Circuit:
    b = CircuitBuilder(f"dlp_q1_{inst.q}_{flags}")
    emit_q1(b, _allocate(b, inst), inst, red, flags)
    return b.build()


def build_q2(inst: SafePrimeInstance, red: ReducedInstance, measure=False) -> Circuit:
    b = CircuitBuilder(f"dlp_q2_{inst.q}")
    emit_q2(b, _allocate(b, inst), inst, red, measure)
    return b.build()


def build_dlp_circuit(inst: SafePrimeInstance, red: ReducedInstance, flags="oracle",
                      measure=True) -> Circuit:
    b = CircuitBuilder(f"dlp_{inst.q}_{red.x_q}_{flags}")
    layout = _allocate(b, inst)
    emit_q1(b, layout, inst, red, flags)
    emit_q2(b, layout, inst, red, measure)
    return b.build()
