"""Oracle gates of the discrete-log circuits.

The actions are built from classical parameters only, so the same spec always
resolves to the same (cached) table.
"""
import math

import numpy as np

from qnczero.circuit.oracle import OracleAction, OracleSpec, register_oracle
from qnczero.dlp.instance import ReducedInstance, iterated_product, mod_inverse, power_table
from qnczero.errors import ParameterError
from qnczero.utils import build_logger

logger = build_logger("qnczero.dlp")


def fourier_matrix(p: int, m: int, inverse=False) -> np.ndarray:
    """F_p on the first p basis states of m qubits, identity above."""
    size = 1 << m
    out = np.eye(size, dtype=complex)
    k = np.arange(p)
    sign = -1 if inverse else 1
    out[:p, :p] = np.exp(sign * 2j * np.pi * np.outer(k, k) / p) / math.sqrt(p)
    return out


@register_oracle("fourier_p")
def fourier_oracle(p, m, inverse=False):
    logger.debug("fourier_p p=%d m=%d inverse=%s", p, m, inverse)
    return OracleAction(m, matrix=fourier_matrix(p, m, inverse), support=(0, m, p))


@register_oracle("modexp_g")
def modexp_oracle(q, g, m, n, inverse=False):
    """|r>|z> -> |r>|z g^{+-r} mod q> for z in (Z/qZ)*; r is the low m bits."""
    base = mod_inverse(g, q) if inverse else g
    table = power_table(base, m, q)
    perm = list(range(1 << (m + n)))
    for r in range(1 << m):
        factor = iterated_product(table, r, q)
        for z in range(1, q):
            perm[r | (z << m)] = r | ((z * factor % q) << m)
    logger.debug("modexp_g q=%d g=%d inverse=%s", q, g, inverse)
    return OracleAction(m + n, permutation=tuple(perm))


@register_oracle("d_x")
def dx_oracle(q, x, p, m, n, inverse=False):
    """|y>|alpha> -> |y x^{-+alpha} mod q>|alpha> for y in (Z/qZ)*, alpha < p; y is the low n bits."""
    base = x if inverse else mod_inverse(x, q)
    table = power_table(base, m, q)
    perm = list(range(1 << (m + n)))
    for alpha in range(p):
        factor = iterated_product(table, alpha, q)
        for y in range(1, q):
            perm[y | (alpha << n)] = (y * factor % q) | (alpha << n)
    logger.debug("d_x q=%d x=%d inverse=%s", q, x, inverse)
    return OracleAction(m + n, permutation=tuple(perm))


def amplitude_split_matrix(p: int, inverse=False) -> np.ndarray:
    a, b = math.sqrt(p - 2), math.sqrt(p)
    out = np.array([[a, -b], [b, a]], dtype=complex) / math.sqrt(2 * (p - 1))
    return out.T if inverse else out


@register_oracle("amplitude_split")
def amplitude_split_oracle(p, inverse=False):
    return OracleAction(1, matrix=amplitude_split_matrix(p, inverse))


@register_oracle("phase_flag_zero")
def phase_flag_zero_oracle(width, inverse=False):
    """Multiply |0...0> by i (or -i)."""
    diagonal = [1 + 0j] * (1 << width)
    diagonal[0] = -1j if inverse else 1j
    return OracleAction(width, diagonal=tuple(diagonal))


@register_oracle("phase_flag_A")
def phase_flag_a_oracle(m, inverse=False):
    """Multiply |s>|1> by i (or -i) when s != 0; s is the low m bits."""
    flag = -1j if inverse else 1j
    diagonal = tuple(flag if (v >> m) & 1 and v & ((1 << m) - 1) else 1 + 0j
                     for v in range(1 << (m + 1)))
    return OracleAction(m + 1, diagonal=diagonal)


def build_fourier_oracle(p: int, m: int, inverse=False) -> OracleSpec:
    return OracleSpec.make("fourier_p", p=p, m=m, inverse=inverse)


def build_arithmetic_oracle(kind: str, red: ReducedInstance, inverse=False) -> OracleSpec:
    inst = red.inst
    if kind == "modexp_g":
        return OracleSpec.make("modexp_g", q=inst.q, g=red.g, m=inst.m, n=inst.n, inverse=inverse)
    elif kind == "d_x":
        return OracleSpec.make("d_x", q=inst.q, x=red.x, p=inst.p, m=inst.m, n=inst.n,
                               inverse=inverse)
    raise ParameterError(f'Unknown arithmetic oracle: {kind}')


def build_amplitude_split(p: int, inverse=False) -> OracleSpec:
    return OracleSpec.make("amplitude_split", p=p, inverse=inverse)
