"""Exponential-size circuits from the parity expansion of a Boolean function.

Any f with f(0) = 0 is a real combination of parities,
f(x) = sum_{a != 0} r_a PA^a(x). Summing the phases pi * r_a * PA^a(x) on a
cat state therefore yields (-1)^{f(x)}, which one Hadamard turns into f(x).
"""
from fractions import Fraction
from typing import Dict, Sequence

from qnczero.circuit.angle import PhaseAngle
from qnczero.circuit.builder import CircuitBuilder
from qnczero.circuit.ir import Circuit
from qnczero.errors import ParameterError


def parity_value(a: int, x: int) -> int:
    return bin(a & x).count("1") & 1


def parse_mask(a, n) -> int:
    """Accept an int (bit j is a_j) or a bit string a_0 a_1 ... a_{n-1}."""
    if isinstance(a, str):
        if len(a) != n or set(a) - {"0", "1"}:
            raise ParameterError(f'mask {a!r} is not a {n}-bit string')
        return sum(1 << j for j, ch in enumerate(a) if ch == "1")
    if not 0 <= a < (1 << n):
        raise ParameterError(f'mask {a} does not fit in {n} bits')
    return int(a)


def parity_expansion(table: Sequence[int]) -> Dict[int, Fraction]:
    """Coefficients r_a with f = sum_a r_a PA^a, for a truth table indexed by x (bit j is x_j)."""
    size = len(table)
    n = size.bit_length() - 1
    if size < 2 or size != 1 << n:
        raise ParameterError(f'truth table length {size} is not a power of two >= 2')
    if table[0]:
        raise ParameterError('parity expansion needs f(0) = 0')
    scale = Fraction(-2, size)
    coeffs = {}
    for a in range(1, size):
        total = sum(-1 if parity_value(a, x) else 1 for x in range(size) if table[x])
        coeffs[a] = scale * total
    return coeffs


def or_coefficients(n) -> Dict[int, Fraction]:
    """r_a = 1/2^{n-1} for every nonzero a."""
    r = Fraction(1, 1 << (n - 1))
    return {a: r for a in range(1, 1 << n)}


def emit_fourier_exp(b: CircuitBuilder, ys: Sequence[int], coeffs: Dict[int, Fraction]) -> int:
    """Write f(y) onto a fresh qubit, given the parity expansion of f.

    Registers are allocated in the order R_0..R_{n-1} (input copies), S (one
    qubit per parity of weight >= 2) and T (cat state, one wire per term).
    """
    n = len(ys)
    terms = sorted(a for a, r in coeffs.items() if r != 0)
    if not terms:
        raise ParameterError('function is identically zero')
    multis = [a for a in terms if bin(a).count("1") >= 2]

    # Step 1: copies of each input and one parity per multi-bit term
    need = [sum(1 for a in multis if (a >> j) & 1) for j in range(n)]
    copies = [b.ancillas(c) for c in need]
    for y, r in zip(ys, copies):
        b.fanout(y, r)
    s_reg = b.ancillas(len(multis))
    pools = [iter(r) for r in copies]
    sources = {a: [next(pools[j]) for j in range(n) if (a >> j) & 1] for a in multis}
    for r in copies:
        for q in r:
            b.hadamard(q)
    for q in s_reg:
        b.hadamard(q)
    for s, a in zip(s_reg, multis):
        b.fanout(s, sources[a])
    for r in copies:
        for q in r:
            b.hadamard(q)
    for q in s_reg:
        b.hadamard(q)
    holder = {a: s for s, a in zip(s_reg, multis)}
    for j in range(n):
        holder.setdefault(1 << j, ys[j])

    # Step 2: cat state over T
    t_reg = b.ancillas(len(terms))
    b.hadamard(t_reg[0])
    b.fanout(t_reg[0], t_reg[1:])

    # Step 3: phase pi * r_a on the wire of each term
    for a, w in zip(terms, t_reg):
        b.cphase(holder[a], w, PhaseAngle.from_fraction(coeffs[a]))

    # Step 4: fold the cat state and read the sign
    b.fanout(t_reg[0], t_reg[1:])
    b.hadamard(t_reg[0])
    return t_reg[0]


def build_fourier_exp(n: int, table: Sequence[int], name=None) -> Circuit:
    if len(table) != 1 << n:
        raise ParameterError(f'truth table for {n} bits needs {1 << n} entries, got {len(table)}')
    b = CircuitBuilder(name or f"fourier_exp_{n}")
    ys = b.add_inputs(n)
    b.mark_outputs([emit_fourier_exp(b, ys, parity_expansion(table))])
    return b.build()


def build_or_exp(n: int) -> Circuit:
    """OR_n by the parity expansion; 2^{n+1} + n 2^{n-1} - n - 2 qubits."""
    if n < 1:
        raise ParameterError(f'OR needs n >= 1, got {n}')
    b = CircuitBuilder(f"or_exp_{n}")
    ys = b.add_inputs(n)
    b.mark_outputs([emit_fourier_exp(b, ys, or_coefficients(n))])
    return b.build()
