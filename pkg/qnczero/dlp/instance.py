"""Safe-prime discrete-log instances and their classical reduction.

For a safe prime q = 2p + 1 the DLP in (Z/qZ)* splits into an order-2 part,
solved by one modular power, and a DLP in the order-p subgroup generated by
g = g_q^2, which the quantum part solves.
"""
from dataclasses import asdict, dataclass
from typing import Tuple

from qnczero.errors import DlpError, ParameterError


def is_prime(value: int) -> bool:
    if value < 2:
        return False
    if value % 2 == 0:
        return value == 2
    d = 3
    while d * d <= value:
        if value % d == 0:
            return False
        d += 2
    return True


def is_safe_prime(q: int) -> bool:
    return q > 5 and is_prime(q) and is_prime((q - 1) // 2)


def next_safe_prime(lo: int) -> int:
    """Smallest safe prime q >= lo (q > 5)."""
    q = max(lo, 7)
    while not is_safe_prime(q):
        q += 1
    return q


def is_generator(g: int, q: int) -> bool:
    p = (q - 1) // 2
    g %= q
    return g not in (0, 1) and pow(g, 2, q) != 1 and pow(g, p, q) != 1


def mod_inverse(value: int, modulus: int) -> int:
    """Inverse by the extended Euclidean algorithm."""
    r0, r1 = value % modulus, modulus
    s0, s1 = 1, 0
    while r1:
        quotient = r0 // r1
        r0, r1 = r1, r0 - quotient * r1
        s0, s1 = s1, s0 - quotient * s1
    if r0 != 1:
        raise ParameterError(f'{value} has no inverse modulo {modulus}')
    return s0 % modulus


def power_table(base: int, count: int, q: int) -> Tuple[int, ...]:
    """base^{2^j} mod q for j < count, by repeated squaring."""
    table = []
    value = base % q
    for _ in range(count):
        table.append(value)
        value = value * value % q
    return tuple(table)


def iterated_product(table, exponent: int, q: int) -> int:
    """prod_j table[j]^{e_j} mod q for the binary digits e_j of exponent."""
    value = 1
    for j, entry in enumerate(table):
        if (exponent >> j) & 1:
            value = value * entry % q
    return value


@dataclass(frozen=True)
class SafePrimeInstance:
    q: int
    p: int
    g_q: int
    n: int
    m: int

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class ReducedInstance:
    inst: SafePrimeInstance
    x_q: int
    g: int
    x: int
    x_inv: int
    parity_bit: int
    powers_g: Tuple[int, ...]
    powers_x: Tuple[int, ...]
    powers_xinv: Tuple[int, ...]

    @property
    def q(self):
        return self.inst.q

    @property
    def p(self):
        return self.inst.p


def make_instance(q: int, g_q: int = None) -> SafePrimeInstance:
    if not is_safe_prime(q):
        raise ParameterError(f'{q} is not a safe prime greater than 5')
    p = (q - 1) // 2
    if g_q is None:
        g_q = next(g for g in range(2, q) if is_generator(g, q))
    elif not is_generator(g_q, q):
        raise ParameterError(f'{g_q} does not generate (Z/{q}Z)*')
    return SafePrimeInstance(q=q, p=p, g_q=g_q % q, n=q.bit_length(), m=(p - 1).bit_length())


def reduce_input(inst: SafePrimeInstance, x_q: int) -> ReducedInstance:
    q, p, m = inst.q, inst.p, inst.m
    if not 1 <= x_q <= q - 1:
        raise ParameterError(f'x_q must lie in 1..{q - 1}, got {x_q}')
    g = inst.g_q * inst.g_q % q
    x = x_q * x_q % q
    x_inv = mod_inverse(x, q)
    red = ReducedInstance(
        inst=inst,
        x_q=x_q,
        g=g,
        x=x,
        x_inv=x_inv,
        parity_bit=0 if pow(x_q, p, q) == 1 else 1,
        powers_g=power_table(g, m, q),
        powers_x=power_table(x, m, q),
        powers_xinv=power_table(x_inv, m, q),
    )
    for table, base in ((red.powers_g, g), (red.powers_x, x), (red.powers_xinv, x_inv)):
        for j, entry in enumerate(table):
            if entry != pow(base, 1 << j, q):
                raise ParameterError(f'power table entry {j} of {base} mod {q} is wrong')
    if pow(g, p, q) != 1:
        raise ParameterError(f'g = {g} does not have order p = {p}')
    return red


def combine_parity(l: int, parity_bit: int, p: int) -> int:
    """The l_q in 0..2p-1 with l_q = l mod p and l_q = parity_bit mod 2."""
    return l if l % 2 == parity_bit else l + p


def brute_force_log(inst: SafePrimeInstance, x_q: int) -> int:
    value = 1
    for l_q in range(inst.q - 1):
        if value == x_q % inst.q:
            return l_q
        value = value * inst.g_q % inst.q
    raise ParameterError(f'{x_q} is not a power of {inst.g_q} modulo {inst.q}')


def dx_chain_map(red: ReducedInstance, y: int, alpha: int) -> Tuple[int, int]:
    """y -> y x^{-alpha} mod q through two n-bit scratch registers a and b.

    Every step is reversible on its own: a register is only ever XORed with
    a value computed from the other registers.
    """
    q = red.q
    a = b = 0
    a ^= iterated_product(red.powers_xinv, alpha, q)
    b ^= y * a % q
    a ^= iterated_product(red.powers_xinv, alpha, q)
    a ^= iterated_product(red.powers_x, alpha, q)
    y ^= b * a % q
    a ^= iterated_product(red.powers_x, alpha, q)
    if a or y:
        raise DlpError(f'scratch registers not cleared at alpha={alpha}')
    return b, alpha
