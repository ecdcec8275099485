import math

from qnczero.errors import ParameterError


def _ceil_log2_minus_one(value, halve=False):
    if value <= 1:
        return 0
    exponent = math.log2(value)
    if halve:
        exponent /= 2
    return max(0, math.ceil(exponent) - 1)


def choose_level(n: int, t: int) -> int:
    """Number of low-order bits to count before the exact-sum stage.

    Balances the 2^l n counting cost against the 2^{-l} t n log n exact-sum
    cost, with the regimes near t = 1 and t = n handled separately.
    """
    if n < 1 or not 1 <= t <= n:
        raise ParameterError(f'choose_level needs 1 <= t <= n, got t={t}, n={n}')
    lg = math.log2(n)
    if t <= lg:
        l = _ceil_log2_minus_one(t + 1)
    elif t <= math.ceil(n / 2):
        l = _ceil_log2_minus_one(t * lg, halve=True)
    elif t <= n - lg:
        l = _ceil_log2_minus_one((n - t + 1) * lg, halve=True)
    else:
        l = _ceil_log2_minus_one(n - t + 2)
    return min(l, t.bit_length() - 1)
