from qnczero.builders.fourier import parse_mask
from qnczero.circuit.builder import CircuitBuilder
from qnczero.circuit.ir import Circuit
from qnczero.errors import ParameterError


def build_parity(n: int, a) -> Circuit:
    """z xor PA^a(x): Hadamards on the target and the selected inputs around one fan-out.

    The fan-out is controlled by the target, so the sandwich computes the
    parity into it. Depth 3, elementary size 3|a| + 3.
    """
    mask = parse_mask(a, n)
    if mask == 0:
        raise ParameterError('parity mask must be nonzero')
    b = CircuitBuilder(f"parity_{n}_{mask}")
    xs = b.add_inputs(n)
    target = b.ancilla()
    b.mark_outputs([target])
    b.parity_gates([x for j, x in enumerate(xs) if (mask >> j) & 1], target)
    return b.build()
