"""Named oracle gates.

An oracle is referenced from the IR by name and parameters only; the action
(a permutation table, a diagonal of phases or a dense unitary block) is
produced on demand by a registered factory and cached.
"""
import functools
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from qnczero.errors import SimulationError

ORACLE_REGISTRY: Dict[str, Callable[..., "OracleAction"]] = {}


def register_oracle(name):
    def register(factory):
        ORACLE_REGISTRY[name] = factory
        return factory
    return register


@dataclass(frozen=True)
class OracleSpec:
    name: str
    params: Tuple[Tuple[str, object], ...] = ()

    @classmethod
    def make(cls, name, **params):
        return cls(name, tuple(sorted(params.items())))

    @property
    def kwargs(self):
        return dict(self.params)

    @property
    def is_inverse(self):
        return bool(self.kwargs.get("inverse", False))

    def inverted(self):
        params = self.kwargs
        params["inverse"] = not params.get("inverse", False)
        return OracleSpec.make(self.name, **params)

    def action(self):
        return resolve_oracle(self)

    def to_dict(self):
        return {"name": self.name, "params": dict(self.params)}

    @classmethod
    def from_dict(cls, data):
        return cls.make(data["name"], **data.get("params", {}))


@dataclass(frozen=True)
class OracleAction:
    """Action of an oracle on its qubits; qubit i of the gate is bit i of the local value."""
    arity: int
    permutation: Optional[Tuple[int, ...]] = None
    diagonal: Optional[Tuple[complex, ...]] = None
    matrix: Optional[np.ndarray] = field(default=None, compare=False)
    # (shift, width, bound): the register at bits shift..shift+width-1 stays below bound
    support: Optional[Tuple[int, int, int]] = None

    def __post_init__(self):
        given = [x is not None for x in (self.permutation, self.diagonal, self.matrix)]
        if sum(given) != 1:
            raise ValueError('OracleAction needs exactly one of permutation, diagonal, matrix')
        size = 1 << self.arity
        if self.permutation is not None:
            if len(self.permutation) != size or sorted(self.permutation) != list(range(size)):
                raise ValueError('oracle permutation is not a bijection of its domain')
        if self.diagonal is not None and len(self.diagonal) != size:
            raise ValueError('oracle diagonal has the wrong length')
        if self.matrix is not None and self.matrix.shape != (size, size):
            raise ValueError('oracle matrix has the wrong shape')

    @property
    def kind(self):
        if self.permutation is not None:
            return "permutation"
        if self.diagonal is not None:
            return "diagonal"
        return "unitary"

    @functools.cached_property
    def columns(self):
        """Nonzero entries of each column of a unitary block."""
        cols = []
        for v in range(1 << self.arity):
            col = self.matrix[:, v]
            cols.append(tuple((int(w), complex(col[w])) for w in np.flatnonzero(np.abs(col) > 0)))
        return tuple(cols)

    def check_support(self, local):
        """Raise when a basis value lies outside the declared support register."""
        if self.support is None:
            return
        shift, width, bound = self.support
        if (local >> shift) & ((1 << width) - 1) >= bound:
            raise SimulationError(
                f'state left the support {{0..{bound - 1}}} of an oracle register')

    def to_matrix(self):
        size = 1 << self.arity
        if self.matrix is not None:
            return self.matrix
        if self.diagonal is not None:
            return np.diag(np.asarray(self.diagonal, dtype=complex))
        out = np.zeros((size, size), dtype=complex)
        out[list(self.permutation), list(range(size))] = 1
        return out


@functools.lru_cache(maxsize=256)
def resolve_oracle(spec):
    factory = ORACLE_REGISTRY.get(spec.name)
    if factory is None:
        raise SimulationError(f'Unknown oracle: {spec.name}')
    return factory(**spec.kwargs)
