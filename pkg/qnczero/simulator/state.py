"""Factored sparse state.

A SparseState is a definite basis part (`base`, one bit per qubit, any
width), a global scalar, and a set of independent factors. Each factor owns a
disjoint set of qubits and maps labels over those qubits to amplitudes.
Qubits owned by no factor hold the definite value in `base`.

Gates merge only the factors they touch. After each gate, bits that became
constant across a factor move back into `base` and a factor left with a single
term is dissolved, so GHZ-like states over thousands of qubits stay small.
"""
import math
from typing import Dict, Iterable, List, Optional

from qnczero.constants import MATERIALIZE_TERM_LIMIT, SNAP_TOLERANCE
from qnczero.errors import SimulationError


def iter_bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Factor:
    __slots__ = ("mask", "terms")

    def __init__(self, mask: int, terms: Dict[int, complex]):
        self.mask = mask
        self.terms = terms

    def norm_squared(self):
        return sum(abs(a) ** 2 for a in self.terms.values())

    def copy(self):
        return Factor(self.mask, dict(self.terms))


class SparseState:
    def __init__(self, width: int, base: int = 0, scalar: complex = 1 + 0j,
                 factors: Optional[Iterable[Factor]] = None, snap=SNAP_TOLERANCE):
        self.width = width
        self.base = base
        self.scalar = complex(scalar)
        self.snap = snap
        self._factors: Dict[int, Factor] = {}
        self._owner: Dict[int, Factor] = {}
        for f in factors or ():
            self._register(f)

    @classmethod
    def basis(cls, width, label=0):
        if label >> width:
            raise SimulationError(f'label {label} wider than {width} qubits')
        return cls(width, base=label)

    @classmethod
    def from_terms(cls, width, terms: Dict[int, complex], snap=SNAP_TOLERANCE):
        if not terms:
            raise SimulationError('empty state')
        state = cls(width, snap=snap)
        factor = Factor((1 << width) - 1, dict(terms))
        state._register(factor)
        state._settle(factor)
        return state

    # bookkeeping

    def _register(self, factor):
        self._factors[id(factor)] = factor
        for q in iter_bits(factor.mask):
            self._owner[q] = factor

    def _drop(self, factor):
        del self._factors[id(factor)]
        for q in iter_bits(factor.mask):
            if self._owner.get(q) is factor:
                del self._owner[q]

    @property
    def factors(self) -> List[Factor]:
        return list(self._factors.values())

    def copy(self):
        return SparseState(self.width, self.base, self.scalar,
                           (f.copy() for f in self._factors.values()), snap=self.snap)

    def check_range(self, qubits):
        for q in qubits:
            if not 0 <= q < self.width:
                raise SimulationError(f'qubit {q} out of range for width {self.width}')

    def gather(self, qubits) -> Factor:
        """Merge every factor touching `qubits` (and their base bits) into one factor."""
        touched = []
        seen = set()
        extra = 0
        for q in qubits:
            f = self._owner.get(q)
            if f is None:
                extra |= 1 << q
            elif id(f) not in seen:
                seen.add(id(f))
                touched.append(f)
        if len(touched) == 1 and not extra:
            return touched[0]
        base_bits = self.base & extra
        self.base &= ~extra
        terms = {base_bits: 1 + 0j}
        mask = extra
        for f in touched:
            terms = {a | b: x * y for a, x in terms.items() for b, y in f.terms.items()}
            mask |= f.mask
            self._drop(f)
        merged = Factor(mask, terms)
        self._register(merged)
        return merged

    def _settle(self, factor):
        snap = self.snap
        norm_sq = factor.norm_squared()
        if norm_sq == 0.0:
            raise SimulationError('state vanished below the snap tolerance')
        # factors are kept at unit norm; the scale moves into the scalar
        if abs(norm_sq - 1.0) > snap:
            norm = math.sqrt(norm_sq)
            factor.terms = {l: a / norm for l, a in factor.terms.items()}
            self.scalar *= norm
        terms = {l: a for l, a in factor.terms.items() if abs(a) > snap}
        if not terms:
            raise SimulationError('state vanished below the snap tolerance')
        ones = factor.mask
        seen = 0
        for l in terms:
            ones &= l
            seen |= l
        constant = ones | (factor.mask & ~seen)
        if constant:
            self.base |= ones
            if ones:
                terms = {l & ~ones: a for l, a in terms.items()}
            for q in iter_bits(constant):
                del self._owner[q]
            factor.mask &= ~constant
        if len(terms) == 1:
            (label, amp), = terms.items()
            self.base |= label
            self.scalar *= amp
            self._drop(factor)
        else:
            factor.terms = terms

    def transform(self, qubits, kernel):
        """Apply kernel(terms) -> terms to the factor holding `qubits`."""
        factor = self.gather(qubits)
        factor.terms = kernel(factor.terms)
        self._settle(factor)

    # queries

    def norm_squared(self):
        total = abs(self.scalar) ** 2
        for f in self._factors.values():
            total *= f.norm_squared()
        return total

    def bit(self, qubit):
        """Definite value of a qubit, or None when it is in superposition."""
        if qubit in self._owner:
            return None
        return (self.base >> qubit) & 1

    def probability(self, qubit, value):
        f = self._owner.get(qubit)
        if f is None:
            return 1.0 if ((self.base >> qubit) & 1) == value else 0.0
        bit = 1 << qubit
        total = f.norm_squared()
        hit = sum(abs(a) ** 2 for l, a in f.terms.items() if bool(l & bit) == bool(value))
        return hit / total

    def project(self, qubit, value):
        """Keep the branch where `qubit` reads `value`; renormalizes and returns its probability."""
        p = self.probability(qubit, value)
        if p <= 0.0:
            raise SimulationError(f'projection of qubit {qubit} onto {value} has zero probability')
        f = self._owner.get(qubit)
        if f is not None:
            bit = 1 << qubit
            f.terms = {l: a for l, a in f.terms.items() if bool(l & bit) == bool(value)}
            self._settle(f)
        self.scalar /= math.sqrt(p)
        return p

    def marginal(self, qubits) -> Dict[str, float]:
        position = {q: i for i, q in enumerate(qubits)}
        fixed = 0
        groups = {}
        for q, i in position.items():
            f = self._owner.get(q)
            if f is None:
                if (self.base >> q) & 1:
                    fixed |= 1 << i
            else:
                groups.setdefault(id(f), (f, []))[1].append(q)
        dist = {fixed: 1.0}
        for f, members in groups.values():
            total = f.norm_squared()
            local = {}
            for l, a in f.terms.items():
                key = 0
                for q in members:
                    if (l >> q) & 1:
                        key |= 1 << position[q]
                local[key] = local.get(key, 0.0) + abs(a) ** 2 / total
            dist = {x | y: px * py for x, px in dist.items() for y, py in local.items()}
        width = len(qubits)
        return {"".join("1" if (k >> i) & 1 else "0" for i in range(width)): p
                for k, p in dist.items() if p > self.snap}

    @property
    def term_count(self):
        count = 1
        for f in self._factors.values():
            count *= len(f.terms)
        return count

    @property
    def terms(self) -> Dict[int, complex]:
        """The flat label -> amplitude map."""
        if self.term_count > MATERIALIZE_TERM_LIMIT:
            raise SimulationError(f'state has {self.term_count} terms, too many to materialize')
        terms = {self.base: self.scalar}
        for f in self._factors.values():
            terms = {a | b: x * y for a, x in terms.items() for b, y in f.terms.items()}
        return {l: a for l, a in terms.items() if abs(a) > self.snap}

    def amplitude(self, label):
        amp = self.scalar
        if (label & ~self._factor_mask()) != self.base:
            return 0j
        for f in self._factors.values():
            amp *= f.terms.get(label & f.mask, 0j)
        return amp

    def _factor_mask(self):
        mask = 0
        for f in self._factors.values():
            mask |= f.mask
        return mask

    def label_string(self, label):
        return "".join("1" if (label >> q) & 1 else "0" for q in range(self.width))

    def __repr__(self):
        return f"SparseState(width={self.width}, factors={len(self._factors)}, terms={self.term_count})"
