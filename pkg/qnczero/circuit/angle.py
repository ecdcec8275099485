import cmath
import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True, order=True)
class PhaseAngle:
    """An exact rational multiple of pi, stored as num/den half-turns.

    Angles are kept in lowest terms and reduced into [0, 2) half-turns, so two
    angles that describe the same phase compare equal.
    """
    num: int = 0
    den: int = 1

    def __post_init__(self):
        if self.den <= 0:
            raise ValueError(f'PhaseAngle denominator must be positive, got {self.den}')
        value = Fraction(self.num, self.den) % 2
        object.__setattr__(self, "num", value.numerator)
        object.__setattr__(self, "den", value.denominator)

    @classmethod
    def from_fraction(cls, value):
        value = Fraction(value)
        return cls(value.numerator, value.denominator)

    @classmethod
    def dyadic(cls, num, k):
        """num * pi / 2**k"""
        return cls(num, 1 << k)

    @property
    def half_turns(self):
        return Fraction(self.num, self.den)

    @property
    def radians(self):
        return math.pi * self.num / self.den

    def phase(self):
        """exp(i * theta), exact on quarter turns."""
        value = self.half_turns
        if value == 0:
            return 1 + 0j
        if value == Fraction(1, 2):
            return 1j
        if value == 1:
            return -1 + 0j
        if value == Fraction(3, 2):
            return -1j
        return cmath.exp(1j * self.radians)

    def is_zero(self):
        return self.num == 0

    def __add__(self, other):
        return PhaseAngle.from_fraction(self.half_turns + other.half_turns)

    def __sub__(self, other):
        return PhaseAngle.from_fraction(self.half_turns - other.half_turns)

    def __neg__(self):
        return PhaseAngle.from_fraction(-self.half_turns)

    def __mul__(self, factor):
        return PhaseAngle.from_fraction(self.half_turns * factor)

    __rmul__ = __mul__

    def to_dict(self):
        return {"num": self.num, "den": self.den}

    def __str__(self):
        if self.num == 0:
            return "0"
        return f"{self.num}pi/{self.den}" if self.den != 1 else f"{self.num}pi"


ZERO = PhaseAngle(0, 1)
PI = PhaseAngle(1, 1)
HALF_PI = PhaseAngle(1, 2)
