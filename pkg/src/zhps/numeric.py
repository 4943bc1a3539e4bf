"""Exact phases (rational multiples of a full turn) and tracked global scalars."""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Iterable, Union

__all__ = [
    "Phase",
    "ScalarFactor",
    "phase_add",
    "scalar_combine",
    "scalar_to_complex",
]

PhaseLike = Union["Phase", Fraction, int, float, str]


class Phase:
    """A phase ``2*pi*r`` stored as ``r`` reduced modulo 1.

    ``r`` is a :class:`~fractions.Fraction` when the phase is exact and a
    float otherwise. Exact arithmetic stays exact; anything touching an
    inexact phase becomes inexact.
    """

    __slots__ = ("_value",)

    def __init__(self, value: PhaseLike = 0) -> None:
        if isinstance(value, Phase):
            v = value._value
        elif isinstance(value, str):
            v = Fraction(value.strip())
        elif isinstance(value, float):
            v = value % 1.0
            if v == 1.0:  # -tiny % 1.0 rounds up
                v = 0.0
        else:
            v = Fraction(value)
        if isinstance(v, Fraction):
            v = v - math.floor(v)
        object.__setattr__(self, "_value", v)

    def __setattr__(self, name, value):
        raise AttributeError("Phase is immutable")

    @property
    def value(self) -> Union[Fraction, float]:
        return self._value

    @property
    def exact(self) -> bool:
        return isinstance(self._value, Fraction)

    @classmethod
    def parse(cls, text: str) -> "Phase":
        """Parse ``"p/q"`` (or an integer); raises ValueError on junk."""
        text = text.strip()
        try:
            return cls(Fraction(text))
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"malformed fraction {text!r}") from None

    def is_zero(self) -> bool:
        if self.exact:
            return self._value == 0
        return min(self._value, 1.0 - self._value) < 1e-12

    def __add__(self, other: PhaseLike) -> "Phase":
        other = other if isinstance(other, Phase) else Phase(other)
        if self.exact and other.exact:
            return Phase(self._value + other._value)
        return Phase(float(self._value) + float(other._value))

    __radd__ = __add__

    def __neg__(self) -> "Phase":
        return Phase(-self._value)

    def __sub__(self, other: PhaseLike) -> "Phase":
        other = other if isinstance(other, Phase) else Phase(other)
        return self + (-other)

    def __mul__(self, k: Union[int, Fraction]) -> "Phase":
        if isinstance(k, Phase):
            raise TypeError("phases do not multiply")
        if self.exact and not isinstance(k, float):
            return Phase(self._value * Fraction(k))
        return Phase(float(self._value) * float(k))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, float, str)):
            other = Phase(other)
        if not isinstance(other, Phase):
            return NotImplemented
        if self.exact and other.exact:
            return self._value == other._value
        return (self - other).is_zero()

    def __hash__(self) -> int:
        if self.exact:
            return hash(self._value)
        return hash(round(float(self._value), 9) % 1.0)

    def __float__(self) -> float:
        return float(self._value)

    def to_complex(self) -> complex:
        return cmath.exp(2j * math.pi * float(self._value))

    def __str__(self) -> str:
        if self.exact:
            v = self._value
            return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
        return repr(self._value)

    def __repr__(self) -> str:
        return f"Phase({str(self)!r})" if self.exact else f"Phase({self._value!r})"

    def to_json(self) -> str:
        return str(self)

    @classmethod
    def from_json(cls, obj) -> "Phase":
        if isinstance(obj, str):
            try:
                return cls.parse(obj)
            except ValueError:
                return cls(float(obj))
        return cls(obj)


def phase_add(a: Phase, b: Phase) -> Phase:
    return a + b


class ScalarFactor:
    """Global scalar ``2**(pow2/2) * exp(2*pi*i*phase) * prod(extras)``.

    ``extras`` only collects factors that are not a power of sqrt(2) times
    a unit phase (general H-box labels folded into the scalar).
    """

    __slots__ = ("pow2", "phase", "extras")

    def __init__(self, pow2: int = 0, phase: PhaseLike = 0,
                 extras: Iterable[complex] = ()) -> None:
        object.__setattr__(self, "pow2", int(pow2))
        object.__setattr__(self, "phase", Phase(phase))
        object.__setattr__(self, "extras", tuple(complex(z) for z in extras))

    def __setattr__(self, name, value):
        raise AttributeError("ScalarFactor is immutable")

    @classmethod
    def one(cls) -> "ScalarFactor":
        return cls()

    @classmethod
    def sqrt2(cls, power: int = 1) -> "ScalarFactor":
        return cls(pow2=power)

    def __mul__(self, other: "ScalarFactor") -> "ScalarFactor":
        return ScalarFactor(self.pow2 + other.pow2, self.phase + other.phase,
                            self.extras + other.extras)

    def times(self, pow2: int = 0, phase: PhaseLike = 0,
              extras: Iterable[complex] = ()) -> "ScalarFactor":
        return self * ScalarFactor(pow2, phase, extras)

    def inverse(self) -> "ScalarFactor":
        return ScalarFactor(-self.pow2, -self.phase, [1 / z for z in self.extras])

    def conjugate(self) -> "ScalarFactor":
        return ScalarFactor(self.pow2, -self.phase, [z.conjugate() for z in self.extras])

    @property
    def exact(self) -> bool:
        return self.phase.exact and not self.extras

    def is_one(self) -> bool:
        if not self.extras:
            return self.pow2 == 0 and self.phase.is_zero()
        return abs(self.to_complex() - 1) < 1e-12

    def is_unit_modulus(self) -> bool:
        mag = self.pow2 * 0.5 * math.log(2) + sum(math.log(abs(z)) for z in self.extras if z)
        return all(self.extras) and abs(mag) < 1e-12

    def to_complex(self) -> complex:
        val = math.sqrt(2) ** self.pow2 * self.phase.to_complex()
        for z in self.extras:
            val *= z
        return val

    __complex__ = to_complex

    def __eq__(self, other) -> bool:
        if not isinstance(other, ScalarFactor):
            return NotImplemented
        if self.extras or other.extras:
            return abs(self.to_complex() - other.to_complex()) < 1e-12
        return self.pow2 == other.pow2 and self.phase == other.phase

    def __hash__(self) -> int:
        return hash((self.pow2, self.phase))

    def __repr__(self) -> str:
        s = f"ScalarFactor(pow2={self.pow2}, phase={str(self.phase)!r}"
        if self.extras:
            s += f", extras={list(self.extras)!r}"
        return s + ")"

    def to_json(self) -> dict:
        return {
            "pow2": str(self.pow2),
            "phase": self.phase.to_json(),
            "extras": [[z.real, z.imag] for z in self.extras],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ScalarFactor":
        pow2 = str(obj.get("pow2", "0")).strip()
        # "e/2" and "e" both mean an exponent of e half-powers of two
        if pow2.endswith("/2"):
            pow2 = pow2[:-2]
        extras = [complex(re, im) for re, im in obj.get("extras", [])]
        return cls(int(pow2), Phase.from_json(obj.get("phase", "0")), extras)


def scalar_combine(a: ScalarFactor, b: ScalarFactor) -> ScalarFactor:
    return a * b


def scalar_to_complex(s: ScalarFactor) -> complex:
    return s.to_complex()
