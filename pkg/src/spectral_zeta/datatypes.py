"""Small value types passed between modules."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple


@dataclass(frozen=True)
class EvalResult:
    """A real value with an error estimate (absolute)."""

    value: float
    error_estimate: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))
        object.__setattr__(self, "error_estimate", float(self.error_estimate))
        if math.isnan(self.value):
            raise ValueError("EvalResult value is NaN")
        if not (self.error_estimate >= 0.0 and math.isfinite(self.error_estimate)):
            raise ValueError(f"bad error estimate {self.error_estimate!r}")

    def __float__(self):
        return float(self.value)

    def __add__(self, other):
        if isinstance(other, EvalResult):
            return EvalResult(self.value + other.value, self.error_estimate + other.error_estimate)
        return EvalResult(self.value + float(other), self.error_estimate)

    __radd__ = __add__

    def __neg__(self):
        return EvalResult(-self.value, self.error_estimate)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor: float) -> "EvalResult":
        factor = float(factor)
        return EvalResult(factor * self.value, abs(factor) * self.error_estimate)


@dataclass(frozen=True)
class TermParams:
    """Parameters (a, b, c) of a building-block series sum_n F(cn) / [(cn+a)(cn+b)]^s."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.a <= -1 or self.b <= -1:
            raise ValueError("TermParams requires a, b > -1")
        if self.c <= 0:
            raise ValueError("TermParams requires c > 0")
        if self.a + self.c <= 0 or self.b + self.c <= 0:
            raise ValueError("TermParams requires a + c > 0 and b + c > 0")

    def as_floats(self) -> Tuple[float, float, float]:
        return float(self.a), float(self.b), float(self.c)


@dataclass(frozen=True)
class Pole:
    """A simple pole with exact location and residue."""

    location: Fraction
    residue: Fraction
    scale: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "location", Fraction(self.location))
        object.__setattr__(self, "residue", Fraction(self.residue))
        if self.residue == 0:
            raise ValueError("a Pole must have a nonzero residue")


@dataclass(frozen=True)
class Term:
    """weight * z_kind(s - shift; params)."""

    weight: Fraction
    shift: int
    kind: str  # "even" | "odd"
    params: TermParams

    def __post_init__(self):
        if self.kind not in ("even", "odd"):
            raise ValueError(f"unknown term kind {self.kind!r}")
        object.__setattr__(self, "weight", Fraction(self.weight))


@dataclass(frozen=True)
class ZetaDecomposition:
    """prefactor * 4^{-s if four_pow_s} * sum_terms weight * z_kind(s - shift)."""

    prefactor: Fraction
    four_pow_s: bool
    terms: Tuple[Term, ...] = field(default_factory=tuple)
