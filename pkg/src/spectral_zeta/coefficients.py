"""Exact multiplicity polynomials and their u-basis coefficient tables.

The sphere / real projective multiplicities are reduced in powers of
u = x^2 + (k-1) x, the complex projective ones in powers of u = x^2 + k x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from .errors import DomainError, NonConstantRemainder


class RationalPoly:
    """Polynomial with exact rational coefficients, lowest degree first."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable = ()):
        coeffs = [Fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coefficients: Tuple[Fraction, ...] = tuple(coeffs)

    @classmethod
    def linear(cls, root_shift, slope=1) -> "RationalPoly":
        """slope * x + root_shift."""
        return cls([root_shift, slope])

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalPoly):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self) -> str:
        return f"RationalPoly({[str(c) for c in self.coefficients]})"

    def __add__(self, other: "RationalPoly") -> "RationalPoly":
        a, b = self.coefficients, other.coefficients
        n = max(len(a), len(b))
        return RationalPoly(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    def __mul__(self, other) -> "RationalPoly":
        if not isinstance(other, RationalPoly):
            return RationalPoly(c * Fraction(other) for c in self.coefficients)
        if self.is_zero() or other.is_zero():
            return RationalPoly()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RationalPoly":
        out = RationalPoly([1])
        for _ in range(n):
            out = out * self
        return out

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0.0
        for c in reversed(self.coefficients):
            acc = acc * x + (c if isinstance(acc, Fraction) else float(c))
        return acc

    def divmod(self, divisor: "RationalPoly") -> Tuple["RationalPoly", "RationalPoly"]:
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coefficients)
        dd = divisor.degree
        lead = divisor.coefficients[-1]
        quot = [Fraction(0)] * max(len(rem) - dd, 0)
        for i in range(len(rem) - dd - 1, -1, -1):
            factor = rem[i + dd] / lead
            quot[i] = factor
            for j, dc in enumerate(divisor.coefficients):
                rem[i + j] -= factor * dc
        return RationalPoly(quot), RationalPoly(rem[:dd])

    def compose_scale(self, c) -> "RationalPoly":
        """p(c x)."""
        c = Fraction(c)
        return RationalPoly(coef * c ** i for i, coef in enumerate(self.coefficients))


def _product(factors: Sequence[RationalPoly]) -> RationalPoly:
    out = RationalPoly([1])
    for f in factors:
        out = out * f
    return out


def q_sphere(k: int) -> RationalPoly:
    """Multiplicity polynomial (2x+k-1)/(k-1)! * prod_{i=1}^{k-2} (x+i) of S^k / RP^k."""
    if k < 2:
        raise DomainError(f"q_sphere needs k >= 2, got {k}")
    poly = RationalPoly([k - 1, 2]) * _product([RationalPoly.linear(i) for i in range(1, k - 1)])
    return poly * Fraction(1, math.factorial(k - 1))


def q_cproj(k: int) -> RationalPoly:
    """Multiplicity polynomial k(2x+k)/((k-1)!)^2 * prod_{i=1}^{k-1} (x+i)^2 of CP^k."""
    if k < 2:
        raise DomainError(f"q_cproj needs k >= 2, got {k}")
    poly = RationalPoly([k, 2]) * _product([RationalPoly.linear(i) ** 2 for i in range(1, k)])
    return poly * Fraction(k, math.factorial(k - 1) ** 2)


def reduce_to_u_basis(p: RationalPoly, linear_coeff) -> List[Fraction]:
    """Coefficients c_l with p(x) = sum_l c_l (x^2 + linear_coeff x)^l.

    Repeated division by u; every remainder must be a constant.
    """
    u = RationalPoly([0, linear_coeff, 1])
    out: List[Fraction] = []
    current = p
    while not current.is_zero():
        current, rem = current.divmod(u)
        if rem.degree > 0:
            raise NonConstantRemainder(
                f"{p!r} is not a polynomial in x^2 + {linear_coeff}x (remainder {rem!r})"
            )
        out.append(rem.coefficients[0] if rem.coefficients else Fraction(0))
    return out


def expand_u_basis(coeffs: Sequence, linear_coeff) -> RationalPoly:
    """Inverse of reduce_to_u_basis."""
    u = RationalPoly([0, linear_coeff, 1])
    out, power = RationalPoly(), RationalPoly([1])
    for c in coeffs:
        out = out + power * Fraction(c)
        power = power * u
    return out


@dataclass(frozen=True)
class CoeffTable:
    kind: str  # "sphere-even" | "sphere-odd" | "complex"
    k: int
    values: Tuple[Fraction, ...]

    @property
    def linear_coeff(self) -> int:
        return self.k if self.kind == "complex" else self.k - 1

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "k": self.k,
            "values": [str(v) for v in self.values],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CoeffTable":
        return cls(data["kind"], int(data["k"]), tuple(Fraction(v) for v in data["values"]))


def sphere_reduction_source(k: int) -> RationalPoly:
    """The product reduced in the b_{k,l} tables (prefactors excluded)."""
    if k < 2:
        raise DomainError(f"b coefficients need k >= 2, got {k}")
    h = k // 2
    if k % 2 == 0:
        return _product([RationalPoly.linear(i) for i in range(1, 2 * h - 1)])
    return RationalPoly.linear(h) * _product([RationalPoly.linear(i) for i in range(1, 2 * h)])


def cproj_reduction_source(k: int) -> RationalPoly:
    if k < 1:
        raise DomainError(f"a coefficients need k >= 1, got {k}")
    return _product([RationalPoly.linear(i) ** 2 for i in range(1, k)])


def b_coeffs(k: int) -> CoeffTable:
    """b_{k,l}: prod (x+i) rewritten in powers of x^2 + (k-1) x."""
    values = reduce_to_u_basis(sphere_reduction_source(k), k - 1)
    return CoeffTable("sphere-even" if k % 2 == 0 else "sphere-odd", k, tuple(values))


def a_coeffs(k: int) -> CoeffTable:
    """a_{k,l}: prod (x+i)^2 rewritten in powers of x^2 + k x."""
    if k < 1:
        raise DomainError(f"a coefficients need k >= 1, got {k}")
    values = reduce_to_u_basis(cproj_reduction_source(k), k)
    return CoeffTable("complex", k, tuple(values))
