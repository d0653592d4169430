"""Special-function kernel.

Exact Bernoulli numbers and factorial-type combinatorics, the Riemann and
Hurwitz zeta functions (value and s-derivative) by Euler-Maclaurin summation,
the Gauss hypergeometric series, and a handful of constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List

from scipy.special import digamma, gamma

from .datatypes import EvalResult
from .errors import DivergentExpansion, DomainError, PoleError

EPS = 2.220446049250313e-16

# Euler-Maclaurin correction terms are carried up to B_20.
_EM_ORDER = 10


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple:
    # sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1, B_0 = 1
    table: List[Fraction] = [Fraction(1)]
    for m in range(1, n + 1):
        acc = Fraction(0)
        for j in range(m):
            acc += math.comb(m + 1, j) * table[j]
        table.append(-acc / (m + 1))
    return tuple(table)


def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n as an exact fraction (B_1 = -1/2 convention)."""
    if n < 0:
        raise DomainError(f"bernoulli index must be >= 0, got {n}")
    if n >= 3 and n % 2 == 1:
        return Fraction(0)
    return _bernoulli_table(n)[n]


def double_factorial(n: int) -> int:
    """n!! with (-1)!! = 0!! = 1."""
    if n < -1:
        raise DomainError(f"double factorial undefined for n={n}")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def gamma_ratio_neg(m: int, i: int) -> Fraction:
    """Limit of Gamma(i - m) / Gamma(-m) for integers 0 <= i <= m.

    Both gammas sit on poles; the ratio is the finite product
    (-m)(-m+1)...(-m+i-1), i.e. the Pochhammer symbol (-m)_i.
    """
    if m < 0 or i < 0:
        raise DomainError("gamma_ratio_neg needs m, i >= 0")
    if i > m:
        raise DomainError(f"gamma_ratio_neg needs i <= m, got i={i}, m={m}")
    out = 1
    for j in range(i):
        out *= j - m
    return Fraction(out)


# --------------------------------------------------------------------------
# Zeta functions


def _rising(s: float, k: int) -> float:
    out = 1.0
    for i in range(k):
        out *= s + i
    return out


def _rising_deriv(s: float, k: int) -> float:
    # d/ds prod_{i<k} (s+i), written without division so s = -i is fine
    prefix = [1.0] * (k + 1)
    for i in range(k):
        prefix[i + 1] = prefix[i] * (s + i)
    total, suffix = 0.0, 1.0
    for i in reversed(range(k)):
        total += prefix[i] * suffix
        suffix *= s + i
    return total


@lru_cache(maxsize=None)
def _em_coefficients() -> tuple:
    # B_{2j} / (2j)! for j = 1 .. _EM_ORDER + 1 (the last one bounds the remainder)
    return tuple(float(bernoulli(2 * j) / math.factorial(2 * j)) for j in range(1, _EM_ORDER + 2))


def _em_remainder(s: float, x: float, order: int) -> float:
    j = _EM_ORDER + 1
    coef = _em_coefficients()[j - 1]
    p = _rising(s, 2 * j - 1)
    if order == 0:
        return 2.0 * abs(coef * p) * x ** (-s - 2 * j + 1)
    dp = _rising_deriv(s, 2 * j - 1)
    return 2.0 * abs(coef) * x ** (-s - 2 * j + 1) * (abs(dp) + abs(p * math.log(x)))


def _choose_shift(s: float, q: float, order: int) -> int:
    target = 1e-17 * max(1.0, q ** (-s))
    for n in range(1, 4000):
        if _em_remainder(s, n + q, order) <= target:
            return n
    return 4000


def _hurwitz_em(s: float, q: float, order: int) -> EvalResult:
    n_direct = _choose_shift(s, q, order)
    x = n_direct + q
    logx = math.log(x)
    if order == 0:
        terms = [(n + q) ** (-s) for n in range(n_direct)]
        terms.append(x ** (1.0 - s) / (s - 1.0))
        terms.append(0.5 * x ** (-s))
        for j, coef in enumerate(_em_coefficients()[:_EM_ORDER], start=1):
            terms.append(coef * _rising(s, 2 * j - 1) * x ** (-s - 2 * j + 1))
    else:
        terms = [-math.log(n + q) * (n + q) ** (-s) for n in range(n_direct)]
        terms.append(-(x ** (1.0 - s)) * (logx / (s - 1.0) + 1.0 / (s - 1.0) ** 2))
        terms.append(-0.5 * logx * x ** (-s))
        for j, coef in enumerate(_em_coefficients()[:_EM_ORDER], start=1):
            k = 2 * j - 1
            terms.append(coef * x ** (-s - k) * (_rising_deriv(s, k) - logx * _rising(s, k)))
    value = math.fsum(terms)
    roundoff = 4.0 * EPS * math.fsum(abs(t) for t in terms)
    return EvalResult(value, _em_remainder(s, x, order) + roundoff)


def hurwitz_zeta(s: float, q: float, derivative_order: int = 0) -> EvalResult:
    """Hurwitz zeta sum_{n>=0} (n+q)^{-s}, or its s-derivative, for real s != 1."""
    if derivative_order not in (0, 1):
        raise DomainError("derivative_order must be 0 or 1")
    if not q > 0:
        raise DomainError(f"Hurwitz zeta needs q > 0, got {q}")
    s = float(s)
    if s == 1.0:
        raise PoleError(1, "pole at s=1")
    return _hurwitz_em(s, float(q), derivative_order)


def riemann_zeta(s: float, derivative_order: int = 0) -> EvalResult:
    """Riemann zeta (or its derivative) on the real line.

    Negative arguments go through the functional equation, which avoids the
    cancellation Euler-Maclaurin suffers there.
    """
    if derivative_order not in (0, 1):
        raise DomainError("derivative_order must be 0 or 1")
    s = float(s)
    if s == 1.0:
        raise PoleError(1, "pole at s=1")
    if s >= 0.0:
        return _hurwitz_em(s, 1.0, derivative_order)

    # zeta(s) = chi(s) zeta(1-s), chi(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s)
    base = 2.0 ** s * math.pi ** (s - 1.0) * float(gamma(1.0 - s))
    sin_h, cos_h = math.sin(0.5 * math.pi * s), math.cos(0.5 * math.pi * s)
    chi = base * sin_h
    reflected = _hurwitz_em(1.0 - s, 1.0, 0)
    if derivative_order == 0:
        value = chi * reflected.value
        err = abs(chi) * reflected.error_estimate + 8 * EPS * abs(value)
        return EvalResult(value, err)
    dchi = base * (math.log(2 * math.pi) * sin_h + 0.5 * math.pi * cos_h - sin_h * float(digamma(1.0 - s)))
    reflected_d = _hurwitz_em(1.0 - s, 1.0, 1)
    value = dchi * reflected.value - chi * reflected_d.value
    err = (abs(dchi) * reflected.error_estimate + abs(chi) * reflected_d.error_estimate
           + 16 * EPS * (abs(dchi * reflected.value) + abs(chi * reflected_d.value)))
    return EvalResult(value, err)


# --------------------------------------------------------------------------
# Hypergeometric series


def gauss_2f1(a: float, b: float, c: float, z: float) -> EvalResult:
    """Power series of 2F1(a, b; c; z) for |z| < 1."""
    if c <= 0 and float(c).is_integer():
        raise DomainError(f"2F1 undefined for c={c}")
    if abs(z) >= 1.0:
        raise DivergentExpansion(f"2F1 series diverges for |z|={abs(z)} >= 1")
    a, b, c, z = float(a), float(b), float(c), float(z)
    term, total, abs_total = 1.0, 1.0, 1.0
    for n in range(100000):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        total += term
        abs_total += abs(term)
        if term == 0.0:
            return EvalResult(total, 4 * EPS * abs_total)
        # ratio bound valid for every later index
        k = n + 1
        if k + 1 > 0 and c + k > 0:
            ratio = abs(z) * (1 + abs(a - 1) / (k + 1)) * (1 + abs(b - c) / (c + k))
            if ratio < 1.0:
                tail = abs(term) * ratio / (1.0 - ratio)
                if tail <= 1e-17 + EPS * abs(total):
                    return EvalResult(total, tail + 4 * EPS * abs_total)
    raise DivergentExpansion("2F1 series failed to converge")


def gauss_2f1_euler(a: float, b: float, c: float, z: float) -> EvalResult:
    """2F1 on [-1, 1) using Pfaff's transformation for z <= -1/2.

    F(a, b; c; z) = (1 - z)^{-a} F(a, c - b; c; z / (z - 1)) maps z = -1 to 1/2.
    """
    if z < -0.5:
        w = z / (z - 1.0)
        inner = gauss_2f1(a, c - b, c, w)
        return inner.scale((1.0 - z) ** (-a))
    return gauss_2f1(a, b, c, z)


# --------------------------------------------------------------------------
# Constants


@dataclass(frozen=True)
class Constants:
    euler_gamma: float
    log_2pi: float
    zeta_R_prime: Dict[int, float]


@lru_cache(maxsize=None)
def constants() -> Constants:
    """Constants used by the closed-form tables; computed once and cached."""
    return Constants(
        euler_gamma=float(-digamma(1.0)),
        log_2pi=math.log(2.0 * math.pi),
        zeta_R_prime={m: riemann_zeta(m, 1).value for m in (0, -1, -2, -3)},
    )
