"""Spectral zeta functions of the Laplacian on S^k, RP^k and CP^k.

Eigenvalues and multiplicities (Q_k the multiplicity polynomial):

    S^k   n(n+k-1)       Q_k(n)        c = 1
    RP^k  2n(2n+k-1)     Q_k(2n)       c = 2
    CP^k  4n(n+k)        Q_k^CP(n)

Each zeta function is rewritten as a finite combination of shifted z_even
or z_odd series (see ``hermite``) using the u-basis coefficient tables.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

import numpy as np

from . import hermite
from .coefficients import RationalPoly, a_coeffs, b_coeffs, q_cproj, q_sphere
from .datatypes import EvalResult, Pole, Term, TermParams, ZetaDecomposition
from .errors import DivergentRegion, DomainError, PoleError
from .special import bernoulli, riemann_zeta

FAMILIES = ("sphere", "real-projective", "complex-projective")
_PREFIX = {"sphere": "S", "real-projective": "RP", "complex-projective": "CP"}
_MANIFOLD_RE = re.compile(r"^\s*(s|rp|cp)\s*(\d+)\s*$", re.IGNORECASE)

DEFAULT_POLE_DEPTH = 20


@dataclass(frozen=True)
class ManifoldSpec:
    family: str
    k: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown manifold family {self.family!r}")
        if self.k < 1:
            raise DomainError(f"dimension must be >= 1, got {self.k}")

    @property
    def name(self) -> str:
        return f"{_PREFIX[self.family]}{self.k}"

    def __str__(self) -> str:
        return self.name


def Sphere(k: int) -> ManifoldSpec:
    return ManifoldSpec("sphere", k)


def RealProjective(k: int) -> ManifoldSpec:
    return ManifoldSpec("real-projective", k)


def ComplexProjective(k: int) -> ManifoldSpec:
    return ManifoldSpec("complex-projective", k)


def parse_manifold(text: str) -> ManifoldSpec:
    """Parse names such as ``S3``, ``rp4`` or ``CP2``."""
    match = _MANIFOLD_RE.match(text)
    if not match:
        raise DomainError(f"cannot parse manifold {text!r}; expected e.g. S2, RP3, CP2")
    family = {"s": "sphere", "rp": "real-projective", "cp": "complex-projective"}[match.group(1).lower()]
    return ManifoldSpec(family, int(match.group(2)))


# --------------------------------------------------------------------------
# Decomposition


def decompose(m: ManifoldSpec) -> ZetaDecomposition:
    """Write zeta(s, M) as weighted shifted z_even / z_odd series (k >= 2)."""
    if m.k < 2:
        raise DomainError("decompose needs k >= 2; use one_dimensional for k = 1")
    k = m.k
    if m.family == "complex-projective":
        table = a_coeffs(k)
        scale = Fraction(k, math.factorial(k - 1) ** 2)
        params = TermParams(0, k, 1)
        terms = tuple(Term(scale * v, l, "even", params) for l, v in enumerate(table.values))
        return ZetaDecomposition(Fraction(1), True, terms)

    c = 1 if m.family == "sphere" else 2
    table = b_coeffs(k)
    if k % 2 == 0:
        scale = Fraction(1, math.factorial(k - 1))
        kind = "even"
    else:
        scale = Fraction(2, math.factorial(k - 1))
        kind = "odd"
    params = TermParams(0, k - 1, c)
    # odd case runs l = 0..h, the full length of the table
    terms = tuple(Term(scale * v, l, kind, params) for l, v in enumerate(table.values))
    return ZetaDecomposition(Fraction(1), False, terms)


# --------------------------------------------------------------------------
# Series oracle


@dataclass(frozen=True)
class _Series:
    poly: RationalPoly  # multiplicity as a polynomial in n
    a: float
    b: float
    c: float
    scale: float  # eigenvalue = scale * (cn+a)(cn+b)


def _series_data(m: ManifoldSpec) -> _Series:
    if m.k == 1:
        if m.family == "sphere":
            return _Series(RationalPoly([2]), 0.0, 0.0, 1.0, 1.0)
        if m.family == "real-projective":
            return _Series(RationalPoly([2]), 0.0, 0.0, 2.0, 1.0)
        return _Series(RationalPoly([1, 2]), 0.0, 1.0, 1.0, 4.0)
    if m.family == "complex-projective":
        return _Series(q_cproj(m.k), 0.0, float(m.k), 1.0, 4.0)
    c = 1 if m.family == "sphere" else 2
    return _Series(q_sphere(m.k).compose_scale(c), 0.0, float(m.k - 1), float(c), 1.0)


def eigenvalues(m: ManifoldSpec, count: int):
    """First ``count`` nonzero eigenvalues and their multiplicities (exact integers)."""
    data = _series_data(m)
    out = []
    for n in range(1, count + 1):
        lam = Fraction(data.scale) * (Fraction(data.c) * n + Fraction(data.a)) * (Fraction(data.c) * n + Fraction(data.b))
        out.append((lam, data.poly(Fraction(n))))
    return out


def series_oracle(m: ManifoldSpec, s: float, n_terms: int = 10 ** 6) -> EvalResult:
    """Direct Dirichlet sum over the spectrum, for s in the convergence half-plane.

    The first ``n_terms`` terms are summed exactly rounded; the remainder
    sum_{n > N} g(n) is estimated by Euler-Maclaurin with the tail integral
    expanded asymptotically in 1/x. error_estimate bounds what is left.
    """
    if n_terms < 10:
        raise DomainError("series_oracle needs n_terms >= 10")
    data = _series_data(m)
    d = data.poly.degree
    s = float(s)
    if s <= (d + 1) / 2:
        raise DivergentRegion(f"{m.name}: series diverges for s <= {(d + 1) / 2}")
    coeffs = [float(x) for x in data.poly.coefficients]
    n = np.arange(1, n_terms + 1, dtype=float)
    poly_vals = np.polynomial.polynomial.polyval(n, coeffs)
    terms = poly_vals * (data.scale * (data.c * n + data.a) * (data.c * n + data.b)) ** (-s)
    partial = math.fsum(terms.tolist())

    N = float(n_terms)
    # g(x) = sum_j gamma_j x^{d - 2s - j}
    n_exp = 8
    ua = [_binom(-s, r) * (data.a / data.c) ** r for r in range(n_exp)]
    ub = [_binom(-s, r) * (data.b / data.c) ** r for r in range(n_exp)]
    e = [sum(ua[u] * ub[r - u] for u in range(r + 1)) for r in range(n_exp)]
    pref = (data.scale * data.c ** 2) ** (-s)
    # p_i x^i * e_r x^{-r} lands on x^{d - j} when r = j - (d - i)
    gam = []
    for j in range(n_exp):
        acc = 0.0
        for i, p in enumerate(coeffs):
            r = j - (d - i)
            if 0 <= r < n_exp:
                acc += p * e[r]
        gam.append(pref * acc)
    integral = 0.0
    for j, gj in enumerate(gam[:-1]):
        power = d - 2 * s - j + 1
        integral += gj * N ** power / (-power)
    last_power = d - 2 * s - (n_exp - 1) + 1
    trunc = abs(gam[-1] * N ** last_power / last_power) * 2

    def g(x):
        return float(np.polynomial.polynomial.polyval(x, coeffs)
                     * (data.scale * (data.c * x + data.a) * (data.c * x + data.b)) ** (-s))

    gN = g(N)
    h = 1e-3 * N
    dgN = (g(N + h) - g(N - h)) / (2 * h)
    tail = integral - 0.5 * gN - dgN / 12.0
    p_eff = abs(d - 2 * s) + 3
    em_err = p_eff ** 3 * abs(gN) / N ** 3 / 720.0 * 4 + abs(dgN) * 1e-5
    roundoff = 4e-16 * (abs(partial) + abs(tail)) + 1e-16 * math.sqrt(n_terms) * abs(partial)
    return EvalResult(partial + tail, trunc + em_err + roundoff)


def _binom(x: float, r: int) -> float:
    out = 1.0
    for i in range(r):
        out *= (x - i) / (i + 1)
    return out


# --------------------------------------------------------------------------
# Evaluation


def one_dimensional(m: ManifoldSpec, s: float, guard: bool = True) -> EvalResult:
    """S^1, RP^1 and CP^1 through the Riemann zeta function and the S^2 continuation."""
    if m.k != 1:
        raise DomainError("one_dimensional is only for k = 1")
    s = float(s)
    if m.family == "complex-projective":
        return zeta(Sphere(2), s, guard=guard).scale(4.0 ** (-s))
    if abs(s - 0.5) < (hermite.POLE_GUARD if guard else 0.0) or s == 0.5:
        raise PoleError(Fraction(1, 2))
    base = riemann_zeta(2 * s).scale(2.0)
    if m.family == "real-projective":
        base = base.scale(2.0 ** (-2 * s))
    return base


def zeta(m: ManifoldSpec, s: float, tolerance: float = 1e-12, guard: bool = True) -> EvalResult:
    """Analytic continuation of zeta(s, M) at real s away from the poles."""
    if m.k == 1:
        return one_dimensional(m, s, guard)
    return hermite.evaluate_decomposition(decompose(m), s, tolerance, guard)


def poles(m: ManifoldSpec, depth: int = DEFAULT_POLE_DEPTH) -> List[Pole]:
    """Poles with exact residues, in decreasing order of location.

    Odd-dimensional S^k and RP^k have an infinite ladder of half-integer poles;
    the first ``depth + 1`` rungs are returned.
    """
    if m.k == 1:
        if m.family == "sphere":
            return [Pole(Fraction(1, 2), 1)]
        if m.family == "real-projective":
            return [Pole(Fraction(1, 2), Fraction(1, 2))]
        return [Pole(1, Fraction(1, 4))]

    decomp = decompose(m)
    out: List[Pole] = []
    if decomp.terms[0].kind == "even":
        for term in reversed(decomp.terms):
            loc = term.shift + 1
            res = term.weight * hermite.z_even_residue(term.params)
            if decomp.four_pow_s:
                res /= Fraction(4) ** loc
            out.append(Pole(loc, decomp.prefactor * res))
        return out

    h = m.k // 2
    b, c = decomp.terms[0].params.b, decomp.terms[0].params.c
    for rung in range(depth + 1):
        loc = Fraction(1, 2) + h - rung
        res = Fraction(0)
        for term in decomp.terms:
            # z_odd(s - l) has its poles at s = 1/2 + l - j
            j = rung - h + term.shift
            if j >= 0:
                res += term.weight * hermite.z_odd_residue(j, b, c)
        if res != 0:
            out.append(Pole(loc, decomp.prefactor * res))
    return out


def residue_oracle(m: ManifoldSpec, location, tolerance: float = 1e-12) -> EvalResult:
    """Numerical residue: (s - s0) zeta(s) at s0 + 10^-d, d = 3..6, extrapolated to d -> oo."""
    s0 = float(location)
    deltas = [10.0 ** (-d) for d in range(3, 7)]
    samples = [delta * zeta(m, s0 + delta, tolerance, guard=False).value for delta in deltas]
    table = [samples]
    for j in range(1, len(samples)):
        prev = table[-1]
        table.append([prev[i + 1] + (prev[i + 1] - prev[i]) / (10 ** j - 1) for i in range(len(prev) - 1)])
    best = table[-1][0]
    # the spread of the last two levels, inflated: the deepest samples carry
    # the rounding of zeta near the pole
    err = 10.0 * max(abs(best - table[-2][-1]), abs(table[-2][-1] - table[-2][0]))
    return EvalResult(best, err)


def zeta_at_neg_int(m: ManifoldSpec, n: int) -> Fraction:
    """Exact zeta(-n, M) for integers n >= 0."""
    if n < 0:
        raise DomainError(f"zeta_at_neg_int needs n >= 0, got {n}")
    if m.k == 1:
        if m.family == "complex-projective":
            return Fraction(4) ** n * zeta_at_neg_int(Sphere(2), n)
        # 2 zeta_R(-2n) with zeta_R(-j) = (-1)^j B_{j+1} / (j+1)
        value = 2 * bernoulli(2 * n + 1) / (2 * n + 1)
        if m.family == "real-projective":
            value *= Fraction(4) ** n
        return value
    return hermite.decomposition_at_neg_int(decompose(m), n)


def zeta_at_zero(m: ManifoldSpec) -> Fraction:
    """Exact zeta(0, M)."""
    return zeta_at_neg_int(m, 0)


def zeta_prime_at_zero(m: ManifoldSpec, tolerance: float = 1e-10) -> EvalResult:
    """zeta'(0, M), so that log det = -zeta'(0, M)."""
    if m.k == 1:
        zp0 = riemann_zeta(0.0, 1)
        if m.family == "sphere":
            return zp0.scale(4.0)
        if m.family == "real-projective":
            # d/ds [2^{-2s} 2 zeta_R(2s)] at 0, with zeta_R(0) = -1/2
            return zp0.scale(4.0) + 2.0 * math.log(2.0)
        s2 = zeta_prime_at_zero(Sphere(2), tolerance)
        return s2 - math.log(4.0) * float(zeta_at_zero(Sphere(2)))
    return hermite.zeta_derivative_at_zero(decompose(m), tolerance)


def log_determinant(m: ManifoldSpec, tolerance: float = 1e-10) -> EvalResult:
    """log det Delta = -zeta'(0, M)."""
    return -zeta_prime_at_zero(m, tolerance)


def determinant(m: ManifoldSpec, tolerance: float = 1e-10) -> EvalResult:
    """Regularised determinant exp(-zeta'(0, M)) with propagated error."""
    ld = log_determinant(m, tolerance)
    value = math.exp(ld.value)
    return EvalResult(value, value * math.expm1(ld.error_estimate))
