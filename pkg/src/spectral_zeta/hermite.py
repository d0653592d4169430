"""Analytic continuation of the building-block Dirichlet series.

Two families of series carry everything:

    z_even(s; a, b, c) = sum_{n>=1} (2(cn+a) + b - a) / [(cn+a)(cn+b)]^s
    z_odd(s; b, c)     = sum_{n>=1} 1 / [cn (cn+b)]^s

Abel-Plana summation writes each as a boundary term, the integral
int_1^oo, and a correction integral against dy / (e^{2 pi y} - 1) that is
entire in s. The middle integral carries all the poles.

The correction integrals are expressed through

    f(s, l; a, b, c) = int_0^oo Im[(c+a+icy)^{l-s} (c+b+icy)^{-s}] dy / (e^{2 pi y} - 1)

which at s = -n is a finite Bernoulli sum (``f_closed``).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Tuple

import numpy as np
from scipy.special import digamma, gamma

from . import quadrature
from .datatypes import EvalResult, TermParams, Term, ZetaDecomposition
from .errors import DomainError, PoleError, ToleranceNotMet
from .special import bernoulli, double_factorial, gamma_ratio_neg, gauss_2f1

EPS = 2.220446049250313e-16
TWO_PI = 2.0 * math.pi

# Evaluations closer than this to a pole raise instead of returning huge values.
POLE_GUARD = 1e-4
# Below this the [0, 1] split of the middle integral is used for z_odd,
# above it the hypergeometric form (which needs s > 1/2).
_ODD_SPLIT = 0.75


def _as_params(p) -> TermParams:
    if isinstance(p, TermParams):
        return p
    return TermParams(*p)


# --------------------------------------------------------------------------
# Plana integrals


def plana_integral(
    g: Callable[[np.ndarray], np.ndarray],
    tolerance: float = 1e-12,
    envelope: Optional[Callable[[float], float]] = None,
    growth: float = 0.0,
) -> EvalResult:
    """int_0^oo g(y) dy / (e^{2 pi y} - 1).

    ``g`` must be vectorised and O(y) at the origin. ``envelope(y) >= |g(y)|``
    with at most power growth ``growth`` bounds the truncated tail; without it
    |g| itself stands in (adequate for non-oscillating integrands).
    """
    if envelope is None:
        envelope = lambda y: float(abs(g(np.array([y]))[0]))  # noqa: E731
    target = tolerance / 10.0
    upper = max(2.0, math.ceil(growth / math.pi) + 1.0)
    while True:
        decay = math.exp(-TWO_PI * upper)
        tail = envelope(upper) * decay / (math.pi * (1.0 - decay))
        if tail <= target or upper > 200:
            break
        upper += 1.0
    if tail > target:
        raise ToleranceNotMet(f"Plana tail bound {tail:.3e} above tolerance", achieved=tail)

    def integrand(y):
        return g(y) / np.expm1(TWO_PI * y)

    breaks = np.arange(0.0, upper + 0.5, 1.0)
    res = quadrature.integrate(integrand, breaks, tolerance - tail)
    return EvalResult(res.value, res.error_estimate + tail)


def _polar(shift: float, c: float, y: np.ndarray):
    return np.hypot(shift, c * y), np.arctan2(c * y, shift)


def _f_integrand(s: float, l: int, A: float, B: float, c: float):
    def g(y):
        r1, t1 = _polar(A, c, y)
        r2, t2 = _polar(B, c, y)
        return r1 ** (l - s) * r2 ** (-s) * np.sin((l - s) * t1 - s * t2)

    def envelope(y):
        return math.hypot(A, c * y) ** (l - s) * math.hypot(B, c * y) ** (-s)

    return g, envelope


def _f_ds_integrand(s: float, l: int, A: float, B: float, c: float):
    # d/ds of the f integrand: log-weighted and angle-weighted pieces
    def g(y):
        r1, t1 = _polar(A, c, y)
        r2, t2 = _polar(B, c, y)
        phase = (l - s) * t1 - s * t2
        mag = r1 ** (l - s) * r2 ** (-s)
        return -mag * ((np.log(r1) + np.log(r2)) * np.sin(phase) + (t1 + t2) * np.cos(phase))

    def envelope(y):
        r1, r2 = math.hypot(A, c * y), math.hypot(B, c * y)
        return r1 ** (l - s) * r2 ** (-s) * (abs(math.log(r1)) + abs(math.log(r2)) + math.pi)

    return g, envelope


def f_numeric(s: float, l: int, p, tolerance: float = 1e-12) -> EvalResult:
    """Numerical value of f(s, l; a, b, c)."""
    if l not in (0, 1):
        raise DomainError("f is only used with l in {0, 1}")
    a, b, c = _as_params(p).as_floats()
    s = float(s)
    g, env = _f_integrand(s, l, c + a, c + b, c)
    return plana_integral(g, tolerance, env, growth=max(0.0, l - 2 * s))


def f_numeric_ds(s: float, l: int, p, tolerance: float = 1e-12) -> EvalResult:
    """d/ds f(s, l; a, b, c)."""
    if l not in (0, 1):
        raise DomainError("f is only used with l in {0, 1}")
    a, b, c = _as_params(p).as_floats()
    s = float(s)
    g, env = _f_ds_integrand(s, l, c + a, c + b, c)
    return plana_integral(g, tolerance, env, growth=max(0.0, l - 2 * s) + 1.0)


def f_closed(n: int, l: int, p) -> Fraction:
    """Exact f(-n, l; a, b, c) from int_0^oo y^{2k-1} / (e^{2 pi y} - 1) dy = B_2k / (4k).

    Expanding Im[(A + icy)^{n+l} (B + icy)^n] collects odd total powers of y;
    every such power contributes with positive sign and a factor c^{2k-1}.
    """
    if n < 0:
        raise DomainError("f_closed needs n >= 0")
    if l not in (0, 1):
        raise DomainError("f is only used with l in {0, 1}")
    p = _as_params(p)
    A, B, c = p.c + p.a, p.c + p.b, p.c
    total = Fraction(0)
    # odd power of y from the first factor, even from the second
    for i in range(1, (n + l + 1) // 2 + 1):
        for j in range(0, n // 2 + 1):
            k = i + j
            total += (math.comb(n + l, 2 * i - 1) * math.comb(n, 2 * j)
                      * A ** (n + l + 1 - 2 * i) * B ** (n - 2 * j)
                      * c ** (2 * k - 1) * bernoulli(2 * k) / k)
    # odd power from the second factor, even from the first
    for i in range(1, (n + 1) // 2 + 1):
        for j in range(0, (n + l) // 2 + 1):
            k = i + j
            total += (math.comb(n, 2 * i - 1) * math.comb(n + l, 2 * j)
                      * A ** (n + l - 2 * j) * B ** (n + 1 - 2 * i)
                      * c ** (2 * k - 1) * bernoulli(2 * k) / k)
    return total / 4


# --------------------------------------------------------------------------
# z_even


def z_even_residue(p) -> Fraction:
    """Residue of z_even at its only pole s = 1."""
    return 1 / _as_params(p).c


def _check_even_pole(s: float, guard: bool) -> None:
    if s == 1.0 or (guard and abs(s - 1.0) < POLE_GUARD):
        raise PoleError(1)


def _even_regular(s: float, p: TermParams, tolerance: float) -> EvalResult:
    # everything except the P^{1-s} / (c (s - 1)) pole term
    a, b, c = p.as_floats()
    A, B = c + a, c + b
    boundary = 0.5 * (2 * A + b - a) * (A * B) ** (-s)
    out = EvalResult(boundary, 4 * EPS * abs(boundary)) - f_numeric(s, 1, p, tolerance / 6).scale(4)
    if b != a:
        out = out - f_numeric(s, 0, p, tolerance / 6).scale(2 * (b - a))
    return out


def z_even(s: float, p, tolerance: float = 1e-12, guard: bool = True) -> EvalResult:
    """Continuation of z_even(s; a, b, c) to real s != 1."""
    p = _as_params(p)
    s = float(s)
    _check_even_pole(s, guard)
    a, b, c = p.as_floats()
    P = (c + a) * (c + b)
    pole_term = P ** (1.0 - s) / (c * (s - 1.0))
    return _even_regular(s, p, tolerance) + EvalResult(pole_term, 4 * EPS * abs(pole_term))


def z_even_pole_removed(s: float, p, tolerance: float = 1e-12) -> EvalResult:
    """(s - 1) z_even(s), analytic everywhere; equals 1/c at s = 1."""
    p = _as_params(p)
    s = float(s)
    a, b, c = p.as_floats()
    P = (c + a) * (c + b)
    reg = _even_regular(s, p, tolerance).scale(s - 1.0)
    return reg + P ** (1.0 - s) / c


def z_even_finite_part(p, tolerance: float = 1e-12) -> EvalResult:
    """Constant term of the Laurent expansion of z_even at s = 1."""
    p = _as_params(p)
    a, b, c = p.as_floats()
    P = (c + a) * (c + b)
    return _even_regular(1.0, p, tolerance) - math.log(P) / c


def z_even_ds(s: float, p, tolerance: float = 1e-12) -> EvalResult:
    """Term-wise analytic s-derivative of the z_even continuation."""
    p = _as_params(p)
    s = float(s)
    _check_even_pole(s, True)
    a, b, c = p.as_floats()
    A, B = c + a, c + b
    P = A * B
    logP = math.log(P)
    explicit = (-0.5 * (2 * A + b - a) * logP * P ** (-s)
                - P ** (1.0 - s) * (logP / (c * (s - 1.0)) + 1.0 / (c * (s - 1.0) ** 2)))
    out = EvalResult(explicit, 8 * EPS * abs(explicit)) - f_numeric_ds(s, 1, p, tolerance / 4).scale(4)
    if b != a:
        out = out - f_numeric_ds(s, 0, p, tolerance / 4).scale(2 * (b - a))
    return out


def z_even_at_neg_int(m: int, p) -> Fraction:
    """Exact z_even(-m; a, b, c) for rational parameters."""
    if m < 0:
        raise DomainError("z_even_at_neg_int needs m >= 0")
    p = _as_params(p)
    a, b, c = p.a, p.b, p.c
    A, B = c + a, c + b
    return (Fraction(1, 2) * (2 * A + b - a) * A ** m * B ** m
            - (A * B) ** (m + 1) / ((m + 1) * c)
            - 4 * f_closed(m, 1, p)
            - 2 * (b - a) * f_closed(m, 0, p))


# --------------------------------------------------------------------------
# z_odd (a = 0)


def _odd_params(b, c) -> TermParams:
    return TermParams(0, b, c)


def _nearest_odd_pole(s: float) -> Optional[float]:
    # poles at 1/2 - m, m = 0, 1, 2, ...
    if s > 0.5 + POLE_GUARD:
        return None
    m = max(0, round(0.5 - s))
    return 0.5 - m


def _check_odd_pole(s: float, guard: bool) -> None:
    pole = _nearest_odd_pole(s)
    if pole is None:
        return
    if s == pole or (guard and abs(s - pole) < POLE_GUARD):
        raise PoleError(Fraction(pole).limit_denominator(2))


def gamma_split(s: float, b: float, c: float) -> float:
    """Continuation of c^{-s} int_0^oo x^{-s} (cx+b)^{-s} dx.

    Equal to Gamma(1-s) Gamma(s+1/2) (b/2)^{1-2s} / (sqrt(pi) c (2s-1)).
    """
    return (float(gamma(1.0 - s)) * float(gamma(s + 0.5)) * (0.5 * b) ** (1.0 - 2.0 * s)
            / (math.sqrt(math.pi) * c * (2.0 * s - 1.0)))


def _unit_interval_piece(s: float, b: float, c: float, tolerance: float, derivative: bool) -> EvalResult:
    # c^{-s} int_0^1 x^{-s} (cx+b)^{-s} dx with x = t^gamma, gamma = 2/(1-s),
    # which turns x^{-s} dx into gamma * t dt
    if s >= 1.0:
        raise DomainError("the [0, 1] piece converges only for s < 1")
    gexp = 2.0 / (1.0 - s)
    logc = math.log(c)

    if not derivative:
        def integrand(t):
            return gexp * t * c ** (-s) * (c * t ** gexp + b) ** (-s)
    else:
        def integrand(t):
            x_term = c * t ** gexp + b
            with np.errstate(divide="ignore", invalid="ignore"):
                logt = np.where(t > 0, np.log(t), 0.0)
            return (-gexp * t * c ** (-s) * x_term ** (-s)
                    * (logc + gexp * logt + np.log(x_term)))

    return quadrature.integrate(integrand, [0.0, 0.25, 0.5, 1.0], tolerance)


def unit_interval_piece_hypergeometric(s: float, b: float, c: float) -> EvalResult:
    """Same [0, 1] piece as (bc)^{-s} F(s, 1-s; 2-s; -c/b) / (1-s).

    The argument -c/b reaches -1 for RP^3; that case goes through Pfaff's
    transformation before the series is summed.
    """
    from .special import gauss_2f1_euler

    f = gauss_2f1_euler(s, 1.0 - s, 2.0 - s, -c / b)
    return f.scale((b * c) ** (-s) / (1.0 - s))


def middle_integral_hypergeometric(s: float, b: float, c: float) -> EvalResult:
    """c^{-s} int_1^oo x^{-s} (cx+b)^{-s} dx = [c(c+b)]^{-s} F(s, 1; 2s; b/(c+b)) / (2s-1), s > 1/2."""
    if s <= 0.5:
        raise DomainError("hypergeometric form of the middle integral needs s > 1/2")
    f = gauss_2f1(s, 1.0, 2.0 * s, b / (c + b))
    return f.scale((c * (c + b)) ** (-s) / (2.0 * s - 1.0))


def middle_integral_split(s: float, b: float, c: float, tolerance: float = 1e-12) -> EvalResult:
    """Same middle integral as gamma_split minus the [0, 1] piece, s < 1."""
    g = gamma_split(s, b, c)
    piece = _unit_interval_piece(s, b, c, tolerance, derivative=False)
    return EvalResult(g, 8 * EPS * abs(g)) - piece


def z_odd(s: float, b, c, tolerance: float = 1e-12, guard: bool = True) -> EvalResult:
    """Continuation of z_odd(s; 0, b, c) = sum 1/[cn(cn+b)]^s to real s off the poles 1/2 - m."""
    s = float(s)
    _check_odd_pole(s, guard)
    p = _odd_params(b, c)
    bf, cf = float(b), float(c)
    P = cf * (cf + bf)
    boundary = 0.5 * P ** (-s)
    if s >= _ODD_SPLIT:
        middle = middle_integral_hypergeometric(s, bf, cf)
    else:
        middle = middle_integral_split(s, bf, cf, tolerance / 3)
    plana = f_numeric(s, 0, p, tolerance / 6).scale(2)
    return EvalResult(boundary, 4 * EPS * boundary) + middle - plana


def z_odd_ds(s: float, b, c, tolerance: float = 1e-12) -> EvalResult:
    """Term-wise analytic s-derivative of z_odd, for s < 3/4."""
    s = float(s)
    _check_odd_pole(s, True)
    if s >= _ODD_SPLIT:
        raise DomainError("analytic derivative of z_odd is implemented for s < 3/4")
    p = _odd_params(b, c)
    bf, cf = float(b), float(c)
    P = cf * (cf + bf)
    boundary = -0.5 * math.log(P) * P ** (-s)
    g = gamma_split(s, bf, cf)
    log_deriv = (-2.0 * math.log(0.5 * bf) - float(digamma(1.0 - s)) + float(digamma(s + 0.5))
                 - 2.0 / (2.0 * s - 1.0))
    dg = g * log_deriv
    piece = _unit_interval_piece(s, bf, cf, tolerance / 3, derivative=True)
    plana = f_numeric_ds(s, 0, p, tolerance / 3).scale(2)
    explicit = boundary + dg
    return EvalResult(explicit, 16 * EPS * (abs(boundary) + abs(dg))) - piece - plana


def z_odd_residue(m: int, b, c) -> Fraction:
    """Exact residue of z_odd(s; 0, b, c) at s = 1/2 - m."""
    if m < 0:
        raise DomainError("z_odd_residue needs m >= 0")
    b, c = Fraction(b), Fraction(c)
    return (Fraction((-1) ** m, 2 ** (m + 1)) * Fraction(double_factorial(2 * m - 1), math.factorial(m))
            / c * (b / 2) ** (2 * m))


def gamma_split_at_neg_int(m: int, b, c) -> Fraction:
    """Exact gamma_split(-m, b, c)."""
    b, c = Fraction(b), Fraction(c)
    return (Fraction((-1) ** (m + 1) * 2 ** m * math.factorial(m), double_factorial(2 * m + 1))
            * (b / 2) ** (2 * m + 1) / c)


def unit_interval_piece_at_neg_int(m: int, b, c) -> Fraction:
    """Exact (bc)^m / (m+1) F(-m, 1+m; 2+m; -c/b); the series terminates.

    The Pochhammer factor (-m)_i is the finite limit Gamma(i-m)/Gamma(-m).
    """
    b, c = Fraction(b), Fraction(c)
    z = -c / b
    total = Fraction(0)
    rising_up, rising_low = Fraction(1), Fraction(1)  # (1+m)_i, (2+m)_i
    for i in range(m + 1):
        total += gamma_ratio_neg(m, i) * rising_up / (rising_low * math.factorial(i)) * z ** i
        rising_up *= 1 + m + i
        rising_low *= 2 + m + i
    return (b * c) ** m / (m + 1) * total


def z_odd_at_neg_int(m: int, b, c) -> Fraction:
    """Exact z_odd(-m; 0, b, c)."""
    if m < 0:
        raise DomainError("z_odd_at_neg_int needs m >= 0")
    b, c = Fraction(b), Fraction(c)
    return (Fraction(1, 2) * c ** m * (c + b) ** m
            + gamma_split_at_neg_int(m, b, c)
            - unit_interval_piece_at_neg_int(m, b, c)
            - 2 * f_closed(m, 0, _odd_params(b, c)))


# --------------------------------------------------------------------------
# Decompositions


def evaluate_term(term: Term, s: float, tolerance: float = 1e-12, guard: bool = True) -> EvalResult:
    t = float(s) - term.shift
    try:
        if term.kind == "even":
            return z_even(t, term.params, tolerance, guard)
        return z_odd(t, term.params.b, term.params.c, tolerance, guard)
    except PoleError as exc:
        # report the pole in the caller's variable, not the shifted one
        raise PoleError(Fraction(exc.location) + term.shift) from None


def evaluate_decomposition(decomp: ZetaDecomposition, s: float, tolerance: float = 1e-12,
                           guard: bool = True) -> EvalResult:
    """prefactor * 4^{-s} * sum weight * z(s - shift)."""
    s = float(s)
    tol_each = tolerance / max(1, len(decomp.terms))
    total = EvalResult(0.0)
    for term in decomp.terms:
        w = float(term.weight)
        total = total + evaluate_term(term, s, tol_each / max(abs(w), 1e-300), guard).scale(w)
    factor = float(decomp.prefactor) * (4.0 ** (-s) if decomp.four_pow_s else 1.0)
    return total.scale(factor)


def decomposition_at_neg_int(decomp: ZetaDecomposition, m: int) -> Fraction:
    """Exact value at s = -m (the 4^{-s} factor becomes 4^m)."""
    total = Fraction(0)
    for term in decomp.terms:
        n = m + term.shift
        if term.kind == "even":
            total += term.weight * z_even_at_neg_int(n, term.params)
        else:
            total += term.weight * z_odd_at_neg_int(n, term.params.b, term.params.c)
    factor = decomp.prefactor * (Fraction(4) ** m if decomp.four_pow_s else 1)
    return factor * total


def _analytic_derivative_at_zero(decomp: ZetaDecomposition, tolerance: float) -> EvalResult:
    tol_each = tolerance / max(1, len(decomp.terms))
    total = EvalResult(0.0)
    for term in decomp.terms:
        w = float(term.weight)
        t = -float(term.shift)
        tol = tol_each / max(abs(w), 1e-300)
        if term.kind == "even":
            d = z_even_ds(t, term.params, tol)
        else:
            d = z_odd_ds(t, term.params.b, term.params.c, tol)
        total = total + d.scale(w)
    total = total.scale(float(decomp.prefactor))
    if decomp.four_pow_s:
        # d/ds [4^{-s} Z(s)] at 0 = Z'(0) - log 4 * Z(0)
        z0 = float(decomposition_at_neg_int(decomp, 0))
        total = total - math.log(4.0) * z0
    return total


def richardson_derivative(func: Callable[[float], float], x0: float, h0: float,
                          levels: int = 5) -> EvalResult:
    """Central differences at h0, h0/2, ... with Richardson extrapolation in h^2."""
    table: List[List[float]] = []
    for i in range(levels):
        h = h0 / 2 ** i
        row = [(func(x0 + h) - func(x0 - h)) / (2 * h)]
        for j in range(1, i + 1):
            factor = 4 ** j
            row.append(row[j - 1] + (row[j - 1] - table[i - 1][j - 1]) / (factor - 1))
        table.append(row)
    best = table[-1][-1]
    err = abs(best - table[-2][-2]) if levels > 1 else float("inf")
    return EvalResult(best, err)


def zeta_derivative_at_zero(decomp: ZetaDecomposition, tolerance: float = 1e-10,
                            return_paths: bool = False):
    """d/ds at s = 0 of the assembled continuation.

    The primary path differentiates every term analytically (logarithmic
    boundary terms, log- and angle-weighted Plana integrands). An independent
    Richardson central-difference path on the continuation must agree to
    within 10 * tolerance.
    """
    inner_tol = min(tolerance, 1e-12) / 10
    analytic = _analytic_derivative_at_zero(decomp, inner_tol)

    def value(s):
        return evaluate_decomposition(decomp, s, inner_tol).value

    numeric = richardson_derivative(value, 0.0, 0.2, levels=5)
    gap = abs(analytic.value - numeric.value)
    if gap > 10 * tolerance:
        raise ToleranceNotMet(
            f"derivative paths disagree by {gap:.3e} (analytic {analytic.value!r}, "
            f"finite-difference {numeric.value!r})",
            achieved=gap,
        )
    result = EvalResult(analytic.value, analytic.error_estimate + gap)
    if return_paths:
        return result, analytic, numeric
    return result
