"""The operator Delta + q^2 on the unit 2-sphere.

With eigenvalues n(n+1) + q^2 and multiplicity 2n+1,

    zeta(0)  = zeta(0, S^2) - q^2
    zeta'(0) = zeta'(0, S^2) + (1 - 2 gamma) q^2 - log G(q)

where G is the genus-2 canonical product

    G(q) = prod_n [1 + q^2/(n(n+1))]^{2n+1} exp(-(2n+1) q^2 / (n(n+1))).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from . import hermite
from .datatypes import EvalResult, TermParams
from .errors import DivergentExpansion, DomainError
from .manifolds import Sphere, zeta_at_zero, zeta_prime_at_zero
from .special import constants

# zeta(s, S^2) is exactly z_even(s; 0, 1, 1)
S2_PARAMS = TermParams(0, 1, 1)

CSV_HEADER = ("q", "G", "log_G", "zeta_prime0", "err")
DEFAULT_Q_MAX = 5.0
DEFAULT_SAMPLES = 200


@dataclass(frozen=True)
class PotentialConfig:
    q: float
    product_terms: int = 1000
    expansion_order: int = 12

    def __post_init__(self):
        if not self.q >= 0:
            raise DomainError(f"q must be >= 0, got {self.q}")
        if self.product_terms < 1:
            raise DomainError("product_terms must be >= 1")
        if self.expansion_order < 2:
            raise DomainError("expansion_order must be >= 2")


def canonical_product_log(cfg: PotentialConfig) -> EvalResult:
    """log G(q) truncated after N factors.

    Each omitted factor contributes (2n+1)[log(1+x) - x] with x = q^2/(n(n+1)),
    which lies in [-(2n+1) x^2 / 2, 0]. Since (2n+1)/(n(n+1))^2 telescopes as
    1/n^2 - 1/(n+1)^2, the whole tail is bounded by q^4 / (2 (N+1)^2).
    """
    q2 = float(cfg.q) ** 2
    if q2 == 0.0:
        return EvalResult(0.0, 0.0)
    n = np.arange(1, cfg.product_terms + 1, dtype=float)
    x = q2 / (n * (n + 1.0))
    terms = (2.0 * n + 1.0) * (np.log1p(x) - x)
    value = math.fsum(terms.tolist())
    tail = q2 * q2 / (2.0 * (cfg.product_terms + 1) ** 2)
    return EvalResult(value, tail + 1e-15 * math.fsum(np.abs(terms).tolist()))


def canonical_product(cfg: PotentialConfig) -> EvalResult:
    log_g = canonical_product_log(cfg)
    value = math.exp(log_g.value)
    return EvalResult(value, value * math.expm1(log_g.error_estimate))


def zeta0_with_potential(cfg: PotentialConfig):
    """Exact for rational q (returned as a Fraction), float otherwise."""
    base = zeta_at_zero(Sphere(2))
    q = cfg.q
    if isinstance(q, (int, Fraction)):
        return base - Fraction(q) ** 2
    return float(base) - float(q) ** 2


def zeta_prime0_with_potential(cfg: PotentialConfig, tolerance: float = 1e-10) -> EvalResult:
    q2 = float(cfg.q) ** 2
    base = zeta_prime_at_zero(Sphere(2), tolerance)
    log_g = canonical_product_log(cfg)
    return base + (1.0 - 2.0 * constants().euler_gamma) * q2 - log_g


def _expansion_coefficient(s: float, k: int) -> float:
    # binom(-s, k) / (s + k - 1) = (-1)^k s (s+1) ... (s+k-2) / k!
    out = (-1.0) ** k / math.factorial(k)
    for j in range(k - 1):
        out *= s + j
    return out


def _check_expansion(q: float, order: int) -> float:
    q2 = float(q) ** 2
    if q2 >= 2.0:
        raise DivergentExpansion(f"binomial expansion needs q^2 < 2, got q^2 = {q2}")
    if order < 2:
        raise DomainError("expansion order must be >= 2")
    return q2


def expansion_zeta(s: float, q: float, order: int = 12, tolerance: float = 1e-12) -> EvalResult:
    """zeta(s, Delta + q^2) from the binomial expansion in q^2 up to q^{2K}.

    Each k >= 1 term is written as coefficient * (s+k-1) zeta(s+k, S^2), so the
    zero of binom(-s, k) cancels the pole of zeta(s+k, S^2) exactly. Since every
    S^2 eigenvalue is at least 2, successive terms shrink by at most
    r = q^2/2 * max(1, (s+K)/(K+1)), which gives the geometric tail estimate.
    """
    q2 = _check_expansion(q, order)
    s = float(s)
    total = hermite.z_even(s, S2_PARAMS, tolerance)
    last = 0.0
    for k in range(1, order + 1):
        coef = _expansion_coefficient(s, k)
        if coef == 0.0:
            last = 0.0
            continue
        term = hermite.z_even_pole_removed(s + k, S2_PARAMS, tolerance).scale(coef * q2 ** k)
        total = total + term
        last = term.value
    ratio = 0.5 * q2 * max(1.0, (s + order) / (order + 1.0))
    tail = abs(last) * ratio / (1.0 - ratio) if s + order > 1 and ratio < 1 else math.inf
    return EvalResult(total.value, total.error_estimate + tail)


def expansion_zeta_prime0(q: float, order: int = 12, tolerance: float = 1e-12) -> EvalResult:
    """d/ds at 0 of the binomial expansion, differentiated term by term.

    zeta'(0, S^2) - (2 gamma - 1) q^2 + sum_{k>=2} (-1)^k q^{2k} zeta(k, S^2) / k, where the
    q^2 coefficient is the finite part of zeta(s, S^2) at s = 1 computed numerically.
    """
    q2 = _check_expansion(q, order)
    total = zeta_prime_at_zero(Sphere(2), tolerance)
    total = total - hermite.z_even_finite_part(S2_PARAMS, tolerance).scale(q2)
    last = 0.0
    for k in range(2, order + 1):
        term = hermite.z_even(float(k), S2_PARAMS, tolerance).scale((-1.0) ** k * q2 ** k / k)
        total = total + term
        last = term.value
    ratio = 0.5 * q2
    return EvalResult(total.value, total.error_estimate + abs(last) * ratio / (1.0 - ratio))


def sample_points(q_max: float = DEFAULT_Q_MAX, samples: int = DEFAULT_SAMPLES) -> List[float]:
    if samples < 2 or not q_max > 0:
        raise DomainError("need samples >= 2 and q_max > 0")
    return [float(x) for x in np.linspace(0.0, q_max, samples)]


def potential_rows(qs: Sequence[float], product_terms: int = 1000,
                   tolerance: float = 1e-10) -> List[dict]:
    """Data behind the G(q) and zeta'(0, Delta + q^2) curves."""
    rows = []
    for q in qs:
        cfg = PotentialConfig(q, product_terms)
        log_g = canonical_product_log(cfg)
        zp = zeta_prime0_with_potential(cfg, tolerance)
        rows.append({
            "q": q,
            "G": math.exp(log_g.value),
            "log_G": log_g.value,
            "zeta_prime0": zp.value,
            "err": zp.error_estimate,
        })
    return rows


def format_number(x: float) -> str:
    return f"{x:.12g}"


def rows_to_csv(rows: Sequence[dict], out: Optional[io.TextIOBase] = None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([format_number(row[key]) for key in CSV_HEADER])
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text
