"""Adaptive Gauss-Legendre quadrature on a fixed, deterministic panel tree."""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable, List, Sequence, Tuple

import numpy as np

from .datatypes import EvalResult
from .errors import ToleranceNotMet

EPS = float(np.finfo(float).eps)


@lru_cache(maxsize=None)
def _nodes(order: int) -> Tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(order)


def _panel(func, lo: float, hi: float, order: int) -> Tuple[float, float, float]:
    half, mid = 0.5 * (hi - lo), 0.5 * (hi + lo)
    x1, w1 = _nodes(order)
    x2, w2 = _nodes(2 * order)
    coarse = half * float(np.dot(w1, func(mid + half * x1)))
    vals = func(mid + half * x2)
    fine = half * float(np.dot(w2, vals))
    scale = half * float(np.dot(w2, np.abs(vals)))
    return fine, abs(fine - coarse), scale


def integrate(
    func: Callable[[np.ndarray], np.ndarray],
    breakpoints: Sequence[float],
    tolerance: float,
    order: int = 10,
    max_depth: int = 50,
) -> EvalResult:
    """Integrate a vectorised ``func`` over [breakpoints[0], breakpoints[-1]].

    Each initial panel is bisected until the n-point and 2n-point rules agree
    within a share of ``tolerance`` proportional to its width. Panels are
    visited depth-first in order, so the result does not depend on timing.
    """
    lo, hi = float(breakpoints[0]), float(breakpoints[-1])
    total_width = hi - lo
    if total_width <= 0:
        return EvalResult(0.0, 0.0)
    accepted: List[float] = []
    errors: List[float] = []
    stack = [(float(a), float(b), 0) for a, b in zip(breakpoints[:-1], breakpoints[1:])][::-1]
    while stack:
        a, b, depth = stack.pop()
        value, err, scale = _panel(func, a, b, order)
        if not math.isfinite(value):
            raise ToleranceNotMet(f"non-finite integrand on [{a}, {b}]")
        share = tolerance * (b - a) / total_width
        # a panel cannot do better than rounding in its own sum
        floor = 50.0 * EPS * scale
        if err <= max(share, floor):
            accepted.append(value)
            errors.append(err)
            continue
        if depth >= max_depth:
            raise ToleranceNotMet(
                f"quadrature stalled on [{a}, {b}] with error {err:.3e}", achieved=err
            )
        m = 0.5 * (a + b)
        stack.append((m, b, depth + 1))
        stack.append((a, m, depth + 1))
    value = math.fsum(accepted)
    return EvalResult(value, math.fsum(errors) + 4.0 * EPS * abs(value))
