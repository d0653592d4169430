import math
from fractions import Fraction

import numpy as np
import pytest

from spectral_zeta import hermite
from spectral_zeta.errors import DivergentExpansion, DomainError, PoleError
from spectral_zeta.manifolds import Sphere, zeta, zeta_prime_at_zero
from spectral_zeta.potential import (
    PotentialConfig,
    S2_PARAMS,
    canonical_product,
    canonical_product_log,
    expansion_zeta,
    expansion_zeta_prime0,
    potential_rows,
    rows_to_csv,
    sample_points,
    zeta0_with_potential,
    zeta_prime0_with_potential,
)

ZP0_S2 = -1.1616845748018037


def direct_sum(s, q, n_terms=10 ** 6):
    n = np.arange(1, n_terms + 1, dtype=float)
    head = math.fsum(((2 * n + 1) / (n * (n + 1) + q * q) ** s).tolist())
    # sum_{n>N} of the derivative of -(n(n+1)+q^2)^{1-s}/(s-1), to leading order
    tail = (n_terms * (n_terms + 1) + q * q) ** (1 - s) / (s - 1)
    return head + tail


def test_config_validation():
    with pytest.raises(DomainError):
        PotentialConfig(-1.0)
    with pytest.raises(DomainError):
        PotentialConfig(1.0, product_terms=0)


def test_g_at_zero():
    assert canonical_product(PotentialConfig(0.0)).value == 1.0
    assert canonical_product_log(PotentialConfig(0.0)).value == 0.0


@pytest.mark.parametrize("q", [0.5, 1.0, 2.0, 4.0])
def test_product_self_consistency(q):
    a = canonical_product_log(PotentialConfig(q, 1000))
    b = canonical_product_log(PotentialConfig(q, 2000))
    assert abs(a.value - b.value) <= a.error_estimate


@pytest.mark.parametrize("q", [0.3, 1.0, 3.0])
def test_product_tail_bound_is_honest(q):
    coarse = canonical_product_log(PotentialConfig(q, 200))
    fine = canonical_product_log(PotentialConfig(q, 200000))
    assert abs(coarse.value - fine.value) <= coarse.error_estimate
    # the tail is negative, so truncation overestimates log G
    assert coarse.value > fine.value


def test_small_q_series_coefficient():
    # log G = -q^4/2 zeta(2, S^2) + q^6/3 zeta(3, S^2) - ...
    q = 0.01
    log_g = canonical_product_log(PotentialConfig(q, 10 ** 6)).value
    z2 = zeta(Sphere(2), 2.0).value
    z3 = zeta(Sphere(2), 3.0).value
    coeff = (log_g - q ** 6 / 3 * z3) / q ** 4
    assert coeff == pytest.approx(-0.5 * z2, abs=1e-8)


def test_zeta0():
    assert zeta0_with_potential(PotentialConfig(0)) == Fraction(-2, 3)
    assert zeta0_with_potential(PotentialConfig(1)) == Fraction(-5, 3)
    assert zeta0_with_potential(PotentialConfig(Fraction(1, 2))) == Fraction(-11, 12)
    assert expansion_zeta(0.0, 1.0, 10).value == pytest.approx(-5 / 3, abs=1e-8)


def test_zeta_prime0_at_zero_potential():
    assert zeta_prime0_with_potential(PotentialConfig(0.0)).value == pytest.approx(ZP0_S2, abs=1e-12)


@pytest.mark.parametrize("q", [0.1, 0.5, 1.0])
def test_zeta_prime0_against_expansion(q):
    assembled = zeta_prime0_with_potential(PotentialConfig(q, product_terms=10 ** 6))
    expansion = expansion_zeta_prime0(q, 40)
    assert assembled.value == pytest.approx(expansion.value, abs=1e-6)
    assert abs(assembled.value - expansion.value) <= assembled.error_estimate + expansion.error_estimate + 1e-12


def test_zeta_prime0_finite_difference_of_expansion():
    q = 0.1
    fd = hermite.richardson_derivative(lambda s: expansion_zeta(s, q, 20).value, 0.0, 0.1).value
    assert zeta_prime0_with_potential(PotentialConfig(q)).value == pytest.approx(fd, abs=1e-6)


def test_finite_part_at_one():
    # zeta(s, S^2) = 1/(s-1) + 2 gamma - 1 + O(s-1)
    fp = hermite.z_even_finite_part(S2_PARAMS).value
    assert fp == pytest.approx(2 * 0.5772156649015329 - 1, abs=1e-12)


def test_expansion_vs_direct_sum():
    res = expansion_zeta(2.0, 0.5, 12)
    assert res.value == pytest.approx(direct_sum(2.0, 0.5), abs=1e-8)
    assert res.error_estimate <= 1e-8


@pytest.mark.parametrize("s, q", [(2.5, 1.0), (3.0, 0.8), (1.5, 0.3)])
def test_expansion_error_estimate_covers(s, q):
    res = expansion_zeta(s, q, 25)
    assert abs(res.value - direct_sum(s, q)) <= res.error_estimate + 1e-9


def test_expansion_q_zero():
    assert expansion_zeta(3.0, 0.0, 5).value == pytest.approx(zeta(Sphere(2), 3.0).value, abs=1e-15)


def test_expansion_domain():
    with pytest.raises(DivergentExpansion):
        expansion_zeta(2.0, 1.5, 12)
    with pytest.raises(PoleError):
        expansion_zeta(1.0, 0.5, 12)


def test_small_q_rate():
    qs = [1e-3, 1e-2, 1e-1]
    diffs = [zeta_prime0_with_potential(PotentialConfig(q)).value - ZP0_S2 for q in qs]
    slopes = [math.log(abs(diffs[i + 1] / diffs[i])) / math.log(10) for i in range(2)]
    for slope in slopes:
        assert abs(slope - 2) <= 0.05


def test_curve_shapes():
    # every factor of G is at most 1, so G decreases from G(0) = 1; zeta'(0) grows
    # like q^2 (log q^2 - 1) once q is large
    rows = potential_rows(sample_points(5.0, 26))
    g = [r["G"] for r in rows]
    assert all(later < earlier for earlier, later in zip(g, g[1:]))
    zp = [r["zeta_prime0"] for r in rows]
    tail = zp[len(zp) // 2:]
    assert all(later > earlier for earlier, later in zip(tail, tail[1:]))


def test_csv_output():
    rows = potential_rows(sample_points(5.0, 200))
    text = rows_to_csv(rows)
    lines = text.splitlines()
    assert lines[0] == "q,G,log_G,zeta_prime0,err"
    assert len(lines) == 201
    assert lines[1].startswith("0,1,0,")
    assert text == rows_to_csv(potential_rows(sample_points(5.0, 200)))
