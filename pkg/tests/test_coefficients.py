import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from spectral_zeta.coefficients import (
    CoeffTable,
    RationalPoly,
    a_coeffs,
    b_coeffs,
    cproj_reduction_source,
    expand_u_basis,
    q_cproj,
    q_sphere,
    reduce_to_u_basis,
    sphere_reduction_source,
)
from spectral_zeta.errors import DomainError, NonConstantRemainder


def P(*coeffs):
    return RationalPoly(coeffs)


def test_poly_trims_and_degree():
    assert P(1, 2, 0, 0).degree == 1
    assert RationalPoly().is_zero()


def test_poly_arithmetic():
    x1 = RationalPoly.linear(1)
    assert x1 * x1 == P(1, 2, 1)
    assert x1 ** 3 == P(1, 3, 3, 1)
    assert P(1, 1) + P(-1, 0, 2) == P(0, 1, 2)
    assert P(1, 2, 3)(Fraction(1, 2)) == Fraction(1) + 1 + Fraction(3, 4)
    assert P(1, 1).compose_scale(2) == P(1, 2)


@given(st.lists(st.integers(-20, 20), max_size=8), st.lists(st.integers(-20, 20), min_size=1, max_size=4))
def test_divmod_identity(num, den):
    n, d = RationalPoly(num), RationalPoly(den)
    if d.is_zero():
        return
    q, r = n.divmod(d)
    assert q * d + r == n
    assert r.is_zero() or r.degree < d.degree


def test_q_sphere_examples():
    assert q_sphere(2) == P(1, 2)
    assert q_sphere(3) == P(1, 2, 1)
    assert q_sphere(4) == P(6, 13, 9, 2) * Fraction(1, 6)


def test_q_cproj_examples():
    assert q_cproj(2) == P(1, 1) ** 3 * 4
    assert q_cproj(2)(1) == 32
    assert q_cproj(3)(0) == 9


@pytest.mark.parametrize("fn", [q_sphere, q_cproj, b_coeffs])
def test_reject_small_k(fn):
    with pytest.raises(DomainError):
        fn(1)


@pytest.mark.parametrize("poly, beta, expected", [
    (P(1, 1) ** 2, 2, [1, 1]),
    (P(1, 1) * P(2, 1), 3, [2, 1]),
    (P(1, 1) * P(2, 1) ** 2 * P(3, 1), 4, [12, 7, 1]),
])
def test_reduce_examples(poly, beta, expected):
    assert reduce_to_u_basis(poly, beta) == expected


def test_reduce_rejects_non_u_polynomial():
    with pytest.raises(NonConstantRemainder):
        reduce_to_u_basis(P(0, 1), 2)


def test_table_examples():
    assert list(b_coeffs(2).values) == [1]
    assert list(b_coeffs(4).values) == [2, 1]
    assert list(b_coeffs(5).values) == [12, 7, 1]
    assert list(a_coeffs(2).values) == [1, 1]


@pytest.mark.parametrize("k", range(2, 13))
def test_round_trip_and_endpoints(k):
    b = b_coeffs(k)
    assert expand_u_basis(b.values, k - 1) == sphere_reduction_source(k)
    a = a_coeffs(k)
    assert expand_u_basis(a.values, k) == cproj_reduction_source(k)
    h = k // 2
    assert b.values[-1] == 1 and a.values[-1] == 1
    if k % 2 == 0:
        assert len(b.values) == h and b.values[0] == math.factorial(2 * h - 2)
    else:
        assert len(b.values) == h + 1 and b.values[0] == h * math.factorial(2 * h - 1)
    assert len(a.values) == k and a.values[0] == math.factorial(k - 1) ** 2
    for v in b.values + a.values:
        assert v.denominator == 1 and v > 0


@pytest.mark.parametrize("k", range(2, 9))
def test_tables_reproduce_multiplicities(k):
    # Q_k(x) = (2x+k-1)/(k-1)! * prod, with prod(x) = sum_l b_l u^l (even) or the odd variant
    if k % 2 == 0:
        rebuilt = P(k - 1, 2) * expand_u_basis(b_coeffs(k).values, k - 1) * Fraction(1, math.factorial(k - 1))
    else:
        # odd k: (2x + 2h) prod_{i<2h} (x+i) = 2 (x+h) prod
        rebuilt = expand_u_basis(b_coeffs(k).values, k - 1) * Fraction(2, math.factorial(k - 1))
    assert rebuilt == q_sphere(k)


def test_json_round_trip():
    table = b_coeffs(7)
    data = table.to_json()
    assert all(isinstance(v, str) for v in data["values"])
    assert CoeffTable.from_json(data) == table
    assert CoeffTable.from_json({"kind": "complex", "k": 2, "values": ["1/1", "1"]}) == a_coeffs(2)
