from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from discroot.series import (
    IDENTITIES,
    FussCatalanDomainError,
    TruncatedSeries,
    UnknownIdentityError,
    central_trinomial_coeff,
    fuss_catalan,
    generalized_binomial_series,
    hypergeometric_coefficient,
    standard_identity_suite,
    verify_char2_congruence,
    verify_identity,
)
from discroot.rings import GF, QQ, ZZ

coeffs = st.lists(st.fractions(max_denominator=20).filter(lambda f: abs(f) < 50), min_size=1, max_size=12)


def test_central_trinomial_coeff():
    assert [central_trinomial_coeff(n) for n in range(6)] == [1, 3, 15, 84, 495, 3003]


@given(st.integers(1, 6), st.integers(-3, 4), st.integers(0, 30))
def test_fuss_catalan_matches_sympy(n, r, m):
    a = m * n + r
    if a == 0:
        with pytest.raises(FussCatalanDomainError):
            fuss_catalan(n, r, m)
        return
    expected = sympy.Rational(r, a) * sympy.binomial(a, m)
    assert fuss_catalan(n, r, m) == expected


def test_fuss_catalan_catalan_numbers():
    assert [fuss_catalan(2, 1, m) for m in range(7)] == [1, 1, 2, 5, 14, 42, 132]


@given(coeffs, coeffs)
def test_series_ring_axioms(a, b):
    n = min(len(a), len(b)) - 1
    x = TruncatedSeries(a[: n + 1], QQ)
    y = TruncatedSeries(b[: n + 1], QQ)
    assert x * y == y * x
    assert (x + y) - y == x
    if x[0] != 0:
        assert x * x.inverse() == TruncatedSeries.constant(1, n, QQ)


def test_series_against_sympy():
    z = sympy.symbols("z")
    s = TruncatedSeries([Fraction(1), Fraction(2), Fraction(-1, 3), Fraction(5)], QQ)
    expected = sympy.series(1 / (1 + 2 * z - z**2 / 3 + 5 * z**3), z, 0, 4).removeO()
    inv = s.inverse()
    assert [inv[k] for k in range(4)] == [sympy.Rational(expected.coeff(z, k)) for k in range(4)]


@given(st.integers(2, 5), st.integers(-2, 3), st.integers(-2, 3))
def test_binomial_series_exponent_law(n, r, s):
    # B_{n,r} B_{n,s} = B_{n,r+s}
    order = 15
    lhs = generalized_binomial_series(n, r, order, QQ) * generalized_binomial_series(n, s, order, QQ)
    assert lhs == generalized_binomial_series(n, r + s, order, QQ)


def test_hypergeometric_coefficient():
    assert hypergeometric_coefficient(1, 1, 1, 5) == 1
    assert hypergeometric_coefficient(Fraction(1, 3), Fraction(2, 3), Fraction(1, 2), 1) == Fraction(4, 9)
    with pytest.raises(ValueError):
        hypergeometric_coefficient(1, 1, -2, 3)


def test_hypergeometric_closed_form():
    # F(1/3, 2/3; 1/2; sin^2 x) = cos(x/3) / cos x
    import math

    x = 0.3
    z = math.sin(x) ** 2
    total = sum(float(hypergeometric_coefficient(Fraction(1, 3), Fraction(2, 3), Fraction(1, 2), k)) * z**k for k in range(80))
    assert total == pytest.approx(math.cos(x / 3) / math.cos(x), rel=1e-14)


def test_identity_registry():
    assert set(IDENTITIES) == {"disc_cubic_identity", "trinomial_shift", "power_law", "char3_cubic", "hypergeometric_match"}
    with pytest.raises(UnknownIdentityError):
        verify_identity("nope", 3)


@pytest.mark.parametrize("ring", [ZZ, GF(3)])
def test_char3_cubic(ring):
    assert verify_identity("char3_cubic", 40, ring).holds


def test_wrong_identity_reports_first_mismatch(monkeypatch):
    def off_by_z3(order, ring, **_):
        s = generalized_binomial_series(3, 1, order, ring)
        z3 = TruncatedSeries.variable(order, ring) ** 3
        return (s**3).shift(1), s - 1 + z3

    monkeypatch.setitem(IDENTITIES, "broken", off_by_z3)
    rep = verify_identity("broken", 10, QQ)
    assert not rep.holds
    assert rep.first_mismatch == 3


def test_suite_shape():
    suite = standard_identity_suite()
    assert len(suite) == 1 + 5 + 20 + 2 + 1
    assert {o for _, _, o, _ in standard_identity_suite(7)} == {7}


def test_char2_congruence():
    rep = verify_char2_congruence(64)
    assert rep.holds
    assert rep.ring == GF(2).tag
    assert all(comb(3 * n, n) % 2 == fuss_catalan(3, 1, n) % 2 for n in range(64))
