from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from discroot.rings import (
    GF,
    QQ,
    ZZ,
    FractionField,
    NotInvertibleError,
    PolyRing,
    RingMismatchError,
    ValuationDomainError,
    pi_adic_valuation,
    split_valuation,
)

small = st.integers(-50, 50)


def test_scalar_rings():
    assert ZZ.convert(Fraction(6, 1)) == 6
    with pytest.raises(TypeError):
        ZZ.convert(Fraction(1, 2))
    assert QQ.inverse(4) == Fraction(1, 4)
    with pytest.raises(NotInvertibleError):
        QQ.inverse(0)
    with pytest.raises(NotInvertibleError):
        ZZ.inverse(2)


def test_prime_field_rejects_composites():
    with pytest.raises(ValueError):
        GF(9)


@given(st.sampled_from([2, 3, 5, 7, 101]), small, small)
def test_prime_field_arithmetic(p, a, b):
    F = GF(p)
    x, y = F.convert(a), F.convert(b)
    assert int(x + y) == (a + b) % p
    assert int(x * y) == (a * b) % p
    if b % p:
        assert (x / y) * y == x


def test_prime_field_converts_fractions():
    F = GF(3)
    assert F.convert(Fraction(1, 2)) == 2
    with pytest.raises(NotInvertibleError):
        F.convert(Fraction(1, 3))


@given(st.lists(small, min_size=3, max_size=3), st.lists(small, min_size=3, max_size=3))
def test_rational_functions_form_a_field(a, b):
    K = FractionField.of(("x", "y"))
    x, y = K.gens()
    f = a[0] * x**2 + a[1] * y + a[2]
    g = b[0] * x * y + b[1] * x + b[2] + 1
    if g.is_zero() or f.is_zero():
        return
    h = f / g
    assert h * g == f
    assert (h - h).is_zero()
    assert h.inverse() == g / f


def test_normalized_equality():
    K = FractionField.of(("x", "y"))
    x, y = K.gens()
    assert (x**2 - y**2) / (x - y) == x + y
    assert (2 * x) / (4 * y) == x / (2 * y)
    assert hash((2 * x) / (4 * y)) == hash(x / (2 * y))


def test_characteristic_two_cancellation():
    K = FractionField.of(("p", "q"), 2)
    p, q = K.gens()
    assert (p + q) ** 2 == p**2 + q**2
    assert 2 * p == 0


def test_mixed_rings_rejected():
    a = FractionField.of(("x",)).gen("x")
    b = FractionField.of(("x",), 3).gen("x")
    with pytest.raises((RingMismatchError, TypeError)):
        a + b


def test_evaluate():
    K = FractionField.of(("p", "q"))
    p, q = K.gens()
    assert ((p + 1) / q).evaluate({"p": 3, "q": 2}) == 2


@given(st.integers(0, 4), st.integers(0, 4))
def test_pi_adic_valuation(a, b):
    R = PolyRing(("p", "q"))
    p, q = R.gens()
    pi = -4 * p**3 - 27 * q**2
    K = FractionField(R)
    x = K.convert(pi**a * (p + 1)) / K.convert(pi**b * q)
    assert pi_adic_valuation(x, pi) == a - b
    v, num, den = split_valuation(x, pi)
    assert v == a - b
    assert K.convert(num) / K.convert(den) == (K.convert(p) + 1) / K.convert(q)


def test_valuation_domain():
    R = PolyRing(("p",))
    with pytest.raises(ValuationDomainError):
        pi_adic_valuation(R.gen("p"), R.one)
    assert pi_adic_valuation(FractionField(R).zero, R.gen("p")) == float("inf")


@given(st.lists(small, min_size=3, max_size=3), st.lists(small, min_size=3, max_size=3), st.integers(0, 3), st.integers(0, 3))
def test_valuation_is_ultrametric(a, b, i, j):
    R = PolyRing(("p", "q"))
    K = FractionField(R)
    p, q = K.gens()
    pi = -4 * R.gen("p") ** 3 - 27 * R.gen("q") ** 2
    PI = K.convert(pi)
    x = PI**i * (a[0] * p + a[1] * q + a[2])
    y = PI**j * (b[0] * p * q + b[1] + b[2] * q)
    if x.is_zero() or y.is_zero():
        return
    vx, vy = pi_adic_valuation(x, pi), pi_adic_valuation(y, pi)
    assert pi_adic_valuation(x * y, pi) == vx + vy
    assert pi_adic_valuation(x + y, pi) >= min(vx, vy)
