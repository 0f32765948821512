import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from discroot.disc_adic import (
    LiftConfig,
    NoResidueRootError,
    PiAdicRing,
    PreconditionError,
    HenselPreconditionError,
    char3_residue_certificate,
    cubic_ring,
    discriminant_root_series,
    generic_depressed,
    generic_general,
    generic_root,
    hensel_lift_cubic,
    is_cube_char3,
    render_element,
    verify_root,
)
from discroot.forms import DepressedCubic, cubic_discriminant
from discroot.rings import CharacteristicError, FractionField, ValuationDomainError

F0 = generic_depressed(0)
RING = cubic_ring(F0)
K = RING.field
p, q = K.gens()
small = st.integers(-4, 4)


def _rf(coeffs):
    a, b, c, d = coeffs
    return a * p**2 + b * q + c * p * q + d


@given(st.lists(small, min_size=4, max_size=4), st.lists(small, min_size=4, max_size=4))
@settings(max_examples=25)
def test_embedding_is_a_ring_homomorphism(a, b):
    x, y = _rf(a), _rf(b)
    n = 3
    assert RING.element(x, n) + RING.element(y, n) == RING.element(x + y, n)
    assert RING.element(x, n) * RING.element(y, n) == RING.element(x * y, n)


@given(st.lists(small, min_size=4, max_size=4))
@settings(max_examples=25)
def test_digits_round_trip_and_normal_form(a):
    x = _rf(a) / (p + 2)
    if x.is_zero():
        return
    el = RING.element(x, 3)
    # digits are residues mod pi: polynomials in the main variable of degree < deg pi
    for d in el.digits:
        assert d.numerator.degree(RING.variable) < RING.degree
        assert d.denominator.degree(RING.variable) == 0
    assert RING.from_digits(el.digits, 3) == el


def test_unit_inverse():
    u = RING.element(p + q, 4)
    assert u.is_unit()
    assert u * u.inverse() == RING.one(4)


def test_valuation_of_pi_powers():
    pi = RING.pi_element(5)
    assert pi.valuation() == 1
    assert (pi**3 * RING.element(p, 5)).valuation() == 3
    assert RING.zero(5).valuation() == math.inf
    with pytest.raises(ValuationDomainError):
        RING.element(1 / K.convert(RING.pi), 3)


def test_config_validation():
    with pytest.raises(ValueError):
        LiftConfig(0)
    with pytest.raises(CharacteristicError):
        generic_root(F0, LiftConfig(2, base_characteristic=2))


def test_series_matches_hensel_char0():
    cfg = LiftConfig(4)
    s = generic_root(F0, cfg, "series")
    h = generic_root(F0, cfg, "hensel")
    assert s == h
    assert verify_root(F0, s) > 4
    assert verify_root(F0, h) > 4


def test_first_digits_closed_form():
    s = discriminant_root_series(F0, LiftConfig(2))
    assert s.digits[0] == 3 * q / p
    assert s.digits[1] == -q / (3 * p**4)


def test_perturbed_root_detected():
    n = 5
    s = generic_root(F0, LiftConfig(n))
    bad = s + RING.pi_element(n) ** 3
    assert verify_root(F0, bad) == 3
    assert s.first_mismatch(bad) == 3


def test_series_specializes_to_numeric_root():
    # near the discriminant locus the truncated series is an excellent approximation
    s = generic_root(F0, LiftConfig(6))
    pv, qv = -3.0, 2.05
    approx = s.evaluate({"p": pv, "q": qv})
    roots = np.roots([1, 0, pv, qv])
    simple = min(roots, key=lambda r: abs(r - 3 * qv / pv))
    assert abs(approx - simple.real) < 1e-9


def test_char2_series_matches_hensel():
    f = generic_depressed(2)
    cfg = LiftConfig(3)
    assert generic_root(f, cfg, "series") == generic_root(f, cfg, "hensel")


def test_char3_general_matches_hensel():
    f = generic_general(3)
    cfg = LiftConfig(2)
    s = generic_root(f, cfg, "series")
    assert s == generic_root(f, cfg, "hensel")
    assert verify_root(f, s) > 2


def test_char3_depressed_refused_with_certificate():
    f = generic_depressed(3)
    with pytest.raises(NoResidueRootError) as info:
        generic_root(f, LiftConfig(2))
    cert = info.value.certificate
    assert cert.pi == "p"
    assert "not a cube" in cert.reason


def test_char3_cubes():
    K3 = FractionField.of(("x", "y"), 3)
    x, y = K3.gens()
    assert is_cube_char3(x**3 / (y**6 + 1))
    assert not is_cube_char3(x * y**2)
    with pytest.raises(CharacteristicError):
        is_cube_char3(p)


def test_certificate_rejects_cube_radicand():
    K3 = FractionField.of(("p", "q"), 3)
    pp, qq = K3.gens()
    with pytest.raises(PreconditionError):
        char3_residue_certificate(DepressedCubic(pp, qq**3))


def test_hensel_rejects_bad_seed():
    with pytest.raises(HenselPreconditionError):
        hensel_lift_cubic(F0, p + q, LiftConfig(2))


def test_ring_requires_a_prime():
    with pytest.raises(ValueError):
        PiAdicRing(K, (p**2 - q**2).numerator)


def test_render():
    s = generic_root(F0, LiftConfig(1))
    text = render_element(s)
    assert text.startswith("3*q/p + ")
    assert "[π = -4*p^3 - 27*q^2]" in text
    assert cubic_discriminant(F0) == K.convert(RING.pi)


@pytest.mark.parametrize("n", range(1, 9))
def test_series_equals_hensel_for_each_order(n):
    cfg = LiftConfig(n)
    s, h = generic_root(F0, cfg, "series"), generic_root(F0, cfg, "hensel")
    assert s.digits == h.digits
    assert verify_root(F0, s) > n and verify_root(F0, h) > n


def test_renormalizing_is_identity():
    s = generic_root(F0, LiftConfig(4))
    assert RING.from_digits(s.digits) == s
