import numpy as np
import pytest

from discroot.disc_adic import LiftConfig, PreconditionError
from discroot.forms import DepressedQuartic, quartic_discriminant
from discroot.quartic import (
    SingularSeedError,
    generic_quartic,
    ramified_factor,
    resolvent_roots,
    resolvents,
    rho_constant,
    rho_series,
)
from discroot.rings import CharacteristicError


@pytest.fixture(scope="module")
def factor():
    return ramified_factor(generic_quartic(), LiftConfig(2))


def test_factor_divides(factor):
    assert factor.divides()
    assert factor.remainder_valuation > 2
    assert factor.discriminant_r.valuation() >= 1
    assert factor.discriminant_u.valuation() == 0


def test_alpha3_plus_c_is_alpha4(factor):
    g = generic_quartic()
    assert (factor.alpha3 + g.c - factor.alpha4).valuation() > 2


def test_rho_constant_term(factor):
    g = generic_quartic()
    c, d, e = g.c, g.d, g.e
    assert factor.rho.digits[0] == factor.rho.ring.element((8 * c * e - 2 * c**3 - 9 * d**2) / (2 * c**2 + 24 * e), 0).digits[0]
    assert ((factor.rho * factor.rho) - (factor.alpha4 * factor.alpha4 - 4 * e)).valuation() > 2


def test_specializes_to_colliding_roots(factor):
    # (t - 1)^2 (t^2 + 2t + 3) = t^4 - 4t + 3; nudge e off the locus
    point = {"c": 0.0, "d": -4.0, "e": 3.0 + 1e-4}
    s = factor.s.evaluate(point)
    const = factor.const_term.evaluate(point)
    roots = np.roots([1.0, 0.0, point["c"], point["d"], point["e"]])
    near = sorted(roots, key=lambda r: abs(r - 1))[:2]
    assert abs(s - sum(near)) < 1e-6
    assert abs(const - near[0] * near[1]) < 1e-6


def test_resolvents_and_roots():
    g = generic_quartic()
    pair = resolvents(g)
    a3, a4 = resolvent_roots(pair, LiftConfig(1))
    assert a3.ring.pi == quartic_discriminant(g).numerator


def test_preconditions():
    with pytest.raises(CharacteristicError):
        ramified_factor(generic_quartic(3), LiftConfig(1))
    g = generic_quartic()
    with pytest.raises(PreconditionError):
        ramified_factor(DepressedQuartic(g.c, g.d * 0, g.e), LiftConfig(1))
    with pytest.raises(SingularSeedError):
        rho_constant(DepressedQuartic(g.c, g.d, -(g.c**2) / 12))


def test_rho_series_needs_matching_seed():
    g = generic_quartic()
    a3, a4 = resolvent_roots(resolvents(g), LiftConfig(1))
    assert rho_series(a4, g, LiftConfig(1)).constant_term == rho_constant(g)


def test_to_dict(factor):
    d = factor.to_dict()
    assert d["divides"] is True
    assert len(d["s"]) == 3


@pytest.mark.slow
@pytest.mark.parametrize("n", [1, 3, 4, 5])
def test_r_times_u_is_g(n):
    r = ramified_factor(generic_quartic(), LiftConfig(n))
    assert r.remainder_valuation > n
    assert r.discriminant_r.valuation() >= 1
    assert r.discriminant_u.valuation() == 0


def test_specialization_finds_the_colliding_pair():
    # (t^2 - 2at + a^2)(t^2 + 2at + b) has c = b - 3a^2, d = 2a(a^2 - b), e = a^2 b;
    # perturbing e separates the double root a into the ramified pair
    r = ramified_factor(generic_quartic(), LiftConfig(3))
    rng = np.random.default_rng(42)
    checked = 0
    while checked < 50:
        a = rng.integers(1, 6) * rng.choice([-1, 1]) / rng.integers(1, 4)
        b = rng.integers(-9, 10) / rng.integers(1, 4)
        if abs(3 * a * a + b) < 1 or abs(a * a - b) < 0.5:
            continue
        c, d, e = b - 3 * a * a, 2 * a * (a * a - b), a * a * b
        if abs(2 * c * c + 24 * e) < 1 or abs(c**3 + 27 / 8 * d**2) < 1:
            continue
        e += 1e-7 * (1 + abs(e))
        point = {"c": c, "d": d, "e": e}
        s, const = r.s.evaluate(point), r.const_term.evaluate(point)
        pair = np.roots([1.0, -s, const])
        quartic = np.roots([1.0, 0.0, c, d, e])
        nearest = sorted(quartic, key=lambda z: abs(z - a))[:2]
        for z in pair:
            assert min(abs(z - w) for w in nearest) < 1e-6 * (1 + abs(a))
        checked += 1
