import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from discroot.forms import GeneralCubic
from discroot.real import (
    AmbiguityError,
    DomainError,
    NonConvergenceError,
    RealDepressedCubic,
    RefusalError,
    _fuss_catalan_ratio,
    classify_roots,
    convergence_check,
    cubic_trinomial_root,
    discriminant_partial_sums,
    discriminant_root,
    discriminant_root_batch,
    general_cubic_root,
    oracle_roots,
    trig_roots,
    trinomial_root,
)
from discroot.series import fuss_catalan

EX = RealDepressedCubic(-15.0, -4.0)
coef = st.floats(-50, 50, allow_nan=False).filter(lambda x: abs(x) > 1e-3)


def _numpy_roots(p, q):
    return np.roots([1.0, 0.0, p, q])


def test_worked_example():
    assert discriminant_root(EX).value == pytest.approx(4, abs=1e-12)
    assert cubic_trinomial_root(EX).value == pytest.approx(-2 + math.sqrt(3), abs=1e-12)
    got = sorted(r.value for r in trig_roots(EX))
    assert got == pytest.approx(sorted([4, -2 + math.sqrt(3), -2 - math.sqrt(3)]), abs=1e-12)


def test_convergence_verdicts():
    assert convergence_check(EX, "discriminant").converges
    assert convergence_check(RealDepressedCubic(-3.0, 0.0), "discriminant").verdict == "boundary"
    assert convergence_check(RealDepressedCubic(-3.0, 2.0), "trinomial").verdict == "boundary"
    assert convergence_check(RealDepressedCubic(1.0, 1.0), "trinomial").verdict == "diverges"
    with pytest.raises(DomainError):
        convergence_check(RealDepressedCubic(0.0, 1.0), "trinomial")


def test_slow_convergence_hits_the_term_cap():
    # discriminant ratio 0.99997: converges, but a 1e-16 tail needs ~2e6 terms
    f = RealDepressedCubic(-24.0, 0.25)
    assert convergence_check(f, "discriminant").converges
    with pytest.raises(NonConvergenceError):
        discriminant_root(f)
    assert discriminant_root(f, tol=1e-10, max_terms=10**7).residual < 1e-6


def test_refusals():
    with pytest.raises(RefusalError) as info:
        discriminant_root(RealDepressedCubic(-3.0, 0.0))
    assert info.value.verdict.verdict == "boundary"
    with pytest.raises(RefusalError):
        cubic_trinomial_root(RealDepressedCubic(1.0, 1.0))
    with pytest.raises(NonConvergenceError):
        discriminant_root(RealDepressedCubic(-3.0, 0.05), max_terms=10)
    with pytest.raises(DomainError):
        trig_roots(RealDepressedCubic(1.0, 1.0))


@given(st.integers(2, 7), st.integers(0, 40))
def test_fuss_catalan_ratio(k, m):
    expected = Fraction(fuss_catalan(k, 1, m + 1), fuss_catalan(k, 1, m))
    assert _fuss_catalan_ratio(k)(m) == pytest.approx(float(expected), rel=1e-14)


@given(coef, coef)
@settings(max_examples=200)
def test_series_roots_are_numpy_roots(p, q):
    f = RealDepressedCubic(p, q)
    roots = _numpy_roots(p, q)
    scale = f.scale
    for series, fn in (("discriminant", discriminant_root), ("trinomial", cubic_trinomial_root)):
        v = convergence_check(f, series)
        if v.converges and v.ratio < 0.98:
            value = fn(f).value
            assert min(abs(roots - value)) <= 1e-8 * scale
            assert abs(f(value)) <= 1e-8 * max(1.0, abs(p) * abs(value), abs(q))


@given(coef, coef)
@settings(max_examples=200)
def test_oracle_agrees_with_numpy(p, q):
    ours = oracle_roots(RealDepressedCubic(p, q))
    theirs = list(_numpy_roots(p, q))
    scale = RealDepressedCubic(p, q).scale
    for r in ours:
        j = min(range(len(theirs)), key=lambda i: abs(theirs[i] - r))
        assert abs(theirs.pop(j) - r) <= 1e-7 * scale


@given(coef, coef)
@settings(max_examples=200)
def test_classification_property(p, q):
    f = RealDepressedCubic(p, q)
    assume(abs(f.discriminant) > 1e-6 * f.scale**6)
    # the invariant is stated away from the convergence boundary (margin 0.05)
    assume(all(abs(convergence_check(f, s).ratio - 1) > 0.05 for s in ("discriminant", "trinomial")))
    try:
        c = classify_roots(f)
    except AmbiguityError:
        assume(False)
    assert c.ok, c.checks


def test_complex_trinomial_root():
    a, b, c = 1 + 2j, 5.0, 1.0
    rep = trinomial_root(a, b, c, 3)
    assert abs(a - b * rep.value + c * rep.value**3) < 1e-13


@pytest.mark.parametrize("n", [2, 4, 5, 7])
def test_higher_trinomials_match_numpy(n):
    a, b, c = 1.0, 4.0, 0.5
    rep = trinomial_root(a, b, c, n)
    coeffs = [c] + [0.0] * (n - 2) + [-b, a]
    assert min(abs(np.roots(coeffs) - rep.value)) < 1e-12


def test_trinomial_domain():
    with pytest.raises(DomainError):
        trinomial_root(1.0, 0.0, 1.0)
    with pytest.raises(DomainError):
        trinomial_root(1.0, 1.0, 1.0, 1)


def test_general_cubic_root():
    # (t - 1)(t - 2)(t + 10) = t^3 + 7t^2 - 28t + 20
    rep = general_cubic_root(GeneralCubic(7.0, -28.0, 20.0))
    assert min(abs(np.roots([1, 7, -28, 20]) - rep.value)) < 1e-10
    assert rep.residual < 1e-10


def test_batch_matches_scalar():
    rng = np.random.default_rng(3)
    c = rng.uniform(-10, 10, size=(3, 400))
    roots, ok = discriminant_root_batch(*c)
    for i in range(0, 400, 7):
        f = GeneralCubic(*c[:, i])
        try:
            scalar = general_cubic_root(f).value
        except RefusalError:
            assert not ok[i] and math.isnan(roots[i])
            continue
        assert ok[i]
        assert roots[i] == pytest.approx(scalar, rel=1e-13, abs=1e-13)


@pytest.mark.parametrize("m", [Fraction(2), Fraction(10), Fraction(1, 2)])
def test_scaling_invariance_exact(m):
    p, q = Fraction(-15), Fraction(-4)
    base = discriminant_partial_sums(p, q, 30)
    # f(mt)/m^3 = t^3 + (p/m^2) t + q/m^3
    assert discriminant_partial_sums(p / m**2, q / m**3, 30) == base


@pytest.mark.parametrize("p,q", [(-15.0, -4.0), (-15.0, 4.0), (-7.0, 1.5), (-3.0, -0.5), (-100.0, 30.0)])
def test_trig_t1_is_the_trinomial_root(p, q):
    # an empirical observation only, checked at a few Delta > 0 points
    f = RealDepressedCubic(p, q)
    assert trig_roots(f)[1].value == pytest.approx(cubic_trinomial_root(f).value, abs=1e-9 * f.scale)
