"""Monic cubic and quartic polynomials and their discriminants.

The records are parametric over the coefficient type: anything with ring
arithmetic works (ints, Fractions, floats, complex, PrimeFieldElement,
RationalFunction, DiscAdicElement).  Characteristic is read off the
coefficient ring, never guessed from the values.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from numbers import Complex
from typing import Any

from .rings import (
    CharacteristicError,
    FractionField,
    MultiPoly,
    PolyRing,
    PrimeFieldElement,
    RationalFunction,
)


def characteristic_of(x) -> int:
    if isinstance(x, (MultiPoly,)):
        return x.ring.characteristic
    if isinstance(x, RationalFunction):
        return x.field.characteristic
    if isinstance(x, PrimeFieldElement):
        return x.p
    ring = getattr(x, "ring", None)
    if ring is not None and hasattr(ring, "characteristic"):
        return ring.characteristic
    if isinstance(x, (Complex, Fraction)):
        return 0
    raise TypeError(f"cannot determine the characteristic of {x!r}")


def _char(*xs) -> int:
    chars = set()
    for x in xs:
        try:
            chars.add(characteristic_of(x))
        except TypeError:
            continue
    nonzero = chars - {0}
    if len(nonzero) > 1:
        raise CharacteristicError(f"mixed characteristics {sorted(chars)}")
    return nonzero.pop() if nonzero else 0


def _div(x, n: int):
    """``x / n`` for an integer ``n`` that is invertible in the ring of ``x``."""
    if isinstance(x, int):
        return Fraction(x, n)
    return x / n


@dataclass(frozen=True)
class GeneralCubic:
    """``t^3 + c1 t^2 + c2 t + c3``."""

    c1: Any
    c2: Any
    c3: Any

    @property
    def characteristic(self) -> int:
        return _char(self.c1, self.c2, self.c3)

    def coefficients(self) -> tuple:
        """Low-to-high coefficient tuple (c3, c2, c1, 1)."""
        return (self.c3, self.c2, self.c1, 1)

    def __call__(self, t):
        return ((t + self.c1) * t + self.c2) * t + self.c3

    def derivative_at(self, t):
        return (3 * t + 2 * self.c1) * t + self.c2

    def map(self, f) -> GeneralCubic:
        return GeneralCubic(f(self.c1), f(self.c2), f(self.c3))


@dataclass(frozen=True)
class DepressedCubic:
    """``t^3 + p t + q``."""

    p: Any
    q: Any

    @property
    def characteristic(self) -> int:
        return _char(self.p, self.q)

    @property
    def c1(self):
        return 0

    @property
    def c2(self):
        return self.p

    @property
    def c3(self):
        return self.q

    def coefficients(self) -> tuple:
        return (self.q, self.p, 0, 1)

    def __call__(self, t):
        return (t * t + self.p) * t + self.q

    def derivative_at(self, t):
        return 3 * t * t + self.p

    def as_general(self) -> GeneralCubic:
        return GeneralCubic(self.p * 0, self.p, self.q)

    def map(self, f) -> DepressedCubic:
        return DepressedCubic(f(self.p), f(self.q))


@dataclass(frozen=True)
class DepressedQuartic:
    """``t^4 + c t^2 + d t + e``."""

    c: Any
    d: Any
    e: Any

    @property
    def characteristic(self) -> int:
        return _char(self.c, self.d, self.e)

    def coefficients(self) -> tuple:
        return (self.e, self.d, self.c, 0, 1)

    def __call__(self, t):
        return ((t * t + self.c) * t + self.d) * t + self.e

    def map(self, f) -> DepressedQuartic:
        return DepressedQuartic(f(self.c), f(self.d), f(self.e))


def cubic_discriminant(f: GeneralCubic | DepressedCubic):
    """``c1^2 c2^2 - 4 c2^3 - 4 c1^3 c3 + 18 c1 c2 c3 - 27 c3^2``.

    One formula for every characteristic: in characteristic 3 the ring
    arithmetic reduces it to ``c1^2 c2^2 - c1^3 c3 - c2^3``, and for a
    depressed cubic it is ``-4 p^3 - 27 q^2``.
    """
    if isinstance(f, DepressedCubic):
        return -4 * f.p**3 - 27 * f.q**2
    c1, c2, c3 = f.c1, f.c2, f.c3
    return c1**2 * c2**2 - 4 * c2**3 - 4 * c1**3 * c3 + 18 * c1 * c2 * c3 - 27 * c3**2


def char2_delta(f: GeneralCubic | DepressedCubic):
    """Square root ``c1 c2 + c3`` of the discriminant in characteristic 2."""
    if f.characteristic != 2:
        raise CharacteristicError(f"char2_delta needs characteristic 2, got {f.characteristic}")
    return f.c1 * f.c2 + f.c3


def depress_cubic(f: GeneralCubic) -> tuple[DepressedCubic, Any]:
    """Return ``(g, shift)`` with ``g(t) = f(t - c1/3)`` and ``shift = -c1/3``.

    A root ``a`` of ``g`` gives the root ``a + shift`` of ``f``.
    """
    if isinstance(f, DepressedCubic):
        return f, f.p * 0
    if f.characteristic == 3:
        raise CharacteristicError("a cubic cannot be depressed in characteristic 3")
    c1, c2, c3 = f.c1, f.c2, f.c3
    p = c2 - _div(c1**2, 3)
    q = _div(2 * c1**3, 27) - _div(c1 * c2, 3) + c3
    return DepressedCubic(p, q), -_div(c1, 3)


def quartic_discriminant(g: DepressedQuartic):
    c, d, e = g.c, g.d, g.e
    return (
        256 * e**3
        - 128 * c**2 * e**2
        + 144 * c * d**2 * e
        - 27 * d**4
        + 16 * c**4 * e
        - 4 * c**3 * d**2
    )


def resolvent_cubics(g: DepressedQuartic) -> tuple[GeneralCubic, GeneralCubic]:
    """``R3 = t^3 + 2c t^2 + (c^2 - 4e) t - d^2`` and ``R4 = t^3 - c t^2 - 4e t + (4ce - d^2)``."""
    c, d, e = g.c, g.d, g.e
    r3 = GeneralCubic(2 * c, c**2 - 4 * e, -(d**2))
    r4 = GeneralCubic(-c, -4 * e, 4 * c * e - d**2)
    return r3, r4


# ---------------------------------------------------------------------------
# prime elements accepted as pi


def _monic(p: MultiPoly) -> MultiPoly:
    return p * p.ring.scalars.inverse(p.leading_coefficient())


def known_discriminant_forms(ring: PolyRing) -> list[tuple[str, MultiPoly]]:
    """Prime discriminant-type polynomials expressible in ``ring``'s indeterminates.

    Cubic discriminants need characteristic != 2 (else they are squares) and,
    for the depressed form, != 3 (else ``-p^3``); the characteristic-2 prime is
    ``delta``; the quartic discriminant is offered for characteristic != 2, 3.
    """
    gens = dict(zip(ring.names, ring.gens()))
    char = ring.characteristic
    out: list[tuple[str, MultiPoly]] = []
    for a, b in itertools.permutations(ring.names, 2):
        if char not in (2, 3):
            out.append((f"disc(t^3+{a}t+{b})", cubic_discriminant(DepressedCubic(gens[a], gens[b]))))
    for a, b, c in itertools.permutations(ring.names, 3):
        f = GeneralCubic(gens[a], gens[b], gens[c])
        if char == 2:
            out.append((f"delta({a},{b},{c})", char2_delta(f)))
        else:
            out.append((f"disc({a},{b},{c})", cubic_discriminant(f)))
        if char not in (2, 3):
            out.append((f"disc(t^4+{a}t^2+{b}t+{c})", quartic_discriminant(DepressedQuartic(gens[a], gens[b], gens[c]))))
    return out


def certify_prime(pi: MultiPoly) -> str:
    """Name the reason ``pi`` is accepted as a prime element, or raise.

    Accepted: an indeterminate (times a unit), a primitive polynomial of
    degree one in some indeterminate, or a known discriminant form.
    """
    if pi.is_constant():
        raise ValueError("pi must be non-constant")
    m = _monic(pi)
    for name, g in zip(pi.ring.names, pi.ring.gens()):
        if m == g:
            return f"indeterminate {name}"
    for form_name, form in known_discriminant_forms(pi.ring):
        if m == _monic(form):
            return form_name
    for name in pi.ring.names:
        if pi.degree(name) == 1:
            # pi = a*x + b with a, b free of x: irreducible iff gcd(a, b) = 1
            field = FractionField(pi.ring)
            x = field.gen(name)
            a = field.convert(pi.derivative(name))
            b = field.convert(pi) - a * x
            if a.is_polynomial() and b.is_polynomial():
                g = a.num_raw.gcd(b.num_raw)
                if g.is_constant():
                    return f"primitive linear in {name}"
    raise ValueError(f"{pi} is not a recognised prime element")
