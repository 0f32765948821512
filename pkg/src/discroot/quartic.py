"""The ramified quadratic factor of the generic depressed quartic.

Over the completion of ``Q(c, d, e)`` at ``Delta = disc(g)``, the quartic
``g = t^4 + c t^2 + d t + e`` splits as ``r(t) u(t)`` where the roots of
``r`` collide when ``Delta = 0``.  With ``alpha3``, ``alpha4`` the
distinguished roots of the two resolvents and ``rho`` the square root of
``alpha4^2 - 4e`` with the constant term below,

    r(t) = t^2 - s t + (alpha4 + rho)/2,    s = d / rho.
"""

from __future__ import annotations

from dataclasses import dataclass

from .disc_adic import (
    AdicError,
    DiscAdicElement,
    LiftConfig,
    PiAdicRing,
    PreconditionError,
    discriminant_root_series,
    render_element,
    verify_root,
)
from .forms import (
    DepressedQuartic,
    GeneralCubic,
    cubic_discriminant,
    depress_cubic,
    quartic_discriminant,
    resolvent_cubics,
)
from .rings import CharacteristicError, FractionField, RationalFunction

DEFAULT_ORDER = 4


class QuarticError(AdicError):
    pass


class SingularSeedError(QuarticError, ValueError):
    pass


class ConsistencyError(QuarticError):
    pass


@dataclass(frozen=True)
class ResolventPair:
    R3: GeneralCubic
    R4: GeneralCubic


@dataclass(frozen=True)
class RhoSeries:
    rho: DiscAdicElement
    constant_term: RationalFunction


@dataclass(frozen=True)
class RamifiedQuadratic:
    s: DiscAdicElement
    const_term: DiscAdicElement
    order: int
    alpha3: DiscAdicElement
    alpha4: DiscAdicElement
    rho: DiscAdicElement
    u: tuple[DiscAdicElement, DiscAdicElement]
    remainder: tuple[DiscAdicElement, DiscAdicElement]

    @property
    def remainder_valuation(self):
        return min(x.valuation() for x in self.remainder)

    @property
    def discriminant_r(self) -> DiscAdicElement:
        return self.s * self.s - 4 * self.const_term

    @property
    def discriminant_u(self) -> DiscAdicElement:
        u1, u0 = self.u
        return u1 * u1 - 4 * u0

    def divides(self) -> bool:
        return self.remainder_valuation > self.order

    def render(self) -> str:
        return f"t^2 - ({render_element(self.s)})·t + ({render_element(self.const_term)})"

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "pi": str(self.s.pi),
            "s": [str(a) for a in self.s.digits],
            "const_term": [str(a) for a in self.const_term.digits],
            "rho": [str(a) for a in self.rho.digits],
            "u": {"t": [str(a) for a in self.u[0].digits], "1": [str(a) for a in self.u[1].digits]},
            "remainder_valuation": _jsonable(self.remainder_valuation),
            "disc_r_valuation": _jsonable(self.discriminant_r.valuation()),
            "disc_u_valuation": _jsonable(self.discriminant_u.valuation()),
            "divides": self.divides(),
        }


def _jsonable(v):
    return "inf" if v == float("inf") else v


def generic_quartic(characteristic: int = 0) -> DepressedQuartic:
    c, d, e = FractionField.of(("c", "d", "e"), characteristic).gens()
    return DepressedQuartic(c, d, e)


def quartic_ring(g: DepressedQuartic) -> PiAdicRing:
    disc = quartic_discriminant(g)
    return PiAdicRing(disc.field, disc.numerator)


def resolvents(g: DepressedQuartic) -> ResolventPair:
    r3, r4 = resolvent_cubics(g)
    delta = quartic_discriminant(g)
    if not (cubic_discriminant(r3) == delta and cubic_discriminant(r4) == delta):
        raise ConsistencyError("resolvent discriminants differ from disc(g)")
    return ResolventPair(r3, r4)


def _check_char(g: DepressedQuartic) -> None:
    if g.characteristic in (2, 3):
        raise CharacteristicError("the quartic construction needs characteristic != 2, 3")


def resolvent_roots(
    pair: ResolventPair, cfg: LiftConfig = LiftConfig(DEFAULT_ORDER), ring: PiAdicRing | None = None
) -> tuple[DiscAdicElement, DiscAdicElement]:
    """Distinguished roots of ``R3`` and ``R4`` in ``A``."""
    out = []
    for name, r in (("R3", pair.R3), ("R4", pair.R4)):
        if r.characteristic in (2, 3):
            raise CharacteristicError("the quartic construction needs characteristic != 2, 3")
        dep, _ = depress_cubic(r)
        if dep.p == 0:
            raise PreconditionError(f"{name}: depressed p-coefficient is 0")
        if ring is None:
            ring = PiAdicRing(dep.p.field, cubic_discriminant(dep).numerator)
        alpha = discriminant_root_series(r, cfg, ring)
        v = verify_root(r, alpha)
        if v <= cfg.truncation_order:
            raise ConsistencyError(f"{name}(alpha) has valuation {v}")
        out.append(alpha)
    return out[0], out[1]


def rho_constant(g: DepressedQuartic) -> RationalFunction:
    """``(8ce - 2c^3 - 9d^2) / (2c^2 + 24e)``."""
    c, d, e = g.c, g.d, g.e
    den = 2 * c**2 + 24 * e
    if den == 0:
        raise SingularSeedError("2c^2 + 24e = 0")
    return (8 * c * e - 2 * c**3 - 9 * d**2) / den


def rho_series(alpha4: DiscAdicElement, g: DepressedQuartic, cfg: LiftConfig = LiftConfig(DEFAULT_ORDER)) -> RhoSeries:
    """Solve ``rho^2 = alpha4^2 - 4e`` digit by digit from the fixed seed.

    At step ``n`` the new digit is ``[alpha4^2 - 4e - rho^2]_n / (2 rho_0)``
    reduced mod ``pi``; the sign of ``rho`` is never re-chosen.
    """
    _check_char(g)
    ring = alpha4.ring
    n = cfg.truncation_order
    rho0 = rho_constant(g)
    if rho0 == 0:
        raise SingularSeedError("rho_0 = 0")
    target = (alpha4 * alpha4 - 4 * g.e).truncate(n)
    rho = ring.element(rho0, n)
    rho = DiscAdicElement(ring, rho.poly, n)
    if not rho.is_unit():
        raise SingularSeedError("rho_0 vanishes mod Delta")
    if (target - rho * rho).valuation() < 1:
        raise ConsistencyError("rho_0^2 != alpha4^2 - 4e mod Delta")
    inv = ring.element(2 * rho0, 0).inverse()
    pi = ring.pi_element(n)
    for k in range(1, n + 1):
        diff = target - rho * rho
        v = diff.valuation()
        if v < k:
            raise ConsistencyError(f"rho^2 - target has valuation {v} < {k}")
        digit = (ring.element(diff.digits[k], 0) * inv).residue()
        rho = rho + ring.element(digit, n) * pi**k
    return RhoSeries(rho, rho0)


def _divmod_monic(num: list, den: list) -> tuple[list, list]:
    """Long division of coefficient lists (high -> low) by a monic divisor."""
    num = list(num)
    dlen = len(den)
    quo = []
    for i in range(len(num) - dlen + 1):
        q = num[i]
        quo.append(q)
        for j in range(1, dlen):
            num[i + j] = num[i + j] - q * den[j]
    return quo, num[len(num) - dlen + 1 :]


def ramified_factor(g: DepressedQuartic, cfg: LiftConfig = LiftConfig(DEFAULT_ORDER)) -> RamifiedQuadratic:
    _check_char(g)
    if g.d == 0:
        raise PreconditionError("d = 0: use the quadratic formula in t^2")
    n = cfg.truncation_order
    ring = quartic_ring(g)
    pair = resolvents(g)
    alpha3, alpha4 = resolvent_roots(pair, cfg, ring)
    rho = rho_series(alpha4, g, cfg).rho
    s = g.d / rho
    const = (alpha4 + rho) / 2
    if (s * s - alpha3).valuation() <= n:
        raise ConsistencyError("s^2 != alpha3")
    one = ring.one(n)
    coeffs = [one, ring.zero(n), ring.element(g.c, n), ring.element(g.d, n), ring.element(g.e, n)]
    quo, rem = _divmod_monic(coeffs, [one, -s, const])
    u = (quo[1], quo[2])
    result = RamifiedQuadratic(s, const, n, alpha3, alpha4, rho, u, (rem[0], rem[1]))
    if not result.divides():
        raise ConsistencyError(f"g - r*u has valuation {result.remainder_valuation} <= {n}")
    return result
