"""Roots of the generic cubic as truncated power series in the discriminant.

Let ``A`` be the completion of ``k[x_1..x_n]`` at a prime ``pi`` and pick an
indeterminate ``x`` that ``pi`` involves.  With ``F`` the rational functions
in the remaining indeterminates,

    A / pi^M  =  F[x] / (pi^M),

so an element mod ``pi^M`` is a polynomial in ``x`` over ``F`` of degree
``< M deg_x(pi)``.  Dividing repeatedly by ``pi`` (made monic in ``x``) gives
digits ``a_k`` with ``deg_x a_k < deg_x pi``; that digit expansion is the
normal form, and it is canonical.  ``x`` is chosen to make ``deg_x pi`` as
small as possible (e.g. ``q`` for ``-4p^3 - 27q^2``, ``c3`` in characteristic
2 and 3), which keeps the digit coefficients small.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral
from typing import Sequence

from .forms import (
    DepressedCubic,
    GeneralCubic,
    char2_delta,
    certify_prime,
    cubic_discriminant,
    depress_cubic,
)
from .rings import (
    CharacteristicError,
    FractionField,
    MultiPoly,
    NotInvertibleError,
    PrimeFieldElement,
    RationalFunction,
    RingError,
    RingMismatchError,
    ValuationDomainError,
    pi_adic_valuation,
)
from .series import TruncatedSeries, central_trinomial_coeff, fuss_catalan


class AdicError(RingError):
    pass


class PreconditionError(AdicError, ValueError):
    pass


class HenselPreconditionError(PreconditionError):
    pass


class NoResidueRootError(AdicError):
    """The residue cubic has no root, so no root exists in ``A``."""

    def __init__(self, message: str, certificate: ResidueCertificate | None = None):
        super().__init__(message)
        self.certificate = certificate


@dataclass(frozen=True)
class LiftConfig:
    truncation_order: int = 8
    base_characteristic: int | None = None

    def __post_init__(self):
        if not isinstance(self.truncation_order, Integral) or self.truncation_order < 1:
            raise ValueError(f"truncation_order must be an integer >= 1, got {self.truncation_order!r}")

    def check(self, characteristic: int) -> None:
        if self.base_characteristic is not None and self.base_characteristic != characteristic:
            raise CharacteristicError(
                f"config expects characteristic {self.base_characteristic}, cubic has {characteristic}"
            )


# ---------------------------------------------------------------------------
# univariate polynomials over F, as lists of RationalFunction (low -> high)

UPoly = list


def _trim(a: UPoly) -> UPoly:
    while a and a[-1].is_zero():
        a.pop()
    return a


def _add(a: UPoly, b: UPoly) -> UPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return _trim(out)


def _neg(a: UPoly) -> UPoly:
    return [-c for c in a]


def _sub(a: UPoly, b: UPoly) -> UPoly:
    return _add(a, _neg(b))


def _mul(a: UPoly, b: UPoly) -> UPoly:
    if not a or not b:
        return []
    out = [None] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            t = x * y
            out[i + j] = t if out[i + j] is None else out[i + j] + t
    zero = a[0].field.zero
    return _trim([zero if c is None else c for c in out])


def _scale(a: UPoly, c) -> UPoly:
    return _trim([x * c for x in a])


def _divmod_monic(a: UPoly, m: UPoly) -> tuple[UPoly, UPoly]:
    d = len(m) - 1
    if len(a) <= d:
        return [], list(a)
    r = list(a)
    q = [None] * (len(a) - d)
    for k in range(len(a) - 1, d - 1, -1):
        c = r[k]
        q[k - d] = c
        if c.is_zero():
            continue
        for i in range(d):
            r[k - d + i] = r[k - d + i] - c * m[i]
        r[k] = c - c
    zero = m[0].field.zero
    return _trim([zero if c is None else c for c in q]), _trim(r[:d])


def _divmod(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly]:
    lc_inv = b[-1].inverse()
    q, r = _divmod_monic(a, _scale(b, lc_inv))
    return _scale(q, lc_inv), r


def _inverse_mod(a: UPoly, m: UPoly) -> UPoly:
    """Inverse of ``a`` modulo ``m`` by the extended Euclidean algorithm."""
    r0, r1 = list(m), _divmod_monic(a, m)[1]
    s0, s1 = [], [m[0].field.one]
    while r1:
        q, r = _divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _sub(s0, _mul(q, s1))
    if len(r0) != 1:
        raise NotInvertibleError("not a unit modulo pi")
    return _divmod_monic(_scale(s0, r0[0].inverse()), m)[1]


# ---------------------------------------------------------------------------


def _choose_variable(pi: MultiPoly) -> str:
    best = None
    for name in pi.ring.names:
        deg = pi.degree(name)
        if deg <= 0:
            continue
        lead = _x_coefficients(pi, name)[-1]
        key = (deg, 0 if lead.is_constant() else 1)
        if best is None or key < best[0]:
            best = (key, name)
    if best is None:
        raise ValuationDomainError(f"pi must be non-constant, got {pi}")
    return best[1]


def _x_coefficients(poly: MultiPoly, name: str) -> list[MultiPoly]:
    ix = poly.ring.names.index(name)
    buckets: dict[int, dict] = {}
    for exps, c in poly.coeff_dict().items():
        rest = exps[:ix] + (0,) + exps[ix + 1 :]
        buckets.setdefault(exps[ix], {})[rest] = c
    top = max(buckets, default=-1)
    return [poly.ring.from_dict(buckets.get(k, {})) for k in range(top + 1)]


class PiAdicRing:
    """``A / pi^M`` for the completion ``A`` of ``field`` at the prime ``pi``."""

    def __init__(self, field: FractionField, pi, variable: str | None = None):
        if isinstance(pi, RationalFunction):
            if not pi.is_polynomial():
                raise ValuationDomainError(f"pi must be a polynomial, got {pi}")
            pi = pi.numerator * pi.denominator.leading_coefficient() ** -1
        pi = field.poly_ring.convert(pi)
        self.prime_reason = certify_prime(pi)
        self.field = field
        self.pi = pi
        self.variable = variable or _choose_variable(pi)
        if pi.degree(self.variable) < 1:
            raise ValuationDomainError(f"pi does not involve {self.variable}")
        self._x = field.gen(self.variable)
        coeffs = [field.convert(c) for c in _x_coefficients(pi, self.variable)]
        self._lc = coeffs[-1]
        self._pi_monic = _scale(coeffs, coeffs[-1].inverse())
        self.degree = len(self._pi_monic) - 1
        self._pi_powers: list[UPoly] = [[field.one], self._pi_monic]
        self._element_cache: dict = {}

    @property
    def characteristic(self) -> int:
        return self.field.characteristic

    @property
    def tag(self) -> str:
        return f"{self.field.tag}^[{self.pi}]"

    def __repr__(self) -> str:
        return f"PiAdicRing({self.field.tag}, pi={self.pi})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PiAdicRing) and self.field is other.field and self.pi == other.pi and self.variable == other.variable

    def __hash__(self) -> int:
        return hash((self.field.tag, str(self.pi), self.variable))

    # -- residue polynomial plumbing
    def pi_power(self, m: int) -> UPoly:
        while len(self._pi_powers) <= m:
            self._pi_powers.append(_mul(self._pi_powers[-1], self._pi_monic))
        return self._pi_powers[m]

    def reduce(self, a: UPoly, m: int) -> UPoly:
        return _divmod_monic(a, self.pi_power(m))[1]

    def to_upoly(self, poly: MultiPoly) -> UPoly:
        return _trim([self.field.convert(c) for c in _x_coefficients(poly, self.variable)])

    def from_upoly(self, a: UPoly) -> RationalFunction:
        out = self.field.zero
        for c in reversed(a):
            out = out * self._x + c
        return out

    def _inverse_mod_power(self, a: UPoly, m: int) -> UPoly:
        y = _inverse_mod(a, self._pi_monic)
        prec = 1
        two = [self.field.convert(2)]
        while prec < m:
            prec = min(2 * prec, m)
            y = self.reduce(_mul(y, _sub(two, self.reduce(_mul(a, y), prec))), prec)
        return y

    # -- elements
    def element(self, x, order: int) -> DiscAdicElement:
        """Embed a rational function of non-negative valuation at order ``order``."""
        if isinstance(x, DiscAdicElement):
            if x.ring != self:
                raise RingMismatchError(f"{x.ring.tag} vs {self.tag}")
            return x.truncate(order) if order <= x.order else x.extend(order)
        rf = self.field.convert(x)
        key = (rf, order)
        hit = self._element_cache.get(key)
        if hit is not None:
            return hit
        if rf.is_zero():
            el = DiscAdicElement(self, [], order, exact=rf)
        else:
            m = order + 1
            num = self.to_upoly(rf.numerator)
            den = self.to_upoly(rf.denominator)
            if not _divmod_monic(den, self._pi_monic)[1]:
                v = pi_adic_valuation(rf, self.pi)
                if v < 0:
                    raise ValuationDomainError(f"{rf} has pi-adic valuation {v} < 0")
                # pi divides num at least as often as den: cancel and retry
                from .rings import split_valuation

                _, a, b = split_valuation(rf, self.pi)
                el = self.element(self.field.convert(a) / self.field.convert(b), order)
                el = el * self.pi_element(order) ** v if v else el
                el = DiscAdicElement(self, el.poly, order, exact=rf)
            else:
                poly = self.reduce(_mul(num, self._inverse_mod_power(den, m)), m)
                el = DiscAdicElement(self, poly, order, exact=rf)
        if len(self._element_cache) < 4096:
            self._element_cache[key] = el
        return el

    def pi_element(self, order: int) -> DiscAdicElement:
        return self.element(self.field.convert(self.pi), order)

    def from_digits(self, digits: Sequence, order: int | None = None) -> DiscAdicElement:
        """``sum a_k pi^k`` for arbitrary coefficients of valuation >= 0, renormalized."""
        if order is None:
            order = len(digits) - 1
        acc = self.element(0, order)
        pi = self.pi_element(order)
        for a in reversed(list(digits)[: order + 1]):
            acc = acc * pi + self.element(a, order)
        return DiscAdicElement(self, acc.poly, order)

    def zero(self, order: int) -> DiscAdicElement:
        return self.element(0, order)

    def one(self, order: int) -> DiscAdicElement:
        return self.element(1, order)


def _is_scalar_like(x) -> bool:
    return isinstance(x, (Integral, Fraction, PrimeFieldElement, MultiPoly, RationalFunction))


class DiscAdicElement:
    """``sum_{k <= order} a_k pi^k`` in normal form.

    Internally kept as a polynomial in the ring's chosen variable reduced
    modulo ``pi^(order+1)``; ``digits`` are derived from it.  ``exact`` holds
    the rational function the element was embedded from, when there is one.
    """

    __slots__ = ("ring", "poly", "order", "exact", "_digits")

    def __init__(self, ring: PiAdicRing, poly: UPoly, order: int, exact: RationalFunction | None = None):
        self.ring = ring
        self.poly = tuple(poly)
        self.order = order
        self.exact = exact
        self._digits = None

    @property
    def pi(self) -> MultiPoly:
        return self.ring.pi

    @property
    def digits(self) -> tuple[RationalFunction, ...]:
        if self._digits is None:
            # pi = lc * monic, so a digit for the monic divisor is lc^k times
            # the digit for pi itself
            out = []
            rest = list(self.poly)
            scale = self.ring.field.one
            for _ in range(self.order + 1):
                rest, r = _divmod_monic(rest, self.ring._pi_monic)
                out.append(self.ring.from_upoly(r) / scale)
                scale = scale * self.ring._lc
            self._digits = tuple(out)
        return self._digits

    @property
    def terms(self) -> TruncatedSeries:
        return TruncatedSeries(self.digits, self.ring.field)

    def __getitem__(self, k: int) -> RationalFunction:
        return self.digits[k]

    def residue(self) -> RationalFunction:
        return self.digits[0]

    def valuation(self) -> int | float:
        """Smallest k with a_k != 0; ``order + 1`` when all kept digits vanish
        (read it as "at least"), and ``inf`` for an exactly zero element."""
        if self.exact is not None and self.exact.is_zero():
            return math.inf
        if not self.poly:
            return self.order + 1
        for k, a in enumerate(self.digits):
            if not a.is_zero():
                return k
        return self.order + 1

    def is_unit(self) -> bool:
        return bool(_divmod_monic(list(self.poly), self.ring._pi_monic)[1])

    def truncate(self, order: int) -> DiscAdicElement:
        if order > self.order:
            raise ValueError(f"cannot raise precision from {self.order} to {order}; use extend()")
        if order == self.order:
            return self
        return DiscAdicElement(self.ring, self.ring.reduce(list(self.poly), order + 1), order, self.exact)

    def extend(self, order: int) -> DiscAdicElement:
        """Same representative read at a higher order (unknown digits become 0,
        or come from ``exact`` when available)."""
        if order <= self.order:
            return self.truncate(order)
        if self.exact is not None:
            return self.ring.element(self.exact, order)
        return DiscAdicElement(self.ring, self.poly, order)

    # -- arithmetic
    def _coerce(self, other) -> DiscAdicElement | None:
        if isinstance(other, DiscAdicElement):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring.tag} vs {other.ring.tag}")
            return other
        if _is_scalar_like(other):
            return self.ring.element(other, self.order)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(self.order, o.order)
        a, b = self.truncate(n), o.truncate(n)
        return DiscAdicElement(self.ring, _add(list(a.poly), list(b.poly)), n)

    __radd__ = __add__

    def __neg__(self):
        exact = -self.exact if self.exact is not None else None
        return DiscAdicElement(self.ring, _neg(list(self.poly)), self.order, exact)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(self.order, o.order)
        a, b = self.truncate(n), o.truncate(n)
        return DiscAdicElement(self.ring, self.ring.reduce(_mul(list(a.poly), list(b.poly)), n + 1), n)

    __rmul__ = __mul__

    def inverse(self) -> DiscAdicElement:
        if not self.is_unit():
            raise NotInvertibleError("element is not a unit of A (its residue is 0)")
        m = self.order + 1
        return DiscAdicElement(self.ring, self.ring._inverse_mod_power(list(self.poly), m), self.order)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(self.order, o.order)
        return self.truncate(n) * o.truncate(n).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.ring.one(self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, DiscAdicElement):
            return self.ring == other.ring and self.order == other.order and self.poly == other.poly
        if _is_scalar_like(other):
            return self == self.ring.element(other, self.order)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring, self.order, tuple(str(c) for c in self.poly)))

    def evaluate(self, values: dict):
        """Specialize: ``sum a_k(values) * pi(values)^k`` (numbers in, number out)."""
        pv = self.pi.evaluate(values)
        total = 0
        for a in reversed(self.digits):
            total = total * pv + a.evaluate(values)
        return total

    def agrees_with(self, other: DiscAdicElement, order: int | None = None) -> bool:
        n = min(self.order, other.order) if order is None else order
        return self.truncate(n).poly == other.truncate(n).poly

    def first_mismatch(self, other: DiscAdicElement) -> int | None:
        for k, (a, b) in enumerate(zip(self.digits, other.digits)):
            if a != b:
                return k
        return None

    def __str__(self) -> str:
        return render_element(self)

    def __repr__(self) -> str:
        return f"DiscAdicElement({self}, order={self.order})"


def render_element(el: DiscAdicElement, symbol: str = "π") -> str:
    """``a0 + (a1)·π + ... [π = <poly>]``, skipping zero digits."""
    parts = []
    for k, a in enumerate(el.digits):
        if a.is_zero():
            continue
        s = str(a)
        if k == 0:
            parts.append(s)
            continue
        if s == "1":
            body = symbol
        else:
            if any(ch in s for ch in " /") or s.startswith("-"):
                s = f"({s})"
            body = f"{s}·{symbol}"
        if k > 1:
            body += f"^{k}"
        parts.append(body)
    text = " + ".join(parts) if parts else "0"
    return f"{text} [{symbol} = {el.pi}]"


# ---------------------------------------------------------------------------
# generic cubics


def generic_field(names: Sequence[str], characteristic: int = 0) -> FractionField:
    return FractionField.of(tuple(names), characteristic)


def generic_depressed(characteristic: int = 0) -> DepressedCubic:
    p, q = generic_field(("p", "q"), characteristic).gens()
    return DepressedCubic(p, q)


def generic_general(characteristic: int = 0) -> GeneralCubic:
    c1, c2, c3 = generic_field(("c1", "c2", "c3"), characteristic).gens()
    return GeneralCubic(c1, c2, c3)


def _field_of(f) -> FractionField:
    for c in (f.c1, f.c2, f.c3):
        if isinstance(c, RationalFunction):
            return c.field
    raise TypeError("cubic coefficients must be rational functions")


def distinguished_prime(f: GeneralCubic | DepressedCubic) -> MultiPoly:
    """``delta`` in characteristic 2, ``-p``-free factor ``p`` for the depressed
    cubic in characteristic 3, else the discriminant."""
    char = f.characteristic
    field = _field_of(f)
    if char == 2:
        pi = field.convert(char2_delta(f))
    elif char == 3 and isinstance(f, DepressedCubic):
        pi = field.convert(f.p)
    else:
        pi = field.convert(cubic_discriminant(f))
    if not pi.is_polynomial():
        raise ValuationDomainError(f"the distinguished prime must be a polynomial, got {pi}")
    return pi.numerator


def cubic_ring(f: GeneralCubic | DepressedCubic) -> PiAdicRing:
    return PiAdicRing(_field_of(f), distinguished_prime(f))


def _eval_cubic(f, t):
    if isinstance(f, DepressedCubic):
        return (t * t + f.p) * t + f.q
    return ((t + f.c1) * t + f.c2) * t + f.c3


def _eval_derivative(f, t):
    if isinstance(f, DepressedCubic):
        return 3 * (t * t) + f.p
    return (3 * t + 2 * f.c1) * t + f.c2


def hensel_lift_cubic(
    f: GeneralCubic | DepressedCubic,
    seed,
    cfg: LiftConfig = LiftConfig(),
    ring: PiAdicRing | None = None,
) -> DiscAdicElement:
    """Newton's method in ``A``: ``a <- a - f(a)/f'(a)``, doubling precision.

    ``seed`` must be a simple root of ``f`` modulo ``pi``.
    """
    cfg.check(f.characteristic)
    ring = ring or cubic_ring(f)
    seed_rf = ring.field.convert(seed)
    v_seed = pi_adic_valuation(seed_rf, ring.pi)
    v_f = pi_adic_valuation(ring.field.convert(_eval_cubic(f, seed_rf)), ring.pi)
    v_df = pi_adic_valuation(ring.field.convert(_eval_derivative(f, seed_rf)), ring.pi)
    if v_seed < 0 or v_f < 1 or v_df != 0:
        raise HenselPreconditionError(
            f"seed {seed_rf} is not a simple root mod pi: v(seed)={v_seed}, v(f(seed))={v_f}, v(f'(seed))={v_df}"
        )
    n = cfg.truncation_order
    alpha = ring.element(seed_rf, 0)
    prec = 1
    while prec < n + 1:
        prec = min(2 * prec, n + 1)
        a = DiscAdicElement(ring, alpha.poly, prec - 1)
        alpha = a - _eval_cubic(f, a) / _eval_derivative(f, a)
    return alpha.extend(n) if alpha.order < n else alpha


def verify_root(f: GeneralCubic | DepressedCubic, alpha: DiscAdicElement) -> int | float:
    """``v_pi(f(alpha))``; exact when ``alpha`` carries its rational function."""
    if alpha.exact is not None:
        return pi_adic_valuation(alpha.ring.field.convert(_eval_cubic(f, alpha.exact)), alpha.pi)
    return _eval_cubic(f, alpha).valuation()


def _partial_sum(coeffs: Sequence[int], z):
    acc = z * 0
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _require_nonzero(x, what: str) -> None:
    if x == 0:
        raise PreconditionError(f"{what} must be nonzero")


def discriminant_root_series(
    f: GeneralCubic | DepressedCubic, cfg: LiftConfig = LiftConfig(), ring: PiAdicRing | None = None
) -> DiscAdicElement:
    """``-c1/3 + (3q/p) sum_{n<=N} C(3n,n) (-Delta/27p^3)^n`` in normal form.

    The partial sum is formed as an exact rational function and then
    re-expanded in ``pi = Delta``.
    """
    char = f.characteristic
    cfg.check(char)
    if char in (2, 3):
        raise CharacteristicError(f"the discriminant series needs characteristic != 2, 3 (got {char})")
    g, shift = depress_cubic(f) if isinstance(f, GeneralCubic) else (f, 0)
    _require_nonzero(g.p, "p")
    ring = ring or cubic_ring(f)
    n = cfg.truncation_order
    disc = cubic_discriminant(g)
    z = -disc / (27 * g.p**3)
    lam = _partial_sum([central_trinomial_coeff(k) for k in range(n + 1)], z)
    return ring.element(shift + 3 * g.q / g.p * lam, n)


def discriminant_seed(f: GeneralCubic | DepressedCubic):
    g, shift = depress_cubic(f) if isinstance(f, GeneralCubic) else (f, 0)
    return shift + 3 * g.q / g.p


def char3_delta(f: GeneralCubic):
    return f.c1**2 * f.c2**2 - f.c1**3 * f.c3 - f.c2**3


def char3_root_series(f: GeneralCubic, cfg: LiftConfig = LiftConfig(), ring: PiAdicRing | None = None) -> DiscAdicElement:
    """``c2/c1 - c1 B_{3,-1}(Delta/c1^6)`` over a field of characteristic 3."""
    if isinstance(f, DepressedCubic):
        raise PreconditionError("c1 = 0: the depressed cubic has no root in A in characteristic 3")
    if f.characteristic != 3:
        raise CharacteristicError(f"char3_root_series needs characteristic 3, got {f.characteristic}")
    cfg.check(3)
    _require_nonzero(f.c1, "c1")
    ring = ring or cubic_ring(f)
    n = cfg.truncation_order
    z = char3_delta(f) / f.c1**6
    b = _partial_sum([fuss_catalan(3, -1, m) for m in range(n + 1)], z)
    return ring.element(f.c2 / f.c1 - f.c1 * b, n)


def char3_seed(f: GeneralCubic):
    return f.c2 / f.c1 - f.c1


def char2_root_series(
    f: GeneralCubic | DepressedCubic, cfg: LiftConfig = LiftConfig(), ring: PiAdicRing | None = None
) -> DiscAdicElement:
    """``c1 + (q/p) B_3(q^2/p^3)`` with ``q = delta``; ``c1 = 0`` when depressed."""
    if f.characteristic != 2:
        raise CharacteristicError(f"char2_root_series needs characteristic 2, got {f.characteristic}")
    cfg.check(2)
    g, shift = depress_cubic(f) if isinstance(f, GeneralCubic) else (f, 0)
    _require_nonzero(g.p, "p")
    ring = ring or cubic_ring(f)
    n = cfg.truncation_order
    z = g.q**2 / g.p**3
    b = _partial_sum([fuss_catalan(3, 1, m) for m in range(n + 1)], z)
    return ring.element(shift + g.q / g.p * b, n)


def char2_seed(f: GeneralCubic | DepressedCubic):
    g, shift = depress_cubic(f) if isinstance(f, GeneralCubic) else (f, 0)
    return shift + g.q / g.p


def generic_root(f: GeneralCubic | DepressedCubic, cfg: LiftConfig = LiftConfig(), engine: str = "series") -> DiscAdicElement:
    """Dispatch on characteristic; ``engine`` is ``series`` or ``hensel``."""
    char = f.characteristic
    if char == 3:
        if isinstance(f, DepressedCubic) or f.c1 == 0:
            raise char3_depressed_obstruction(f)
        seed, series = char3_seed, char3_root_series
    elif char == 2:
        seed, series = char2_seed, char2_root_series
    else:
        seed, series = discriminant_seed, discriminant_root_series
    if engine == "series":
        return series(f, cfg)
    if engine == "hensel":
        return hensel_lift_cubic(f, seed(f), cfg)
    raise ValueError(f"unknown engine {engine!r}")


# ---------------------------------------------------------------------------
# characteristic 3, c1 = 0


def is_cube_char3(x: RationalFunction) -> bool:
    """Cubes in ``F_3(x_1..x_n)`` are exactly ``F_3(x_1^3..x_n^3)`` (Frobenius),
    so a reduced fraction is a cube iff every exponent is divisible by 3."""
    if x.field.characteristic != 3:
        raise CharacteristicError("is_cube_char3 needs characteristic 3")
    for part in (x.numerator, x.denominator):
        for exps in part.coeff_dict():
            if any(e % 3 for e in exps):
                return False
    return True


@dataclass(frozen=True)
class ResidueCertificate:
    pi: str
    residue_cubic: str
    radicand: str
    reason: str


def char3_residue_certificate(f: GeneralCubic | DepressedCubic) -> ResidueCertificate:
    """Certify that ``t^3 + p t + q`` with ``pi = p`` has no root mod ``pi``.

    The residue cubic is ``t^3 + q``; it has a root iff ``-q`` is a cube in
    the residue field, and the exponent test above rules that out.
    """
    if f.characteristic != 3:
        raise CharacteristicError("the char-3 certificate needs characteristic 3")
    if isinstance(f, GeneralCubic):
        if f.c1 != 0:
            raise PreconditionError("c1 != 0: the general cubic has a root in A")
        f = DepressedCubic(f.c2, f.c3)
    field = f.p.field
    pi = f.p.numerator
    if not f.p.is_polynomial() or pi.is_constant():
        raise PreconditionError(f"p = {f.p} is not a prime polynomial")
    certify_prime(pi)
    radicand = field.convert(-f.q)
    if pi_adic_valuation(radicand, pi) != 0:
        raise PreconditionError("q must be a unit mod p for the certificate")
    if is_cube_char3(radicand):
        raise PreconditionError(f"-q = {radicand} is a cube; no obstruction")
    bad = sorted({e for part in (radicand.numerator, radicand.denominator) for ex in part.coeff_dict() for e in ex if e % 3})
    return ResidueCertificate(
        pi=str(pi),
        residue_cubic=f"t^3 + {f.q}",
        radicand=str(radicand),
        reason=f"exponent(s) {bad} not divisible by 3, so -q is not a cube in the residue field",
    )


def char3_depressed_obstruction(f) -> NoResidueRootError:
    cert = char3_residue_certificate(f)
    return NoResidueRootError(
        "characteristic 3 with c1 = 0: the residue cubic "
        f"{cert.residue_cubic} mod {cert.pi} has no root ({cert.reason}); "
        "the cubic has no root in the completion",
        cert,
    )
