"""Truncated formal power series over an exact ring, and the named series.

The named series are

* ``s(z) = sum C(3n, n) z^n``                       (:func:`central_trinomial_series`)
* ``B_{n,r}(z) = sum A_m(n, r) z^m``               (:func:`generalized_binomial_series`)

with Fuss-Catalan coefficients ``A_m(n, r) = r/(mn+r) * C(mn+r, m)``.
:func:`verify_identity` checks the combinatorial identities the root
formulas rest on, coefficient by coefficient through a given order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Sequence

from .rings import QQ, ZZ, GF, NotInvertibleError, RingMismatchError


class SeriesError(Exception):
    pass


class FussCatalanDomainError(SeriesError, ValueError):
    pass


class IntegralityError(SeriesError, ArithmeticError):
    pass


class UnknownIdentityError(SeriesError, KeyError):
    pass


class TruncatedSeries:
    """``sum_{k <= order} c_k z^k`` with coefficients in ``ring``.

    Binary operations between series of different orders truncate to the
    smaller order.  Both operands must live in the same ring.
    """

    __slots__ = ("coefficients", "ring")

    def __init__(self, coefficients: Sequence[Any], ring=QQ):
        if not coefficients:
            raise ValueError("a truncated series needs at least one coefficient")
        self.ring = ring
        self.coefficients = tuple(ring.convert(c) for c in coefficients)

    @classmethod
    def constant(cls, c, order: int, ring=QQ) -> TruncatedSeries:
        return cls([c] + [0] * order, ring)

    @classmethod
    def variable(cls, order: int, ring=QQ) -> TruncatedSeries:
        """The series ``z`` truncated at ``order``."""
        return cls([0, 1][: order + 1] + [0] * max(0, order - 1), ring)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    @property
    def ring_tag(self) -> str:
        return self.ring.tag

    def __getitem__(self, k: int):
        return self.coefficients[k]

    def __len__(self) -> int:
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    def _check(self, other: TruncatedSeries) -> int:
        if other.ring.tag != self.ring.tag:
            raise RingMismatchError(f"series over {self.ring.tag} vs {other.ring.tag}")
        return min(self.order, other.order)

    def _lift(self, other) -> TruncatedSeries | None:
        if isinstance(other, TruncatedSeries):
            return other
        try:
            return TruncatedSeries.constant(self.ring.convert(other), self.order, self.ring)
        except TypeError:
            return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        n = self._check(other)
        return TruncatedSeries([self[k] + other[k] for k in range(n + 1)], self.ring)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coefficients], self.ring)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        n = self._check(other)
        return TruncatedSeries([self[k] - other[k] for k in range(n + 1)], self.ring)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = self._lift(other)
            if other is None:
                return NotImplemented
            return self.scale(other[0])
        n = self._check(other)
        a, b = self.coefficients, other.coefficients
        zero = self.ring.zero
        # skip leading zeros; shifted series (e.g. z * B(z)) are common
        sa = next((i for i in range(n + 1) if a[i] != 0), n + 1)
        sb = next((i for i in range(n + 1) if b[i] != 0), n + 1)
        out = [zero] * (n + 1)
        for k in range(sa + sb, n + 1):
            acc = zero
            for i in range(sa, k - sb + 1):
                acc = acc + a[i] * b[k - i]
            out[k] = acc
        return TruncatedSeries(out, self.ring)

    __rmul__ = __mul__

    def scale(self, c) -> TruncatedSeries:
        c = self.ring.convert(c)
        return TruncatedSeries([c * x for x in self.coefficients], self.ring)

    def shift(self, k: int = 1) -> TruncatedSeries:
        """Multiply by ``z**k`` keeping the order."""
        zero = self.ring.zero
        return TruncatedSeries(([zero] * k + list(self.coefficients))[: self.order + 1], self.ring)

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return TruncatedSeries(self.coefficients[: order + 1], self.ring)

    def inverse(self) -> TruncatedSeries:
        """Multiplicative inverse; the constant term must be a unit."""
        c0 = self.coefficients[0]
        if not self.ring.is_unit(c0):
            raise NotInvertibleError(f"constant term {c0} is not a unit of {self.ring.tag}")
        inv0 = self.ring.inverse(c0)
        out = [inv0]
        a = self.coefficients
        for k in range(1, self.order + 1):
            acc = self.ring.zero
            for i in range(1, k + 1):
                acc = acc + a[i] * out[k - i]
            out.append(-acc * inv0)
        return TruncatedSeries(out, self.ring)

    def __pow__(self, k: int) -> TruncatedSeries:
        if k < 0:
            return self.inverse() ** (-k)
        result = TruncatedSeries.constant(self.ring.one, self.order, self.ring)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def evaluate(self, z, one=None):
        """``sum c_k z**k`` by Horner's rule; ``z`` may be any ring-like value."""
        acc = None
        for c in reversed(self.coefficients):
            acc = c if acc is None else acc * z + c
        return acc

    def map(self, ring, f: Callable[[Any], Any] | None = None) -> TruncatedSeries:
        """Coefficientwise image in another ring."""
        f = f or ring.convert
        return TruncatedSeries([f(c) for c in self.coefficients], ring)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.ring.tag == other.ring.tag and self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash((self.ring.tag, self.coefficients))

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            terms.append(f"{c}" if k == 0 else f"({c})*z" if k == 1 else f"({c})*z^{k}")
        body = " + ".join(terms) if terms else "0"
        return f"TruncatedSeries({body} + O(z^{self.order + 1}), {self.ring.tag})"


# ---------------------------------------------------------------------------
# named coefficient sequences


def central_trinomial_coeff(n: int) -> int:
    """``C(3n, n)``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return math.comb(3 * n, n)


def fuss_catalan(n: int, r: int, m: int, *, continuous: bool = False) -> int:
    """Fuss-Catalan number ``A_m(n, r) = r/(mn+r) * C(mn+r, m)``.

    ``C(a, m)`` is the polynomial binomial ``a(a-1)...(a-m+1)/m!`` so negative
    ``r`` is allowed.  When ``mn + r == 0`` the quotient is undefined and a
    :class:`FussCatalanDomainError` is raised, unless ``continuous`` is set, in
    which case the removable singularity is filled in with
    ``r * (a-1)(a-2)...(a-m+1) / m!`` (the value that makes
    ``B_{n,r} = B_n**r`` hold for every ``r``).
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    a = m * n + r
    if m == 0:
        if a == 0 and not continuous:
            raise FussCatalanDomainError(f"mn + r = 0 for (n, r, m) = ({n}, {r}, {m})")
        return 1
    if a == 0 and not continuous:
        raise FussCatalanDomainError(f"mn + r = 0 for (n, r, m) = ({n}, {r}, {m})")
    # r * (a-1)(a-2)...(a-m+1) / m!
    num = r
    for j in range(1, m):
        num *= a - j
    den = math.factorial(m)
    q, rem = divmod(num, den)
    if rem:
        raise IntegralityError(f"A_{m}({n},{r}) = {Fraction(num, den)} is not an integer")
    return q


def central_trinomial_series(order: int, ring=ZZ) -> TruncatedSeries:
    """``s(z) = sum C(3n, n) z^n`` to the given order."""
    return TruncatedSeries([ring.convert(central_trinomial_coeff(k)) for k in range(order + 1)], ring)


def generalized_binomial_series(n: int, r: int, order: int, ring=ZZ) -> TruncatedSeries:
    """``B_{n,r}(z)`` truncated at ``order``, coefficients mapped into ``ring``."""
    if order < 0:
        raise ValueError("order must be non-negative")
    return TruncatedSeries(
        [ring.convert(fuss_catalan(n, r, m, continuous=True)) for m in range(order + 1)], ring
    )


def hypergeometric_coefficient(a, b, c, n: int) -> Fraction:
    """Coefficient of ``z^n`` in Gauss's ``F(a, b; c; z)``: ``(a)_n (b)_n / ((c)_n n!)``."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if c.denominator == 1 and c <= 0:
        raise ValueError(f"c = {c} is a non-positive integer")
    if n < 0:
        raise ValueError("n must be non-negative")
    out = Fraction(1)
    for k in range(n):
        out *= (a + k) * (b + k) / ((c + k) * (k + 1))
    return out


# ---------------------------------------------------------------------------
# identity registry


@dataclass(frozen=True)
class IdentityReport:
    name: str
    params: tuple
    order: int
    ring: str
    holds: bool
    first_mismatch: int | None = None
    lhs: Any = None
    rhs: Any = None

    def __bool__(self) -> bool:
        return self.holds


def _disc_cubic(order: int, ring, **_) -> tuple[TruncatedSeries, TruncatedSeries]:
    s = central_trinomial_series(order, ring)
    z = TruncatedSeries.variable(order, ring)
    lhs = (4 - z.scale(27)) * s**3
    rhs = 1 + s.scale(3)
    return lhs, rhs


def _trinomial_shift(order: int, ring, n: int = 3, **_) -> tuple[TruncatedSeries, TruncatedSeries]:
    b = generalized_binomial_series(n, 1, order, ring)
    return (b**n).shift(1), b - 1


def _power_law(order: int, ring, n: int = 3, r: int = 2, **_) -> tuple[TruncatedSeries, TruncatedSeries]:
    b = generalized_binomial_series(n, 1, order, ring)
    return b**r, generalized_binomial_series(n, r, order, ring)


def _char3_cubic(order: int, ring, **_) -> tuple[TruncatedSeries, TruncatedSeries]:
    a = 1 - generalized_binomial_series(3, -1, order, ring)
    return a * (1 - a) ** 2, TruncatedSeries.variable(order, ring)


def _hypergeometric_match(order: int, ring, **_) -> tuple[TruncatedSeries, TruncatedSeries]:
    if ring.characteristic != 0:
        raise ValueError("hypergeometric_match needs a characteristic-0 ring")
    lhs = [
        hypergeometric_coefficient(Fraction(1, 3), Fraction(2, 3), Fraction(1, 2), k) * Fraction(27, 4) ** k
        for k in range(order + 1)
    ]
    return TruncatedSeries(lhs, QQ), central_trinomial_series(order, QQ)


IDENTITIES: dict[str, Callable[..., tuple[TruncatedSeries, TruncatedSeries]]] = {
    "disc_cubic_identity": _disc_cubic,
    "trinomial_shift": _trinomial_shift,
    "power_law": _power_law,
    "char3_cubic": _char3_cubic,
    "hypergeometric_match": _hypergeometric_match,
}


def verify_identity(name: str, order: int, ring=QQ, **params) -> IdentityReport:
    """Check a registered identity coefficientwise through ``order``.

    Registered names and parameters:

    ``disc_cubic_identity``   (4 - 27z) s(z)^3 = 1 + 3 s(z)
    ``trinomial_shift``       z B_n(z)^n = B_n(z) - 1                 (n)
    ``power_law``             B_n(z)^r = B_{n,r}(z)                   (n, r)
    ``char3_cubic``           a (1 - a)^2 = z,  a = 1 - B_{3,-1}(z)
    ``hypergeometric_match``  F(1/3, 2/3; 1/2; 27z/4) = s(z)          (QQ only)
    """
    try:
        builder = IDENTITIES[name]
    except KeyError:
        raise UnknownIdentityError(name) from None
    lhs, rhs = builder(order, ring, **params)
    key = tuple(sorted(params.items()))
    for k in range(order + 1):
        if lhs[k] != rhs[k]:
            return IdentityReport(name, key, order, ring.tag, False, k, lhs[k], rhs[k])
    return IdentityReport(name, key, order, ring.tag, True)


def standard_identity_suite(order: int | None = None) -> list[tuple[str, dict, int, Any]]:
    """The (name, params, order, ring) checks run by ``verify-identities --all``.

    With ``order`` given every check runs at that order; otherwise each uses
    its reference order (200 / 100 / 60 / 100 / 100).
    """
    checks: list[tuple[str, dict, int, Any]] = [("disc_cubic_identity", {}, 200, QQ)]
    checks += [("trinomial_shift", {"n": n}, 100, QQ) for n in (2, 3, 4, 5, 6)]
    checks += [
        ("power_law", {"n": n, "r": r}, 60, QQ) for n in (2, 3, 4, 5) for r in (-2, -1, 1, 2, 3)
    ]
    checks += [("char3_cubic", {}, 100, ZZ), ("char3_cubic", {}, 100, GF(3))]
    checks += [("hypergeometric_match", {}, 100, QQ)]
    if order is not None:
        checks = [(n, p, order, r) for n, p, _, r in checks]
    return checks


def verify_char2_congruence(n_max: int = 200) -> IdentityReport:
    """``C(3n, n) == A_n(3, 1) mod 2`` for ``n <= n_max``: in characteristic 2
    the discriminant series and the trinomial series coincide."""
    for n in range(n_max + 1):
        a, b = central_trinomial_coeff(n) % 2, fuss_catalan(3, 1, n) % 2
        if a != b:
            return IdentityReport("char2_congruence", (), n_max, GF(2).tag, False, n, a, b)
    return IdentityReport("char2_congruence", (), n_max, GF(2).tag, True)
