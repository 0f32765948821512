"""Exact coefficient rings.

Three kinds of ring descriptor live here:

* :data:`ZZ`, :data:`QQ` and :class:`PrimeField` for scalar coefficients
  (Python ``int``, :class:`fractions.Fraction` and :class:`PrimeFieldElement`);
* :class:`PolyRing`, multivariate polynomials over QQ or GF(p) in a fixed
  tuple of named indeterminates, elements :class:`MultiPoly`;
* :class:`FractionField`, the field of fractions of a :class:`PolyRing`,
  elements :class:`RationalFunction`.

Polynomial arithmetic and multivariate gcd are delegated to python-flint
(``fmpq_mpoly`` / ``nmod_mpoly``).  Every ring descriptor exposes the same
small protocol used by :class:`discroot.series.TruncatedSeries`:
``tag``, ``characteristic``, ``zero``, ``one``, ``convert``, ``is_unit`` and
``inverse``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Integral, Rational
from typing import Iterable, Mapping

import flint
from flint.utils.flint_exceptions import DomainError as _FlintDomainError


class RingError(Exception):
    """Base class for errors raised by the coefficient rings."""


class RingMismatchError(RingError):
    pass


class NotInvertibleError(RingError, ZeroDivisionError):
    pass


class CharacteristicError(RingError):
    """Operation not available in the characteristic of the ring."""


class ValuationDomainError(RingError, ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return bool(flint.fmpz(n).is_prime())


# ---------------------------------------------------------------------------
# scalar rings


class IntegerRing:
    tag = "ZZ"
    characteristic = 0

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def convert(self, x) -> int:
        if isinstance(x, Integral):
            return int(x)
        if isinstance(x, Fraction) and x.denominator == 1:
            return int(x.numerator)
        raise TypeError(f"cannot convert {x!r} into ZZ")

    def is_unit(self, x: int) -> bool:
        return x in (1, -1)

    def inverse(self, x: int) -> int:
        if x not in (1, -1):
            raise NotInvertibleError(f"{x} is not a unit of ZZ")
        return x

    def __repr__(self) -> str:
        return "ZZ"


class RationalField:
    tag = "QQ"
    characteristic = 0

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def convert(self, x) -> Fraction:
        if isinstance(x, (Integral, Fraction)):
            return Fraction(x)
        if isinstance(x, Rational):
            return Fraction(x.numerator, x.denominator)
        raise TypeError(f"cannot convert {x!r} into QQ")

    def is_unit(self, x) -> bool:
        return x != 0

    def inverse(self, x) -> Fraction:
        if x == 0:
            raise NotInvertibleError("division by zero in QQ")
        return 1 / Fraction(x)

    def __repr__(self) -> str:
        return "QQ"


ZZ = IntegerRing()
QQ = RationalField()


class PrimeFieldElement:
    """Residue class modulo a prime ``p``, stored as an int in ``[0, p)``."""

    __slots__ = ("residue", "p")

    def __init__(self, residue: int, p: int):
        self.residue = residue % p
        self.p = p

    def _coerce(self, other) -> int | None:
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise RingMismatchError(f"GF({self.p}) vs GF({other.p})")
            return other.residue
        if isinstance(other, Integral):
            return int(other)
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(self.residue + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(self.residue - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(o - self.residue, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(self.residue * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElement(-self.residue, self.p)

    def inverse(self) -> PrimeFieldElement:
        if self.residue == 0:
            raise NotInvertibleError(f"0 has no inverse in GF({self.p})")
        return PrimeFieldElement(pow(self.residue, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * PrimeFieldElement(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(o, self.p) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return PrimeFieldElement(pow(self.residue, k, self.p), self.p)

    def __eq__(self, other) -> bool:
        if isinstance(other, PrimeFieldElement):
            return self.p == other.p and self.residue == other.residue
        if isinstance(other, Integral):
            return (int(other) - self.residue) % self.p == 0
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.residue, self.p))

    def __int__(self) -> int:
        return self.residue

    def __bool__(self) -> bool:
        return self.residue != 0

    def __repr__(self) -> str:
        return f"{self.residue} (mod {self.p})"

    def __str__(self) -> str:
        return str(self.residue)


class PrimeField:
    """The prime field GF(p).  Primality is checked at construction."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.tag = f"GF({p})"

    @property
    def zero(self) -> PrimeFieldElement:
        return PrimeFieldElement(0, self.p)

    @property
    def one(self) -> PrimeFieldElement:
        return PrimeFieldElement(1, self.p)

    def convert(self, x) -> PrimeFieldElement:
        if isinstance(x, PrimeFieldElement):
            if x.p != self.p:
                raise RingMismatchError(f"GF({x.p}) element into GF({self.p})")
            return x
        if isinstance(x, Integral):
            return PrimeFieldElement(int(x), self.p)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise NotInvertibleError(f"{x} has no image in GF({self.p})")
            return PrimeFieldElement(x.numerator * pow(x.denominator, -1, self.p), self.p)
        raise TypeError(f"cannot convert {x!r} into GF({self.p})")

    def is_unit(self, x) -> bool:
        return bool(self.convert(x))

    def inverse(self, x) -> PrimeFieldElement:
        return self.convert(x).inverse()

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))

    def __repr__(self) -> str:
        return self.tag


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def scalar_ring(characteristic: int):
    """QQ for characteristic 0, otherwise GF(characteristic)."""
    return QQ if characteristic == 0 else GF(characteristic)


# ---------------------------------------------------------------------------
# multivariate polynomials


def _fmt_scalar(c, characteristic: int) -> str:
    if characteristic:
        return str(int(c))
    c = Fraction(int(c.p), int(c.q)) if isinstance(c, flint.fmpq) else Fraction(int(c))
    return str(c)


def render_poly(raw, names: tuple[str, ...], characteristic: int) -> str:
    """Canonical text form: graded-lex order, explicit signs, ``^`` powers."""
    terms = list(raw.terms())
    if not terms:
        return "0"
    out: list[str] = []
    for i, (exps, coeff) in enumerate(terms):
        c = _fmt_scalar(coeff, characteristic)
        negative = c.startswith("-")
        if negative:
            c = c[1:]
        mono = "*".join(
            name if e == 1 else f"{name}^{e}" for name, e in zip(names, exps) if e
        )
        if mono:
            body = mono if c == "1" else f"{c}*{mono}"
        else:
            body = c
        if i == 0:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(out)


class PolyRing:
    """k[x_1, ..., x_n] with k = QQ (characteristic 0) or GF(p).

    Monomials are ordered graded-lexicographically with the first name the
    largest, which fixes both the canonical rendering and the scalar
    normalization of rational functions.
    """

    _cache: dict[tuple, PolyRing] = {}

    def __new__(cls, names: Iterable[str], characteristic: int = 0):
        names = tuple(names)
        key = (names, characteristic)
        ring = cls._cache.get(key)
        if ring is not None:
            return ring
        if characteristic and not _is_prime(characteristic):
            raise ValueError(f"characteristic {characteristic} is not prime")
        if len(set(names)) != len(names):
            raise ValueError(f"repeated indeterminate in {names}")
        ring = super().__new__(cls)
        ring.names = names
        ring.characteristic = characteristic
        ring.scalars = scalar_ring(characteristic)
        if characteristic == 0:
            ring.ctx = flint.fmpq_mpoly_ctx.get(names, ordering="deglex")
        else:
            ring.ctx = flint.nmod_mpoly_ctx.get(
                names, modulus=characteristic, ordering="deglex"
            )
        ring.tag = f"{ring.scalars.tag}[{','.join(names)}]"
        cls._cache[key] = ring
        return ring

    def __getnewargs__(self):
        return (self.names, self.characteristic)

    # -- ring protocol
    @property
    def zero(self) -> MultiPoly:
        return MultiPoly(self, self.ctx.from_dict({}))

    @property
    def one(self) -> MultiPoly:
        return self.convert(1)

    def raw_scalar(self, c):
        """Scalar as a flint coefficient for this ring's context."""
        if self.characteristic:
            return int(self.scalars.convert(c))
        c = Fraction(c) if not isinstance(c, flint.fmpq) else c
        if isinstance(c, Fraction):
            return flint.fmpq(c.numerator, c.denominator)
        return c

    def convert(self, x) -> MultiPoly:
        if isinstance(x, MultiPoly):
            if x.ring is self:
                return x
            return MultiPoly(self, self._remap(x.raw, x.ring))
        if isinstance(x, (Integral, Fraction, PrimeFieldElement)):
            return MultiPoly(self, self.ctx.from_dict({(0,) * len(self.names): self.raw_scalar(x)}))
        raise TypeError(f"cannot convert {x!r} into {self.tag}")

    def _remap(self, raw, source: PolyRing):
        if source.characteristic != self.characteristic:
            raise RingMismatchError(f"{source.tag} -> {self.tag}")
        try:
            pos = [self.names.index(n) for n in source.names]
        except ValueError as exc:
            raise RingMismatchError(f"{source.tag} is not a subring of {self.tag}") from exc
        d = {}
        n = len(self.names)
        for exps, c in raw.to_dict().items():
            e = [0] * n
            for src_i, tgt_i in enumerate(pos):
                e[tgt_i] = exps[src_i]
            d[tuple(e)] = c
        return self.ctx.from_dict(d)

    def is_unit(self, x) -> bool:
        x = self.convert(x)
        return x.raw.is_constant() and not x.raw.is_zero()

    def inverse(self, x) -> MultiPoly:
        x = self.convert(x)
        if not self.is_unit(x):
            raise NotInvertibleError(f"{x} is not a unit of {self.tag}")
        c = x.raw.leading_coefficient()
        return self.convert(1) * self.scalars.inverse(_to_scalar(c, self.characteristic))

    def gens(self) -> tuple[MultiPoly, ...]:
        return tuple(MultiPoly(self, g) for g in self.ctx.gens())

    def gen(self, name: str) -> MultiPoly:
        return self.gens()[self.names.index(name)]

    def from_dict(self, d: Mapping[tuple[int, ...], object]) -> MultiPoly:
        return MultiPoly(self, self.ctx.from_dict({e: self.raw_scalar(c) for e, c in d.items()}))

    def __repr__(self) -> str:
        return self.tag


def _to_scalar(c, characteristic: int):
    if characteristic:
        return PrimeFieldElement(int(c), characteristic)
    if isinstance(c, flint.fmpq):
        return Fraction(int(c.p), int(c.q))
    return Fraction(int(c))


def _raw_of(ring: PolyRing, other):
    if isinstance(other, MultiPoly):
        if other.ring is not ring:
            raise RingMismatchError(f"{ring.tag} vs {other.ring.tag}")
        return other.raw
    if isinstance(other, (Integral, Fraction, PrimeFieldElement)):
        return ring.raw_scalar(other)
    return None


class MultiPoly:
    """Sparse multivariate polynomial; a thin wrapper over a flint mpoly."""

    __slots__ = ("ring", "raw")

    def __init__(self, ring: PolyRing, raw):
        self.ring = ring
        self.raw = raw

    def __add__(self, other):
        o = _raw_of(self.ring, other)
        if o is None:
            return NotImplemented
        return MultiPoly(self.ring, self.raw + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = _raw_of(self.ring, other)
        if o is None:
            return NotImplemented
        return MultiPoly(self.ring, self.raw - o)

    def __rsub__(self, other):
        o = _raw_of(self.ring, other)
        if o is None:
            return NotImplemented
        return MultiPoly(self.ring, o - self.raw)

    def __mul__(self, other):
        o = _raw_of(self.ring, other)
        if o is None:
            return NotImplemented
        return MultiPoly(self.ring, self.raw * o)

    __rmul__ = __mul__

    def __neg__(self):
        return MultiPoly(self.ring, -self.raw)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial; use RationalFunction")
        return MultiPoly(self.ring, self.raw**k)

    def __truediv__(self, other):
        # scalars divide coefficientwise; polynomials promote to a fraction
        if isinstance(other, (Integral, Fraction, PrimeFieldElement)):
            inv = self.ring.scalars.inverse(self.ring.scalars.convert(other))
            return self * inv
        if isinstance(other, (MultiPoly, RationalFunction)):
            field = FractionField(self.ring)
            return field.convert(self) / field.convert(other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (Integral, Fraction, PrimeFieldElement)):
            field = FractionField(self.ring)
            return field.convert(other) / field.convert(self)
        return NotImplemented

    def exquo(self, other: MultiPoly) -> MultiPoly | None:
        """Exact quotient, or None when ``other`` does not divide ``self``."""
        o = _raw_of(self.ring, other)
        try:
            return MultiPoly(self.ring, self.raw / o)
        except _FlintDomainError:
            return None

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return other.ring is self.ring and self.raw == other.raw
        if isinstance(other, (Integral, Fraction, PrimeFieldElement)):
            return self.raw == self.ring.raw_scalar(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring.tag, str(self.raw)))

    def is_zero(self) -> bool:
        return self.raw.is_zero()

    def __bool__(self) -> bool:
        return not self.raw.is_zero()

    def is_constant(self) -> bool:
        return self.raw.is_constant()

    def degree(self, var: str) -> int:
        """Degree in ``var``; -1 for the zero polynomial."""
        if self.raw.is_zero():
            return -1
        return int(self.raw.degrees()[self.ring.names.index(var)])

    def total_degree(self) -> int:
        return -1 if self.raw.is_zero() else int(self.raw.total_degree())

    def derivative(self, var: str) -> MultiPoly:
        return MultiPoly(self.ring, self.raw.derivative(self.ring.names.index(var)))

    def coeff_dict(self) -> dict[tuple[int, ...], object]:
        return {
            tuple(int(e) for e in exps): _to_scalar(c, self.ring.characteristic)
            for exps, c in self.raw.terms()
        }

    def leading_coefficient(self):
        return _to_scalar(self.raw.leading_coefficient(), self.ring.characteristic)

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate at numeric values (ints, Fractions, floats or complex)."""
        pts = [values[n] for n in self.ring.names]
        total = 0
        for exps, c in self.coeff_dict().items():
            term = c
            for v, e in zip(pts, exps):
                if e:
                    term = term * v**e
            total = total + term
        return total

    def __str__(self) -> str:
        return render_poly(self.raw, self.ring.names, self.ring.characteristic)

    def __repr__(self) -> str:
        return f"MultiPoly({self}, {self.ring.tag})"


# ---------------------------------------------------------------------------
# rational functions


class FractionField:
    """Frac(k[x_1..x_n]); elements are :class:`RationalFunction`."""

    _cache: dict[PolyRing, FractionField] = {}

    def __new__(cls, poly_ring: PolyRing):
        f = cls._cache.get(poly_ring)
        if f is None:
            f = super().__new__(cls)
            f.poly_ring = poly_ring
            f.names = poly_ring.names
            f.characteristic = poly_ring.characteristic
            f.scalars = poly_ring.scalars
            f.tag = f"{poly_ring.scalars.tag}({','.join(poly_ring.names)})"
            cls._cache[poly_ring] = f
        return f

    def __getnewargs__(self):
        return (self.poly_ring,)

    @classmethod
    def of(cls, names: Iterable[str], characteristic: int = 0) -> FractionField:
        return cls(PolyRing(names, characteristic))

    @property
    def zero(self) -> RationalFunction:
        return self.convert(0)

    @property
    def one(self) -> RationalFunction:
        return self.convert(1)

    def gens(self) -> tuple[RationalFunction, ...]:
        return tuple(self.convert(g) for g in self.poly_ring.gens())

    def gen(self, name: str) -> RationalFunction:
        return self.convert(self.poly_ring.gen(name))

    def convert(self, x) -> RationalFunction:
        if isinstance(x, RationalFunction):
            if x.field is self:
                return x
            pr = self.poly_ring
            return RationalFunction(
                self, pr._remap(x.num_raw, x.field.poly_ring), pr._remap(x.den_raw, x.field.poly_ring)
            )
        if isinstance(x, MultiPoly):
            p = self.poly_ring.convert(x)
            return RationalFunction(self, p.raw, self.poly_ring.ctx.from_dict({(0,) * len(self.names): 1}), _normalized=True)
        if isinstance(x, (Integral, PrimeFieldElement)):
            return self.convert(self.poly_ring.convert(x))
        if isinstance(x, Fraction):
            if self.characteristic:
                return self.convert(self.scalars.convert(x))
            return self.convert(self.poly_ring.convert(x))
        raise TypeError(f"cannot convert {x!r} into {self.tag}")

    def is_unit(self, x) -> bool:
        return not self.convert(x).is_zero()

    def inverse(self, x) -> RationalFunction:
        return self.one / self.convert(x)

    def __repr__(self) -> str:
        return self.tag


class RationalFunction:
    """Normalized quotient ``num/den`` of polynomials.

    Invariants: ``gcd(num, den) == 1`` and the leading coefficient of ``den``
    (graded lex) is 1, so structural equality is mathematical equality.
    """

    __slots__ = ("field", "num_raw", "den_raw")

    def __init__(self, field: FractionField, num, den, _normalized: bool = False, _coprime: bool = False):
        if den.is_zero():
            raise NotInvertibleError("zero denominator")
        self.field = field
        if not _normalized:
            if num.is_zero():
                den = field.poly_ring.ctx.from_dict({(0,) * len(field.names): 1})
            else:
                if not _coprime and not den.is_constant():
                    g = num.gcd(den)
                    if not g.is_constant():
                        num = num / g
                        den = den / g
                lc = den.leading_coefficient()
                if lc != 1:
                    inv = _raw_inverse(lc, field.characteristic)
                    num = num * inv
                    den = den * inv
        self.num_raw = num
        self.den_raw = den

    @property
    def numerator(self) -> MultiPoly:
        return MultiPoly(self.field.poly_ring, self.num_raw)

    @property
    def denominator(self) -> MultiPoly:
        return MultiPoly(self.field.poly_ring, self.den_raw)

    def _coerce(self, other) -> RationalFunction | None:
        if isinstance(other, RationalFunction):
            if other.field is not self.field:
                raise RingMismatchError(f"{self.field.tag} vs {other.field.tag}")
            return other
        if isinstance(other, (MultiPoly, Integral, Fraction, PrimeFieldElement)):
            return self.field.convert(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den_raw == o.den_raw:
            if self.den_raw.is_constant():
                return RationalFunction(self.field, self.num_raw + o.num_raw, self.den_raw, _normalized=True)
            return RationalFunction(self.field, self.num_raw + o.num_raw, self.den_raw)
        return RationalFunction(
            self.field,
            self.num_raw * o.den_raw + o.num_raw * self.den_raw,
            self.den_raw * o.den_raw,
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(self.field, -self.num_raw, self.den_raw, _normalized=True)

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
        if self.den_raw.is_constant() and o.den_raw.is_constant():
            return RationalFunction(self.field, self.num_raw * o.num_raw, self.den_raw * o.den_raw, _normalized=True)
        # cross-cancel before multiplying keeps the gcds small
        g1 = self.num_raw.gcd(o.den_raw)
        g2 = o.num_raw.gcd(self.den_raw)
        n1, d2 = (self.num_raw / g1, o.den_raw / g1) if not g1.is_constant() else (self.num_raw, o.den_raw)
        n2, d1 = (o.num_raw / g2, self.den_raw / g2) if not g2.is_constant() else (o.num_raw, self.den_raw)
        num, den = n1 * n2, d1 * d2
        lc = den.leading_coefficient()
        if lc != 1:
            inv = _raw_inverse(lc, self.field.characteristic)
            num, den = num * inv, den * inv
        return RationalFunction(self.field, num, den, _normalized=True)

    __rmul__ = __mul__

    def inverse(self) -> RationalFunction:
        if self.num_raw.is_zero():
            raise NotInvertibleError("division by zero rational function")
        return RationalFunction(self.field, self.den_raw, self.num_raw, _coprime=True)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.field, self.num_raw**k, self.den_raw**k, _normalized=True)

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalFunction) and other.field is not self.field:
            return False
        try:
            o = self._coerce(other)
        except (TypeError, RingError):
            return False
        if o is None:
            return NotImplemented
        return self.num_raw == o.num_raw and self.den_raw == o.den_raw

    def __hash__(self) -> int:
        return hash((self.field.tag, str(self.num_raw), str(self.den_raw)))

    def is_zero(self) -> bool:
        return self.num_raw.is_zero()

    def __bool__(self) -> bool:
        return not self.num_raw.is_zero()

    def is_polynomial(self) -> bool:
        return self.den_raw.is_constant()

    def degree(self, var: str) -> int:
        """Degree of the numerator minus degree of the denominator in ``var``."""
        return self.numerator.degree(var) - self.denominator.degree(var)

    def involves(self, var: str) -> bool:
        return self.numerator.degree(var) > 0 or self.denominator.degree(var) > 0

    def derivative(self, var: str) -> RationalFunction:
        n, d = self.numerator, self.denominator
        return (n.derivative(var) * d - n * d.derivative(var)) / (d * d)

    def evaluate(self, values: Mapping[str, object]):
        return self.numerator.evaluate(values) / self.denominator.evaluate(values)

    def __str__(self) -> str:
        n = render_poly(self.num_raw, self.field.names, self.field.characteristic)
        if self.den_raw.is_constant():
            return n
        d = render_poly(self.den_raw, self.field.names, self.field.characteristic)
        if len(list(self.num_raw.terms())) > 1:
            n = f"({n})"
        if len(list(self.den_raw.terms())) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self) -> str:
        return f"RationalFunction({self}, {self.field.tag})"


def _raw_inverse(c, characteristic: int):
    if characteristic:
        return pow(int(c), -1, characteristic)
    return 1 / flint.fmpq(c)


# ---------------------------------------------------------------------------
# pi-adic valuation


def _strip(raw, pi_raw) -> tuple[int, object]:
    count = 0
    while True:
        try:
            q = raw / pi_raw
        except _FlintDomainError:
            return count, raw
        raw = q
        count += 1


def pi_adic_valuation(x, pi: MultiPoly) -> int | float:
    """Multiplicity of ``pi`` in ``x`` by trial division; ``math.inf`` for 0.

    ``x`` may be a :class:`MultiPoly` or :class:`RationalFunction` over the
    same indeterminates as ``pi``.  The caller vouches that ``pi`` is prime.
    """
    if pi.is_zero() or pi.is_constant():
        raise ValuationDomainError(f"pi must be a non-constant polynomial, got {pi}")
    if isinstance(x, MultiPoly):
        x = FractionField(x.ring).convert(x)
    if isinstance(x, (Integral, Fraction)):
        return math.inf if x == 0 else 0
    field = x.field
    pi_raw = field.poly_ring.convert(pi).raw
    if x.is_zero():
        return math.inf
    vn, _ = _strip(x.num_raw, pi_raw)
    vd, _ = _strip(x.den_raw, pi_raw)
    return vn - vd


def split_valuation(x: RationalFunction, pi: MultiPoly) -> tuple[int, MultiPoly, MultiPoly]:
    """Return ``(v, a, b)`` with ``x = pi**v * a / b`` and ``pi`` dividing neither."""
    if x.is_zero():
        raise ValuationDomainError("zero has infinite valuation")
    pi_raw = x.field.poly_ring.convert(pi).raw
    vn, n = _strip(x.num_raw, pi_raw)
    vd, d = _strip(x.den_raw, pi_raw)
    ring = x.field.poly_ring
    return vn - vd, MultiPoly(ring, n), MultiPoly(ring, d)
