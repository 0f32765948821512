"""Real and complex evaluation of the discriminant and trinomial series.

Everything here is double precision.  Series terms come from term-ratio
recurrences (no big binomials), partial sums are compensated (``math.fsum``
for single cubics, Neumaier's scheme in the vectorized batch), and
evaluation is refused near the convergence boundary.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Literal

from .forms import GeneralCubic

Series = Literal["discriminant", "trinomial"]

DEFAULT_MARGIN = 1e-6
DEFAULT_TOL = 1e-16
DEFAULT_MAX_TERMS = 10**6
SUSTAIN = 3
STRAGGLERS = 32


class RealRootError(ValueError):
    pass


class RefusalError(RealRootError):
    """The series diverges or sits on the boundary; nothing is summed."""

    def __init__(self, message: str, verdict: ConvergenceVerdict | None = None):
        super().__init__(message)
        self.verdict = verdict


class NonConvergenceError(RealRootError):
    pass


class DomainError(RealRootError):
    pass


class AmbiguityError(RealRootError):
    pass


@dataclass(frozen=True)
class RealDepressedCubic:
    """``t^3 + p t + q`` with finite real ``p`` and ``q``."""

    p: float
    q: float

    def __post_init__(self):
        for name in ("p", "q"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "q", float(self.q))

    @property
    def discriminant(self) -> float:
        return -4 * self.p**3 - 27 * self.q**2

    @property
    def scale(self) -> float:
        """Typical root size, used for relative tolerances."""
        return max(1.0, math.sqrt(abs(self.p)), abs(self.q) ** (1 / 3))

    def __call__(self, t):
        return (t * t + self.p) * t + self.q


@dataclass(frozen=True)
class ConvergenceVerdict:
    series: Series
    verdict: Literal["converges", "diverges", "boundary"]
    ratio: float
    margin: float

    @property
    def converges(self) -> bool:
        return self.verdict == "converges"


@dataclass
class RootReport:
    value: complex | float | None
    method: str
    terms_used: int = 0
    converged: bool = True
    classification: str | None = None
    sign: str | None = None
    residual: float | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def convergence_check(f: RealDepressedCubic, series: Series, margin: float = DEFAULT_MARGIN) -> ConvergenceVerdict:
    """Ratio to the radius: ``|Delta|/4|p|^3`` or ``27q^2/4|p|^3``."""
    if f.p == 0:
        raise DomainError("p = 0: the series are undefined")
    denom = 4 * abs(f.p) ** 3
    if series == "discriminant":
        ratio = abs(f.discriminant) / denom
    elif series == "trinomial":
        ratio = 27 * f.q**2 / denom
    else:
        raise ValueError(f"unknown series {series!r}")
    if abs(ratio - 1) <= margin:
        verdict = "boundary"
    elif ratio < 1:
        verdict = "converges"
    else:
        verdict = "diverges"
    return ConvergenceVerdict(series, verdict, ratio, margin)


def _sum_by_ratio(z, ratio, tol: float, max_terms: int):
    """Sum ``sum t_n`` with ``t_0 = 1`` and ``t_{n+1} = t_n * z * ratio(n)``.

    Stops at the first term after which the geometric tail bound
    ``|t| rho/(1 - rho)`` (``rho`` the current term ratio) has stayed below
    ``tol * |S|`` for three consecutive terms.  Terms are generated in
    blocks with numpy and summed with ``math.fsum``, so the result is the
    correctly rounded sum of the computed terms.  Returns ``(sum, terms)``.
    """
    import numpy as np

    is_complex = isinstance(z, complex)
    if z == 0:
        return (complex(1) if is_complex else 1.0), 1
    blocks = [np.ones(1, dtype=complex if is_complex else float)]
    term = blocks[0][0]
    running = term
    quiet = 0
    n0 = 0
    size = 64
    while n0 < max_terms - 1:
        size = min(size, max_terms - 1 - n0)
        steps = z * ratio(np.arange(n0, n0 + size))
        terms = term * np.cumprod(steps)
        prev = np.concatenate(([term], terms[:-1]))
        with np.errstate(divide="ignore", invalid="ignore"):
            rho = np.where(prev != 0, np.abs(terms) / np.abs(prev), 0.0)
            tail = np.where(rho < 1, np.abs(terms) * rho / (1 - rho), np.inf)
        partial = running + np.cumsum(terms)
        hit = (tail <= tol * np.abs(partial)) | (terms == 0)
        # length of the run of hits ending at each position, carried across blocks
        idx = np.arange(size)
        last_miss = np.maximum.accumulate(np.where(~hit, idx, -1))
        runs = np.where(last_miss >= 0, idx - last_miss, idx + 1 + quiet)
        quiet = int(runs[-1])
        stop = np.flatnonzero(runs >= SUSTAIN)
        if stop.size:
            k = int(stop[0])
            blocks.append(terms[: k + 1])
            return _fsum(np.concatenate(blocks), is_complex), n0 + k + 2
        blocks.append(terms)
        term = terms[-1]
        running = partial[-1]
        n0 += size
        size *= 2
    raise NonConvergenceError(f"no convergence within {max_terms} terms (z = {z})")


def _fsum(terms, is_complex: bool):
    if is_complex:
        return complex(math.fsum(terms.real), math.fsum(terms.imag))
    return math.fsum(terms)


def _binom3_ratio(n):
    """``C(3n+3, n+1) / C(3n, n)``; works on ints and integer arrays."""
    return 3 * (3 * n + 1) * (3 * n + 2) / (2 * (n + 1) * (2 * n + 1))


def _fuss_catalan_ratio(k: int):
    """``A_{m+1}(k,1) / A_m(k,1)``."""

    def ratio(m):
        num = 1.0
        for j in range(1, k + 1):
            num = num * (k * m + j)
        den = 1.0 * (m + 1)
        for j in range(2, k + 1):
            den = den * ((k - 1) * m + j)
        return num / den

    return ratio


def _sign(x: float, zero_tol: float) -> str:
    if abs(x) <= zero_tol:
        return "zero"
    return "positive" if x > 0 else "negative"


def discriminant_argument(p, q):
    """``-Delta / (27 p^3)``, exact for Fractions."""
    return -(-4 * p**3 - 27 * q**2) / (27 * p**3)


def discriminant_partial_sums(p, q, n_terms: int) -> list:
    """Partial sums of ``sum C(3n,n) z^n`` with ``z = -Delta/27p^3``.

    Exact for Fraction input, which makes the scaling invariance under
    ``f(mt)/m^3`` a termwise identity.
    """
    if isinstance(p, int):
        p = Fraction(p)
    z = discriminant_argument(p, q)
    out = []
    term = z**0
    total = term * 0
    for n in range(n_terms):
        total = total + term
        out.append(total)
        term = term * z * (Fraction(3 * (3 * n + 1) * (3 * n + 2), 2 * (n + 1) * (2 * n + 1)) if isinstance(z, Fraction) else _binom3_ratio(n))
    return out


def discriminant_root(
    f: RealDepressedCubic,
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
    margin: float = DEFAULT_MARGIN,
) -> RootReport:
    """``(3q/p) * lambda`` with ``lambda = sum C(3n,n) (-Delta/27p^3)^n``."""
    verdict = convergence_check(f, "discriminant", margin)
    if not verdict.converges:
        raise RefusalError(f"discriminant series {verdict.verdict} (ratio {verdict.ratio:.17g})", verdict)
    z = discriminant_argument(f.p, f.q)
    lam, used = _sum_by_ratio(z, _binom3_ratio, tol, max_terms)
    alpha = 3 * f.q / f.p * lam
    return RootReport(
        value=alpha,
        method="discriminant_series",
        terms_used=used,
        sign=_sign(alpha, 1e-12 * f.scale),
        residual=abs(f(alpha)),
    )


def trinomial_root(
    a,
    b,
    c,
    n: int = 3,
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
    margin: float = DEFAULT_MARGIN,
) -> RootReport:
    """Root ``a lambda / b`` of ``a - b t + c t^n`` with ``lambda = B_n(a^(n-1) c / b^n)``.

    For ``t^3 + p t + q`` use ``(a, b, c, n) = (q, -p, 1, 3)``.
    """
    if n < 2:
        raise DomainError("n must be at least 2")
    if b == 0:
        raise DomainError("b = 0: the roots are n-th roots, not a series")
    z = a ** (n - 1) * c / b**n
    radius = (n - 1) ** (n - 1) / n**n
    ratio = abs(z) / radius
    verdict = ConvergenceVerdict(
        "trinomial",
        "boundary" if abs(ratio - 1) <= margin else ("converges" if ratio < 1 else "diverges"),
        ratio,
        margin,
    )
    if not verdict.converges:
        raise RefusalError(f"trinomial series {verdict.verdict} (ratio {ratio:.17g})", verdict)
    lam, used = _sum_by_ratio(z, _fuss_catalan_ratio(n), tol, max_terms)
    alpha = a * lam / b
    residual = abs(a - b * alpha + c * alpha**n)
    scale = max(1.0, abs(a / b)) if a else 1.0
    sign = None if isinstance(alpha, complex) else _sign(alpha, 1e-12 * scale)
    return RootReport(value=alpha, method="trinomial_series", terms_used=used, sign=sign, residual=residual)


def cubic_trinomial_root(f: RealDepressedCubic, **kw) -> RootReport:
    if f.p == 0:
        raise DomainError("p = 0: the trinomial series needs b = -p != 0")
    rep = trinomial_root(f.q, -f.p, 1.0, 3, **kw)
    rep.sign = _sign(rep.value, 1e-12 * f.scale)
    rep.residual = abs(f(rep.value))
    return rep


def trig_roots(f: RealDepressedCubic) -> list[RootReport]:
    """``t_k = 2 sqrt(-p/3) cos(arccos(3q/(2p) sqrt(-3/p))/3 - 2 pi k/3)``."""
    if f.p >= 0:
        raise DomainError("trigonometric roots need p < 0")
    arg = 3 * f.q / (2 * f.p) * math.sqrt(-3 / f.p)
    if abs(arg) > 1 + 1e-12:
        raise DomainError(f"|3q/(2p) sqrt(-3/p)| = {abs(arg)} > 1: only one real root")
    theta = math.acos(max(-1.0, min(1.0, arg))) / 3
    amp = 2 * math.sqrt(-f.p / 3)
    out = []
    for k in range(3):
        t = amp * math.cos(theta - 2 * math.pi * k / 3)
        out.append(
            RootReport(value=t, method=f"trig_{k}", terms_used=0, sign=_sign(t, 1e-12 * f.scale), residual=abs(f(t)))
        )
    return out


# ---------------------------------------------------------------------------
# independent oracle


def _cbrt(z: complex) -> complex:
    if z == 0:
        return 0j
    if z.imag == 0 and z.real > 0:
        return complex(z.real ** (1 / 3))
    if z.imag == 0 and z.real < 0:
        return complex(-((-z.real) ** (1 / 3)))
    return cmath.exp(cmath.log(z) / 3)


def _polish(coeffs: tuple, r: complex, steps: int = 8) -> complex:
    c1, c2, c3 = coeffs

    def fx(t):
        return ((t + c1) * t + c2) * t + c3

    best, fbest = r, abs(fx(r))
    for _ in range(steps):
        d = (3 * best + 2 * c1) * best + c2
        if d == 0 or fbest == 0:
            break
        cand = best - fx(best) / d
        fc = abs(fx(cand))
        if fc >= fbest:
            break
        best, fbest = cand, fc
    return best


def oracle_roots(f) -> list[complex]:
    """All three roots of a monic cubic, by Cardano with Newton polishing.

    Accepts a :class:`RealDepressedCubic`, a :class:`GeneralCubic` with
    real or complex coefficients, or a coefficient triple ``(c1, c2, c3)``.
    Sorted by magnitude, then by argument.
    """
    if isinstance(f, RealDepressedCubic):
        c1, c2, c3 = 0.0, f.p, f.q
    elif isinstance(f, GeneralCubic):
        c1, c2, c3 = f.c1, f.c2, f.c3
    else:
        c1, c2, c3 = f
    real_input = all(not isinstance(c, complex) or c.imag == 0 for c in (c1, c2, c3))
    c1, c2, c3 = complex(c1), complex(c2), complex(c3)
    shift = -c1 / 3
    p = c2 - c1 * c1 / 3
    q = 2 * c1**3 / 27 - c1 * c2 / 3 + c3
    if p == 0 and q == 0:
        roots = [shift] * 3
    else:
        s = cmath.sqrt((q / 2) ** 2 + (p / 3) ** 3)
        w = -q / 2 + s if abs(-q / 2 + s) >= abs(-q / 2 - s) else -q / 2 - s
        u = _cbrt(w)
        omega = complex(-0.5, math.sqrt(3) / 2)
        roots = []
        for k in range(3):
            uk = u * omega**k
            vk = -p / (3 * uk) if uk != 0 else 0j
            roots.append(uk + vk + shift)
    roots = [_polish((c1, c2, c3), r) for r in roots]
    if real_input:
        disc = (c1.real**2 * c2.real**2 - 4 * c2.real**3 - 4 * c1.real**3 * c3.real
                + 18 * c1.real * c2.real * c3.real - 27 * c3.real**2)
        if disc >= 0:
            roots = [complex(r.real, 0.0) for r in roots]
        else:
            # one real root and a conjugate pair
            roots.sort(key=lambda r: abs(r.imag))
            real = complex(roots[0].real, 0.0)
            pair = roots[1] if roots[1].imag > 0 else roots[2]
            roots = [real, pair, pair.conjugate()]
    return sorted(roots, key=lambda r: (round(abs(r), 12), cmath.phase(r)))


# ---------------------------------------------------------------------------
# classification


@dataclass
class Classification:
    cubic: RealDepressedCubic
    roots: list[RootReport]
    discriminant: RootReport | None
    trinomial: RootReport | None
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _nearest(value, roots: list[complex]) -> int:
    return min(range(len(roots)), key=lambda i: abs(roots[i] - value))


def classify_roots(
    f: RealDepressedCubic,
    tol: float = 1e-9,
    rtol: float = 1e-8,
    margin: float = DEFAULT_MARGIN,
) -> Classification:
    """Compare the convergent series roots with the oracle roots.

    Checks: the discriminant root is the longest root with the sign of -q;
    the trinomial root is the shortest; for Delta > 0 the trinomial and
    middle roots have the sign of q; for Delta < 0 the real root has the sign
    of -q.
    """
    if f.p == 0 or f.q == 0:
        raise DomainError("classification needs p != 0 and q != 0")
    delta = f.discriminant
    if delta == 0:
        raise DomainError("classification needs Delta != 0")
    scale = f.scale
    zero_tol = 1e-12 * scale
    roots = oracle_roots(f)
    mags = [abs(r) for r in roots]
    reports = [
        RootReport(value=r if r.imag else r.real, method="oracle", residual=abs(f(r)),
                   sign=None if r.imag else _sign(r.real, zero_tol))
        for r in roots
    ]

    def tie(a, b):
        return abs(a - b) <= tol * max(a, b, zero_tol)

    rank: dict[int, str] = {}
    if delta > 0:
        if tie(mags[0], mags[1]) or tie(mags[1], mags[2]):
            raise AmbiguityError(f"root magnitudes {mags} tie within {tol}")
        rank = {0: "shortest", 1: "middle", 2: "longest"}
        for i, lab in rank.items():
            reports[i].classification = lab
    else:
        ri = next(i for i, r in enumerate(roots) if r.imag == 0)
        pair = [i for i in range(3) if i != ri]
        if tie(mags[ri], mags[pair[0]]):
            raise AmbiguityError(f"real root ties the complex pair in magnitude ({mags})")
        reports[ri].classification = "unique_real"
        for i in pair:
            reports[i].classification = "not_applicable"
        rank = {ri: "longest" if mags[ri] > mags[pair[0]] else "shortest"}

    checks: dict[str, bool] = {}
    sign_q = "positive" if f.q > 0 else "negative"
    sign_mq = "negative" if f.q > 0 else "positive"

    def matched(rep: RootReport) -> tuple[int, bool]:
        i = _nearest(rep.value, roots)
        return i, abs(roots[i] - rep.value) <= rtol * scale

    disc_rep = tri_rep = None
    if convergence_check(f, "discriminant", margin).converges:
        disc_rep = discriminant_root(f, margin=margin)
        i, close = matched(disc_rep)
        longest = max(range(3), key=lambda j: mags[j])
        disc_rep.classification = rank.get(i, "not_applicable")
        checks["discriminant_matches_oracle"] = close
        checks["discriminant_is_longest"] = close and i == longest and rank.get(i) == "longest"
        checks["discriminant_sign_is_sign_of_-q"] = disc_rep.sign == sign_mq
    if convergence_check(f, "trinomial", margin).converges:
        tri_rep = cubic_trinomial_root(f)
        i, close = matched(tri_rep)
        shortest = min(range(3), key=lambda j: mags[j])
        tri_rep.classification = rank.get(i, "not_applicable")
        checks["trinomial_matches_oracle"] = close
        checks["trinomial_is_shortest"] = close and i == shortest and rank.get(i) == "shortest"
        if delta > 0:
            checks["trinomial_sign_is_sign_of_q"] = tri_rep.sign == sign_q
    if delta > 0:
        checks["middle_sign_is_sign_of_q"] = reports[1].sign == sign_q
        checks["both_series_converge"] = disc_rep is not None and tri_rep is not None
    else:
        ri = next(i for i, r in enumerate(roots) if r.imag == 0)
        checks["real_root_sign_is_sign_of_-q"] = reports[ri].sign == sign_mq
    return Classification(f, reports, disc_rep, tri_rep, checks)


# ---------------------------------------------------------------------------


def general_cubic_root(
    f: GeneralCubic,
    method: str = "discriminant",
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
    margin: float = DEFAULT_MARGIN,
) -> RootReport:
    """Depress, evaluate the chosen series, shift back by ``-c1/3``."""
    c1, c2, c3 = float(f.c1), float(f.c2), float(f.c3)
    g = RealDepressedCubic(c2 - c1 * c1 / 3, 2 * c1**3 / 27 - c1 * c2 / 3 + c3)
    if method == "discriminant":
        rep = discriminant_root(g, tol, max_terms, margin)
    elif method == "trinomial":
        rep = cubic_trinomial_root(g, tol=tol, max_terms=max_terms, margin=margin)
    else:
        raise ValueError(f"unknown method {method!r}")
    value = rep.value - c1 / 3
    scale = max(1.0, abs(c1), abs(c2) ** 0.5, abs(c3) ** (1 / 3))
    return RootReport(
        value=value,
        method=rep.method,
        terms_used=rep.terms_used,
        sign=_sign(value, 1e-12 * scale),
        residual=abs(((value + c1) * value + c2) * value + c3),
    )


def discriminant_root_batch(
    c1,
    c2,
    c3,
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
    margin: float = DEFAULT_MARGIN,
):
    """Vectorized :func:`general_cubic_root` with the discriminant method.

    Returns ``(roots, converged)``; ``roots`` is NaN where the series is
    refused (ratio within ``margin`` of 1 or beyond) or runs out of terms.
    Same stopping rule as the scalar path, applied per entry.
    """
    import numpy as np

    c1, c2, c3 = (np.asarray(x, dtype=float) for x in np.broadcast_arrays(c1, c2, c3))
    p = c2 - c1 * c1 / 3
    q = 2 * c1**3 / 27 - c1 * c2 / 3 + c3
    with np.errstate(divide="ignore", invalid="ignore"):
        z = (4 * p**3 + 27 * q**2) / (27 * p**3)
        ratio = np.abs(-4 * p**3 - 27 * q**2) / (4 * np.abs(p) ** 3)
    ok = (p != 0) & (ratio < 1 - margin)
    lam = np.full(p.shape, np.nan)
    idx = np.flatnonzero(ok)
    zz = z[idx]
    s = np.ones_like(zz)
    comp = np.zeros_like(zz)
    term = np.ones_like(zz)
    quiet = np.zeros(zz.shape, dtype=np.int64)
    done = zz == 0
    lam[idx[done]] = 1.0
    active = ~done
    for n in range(max_terms - 1):
        a = np.flatnonzero(active)
        if len(a) <= STRAGGLERS:
            # a handful of slow entries: numpy overhead per step would dominate
            for i in a:
                try:
                    lam[idx[i]] = _sum_by_ratio(float(zz[i]), _binom3_ratio, tol, max_terms)[0]
                except NonConvergenceError:
                    pass
            break
        nxt = term[a] * zz[a] * _binom3_ratio(n)
        t = s[a] + nxt
        big = np.abs(s[a]) >= np.abs(nxt)
        comp[a] += np.where(big, (s[a] - t) + nxt, (nxt - t) + s[a])
        s[a] = t
        with np.errstate(divide="ignore", invalid="ignore"):
            rho = np.where(term[a] != 0, np.abs(nxt) / np.abs(term[a]), 0.0)
            tail = np.where(rho < 1, np.abs(nxt) * rho / (1 - rho), np.inf)
        term[a] = nxt
        hit = (tail <= tol * np.abs(s[a] + comp[a])) | (nxt == 0)
        quiet[a] = np.where(hit, quiet[a] + 1, 0)
        fin = a[quiet[a] >= SUSTAIN]
        lam[idx[fin]] = s[fin] + comp[fin]
        active[fin] = False
    with np.errstate(divide="ignore", invalid="ignore"):
        roots = -c1 / 3 + 3 * q / p * lam
    return roots, ~np.isnan(lam)
