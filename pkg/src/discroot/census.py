"""Census of real depressed cubics by convergence region, and of quartics.

Only ``q > 0`` is sampled: ``t^3 + pt + q`` and ``t^3 + pt - q`` have the
same convergence behaviour.  The three curves bounding the regions are

    q = c |p|^(3/2)          (Delta = 0 for p < 0, trinomial radius for p > 0)
    q = sqrt(2) c |p|^(3/2)  (discriminant-series radius for p < 0)

with ``c = 2/sqrt(27)``.  Monte Carlo runs draw from ``SeedSequence(seed)``:
the sample is cut into shards of ``SHARD`` points and shard ``i`` uses the
``i``-th child of ``SeedSequence(seed).spawn(n_shards)``, so results do not
depend on how shards are scheduled.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from enum import Enum
from typing import Literal

import numpy as np

from .real import discriminant_root_batch

C = 2 / math.sqrt(27)
SQRT2 = math.sqrt(2)
SHARD = 100_000
BOUNDARY_RTOL = 1e-9


class Region(str, Enum):
    DISC_POSITIVE_BOTH = "disc_positive_both_converge"
    DISC_NEGATIVE_TRINOMIAL = "disc_negative_trinomial_converges"
    DISC_NEGATIVE_DISC = "disc_negative_disc_converges"
    NEITHER = "neither"


LABELS = list(Region)


class BoundaryError(ValueError):
    pass


@dataclass(frozen=True)
class CensusConfig:
    height_mode: Literal["max_height", "naive_height"] = "naive_height"
    h: float = 10.0
    samples: int = 1_000_000
    rng_seed: int = 0

    def __post_init__(self):
        if self.height_mode not in ("max_height", "naive_height"):
            raise ValueError(f"unknown height mode {self.height_mode!r}")
        if not self.h > 0:
            raise ValueError("h must be positive")
        if self.samples < 1:
            raise ValueError("samples must be at least 1")

    @property
    def P(self) -> float:
        if self.height_mode == "naive_height":
            return self.h**2 / 4 ** (1 / 3)
        return float(self.h)

    @property
    def Q(self) -> float:
        if self.height_mode == "naive_height":
            return self.h**3 / math.sqrt(27)
        return float(self.h)


def boundary_values(p: float) -> dict[str, float]:
    """Heights of the boundary curves above ``p``."""
    a = abs(p) ** 1.5
    if p < 0:
        return {"disc_zero": C * a, "disc_radius": SQRT2 * C * a}
    return {"trinomial_radius": C * a}


def classify_point(p: float, q: float, rtol: float = BOUNDARY_RTOL) -> Region:
    if p == 0 or q <= 0:
        raise ValueError("classify_point needs p != 0 and q > 0")
    for name, b in boundary_values(p).items():
        if abs(q - b) <= rtol * b:
            raise BoundaryError(f"({p}, {q}) lies on the {name} curve")
    return _label(p, q)


def _label(p: float, q: float) -> Region:
    a = C * abs(p) ** 1.5
    if p < 0:
        if q < a:
            return Region.DISC_POSITIVE_BOTH
        if q < SQRT2 * a:
            return Region.DISC_NEGATIVE_DISC
        return Region.NEITHER
    return Region.DISC_NEGATIVE_TRINOMIAL if q < a else Region.NEITHER


def _labels_vec(p: np.ndarray, q: np.ndarray, rtol: float) -> tuple[np.ndarray, np.ndarray]:
    """Integer codes (index into LABELS) and a mask of boundary points."""
    a = C * np.abs(p) ** 1.5
    neg = p < 0
    code = np.full(p.shape, 3, dtype=np.int8)
    code[neg & (q < a)] = 0
    code[neg & (q >= a) & (q < SQRT2 * a)] = 2
    code[~neg & (q < a)] = 1
    near = np.abs(q - a) <= rtol * a
    near |= neg & (np.abs(q - SQRT2 * a) <= rtol * SQRT2 * a)
    near |= p == 0
    return code, near


# ---------------------------------------------------------------------------
# analytic areas


def _area_under(k: float, P: float, Q: float) -> float:
    """``int_0^P min(k x^(3/2), Q) dx``."""
    x_star = (Q / k) ** (2 / 3)
    if x_star >= P:
        return 0.4 * k * P**2.5
    return 0.4 * k * x_star**2.5 + Q * (P - x_star)


def analytic_fractions(cfg: CensusConfig, clipped: bool = True) -> dict[str, float]:
    """Region areas over the rectangle ``[-P, P] x [0, Q]``, as fractions.

    With ``clipped=False`` the curves are integrated over ``|p| <= P``
    without capping at ``Q``; that is the convention under which the naive
    height gives ``(1/5, 1/5, (sqrt 2 - 1)/5)``.
    """
    P, Q = cfg.P, cfg.Q
    top = Q if clipped else math.inf
    lower = _area_under(C, P, top)
    upper = _area_under(SQRT2 * C, P, top)
    total = 2 * P * Q
    out = {
        Region.DISC_POSITIVE_BOTH.value: lower / total,
        Region.DISC_NEGATIVE_TRINOMIAL.value: lower / total,
        Region.DISC_NEGATIVE_DISC.value: (upper - lower) / total,
    }
    if clipped:
        out[Region.NEITHER.value] = 1 - sum(out.values())
    return out


NAIVE_EXACT = {
    Region.DISC_POSITIVE_BOTH.value: 0.2,
    Region.DISC_NEGATIVE_TRINOMIAL.value: 0.2,
    Region.DISC_NEGATIVE_DISC.value: 0.2 * (SQRT2 - 1),
}
NAIVE_CLIPPED_DISC = 0.3 * (1 - 2 ** (-1 / 3))


# ---------------------------------------------------------------------------
# Monte Carlo


def _shard_sizes(n: int) -> list[int]:
    full, rest = divmod(n, SHARD)
    return [SHARD] * full + ([rest] if rest else [])


def _count(cfg: CensusConfig, q_top: float) -> tuple[np.ndarray, int, np.ndarray]:
    """Label counts for uniform points in ``[-P, P] x [0, q_top]``."""
    sizes = _shard_sizes(cfg.samples)
    seeds = np.random.SeedSequence(cfg.rng_seed).spawn(len(sizes))
    counts = np.zeros(4, dtype=np.int64)
    in_rect = np.zeros(4, dtype=np.int64)
    excluded = 0
    for size, ss in zip(sizes, seeds):
        rng = np.random.Generator(np.random.PCG64(ss))
        p = rng.uniform(-cfg.P, cfg.P, size)
        q = rng.uniform(0.0, q_top, size)
        code, near = _labels_vec(p, q, BOUNDARY_RTOL)
        excluded += int(near.sum())
        keep = ~near
        counts += np.bincount(code[keep], minlength=4)
        in_rect += np.bincount(code[keep & (q <= cfg.Q)], minlength=4)
    return counts, excluded, in_rect


def region_areas(cfg: CensusConfig) -> dict:
    """Analytic and Monte Carlo region fractions with standard errors.

    The sampling box is ``[-P, P] x [0, sqrt(2) Q]``, tall enough to contain
    the whole naive-height discriminant-convergence region; counts are
    rescaled to the ``[-P, P] x [0, Q]`` rectangle (``unclipped``), and the
    points with ``q <= Q`` give the in-rectangle fractions (``clipped``).
    """
    q_top = SQRT2 * cfg.Q
    counts, excluded, in_rect = _count(cfg, q_top)
    n = int(counts.sum())
    inflate = q_top / cfg.Q
    clipped = analytic_fractions(cfg, clipped=True)
    unclipped = analytic_fractions(cfg, clipped=False)
    regions = {}
    for i, lab in enumerate(LABELS):
        phat = counts[i] / n
        # points in the tall box with q <= Q are uniform over the rectangle
        n_rect = int(in_rect.sum())
        c_hat = in_rect[i] / n_rect
        entry = {
            "analytic_clipped": clipped[lab.value],
            "mc_clipped": c_hat,
            "stderr_clipped": math.sqrt(c_hat * (1 - c_hat) / n_rect),
        }
        if lab is not Region.NEITHER:
            entry.update(
                analytic_unclipped=unclipped[lab.value],
                mc_unclipped=inflate * phat,
                stderr_unclipped=inflate * math.sqrt(phat * (1 - phat) / n),
            )
        regions[lab.value] = entry
    return {
        "height_mode": cfg.height_mode,
        "h": cfg.h,
        "P": cfg.P,
        "Q": cfg.Q,
        "samples": cfg.samples,
        "seed": cfg.rng_seed,
        "shard_size": SHARD,
        "excluded_boundary": excluded,
        "regions": regions,
        "trinomial_converges_clipped": clipped[Region.DISC_POSITIVE_BOTH.value] + clipped[Region.DISC_NEGATIVE_TRINOMIAL.value],
        "any_series_converges_unclipped": sum(unclipped.values()),
    }


def max_height_trend(hs=(10.0, 1e2, 1e3)) -> list[dict]:
    """Fraction of the max-height rectangle where the trinomial series converges."""
    out = []
    for h in hs:
        fr = analytic_fractions(CensusConfig("max_height", h, 1), clipped=True)
        out.append({"h": h, "trinomial_converges": fr[Region.DISC_POSITIVE_BOTH.value] + fr[Region.DISC_NEGATIVE_TRINOMIAL.value]})
    return out


# ---------------------------------------------------------------------------
# quilt figure data


def quilt_data(cfg: CensusConfig, grid: int) -> tuple[list[tuple[float, float, str]], list[tuple[str, float, float]]]:
    """Cell-centre labels on a ``grid x grid`` mesh and sampled boundary curves."""
    if grid < 2:
        raise ValueError("grid must be at least 2")
    P, Q = cfg.P, cfg.Q
    rows = []
    for j in range(grid):
        q = (j + 0.5) * Q / grid
        for i in range(grid):
            p = (2 * i + 1 - grid) * P / grid
            label = Region.NEITHER if p == 0 else _label(p, q)
            rows.append((p, q, label.value))
    curves = []
    for i in range(grid + 1):
        p = (i - grid) * P / grid
        if p < 0:
            b = boundary_values(p)
            curves.append(("disc_zero", p, b["disc_zero"]))
            curves.append(("disc_radius", p, b["disc_radius"]))
    for i in range(grid + 1):
        p = i * P / grid
        curves.append(("trinomial_radius", p, boundary_values(p)["trinomial_radius"]))
    curves.sort(key=lambda r: (r[0], r[1]))
    return rows, curves


def _fmt(x: float) -> str:
    return format(x, ".17g")


def quilt_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["p", "q", "label"])
    for p, q, lab in rows:
        w.writerow([_fmt(p), _fmt(q), lab])
    return buf.getvalue()


def curves_csv(curves) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["curve_id", "p", "q"])
    for cid, p, q in curves:
        w.writerow([cid, _fmt(p), _fmt(q)])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# quartic census


def resolvent_discriminant_root(c, d, e):
    """Discriminant roots of ``t^3 + 2c t^2 + (c^2 - 4e) t - d^2`` (arrays in,
    arrays out); NaN where the series is refused or does not converge."""
    c, d, e = (np.asarray(x, dtype=float) for x in (c, d, e))
    roots, _ = discriminant_root_batch(2 * c, c * c - 4 * e, -d * d)
    return roots


def quartic_census_sample(cfg: CensusConfig, scales=(1, 10, 100)) -> dict:
    """Share of quartics whose resolvent has a convergent, positive discriminant root.

    ``(c, d, e)`` are uniform in ``[-h, h]^3`` (``d = 0`` is excluded); each
    sample is tested as ``g(mt)/m^4`` for every scale ``m``.
    """
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(cfg.rng_seed)))
    pts = rng.uniform(-cfg.h, cfg.h, size=(cfg.samples, 3))
    pts = pts[pts[:, 1] != 0]
    out = {"h": cfg.h, "samples": int(len(pts)), "seed": cfg.rng_seed, "by_scale": []}
    c, d, e = pts.T
    for m in scales:
        roots = resolvent_discriminant_root(c / m**2, d / m**3, e / m**4)
        good = int(np.count_nonzero(roots > 0))
        out["by_scale"].append({"m": m, "fraction": good / len(pts)})
    return out
