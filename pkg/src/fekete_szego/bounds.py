"""
Closed-form Fekete-Szego bounds for M(alpha), its k-th root transforms and the
bi-univalent class M_Sigma(alpha).

Every piecewise evaluator returns a :class:`PiecewiseBound` carrying the value,
the active region and the switching thresholds. ``mu`` is real throughout; the
case split orders ``mu`` on the line, so complex ``mu`` is rejected.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass
from typing import Iterable

from .mclass import SectorAlpha

__all__ = [
    "Region",
    "PiecewiseBound",
    "ma_minda_bound",
    "transform_thresholds",
    "mu_prime",
    "root_transform_fs_bound",
    "fs_bound",
    "right_angle_fs_bound",
    "starlike_half_fs_bound",
    "mclass_coeff_bounds",
    "hbar",
    "sigma_a2_bound",
    "sigma_a2_effective_bound",
    "sigma_fs_bound",
    "sigma_half_fs_bound",
    "sigma_a3_bound",
    "BoundRow",
    "bound_table_csv",
]

BOUND_CSV_HEADER = ["alpha", "k", "mu", "bound", "region", "delta1", "delta2"]


class Region(str, enum.Enum):
    BELOW_LOWER = "BelowLower"
    MIDDLE = "Middle"
    ABOVE_UPPER = "AboveUpper"


@dataclass(frozen=True)
class PiecewiseBound:
    value: float
    region: Region
    thresholds: tuple[float, float]

    def __float__(self) -> float:
        return self.value


def _real(mu) -> float:
    if isinstance(mu, complex):
        if mu.imag != 0:
            raise ValueError("piecewise bounds are defined for real mu only")
        mu = mu.real
    return float(mu)


def _region(mu: float, lo: float, hi: float) -> Region:
    if mu < lo:
        return Region.BELOW_LOWER
    if mu > hi:
        return Region.ABOVE_UPPER
    return Region.MIDDLE


def ma_minda_bound(mu) -> float:
    """Sharp bound on ``|p2 - mu p1^2|`` over the Caratheodory class."""
    mu = _real(mu)
    if mu <= 0:
        return 2.0 - 4.0 * mu
    if mu <= 1:
        return 2.0
    return 4.0 * mu - 2.0


# -- M(alpha) and root transforms -------------------------------------------------

def transform_thresholds(s: SectorAlpha, k: int) -> tuple[float, float]:
    c = s.cos
    return (1.0 - k * (1.0 + c)) / 2.0, (1.0 + k * (1.0 - c)) / 2.0


def mu_prime(s: SectorAlpha, k: int, mu) -> float:
    """Effective Caratheodory parameter: ``b_{2k+1} - mu b_{k+1}^2 = (p2 - mu' p1^2)/(4k)``."""
    return 0.5 * (s.cos + (2.0 * _real(mu) + k - 1.0) / k)


def root_transform_fs_bound(s: SectorAlpha, k: int, mu) -> PiecewiseBound:
    """Sharp bound on ``|b_{2k+1} - mu b_{k+1}^2|`` for the k-th root transform of f in M(alpha)."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    mu = _real(mu)
    d1, d2 = transform_thresholds(s, k)
    t = (2.0 * mu + k - 1.0) / k
    region = _region(mu, d1, d2)
    if region is Region.BELOW_LOWER:
        value = (1.0 - s.cos - t) / (2.0 * k)
    elif region is Region.ABOVE_UPPER:
        value = (s.cos + t - 1.0) / (2.0 * k)
    else:
        value = 1.0 / (2.0 * k)
    return PiecewiseBound(value, region, (d1, d2))


def fs_bound(s: SectorAlpha, mu) -> PiecewiseBound:
    """Sharp bound on ``|a3 - mu a2^2|`` over M(alpha)."""
    mu = _real(mu)
    lo, hi = -0.5 * s.cos, 1.0 - 0.5 * s.cos
    region = _region(mu, lo, hi)
    if region is Region.BELOW_LOWER:
        value = 0.5 * (1.0 - s.cos) - mu
    elif region is Region.ABOVE_UPPER:
        value = 0.5 * (s.cos - 1.0) + mu
    else:
        value = 0.5
    return PiecewiseBound(value, region, (lo, hi))


def right_angle_fs_bound(mu) -> PiecewiseBound:
    """``alpha = pi/2`` case: ``|Re{z f'/f} - 1| < pi/4``."""
    mu = _real(mu)
    region = _region(mu, 0.0, 1.0)
    value = {Region.BELOW_LOWER: 0.5 - mu, Region.MIDDLE: 0.5,
             Region.ABOVE_UPPER: mu - 0.5}[region]
    return PiecewiseBound(value, region, (0.0, 1.0))


def starlike_half_fs_bound(mu) -> PiecewiseBound:
    """Limit ``alpha -> pi``: starlike functions of order 1/2."""
    mu = _real(mu)
    region = _region(mu, 0.5, 1.5)
    value = {Region.BELOW_LOWER: 1.0 - mu, Region.MIDDLE: 0.5,
             Region.ABOVE_UPPER: mu - 1.0}[region]
    return PiecewiseBound(value, region, (0.5, 1.5))


def mclass_coeff_bounds(s: SectorAlpha) -> tuple[float, float]:
    """Sharp ``(|a2|, |a3|)`` bounds over M(alpha)."""
    return 1.0, 0.5 * (1.0 - s.cos)


# -- M_Sigma(alpha) -------------------------------------------------------------

def hbar(s: SectorAlpha, mu) -> float:
    return (1.0 - _real(mu)) / (2.0 * (2.0 + s.cos))


def sigma_a2_bound(s: SectorAlpha) -> float:
    """``sqrt(2 / (2 + cos alpha))`` as stated for M_Sigma(alpha).

    This exceeds 1 on ``(pi/2, pi)``; see :func:`sigma_a2_effective_bound`.
    """
    return math.sqrt(2.0 / (2.0 + s.cos))


def sigma_a2_effective_bound(s: SectorAlpha) -> float:
    # |a2| = |k1|/2 <= 1 already, independently of alpha.
    return min(1.0, sigma_a2_bound(s))


def sigma_fs_bound(s: SectorAlpha, mu) -> PiecewiseBound:
    """Bound on ``|a3 - mu a2^2|`` over M_Sigma(alpha), real ``mu``.

    Computed from ``|1 - mu|`` against ``(1 + cos(alpha)/2) / 2`` and, as a
    check, from ``4 |hbar(mu)|`` against 1/8; the two must agree.
    """
    mu = _real(mu)
    half = 1.0 + 0.5 * s.cos
    thr = 0.5 * half
    d = abs(1.0 - mu)
    value = 0.5 if d <= thr else d / half
    h = abs(hbar(s, mu))
    alt = 0.5 if h <= 0.125 else 4.0 * h
    if abs(value - alt) > 1e-12 * max(1.0, value):
        raise ArithmeticError(f"bound forms disagree at mu={mu}: {value} vs {alt}")
    return PiecewiseBound(value, _region(mu, 1.0 - thr, 1.0 + thr), (1.0 - thr, 1.0 + thr))


def sigma_half_fs_bound(mu) -> PiecewiseBound:
    """Limit ``alpha -> pi`` of :func:`sigma_fs_bound`."""
    mu = _real(mu)
    d = abs(1.0 - mu)
    value = 0.5 if d <= 0.25 else 2.0 * d
    return PiecewiseBound(value, _region(mu, 0.75, 1.25), (0.75, 1.25))


def sigma_a3_bound(s: SectorAlpha) -> float:
    return 1.0 / (1.0 + 0.5 * s.cos)


# -- tables ---------------------------------------------------------------------

@dataclass(frozen=True)
class BoundRow:
    alpha: float
    k: int
    mu: float
    bound: PiecewiseBound

    def to_row(self) -> list[str]:
        f = lambda x: format(float(x), ".17g")  # noqa: E731
        d1, d2 = self.bound.thresholds
        return [f(self.alpha), str(self.k), f(self.mu), f(self.bound.value),
                self.bound.region.value, f(d1), f(d2)]


def bound_table_csv(rows: Iterable[BoundRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BOUND_CSV_HEADER)
    for r in rows:
        w.writerow(r.to_row())
    return buf.getvalue()
