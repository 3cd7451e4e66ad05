"""
The class M(alpha): analytic normalized ``f`` whose ``Re{z f'(z)/f(z)}`` lies
strictly inside the vertical strip

    1 + (alpha - pi) / (2 sin alpha)  <  Re{z f'/f}  <  1 + alpha / (2 sin alpha)

for ``pi/2 <= alpha < pi``. Members are generated from the subordination

    z f'(z) / f(z) = 1 + B_alpha(w(z)),

with ``B_alpha`` the strip map and ``w`` a Schwarz function built from a finite
Herglotz measure.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .series import (
    NormalizedSeries,
    SeriesError,
    TruncatedSeries,
    compose,
    div,
)

__all__ = [
    "ALPHA_MIN",
    "ALPHA_MAX",
    "SectorAlpha",
    "phi",
    "strip_bounds",
    "HerglotzMeasure",
    "SchwarzSeries",
    "MembershipError",
    "MembershipReport",
    "sample_rng",
    "balpha_coeffs",
    "balpha_value",
    "caratheodory_series",
    "schwarz_from_p",
    "p_from_schwarz",
    "build_member",
    "member_from_measure",
    "quotient_series",
    "membership_check",
    "default_radii",
    "default_angles",
    "extremal_f1",
    "extremal_f2",
    "rotate",
]

ALPHA_MIN = math.pi / 2
ALPHA_MAX = math.pi - 1e-6
MAX_KERNELS = 8
DEFAULT_MARGIN = 1e-9


# pi - float(pi); keeps alpha - pi accurate when alpha is within 1e-6 of pi
_PI_LO = 1.2246467991473532e-16


def phi(alpha: float) -> float:
    """Lower strip endpoint ``1 + (alpha - pi) / (2 sin alpha)``."""
    return strip_bounds(alpha)[0]


def strip_bounds(alpha: float) -> tuple[float, float]:
    s = math.sin(alpha)
    return 1.0 + ((alpha - math.pi) - _PI_LO) / (2.0 * s), 1.0 + alpha / (2.0 * s)


@dataclass(frozen=True)
class SectorAlpha:
    """Validated parameter ``alpha`` in ``[pi/2, pi - 1e-6]``."""

    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not math.isfinite(a) or not (ALPHA_MIN - 1e-15 <= a <= ALPHA_MAX):
            raise ValueError(f"alpha={a!r} outside [pi/2, pi - 1e-6]")
        object.__setattr__(self, "alpha", a)

    @property
    def sin(self) -> float:
        return math.sin(self.alpha)

    @property
    def cos(self) -> float:
        return math.cos(self.alpha)

    @property
    def lower(self) -> float:
        return strip_bounds(self.alpha)[0]

    @property
    def upper(self) -> float:
        return strip_bounds(self.alpha)[1]

    @property
    def width(self) -> float:
        return math.pi / (2.0 * self.sin)


# ---------------------------------------------------------------------------
# the strip map

def balpha_coeffs(s: SectorAlpha, N: int) -> TruncatedSeries:
    """Taylor coefficients ``A_n = (-1)**(n-1) sin(n alpha) / (n sin alpha)``."""
    if N < 1:
        raise ValueError("N must be >= 1")
    n = np.arange(1, N + 1)
    c = np.zeros(N + 1, dtype=complex)
    c[1:] = (-1.0) ** (n - 1) * np.sin(n * s.alpha) / (n * s.sin)
    c[1] = 1.0
    return TruncatedSeries(c)


def balpha_value(s: SectorAlpha, z):
    """Closed-form ``B_alpha(z)`` on ``|z| < 1`` (scalar or array)."""
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1):
        raise ValueError("B_alpha is evaluated only inside the unit disk")
    e = np.exp(1j * s.alpha)
    # log of each factor separately: both lie in Re > 0 so the difference
    # stays on the branch that is analytic in the disk.
    out = (np.log1p(z * e) - np.log1p(z / e)) / (2j * s.sin)
    return out if out.ndim else complex(out)


# ---------------------------------------------------------------------------
# Caratheodory and Schwarz generators

def sample_rng(seed: int, index: int) -> np.random.Generator:
    """Counter-based stream for sample ``index`` under ``seed``."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence((int(seed), int(index)))))


@dataclass(frozen=True)
class HerglotzMeasure:
    """Finite convex combination of kernels ``(1 + z e^{i t}) / (1 - z e^{i t})``."""

    weights: tuple[float, ...]
    angles: tuple[float, ...]

    def __post_init__(self):
        w = tuple(float(x) for x in self.weights)
        t = tuple(float(x) for x in self.angles)
        if not 1 <= len(w) <= MAX_KERNELS or len(w) != len(t):
            raise ValueError(f"need 1..{MAX_KERNELS} weights matching angles")
        if any(x < 0 or not math.isfinite(x) for x in w):
            raise ValueError("weights must be nonnegative")
        if abs(sum(w) - 1.0) > 1e-12:
            raise ValueError(f"weights sum to {sum(w)!r}, not 1")
        if any(not 0 <= x < 2 * math.pi for x in t):
            raise ValueError("angles must lie in [0, 2 pi)")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "angles", t)

    @classmethod
    def sample(cls, rng: np.random.Generator) -> "HerglotzMeasure":
        m = int(rng.integers(1, MAX_KERNELS + 1))
        angles = rng.uniform(0.0, 2 * math.pi, size=m)
        w = rng.dirichlet(np.ones(m))
        w = w / w.sum()
        return cls(tuple(w), tuple(angles))

    def value(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape, dtype=complex)
        for lam, t in zip(self.weights, self.angles):
            u = z * np.exp(1j * t)
            out += lam * (1 + u) / (1 - u)
        return out

    def to_json(self) -> str:
        return json.dumps({"weights": list(self.weights), "angles": list(self.angles)})

    @classmethod
    def from_json(cls, text: str) -> "HerglotzMeasure":
        d = json.loads(text)
        return cls(tuple(d["weights"]), tuple(d["angles"]))


class SchwarzSeries(TruncatedSeries):
    """Series of a Schwarz function: ``w(0) = 0``."""

    __slots__ = ()

    def __init__(self, coeffs):
        super().__init__(coeffs)
        if self._c[0] != 0:
            raise SeriesError(f"Schwarz series needs w(0) = 0, got {self._c[0]!r}")

    def max_modulus(self, radii, angles) -> float:
        z = np.outer(np.asarray(radii), np.exp(1j * np.asarray(angles)))
        return float(np.max(np.abs(self(z))))


def caratheodory_series(h: HerglotzMeasure, N: int) -> TruncatedSeries:
    n = np.arange(1, N + 1)
    c = np.ones(N + 1, dtype=complex)
    c[1:] = 0
    for lam, t in zip(h.weights, h.angles):
        c[1:] += 2 * lam * np.exp(1j * n * t)
    return TruncatedSeries(c)


def schwarz_from_p(p: TruncatedSeries) -> SchwarzSeries:
    """``w = (p - 1) / (p + 1)`` for ``p(0) = 1``."""
    if p[0] != 1:
        raise SeriesError("Caratheodory series must satisfy p(0) = 1")
    return SchwarzSeries(div(p - 1, p + 1))


def p_from_schwarz(w: SchwarzSeries) -> TruncatedSeries:
    return div(1 + w, 1 - w)


# ---------------------------------------------------------------------------
# class members

def build_member(s: SectorAlpha, w: TruncatedSeries, N: int | None = None) -> NormalizedSeries:
    """Normalized ``f`` with ``z f'/f = 1 + B_alpha(w)``.

    Solves ``(n - 1) a_n = sum_{j=1}^{n-1} q_j a_{n-j}`` with ``q = B_alpha(w)``.
    """
    if w[0] != 0:
        raise SeriesError("w must vanish at the origin")
    N = w.order if N is None else N
    if N > w.order:
        raise SeriesError(f"requested order {N} exceeds Schwarz series order {w.order}")
    q = compose(balpha_coeffs(s, N), w.truncate(N)).coeffs
    a = np.zeros(N + 1, dtype=complex)
    a[1] = 1.0
    for n in range(2, N + 1):
        a[n] = np.dot(q[1:n], a[n - 1 : 0 : -1]) / (n - 1)
    return NormalizedSeries(a)


def member_from_measure(s: SectorAlpha, h: HerglotzMeasure, N: int) -> NormalizedSeries:
    return build_member(s, schwarz_from_p(caratheodory_series(h, N)), N)


def extremal_f1(s: SectorAlpha, N: int = 12) -> NormalizedSeries:
    """Member driven by ``w(z) = z``: ``z + z^2 + (1 - cos a)/2 z^3 + ...``."""
    return build_member(s, TruncatedSeries.monomial(1, N), N)


def extremal_f2(s: SectorAlpha, N: int = 12) -> NormalizedSeries:
    """Member driven by ``w(z) = z^2``: odd, ``z + z^3/2 + ...``."""
    return build_member(s, TruncatedSeries.monomial(2, N), N)


def rotate(f: NormalizedSeries, theta: float) -> NormalizedSeries:
    """``e^{-i theta} f(e^{i theta} z)``."""
    n = np.arange(len(f))
    c = f.coeffs * np.exp(1j * (n - 1) * theta)
    c[1] = 1.0
    c[0] = 0.0
    return NormalizedSeries(c)


# ---------------------------------------------------------------------------
# membership on a polar grid

class MembershipError(ValueError):
    pass


@dataclass(frozen=True)
class MembershipReport:
    accepted: bool
    worst_value: float
    worst_z: tuple[float, float]
    min_value: float
    max_value: float
    max_tail: float
    lower: float = field(repr=False)
    upper: float = field(repr=False)

    def to_dict(self) -> dict:
        return {"accepted": self.accepted, "worst_value": self.worst_value,
                "worst_z": list(self.worst_z)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def default_radii() -> np.ndarray:
    return np.array([0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95])


def default_angles(n: int = 720) -> np.ndarray:
    return 2 * np.pi * np.arange(n) / n


def quotient_series(f: NormalizedSeries) -> TruncatedSeries:
    """Series of ``z f'(z) / f(z)``, of order ``f.order - 1``."""
    c = f.coeffs
    n = np.arange(1, c.size)
    h = c[1:]                      # f / z
    return div(TruncatedSeries(n * h), TruncatedSeries(h))


def _tail_estimate(q: np.ndarray, r: np.ndarray) -> np.ndarray:
    """Estimate ``sum_{n>N} |q_n| r^n`` by geometric extrapolation.

    The envelope is the maximum modulus over the last block of coefficients
    and its growth rate compares it with the block before (blocks of N/4
    terms, so periodic sign/size patterns do not masquerade as growth). The
    rate is floored at 1: the tail is never assumed to decay faster than a
    constant envelope.
    """
    N = q.size - 1
    mag = np.abs(q)
    scale = 1e-14 * max(mag.max(), 1.0)
    w = max(2, N // 4)
    last, prev = mag[N - w + 1 :], mag[max(1, N - 2 * w + 1) : N - w + 1]
    M = last.max()
    if M <= scale:
        return np.zeros_like(r)
    rho = 1.0
    if prev.size and prev.max() > scale:
        rho = max(1.0, (M / prev.max()) ** (1.0 / w))
    x = rho * r
    with np.errstate(divide="ignore"):
        return np.where(x < 1, M * r ** N * x / np.maximum(1 - x, 1e-300), np.inf)


def membership_check(
    f: NormalizedSeries,
    s: SectorAlpha,
    radii: Sequence[float] | None = None,
    angles: Sequence[float] | None = None,
    margin: float = DEFAULT_MARGIN,
) -> MembershipReport:
    """Test ``lower + margin <= Re{z f'/f} <= upper - margin`` on a polar grid.

    ``z f'/f`` is evaluated from its truncated series and each value carries
    the estimated truncation tail at its radius. A point passes only if the
    whole error interval passes; a point fails only if the whole interval
    fails. Any point where the tail straddles a boundary makes the verdict
    undecidable at this order and raises :class:`MembershipError`.
    """
    radii = default_radii() if radii is None else np.asarray(radii, dtype=float)
    angles = default_angles() if angles is None else np.asarray(angles, dtype=float)
    if radii.size == 0 or angles.size == 0:
        raise MembershipError("empty grid")
    if np.any(radii >= 1) or np.any(radii < 0):
        raise MembershipError("radii must lie in [0, 1)")
    if margin < 0:
        raise MembershipError("margin must be nonnegative")
    lo, hi = s.lower + margin, s.upper - margin

    q = quotient_series(f)
    z = np.outer(radii, np.exp(1j * angles))
    v = q(z).real
    tail = _tail_estimate(q.coeffs, radii)[:, None] * np.ones_like(v)

    slack = np.minimum(v - lo, hi - v)
    fails = (v + tail < lo) | (v - tail > hi)
    passes = (v - tail >= lo) & (v + tail <= hi)
    if fails.any():
        idx = np.unravel_index(np.argmin(np.where(fails, slack, np.inf)), v.shape)
        accepted = False
    elif passes.all():
        idx = np.unravel_index(np.argmin(slack), v.shape)
        accepted = True
    else:
        bad = np.unravel_index(np.argmax(~passes), v.shape)
        raise MembershipError(
            f"truncation tail {tail[bad]:.3g} at r={radii[bad[0]]} exceeds the available "
            f"margin (value {v[bad]:.6g}, strip [{lo:.6g}, {hi:.6g}]); raise the order")
    return MembershipReport(
        accepted=accepted,
        worst_value=float(v[idx]),
        worst_z=(float(radii[idx[0]]), float(angles[idx[1]])),
        min_value=float(v.min()),
        max_value=float(v.max()),
        max_tail=float(tail.max()),
        lower=s.lower,
        upper=s.upper,
    )
