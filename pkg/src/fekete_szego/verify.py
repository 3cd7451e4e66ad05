"""
Independent checks of the closed-form bounds.

* a brute-force maximizer of the Fekete-Szego functional over the attainable
  Caratheodory pairs ``(p1, p2)``,
* randomized non-violation runs over seeded Herglotz-generated members,
* sharpness gaps measured on the extremal functions and their rotations,
* numerical pair-membership for the bi-univalent class.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import bounds
from .mclass import (
    DEFAULT_MARGIN,
    HerglotzMeasure,
    MembershipReport,
    SectorAlpha,
    extremal_f1,
    extremal_f2,
    member_from_measure,
    membership_check,
    rotate,
    sample_rng,
)
from .series import NormalizedSeries
from .transforms import b_from_a, fs_functional, invert_series, kth_root_transform

__all__ = [
    "VIOLATION_TOL",
    "OracleGrid",
    "OracleResult",
    "lemma_witnesses",
    "oracle_max_ma_minda",
    "oracle_max_fs",
    "VerificationReport",
    "sample_measure",
    "sample_member",
    "verify_on_samples",
    "verify_mu_grid",
    "sharpness_gap",
    "SigmaPairWitness",
    "check_sigma_pair",
    "SigmaVerificationReport",
    "perturbation_family",
    "verify_sigma_bounds",
    "DerivationInconsistencyError",
    "verify_sigma_derivation",
]

VIOLATION_TOL = 1e-9
WITNESS_NUS = (0.0, 0.25, 0.5, 0.75, 1.0)
N_ROTATIONS = 16


# ---------------------------------------------------------------------------
# brute-force oracle over (p1, p2)

@dataclass(frozen=True)
class OracleGrid:
    """Square lattice over the closed unit disk for ``zeta1`` and ``zeta2``.

    ``p1 = 2 zeta1`` and ``p2 = 2 zeta1^2 + 2 (1 - |zeta1|^2) zeta2`` sweep
    exactly the attainable coefficient pairs of the Caratheodory class.
    ``reduce_rotation`` restricts ``zeta1`` to ``[0, 1]``, which is lossless
    for functionals invariant under ``(p1, p2) -> (e^{it} p1, e^{2it} p2)``.
    """

    resolution: int = 60
    witnesses: bool = True
    reduce_rotation: bool = False

    def __post_init__(self):
        if self.resolution < 1:
            raise ValueError("resolution must be >= 1")

    def disk(self) -> np.ndarray:
        n = self.resolution
        x = np.arange(-n, n + 1) / n
        zz = (x[:, None] + 1j * x[None, :]).ravel()
        zz = zz[np.abs(zz) <= 1.0]
        m = int(math.ceil(2 * math.pi * n))
        circle = np.exp(2j * math.pi * np.arange(m) / m)
        return np.concatenate([zz, circle])

    def zeta1(self) -> np.ndarray:
        if self.reduce_rotation:
            return np.arange(self.resolution + 1) / self.resolution + 0j
        return self.disk()


def lemma_witnesses(rotations: int = N_ROTATIONS) -> list[tuple[str, complex, complex]]:
    """Extremal ``(p1, p2)`` pairs of the Caratheodory class and their rotations."""
    base = [("(1+z)/(1-z)", 2.0, 2.0), ("(1+z^2)/(1-z^2)", 0.0, 2.0)]
    for nu in WITNESS_NUS:
        base.append((f"mix(nu={nu})", 2.0 * nu, 2.0))
        base.append((f"1/mix(nu={nu})", -2.0 * nu, 4.0 * nu * nu - 2.0))
    out = []
    for j in range(rotations):
        t = 2 * math.pi * j / rotations
        e = complex(math.cos(t), math.sin(t))
        for name, p1, p2 in base:
            out.append((f"{name}@{j}/{rotations}", p1 * e, p2 * e * e))
    return out


def _jsonable(x):
    if isinstance(x, complex):
        return [x.real, x.imag]
    return x


@dataclass(frozen=True)
class OracleResult:
    value: float
    grid_value: float
    witness_value: float
    argmax: dict

    def to_dict(self) -> dict:
        return {"value": self.value, "grid_value": self.grid_value,
                "witness_value": self.witness_value,
                "argmax": {k: _jsonable(v) for k, v in self.argmax.items()}}


def _brute_max(G: Callable, grid: OracleGrid, chunk_elems: int = 2_000_000) -> OracleResult:
    # G(p1, p2) must be affine in p2; then G over the lattice is a + b*zeta2.
    z1 = grid.zeta1()
    z2 = grid.disk()
    p1 = 2 * z1
    base = 2 * z1 * z1
    radial = 2 * (1 - np.abs(z1) ** 2)
    a = G(p1, base)
    b = G(p1, base + radial) - a
    best, bi, bj = -1.0, 0, 0
    step = max(1, chunk_elems // z2.size)
    for i in range(0, z1.size, step):
        v = np.abs(a[i : i + step, None] + b[i : i + step, None] * z2[None, :])
        j = int(np.argmax(v))
        if v.flat[j] > best:
            best = float(v.flat[j])
            bi, bj = i + j // z2.size, j % z2.size
    argmax = {"source": "grid", "zeta1": complex(z1[bi]), "zeta2": complex(z2[bj]),
              "p1": complex(p1[bi]), "p2": complex(base[bi] + radial[bi] * z2[bj])}
    wbest, wname, wp = -math.inf, None, None
    if grid.witnesses:
        for name, q1, q2 in lemma_witnesses():
            v = float(np.abs(G(np.complex128(q1), np.complex128(q2))))
            if v > wbest:
                wbest, wname, wp = v, name, (q1, q2)
    if wbest > best:
        q1, q2 = wp
        z1w = q1 / 2
        rad = 1 - abs(z1w) ** 2
        z2w = (q2 - 2 * z1w * z1w) / (2 * rad) if rad > 1e-15 else 0j
        argmax = {"source": f"witness:{wname}", "zeta1": complex(z1w), "zeta2": complex(z2w),
                  "p1": complex(q1), "p2": complex(q2)}
    return OracleResult(max(best, wbest), best, wbest, argmax)


def oracle_max_ma_minda(mu, grid: OracleGrid = OracleGrid()) -> OracleResult:
    """Brute-force ``max |p2 - mu p1^2|`` over the Caratheodory class."""
    return _brute_max(lambda p1, p2: p2 - mu * p1 * p1, grid)


def oracle_max_fs(s: SectorAlpha, k: int, mu, grid: OracleGrid = OracleGrid()) -> OracleResult:
    """Brute-force ``max |b_{2k+1} - mu b_{k+1}^2|`` over members of M(alpha).

    Goes through ``a2 = p1/2``, ``a3 = (p2 - cos(alpha) p1^2 / 2) / 4`` and the
    root-transform coefficient map; no bound formula is used.
    """
    c = s.cos

    def G(p1, p2):
        a2 = p1 / 2
        a3 = (p2 - 0.5 * c * p1 * p1) / 4
        lo, hi = b_from_a(a2, a3, k)
        return hi - mu * lo * lo

    return _brute_max(G, grid)


# ---------------------------------------------------------------------------
# sampled non-violation and sharpness

@dataclass(frozen=True)
class VerificationReport:
    alpha: float
    k: int
    mu: float
    bound: float
    max_observed: float
    argmax: dict
    violations: int
    sharpness_gap: float
    n_evaluated: int
    seed: int
    tolerance: float = VIOLATION_TOL

    CSV_FIELDS = ("alpha", "k", "mu", "bound", "max_observed", "violations", "sharpness_gap",
                  "n_evaluated", "seed")

    def __post_init__(self):
        if (self.violations == 0) != (self.max_observed <= self.bound + self.tolerance):
            raise ValueError("violations count inconsistent with max_observed vs bound")

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def csv_row(self) -> list[str]:
        out = []
        for name in self.CSV_FIELDS:
            v = getattr(self, name)
            out.append(format(v, ".17g") if isinstance(v, float) else str(v))
        return out

    @classmethod
    def to_csv(cls, reports) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cls.CSV_FIELDS)
        for r in reports:
            w.writerow(r.csv_row())
        return buf.getvalue()


def sample_measure(seed: int, index: int) -> HerglotzMeasure:
    return HerglotzMeasure.sample(sample_rng(seed, index))


def sample_member(s: SectorAlpha, seed: int, index: int, order: int = 6) -> NormalizedSeries:
    """Sample ``index`` of the seeded stream; index 0 is the identity ``f(z) = z``."""
    if index == 0:
        return NormalizedSeries.identity(order)
    return member_from_measure(s, sample_measure(seed, index), order)


def _transform_coeffs(fs: Sequence[NormalizedSeries], k: int) -> tuple[np.ndarray, np.ndarray]:
    lo = np.empty(len(fs), dtype=complex)
    hi = np.empty(len(fs), dtype=complex)
    for i, f in enumerate(fs):
        F = kth_root_transform(f, k)
        lo[i], hi[i] = F.b_low, F.b_high
    return lo, hi


def verify_mu_grid(
    s: SectorAlpha,
    k: int,
    mus: Sequence[float],
    n_samples: int = 1000,
    seed: int = 42,
    order: int = 6,
    include_extremals: bool = False,
    bound_scale: float = 1.0,
    tolerance: float = VIOLATION_TOL,
) -> list[VerificationReport]:
    """One :class:`VerificationReport` per ``mu``, sharing one sample set.

    Evaluates the identity plus ``n_samples`` seeded members (optionally the
    two extremals too). ``bound_scale`` multiplies the theoretical bound and
    exists only to self-test the harness.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    order = max(order, 3)
    members = [sample_member(s, seed, i, order) for i in range(n_samples + 1)]
    labels = [{"sample": i, "kind": "identity" if i == 0 else "herglotz"}
              for i in range(n_samples + 1)]
    if include_extremals:
        members += [extremal_f1(s, order), extremal_f2(s, order)]
        labels += [{"sample": -1, "kind": "f1"}, {"sample": -2, "kind": "f2"}]
    lo, hi = _transform_coeffs(members, k)

    reports = []
    for mu in mus:
        mu = float(mu)
        bound = bounds.root_transform_fs_bound(s, k, mu).value * bound_scale
        vals = fs_functional(lo, hi, mu)
        j = int(np.argmax(vals))
        mx = float(vals[j])
        reports.append(VerificationReport(
            alpha=s.alpha, k=k, mu=mu, bound=bound, max_observed=mx,
            argmax=dict(labels[j]), violations=int(np.count_nonzero(vals > bound + tolerance)),
            sharpness_gap=bound - mx, n_evaluated=len(members), seed=seed, tolerance=tolerance))
    return reports


def verify_on_samples(s: SectorAlpha, k: int, mu: float, n_samples: int = 1000, seed: int = 42,
                      **kw) -> VerificationReport:
    return verify_mu_grid(s, k, [mu], n_samples=n_samples, seed=seed, **kw)[0]


def sharpness_gap(s: SectorAlpha, k: int, mu: float, order: int = 6,
                  rotations: int = N_ROTATIONS, bound_scale: float = 1.0) -> float:
    """Bound minus the best functional over the extremals and their rotations."""
    cands = []
    for f in (extremal_f1(s, order), extremal_f2(s, order)):
        cands += [rotate(f, 2 * math.pi * j / rotations) for j in range(rotations)]
    lo, hi = _transform_coeffs(cands, k)
    best = float(np.max(fs_functional(lo, hi, float(mu))))
    return bounds.root_transform_fs_bound(s, k, mu).value * bound_scale - best


# ---------------------------------------------------------------------------
# bi-univalent pairs

@dataclass(frozen=True)
class SigmaPairWitness:
    f: NormalizedSeries
    g: NormalizedSeries
    f_report: MembershipReport
    g_report: MembershipReport

    @property
    def accepted(self) -> bool:
        return self.f_report.accepted and self.g_report.accepted

    def to_dict(self) -> dict:
        return {"accepted": self.accepted, "f": self.f_report.to_dict(),
                "g": self.g_report.to_dict()}


def check_sigma_pair(f: NormalizedSeries, s: SectorAlpha, radii=None, angles=None,
                     margin: float = DEFAULT_MARGIN) -> SigmaPairWitness:
    """Strip membership of ``f`` and of its inverse series."""
    g = invert_series(f)
    return SigmaPairWitness(
        f, g,
        membership_check(f, s, radii, angles, margin),
        membership_check(g, s, radii, angles, margin),
    )


def perturbation_family(kind: str, eps: complex, order: int = 24) -> NormalizedSeries:
    """``z + eps z^2`` (``kind='z2'``) or ``z + eps z^3`` (``kind='z3'``)."""
    if kind == "z2":
        return NormalizedSeries.from_tail([eps], order)
    if kind == "z3":
        return NormalizedSeries.from_tail([0.0, eps], order)
    raise ValueError(f"unknown perturbation family {kind!r}")


@dataclass(frozen=True)
class SigmaVerificationReport:
    alpha: float
    n_candidates: int
    n_accepted: int
    a2_bound: float
    a2_bound_stated: float
    max_a2: float
    max_a2_ratio: float
    max_fs_ratio: float
    worst: dict
    violations: int
    rejected: list = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def verify_sigma_bounds(s: SectorAlpha, eps_grid: Sequence[complex], mu_grid: Sequence[float],
                        order: int = 24, tolerance: float = VIOLATION_TOL,
                        radii=None, angles=None) -> SigmaVerificationReport:
    """Check the M_Sigma(alpha) bounds on accepted perturbation-family pairs."""
    a2_bound = bounds.sigma_a2_effective_bound(s)
    fs_b = [(float(mu), bounds.sigma_fs_bound(s, mu).value) for mu in mu_grid]
    n = acc = viol = 0
    max_a2 = max_a2_ratio = max_fs_ratio = 0.0
    worst: dict = {}
    rejected = []
    for kind in ("z2", "z3"):
        for eps in eps_grid:
            n += 1
            f = perturbation_family(kind, eps, order)
            w = check_sigma_pair(f, s, radii, angles)
            if not w.accepted:
                rejected.append({"family": kind, "eps": _jsonable(complex(eps))})
                continue
            acc += 1
            a2, a3 = f.a(2), f.a(3)
            max_a2 = max(max_a2, abs(a2))
            max_a2_ratio = max(max_a2_ratio, abs(a2) / a2_bound)
            viol += abs(a2) > a2_bound + tolerance
            for mu, b in fs_b:
                v = abs(a3 - mu * a2 * a2)
                viol += v > b + tolerance
                if v / b > max_fs_ratio:
                    max_fs_ratio = v / b
                    worst = {"family": kind, "eps": _jsonable(complex(eps)), "mu": mu,
                             "value": v, "bound": b}
    return SigmaVerificationReport(
        alpha=s.alpha, n_candidates=n, n_accepted=acc, a2_bound=a2_bound,
        a2_bound_stated=bounds.sigma_a2_bound(s), max_a2=max_a2, max_a2_ratio=max_a2_ratio,
        max_fs_ratio=max_fs_ratio, worst=worst, violations=int(viol), rejected=rejected)


class DerivationInconsistencyError(ValueError):
    pass


def verify_sigma_derivation(k1: complex, k2: complex, l2: complex, s: SectorAlpha,
                            tol: float = 1e-10) -> tuple[complex, complex]:
    """``(a2^2, a3)`` from the Caratheodory data of ``f`` and its inverse.

    With ``l1 = -k1``: ``a2^2 = (k2 + l2) / (2 (2 + cos alpha))`` and
    ``a3 = a2^2 + (k2 - l2) / 8``. The same ``a2^2`` must also follow from
    ``8 a2^2 = k1^2 + l1^2``; inputs for which the two disagree cannot come
    from a member and raise :class:`DerivationInconsistencyError`.
    """
    for name, v in (("k1", k1), ("k2", k2), ("l2", l2)):
        if abs(v) > 2 + 1e-12:
            raise ValueError(f"|{name}| = {abs(v):.6g} exceeds 2")
    l1 = -k1
    a2_sq = (k2 + l2) / (2 * (2 + s.cos))
    direct = (k1 * k1 + l1 * l1) / 8
    if abs(direct - a2_sq) > tol:
        raise DerivationInconsistencyError(
            f"8 a2^2 = k1^2 + l1^2 gives {direct}, coefficient relation gives {a2_sq}")
    return complex(a2_sq), complex(a2_sq + (k2 - l2) / 8)
