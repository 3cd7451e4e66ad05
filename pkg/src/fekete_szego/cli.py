"""Command-line front end.

    python -m fekete_szego bounds --alpha 90deg --k 1 --mu-min -1 --mu-max 2 --mu-step 1
    python -m fekete_szego verify --alpha 2pi/3 --k 2 --samples 1000 --seed 42
    python -m fekete_szego extremal f1 --alpha 90deg --k 2
    python -m fekete_szego transform koebe.csv --k 2
    python -m fekete_szego oracle --alpha 5pi/6 --k 3

Exit status: 0 success, 1 a bound was violated, 2 invalid input or config.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

from . import bounds
from .mclass import ALPHA_MAX, ALPHA_MIN, SectorAlpha, extremal_f1, extremal_f2
from .series import NormalizedSeries, SeriesError, from_csv, from_json
from .transforms import invert_series, kth_root_transform
from .verify import OracleGrid, oracle_max_fs, sharpness_gap, verify_mu_grid

EXIT_OK, EXIT_VIOLATION, EXIT_INVALID = 0, 1, 2
SHARPNESS_TOL = 1e-9


class ConfigError(ValueError):
    pass


def _g(x: float) -> str:
    return format(float(x), ".17g")


_PI_RE = re.compile(r"^([-+]?\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(\d+\.?\d*))?$")


def parse_angle(text) -> float:
    """Radians from ``'1.57'``, ``'1.57rad'``, ``'90deg'``, ``'pi/2'`` or ``'2pi/3'``."""
    if isinstance(text, (int, float)):
        return float(text)
    t = str(text).strip().lower()
    scale = 1.0
    if t.endswith("deg"):
        t, scale = t[:-3].strip(), math.pi / 180.0
    elif t.endswith("rad"):
        t = t[:-3].strip()
    m = _PI_RE.match(t)
    try:
        if m:
            coef = m.group(1)
            coef = 1.0 if coef in ("", "+") else -1.0 if coef == "-" else float(coef)
            val = coef * math.pi / (float(m.group(2)) if m.group(2) else 1.0)
        else:
            val = float(t)
    except ValueError as exc:
        raise ConfigError(f"cannot parse angle {text!r}") from exc
    return val * scale


@dataclass(frozen=True)
class RunConfig:
    alpha: float = math.pi / 2
    k: int = 1
    mu_min: float = -2.0
    mu_max: float = 3.0
    mu_step: float = 0.1
    order: int = 12
    samples: int = 1000
    seed: int = 42
    resolution: int = 60
    margin: float = 1e-9
    out: str | None = None
    format: str | None = None

    def validate(self) -> "RunConfig":
        if not (ALPHA_MIN - 1e-15 <= self.alpha <= ALPHA_MAX):
            raise ConfigError(f"alpha={self.alpha} outside [pi/2, pi - 1e-6]")
        if self.k < 1:
            raise ConfigError("k must be >= 1")
        if not self.mu_step > 0:
            raise ConfigError("mu_step must be > 0")
        if self.mu_min > self.mu_max:
            raise ConfigError("mu_min > mu_max")
        if not 4 <= self.order <= 64:
            raise ConfigError("order must lie in [4, 64]")
        if self.samples < 1 or self.resolution < 1 or self.margin < 0:
            raise ConfigError("samples and resolution must be positive, margin nonnegative")
        if self.format not in (None, "csv", "json"):
            raise ConfigError(f"unknown format {self.format!r}")
        return self

    @property
    def sector(self) -> SectorAlpha:
        return SectorAlpha(self.alpha)

    def mu_grid(self) -> list[float]:
        n = int(math.floor((self.mu_max - self.mu_min) / self.mu_step + 1e-9))
        return [round(self.mu_min + i * self.mu_step, 12) for i in range(n + 1)]


def load_config(args: argparse.Namespace) -> RunConfig:
    """Defaults, then the JSON config file, then explicit flags."""
    values: dict = {}
    if getattr(args, "config", None):
        try:
            values.update(json.loads(Path(args.config).read_text()))
        except (OSError, ValueError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
    names = {f.name for f in fields(RunConfig)}
    unknown = set(values) - names
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    for name in names:
        v = getattr(args, name, None)
        if v is not None:
            values[name] = v
    if "alpha" in values:
        values["alpha"] = parse_angle(values["alpha"])
    try:
        cfg = RunConfig(**values)
        cfg = replace(cfg, k=int(cfg.k), order=int(cfg.order), samples=int(cfg.samples),
                      seed=int(cfg.seed), resolution=int(cfg.resolution),
                      mu_min=float(cfg.mu_min), mu_max=float(cfg.mu_max),
                      mu_step=float(cfg.mu_step), margin=float(cfg.margin))
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    return cfg.validate()


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _series_rows(name: str, s) -> list[list[str]]:
    return [[name, str(i), _g(c.real), _g(c.imag)] for i, c in enumerate(s.coeffs)]


def _pairs(s) -> list[list[float]]:
    return [[float(c.real), float(c.imag)] for c in s.coeffs]


# -- commands ---------------------------------------------------------------------

def cmd_bounds(cfg: RunConfig) -> tuple[str, int]:
    s = cfg.sector
    right_angle = abs(cfg.alpha - math.pi / 2) < 1e-12
    recs = []
    for mu in cfg.mu_grid():
        b = bounds.root_transform_fs_bound(s, cfg.k, mu)
        sb = bounds.sigma_fs_bound(s, mu)
        recs.append({
            "alpha": cfg.alpha, "k": cfg.k, "mu": mu, "bound": b.value,
            "region": b.region.value, "delta1": b.thresholds[0], "delta2": b.thresholds[1],
            "mclass_fs_bound": bounds.fs_bound(s, mu).value if cfg.k == 1 else None,
            "right_angle_bound": bounds.right_angle_fs_bound(mu).value
            if cfg.k == 1 and right_angle else None,
            "sigma_fs_bound": sb.value, "sigma_region": sb.region.value,
        })
    if cfg.format == "json":
        return json.dumps(recs, indent=1) + "\n", EXIT_OK
    header = list(recs[0])
    rows = [header]
    for r in recs:
        rows.append(["" if r[h] is None else r[h] if isinstance(r[h], str)
                     else str(r[h]) if isinstance(r[h], int) else _g(r[h]) for h in header])
    return _csv(rows), EXIT_OK


def cmd_verify(cfg: RunConfig, bound_scale: float = 1.0) -> tuple[str, int]:
    s = cfg.sector
    tol_oracle = 2.5 / cfg.resolution
    grid = OracleGrid(cfg.resolution, reduce_rotation=True)
    mus = cfg.mu_grid()
    reports = verify_mu_grid(s, cfg.k, mus, n_samples=cfg.samples, seed=cfg.seed,
                             bound_scale=bound_scale)
    rows = []
    ok = True
    for rep in reports:
        gap = sharpness_gap(s, cfg.k, rep.mu, bound_scale=bound_scale)
        orc = oracle_max_fs(s, cfg.k, rep.mu, grid)
        oracle_err = abs(orc.value - rep.bound)
        row = rep.to_dict()
        row.update(extremal_gap=gap, oracle_max=orc.value, oracle_error=oracle_err,
                   oracle_argmax=orc.to_dict()["argmax"])
        row["passed"] = (rep.violations == 0 and gap <= SHARPNESS_TOL
                         and oracle_err <= tol_oracle)
        ok &= row["passed"]
        rows.append(row)
    summary = {
        "passed": ok,
        "violations": sum(r["violations"] for r in rows),
        "max_extremal_gap": max(r["extremal_gap"] for r in rows),
        "max_oracle_error": max(r["oracle_error"] for r in rows),
        "oracle_tolerance": tol_oracle,
    }
    code = EXIT_OK if ok else EXIT_VIOLATION
    if cfg.format == "csv":
        cols = ["alpha", "k", "mu", "bound", "max_observed", "violations", "sharpness_gap",
                "extremal_gap", "oracle_max", "oracle_error", "passed"]
        out = [cols] + [[r[c] if isinstance(r[c], str) else str(r[c])
                         if isinstance(r[c], (bool, int)) else _g(r[c]) for c in cols]
                        for r in rows]
        return _csv(out), code
    cfg_d = asdict(cfg)
    cfg_d.pop("out", None)  # where the report goes is not part of the run
    return json.dumps({"config": cfg_d, "summary": summary, "rows": rows},
                      indent=1, sort_keys=True) + "\n", code


def cmd_extremal(cfg: RunConfig, which: str) -> tuple[str, int]:
    builders = {"f1": extremal_f1, "f2": extremal_f2}
    if which not in builders:
        raise ConfigError(f"unknown extremal {which!r} (expected f1 or f2)")
    f = builders[which](cfg.sector, cfg.order)
    F = kth_root_transform(f, cfg.k).F
    if cfg.format == "json":
        return json.dumps({"which": which, "alpha": cfg.alpha, "k": cfg.k,
                           "f": _pairs(f), "F_k": _pairs(F)}) + "\n", EXIT_OK
    rows = [["series", "index", "re", "im"]] + _series_rows("f", f) + _series_rows("F_k", F)
    return _csv(rows), EXIT_OK


def read_series_file(path: str) -> NormalizedSeries:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    try:
        s = from_json(text) if text.lstrip().startswith("[") else from_csv(text)
        return NormalizedSeries(s)
    except SeriesError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def cmd_transform(path: str, k: int, fmt: str | None = None) -> tuple[str, int]:
    if k < 1:
        raise ConfigError("k must be >= 1")
    f = read_series_file(path)
    try:
        F = kth_root_transform(f, k).F
    except SeriesError as exc:
        raise ConfigError(str(exc)) from exc
    g = invert_series(f)
    if fmt == "json":
        return json.dumps({"k": k, "F_k": _pairs(F), "inverse": _pairs(g)}) + "\n", EXIT_OK
    rows = [["series", "index", "re", "im"]] + _series_rows("F_k", F) + _series_rows("inverse", g)
    return _csv(rows), EXIT_OK


def cmd_oracle(cfg: RunConfig) -> tuple[str, int]:
    s = cfg.sector
    grid = OracleGrid(cfg.resolution, reduce_rotation=True)
    tol = 2.5 / cfg.resolution
    recs = []
    for mu in cfg.mu_grid():
        r = oracle_max_fs(s, cfg.k, mu, grid)
        b = bounds.root_transform_fs_bound(s, cfg.k, mu).value
        recs.append({"alpha": cfg.alpha, "k": cfg.k, "mu": mu, "oracle_max": r.value,
                     "grid_max": r.grid_value, "witness_max": r.witness_value, "bound": b,
                     "abs_error": abs(r.value - b), "argmax": r.to_dict()["argmax"]})
    code = EXIT_OK if all(r["abs_error"] <= tol for r in recs) else EXIT_VIOLATION
    if cfg.format == "json":
        return json.dumps(recs, indent=1) + "\n", code
    cols = ["alpha", "k", "mu", "oracle_max", "grid_max", "witness_max", "bound", "abs_error"]
    rows = [cols] + [[str(r[c]) if c == "k" else _g(r[c]) for c in cols] for r in recs]
    return _csv(rows), code


# -- argument parsing ---------------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file with RunConfig fields; flags override it")
    p.add_argument("--alpha", help="angle in [pi/2, pi); e.g. 1.5708, 90deg, 2pi/3")
    p.add_argument("--k", type=int)
    p.add_argument("--mu-min", dest="mu_min", type=float)
    p.add_argument("--mu-max", dest="mu_max", type=float)
    p.add_argument("--mu-step", dest="mu_step", type=float)
    p.add_argument("--order", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--resolution", type=int)
    p.add_argument("--margin", type=float)
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"])


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fekete-szego",
                                 description="Fekete-Szego bounds for M(alpha) and M_Sigma(alpha)")
    sub = ap.add_subparsers(dest="command", required=True)
    _common(sub.add_parser("bounds", help="tabulate closed-form bounds over a mu grid"))
    p = sub.add_parser("verify", help="sampled, extremal and oracle checks of the bounds")
    _common(p)
    p.add_argument("--bound-scale", dest="bound_scale", type=float, default=1.0,
                   help=argparse.SUPPRESS)
    p = sub.add_parser("extremal", help="coefficients of f1 or f2 and their root transform")
    p.add_argument("which")
    _common(p)
    p = sub.add_parser("transform", help="root transform and inverse of a series file")
    p.add_argument("input", help="CSV (index,re,im) or JSON [[re, im], ...]")
    _common(p)
    _common(sub.add_parser("oracle", help="brute-force maximum of the functional"))
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "transform":
            text, code = cmd_transform(args.input, args.k if args.k is not None else 1,
                                       args.format)
            out = args.out
        else:
            cfg = load_config(args)
            out = cfg.out
            if args.command == "bounds":
                text, code = cmd_bounds(cfg)
            elif args.command == "verify":
                text, code = cmd_verify(cfg, args.bound_scale)
            elif args.command == "extremal":
                text, code = cmd_extremal(cfg, args.which)
            else:
                text, code = cmd_oracle(cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
