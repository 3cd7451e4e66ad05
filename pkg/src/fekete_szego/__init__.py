"""Numerical Fekete-Szego bounds for the strip class M(alpha) and its
bi-univalent analogue: power-series kernel, class members and extremals,
k-th root transforms, closed-form bounds, and brute-force verification."""

from .bounds import (
    PiecewiseBound,
    Region,
    fs_bound,
    ma_minda_bound,
    root_transform_fs_bound,
    sigma_a2_bound,
    sigma_a3_bound,
    sigma_fs_bound,
)
from .mclass import (
    HerglotzMeasure,
    SectorAlpha,
    build_member,
    extremal_f1,
    extremal_f2,
    membership_check,
)
from .series import NormalizedSeries, TruncatedSeries, revert
from .transforms import invert_series, kth_root_transform
from .verify import OracleGrid, oracle_max_fs, sharpness_gap, verify_on_samples

__version__ = "0.1.0"
