"""Shock-quantity extraction from gridded solution data.

The heuristics are deliberately simple numerical differentiation: the shock
center is the interior point maximizing the centered difference, the
emergence time is the first snapshot whose maximum centered slope exceeds a
threshold that scales like 1/dx, and the boundary values u1/u2 are read a
fixed number of cells to either side. Each quantity carries an O(dx) (or
O(dt_sample)) quantization error by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import ConfigError, InputError
from .problem import GridField


@dataclass(frozen=True)
class DetectionConfig:
    # Slope threshold is kappa/dx. A fully developed jump J reads at most
    # J/(2 dx) in a centered difference and the captured layer reduces that
    # further, so kappa must sit well below half the far-field jump (here 2);
    # 0.25 lands between the steepening smooth slopes just before emergence
    # and the reading of a freshly formed shock.
    kappa: float = 0.25
    offset: int = 2        # cells stepped away from the center for u1/u2
    exclusion: int = 5     # cells around the center excluded from error metrics

    def __post_init__(self):
        if self.kappa <= 0.0:
            raise ConfigError(f"kappa must be positive, got {self.kappa}")
        if self.offset < 1:
            raise ConfigError(f"offset must be >= 1, got {self.offset}")
        if self.exclusion < self.offset:
            raise ConfigError("exclusion must be at least offset")


def max_centered_slope(field: GridField) -> float:
    v = field.values
    if v.size < 3:
        raise InputError("need at least 3 grid points")
    return float(np.max(np.abs(v[2:] - v[:-2])) / (2.0 * field.dx))


def detect_xc(field: GridField) -> tuple[int, float]:
    """Index and location of the maximum centered difference (ties go to the
    smallest index, making the output deterministic)."""
    v = field.values
    if v.size < 3:
        raise InputError("need at least 3 grid points")
    jumps = np.abs(v[2:] - v[:-2])
    k = int(np.argmax(jumps)) + 1
    return k, field.x0 + k * field.dx


def detect_tstar(snapshots: Sequence[GridField], cfg: DetectionConfig) -> Optional[float]:
    """Earliest snapshot time whose max centered slope exceeds kappa/dx.

    Returns None when no snapshot qualifies ("no shock yet").
    """
    if not snapshots:
        raise InputError("empty snapshot sequence")
    ref = snapshots[0]
    for field in snapshots:
        if field.n != ref.n or abs(field.x0 - ref.x0) > 1e-12 or abs(field.dx - ref.dx) > 1e-12:
            raise InputError("snapshots must share one grid")
    threshold = cfg.kappa / ref.dx
    for field in snapshots:
        if max_centered_slope(field) > threshold:
            return field.t
    return None


def extract_u12(field: GridField, k_star: int, cfg: DetectionConfig) -> tuple[float, float]:
    """Boundary values read offset cells to the left/right of the center."""
    if k_star - cfg.offset < 0 or k_star + cfg.offset >= field.n:
        raise InputError(
            f"offset {cfg.offset} around k={k_star} leaves the grid of size {field.n}")
    return (float(field.values[k_star - cfg.offset]),
            float(field.values[k_star + cfg.offset]))
