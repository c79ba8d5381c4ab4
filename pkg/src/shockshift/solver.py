"""Deterministic forward solver: WENO5 reconstruction with global
Lax-Friedrichs flux splitting and third-order SSP Runge-Kutta stepping.

Boundaries are handled with three ghost cells per side holding the fixed
far-field states (+1 on the left, -1 on the right by default); the truncated
domain is chosen wide enough that no wave reaches them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DivergenceError, InputError, StepSizeError
from .problem import FluxModel, GridField

WENO_EPS = 1e-6
N_GHOST = 3


@dataclass(frozen=True)
class SolverConfig:
    cfl: float = 0.4
    nx: int = 1500
    snapshot_times: tuple = ()
    boundary: tuple = (1.0, -1.0)

    def __post_init__(self):
        if not (0.0 < self.cfl <= 1.0):
            raise ConfigError(f"cfl must lie in (0, 1], got {self.cfl}")
        ts = np.asarray(self.snapshot_times, dtype=float)
        if ts.size and (np.any(np.diff(ts) <= 0.0) or ts[0] < 0.0):
            raise ConfigError("snapshot_times must be strictly increasing and non-negative")


def weno5_reconstruct(v1, v2, v3, v4, v5):
    """Left-biased fifth-order WENO value at the interface right of cell 3.

    Elementwise over arrays. Reduces to the linear upstream scheme when the
    three smoothness indicators agree (smooth data).
    """
    q0 = (2.0 * v1 - 7.0 * v2 + 11.0 * v3) / 6.0
    q1 = (-v2 + 5.0 * v3 + 2.0 * v4) / 6.0
    q2 = (2.0 * v3 + 5.0 * v4 - v5) / 6.0
    b0 = 13.0 / 12.0 * (v1 - 2.0 * v2 + v3) ** 2 + 0.25 * (v1 - 4.0 * v2 + 3.0 * v3) ** 2
    b1 = 13.0 / 12.0 * (v2 - 2.0 * v3 + v4) ** 2 + 0.25 * (v2 - v4) ** 2
    b2 = 13.0 / 12.0 * (v3 - 2.0 * v4 + v5) ** 2 + 0.25 * (3.0 * v3 - 4.0 * v4 + v5) ** 2
    a0 = 0.1 / (WENO_EPS + b0) ** 2
    a1 = 0.6 / (WENO_EPS + b1) ** 2
    a2 = 0.3 / (WENO_EPS + b2) ** 2
    s = a0 + a1 + a2
    return (a0 * q0 + a1 * q1 + a2 * q2) / s


def _pad(values: np.ndarray, boundary: tuple) -> np.ndarray:
    left, right = boundary
    return np.concatenate((np.full(N_GHOST, left), values, np.full(N_GHOST, right)))


def interface_fluxes(field: GridField, flux: FluxModel, boundary: tuple = (1.0, -1.0)) -> np.ndarray:
    """Split numerical fluxes at the n+1 cell interfaces (global LF splitting)."""
    if field.n < 7:
        raise InputError(f"field must have at least 7 points, got {field.n}")
    u = _pad(field.values, boundary)
    alpha = float(np.max(np.abs(flux.dF(u))))
    fp = 0.5 * (flux.F(u) + alpha * u)
    fm = 0.5 * (flux.F(u) - alpha * u)
    n = field.n
    m = n + 1
    # interface i sits between interior cells i-1 and i; padded cell k is interior k-3
    hp = weno5_reconstruct(fp[0:m], fp[1:m + 1], fp[2:m + 2], fp[3:m + 3], fp[4:m + 4])
    hm = weno5_reconstruct(fm[5:m + 5], fm[4:m + 4], fm[3:m + 3], fm[2:m + 2], fm[1:m + 1])
    return hp + hm


def spatial_rhs(field: GridField, flux: FluxModel, boundary: tuple = (1.0, -1.0)) -> np.ndarray:
    """Conservative approximation of -dF(u)/dx on the grid."""
    h = interface_fluxes(field, flux, boundary)
    return -(h[1:] - h[:-1]) / field.dx


def max_wavespeed(field: GridField, flux: FluxModel, boundary: tuple = (1.0, -1.0)) -> float:
    u = _pad(field.values, boundary)
    return float(np.max(np.abs(flux.dF(u))))


def ssp_rk3_step(field: GridField, flux: FluxModel, dt: float,
                 boundary: tuple = (1.0, -1.0), cfl_limit: float = 1.0,
                 rhs=None) -> GridField:
    """One three-stage SSP-RK3 step of size dt.

    rhs defaults to the conservative spatial operator; passing another
    callable (GridField -> array) reuses the stage combination for arbitrary
    semi-discrete systems, in which case the CFL check does not apply.
    """
    if dt <= 0.0:
        raise StepSizeError(f"dt must be positive, got {dt}")
    if rhs is None:
        alpha = max_wavespeed(field, flux, boundary)
        if dt > cfl_limit * field.dx / alpha * (1.0 + 1e-9):
            raise StepSizeError(
                f"dt={dt:.6g} exceeds CFL bound {cfl_limit * field.dx / alpha:.6g}")
        rhs = lambda f: spatial_rhs(f, flux, boundary)
    u = field.values
    u1 = u + dt * rhs(field)
    f1 = GridField(t=field.t, x0=field.x0, dx=field.dx, values=u1)
    u2 = 0.75 * u + 0.25 * (u1 + dt * rhs(f1))
    f2 = GridField(t=field.t, x0=field.x0, dx=field.dx, values=u2)
    u3 = u / 3.0 + 2.0 / 3.0 * (u2 + dt * rhs(f2))
    return GridField(t=field.t + dt, x0=field.x0, dx=field.dx, values=u3)


def advance_to(field: GridField, flux: FluxModel, cfg: SolverConfig, t_end: float):
    """March the field to exactly t_end, truncating steps to hit each requested
    snapshot time exactly (never interpolating in time).

    Returns (final_field, snapshots) where snapshots is a list of GridField at
    the requested times that fall inside [field.t, t_end].
    """
    if t_end < field.t:
        raise InputError(f"t_end={t_end} is before field.t={field.t}")
    targets = [t for t in cfg.snapshot_times if field.t <= t <= t_end]
    snapshots: list[GridField] = []
    if targets and abs(targets[0] - field.t) <= 1e-13:
        snapshots.append(field)
        targets.pop(0)

    step = 0
    while field.t < t_end - 1e-13:
        alpha = max_wavespeed(field, flux, cfg.boundary)
        dt = cfg.cfl * field.dx / alpha
        goal = targets[0] if targets else t_end
        hit = False
        if field.t + dt >= goal - 1e-13:
            dt = goal - field.t
            hit = True
        field = ssp_rk3_step(field, flux, dt, cfg.boundary, cfl_limit=cfg.cfl * (1.0 + 1e-9))
        step += 1
        if not np.all(np.isfinite(field.values)):
            raise DivergenceError(step, field.t)
        if hit:
            field = GridField(t=goal, x0=field.x0, dx=field.dx, values=field.values)
            if targets and abs(goal - targets[0]) <= 1e-13:
                snapshots.append(field)
                targets.pop(0)
    return field, snapshots
