"""Problem definitions: convex flux models, initial-data families, grids.

The PDE solved throughout is u_t + F(u)_x = 0 on a truncated line [-R, R],
with decreasing initial data connecting the states +1 (left) and -1 (right).
Initial data are supplied as analytic closures with derivatives up to third
order so that the inverse-function engine never has to differentiate
numerically. All closures must accept numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import AssumptionError, ConfigError, EvaluationError, InversionError

Closure1 = Callable[[np.ndarray], np.ndarray]
Closure2 = Callable[[np.ndarray, float], np.ndarray]


@dataclass(frozen=True)
class FluxModel:
    """Smooth strictly convex flux F with derivatives and the inverse G of F'."""

    F: Closure1
    dF: Closure1
    d2F: Closure1
    d3F: Closure1
    G: Closure1
    label: str = "flux"


def _inverse_of_dF(dF: Closure1, d2F: Closure1, lo: float, hi: float, tol: float = 1e-12) -> Closure1:
    """Safeguarded Newton (bisection fallback) inverse of the increasing map dF."""

    def invert_scalar(w: float) -> float:
        a, b = lo, hi
        if not (dF(a) <= w <= dF(b)):
            raise InversionError(f"target {w!r} outside dF range [{dF(a)}, {dF(b)}]")
        u = 0.5 * (a + b)
        for _ in range(200):
            r = dF(u) - w
            if r > 0.0:
                b = u
            else:
                a = u
            slope = d2F(u)
            cand = u - r / slope if slope > 0.0 else 0.5 * (a + b)
            if not (a < cand < b):
                cand = 0.5 * (a + b)
            if abs(cand - u) <= tol:
                return cand
            u = cand
        raise InversionError(f"inverse of dF did not converge for target {w!r}")

    def G(w):
        if np.isscalar(w):
            return invert_scalar(float(w))
        w = np.asarray(w, dtype=float)
        return np.array([invert_scalar(float(wi)) for wi in w.ravel()]).reshape(w.shape)

    return G


def burgers() -> FluxModel:
    """The quadratic flux F(u) = u^2/2; G is the identity."""
    return FluxModel(
        F=lambda u: 0.5 * np.asarray(u) ** 2,
        dF=lambda u: np.asarray(u) + 0.0,
        d2F=lambda u: np.ones_like(np.asarray(u, dtype=float)),
        d3F=lambda u: np.zeros_like(np.asarray(u, dtype=float)),
        G=lambda w: np.asarray(w) + 0.0,
        label="burgers",
    )


def convex_flux(
    F: Closure1,
    dF: Closure1,
    d2F: Closure1,
    d3F: Closure1,
    G: Optional[Closure1] = None,
    label: str = "flux",
    u_range: tuple[float, float] = (-1.0, 1.0),
) -> FluxModel:
    """Build a FluxModel, computing the inverse of F' numerically if not given."""
    lo, hi = u_range
    if G is None:
        G = _inverse_of_dF(dF, d2F, lo - 0.05, hi + 0.05)
    return FluxModel(F=F, dF=dF, d2F=d2F, d3F=d3F, G=G, label=label)


@dataclass(frozen=True)
class InitialDataFamily:
    """Decreasing initial profiles u0(x, z) parameterized by one random variable z.

    du0/d2u0/d3u0 are x-derivatives. dz_u0 is the z-derivative and dzdx_u0 the
    mixed derivative; both are optional and only needed for sensitivity runs
    (dzdx_u0 falls back to a central difference of dz_u0 when absent).
    """

    u0: Closure2
    du0: Closure2
    d2u0: Closure2
    d3u0: Closure2
    dz_u0: Optional[Closure2] = None
    dzdx_u0: Optional[Closure2] = None
    label: str = "family"


def perturbed_logistic(drift: float = 3.0, amp: float = 0.2) -> InitialDataFamily:
    """Logistic step from +1 to -1, translated by drift*z^3 and asymmetrically
    perturbed by amp*z. The default parameters give the family used by the
    built-in experiment presets; drift=amp=0 gives the z-independent base step.
    """
    c = float(amp)
    d = float(drift)

    def _v(x, z):
        y = np.asarray(x, dtype=float) - d * z**3
        v = -np.tanh(0.5 * y)
        vx = -0.5 * (1.0 - v * v)
        return v, vx

    # u0 = v - c*z*h(v) with h(v) = (v + 0.5)(1 - v^2)
    def _h(v):
        return (v + 0.5) * (1.0 - v * v)

    def u0(x, z):
        v, _ = _v(x, z)
        return v - c * z * _h(v)

    def du0(x, z):
        v, vx = _v(x, z)
        g1 = 1.0 - c * z * (1.0 - v - 3.0 * v * v)
        return g1 * vx

    def d2u0(x, z):
        v, vx = _v(x, z)
        g1 = 1.0 - c * z * (1.0 - v - 3.0 * v * v)
        g2 = -c * z * (-1.0 - 6.0 * v)
        vxx = v * vx
        return g2 * vx * vx + g1 * vxx

    def d3u0(x, z):
        v, vx = _v(x, z)
        g1 = 1.0 - c * z * (1.0 - v - 3.0 * v * v)
        g2 = -c * z * (-1.0 - 6.0 * v)
        g3 = 6.0 * c * z
        vxx = v * vx
        vxxx = vx * (vx + v * v)
        return g3 * vx**3 + 3.0 * g2 * vx * vxx + g1 * vxxx

    def dz_u0(x, z):
        v, vx = _v(x, z)
        g1 = 1.0 - c * z * (1.0 - v - 3.0 * v * v)
        vz = -3.0 * d * z**2 * vx
        return g1 * vz - c * _h(v)

    def dzdx_u0(x, z):
        v, vx = _v(x, z)
        g1 = 1.0 - c * z * (1.0 - v - 3.0 * v * v)
        g2 = -c * z * (-1.0 - 6.0 * v)
        vxx = v * vx
        vz = -3.0 * d * z**2 * vx
        vzx = -3.0 * d * z**2 * vxx
        return g2 * vx * vz + g1 * vzx - c * (1.0 - v - 3.0 * v * v) * vx

    return InitialDataFamily(
        u0=u0, du0=du0, d2u0=d2u0, d3u0=d3u0, dz_u0=dz_u0, dzdx_u0=dzdx_u0,
        label=f"perturbed-logistic(drift={d:g}, amp={c:g})",
    )


def logistic_step() -> InitialDataFamily:
    """The z-independent base profile (1 - e^x)/(1 + e^x) = -tanh(x/2)."""
    fam = perturbed_logistic(drift=0.0, amp=0.0)
    return InitialDataFamily(
        u0=fam.u0, du0=fam.du0, d2u0=fam.d2u0, d3u0=fam.d3u0,
        dz_u0=fam.dz_u0, dzdx_u0=fam.dzdx_u0, label="logistic-step",
    )


@dataclass(frozen=True)
class ProblemSpec:
    """The full mathematical problem: flux + initial family + truncated domain."""

    flux: FluxModel
    init: InitialDataFamily
    R: float
    z_range: tuple[float, float] = (-1.0, 1.0)
    label: str = "problem"

    def __post_init__(self):
        if not self.R > 0.0:
            raise ConfigError(f"R must be positive, got {self.R}")
        if not self.z_range[0] < self.z_range[1]:
            raise ConfigError(f"z_range must be non-degenerate, got {self.z_range}")


def base_problem(R: float = 15.0) -> ProblemSpec:
    return ProblemSpec(flux=burgers(), init=logistic_step(), R=R, label="burgers-base")


def perturbed_problem(R: float = 15.0) -> ProblemSpec:
    return ProblemSpec(flux=burgers(), init=perturbed_logistic(), R=R, label="burgers-perturbed")


@dataclass(frozen=True)
class GridField:
    """Solution samples u(t, x_k) on a uniform grid x_k = x0 + k*dx."""

    t: float
    x0: float
    dx: float
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def x(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.values.size)


def _eval_closure(fn: Closure2, name: str, x: np.ndarray, z: float) -> np.ndarray:
    vals = np.asarray(fn(x, z), dtype=float)
    if not np.all(np.isfinite(vals)):
        bad = np.asarray(x)[~np.isfinite(vals)][:1]
        raise EvaluationError(name, (float(bad[0]) if bad.size else x, z), "non-finite")
    return vals


@dataclass(frozen=True)
class ValidationReport:
    """Pass/fail per structural assumption, with offending sample points."""

    z: float
    monotone: bool
    unique_inflection: bool
    positive_third_at_inflection: bool
    boundary_states: bool
    inflection_x: Optional[float]
    offending: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return (self.monotone and self.unique_inflection
                and self.positive_third_at_inflection and self.boundary_states)


def validate_problem(spec: ProblemSpec, z: float, n_check: int = 10_000,
                     boundary_tol: float = 1e-6) -> ValidationReport:
    """Sample-based check of the assumptions the shock analysis relies on:
    strictly decreasing data, a single inflection point with positive third
    derivative, and boundary states within boundary_tol of -/+1.
    """
    if n_check < 3:
        raise ConfigError(f"n_check must be >= 3, got {n_check}")
    xs = np.linspace(-spec.R, spec.R, n_check)
    u = _eval_closure(spec.init.u0, "u0", xs, z)
    du = _eval_closure(spec.init.du0, "du0", xs, z)
    d2u = _eval_closure(spec.init.d2u0, "d2u0", xs, z)

    offending: dict = {}
    monotone = bool(np.all(du < 0.0))
    if not monotone:
        offending["monotone"] = xs[du >= 0.0][:10].tolist()

    signs = np.sign(d2u)
    nz = signs != 0
    flips = np.flatnonzero(np.diff(signs[nz]) != 0)
    unique_inflection = flips.size == 1
    inflection_x = None
    positive_third = False
    if flips.size >= 1:
        if not unique_inflection:
            offending["unique_inflection"] = xs[nz][flips][:10].tolist()
        k = np.flatnonzero(nz)[flips[0]]
        inflection_x = float(0.5 * (xs[k] + xs[min(k + 1, n_check - 1)]))
        d3 = float(_eval_closure(spec.init.d3u0, "d3u0", np.array([inflection_x]), z)[0])
        positive_third = d3 > 0.0
        if not positive_third:
            offending["positive_third_at_inflection"] = [inflection_x]
    else:
        offending["unique_inflection"] = []

    boundary_states = (abs(u[0] - 1.0) <= boundary_tol) and (abs(u[-1] + 1.0) <= boundary_tol)
    if not boundary_states:
        offending["boundary_states"] = [float(xs[0]), float(xs[-1])]

    return ValidationReport(
        z=z, monotone=monotone, unique_inflection=unique_inflection,
        positive_third_at_inflection=positive_third, boundary_states=boundary_states,
        inflection_x=inflection_x, offending=offending,
    )


def require_valid(spec: ProblemSpec, z: float, n_check: int = 2000) -> ValidationReport:
    report = validate_problem(spec, z, n_check, boundary_tol=1e-4)
    if not report.passed:
        raise AssumptionError(f"initial data assumptions fail at z={z}: {report.offending}")
    return report


def sample_initial(spec: ProblemSpec, z: float, nx: int) -> GridField:
    """Sample u0(., z) on the uniform nx-point grid covering [-R, R]."""
    if nx < 7:
        raise ConfigError(f"nx must be >= 7 (WENO stencil width), got {nx}")
    dx = 2.0 * spec.R / (nx - 1)
    xs = -spec.R + dx * np.arange(nx)
    vals = _eval_closure(spec.init.u0, "u0", xs, z)
    return GridField(t=0.0, x0=-spec.R, dx=dx, values=vals)
