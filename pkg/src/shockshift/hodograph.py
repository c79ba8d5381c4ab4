"""Semi-analytic engine on the x(u) plane.

Writing x as a function of u (valid because the data are decreasing), the
conservation law turns into linear transport before the shock and, after
shock emergence, into a small ODE system for the shock boundary values
(u1, u2) and the shock center xc:

    du1/dt =  (F'(u1) - s) / (f(u1) - F''(u1) t)
    du2/dt = -(s - F'(u2)) / (f(u2) - F''(u2) t)
    dxc/dt =  s = (F(u1) - F(u2)) / (u1 - u2)

with f(u) = -x_i'(u) built from the inverse initial data. The system is
singular at the emergence time t*, where f(u*) - F''(u*) t* = 0, so
integration starts on the known square-root entry ray at t* + eps_boot.

Everything here serves as the ground-truth oracle for the grid solver and
for the collocation methods.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .errors import (AssumptionError, DomainError, InputError, InversionError,
                     SingularityError)
from .problem import FluxModel, InitialDataFamily

U_EDGE = 1.0 - 1e-9  # open-interval guard for u


@dataclass(frozen=True)
class InverseInitialData:
    """Inverse x_i(u) of the initial profile and the derived f = -x_i'.

    u_init keeps the forward profile u0(., z) when the data came from an
    inversion; field evaluation then runs a fast vectorized bisection on the
    characteristic feet instead of nested root finds.
    """

    x_of_u: Callable
    f: Callable
    df: Callable
    d2f: Callable
    dz_f: Optional[Callable] = None
    dz_x: Optional[Callable] = None
    u_init: Optional[Callable] = None
    z: float = 0.0
    label: str = "inverse"


@dataclass(frozen=True)
class CriticalData:
    """Shock-emergence data.

    x_star is the emergence location x_i(u*) + F'(u*) t* (where the first
    characteristics cross and the shock center starts); a is half the second
    derivative at u* of the time-shifted f, and c = 3 F''(u*)/a is the
    constant in the small-time law u1,2 = u* +/- sqrt(c (t - t*)).
    """

    u_star: float
    x_star: float
    t_star: float
    a: float
    c: float
    char_speed: float  # F'(u*)


def _newton_with_bracket(fun, dfun, x0: float, target: float, tol: float = 1e-13):
    """Solve fun(x) = target for decreasing fun, warm-started at x0."""
    x = x0
    lo, hi = None, None  # fun(lo) > target > fun(hi)
    for _ in range(60):
        r = fun(x) - target
        if r > 0.0:
            lo = x
        else:
            hi = x
        d = dfun(x)
        if d == 0.0 or not np.isfinite(d):
            break
        x_new = x - r / d
        if lo is not None and hi is not None and not (lo < x_new < hi):
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= tol * (1.0 + abs(x_new)):
            return x_new
        x = x_new
    # bracketed fallback
    width, lo = 1.0, x0
    while fun(lo) <= target:
        lo -= width
        width *= 2.0
        if width > 1e9:
            raise InversionError(f"could not bracket inverse target {target}")
    width, hi = 1.0, x0
    while fun(hi) >= target:
        hi += width
        width *= 2.0
        if width > 1e9:
            raise InversionError(f"could not bracket inverse target {target}")
    return brentq(lambda s: fun(s) - target, lo, hi, xtol=1e-14, rtol=8.9e-16)


def invert_initial(init: InitialDataFamily, z: float) -> InverseInitialData:
    """Build x_i(u) and f(u) = -x_i'(u) with derivatives by the chain rule.

    x_of_u uses a warm-started safeguarded Newton iteration; the shock ODE
    evaluates f at nearby arguments step after step, so the warm start keeps
    the inversion down to a couple of closure calls.
    """
    state = {"x": 0.0}

    def x_scalar(u: float) -> float:
        if not (-1.0 < u < 1.0):
            raise DomainError(f"u={u} outside the open interval (-1, 1)")
        x = _newton_with_bracket(lambda s: init.u0(s, z), lambda s: init.du0(s, z),
                                 state["x"], u)
        state["x"] = x
        return x

    def x_of_u(u):
        if np.isscalar(u):
            return x_scalar(float(u))
        u = np.asarray(u, dtype=float)
        return np.array([x_scalar(float(ui)) for ui in u.ravel()]).reshape(u.shape)

    def f(u):
        x = x_of_u(u)
        return -1.0 / init.du0(x, z)

    def df(u):
        x = x_of_u(u)
        return init.d2u0(x, z) / init.du0(x, z) ** 3

    def d2f(u):
        x = x_of_u(u)
        d1 = init.du0(x, z)
        return init.d3u0(x, z) / d1**4 - 3.0 * init.d2u0(x, z) ** 2 / d1**5

    dz_f = None
    dz_x = None
    if init.dz_u0 is not None:
        dz_u0 = init.dz_u0
        if init.dzdx_u0 is not None:
            dzdx_u0 = init.dzdx_u0
        else:
            def dzdx_u0(x, zz, _h=1e-5):
                return (dz_u0(x + _h, zz) - dz_u0(x - _h, zz)) / (2.0 * _h)

        def dz_x(u):
            x = x_of_u(u)
            return -dz_u0(x, z) / init.du0(x, z)

        def dz_f(u):
            x = x_of_u(u)
            d1 = init.du0(x, z)
            return (dzdx_u0(x, z) - init.d2u0(x, z) * dz_u0(x, z) / d1) / d1**2

    return InverseInitialData(x_of_u=x_of_u, f=f, df=df, d2f=d2f,
                              dz_f=dz_f, dz_x=dz_x,
                              u_init=lambda x: init.u0(x, z), z=z, label=init.label)


def synthetic_inverse(f, df, d2f, x_of_u=None, dz_f=None, dz_x=None,
                      z: float = 0.0, label: str = "synthetic") -> InverseInitialData:
    """Inverse data given directly by closures (for analysis and tests);
    x_of_u defaults to the zero map (profile data centered at the origin)."""
    if x_of_u is None:
        x_of_u = lambda u: np.asarray(u, dtype=float) * 0.0
    return InverseInitialData(x_of_u=x_of_u, f=f, df=df, d2f=d2f,
                              dz_f=dz_f, dz_x=dz_x, z=z, label=label)


def _second_derivative(fun, x: float, h: float = 1e-3) -> float:
    # five-point O(h^4) stencil
    return (-fun(x + 2 * h) + 16.0 * fun(x + h) - 30.0 * fun(x)
            + 16.0 * fun(x - h) - fun(x - 2 * h)) / (12.0 * h * h)


def _central(fun, x: float, h: float) -> float:
    return (fun(x + h) - fun(x - h)) / (2.0 * h)


def critical_point(inv: InverseInitialData, flux: FluxModel,
                   u_margin: float = 5e-3) -> CriticalData:
    """Locate the shock emergence point.

    The emergence time is the minimum over u of q(u) = f(u)/F''(u); the
    minimizer is found by a coarse scan refined with a bracketed root solve
    of q'. An interior minimizer is required.
    """
    def q(u):
        return float(inv.f(u)) / float(flux.d2F(u))

    def qprime(u):
        fu = float(inv.f(u))
        return (float(inv.df(u)) * float(flux.d2F(u))
                - fu * float(flux.d3F(u))) / float(flux.d2F(u)) ** 2

    lo, hi = -1.0 + u_margin, 1.0 - u_margin
    grid = np.linspace(lo, hi, 2001)
    vals = np.array([q(float(u)) for u in grid])
    k = int(np.argmin(vals))
    if k == 0 or k == grid.size - 1:
        raise AssumptionError("minimizer of f/F'' sits at the domain edge")
    a_u, b_u = float(grid[k - 1]), float(grid[k + 1])
    if not (qprime(a_u) < 0.0 < qprime(b_u)):
        raise AssumptionError("q' does not change sign around the scanned minimizer")
    u_star = float(brentq(qprime, a_u, b_u, xtol=1e-15, rtol=8.9e-16))
    t_star = q(u_star)
    if t_star <= 0.0:
        raise AssumptionError(f"emergence time must be positive, got {t_star}")
    char_speed = float(flux.dF(u_star))
    x_star = float(inv.x_of_u(u_star)) + char_speed * t_star

    # a = f~''(u*)/2 for the time-shifted f~ = f - F''*t*; the F'''' term is
    # taken numerically (exactly zero for Burgers).
    d4F = _second_derivative(lambda u: float(flux.d2F(u)), u_star)
    a = 0.5 * (float(inv.d2f(u_star)) - t_star * d4F)
    if a <= 0.0:
        raise AssumptionError(f"shifted curvature a must be positive, got {a}")
    c = 3.0 * float(flux.d2F(u_star)) / a
    return CriticalData(u_star=u_star, x_star=x_star, t_star=t_star, a=a, c=c,
                        char_speed=char_speed)


def asymptotic_start(critical: CriticalData, eps_boot: float):
    """Entry ray at t = t* + eps_boot: u1,2 = u* +/- sqrt(c*eps), xc = x*."""
    r = np.sqrt(critical.c * eps_boot)
    return critical.u_star + r, critical.u_star - r, critical.x_star


def default_eps_boot(t_star: float) -> float:
    return max(1e-6 * max(t_star, 1.0), 1e-10)


def _rh_speed(flux: FluxModel, u1: float, u2: float) -> float:
    du = u1 - u2
    if abs(du) < 1e-12:
        return float(flux.dF(0.5 * (u1 + u2)))
    return float((flux.F(u1) - flux.F(u2)) / du)


@dataclass(frozen=True)
class ShockTrack:
    """Dense record of (u1, u2, xc) from just after emergence to t_end."""

    critical: CriticalData
    times: np.ndarray
    u1: np.ndarray
    u2: np.ndarray
    xc: np.ndarray
    eps_boot: float
    sol: object

    @property
    def t_end(self) -> float:
        return float(self.times[-1])

    def at(self, t):
        """(u1, u2, xc) at t in (t*, t_end]; the entry ray covers (t*, t*+eps)."""
        tc = self.critical
        scalar = np.isscalar(t)
        t_arr = np.atleast_1d(np.asarray(t, dtype=float))
        if np.any(t_arr <= tc.t_star) or np.any(t_arr > self.t_end * (1 + 1e-12) + 1e-12):
            raise DomainError(f"time outside track range ({tc.t_star}, {self.t_end}]")
        out = np.empty((3, t_arr.size))
        early = t_arr < tc.t_star + self.eps_boot
        if np.any(early):
            s = t_arr[early] - tc.t_star
            r = np.sqrt(tc.c * s)
            out[0, early] = tc.u_star + r
            out[1, early] = tc.u_star - r
            out[2, early] = tc.x_star + tc.char_speed * s
        if np.any(~early):
            out[:, ~early] = self.sol(np.minimum(t_arr[~early], self.t_end))
        if scalar:
            return float(out[0, 0]), float(out[1, 0]), float(out[2, 0])
        return out[0], out[1], out[2]

    def center(self, t):
        """Shock center for t > t*, continued backward for t <= t* along the
        steepest-front characteristic ray."""
        tc = self.critical
        if np.isscalar(t):
            if t <= tc.t_star:
                return tc.x_star + tc.char_speed * (t - tc.t_star)
            return self.at(t)[2]
        return np.array([self.center(float(ti)) for ti in np.asarray(t, dtype=float)])


def track_shock(inv: InverseInitialData, flux: FluxModel, critical: CriticalData,
                t_end: float, tol: float = 1e-10,
                eps_boot: Optional[float] = None) -> ShockTrack:
    """Integrate the shock-boundary system from the asymptotic entry to t_end.

    A step that would cross the barrier f(u) - F''(u) t = 0 terminates the
    integration and raises SingularityError (assumption failure, or an
    eps_boot too large for the data).
    """
    tc = critical
    if t_end <= tc.t_star:
        raise DomainError(f"t_end={t_end} must exceed t_star={tc.t_star}")
    eps = default_eps_boot(tc.t_star) if eps_boot is None else float(eps_boot)
    u1_0, u2_0, _ = asymptotic_start(tc, eps)
    y0 = np.array([u1_0, u2_0, tc.x_star + tc.char_speed * eps])
    t0 = tc.t_star + eps

    def rhs(t, y):
        u1, u2 = y[0], y[1]
        s = _rh_speed(flux, u1, u2)
        d1 = float(inv.f(u1)) - float(flux.d2F(u1)) * t
        d2 = float(inv.f(u2)) - float(flux.d2F(u2)) * t
        return [(float(flux.dF(u1)) - s) / d1, -(s - float(flux.dF(u2))) / d2, s]

    def barrier(t, y):
        b1 = float(inv.f(y[0])) - float(flux.d2F(y[0])) * t
        b2 = float(inv.f(y[1])) - float(flux.d2F(y[1])) * t
        return min(b1, b2)

    barrier.terminal = True
    barrier.direction = -1

    sol = solve_ivp(rhs, (t0, t_end), y0, method="RK45", rtol=tol, atol=1e-12,
                    dense_output=True, events=barrier, first_step=eps * 0.1)
    if sol.status == 1:
        raise SingularityError(
            f"barrier f(u) - F''(u) t reached zero at t={sol.t_events[0][0]:.6g}")
    if not sol.success:
        raise SingularityError(f"shock tracking failed: {sol.message}")
    return ShockTrack(critical=tc, times=sol.t, u1=sol.y[0], u2=sol.y[1],
                      xc=sol.y[2], eps_boot=eps, sol=sol.sol)


def _solve_foot(inv: InverseInitialData, flux: FluxModel, t: float, x: float,
                u_lo: float, u_hi: float, u_start: Optional[float] = None) -> float:
    """Solve x_i(u) + F'(u) t = x on a branch where the map is decreasing.

    Safeguarded Newton with a hard bracket; the derivative of the map is
    -(f(u) - F''(u) t), available analytically.
    """
    def g(u):
        return float(inv.x_of_u(u)) + float(flux.dF(u)) * t - x

    def dg(u):
        return -(float(inv.f(u)) - float(flux.d2F(u)) * t)

    a, b = u_lo, u_hi
    if g(a) < 0.0 or g(b) > 0.0:
        raise DomainError(f"characteristic root not bracketed for (t={t}, x={x})")
    u = u_start if u_start is not None and a < u_start < b else 0.5 * (a + b)
    for _ in range(120):
        r = g(u)
        if r > 0.0:
            a = u
        elif r < 0.0:
            b = u
        else:
            return u
        d = dg(u)
        u_new = u - r / d if (d < 0.0 and np.isfinite(d)) else 0.5 * (a + b)
        if not (a < u_new < b):
            u_new = 0.5 * (a + b)
        if abs(u_new - u) <= 1e-14 * (1.0 + abs(u_new)):
            return u_new
        u = u_new
    raise InversionError(f"characteristic root solve stalled at (t={t}, x={x})")


def exact_solution_at(inv: InverseInitialData, flux: FluxModel,
                      track: Optional[ShockTrack], t: float, x: float,
                      pair_tol: float = 1e-12):
    """Entropy solution value at (t, x); returns the pair (u1, u2) exactly at
    the shock center. For t past the emergence time a covering track is
    required."""
    if t < 0.0:
        raise DomainError(f"t must be non-negative, got {t}")
    if track is not None and t > track.critical.t_star:
        u1, u2, xc = track.at(t)
        if abs(x - xc) <= pair_tol * max(1.0, abs(xc)):
            return (u1, u2)
        if x < xc:
            u = _solve_foot(inv, flux, t, x, u1, U_EDGE)
        else:
            u = _solve_foot(inv, flux, t, x, -U_EDGE, u2)
        return u
    return _solve_foot(inv, flux, t, x, -U_EDGE, U_EDGE)


def _feet_bisection(inv: InverseInitialData, flux: FluxModel, t: float,
                    xs: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Vectorized bisection for the characteristic feet x0 + F'(u0(x0)) t = x.

    The map is increasing in x0 on every branch where the barrier holds, so
    plain bisection over [lo, hi] is safe and runs on whole arrays at once.
    """
    u0 = inv.u_init
    g_lo = lo + flux.dF(u0(lo)) * t - xs
    g_hi = hi + flux.dF(u0(hi)) * t - xs
    if np.any(g_lo > 1e-9) or np.any(g_hi < -1e-9):
        raise DomainError("characteristic feet not bracketed on the grid")
    a, b = lo.copy(), hi.copy()
    for _ in range(90):
        mid = 0.5 * (a + b)
        g = mid + flux.dF(u0(mid)) * t - xs
        pos = g > 0.0
        b = np.where(pos, mid, b)
        a = np.where(pos, a, mid)
    return 0.5 * (a + b)


def exact_field(inv: InverseInitialData, flux: FluxModel, track: Optional[ShockTrack],
                t: float, xs) -> np.ndarray:
    """Vectorized exact solution on grid points (single-valued: a point on the
    shock takes the side it falls on)."""
    xs = np.asarray(xs, dtype=float)
    if inv.u_init is None:
        # synthetic data: fall back to the scalar branch solves
        out = np.empty(xs.size)
        warm: Optional[float] = None
        if track is not None and t > track.critical.t_star:
            u1, u2, xc = track.at(t)
            for i, x in enumerate(xs):
                if x < xc:
                    out[i] = _solve_foot(inv, flux, t, float(x), u1, U_EDGE)
                else:
                    out[i] = _solve_foot(inv, flux, t, float(x), -U_EDGE, u2)
            return out
        for i, x in enumerate(xs):
            warm = _solve_foot(inv, flux, t, float(x), -U_EDGE, U_EDGE, warm)
            out[i] = warm
        return out

    span = float(max(abs(flux.dF(-1.0)), abs(flux.dF(1.0)))) * t + 1.0
    if track is not None and t > track.critical.t_star:
        u1, u2, xc = track.at(t)
        x_foot_1 = float(inv.x_of_u(u1))
        x_foot_2 = float(inv.x_of_u(u2))
        left = xs < xc
        lo = np.where(left, xs - span, x_foot_2)
        hi = np.where(left, x_foot_1, xs + span)
    else:
        lo = xs - span
        hi = xs + span
    feet = _feet_bisection(inv, flux, t, xs, lo, hi)
    return np.asarray(inv.u_init(feet), dtype=float)


@dataclass(frozen=True)
class SensitivityTrack:
    """z-derivatives along a shock track.

    du1/du2 are derivatives of the boundary values at fixed time-from-
    emergence (the emergence clocks of neighboring z differ, so comparisons
    are made at matching t - t*(z)). dxc is the center derivative measured in
    the frame sliding with the emergence-point characteristic; this is the
    quantity with the extra half power of decay at small times.
    """

    times: np.ndarray
    dz_u1: np.ndarray
    dz_u2: np.ndarray
    dz_xc: np.ndarray
    dz_ustar: float
    dz_tstar: float
    dz_xstar: float
    sol: object
    critical: CriticalData
    eps_boot: float

    def at(self, t):
        scalar = np.isscalar(t)
        t_arr = np.atleast_1d(np.asarray(t, dtype=float))
        lo = self.critical.t_star + self.eps_boot
        hi = float(self.times[-1])
        if np.any(t_arr < lo - 1e-15) or np.any(t_arr > hi * (1 + 1e-12) + 1e-12):
            raise DomainError(f"time outside sensitivity range [{lo}, {hi}]")
        out = self.sol(np.minimum(t_arr, hi))
        if scalar:
            return float(out[0, 0]), float(out[1, 0]), float(out[2, 0])
        return out[0], out[1], out[2]


def critical_sensitivities(inv: InverseInitialData, flux: FluxModel,
                           critical: CriticalData) -> tuple[float, float, float]:
    """(d u*/dz, d t*/dz, d x*/dz) from the critical-point equations.

    u* solves q'(u*) = 0 with q = f/F'', so du*/dz = -(dq'/dz)/q''; then
    dt*/dz = dz_f(u*)/F''(u*) and dx*/dz = dz_x(u*) + F'(u*) dt*/dz (the
    f - F'' t* terms cancel at the critical point).
    """
    if inv.dz_f is None or inv.dz_x is None:
        raise InputError("sensitivities need dz_f and dz_x on the inverse data")
    us = critical.u_star

    def qprime(u):
        fu = float(inv.f(u))
        return (float(inv.df(u)) * float(flux.d2F(u))
                - fu * float(flux.d3F(u))) / float(flux.d2F(u)) ** 2

    def dzq(u):
        return float(inv.dz_f(u)) / float(flux.d2F(u))

    qsecond = _central(qprime, us, 1e-4)
    dz_qprime = _central(dzq, us, 1e-4)
    dz_ustar = -dz_qprime / qsecond
    dz_tstar = float(inv.dz_f(us)) / float(flux.d2F(us))
    dz_xstar = float(inv.dz_x(us)) + critical.char_speed * dz_tstar
    return dz_ustar, dz_tstar, dz_xstar


def shock_sensitivity(inv: InverseInitialData, flux: FluxModel, track: ShockTrack,
                      t_end: Optional[float] = None, tol: float = 1e-10) -> SensitivityTrack:
    """Integrate the linear variational system for (dz_u1, dz_u2, dz_xc)
    along the given track, starting from the critical-point derivatives at
    the bootstrap time."""
    tc = track.critical
    t_end = track.t_end if t_end is None else float(t_end)
    if t_end > track.t_end * (1 + 1e-12):
        raise InputError(f"t_end={t_end} beyond the track end {track.t_end}")
    dz_ustar, dz_tstar, dz_xstar = critical_sensitivities(inv, flux, tc)
    d2F_star = float(flux.d2F(tc.u_star))

    def rhs(t, v):
        v1, v2 = v[0], v[1]
        u1, u2, _ = track.at(t)
        s = _rh_speed(flux, u1, u2)
        du = u1 - u2
        dF1, dF2 = float(flux.dF(u1)), float(flux.dF(u2))
        d2F1, d2F2 = float(flux.d2F(u1)), float(flux.d2F(u2))
        d3F1, d3F2 = float(flux.d3F(u1)), float(flux.d3F(u2))
        D1 = float(inv.f(u1)) - d2F1 * t
        D2 = float(inv.f(u2)) - d2F2 * t
        N1 = dF1 - s
        N2 = s - dF2
        dz_s = (dF1 * v1 - dF2 * v2 - s * (v1 - v2)) / du
        dzN1 = d2F1 * v1 - dz_s
        dzN2 = dz_s - d2F2 * v2
        dzD1 = (float(inv.df(u1)) - d3F1 * t) * v1 + float(inv.dz_f(u1)) - d2F1 * dz_tstar
        dzD2 = (float(inv.df(u2)) - d3F2 * t) * v2 + float(inv.dz_f(u2)) - d2F2 * dz_tstar
        return [(dzN1 * D1 - N1 * dzD1) / D1**2,
                -(dzN2 * D2 - N2 * dzD2) / D2**2,
                dz_s - d2F_star * dz_ustar]

    t0 = tc.t_star + track.eps_boot
    v0 = np.array([dz_ustar, dz_ustar, dz_xstar])
    sol = solve_ivp(rhs, (t0, t_end), v0, method="RK45", rtol=tol, atol=1e-13,
                    dense_output=True, first_step=track.eps_boot * 0.1)
    if not sol.success:
        raise SingularityError(f"sensitivity integration failed: {sol.message}")
    return SensitivityTrack(times=sol.t, dz_u1=sol.y[0], dz_u2=sol.y[1],
                            dz_xc=sol.y[2], dz_ustar=dz_ustar, dz_tstar=dz_tstar,
                            dz_xstar=dz_xstar, sol=sol.sol, critical=tc,
                            eps_boot=track.eps_boot)
