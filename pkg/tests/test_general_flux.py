"""End-to-end checks of the general convex-flux path (non-quadratic F).

The flux F(u) = u^2/2 + u^3/12 is smooth and strictly convex on [-1, 1]
(F'' = 1 + u/2 >= 1/2) and breaks every Burgers-only shortcut: F'' is not
constant, F''' is not zero, the critical value u* is nonzero, and the shock
moves. Oracles are independent routes: characteristic-crossing times
computed directly in x-space, the WENO solver, and finite differences of
whole tracks.
"""

import numpy as np
import pytest

from shockshift import (DetectionConfig, SolverConfig, advance_to, convex_flux,
                        critical_point, detect_xc, exact_field, invert_initial,
                        perturbed_logistic, sample_initial, shock_sensitivity,
                        track_shock)
from shockshift.problem import ProblemSpec, logistic_step


@pytest.fixture(scope="module")
def cubic_flux():
    return convex_flux(
        F=lambda u: 0.5 * np.asarray(u) ** 2 + np.asarray(u) ** 3 / 12.0,
        dF=lambda u: np.asarray(u) + 0.25 * np.asarray(u) ** 2,
        d2F=lambda u: 1.0 + 0.5 * np.asarray(u),
        d3F=lambda u: np.full_like(np.asarray(u, dtype=float), 0.5),
        label="cubic-corrected")


@pytest.fixture(scope="module")
def cubic_problem(cubic_flux):
    return ProblemSpec(flux=cubic_flux, init=logistic_step(), R=15.0,
                       label="cubic-base")


@pytest.fixture(scope="module")
def cubic_critical(cubic_problem):
    spec = cubic_problem
    inv = invert_initial(spec.init, 0.0)
    cd = critical_point(inv, spec.flux)
    track = track_shock(inv, spec.flux, cd, t_end=3.0)
    return spec, inv, cd, track


def test_critical_point_matches_characteristic_crossing(cubic_critical):
    # independent oracle: the first crossing time of characteristics
    # x0 + F'(u0(x0)) t is min over x0 of -1 / d/dx[F'(u0(x0))], evaluated
    # directly from the closures without any inversion
    spec, _, cd, _ = cubic_critical
    xs = np.linspace(-6, 6, 200_001)
    u = spec.init.u0(xs, 0.0)
    du = spec.init.du0(xs, 0.0)
    rate = spec.flux.d2F(u) * du
    t_cross = -1.0 / rate
    k = int(np.argmin(t_cross))
    assert cd.t_star == pytest.approx(t_cross[k], abs=1e-8)
    assert cd.u_star == pytest.approx(u[k], abs=1e-5)
    x_emerge = xs[k] + spec.flux.dF(u[k]) * t_cross[k]
    assert cd.x_star == pytest.approx(x_emerge, abs=1e-5)
    assert cd.char_speed == pytest.approx(spec.flux.dF(cd.u_star), abs=1e-12)
    assert cd.t_star < 2.0  # the cubic term steepens the left flank


def test_small_time_law_general_flux(cubic_critical):
    _, _, cd, track = cubic_critical
    for s, tol in ((1e-6, 2e-3), (1e-4, 2e-2)):
        u1, u2, _ = track.at(cd.t_star + s)
        r = np.sqrt(cd.c * s)
        assert (u1 - cd.u_star) / r == pytest.approx(1.0, abs=tol)
        assert (cd.u_star - u2) / r == pytest.approx(1.0, abs=tol)


def test_center_moves_at_rankine_hugoniot_speed(cubic_critical):
    spec, _, _, track = cubic_critical
    F = spec.flux.F
    h = 1e-6
    for t in (2.0, 2.5, 2.9):
        u1, u2, _ = track.at(t)
        rh = (F(u1) - F(u2)) / (u1 - u2)
        speed = (track.at(t + h)[2] - track.at(t - h)[2]) / (2 * h)
        assert speed == pytest.approx(rh, rel=1e-6)


def test_weno_agrees_with_general_flux_oracle(cubic_critical):
    spec, inv, cd, track = cubic_critical
    f0 = sample_initial(spec, 0.0, 1500)
    cfg = SolverConfig(cfl=0.4, nx=1500, snapshot_times=(1.2, 2.4))
    _, snaps = advance_to(f0, spec.flux, cfg, 2.4)
    pre, post = snaps
    exact_pre = exact_field(inv, spec.flux, track, pre.t, pre.x)
    assert np.max(np.abs(pre.values - exact_pre)) < 1e-4
    exact_post = exact_field(inv, spec.flux, track, post.t, post.x)
    l1 = np.sum(np.abs(post.values - exact_post)) * post.dx
    tv = np.sum(np.abs(np.diff(exact_post)))
    assert l1 <= 5.0 * post.dx * tv
    _, xc_det = detect_xc(post)
    assert abs(xc_det - track.at(post.t)[2]) <= 2.0 * post.dx


def test_sensitivity_matches_track_differencing(cubic_flux):
    # dual route: the variational system along one track vs finite
    # differences of whole tracks at neighboring z, compared at equal
    # time-from-emergence
    fam = perturbed_logistic()
    fx = cubic_flux
    z, h = 0.2, 1e-4
    tracks = {}
    for zz in (z - h, z, z + h):
        inv = invert_initial(fam, zz)
        cd = critical_point(inv, fx)
        tracks[zz] = (inv, cd, track_shock(inv, fx, cd, t_end=cd.t_star + 0.5))
    inv, cd, track = tracks[z]
    sens = shock_sensitivity(inv, fx, track)
    for s in (0.05, 0.2, 0.4):
        v1, v2, _ = sens.at(cd.t_star + s)
        fd1 = (tracks[z + h][2].at(tracks[z + h][1].t_star + s)[0]
               - tracks[z - h][2].at(tracks[z - h][1].t_star + s)[0]) / (2 * h)
        fd2 = (tracks[z + h][2].at(tracks[z + h][1].t_star + s)[1]
               - tracks[z - h][2].at(tracks[z - h][1].t_star + s)[1]) / (2 * h)
        assert v1 == pytest.approx(fd1, rel=2e-4, abs=1e-7)
        assert v2 == pytest.approx(fd2, rel=2e-4, abs=1e-7)


def test_center_sensitivity_matches_track_differencing(cubic_flux):
    # the reported center sensitivity subtracts the emergence-ray drift
    # F''(u*) dz_u* s from the raw dz of the center at fixed s
    fam = perturbed_logistic()
    fx = cubic_flux
    z, h = 0.2, 1e-4
    tracks = {}
    for zz in (z - h, z, z + h):
        inv = invert_initial(fam, zz)
        cd = critical_point(inv, fx)
        tracks[zz] = (inv, cd, track_shock(inv, fx, cd, t_end=cd.t_star + 0.5))
    inv, cd, track = tracks[z]
    sens = shock_sensitivity(inv, fx, track)
    d2F_star = float(fx.d2F(cd.u_star))
    for s in (0.05, 0.2, 0.4):
        m = sens.at(cd.t_star + s)[2]
        fd = (tracks[z + h][2].at(tracks[z + h][1].t_star + s)[2]
              - tracks[z - h][2].at(tracks[z - h][1].t_star + s)[2]) / (2 * h)
        assert m == pytest.approx(fd - d2F_star * sens.dz_ustar * s, rel=2e-4, abs=1e-7)
