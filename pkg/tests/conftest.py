import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from shockshift import (SolverConfig, advance_to, base_problem,
                        critical_point, invert_initial, perturbed_problem,
                        sample_initial, track_shock)


@pytest.fixture(scope="session")
def base():
    """Base problem with its inverse data, critical point and a long track."""
    spec = base_problem()
    inv = invert_initial(spec.init, 0.0)
    cd = critical_point(inv, spec.flux)
    track = track_shock(inv, spec.flux, cd, t_end=4.2)
    return spec, inv, cd, track


@pytest.fixture(scope="session")
def perturbed():
    return perturbed_problem()


@pytest.fixture(scope="session")
def base_weno_22(base):
    """Base-problem WENO field at t=2.2 on the production grid."""
    spec, _, _, _ = base
    f0 = sample_initial(spec, 0.0, 1500)
    field, _ = advance_to(f0, spec.flux, SolverConfig(cfl=0.4, nx=1500), 2.2)
    return field
