"""End-to-end smoke tests for the python extension."""

import math

import numpy as np
import pytest

import gbo


@pytest.fixture
def grid():
    return gbo.Grid(64, 2.0 * math.pi)


def test_grid_layout(grid):
    assert grid.n == 64
    assert grid.dx == pytest.approx(2.0 * math.pi / 64)
    xi = grid.wavenumbers()
    assert xi[1] == pytest.approx(1.0)
    assert xi[-1] == pytest.approx(-1.0)


def test_forward_matches_numpy(grid):
    rng = np.random.default_rng(3)
    f = rng.standard_normal(64)
    coeffs = gbo.forward(grid, f)
    ref = np.fft.fft(f) / 64.0
    assert np.max(np.abs(coeffs - ref)) < 1e-13


def test_roundtrip_real(grid):
    x = grid.nodes()
    f = np.cos(3.0 * x) + 0.25 * np.sin(7.0 * x)
    back = gbo.inverse(grid, gbo.forward(grid, f), real=True)
    assert back.dtype == np.float64
    assert np.max(np.abs(back - f)) < 1e-13


def test_hilbert_and_derivative(grid):
    x = grid.nodes()
    assert np.max(np.abs(gbo.hilbert(grid, np.cos(2 * x)) - np.sin(2 * x))) < 1e-12
    assert np.max(np.abs(gbo.derivative(grid, np.sin(x)) - np.cos(x))) < 1e-12


def test_projections_split_identity(grid):
    f = gbo.random_packets(grid, seed=5)
    total = gbo.project_pos(grid, f) + gbo.project_neg(grid, f)
    assert np.max(np.abs(np.asarray(total) - f)) < 1e-12


def test_free_propagate_unitary(grid):
    f = gbo.random_packets(grid, seed=8)
    g = gbo.free_propagate(grid, f, t=0.3)
    assert np.linalg.norm(g) == pytest.approx(np.linalg.norm(f), rel=1e-12)


def test_paraproduct_flux_identity():
    grid = gbo.Grid(256, 32.0 * math.pi)
    u = gbo.random_packets(grid, seed=21)
    k = 3
    lhs = gbo.paraproduct(grid, u, u, k) - gbo.nonlinear_remainder(grid, u, k)
    rhs = gbo.derivative(grid, gbo.dealiased_power(grid, u, k + 1))
    scale = np.max(np.abs(rhs))
    assert np.max(np.abs(lhs - rhs)) < 1e-10 * scale


def test_critical_index_and_admissibility():
    assert gbo.critical_index(4) == pytest.approx(0.25)
    assert gbo.critical_index(3) == pytest.approx(1.0 / 6.0)
    assert gbo.is_admissible(0.5, math.inf, 2.0)
    assert not gbo.is_admissible(0.3, 3.0, 2.0)


def test_sobolev_norm_single_mode():
    grid = gbo.Grid(128, 4.0 * math.pi)
    x = grid.nodes()
    f = np.cos(4.0 * x)
    want = 4.0**0.5 * math.sqrt(grid.period / 2.0)
    assert gbo.sobolev_norm(grid, f, s=0.5) == pytest.approx(want, rel=1e-12)


def test_solver_conserves_l2():
    grid = gbo.Grid(256, 32.0 * math.pi)
    u0 = gbo.standard_bump(grid, 0.25)
    out = gbo.solve(grid, u0, k=4, T=0.1, dt=1e-3, stride=10)
    assert out["l2_drift"] < 1e-10
    assert out["frames"].shape == (11, 256)


def test_picard_small_data_converges():
    grid = gbo.Grid(256, 32.0 * math.pi)
    u0 = gbo.standard_bump(grid, 0.1)
    rep = gbo.picard(grid, u0, k=4, T=0.05, nodes=48, tol=1e-9)
    assert rep["converged"]
    assert rep["contraction_factor"] < 0.5
    assert 0.0 <= rep["gbo_sup_l2_diff"] < 1e-6
    assert rep["frames"].shape == (49, 256)


def test_field_file_roundtrip(tmp_path):
    grid = gbo.Grid(64, 2.0 * math.pi)
    f = gbo.random_packets(grid, seed=13)
    path = str(tmp_path / "u0.gbf")
    gbo.write_field(path, grid, f)
    grid2, back = gbo.read_field(path)
    assert grid2.n == grid.n and grid2.period == grid.period
    assert np.array_equal(back, f)


def test_mixed_norm_matches_numpy():
    grid = gbo.Grid(64, 2.0 * math.pi)
    frames = np.vstack([gbo.random_packets(grid, seed=4, trial=t) for t in range(5)])
    got = gbo.mixed_norm(grid, frames, t0=0.0, dt=0.1, p=math.inf, q=math.inf)
    assert got == pytest.approx(np.max(np.abs(frames)), rel=1e-12)


def test_domain_errors_surface_as_python_exceptions():
    with pytest.raises(ValueError):
        gbo.Grid(100, 1.0)
    with pytest.raises(ValueError):
        gbo.critical_index(0)
