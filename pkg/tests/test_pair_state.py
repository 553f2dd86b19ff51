import numpy as np
import pytest

from entangled_gup import kernels
from entangled_gup.errors import GridError, StateFormatError
from entangled_gup.pair_state import (
    GridSpec,
    PairState,
    check_inequalities,
    load_state,
    make_correlated_gaussian,
    make_product_state,
    make_random_state,
    moments,
    qcf,
    save_state,
)


def test_grid_spec_checks():
    with pytest.raises(GridError, match="power of two"):
        GridSpec(-1, 1, 100)
    with pytest.raises(GridError):
        GridSpec(1, -1, 128)
    g = GridSpec(-8.0, 8.0, 128)
    assert g.dx == 0.125
    assert g.x[0] == -8.0 and g.x[-1] == 8.0 - 0.125
    w = g.widened()
    assert w.dx == g.dx and w.n == 256


def test_product_state_moments_exact(grid):
    s = make_product_state(grid, center1=1.0, sigma1=1.5, k1=0.7, center2=-2.0, sigma2=0.8, k2=-1.1, hbar=2.0)
    m = moments(s)
    assert m.mean_q1 == pytest.approx(1.0, abs=1e-12)
    assert m.mean_q2 == pytest.approx(-2.0, abs=1e-12)
    assert m.var_q1 == pytest.approx(2.25, rel=1e-12)
    assert m.var_q2 == pytest.approx(0.64, rel=1e-12)
    assert m.mean_p1 == pytest.approx(1.4, rel=1e-12)
    assert m.mean_p2 == pytest.approx(-2.2, rel=1e-12)
    # minimum-uncertainty packets: dp = hbar / (2 sigma)
    assert m.var_p1 == pytest.approx((2.0 / 3.0) ** 2, rel=1e-12)
    assert m.var_p2 == pytest.approx(1.25 ** 2, rel=1e-12)
    cq, cp = qcf(s)
    assert abs(cq) <= 1e-10 and abs(cp) <= 1e-10


@pytest.mark.parametrize("sp,sm", [(2.0, 1.0), (0.5, 3.0), (1.3, 1.3)])
def test_correlated_gaussian_oracle(grid, sp, sm):
    s = make_correlated_gaussian(grid, sp, sm)
    cq, cp = qcf(s)
    m = moments(s)
    assert m.var_q1 == pytest.approx((sp ** 2 + sm ** 2) / 2, rel=1e-10)
    assert cq == pytest.approx((sp ** 2 - sm ** 2) / 2, rel=1e-6, abs=1e-12)
    assert cp == pytest.approx((1 / sp ** 2 - 1 / sm ** 2) / 8, rel=1e-6, abs=1e-12)


def test_correlated_gaussian_carrier(grid):
    s = make_correlated_gaussian(grid, 2.0, 1.0, k_total=1.5, hbar=0.5)
    m = moments(s)
    assert m.mean_p1 == pytest.approx(0.375, rel=1e-12)
    assert m.mean_p2 == pytest.approx(0.375, rel=1e-12)


def test_swap_exchanges_particles(grid):
    s = make_random_state(grid, np.random.default_rng(3), symmetric=False)
    a, b = moments(s), moments(s.swapped())
    assert b.var_q1 == pytest.approx(a.var_q2, rel=1e-13)
    assert b.mean_p2 == pytest.approx(a.mean_p1, rel=1e-12, abs=1e-14)
    assert qcf(s.swapped()) == pytest.approx(qcf(s), rel=1e-12, abs=1e-15)


def test_symmetric_states_share_marginals(grid):
    s = make_random_state(grid, np.random.default_rng(5))
    r = check_inequalities(s)
    assert r.symmetric
    assert r.dq1 == pytest.approx(r.dq2, rel=1e-12)
    assert r.symmetric_ok


def test_inequalities_on_random_states(grid):
    rng = np.random.default_rng(11)
    for _ in range(8):
        r = check_inequalities(make_random_state(grid, rng, symmetric=bool(rng.integers(2))))
        assert r.all_ok, r.diagnostics
        assert min(r.dq1 * r.dp1, r.dq2 * r.dp2) >= 0.5 - 1e-8


def test_asymmetric_state_skips_symmetric_bound(grid):
    r = check_inequalities(make_product_state(grid, sigma1=1.0, sigma2=2.0))
    assert not r.symmetric
    assert r.symmetric_ok is None
    assert r.all_ok


def test_grid_refinement_converges():
    coarse = make_correlated_gaussian(GridSpec(-32.0, 32.0, 512), 2.0, 1.0)
    fine = make_correlated_gaussian(GridSpec(-32.0, 32.0, 1024), 2.0, 1.0)
    assert np.allclose(moments(coarse), moments(fine), rtol=1e-8, atol=1e-12)
    assert np.allclose(qcf(coarse), qcf(fine), rtol=1e-8, atol=1e-12)


def test_too_narrow_grid_reports_wider_one():
    with pytest.raises(GridError, match="x_min=-16, x_max=16, n=256"):
        make_product_state(GridSpec(-8.0, 8.0, 128), sigma1=2.0, sigma2=2.0)


def test_too_coarse_grid_reports_resolution():
    with pytest.raises(GridError, match="increase n to at least 128"):
        make_product_state(GridSpec(-32.0, 32.0, 64), sigma1=0.2, sigma2=0.2)


def test_unnormalized_amplitudes_rejected(small_grid):
    good = make_product_state(small_grid)
    with pytest.raises(GridError, match="normalized"):
        PairState(small_grid, 2.0 * good.amplitudes)
    with pytest.raises(GridError, match="shape"):
        PairState(small_grid, np.zeros((4, 4)))


def test_save_load_round_trip(tmp_path, small_grid):
    s = make_random_state(small_grid, np.random.default_rng(7), hbar=0.75, center_range=1.0, width_range=(0.5, 1.5))
    path = tmp_path / "pair.bin"
    save_state(s, path)
    back = load_state(path)
    assert back.grid == s.grid
    assert back.hbar == 0.75
    assert np.array_equal(back.amplitudes, s.amplitudes)
    head = path.read_bytes()[:64]
    assert head.startswith(b"ENTGUP-PAIRSTATE 1\nn=256 x_min=-24.0 x_max=24.0 hbar=0.75\n")


def test_load_rejects_bad_files(tmp_path, small_grid):
    bad = tmp_path / "bad.bin"
    bad.write_bytes(b"NOTASTATE 1\n")
    with pytest.raises(StateFormatError, match="bad magic"):
        load_state(bad)
    path = tmp_path / "short.bin"
    save_state(make_product_state(small_grid), path)
    path.write_bytes(path.read_bytes()[:-16])
    with pytest.raises(StateFormatError):
        load_state(path)


def test_grid_moment_kernels_agree(rng):
    rho = rng.random((96, 128))
    a1, a2 = np.linspace(-3, 3, 96), np.linspace(-1, 5, 128)
    fast = kernels._grid_moments_numba(rho, a1, a2)
    slow = kernels._grid_moments_numpy(rho, a1, a2)
    assert np.allclose(fast, slow, rtol=1e-12, atol=1e-14)
    w = rho / rho.sum()
    m1 = (w.sum(axis=1) * a1).sum()
    assert fast[1] == pytest.approx(m1, rel=1e-12)


def test_pairwise_sum_paths(rng):
    v = rng.normal(size=1001)
    assert kernels._pairwise_sum_numba(v) == pytest.approx(kernels._pairwise_sum_numpy(v), rel=1e-13, abs=1e-12)
    assert kernels.pairwise_sum(np.array([])) == 0.0
