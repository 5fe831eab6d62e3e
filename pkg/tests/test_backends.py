"""Backend selection and numba/numpy kernel parity."""
import numpy as np
import pytest

import cayleylab as cl
from cayleylab import _backend
from cayleylab._kernels import HAVE_NUMBA, series_smax_dense, series_smax_gather


def test_env_flag_resolution(monkeypatch):
    monkeypatch.setenv(_backend.ENV_VAR, "numpy")
    assert _backend._resolve() == "numpy"
    monkeypatch.setenv(_backend.ENV_VAR, "auto")
    assert _backend._resolve() == ("numba" if HAVE_NUMBA else "numpy")
    monkeypatch.delenv(_backend.ENV_VAR)
    assert _backend._resolve() == ("numba" if HAVE_NUMBA else "numpy")
    monkeypatch.setenv(_backend.ENV_VAR, "nonsense")
    with pytest.raises(ValueError):
        _backend._resolve()


def test_numba_mode_requires_numba(monkeypatch):
    monkeypatch.setenv(_backend.ENV_VAR, "numba")
    if HAVE_NUMBA:
        assert _backend._resolve() == "numba"
    else:
        with pytest.raises(ImportError):
            _backend._resolve()


@pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")
@pytest.mark.parametrize("complex_coeffs", [False, True])
def test_kernel_parity_on_series(complex_coeffs, group):
    G = group("alt:4")
    R = cl.RegularRep(G)
    rng = np.random.default_rng(2)
    x = rng.standard_normal(G.n)
    if complex_coeffs:
        x = x + 1j * rng.standard_normal(G.n)
    a = series_smax_gather(x, R.act, R.ginv_act, 1e-10, 10_000)
    b = series_smax_dense(x, R.div_table, 1e-10, 10_000)
    ref = np.linalg.svd(x[R.div_table], compute_uv=False)[0]
    assert abs(a - b) < 1e-9 * ref
    assert abs(a - ref) < 1e-6 * ref


@pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")
def test_backend_switch_changes_path(monkeypatch, group):
    G = group("cyclic:8")
    S = cl.GaussianSeries.real_cayley(G)
    monkeypatch.setattr(_backend, "ACTIVE", "numba")
    a = cl.sample_norms(S, 8, "direct_real", 13)
    monkeypatch.setattr(_backend, "ACTIVE", "numpy")
    b = cl.sample_norms(S, 8, "direct_real", 13)
    assert np.allclose(a, b, rtol=1e-9)


def test_gather_matvec_matches_dense(group):
    from cayleylab._kernels import gather_accumulate

    G = group("dihedral:4")
    R = cl.RegularRep(G)
    rng = np.random.default_rng(4)
    x = rng.standard_normal(G.n) + 1j * rng.standard_normal(G.n)
    v = rng.standard_normal(G.n) + 1j * rng.standard_normal(G.n)
    out = np.empty(G.n, dtype=complex)
    got = gather_accumulate(np.ascontiguousarray(x), R.ginv_act, v, out)
    want = x[R.div_table] @ v
    assert np.allclose(got, want, atol=1e-12)