"""Backend parity: the compiled extension and the pure-Python fallback must
agree on every exported function."""

import math

import numpy as np
import pytest

from anafrac import _backend
from anafrac._backend import pure

compiled = pytest.importorskip(
    "anafrac._backend._fast", reason="compiled backend not built"
)


@pytest.fixture(autouse=True)
def restore_backend():
    before = _backend.BACKEND
    yield
    _backend.use_backend(before)


class TestParity:
    def test_gamma(self, rng):
        for x in rng.uniform(1e-3, 170.0, 3000):
            assert compiled.gammafn(x) == pytest.approx(pure.gammafn(x), rel=1e-14)
        for x in (-0.5, -2.5, 0.5, 13.0, 171.0):
            assert compiled.gammafn(x) == pytest.approx(pure.gammafn(x), rel=1e-14)

    def test_gamma_specials(self):
        assert math.isnan(compiled.gammafn(-3.0)) and math.isnan(pure.gammafn(-3.0))
        assert math.isinf(compiled.gammafn(200.0)) and math.isinf(pure.gammafn(200.0))

    def test_lngamma(self, rng):
        for x in rng.uniform(1e-3, 1e4, 2000):
            assert compiled.lngamma(x) == pytest.approx(pure.lngamma(x), rel=1e-14, abs=1e-13)

    def test_poch(self):
        for rho in (0.0, 0.5, 1.0, 3.7):
            for n in (0, 1, 5, 40):
                assert compiled.poch(rho, n) == pure.poch(rho, n)

    def test_ml3(self, rng):
        for _ in range(300):
            rho = rng.uniform(0.0, 3.0)
            beta = rng.uniform(0.2, 2.0)
            alpha = rng.uniform(0.2, 3.0)
            x = rng.uniform(-2.0, 3.0)
            vc, nc, tc = compiled.ml3(rho, beta, alpha, x, 1e-12, 10_000)
            vp, np_, tp = pure.ml3(rho, beta, alpha, x, 1e-12, 10_000)
            assert nc == np_
            assert vc == pytest.approx(vp, rel=1e-13, abs=1e-300)

    def test_series_sum(self, rng):
        coeffs = rng.uniform(-1.0, 1.0, 60)
        for u in rng.uniform(-0.9, 0.9, 50):
            assert compiled.series_sum(coeffs, u) == pytest.approx(
                pure.series_sum(coeffs, u), rel=1e-14, abs=1e-300
            )

    def test_series_sum_many(self, rng):
        coeffs = rng.uniform(-1.0, 1.0, 48)
        u = rng.uniform(0.0, 0.9, 33)
        out_c = np.empty_like(u)
        out_p = np.empty_like(u)
        compiled.series_sum_many(coeffs, u, out_c)
        pure.series_sum_many(coeffs, u, out_p)
        np.testing.assert_allclose(out_c, out_p, rtol=1e-14)

    def test_empty_coefficients(self):
        u = np.array([0.5, 1.0])
        for mod in (compiled, pure):
            out = np.ones_like(u)
            mod.series_sum_many(np.empty(0), u, out)
            np.testing.assert_array_equal(out, 0.0)


class TestSelection:
    def test_available(self):
        assert set(_backend.available_backends()) == {"pure", "compiled"}

    def test_switch_and_back(self):
        _backend.use_backend("pure")
        assert _backend.BACKEND == "pure"
        assert _backend.gammafn is pure.gammafn
        _backend.use_backend("compiled")
        assert _backend.gammafn is compiled.gammafn

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            _backend.use_backend("gpu")

    def test_operator_pipeline_on_pure_backend(self, one):
        # the full stack must run on the fallback too
        from anafrac.kernels import FractionalOrder, Interval, make_prabhakar_kernel
        from anafrac.operators import frac_integral_direct

        o = FractionalOrder(1.0, 1.0)
        k = make_prabhakar_kernel(1.0, 1.0, o)
        _backend.use_backend("pure")
        vp = frac_integral_direct(k, o, one, Interval(0.0, 1.0, 1.0)).value
        _backend.use_backend("compiled")
        vc = frac_integral_direct(k, o, one, Interval(0.0, 1.0, 1.0)).value
        assert vp == pytest.approx(vc, rel=1e-13)
        assert vp == pytest.approx(math.e - 1.0, rel=1e-11)
