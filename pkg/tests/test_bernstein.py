import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bernlike.bernstein import BernsteinPoly, raise_one_minus_z, raise_z, recursion_step

coeff_lists = st.lists(st.floats(-10, 10), min_size=1, max_size=12)


def monomial_eval(mono, z):
    return sum(c * z**j for j, c in enumerate(mono))


class TestBernsteinPoly:
    def test_length_invariant(self):
        with pytest.raises(ValueError):
            BernsteinPoly(3, (1.0, 2.0))

    @given(coeff_lists)
    def test_endpoints(self, coeffs):
        p = BernsteinPoly.from_coeffs(coeffs)
        assert p(0.0) == coeffs[0]
        assert p(1.0) == coeffs[-1]

    def test_from_monomial(self):
        mono = (0.3, -1.2, 2.0, 0.5)
        p = BernsteinPoly.from_monomial(mono, degree=6)
        for z in np.linspace(0, 1, 7):
            assert p(z) == pytest.approx(monomial_eval(mono, z), abs=1e-14)

    def test_derivative(self):
        mono = (1.0, 2.0, -3.0, 4.0)
        d = BernsteinPoly.from_monomial(mono).derivative()
        for z in (0.0, 0.3, 1.0):
            assert d(z) == pytest.approx(2 - 6 * z + 12 * z * z, abs=1e-13)

    def test_array_evaluation(self):
        p = BernsteinPoly.from_coeffs([1.0, -2.0, 0.5])
        z = np.linspace(0, 1, 5)
        assert np.allclose(p(z), [p(float(t)) for t in z], atol=0)

    @given(coeff_lists, st.floats(0, 1))
    def test_products(self, coeffs, z):
        p = BernsteinPoly.from_coeffs(coeffs)
        assert p.times_z()(z) == pytest.approx(z * p(z), abs=1e-11)
        assert p.times_one_minus_z()(z) == pytest.approx((1 - z) * p(z), abs=1e-11)

    def test_recursion_step_matches_products(self):
        rng = np.random.default_rng(1)
        c = rng.normal(size=(4, 4))
        nxt = recursion_step(c)
        for i in range(5):
            left = raise_one_minus_z(c[i]) if i < 4 else np.zeros(5)
            right = raise_z(c[i - 1]) if i >= 1 else np.zeros(5)
            assert np.allclose(nxt[i], left + right, atol=1e-15)

    def test_add_degree_mismatch(self):
        with pytest.raises(ValueError):
            BernsteinPoly.from_coeffs([1, 2]) + BernsteinPoly.from_coeffs([1, 2, 3])
