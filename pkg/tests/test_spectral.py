import numpy as np
import numpy.testing as npt
import pytest

from wavelab import InvalidArgument
from wavelab.spectral import dft, idft, dirichlet_f1, dirichlet_f2

from oracles import brute_dft, brute_idft, f1_direct, f2_direct


class TestDftPair:
    def test_all_ones(self):
        npt.assert_allclose(dft([1, 1, 1, 1]), [4, 0, 0, 0], atol=1e-12)

    def test_impulse_is_flat(self):
        e0 = np.zeros(8)
        e0[0] = 1.0
        npt.assert_allclose(dft(e0), np.ones(8), atol=1e-12)

    def test_idft_of_spike(self):
        npt.assert_allclose(idft([4, 0, 0, 0]), [1, 1, 1, 1], atol=1e-12)

    def test_matches_direct_sum_length8(self):
        rng = np.random.default_rng(11)
        v = rng.normal(size=8) + 1j * rng.normal(size=8)
        npt.assert_allclose(dft(v), brute_dft(v), atol=1e-12)
        npt.assert_allclose(idft(v), brute_idft(v), atol=1e-12)

    @pytest.mark.parametrize("L", [3, 6, 12, 31])
    def test_non_power_of_two_lengths(self, L):
        rng = np.random.default_rng(L)
        v = rng.normal(size=L) + 1j * rng.normal(size=L)
        npt.assert_allclose(dft(v), brute_dft(v), atol=1e-10)
        npt.assert_allclose(idft(v), brute_idft(v), atol=1e-10)

    @pytest.mark.parametrize("L", [1, 2, 5, 16, 100, 257, 1024, 4096])
    def test_parseval(self, L):
        rng = np.random.default_rng(L)
        v = rng.normal(size=L) + 1j * rng.normal(size=L)
        V = dft(v)
        npt.assert_allclose(np.sum(np.abs(V) ** 2) / L,
                            np.sum(np.abs(v) ** 2), rtol=1e-10)

    @pytest.mark.parametrize("L", [4, 7, 64])
    def test_round_trip(self, L):
        rng = np.random.default_rng(100 + L)
        v = rng.normal(size=L) + 1j * rng.normal(size=L)
        npt.assert_allclose(idft(dft(v)), v, atol=1e-10)
        npt.assert_allclose(dft(idft(v)), v, atol=1e-10)

    def test_linearity(self):
        rng = np.random.default_rng(5)
        a, b = rng.normal(size=16), rng.normal(size=16)
        ca, cb = 2.5 - 1j, 0.25 + 3j
        npt.assert_allclose(dft(ca * a + cb * b), ca * dft(a) + cb * dft(b),
                            atol=1e-12)

    def test_empty_input_rejected(self):
        with pytest.raises(InvalidArgument):
            dft([])
        with pytest.raises(InvalidArgument):
            idft(np.array([]))

    def test_non_finite_rejected(self):
        with pytest.raises(InvalidArgument):
            dft([1.0, np.nan])
        with pytest.raises(InvalidArgument):
            idft([np.inf, 0.0])

    def test_matrix_rejected(self):
        with pytest.raises(InvalidArgument):
            dft(np.ones((2, 2)))


class TestDirichletKernels:
    def test_f1_at_zero(self):
        assert dirichlet_f1(0.0, 8, 15e3) == pytest.approx(8)

    def test_f1_first_null(self):
        # nulls at multiples of 1/(MF) away from the peaks
        assert abs(dirichlet_f1(1 / (4 * 15e3), 4, 15e3)) < 1e-12

    def test_f1_periodic_in_1_over_F(self):
        F = 15e3
        t = np.linspace(-2e-4, 2e-4, 37)
        npt.assert_allclose(dirichlet_f1(t + 1 / F, 8, F),
                            dirichlet_f1(t, 8, F), atol=1e-9)

    def test_f1_matches_direct_sum(self):
        rng = np.random.default_rng(3)
        F = 15e3
        for ti in rng.uniform(-1e-4, 1e-4, size=12):
            npt.assert_allclose(dirichlet_f1(ti, 16, F),
                                f1_direct(ti, 16, F), atol=1e-9)

    def test_f2_at_zero(self):
        assert dirichlet_f2(0.0, 8, 15e3) == pytest.approx(4)

    def test_f2_null(self):
        F = 15e3
        assert abs(dirichlet_f2(1 / (4 * F), 4, F)) < 1e-12

    def test_f2_periodic_in_1_over_2F(self):
        F = 15e3
        t = np.linspace(-1e-4, 1e-4, 29)
        npt.assert_allclose(dirichlet_f2(t + 1 / (2 * F), 16, F),
                            dirichlet_f2(t, 16, F), atol=1e-9)

    def test_f2_matches_direct_sum(self):
        rng = np.random.default_rng(4)
        F = 15e3
        for ti in rng.uniform(-1e-4, 1e-4, size=12):
            npt.assert_allclose(dirichlet_f2(ti, 16, F),
                                f2_direct(ti, 16, F), atol=1e-9)

    def test_bad_arguments(self):
        with pytest.raises(InvalidArgument):
            dirichlet_f1(0.0, 0, 15e3)
        with pytest.raises(InvalidArgument):
            dirichlet_f1(0.0, 4, 0.0)
        with pytest.raises(InvalidArgument):
            dirichlet_f2(0.0, 5, 15e3)
