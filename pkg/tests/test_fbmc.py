import numpy as np
import numpy.testing as npt
import pytest

from wavelab import InvalidArgument
from wavelab.fbmc import (Signal, analyze, check_phase_pattern, default_phase,
                          oqam_destagger_scheme1, oqam_destagger_scheme2,
                          oqam_stagger_scheme1, oqam_stagger_scheme2,
                          synthesize)
from wavelab.filters import make_filter

from oracles import analyze_inner_products, eq1_triple_loop

F0 = 15e3


class TestPhasePattern:
    def test_corner_values(self):
        th = default_phase(4, 4)
        assert th[0, 0] == 1
        assert th[1, 2] == pytest.approx(-1j)
        assert th[1, 0] == pytest.approx(1j)
        assert th[2, 0] == pytest.approx(-1)

    @pytest.mark.parametrize("M,N", [(1, 1), (4, 4), (7, 3), (64, 30)])
    def test_default_passes_adjacency(self, M, N):
        check_phase_pattern(default_phase(M, N))

    def test_rejects_non_axis_entries(self):
        bad = default_phase(3, 3).astype(complex)
        bad[1, 1] = np.exp(1j * 0.3)
        with pytest.raises(InvalidArgument):
            check_phase_pattern(bad)

    def test_rejects_broken_adjacency(self):
        with pytest.raises(InvalidArgument):
            check_phase_pattern(np.ones((3, 3), complex))

    def test_bad_size(self):
        with pytest.raises(InvalidArgument):
            default_phase(0, 4)


class TestSynthesize:
    def test_zero_grid(self):
        f = make_filter("hermite", 8)
        x = np.zeros((8, 5))
        s = synthesize(x, default_phase(8, 5), f, F0)
        assert np.all(s.samples == 0)
        assert s.sample_rate == 8 * F0
        # N-1 hops plus the full filter length
        assert len(s) == (5 - 1) * f.hop + f.taps.size
        assert s.start == f.center_offset

    def test_single_symbol_is_one_modulated_pulse(self):
        M, N, m0, n0 = 8, 3, 2, 1
        f = make_filter("hermite", M)
        th = default_phase(M, N)
        x = np.zeros((M, N))
        x[m0, n0] = 1.0
        s = synthesize(x, th, f, F0)

        ML, H, Lp = M, M // 2, f.taps.size
        r = (H - 1) / 2
        o_n = n0 * H + f.center_offset
        k = o_n + np.arange(Lp)
        expected = np.zeros(len(s), complex)
        expected[o_n - s.start : o_n - s.start + Lp] = (
            th[m0, n0] * f.taps * np.exp(2j * np.pi * m0 * (k - r) / ML)
        )
        npt.assert_allclose(s.samples, expected, atol=1e-12)

    def test_matches_triple_loop_oracle(self):
        rng = np.random.default_rng(8)
        M, N = 8, 6
        f = make_filter("hermite", M, K=4, L_os=1)
        x = rng.normal(size=(M, N))
        th = default_phase(M, N)
        s = synthesize(x, th, f, F0)
        ref, ref_start = eq1_triple_loop(x, th, f.taps, f.L_os)
        assert ref_start == s.start
        npt.assert_allclose(s.samples, ref, atol=1e-10)

    def test_matches_triple_loop_oversampled(self):
        rng = np.random.default_rng(9)
        M, N, L_os = 4, 5, 4
        f = make_filter("phydyas", M, K=4, L_os=L_os)
        x = rng.normal(size=(M, N))
        th = default_phase(M, N)
        s = synthesize(x, th, f, F0)
        ref, ref_start = eq1_triple_loop(x, th, f.taps, L_os)
        assert ref_start == s.start
        npt.assert_allclose(s.samples, ref, atol=1e-10)
        assert s.sample_rate == M * F0 * L_os

    def test_linear_in_x(self):
        rng = np.random.default_rng(10)
        M, N = 16, 4
        f = make_filter("iota", M)
        th = default_phase(M, N)
        x1, x2 = rng.normal(size=(2, M, N))
        s12 = synthesize(x1 + x2, th, f, F0)
        s1 = synthesize(x1, th, f, F0)
        s2 = synthesize(x2, th, f, F0)
        npt.assert_allclose(s12.samples, s1.samples + s2.samples, atol=1e-10)

    def test_energy_equals_grid_energy(self):
        # real-orthogonal expansion preserves energy exactly
        rng = np.random.default_rng(11)
        M, N = 16, 40
        f = make_filter("hermite", M)
        x = rng.normal(size=(M, N))
        s = synthesize(x, default_phase(M, N), f, F0)
        e_sig = np.sum(np.abs(s.samples) ** 2)
        npt.assert_allclose(e_sig, np.sum(x**2), rtol=1e-8)
        # per-duration mean power, tails amortized over a long burst
        mean_power = e_sig / (N * f.hop)
        assert abs(mean_power - np.mean(x**2) * M / f.hop) < 0.02 * mean_power

    def test_validation(self):
        f = make_filter("hermite", 8)
        x = np.zeros((8, 4))
        with pytest.raises(InvalidArgument):
            synthesize(x, default_phase(8, 3), f, F0)
        with pytest.raises(InvalidArgument):
            synthesize(x + 0j, default_phase(8, 4), f, F0)
        with pytest.raises(InvalidArgument):
            synthesize(x, default_phase(8, 4), f, F0, T=1.0 / F0)
        # consistent T is accepted
        synthesize(x, default_phase(8, 4), f, F0, T=0.5 / F0)


class TestAnalyze:
    def test_zero_signal(self):
        f = make_filter("hermite", 8)
        th = default_phase(8, 4)
        n_need = 3 * f.hop + f.taps.size
        r = Signal(np.zeros(n_need, complex), 8 * F0, start=f.center_offset)
        y = analyze(r, th, f, F0)
        assert y.shape == (8, 4)
        assert np.all(y == 0)

    def test_matches_inner_product_oracle(self):
        rng = np.random.default_rng(12)
        M, N = 8, 4
        f = make_filter("phydyas", M)
        th = default_phase(M, N)
        n_need = (N - 1) * f.hop + f.taps.size
        sig = rng.normal(size=n_need) + 1j * rng.normal(size=n_need)
        r = Signal(sig, M * F0, start=f.center_offset)
        y = analyze(r, th, f, F0)
        ref = analyze_inner_products(sig, r.start, th, f.taps, f.L_os)
        npt.assert_allclose(y, ref, atol=1e-12)

    @pytest.mark.parametrize("kind", ["hermite", "phydyas", "iota", "rrc", "egf"])
    def test_loopback_real_orthogonality(self, kind):
        rng = np.random.default_rng(hash(kind) % 2**32)
        M, N = 16, 12
        f = make_filter(kind, M, K=4, L_os=1)
        th = default_phase(M, N)
        x = rng.normal(size=(M, N))
        y = analyze(synthesize(x, th, f, F0), th, f, F0)
        assert np.max(np.abs(y.real - x)) < 1e-8

    def test_loopback_rectangular(self):
        rng = np.random.default_rng(13)
        M, N = 16, 9
        f = make_filter("rectangular", M)
        th = default_phase(M, N)
        x = rng.normal(size=(M, N))
        y = analyze(synthesize(x, th, f, F0), th, f, F0)
        npt.assert_allclose(y.real, x, atol=1e-10)

    def test_loopback_oversampled(self):
        rng = np.random.default_rng(14)
        M, N = 8, 6
        f = make_filter("hermite", M, L_os=4)
        th = default_phase(M, N)
        x = rng.normal(size=(M, N))
        y = analyze(synthesize(x, th, f, F0), th, f, F0)
        assert np.max(np.abs(y.real - x)) < 1e-8

    def test_intrinsic_interference_is_imaginary(self):
        M, N, m0, n0 = 8, 9, 3, 4
        f = make_filter("hermite", M)
        th = default_phase(M, N)
        x = np.zeros((M, N))
        x[m0, n0] = 1.0
        y = analyze(synthesize(x, th, f, F0), th, f, F0)
        assert y[m0, n0].real == pytest.approx(1.0, abs=1e-8)
        neighbors = [(m0 - 1, n0), (m0 + 1, n0), (m0, n0 - 1), (m0, n0 + 1)]
        for m, n in neighbors:
            assert abs(y[m, n].real) < 1e-8
            assert abs(y[m, n].imag) > 0.01

    def test_signal_too_short(self):
        f = make_filter("hermite", 8)
        th = default_phase(8, 4)
        r = Signal(np.zeros(10, complex), 8 * F0, start=f.center_offset)
        with pytest.raises(InvalidArgument, match="signal too short"):
            analyze(r, th, f, F0)


class TestStaggering:
    def test_scheme1_split(self):
        npt.assert_array_equal(oqam_stagger_scheme1([[1 + 2j]]), [[1.0, 2.0]])

    def test_scheme2_split(self):
        npt.assert_array_equal(oqam_stagger_scheme2([[1 + 2j]]), [[1.0], [2.0]])

    def test_scheme1_real_input_zero_odd_slots(self):
        x = oqam_stagger_scheme1(np.ones((3, 4)))
        assert np.all(x[:, 1::2] == 0)
        assert np.all(x[:, 0::2] == 1)

    def test_scheme2_imag_input_zero_even_rows(self):
        x = oqam_stagger_scheme2(1j * np.ones((3, 4)))
        assert np.all(x[0::2, :] == 0)
        assert np.all(x[1::2, :] == 1)

    def test_elementwise_oracle(self):
        rng = np.random.default_rng(15)
        D = rng.normal(size=(4, 3)) + 1j * rng.normal(size=(4, 3))
        x1 = oqam_stagger_scheme1(D)
        x2 = oqam_stagger_scheme2(D)
        for mp in range(4):
            for np_ in range(3):
                assert x1[mp, 2 * np_] == D[mp, np_].real
                assert x1[mp, 2 * np_ + 1] == D[mp, np_].imag
                assert x2[2 * mp, np_] == D[mp, np_].real
                assert x2[2 * mp + 1, np_] == D[mp, np_].imag

    def test_round_trips(self):
        rng = np.random.default_rng(16)
        D = rng.normal(size=(5, 7)) + 1j * rng.normal(size=(5, 7))
        npt.assert_array_equal(oqam_destagger_scheme1(oqam_stagger_scheme1(D)), D)
        npt.assert_array_equal(oqam_destagger_scheme2(oqam_stagger_scheme2(D)), D)

    def test_destagger_dimension_checks(self):
        with pytest.raises(InvalidArgument):
            oqam_destagger_scheme1(np.zeros((4, 5)))
        with pytest.raises(InvalidArgument):
            oqam_destagger_scheme2(np.zeros((5, 4)))
