"""AWGN, tapped-delay-line fading, effective lattice coefficients, equalizers.

Tap gain generation:
  - max_doppler > 0: per-tap sum of 64 complex sinusoids with classical
    Jakes frequencies f_d*cos(2 pi u_i), u_i uniform, seeded.  Mean tap
    power equals the profile power; the process is wide-sense stationary.
  - max_doppler == 0: a single random unit-modulus phasor per tap (a static
    snapshot; magnitudes are NOT Rayleigh-drawn so a one-tap channel is a
    pure phase rotation, which pins the loopback examples).

Delays are rounded to the sample grid; the rounding error per tap is
recorded on the realization.  Equalization follows the single-tap MMSE with
a per-slot unbiasing factor; the ratio rho = P_noise / P_signal references
mean transmitted sample power, with P_noise per complex sample.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateChannel, InvalidArgument
from .fbmc import Signal

__all__ = [
    "ChannelProfile",
    "ChannelRealization",
    "awgn_profile",
    "pedestrian_a",
    "vehicular_a",
    "custom_profile",
    "apply_awgn",
    "apply_tdl",
    "effective_coefficients",
    "ofdm_effective_coefficients",
    "mmse_coefficients",
    "mmse_equalize",
]

_N_OSC = 64


@dataclass(frozen=True)
class ChannelProfile:
    name: str
    tap_delays: tuple  # seconds
    tap_powers_db: tuple
    max_doppler: float
    seed: int = 0

    def __post_init__(self):
        d = np.asarray(self.tap_delays, float)
        if d.size == 0 or np.any(d < 0) or np.any(np.diff(d) <= 0):
            raise InvalidArgument("tap delays must be non-negative and strictly increasing")
        if len(self.tap_delays) != len(self.tap_powers_db):
            raise InvalidArgument("tap delay and power lists differ in length")
        if self.max_doppler < 0:
            raise InvalidArgument("max_doppler must be >= 0")

    @property
    def tap_powers_linear(self):
        """Linear powers, normalized to sum to one."""
        p = 10.0 ** (np.asarray(self.tap_powers_db, float) / 10.0)
        return p / p.sum()


def awgn_profile():
    return ChannelProfile("awgn", (0.0,), (0.0,), 0.0)


def pedestrian_a(max_doppler=5.0, seed=0):
    """ITU-R M.1225 Pedestrian A power-delay profile."""
    return ChannelProfile(
        "pedestrian_a",
        (0.0, 110e-9, 190e-9, 410e-9),
        (0.0, -9.7, -19.2, -22.8),
        max_doppler,
        seed,
    )


def vehicular_a(max_doppler=185.0, seed=0):
    """ITU-R M.1225 Vehicular A power-delay profile."""
    return ChannelProfile(
        "vehicular_a",
        (0.0, 310e-9, 710e-9, 1090e-9, 1730e-9, 2510e-9),
        (0.0, -1.0, -9.0, -10.0, -15.0, -20.0),
        max_doppler,
        seed,
    )


def custom_profile(delays_ns, powers_db, max_doppler, seed=0, name="custom"):
    return ChannelProfile(
        name, tuple(1e-9 * d for d in delays_ns), tuple(powers_db), float(max_doppler), seed
    )


@dataclass(frozen=True)
class ChannelRealization:
    tap_gains: np.ndarray = field(repr=False)  # (n_taps, n_samples) at signal rate
    delays_samples: tuple
    delay_rounding: tuple  # seconds of rounding error per tap
    sample_rate: float
    start: int  # absolute sample index of column 0 (matches the input signal)


def apply_awgn(s, snr_db=None, rng=None):
    """Add circular complex Gaussian noise at the requested per-sample SNR.

    snr_db=None means noiseless passthrough.  Returns (r, noise_power).
    """
    if snr_db is None:
        return s, 0.0
    power = float(np.mean(np.abs(s.samples) ** 2))
    if power == 0.0:
        raise InvalidArgument("SNR is undefined for an all-zero signal")
    rng = rng if rng is not None else np.random.default_rng()
    p_noise = power / (10.0 ** (snr_db / 10.0))
    scale = np.sqrt(p_noise / 2.0)
    noise = scale * (
        rng.standard_normal(s.samples.size) + 1j * rng.standard_normal(s.samples.size)
    )
    return Signal(s.samples + noise, s.sample_rate, s.start), p_noise


def _tap_gain_series(profile, n_samples, fs, rng):
    powers = profile.tap_powers_linear
    n_taps = powers.size
    gains = np.empty((n_taps, n_samples), complex)
    t = np.arange(n_samples) / fs
    for k in range(n_taps):
        if profile.max_doppler == 0.0:
            gains[k] = np.sqrt(powers[k]) * np.exp(2j * np.pi * rng.random())
        else:
            freqs = profile.max_doppler * np.cos(2 * np.pi * rng.random(_N_OSC))
            phases = 2 * np.pi * rng.random(_N_OSC)
            osc = np.exp(1j * (2 * np.pi * freqs[:, None] * t[None, :] + phases[:, None]))
            gains[k] = np.sqrt(powers[k] / _N_OSC) * osc.sum(axis=0)
    return gains


def apply_tdl(s, profile, rng=None):
    """r[i] = sum_k g_k[i] * s[i - d_k]; returns (r, ChannelRealization)."""
    fs = s.sample_rate
    delays = np.asarray(profile.tap_delays, float)
    d_samples = np.round(delays * fs).astype(int)
    rounding = tuple(delays - d_samples / fs)
    d_max = int(d_samples.max())
    if d_max >= len(s):
        raise InvalidArgument("max tap delay exceeds the signal length")
    rng = rng if rng is not None else np.random.default_rng(profile.seed)
    n_out = len(s) + d_max
    gains = _tap_gain_series(profile, n_out, fs, rng)
    out = np.zeros(n_out, complex)
    for k, d in enumerate(d_samples):
        out[d : d + len(s)] += gains[k, d : d + len(s)] * s.samples
    realization = ChannelRealization(
        tap_gains=gains,
        delays_samples=tuple(int(d) for d in d_samples),
        delay_rounding=rounding,
        sample_rate=fs,
        start=s.start,
    )
    return Signal(out, fs, s.start), realization


def _averaged_gains(realization, window_starts, weights):
    """Per-tap gains averaged over each window with the given weights."""
    gains = realization.tap_gains
    n_taps = gains.shape[0]
    n_win = len(window_starts)
    g_bar = np.empty((n_taps, n_win), complex)
    width = weights.size
    for i, w0 in enumerate(window_starts):
        col = w0 - realization.start
        lo, hi = max(col, 0), min(col + width, gains.shape[1])
        seg = gains[:, lo:hi]
        wseg = weights[lo - col : lo - col + seg.shape[1]]
        g_bar[:, i] = seg @ wseg / wseg.sum()
    return g_bar


def effective_coefficients(realization, filt, N):
    """Genie lattice coefficients h'[m, n] for an FBMC grid.

    Tap gains are averaged over slot n's pulse window with p^2 weights, then
    h'[m, n] = sum_k g_bar[k, n] exp(-j 2 pi m d_k / (M L_os)).
    """
    M, H = filt.M, filt.hop
    ML = M * filt.L_os
    starts = [n * H + filt.center_offset for n in range(N)]
    g_bar = _averaged_gains(realization, starts, filt.taps**2)
    m = np.arange(M)
    phase = np.exp(
        -2j * np.pi * np.outer(m, np.asarray(realization.delays_samples)) / ML
    )
    return phase @ g_bar


def ofdm_effective_coefficients(realization, M, Nsym, L_os=1, cp=0):
    """Genie subcarrier coefficients per OFDM/SC-FDMA symbol (uniform FFT window)."""
    ML = M * L_os
    starts = [cp + i * (ML + cp) for i in range(Nsym)]
    g_bar = _averaged_gains(realization, starts, np.full(ML, 1.0 / ML))
    m = np.arange(M)
    phase = np.exp(
        -2j * np.pi * np.outer(m, np.asarray(realization.delays_samples)) / ML
    )
    return phase @ g_bar


def mmse_coefficients(h_eff, rho):
    """Single-tap MMSE weights with the per-slot unbiasing factor.

    v[m, n] = h*/( |h|^2 + rho ) * M / sum_m |h|^2/(|h|^2 + rho);  rho = 0
    reduces to zero-forcing with unit unbiasing.
    """
    h = np.asarray(h_eff, complex)
    if h.ndim != 2:
        raise InvalidArgument("h_eff must be M x N")
    if rho < 0:
        raise InvalidArgument("noise-to-signal ratio must be >= 0")
    h2 = np.abs(h) ** 2
    col_zero = ~np.any(h2 > 0, axis=0)
    if np.any(col_zero):
        raise DegenerateChannel(f"all-zero channel column(s): {np.nonzero(col_zero)[0].tolist()}")
    if rho == 0.0:
        with np.errstate(divide="ignore", invalid="ignore"):
            v = np.where(h2 > 0, np.conj(h) / np.where(h2 > 0, h2, 1.0), 0.0)
        return v
    shrink = h2 / (h2 + rho)
    unbias = h.shape[0] / shrink.sum(axis=0, keepdims=True)
    return np.conj(h) / (h2 + rho) * unbias


def mmse_equalize(y, h_eff, P_s, P_omega):
    """x' = Re{y * v}: equalize the lattice and project back to the real field."""
    y = np.asarray(y, complex)
    if y.shape != np.shape(h_eff):
        raise InvalidArgument("y and h_eff shapes differ")
    if P_s <= 0 or P_omega < 0:
        raise InvalidArgument("P_s must be > 0 and P_omega >= 0")
    v = mmse_coefficients(h_eff, P_omega / P_s)
    return (y * v).real
