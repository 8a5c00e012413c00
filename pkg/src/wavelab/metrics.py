"""PAPR, CCDF, PSD and Monte Carlo BER measurement.

PAPR windows: one subcarrier period of the oversampled signal (M*L_os
samples), non-overlapping, with the mean power taken per window.  The same
window applies to every waveform so the CCDF curves are comparable.

BER campaigns stop per SNR point when either the error budget is met or the
bit budget is exhausted.  Trials are seeded by SeedSequence((seed, point,
trial)) and merged in trial order in fixed-size batches, so the outcome is
identical for any worker count.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.signal import welch
from scipy.special import erfc

from .errors import InvalidArgument
from .fbmc import Signal

__all__ = [
    "papr_db",
    "ccdf",
    "ccdf_crossing",
    "psd_welch",
    "qfunc",
    "ber_qpsk_awgn",
    "wilson_interval",
    "ber_campaign",
    "CurveResult",
]


def _samples_of(s):
    return s.samples if isinstance(s, Signal) else np.asarray(s)


def papr_db(s, window):
    """Per-window PAPR in dB plus bookkeeping metadata.

    Windows with zero power are skipped and counted in the metadata rather
    than producing infinities.
    """
    x = _samples_of(s)
    if window < 1:
        raise InvalidArgument(f"window must be >= 1, got {window}")
    n_win = x.size // window
    if n_win == 0:
        raise InvalidArgument("signal shorter than one window")
    power = np.abs(x[: n_win * window].reshape(n_win, window)) ** 2
    mean = power.mean(axis=1)
    peak = power.max(axis=1)
    live = mean > 0
    values = 10.0 * np.log10(peak[live] / mean[live])
    meta = {
        "windows": int(live.sum()),
        "skipped_zero_power": int(n_win - live.sum()),
        "window_samples": int(window),
    }
    return values, meta


def ccdf(values, grid):
    """P(value >= g) for each g in grid; grid must be ascending."""
    values = np.sort(np.asarray(values, float))
    grid = np.asarray(grid, float)
    if values.size == 0:
        raise InvalidArgument("no values to tabulate")
    count_ge = values.size - np.searchsorted(values, grid, side="left")
    return count_ge / values.size


def ccdf_crossing(grid, prob, level):
    """dB abscissa where the CCDF crosses `level`, log-linear interpolation."""
    grid = np.asarray(grid, float)
    prob = np.asarray(prob, float)
    below = np.nonzero(prob <= level)[0]
    if below.size == 0 or below[0] == 0:
        return float("nan")
    i = below[0]
    p0, p1 = prob[i - 1], prob[i]
    if p1 <= 0:
        return float(grid[i])
    w = (np.log10(p0) - np.log10(level)) / (np.log10(p0) - np.log10(p1))
    return float(grid[i - 1] + w * (grid[i] - grid[i - 1]))


def psd_welch(s, nperseg=None):
    """Hann-windowed Welch PSD, peak-normalized to 0 dB, two-sided and shifted.

    Falls back to a single periodogram (with a metadata warning) when the
    signal is too short for two segments.
    """
    x = _samples_of(s)
    fs = s.sample_rate if isinstance(s, Signal) else 1.0
    if nperseg is None:
        nperseg = min(4096, x.size)
    nperseg = int(min(nperseg, x.size))
    noverlap = nperseg // 2
    n_segments = 1 + (x.size - nperseg) // (nperseg - noverlap) if x.size >= nperseg else 0
    meta = {"nperseg": nperseg, "segments": int(max(n_segments, 1)), "warning": None}
    if n_segments < 2:
        meta["warning"] = "fewer than two Welch segments; returning a single periodogram"
        nperseg = x.size
        noverlap = 0
    freqs, psd = welch(
        x,
        fs=fs,
        window="hann",
        nperseg=nperseg,
        noverlap=noverlap,
        detrend=False,
        return_onesided=False,
        scaling="density",
    )
    freqs = np.fft.fftshift(freqs)
    psd = np.fft.fftshift(psd)
    peak = psd.max()
    if peak <= 0:
        raise InvalidArgument("PSD is identically zero")
    return freqs, 10.0 * np.log10(psd / peak), meta


def qfunc(x):
    return 0.5 * erfc(np.asarray(x, float) / np.sqrt(2.0))


def ber_qpsk_awgn(esn0_linear):
    """Per-bit error rate of Gray 4-QAM/QPSK over AWGN."""
    return qfunc(np.sqrt(np.asarray(esn0_linear, float)))


def wilson_interval(errors, bits, z=3.0):
    if bits <= 0:
        return 0.0, 1.0
    p = errors / bits
    denom = 1.0 + z * z / bits
    center = (p + z * z / (2 * bits)) / denom
    half = z * np.sqrt(p * (1 - p) / bits + z * z / (4 * bits * bits)) / denom
    return max(center - half, 0.0), min(center + half, 1.0)


@dataclass
class CurveResult:
    label: str
    x: np.ndarray
    y: np.ndarray
    ci_low: np.ndarray = None
    ci_high: np.ndarray = None
    x_label: str = "x"
    y_label: str = "y"
    meta: dict = field(default_factory=dict)

    def write_csv(self, fh):
        cols = [self.x, self.y]
        header = [self.x_label, self.y_label]
        if self.ci_low is not None:
            cols += [self.ci_low, self.ci_high]
            header += ["ci_low", "ci_high"]
        fh.write(",".join(header) + "\n")
        for row in zip(*cols):
            fh.write(",".join(f"{v:.12g}" for v in row) + "\n")


def ber_campaign(
    trial,
    snr_db,
    seed,
    min_errors,
    max_bits,
    executor=None,
    batch_size=32,
):
    """Run `trial(snr_db, seed_sequence) -> (bits, errors)` over an SNR grid.

    Results are reproducible for a fixed seed regardless of the executor:
    trial t at point i always gets SeedSequence((seed, i, t)) and batches
    are merged in index order before any stopping decision.
    """
    if min_errors < 1 or max_bits < 1:
        raise InvalidArgument("budgets must be positive")
    points = []
    for i, snr in enumerate(snr_db):
        bits = 0
        errors = 0
        t0 = 0
        while bits < max_bits and errors < min_errors:
            seeds = [np.random.SeedSequence((seed, i, t)) for t in range(t0, t0 + batch_size)]
            if executor is not None:
                results = list(executor.map(trial, [snr] * len(seeds), seeds))
            else:
                results = [trial(snr, ss) for ss in seeds]
            for b, e in results:
                bits += int(b)
                errors += int(e)
            t0 += batch_size
        ber = errors / bits if bits else 0.0
        lo, hi = wilson_interval(errors, bits)
        points.append(
            {"snr_db": float(snr), "bits": bits, "errors": errors, "ber": ber, "ci_low": lo, "ci_high": hi}
        )
    return points
