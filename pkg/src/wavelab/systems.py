"""End-to-end transmit/receive chains for the six compared waveforms.

Everything here is a top-level function of picklable arguments (a frozen
ChainPlan plus scalars) so Monte Carlo trials can run under a process pool.
Prototype filters are rebuilt inside the worker via the make_filter cache.
"""

import math
from dataclasses import dataclass

import numpy as np

from .channel import (
    apply_tdl,
    custom_profile,
    effective_coefficients,
    mmse_coefficients,
    mmse_equalize,
    ofdm_effective_coefficients,
    pedestrian_a,
    vehicular_a,
)
from .errors import InvalidArgument
from .fbmc import (
    Signal,
    analyze,
    default_phase,
    oqam_destagger_scheme1,
    oqam_stagger_scheme1,
    synthesize,
)
from .filters import make_filter
from .metrics import papr_db
from .spreading import (
    map_dft_spread_rx,
    map_dft_spread_tx,
    ofdm_rx,
    ofdm_tx,
    qam_demod,
    qam_mod,
    scfdma_despread,
    scfdma_rx,
    scfdma_tx,
    simple_dft_spread_rx,
    simple_dft_spread_tx,
)

__all__ = [
    "WAVEFORMS",
    "FBMC_WAVEFORMS",
    "BLOCK_WAVEFORMS",
    "ChainPlan",
    "guard_slots",
    "transmit_burst",
    "papr_trial",
    "ber_trial",
    "psd_burst",
]

WAVEFORMS = ("fbmc_oqam", "simple_dft_s1", "simple_dft_s2", "map_dft", "scfdma", "ofdm")
FBMC_WAVEFORMS = ("fbmc_oqam", "simple_dft_s1", "simple_dft_s2", "map_dft")
BLOCK_WAVEFORMS = ("scfdma", "ofdm")


@dataclass(frozen=True)
class ChainPlan:
    """Fully resolved parameters of one curve's transmit/receive chain."""

    waveform: str
    m: int
    constellation: int
    filter_kind: str
    filter_overlap: int
    filter_params: tuple  # sorted ((name, value), ...)
    oversample: int
    subcarrier_hz: float
    slots: int    # OQAM half-symbol slots per FBMC burst
    symbols: int  # symbols per block-waveform burst
    cp_samples: int
    profile: str  # awgn | pedestrian_a | vehicular_a | custom
    max_doppler_hz: float
    custom_delays_ns: tuple = ()
    custom_powers_db: tuple = ()
    noiseless: bool = False

    @property
    def is_fbmc(self):
        return self.waveform in FBMC_WAVEFORMS

    def prototype(self):
        if not self.is_fbmc:
            return None
        return make_filter(
            self.filter_kind,
            self.m,
            K=self.filter_overlap,
            L_os=self.oversample,
            **dict(self.filter_params),
        )

    def channel_profile(self):
        if self.profile == "awgn":
            return None
        if self.profile == "pedestrian_a":
            return pedestrian_a(max_doppler=self.max_doppler_hz)
        if self.profile == "vehicular_a":
            return vehicular_a(max_doppler=self.max_doppler_hz)
        if self.profile == "custom":
            return custom_profile(
                self.custom_delays_ns, self.custom_powers_db, self.max_doppler_hz
            )
        raise InvalidArgument(f"unknown channel profile {self.profile!r}")


def guard_slots(filt):
    """Slots dropped at each burst edge before counting bit errors.

    One pulse span keeps the channel/filter transient out of the counted
    region; rounded up to an even count so staggered symbol pairs stay whole.
    """
    span = -(-filt.taps.size // filt.hop)
    return max(span + (span % 2), 2)


def _payload_shape(plan):
    """(rows, cols) of the complex QAM grid feeding the chain."""
    if plan.waveform in ("fbmc_oqam", "simple_dft_s1"):
        return plan.m, plan.slots // 2
    if plan.waveform in ("simple_dft_s2", "map_dft"):
        return plan.m // 2, plan.slots
    return plan.m, plan.symbols


def _random_payload(plan, rng):
    rows, cols = _payload_shape(plan)
    bps = int(math.log2(plan.constellation))
    bits = rng.integers(0, 2, size=rows * cols * bps)
    # column c of the grid holds symbols c*rows .. c*rows+rows-1
    d = qam_mod(bits, plan.constellation).reshape(cols, rows).T
    return bits, d


def transmit_burst(plan, d):
    """QAM grid -> baseband Signal for the plan's waveform."""
    F = plan.subcarrier_hz
    if plan.is_fbmc:
        if plan.waveform == "fbmc_oqam":
            x = oqam_stagger_scheme1(d)
        elif plan.waveform == "simple_dft_s1":
            x = simple_dft_spread_tx(d, 1)
        elif plan.waveform == "simple_dft_s2":
            x = simple_dft_spread_tx(d, 2)
        else:
            _, x = map_dft_spread_tx(d)
        theta = default_phase(plan.m, plan.slots)
        return synthesize(x, theta, plan.prototype(), F)
    if plan.waveform == "scfdma":
        return scfdma_tx(d, F, L_os=plan.oversample, cp=plan.cp_samples)
    return ofdm_tx(d, F, L_os=plan.oversample, cp=plan.cp_samples)


def _receive(plan, r, realization, rho):
    """Noisy Signal -> QAM grid estimates (same shape as the payload)."""
    M = plan.m
    if plan.is_fbmc:
        filt = plan.prototype()
        theta = default_phase(M, plan.slots)
        y = analyze(r, theta, filt, plan.subcarrier_hz, N=plan.slots)
        if realization is None:
            x_hat = y.real
        else:
            h = effective_coefficients(realization, filt, plan.slots)
            x_hat = mmse_equalize(y, h, 1.0, rho)
        if plan.waveform == "fbmc_oqam":
            return oqam_destagger_scheme1(x_hat)
        if plan.waveform == "simple_dft_s1":
            return simple_dft_spread_rx(x_hat, 1)
        if plan.waveform == "simple_dft_s2":
            return simple_dft_spread_rx(x_hat, 2)
        return map_dft_spread_rx(x_hat)
    Y = scfdma_rx(r, M, plan.symbols, L_os=plan.oversample, cp=plan.cp_samples)
    if realization is None:
        Y_eq = Y
    else:
        h = ofdm_effective_coefficients(
            realization, M, plan.symbols, L_os=plan.oversample, cp=plan.cp_samples
        )
        Y_eq = Y * mmse_coefficients(h, rho)
    if plan.waveform == "scfdma":
        return scfdma_despread(Y_eq)
    return Y_eq


def _interior_columns(plan):
    """Boolean mask over payload-grid columns counted for bit errors."""
    rows, cols = _payload_shape(plan)
    mask = np.zeros(cols, bool)
    if plan.is_fbmc:
        g = guard_slots(plan.prototype())
        if plan.waveform in ("fbmc_oqam", "simple_dft_s1"):
            # column c occupies slots 2c and 2c+1
            for c in range(cols):
                mask[c] = 2 * c >= g and 2 * c + 1 < plan.slots - g
        else:
            mask[g : plan.slots - g] = True
    else:
        mask[1:-1] = True
    if not mask.any():
        raise InvalidArgument("burst too short: no interior symbols to count")
    return mask


def papr_trial(plan, seed_seq):
    """One random burst -> per-window PAPR values in dB.

    FBMC bursts are trimmed to the steady-state span where all overlapping
    pulses are present: edge windows hold only filter tails, whose low mean
    power makes their PAPR arbitrarily large, and the distribution being
    estimated is that of continuous transmission.
    """
    rng = np.random.default_rng(seed_seq)
    _, d = _random_payload(plan, rng)
    s = transmit_burst(plan, d)
    samples = s.samples
    if plan.is_fbmc:
        filt = plan.prototype()
        H = filt.hop
        J = -(-filt.taps.size // H)
        samples = samples[(J - 1) * H : plan.slots * H]
    values, _ = papr_db(samples, plan.m * plan.oversample)
    return values


def psd_burst(plan, seed_seq):
    """One random burst as a Signal, for Welch PSD estimation."""
    rng = np.random.default_rng(seed_seq)
    _, d = _random_payload(plan, rng)
    return transmit_burst(plan, d)


def ber_trial(plan, esn0_db, seed_seq):
    """One burst through channel + equalizer; returns (bits, errors).

    esn0_db is Es/N0 per QAM symbol at the detector.  With unit-norm
    synthesis pulses the matched-filter noise floor is rho = 10^(-esn0/10);
    the block waveforms concentrate M of M*L_os bins, so their per-sample
    noise is rho * L_os for the same detector Es/N0.
    """
    # independent sub-streams: the channel and noise draws must not depend on
    # how many bits the payload consumed, so equal seeds give every waveform
    # the same fading realization (paired comparisons across curves)
    ss_payload, ss_channel, ss_noise = seed_seq.spawn(3)
    bits, d = _random_payload(plan, np.random.default_rng(ss_payload))
    s = transmit_burst(plan, d)

    realization = None
    if plan.profile != "awgn":
        s, realization = apply_tdl(
            s, plan.channel_profile(), np.random.default_rng(ss_channel)
        )

    rho = 10.0 ** (-esn0_db / 10.0)
    if plan.noiseless:
        rho = 0.0
    else:
        p_noise = rho * (1.0 if plan.is_fbmc else plan.oversample)
        rng_noise = np.random.default_rng(ss_noise)
        w = rng_noise.normal(size=s.samples.size) + 1j * rng_noise.normal(size=s.samples.size)
        s = Signal(s.samples + np.sqrt(p_noise / 2) * w, s.sample_rate, s.start)

    d_hat = _receive(plan, s, realization, rho)

    mask = _interior_columns(plan)
    rows, _ = _payload_shape(plan)
    bps = int(math.log2(plan.constellation))
    tx_grid = bits.reshape(-1, rows * bps)[mask]
    rx_bits = qam_demod(d_hat[:, mask].T.reshape(-1), plan.constellation)
    errors = int(np.sum(rx_bits.reshape(tx_grid.shape) != tx_grid))
    return tx_grid.size, errors
