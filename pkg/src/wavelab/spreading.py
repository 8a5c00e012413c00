"""Transmit front-ends and their inverses.

Scaling conventions (all pinned here, tested exactly):

  - QAM constellations have unit average symbol energy.
  - Simple DFT spreading: D = dft(d)/sqrt(len(d)), so E|D|^2 = E|d|^2 and
    the staggered real lattice carries E[x^2] = E|d|^2 / 2.
  - Conjugate-symmetric spreading: a = dft(c)/sqrt(2M).  Per slot this gives
    sum|x|^2 = sum|c|^2 / 2 = sum|d|^2 - |d(M/4)|^2 / 2 exactly (the split
    real/imag pair at positions M/4, 3M/4 carries half energy).
  - SC-FDMA/OFDM modulator: s[k] = (1/sqrt(M)) sum_m D_m e^{j2pi mk/(M L_os)};
    at L_os = 1 and no CP the SC-FDMA slot samples equal d exactly.

The conjugate-symmetric map sends M/2 data symbols to a length-M vector c
whose DFT lands directly on the OQAM phase lattice (a/j^(m+n) is real), so
no real/imaginary staggering is needed.  Positions M/4 and 3M/4 hold the
real and imaginary halves of the single self-paired symbol d(M/4).
"""

from functools import lru_cache

import numpy as np

from .errors import InvalidArgument
from .fbmc import (
    Signal,
    default_phase,
    oqam_destagger_scheme1,
    oqam_destagger_scheme2,
    oqam_stagger_scheme1,
    oqam_stagger_scheme2,
)

__all__ = [
    "qam_constellation",
    "qam_mod",
    "qam_demod",
    "conjugate_symmetric_map",
    "demap",
    "map_dft_spread_tx",
    "map_dft_spread_rx",
    "simple_dft_spread_tx",
    "simple_dft_spread_rx",
    "ofdm_tx",
    "ofdm_rx",
    "scfdma_tx",
    "scfdma_rx",
    "scfdma_despread",
]

_QAM_BITS = {4: 2, 64: 6}


def _gray_encode(u):
    return u ^ (u >> 1)


@lru_cache(maxsize=None)
def _qam_tables(order):
    if order not in _QAM_BITS:
        raise InvalidArgument(f"supported QAM orders: {sorted(_QAM_BITS)}, got {order}")
    bps = _QAM_BITS[order]
    half = bps // 2
    n_axis = 1 << half
    # Gray-coded amplitude axis, all-zero bits at the positive end so that
    # 4-QAM bits 00 map to (1+j)/sqrt(2); level for index u is encoded u^(u>>1)
    levels = (n_axis - 1) - 2 * np.arange(n_axis)
    axis_bits_to_level = np.empty(n_axis, int)
    for u in range(n_axis):
        axis_bits_to_level[_gray_encode(u)] = levels[u]
    scale = np.sqrt(np.mean((levels**2)[:, None] + (levels**2)[None, :]))
    points = np.empty(order, complex)
    for idx in range(order):
        i_bits, q_bits = idx >> half, idx & (n_axis - 1)
        points[idx] = (axis_bits_to_level[i_bits] + 1j * axis_bits_to_level[q_bits]) / scale
    return points, levels / scale, bps


def qam_constellation(order):
    """Unit-energy Gray-mapped constellation, indexed by the bit word (MSB first)."""
    return _qam_tables(order)[0].copy()


def qam_mod(bits, order):
    points, _, bps = _qam_tables(order)
    bits = np.asarray(bits, int).ravel()
    if bits.size == 0 or bits.size % bps != 0:
        raise InvalidArgument(f"bit count must be a positive multiple of {bps}")
    if np.any((bits != 0) & (bits != 1)):
        raise InvalidArgument("bits must be 0 or 1")
    words = bits.reshape(-1, bps)
    idx = words @ (1 << np.arange(bps - 1, -1, -1))
    return points[idx]


def qam_demod(symbols, order):
    """Minimum-distance decisions, returned as bits (MSB first per symbol)."""
    _, axis_levels, bps = _qam_tables(order)
    symbols = np.asarray(symbols, complex).ravel()
    half = bps // 2
    n_axis = axis_levels.size
    step = axis_levels[0] - axis_levels[1] if n_axis > 1 else 1.0  # levels descend
    out = np.empty((symbols.size, bps), int)
    for col, vals in ((0, symbols.real), (half, symbols.imag)):
        u = np.clip(np.round((axis_levels[0] - vals) / step).astype(int), 0, n_axis - 1)
        g = _gray_encode(u)
        for b in range(half):
            out[:, col + b] = (g >> (half - 1 - b)) & 1
    return out.ravel()


# --- conjugate-symmetric mapping ---------------------------------------------


def _check_map_size(M):
    if M % 4 != 0 or M < 4:
        raise InvalidArgument(f"M must be divisible by 4, got {M}")


def conjugate_symmetric_map(d, n, M):
    """Arrange M/2 symbols into the length-M conjugate-symmetric vector, times j^n."""
    _check_map_size(M)
    d = np.asarray(d, complex)
    if d.shape != (M // 2,):
        raise InvalidArgument(f"expected {M // 2} data symbols, got shape {d.shape}")
    q = M // 4
    c = np.empty(M, complex)
    c[0] = d[0]
    c[M // 2] = np.conj(d[0])
    c[1:q] = d[1:q]
    ls = np.arange(q + 1, M // 2)
    c[ls] = np.conj(d[M // 2 - ls])
    ls = np.arange(M // 2 + 1, 3 * q)
    c[ls] = d[ls - q]
    ls = np.arange(3 * q + 1, M)
    c[ls] = np.conj(d[5 * q - ls])
    c[q] = d[q].real
    c[3 * q] = d[q].imag
    return (1j ** (n % 4)) * c


def demap(c_hat, n, M):
    """Inverse of conjugate_symmetric_map: average the conjugate pairs."""
    _check_map_size(M)
    c_hat = np.asarray(c_hat, complex)
    if c_hat.shape != (M,):
        raise InvalidArgument(f"expected a length-{M} vector, got shape {c_hat.shape}")
    c = c_hat * (1j ** (-n % 4))
    q = M // 4
    d = np.empty(M // 2, complex)
    d[0] = (c[0] + np.conj(c[M // 2])) / 2
    ls = np.arange(1, q)
    d[ls] = (c[ls] + np.conj(c[M // 2 - ls])) / 2
    d[q] = c[q].real + 1j * c[3 * q].real
    ls = np.arange(q + 1, M // 2)
    d[ls] = (c[ls + q] + np.conj(c[5 * q - ls])) / 2
    return d


def _complex_grid(d):
    d = np.asarray(d, complex)
    if d.ndim != 2 or d.size == 0:
        raise InvalidArgument(f"expected a 2-d grid, got shape {d.shape}")
    if not np.all(np.isfinite(d)):
        raise InvalidArgument("grid contains NaN/Inf")
    return d


def map_dft_spread_tx(d):
    """(M/2)xN data -> (a, x): phased grid and the real lattice it encodes."""
    d = _complex_grid(d)
    Mh, N = d.shape
    M = 2 * Mh
    _check_map_size(M)
    C = np.empty((M, N), complex)
    for n in range(N):
        C[:, n] = conjugate_symmetric_map(d[:, n], n, M)
    a = np.fft.fft(C, axis=0) / np.sqrt(2 * M)
    x = (a * np.conj(default_phase(M, N))).real
    return a, x


def map_dft_spread_rx(x_hat):
    """Real MxN lattice estimates -> (M/2)xN data estimates."""
    x_hat = np.asarray(x_hat, float)
    if x_hat.ndim != 2:
        raise InvalidArgument("expected a 2-d grid")
    M, N = x_hat.shape
    _check_map_size(M)
    a_hat = default_phase(M, N) * x_hat
    c_hat = np.sqrt(2 * M) * np.fft.ifft(a_hat, axis=0)
    d_hat = np.empty((M // 2, N), complex)
    for n in range(N):
        d_hat[:, n] = demap(c_hat[:, n], n, M)
    return d_hat


def simple_dft_spread_tx(d, scheme):
    """Per-slot DFT then OQAM staggering; scheme 1 in time, scheme 2 in frequency."""
    d = _complex_grid(d)
    D = np.fft.fft(d, axis=0) / np.sqrt(d.shape[0])
    if scheme == 1:
        return oqam_stagger_scheme1(D)
    if scheme == 2:
        return oqam_stagger_scheme2(D)
    raise InvalidArgument(f"scheme must be 1 or 2, got {scheme}")


def simple_dft_spread_rx(x_hat, scheme):
    if scheme == 1:
        D = oqam_destagger_scheme1(x_hat)
    elif scheme == 2:
        D = oqam_destagger_scheme2(x_hat)
    else:
        raise InvalidArgument(f"scheme must be 1 or 2, got {scheme}")
    return np.sqrt(D.shape[0]) * np.fft.ifft(D, axis=0)


# --- CP-OFDM and SC-FDMA baselines --------------------------------------------


def _ofdm_modulate(D, F, L_os, cp):
    D = _complex_grid(D)
    M, Nsym = D.shape
    ML = M * L_os
    if not 0 <= cp <= ML:
        raise InvalidArgument(f"cp must be in [0, {ML}], got {cp}")
    spectrum = np.zeros((ML, Nsym), complex)
    spectrum[:M] = D
    body = np.fft.ifft(spectrum, axis=0) * (ML / np.sqrt(M))
    if cp:
        body = np.vstack([body[-cp:], body])
    return Signal(samples=body.T.reshape(-1), sample_rate=M * F * L_os, start=0)


def ofdm_tx(D, F, L_os=1, cp=0):
    """Plain CP-OFDM: D are the QAM subcarrier symbols."""
    return _ofdm_modulate(D, F, L_os, cp)


def ofdm_rx(r, M, Nsym, L_os=1, cp=0):
    """CP removal + FFT, scaled so a noiseless loopback returns D exactly."""
    ML = M * L_os
    span = ML + cp
    need = Nsym * span
    if r.start > 0 or r.start + len(r) < need:
        raise InvalidArgument("signal too short for the requested symbol count")
    base = -r.start
    body = r.samples[base : base + need].reshape(Nsym, span)[:, cp:]
    return np.fft.fft(body, axis=1)[:, :M].T * (np.sqrt(M) / ML)


def scfdma_tx(d, F, L_os=1, cp=0):
    """DFT-precoded OFDM; at L_os=1, cp=0 the slot samples equal d."""
    d = _complex_grid(d)
    D = np.fft.fft(d, axis=0) / np.sqrt(d.shape[0])
    return _ofdm_modulate(D, F, L_os, cp)


def scfdma_rx(r, M, Nsym, L_os=1, cp=0):
    """Subcarrier-domain symbols; equalize these, then scfdma_despread."""
    return ofdm_rx(r, M, Nsym, L_os, cp)


def scfdma_despread(Y):
    Y = _complex_grid(Y)
    return np.sqrt(Y.shape[0]) * np.fft.ifft(Y, axis=0)
