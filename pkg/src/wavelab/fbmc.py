"""OQAM filter bank: synthesis, matched-filter analysis, phases, staggering.

Lattice and timing conventions (shared by every consumer):

  - Real symbols x[m, n] sit on an M x N lattice, subcarrier spacing F,
    slot spacing T = 1/(2F).  Sample rate fs = M*F*L_os, so one slot is
    H = M*L_os/2 samples and one subcarrier period 1/F is 2H samples.
  - Slot n's pulse occupies absolute samples o_n = n*H + d0 .. o_n + Lp,
    d0 = (H - Lp)/2, i.e. the pulse is centered on its slot.
  - The subcarrier modulation is exp(j 2 pi m (k - r) / (M*L_os)) with
    r = (H-1)/2: time zero at the center of slot 0's pulse.  With this
    reference the default pattern theta = j^(m+n) is exactly real
    orthogonal; referencing phases to the slot edge instead would fold an
    extra (-j)^m into theta and break the adjacency rule.

A Signal carries its own `start`: the absolute sample index of samples[0]
on that grid (negative for filters with tails before slot 0).
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgument

__all__ = [
    "Signal",
    "default_phase",
    "check_phase_pattern",
    "synthesize",
    "analyze",
    "oqam_stagger_scheme1",
    "oqam_stagger_scheme2",
    "oqam_destagger_scheme1",
    "oqam_destagger_scheme2",
]


@dataclass(frozen=True)
class Signal:
    samples: np.ndarray = field(repr=False)
    sample_rate: float
    start: int = 0

    def __len__(self):
        return self.samples.size


def default_phase(M, N):
    """theta[m, n] = j^((m+n) mod 4)."""
    if M < 1 or N < 1:
        raise InvalidArgument(f"grid must be at least 1x1, got {M}x{N}")
    return 1j ** ((np.arange(M)[:, None] + np.arange(N)[None, :]) % 4)


def check_phase_pattern(theta):
    theta = np.asarray(theta)
    mag_ok = np.abs(np.abs(theta) - 1.0) < 1e-9
    axis_ok = (np.abs(theta.real * theta.imag) < 1e-9) & mag_ok
    if not np.all(axis_ok):
        raise InvalidArgument("phase pattern entries must come from {1, -1, j, -j}")
    for ratio in (theta[1:, :] / theta[:-1, :], theta[:, 1:] / theta[:, :-1]):
        if ratio.size and not np.all(np.abs(ratio.real) < 1e-9):
            raise InvalidArgument("adjacent phase factors must differ by +/-j")
    return theta


def _grid_geometry(M, N, filt):
    ML = M * filt.L_os
    H = ML // 2
    Lp = filt.taps.size
    if Lp % H != 0:
        raise InvalidArgument("filter length must be a multiple of the slot length")
    d0 = (H - Lp) // 2
    return ML, H, Lp, d0


def _real_grid(x, M=None):
    x = np.asarray(x)
    if x.ndim != 2 or x.size == 0:
        raise InvalidArgument(f"expected a 2-d grid, got shape {x.shape}")
    if np.iscomplexobj(x):
        raise InvalidArgument("lattice symbols must be real")
    if not np.all(np.isfinite(x)):
        raise InvalidArgument("grid contains NaN/Inf")
    if M is not None and x.shape[0] != M:
        raise InvalidArgument(f"grid has {x.shape[0]} subcarrier rows, expected {M}")
    return x.astype(float)


def _center_twist(M, ML, H):
    # exp(-j 2 pi m r / ML), r = (H-1)/2; folds the center reference into
    # the per-column transform so time indexing stays integer
    r = (H - 1) / 2
    return np.exp(-2j * np.pi * np.arange(M) * r / ML)


def synthesize(x, theta, filt, F, T=None):
    """Sampled modulator sum: s = sum_{m,n} theta*x * p(t - nT) e^{j2pi mF t}."""
    x = _real_grid(x, filt.M)
    M, N = x.shape
    theta = np.asarray(theta)
    if theta.shape != x.shape:
        raise InvalidArgument(f"phase pattern shape {theta.shape} != grid shape {x.shape}")
    if F <= 0:
        raise InvalidArgument("F must be > 0")
    if T is not None and abs(T * F - 0.5) > 1e-12:
        raise InvalidArgument("T*F must equal 1/2")
    ML, H, Lp, d0 = _grid_geometry(M, N, filt)

    cols = theta * x * _center_twist(M, ML, H)[:, None]
    spectrum = np.zeros((ML, N), complex)
    spectrum[:M] = cols
    A = np.fft.ifft(spectrum, axis=0) * ML  # A[u, n] = sum_m col e^{j2pi mu/ML}

    taps = filt.taps
    j_idx = np.arange(Lp)
    chips = np.empty((N, Lp), complex)
    for par in (0, 1):
        if N > par:
            idx = (par * H + d0 + j_idx) % ML
            chips[par::2] = A[idx][:, par::2].T * taps
    J = Lp // H
    out = np.zeros((N - 1 + J) * H, complex)
    outv = out.reshape(N - 1 + J, H)
    chv = chips.reshape(N, J, H)
    for q in range(J):
        outv[q : q + N] += chv[:, q, :]
    return Signal(samples=out, sample_rate=M * F * filt.L_os, start=d0)


def analyze(r, theta, filt, F, N=None):
    """Matched-filter projections y[m, n]; real-orthogonal loopback gives Re{y} = x."""
    theta = np.asarray(theta)
    if theta.ndim != 2:
        raise InvalidArgument("phase pattern must be 2-d")
    M, Nth = theta.shape
    if N is None:
        N = Nth
    if N != Nth:
        raise InvalidArgument("phase pattern columns do not match N")
    if filt.M != M:
        raise InvalidArgument(f"filter built for M={filt.M}, grid has M={M}")
    ML, H, Lp, d0 = _grid_geometry(M, N, filt)

    need_lo, need_hi = d0, (N - 1) * H + d0 + Lp
    have_lo, have_hi = r.start, r.start + len(r)
    if have_lo > need_lo or have_hi < need_hi:
        raise InvalidArgument(
            f"signal too short: covers samples [{have_lo}, {have_hi}), need [{need_lo}, {need_hi})"
        )

    taps = filt.taps
    samples = r.samples
    folds = np.empty((N, ML), complex)
    j_idx = np.arange(Lp)
    for par in (0, 1):
        ns = np.arange(par, N, 2)
        if ns.size == 0:
            continue
        starts = ns * H + d0 - r.start
        win = samples[starts[:, None] + j_idx] * taps
        pad0 = (par * H + d0) % ML
        total = -(-(pad0 + Lp) // ML) * ML
        buf = np.zeros((ns.size, total), complex)
        buf[:, pad0 : pad0 + Lp] = win
        folds[ns] = buf.reshape(ns.size, -1, ML).sum(axis=1)
    Y = np.fft.fft(folds, axis=1)[:, :M]  # Y[n, m] = sum_u fold e^{-j2pi mu/ML}
    return np.conj(theta) * np.conj(_center_twist(M, ML, H))[:, None] * Y.T


def oqam_stagger_scheme1(D):
    """Complex M'xN' -> real M'x2N': real parts on even slots, imaginary on odd."""
    D = np.asarray(D, complex)
    if D.ndim != 2 or D.size == 0:
        raise InvalidArgument(f"expected a 2-d grid, got shape {D.shape}")
    if not np.all(np.isfinite(D)):
        raise InvalidArgument("grid contains NaN/Inf")
    Mp, Np = D.shape
    x = np.empty((Mp, 2 * Np))
    x[:, 0::2] = D.real
    x[:, 1::2] = D.imag
    return x


def oqam_stagger_scheme2(D):
    """Complex M'xN' -> real 2M'xN': real parts on even subcarriers, imaginary on odd."""
    D = np.asarray(D, complex)
    if D.ndim != 2 or D.size == 0:
        raise InvalidArgument(f"expected a 2-d grid, got shape {D.shape}")
    if not np.all(np.isfinite(D)):
        raise InvalidArgument("grid contains NaN/Inf")
    Mp, Np = D.shape
    x = np.empty((2 * Mp, Np))
    x[0::2, :] = D.real
    x[1::2, :] = D.imag
    return x


def oqam_destagger_scheme1(x):
    x = _real_grid(x)
    if x.shape[1] % 2 != 0:
        raise InvalidArgument("scheme-1 lattice needs an even number of slots")
    return x[:, 0::2] + 1j * x[:, 1::2]


def oqam_destagger_scheme2(x):
    x = _real_grid(x)
    if x.shape[0] % 2 != 0:
        raise InvalidArgument("scheme-2 lattice needs an even number of subcarriers")
    return x[0::2, :] + 1j * x[1::2, :]
