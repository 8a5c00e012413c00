"""Prototype filter construction for the synthesis/analysis banks.

All filters are real, even-symmetric, unit-energy tap vectors sampled at
fs = M*F*L_os.  One subcarrier period 1/F spans M*L_os samples; the slot
spacing T = 1/(2F) spans H = M*L_os/2 samples.

Seed impulse responses come from the standard filter-design literature:

  Hermite  - linear combination of Hermite functions H_{4i}(2 sqrt(pi) t F)
             weighted by a Gaussian, with the published K=4 coefficient set
             for isotropic orthogonal pulses (b_0 .. b_20 below).
  PHYDYAS  - frequency-sampling design, K=4 coefficients
             H1 = 0.97195983, H2 = sqrt(2)/2, H3 = 0.23514695.
  EGF/IOTA - Gaussian g_alpha(t) = (2 alpha)^(1/4) exp(-2 pi alpha (tF)^2),
             orthogonalized numerically (IOTA is the alpha = 1 member).
  RRC      - root-raised-cosine with Nyquist interval 1/F.

Each non-rectangular seed is then projected onto the nearest exactly
orthogonal bank: real-field orthogonality of the OQAM bank with
theta = j^(m+n) reduces to a power-complementarity condition on the
even/odd hop-H polyphase branches,

    sum_j p[k+jH] p[k+(j+2v)H] = delta_v / H   for every k in [0, H),

and a per-k Gauss-Newton iteration with least-norm steps drives the
residual to machine precision while moving the taps very little
(L2 movement ~1e-3 for Hermite, ~2e-2 for PHYDYAS seeds).  Unit energy
follows from the v = 0 constraint summed over k.

The rectangular filter is the constant window of one full symbol period
(M*L_os samples of 1/sqrt(M*L_os)).  Its hop-H polyphase branches are two
identical constants, so the complementarity condition above holds exactly:
adjacent slots overlap by half a pulse but the bank stays orthogonal, and
per-pulse windows of DFT-spread chains reduce to Dirichlet-kernel closed
forms.
"""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import eval_hermite

from .errors import ConfigError, InvalidArgument

__all__ = ["PrototypeFilter", "make_filter", "orthogonality_residual", "write_taps_csv"]

FILTER_KINDS = ("rectangular", "hermite", "phydyas", "iota", "rrc", "egf")

# Hermite-function weights (orders 0,4,...,20) for the K=4 isotropic pulse.
_HERMITE_COEF = (
    (0, 1.412692577),
    (4, -3.0145e-3),
    (8, -8.8041e-6),
    (12, -2.2611e-9),
    (16, -4.4570e-15),
    (20, 1.8633e-16),
)

_PHYDYAS_K4 = (1.0, 0.97195983, np.sqrt(2) / 2, 0.23514695)


@dataclass(frozen=True)
class PrototypeFilter:
    kind: str
    params: tuple
    M: int
    K: int
    L_os: int
    taps: np.ndarray = field(repr=False)

    @property
    def samples_per_period(self):
        return self.M * self.L_os

    @property
    def hop(self):
        """Samples per slot: T * fs = M * L_os / 2."""
        return self.M * self.L_os // 2

    @property
    def center_offset(self):
        """Start of the pulse relative to its slot start; <= 0 for K > 1."""
        return (self.hop - self.taps.size) // 2


def _centered_axis(Lp, ML):
    # t*F for each tap, symmetric about the filter center
    return (np.arange(Lp) - (Lp - 1) / 2) / ML


def _hermite_seed(M, K, L_os):
    u = _centered_axis(K * M * L_os, M * L_os)
    arg = 2 * np.sqrt(np.pi) * u
    p = np.zeros_like(u)
    for order, b in _HERMITE_COEF:
        p += b * eval_hermite(order, arg)
    return p * np.exp(-2 * np.pi * u**2)


def _phydyas_seed(M, K, L_os):
    if K != 4:
        raise ConfigError(f"phydyas coefficient table is available for K=4 only, got K={K}")
    Lp = K * M * L_os
    u = np.arange(Lp) - (Lp - 1) / 2
    p = np.full(Lp, _PHYDYAS_K4[0])
    for k in range(1, K):
        p = p + 2 * _PHYDYAS_K4[k] * np.cos(2 * np.pi * k * u / Lp)
    return p


def _gaussian_seed(M, K, L_os, alpha):
    u = _centered_axis(K * M * L_os, M * L_os)
    return (2 * alpha) ** 0.25 * np.exp(-2 * np.pi * alpha * u**2)


def _rrc_seed(M, K, L_os, roll_off):
    # Nyquist interval 1/F, i.e. x = t*F in the textbook formula
    x = _centered_axis(K * M * L_os, M * L_os)
    b = roll_off
    if b == 0.0:
        return np.sinc(x)
    p = np.empty_like(x)
    near_zero = np.abs(x) < 1e-10
    sing = np.abs(np.abs(x) - 1 / (4 * b)) < 1e-10
    ok = ~(near_zero | sing)
    xo = x[ok]
    num = np.sin(np.pi * xo * (1 - b)) + 4 * b * xo * np.cos(np.pi * xo * (1 + b))
    den = np.pi * xo * (1 - (4 * b * xo) ** 2)
    p[ok] = num / den
    p[near_zero] = 1 - b + 4 * b / np.pi
    p[sing] = (b / np.sqrt(2)) * (
        (1 + 2 / np.pi) * np.sin(np.pi / (4 * b)) + (1 - 2 / np.pi) * np.cos(np.pi / (4 * b))
    )
    return p


def _branch_view(taps, H):
    J = taps.size // H
    return taps.reshape(J, H).T, J  # V[k, j] = p[k + j*H]


def orthogonality_residual(taps, M, L_os):
    """Max deviation from the polyphase power-complementarity condition.

    Zero (to rounding) iff the OQAM bank built on these taps with
    theta = j^(m+n) is exactly real-orthogonal at every lattice offset.
    """
    H = M * L_os // 2
    if taps.size % H != 0:
        raise InvalidArgument("tap count is not a multiple of the slot length")
    V, J = _branch_view(np.asarray(taps, float), H)
    worst = 0.0
    for v in range(-(J - 1), J):
        acc = np.zeros(H)
        for j in range(J):
            jj = j + 2 * v
            if 0 <= jj < J:
                acc += V[:, j] * V[:, jj]
        target = 1.0 / H if v == 0 else 0.0
        worst = max(worst, float(np.max(np.abs(acc - target))))
    return worst


def _tighten(taps, M, K, L_os, tol=1e-13, iters=60):
    """Gauss-Newton projection of an even-symmetric seed onto the orthogonal set."""
    H = M * L_os // 2
    V, J = _branch_view(taps.copy(), H)
    assert J == 2 * K
    a = V[:, 0::2].copy()  # (H, K) even branches
    b = V[:, 1::2].copy()

    def constraints(a, b):
        g = np.empty((H, K))
        for v in range(K):
            g[:, v] = (a[:, : K - v] * a[:, v:]).sum(axis=1) + (b[:, : K - v] * b[:, v:]).sum(axis=1)
        g[:, 0] -= 1.0 / H
        return g

    for _ in range(iters):
        g = constraints(a, b)
        if np.max(np.abs(g)) < tol:
            break
        Jac = np.zeros((H, K, 2 * K))
        for v in range(K):
            for j in range(K):
                if j + v < K:
                    Jac[:, v, j] += a[:, j + v]
                    Jac[:, v, K + j] += b[:, j + v]
                if j - v >= 0:
                    Jac[:, v, j] += a[:, j - v]
                    Jac[:, v, K + j] += b[:, j - v]
        JJt = Jac @ Jac.transpose(0, 2, 1)
        try:
            lam = np.linalg.solve(JJt, -g[..., None])[..., 0]
        except np.linalg.LinAlgError as exc:
            raise ConfigError(f"filter seed cannot be orthogonalized: {exc}") from exc
        dw = np.einsum("hvj,hv->hj", Jac, lam)
        a += dw[:, :K]
        b += dw[:, K:]

    V2 = np.empty((H, 2 * K))
    V2[:, 0::2] = a
    V2[:, 1::2] = b
    p = V2.T.reshape(-1)
    p = 0.5 * (p + p[::-1])  # the problem is reflection-symmetric; pin it exactly
    if orthogonality_residual(p, M, L_os) > 1e-12:
        raise ConfigError("filter seed is too far from an orthogonal bank (Gauss-Newton did not converge)")
    return p


@lru_cache(maxsize=64)
def _make_filter_cached(kind, M, K, L_os, params):
    pdict = dict(params)
    if kind == "rectangular":
        ML = M * L_os
        taps = np.full(ML, 1.0 / np.sqrt(ML))
        K_eff = 1
    else:
        if kind == "hermite":
            seed = _hermite_seed(M, K, L_os)
        elif kind == "phydyas":
            seed = _phydyas_seed(M, K, L_os)
        elif kind == "iota":
            seed = _gaussian_seed(M, K, L_os, 1.0)
        elif kind == "egf":
            alpha = pdict.get("alpha", 1.0)
            if not alpha > 0:
                raise ConfigError(f"egf spreading parameter must be > 0, got {alpha}")
            seed = _gaussian_seed(M, K, L_os, alpha)
        elif kind == "rrc":
            roll_off = pdict.get("roll_off", 1.0)
            if not 0.0 <= roll_off <= 1.0:
                raise ConfigError(f"rrc roll-off must be in [0, 1], got {roll_off}")
            seed = _rrc_seed(M, K, L_os, roll_off)
        else:
            raise ConfigError(f"unknown filter kind {kind!r}; known: {', '.join(FILTER_KINDS)}")
        seed = seed / np.linalg.norm(seed)
        taps = _tighten(seed, M, K, L_os)
        K_eff = K
    taps.flags.writeable = False
    return PrototypeFilter(kind=kind, params=params, M=M, K=K_eff, L_os=L_os, taps=taps)


def make_filter(kind, M, K=4, L_os=1, **params):
    """Build a PrototypeFilter.

    kind: one of rectangular, hermite, phydyas, iota, rrc, egf
    params: roll_off (rrc, default 1.0) or alpha (egf, default 1.0)
    """
    kind = str(kind).lower()
    if kind not in FILTER_KINDS:
        raise ConfigError(f"unknown filter kind {kind!r}; known: {', '.join(FILTER_KINDS)}")
    if M < 2 or M % 2 != 0:
        raise ConfigError(f"M must be even and >= 2, got {M}")
    if K < 1:
        raise ConfigError(f"overlap factor K must be >= 1, got {K}")
    if L_os < 1:
        raise ConfigError(f"oversampling L_os must be >= 1, got {L_os}")
    bad = set(params) - {"roll_off", "alpha"}
    if bad:
        raise ConfigError(f"unknown filter parameter(s): {', '.join(sorted(bad))}")
    key = tuple(sorted((k, float(v)) for k, v in params.items()))
    return _make_filter_cached(kind, int(M), int(K), int(L_os), key)


def write_taps_csv(filt, fh):
    """One tap per line: index,value."""
    fh.write("index,value\n")
    for i, v in enumerate(filt.taps):
        fh.write(f"{i},{v:.17g}\n")
