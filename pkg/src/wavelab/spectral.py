"""DFT pair and the two Dirichlet-kernel sums used by the closed-form signal models.

Conventions, fixed for the whole library:
    dft:  X(k) = sum_l x(l) exp(-j 2 pi k l / L)      (non-unitary forward)
    idft: x(l) = (1/L) sum_k X(k) exp(+j 2 pi k l / L)
Every grid equation elsewhere assumes exactly this pair.
"""

import numpy as np

from .errors import InvalidArgument

__all__ = ["dft", "idft", "dirichlet_f1", "dirichlet_f2"]


def _as_vector(v):
    a = np.asarray(v)
    if a.ndim != 1:
        raise InvalidArgument(f"expected a 1-d sequence, got shape {a.shape}")
    if a.size == 0:
        raise InvalidArgument("empty input")
    if not np.all(np.isfinite(a)):
        raise InvalidArgument("input contains NaN/Inf")
    return a.astype(complex)


def _is_pow2(n):
    return n & (n - 1) == 0


def dft(v):
    """Forward DFT, non-unitary convention."""
    a = _as_vector(v)
    L = a.size
    if _is_pow2(L):
        return np.fft.fft(a)
    # non-power-of-two lengths are off the fast path; direct summation
    k = np.arange(L)
    return np.exp(-2j * np.pi * np.outer(k, k) / L) @ a


def idft(v):
    """Inverse DFT with 1/L scaling; idft(dft(v)) == v."""
    a = _as_vector(v)
    L = a.size
    if _is_pow2(L):
        return np.fft.ifft(a)
    k = np.arange(L)
    return (np.exp(2j * np.pi * np.outer(k, k) / L) @ a) / L


def dirichlet_f1(t, M, F):
    """f1(t) = sum_{m=0}^{M-1} exp(j 2 pi m F t), periodic in 1/F.

    `t` is seconds (scalar or array); evaluated by direct summation, which is
    exact for the small M used here and avoids the 0/0 closed-form corner.
    """
    if M < 1:
        raise InvalidArgument(f"M must be >= 1, got {M}")
    if F <= 0:
        raise InvalidArgument(f"F must be > 0, got {F}")
    t = np.asarray(t, dtype=float)
    m = np.arange(M)
    return np.exp(2j * np.pi * F * t[..., None] * m).sum(axis=-1)


def dirichlet_f2(t, M, F):
    """f2(t) = sum_{m=0}^{M/2-1} exp(j 4 pi m F t), the half-lattice kernel."""
    if M < 2 or M % 2 != 0:
        raise InvalidArgument(f"M must be even and >= 2, got {M}")
    if F <= 0:
        raise InvalidArgument(f"F must be > 0, got {F}")
    t = np.asarray(t, dtype=float)
    m = np.arange(M // 2)
    return np.exp(4j * np.pi * F * t[..., None] * m).sum(axis=-1)
