"""Independent reference implementations used as test oracles.

Everything here is deliberately naive (explicit loops, cmath) and written
straight from the defining formulas, so that agreement with the library is
a genuine dual-route check rather than the same code evaluated twice.
"""

import cmath

import numpy as np


def brute_dft(v):
    L = len(v)
    out = []
    for k in range(L):
        acc = 0j
        for l in range(L):
            acc += v[l] * cmath.exp(-2j * cmath.pi * k * l / L)
        out.append(acc)
    return np.array(out)


def brute_idft(v):
    L = len(v)
    out = []
    for l in range(L):
        acc = 0j
        for k in range(L):
            acc += v[k] * cmath.exp(2j * cmath.pi * k * l / L)
        out.append(acc / L)
    return np.array(out)


def f1_direct(t, M, F):
    return sum(cmath.exp(2j * cmath.pi * m * F * t) for m in range(M))


def f2_direct(t, M, F):
    return sum(cmath.exp(4j * cmath.pi * m * F * t) for m in range(M // 2))


def eq1_triple_loop(x, theta, taps, L_os):
    """Direct evaluation of the synthesis sum on the sample grid.

    Conventions match the library docs: slot hop H = M*L_os/2 samples,
    pulse n starts at o_n = n*H + (H - Lp)/2, modulation reference
    r = (H-1)/2.  Returns (samples, start_index).
    """
    M, N = x.shape
    ML = M * L_os
    H = ML // 2
    Lp = len(taps)
    d0 = (H - Lp) // 2
    r = (H - 1) / 2
    start = d0
    end = (N - 1) * H + d0 + Lp
    s = np.zeros(end - start, complex)
    for n in range(N):
        o_n = n * H + d0
        for m in range(M):
            coef = theta[m, n] * x[m, n]
            if coef == 0:
                continue
            for j in range(Lp):
                k = o_n + j
                s[k - start] += coef * taps[j] * cmath.exp(2j * cmath.pi * m * (k - r) / ML)
    return s, start


def analyze_inner_products(r_samples, r_start, theta, taps, L_os):
    """Direct inner products <r, conj(basis)> for every lattice point."""
    M, N = theta.shape
    ML = M * L_os
    H = ML // 2
    Lp = len(taps)
    d0 = (H - Lp) // 2
    rr = (H - 1) / 2
    y = np.zeros((M, N), complex)
    for n in range(N):
        o_n = n * H + d0
        for m in range(M):
            acc = 0j
            for j in range(Lp):
                k = o_n + j
                g = theta[m, n] * taps[j] * cmath.exp(2j * cmath.pi * m * (k - rr) / ML)
                acc += r_samples[k - r_start] * g.conjugate()
            y[m, n] = acc
    return y


def conj_sym_map_reference(d, n, M):
    """The eight-case mapping rule, written index by index."""
    q = M // 4
    c = np.empty(M, complex)
    c[0] = d[0]
    c[M // 2] = np.conj(d[0])
    for l in range(1, q):
        c[l] = d[l]
    for l in range(q + 1, M // 2):
        c[l] = np.conj(d[M // 2 - l])
    for l in range(M // 2 + 1, 3 * q):
        c[l] = d[l - q]
    for l in range(3 * q + 1, M):
        c[l] = np.conj(d[5 * q - l])
    c[q] = d[q].real
    c[3 * q] = d[q].imag
    return (1j ** (n % 4)) * c


def scheme1_closed_form(d, slot, M, F, t):
    """Rectangular-filter closed form for time-staggered DFT spreading.

    Even slots 2n carry the sum chips, odd slots 2n+1 the difference chips;
    both share the (l + M/4, 3M/4 - l) index pairing and the (-1)^n sign.
    Scale-free: multiply by the modulator amplitude outside.
    """
    n_pair, parity = divmod(slot, 2)
    sign = (-1) ** n_pair
    vals = np.zeros(len(t), complex)
    for l in range(M):
        a = d[(l + M // 4) % M]
        b = np.conj(d[(3 * M // 4 - l) % M])
        chip = (a + b) / 2 if parity == 0 else (a - b) / 2
        vals += chip * np.array([f1_direct(ti - l / (M * F), M, F) for ti in t])
    return sign * vals / np.sqrt(M)


def scheme2_closed_form(d, slot, M, F, t):
    """Rectangular-filter closed form for frequency-staggered DFT spreading."""
    Mh = M // 2
    T = 1 / (2 * F)
    t = np.asarray(t, float)
    rot = np.exp(1j * np.pi * t / T)
    vals = np.zeros(len(t), complex)
    for l in range(Mh):
        a = d[(Mh // 2 + l) % Mh] * (1 + rot)
        b = np.conj(d[(Mh // 2 - l) % Mh]) * (1 - rot)
        kern = np.array([f2_direct(ti - l / (M * F), M, F) for ti in t])
        vals += (a + b) / 2 * kern
    return (1j ** (slot % 4)) * vals / np.sqrt(Mh)


def scfdma_closed_form(d, M, F, t):
    """Single-carrier form: (1/M) sum_l d_l f1(t - l/(MF))."""
    vals = np.zeros(len(t), complex)
    for l in range(M):
        vals += d[l] * np.array([f1_direct(ti - l / (M * F), M, F) for ti in t])
    return vals / M


def mapped_closed_form(c, M, F, t):
    """sum_l c_l f1(t - l/(MF)) * F, the mapped-chip single-carrier form."""
    vals = np.zeros(len(t), complex)
    for l in range(M):
        vals += c[l] * np.array([f1_direct(ti - l / (M * F), M, F) for ti in t])
    return vals * F
