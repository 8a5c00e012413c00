"""
FBMC-OQAM synthesis and analysis
================================

Real symbols ride a half-period lattice: subcarrier m, slot n carries a
real value x[m, n] phased by j^(m+n).  The bank is orthogonal only in the
real field, so a matched analysis recovers x in the real part while the
imaginary part holds the intrinsic interference leaked by the neighbors.
"""

import numpy as np

from wavelab.fbmc import analyze, default_phase, synthesize
from wavelab.filters import make_filter

F0 = 15e3
M, N = 16, 12

rng = np.random.default_rng(7)
f = make_filter("hermite", M, K=4)
theta = default_phase(M, N)

# =====================================================================
# Round trip a random real grid.
# =====================================================================
x = rng.normal(size=(M, N))
s = synthesize(x, theta, f, F0)
y = analyze(s, theta, f, F0)
print(f"burst: {s.samples.size} samples at {s.sample_rate / 1e3:.0f} kHz,"
      f" starting at sample {s.start}")
print(f"real-field loopback error: {np.max(np.abs(y.real - x)):.2e}")

# =====================================================================
# A single unit pulse shows where the leakage goes: the real part is
# clean at the pulse and at its neighbors, the imaginary part is not.
# =====================================================================
x1 = np.zeros((M, N))
x1[5, 6] = 1.0
y1 = analyze(synthesize(x1, theta, f, F0), theta, f, F0)
print(f"\npulse recovered: real {y1[5, 6].real:+.6f}, imag {y1[5, 6].imag:+.2e}")
for dm, dn in ((0, 1), (1, 0), (1, 1)):
    v = y1[5 + dm, 6 + dn]
    print(f"neighbor (+{dm},+{dn}): real {v.real:+.2e}, imag {v.imag:+.3f}")
print("interference is confined to the imaginary axis, hence real slicing")
