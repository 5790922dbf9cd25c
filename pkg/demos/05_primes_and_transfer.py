#!/usr/bin/env python3
"""The nth prime is not holonomic, and the Abelian transfer that shows it.

Two ingredients: the two-term expansion g_n = n log n + n loglog n + O(n)
(the loglog term is the obstruction), and the transfer theorem moving a
sequence scale phi(n) to the generating-function element
Gamma(a+1) (1-z)^(-1) phi(1/(1-z)) inside sectors at z = 1.
"""

import math

import numpy as np

from holoseq import AsymptoticScale, cipolla_residual, li, li_series, nth_prime, prime_pi, sieve, transfer, verify_transfer
from holoseq.abelian import truncation_depth
from holoseq.witness import witness_primes

print("g_0..g_6:", [nth_prime(n) for n in range(7)])
print("pi(100) =", prime_pi(100))

print("\nresidual g_n/n - log n - loglog n (bounded, slowly drifting):")
for n in [100, 10 ** 3, 10 ** 4, 10 ** 5, 10 ** 6]:
    print(f"   n=10^{int(math.log10(n))}  residual = {cipolla_residual(n):+.4f}")

q = li(10 ** 6, bits=64)
s = li_series(10 ** 6)
print(f"\nLi(10^6): quadrature {float(q.value):.4f}, "
      f"series {float(s.value):.4f} (+/- {float(s.bound):.3f})")
print("pi(10^6) =", prime_pi(10 ** 6), " (Li overshoots, as it must here)")

# --- transfer: pi(n) ~ n/log n  =>  GF ~ (1-z)^(-2)/log(1/(1-z)) ------------
scale = AsymptoticScale(1, -1, 0)
print("\nsingular element:", transfer(scale).describe())

N = truncation_depth(12)
primes = sieve(N + 10)
pi_vals = np.searchsorted(primes, np.arange(N + 1), side="right").astype(float)
for theta in [0.0, math.pi / 4]:
    rep = verify_transfer(pi_vals, scale, theta, kmax=12, kmin=8)
    print(f"theta = {theta:.3f}: ratios",
          " ".join(f"{s.ratio:.4f}" for s in rep.samples),
          "| improving:", rep.trend_improving)

# --- the packaged witness ---------------------------------------------------
rep = witness_primes(nmax=10 ** 5, grid_points=20)
print("\nprime witness verdicts:", rep.verdicts)
