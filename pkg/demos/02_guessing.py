#!/usr/bin/env python3
"""Recurrence guessing: positive certificates and bounded negative evidence.

Guessing solves an exact linear system over the rationals: a hit is a
recurrence with zero residuals on every supplied term, a miss is a proof
that nothing lives in the searched (order, degree) box.  A miss is
evidence of non-holonomicity, never proof; that is what the analytic
witnesses are for.
"""

import math
from fractions import Fraction

from mpmath import mp, mpf

from holoseq import guess_exact, guess_float

# --- Motzkin numbers via an independent formula ----------------------------
motzkin = []
for n in range(60):
    s = sum(math.comb(n, 2 * k) * math.comb(2 * k, k) // (k + 1)
            for k in range(n // 2 + 1))
    motzkin.append(Fraction(s))
print("Motzkin:", [int(m) for m in motzkin[:10]])

res = guess_exact(motzkin, 3, 2)
rec = res.recurrence
print("found: order", rec.order, "degree", rec.degree)
print("coefficients:", [p.coeffs for p in rec.coeffs])

# --- primes: nothing in the (4,4) box --------------------------------------
primes = []
n = 2
while len(primes) < 300:
    if all(n % p for p in primes):
        primes.append(n)
    n += 1
res = guess_exact(primes, 4, 4)
print("\nprimes, 300 terms, box (4,4):",
      "NotFound" if not res.found else "found?!")
print("searched boxes:", res.provenance["searched"][:3], "...")

# --- float data with held-out certification --------------------------------
with mp.workprec(128):
    terms = [mpf(1) / (n + 1) ** 2 for n in range(80)]
res = guess_float(terms, 2, 3, residual_tol=1e-20, precision_bits=128)
print("\n1/(n+1)^2 from 128-bit floats:",
      "order %d degree %d" % (res.recurrence.order, res.recurrence.degree)
      if res.found else "NotFound")
print("held-out residual:",
      res.provenance["residual_stats"]["max_normalized_residual"])
