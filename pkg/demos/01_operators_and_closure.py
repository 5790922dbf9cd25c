#!/usr/bin/env python3
"""Operators, term streams, and closure properties.

A sequence is holonomic when it satisfies a linear recurrence with
polynomial coefficients; its generating function then satisfies a linear
ODE with polynomial coefficients.  This demo builds both kinds of
annihilator, converts between them, and combines solutions by sum and
termwise product with exact certificates.
"""

from fractions import Fraction

from holoseq import (
    Poly,
    Recurrence,
    SequenceStream,
    apply,
    closure_hadamard,
    closure_sum,
    ode_to_rec,
    rec_to_ode,
    singular_points,
    unroll,
)

# --- Catalan numbers: (n+2) c_{n+1} = (4n+2) c_n -------------------------
catalan = Recurrence([Poly([2, 1]), Poly([-2, -4])], initial_terms=[1])
stream = unroll(catalan, [1], 10)
print("Catalan terms:", stream.terms)

# the recurrence really annihilates the stream: residuals are exact zeros
print("residuals:", apply(catalan, stream, range(8)))

# --- to the generating-function side --------------------------------------
ode = rec_to_ode(catalan)
print("\nGF annihilator: order", ode.order, "degree", ode.degree)
print("singular points:", singular_points(ode).rational)
# z = 1/4 shows up: the Catalan GF has its singularity there

back = ode_to_rec(ode)
print("round-trip residuals:",
      apply(back, unroll(catalan, [1], 20), range(10)))

# --- closure: sums and products stay holonomic ----------------------------
ones = Recurrence([Poly([1]), Poly([-1])], initial_terms=[1])
twos = Recurrence([Poly([1]), Poly([-2])], initial_terms=[1])

s = closure_sum(ones, twos)
print("\nannihilator of 1 + 2^n: order", s.order)
terms = [1 + 2 ** n for n in range(60)]
print("certificate (60 terms):",
      "all zero" if all(r == 0 for r in apply(s, SequenceStream.exact(terms),
                                              range(55))) else "FAILED")

h = closure_hadamard(catalan, catalan)
sq = [Fraction(c) ** 2 for c in unroll(catalan, [1], 60).terms]
print("annihilator of catalan^2: order", h.order)
print("certificate:",
      "all zero" if all(r == 0 for r in apply(h, SequenceStream.exact(sq),
                                              range(50))) else "FAILED")
