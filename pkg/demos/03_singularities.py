#!/usr/bin/env python3
"""Classifying singular points of linear ODEs.

Solutions of a polynomial-coefficient ODE near a singular point look like
exp(P(Z^(-1/r))) Z^alpha (polynomial in log Z) (series in Z^(1/r)).  The
classifier extracts every ingredient: the indicial exponents alpha, the
log-degree bound, the Newton-polygon slopes, the ramification r, and the
degree of P.  What can NEVER appear: iterated logarithms, or log powers
outside 0..bound.  That restriction is the engine of every
non-holonomicity proof in this package.
"""

from holoseq import AsymptoticScale, DiffOp, Poly, classify_point, forbidden_asymptotics_check

P = lambda *c: Poly(c)


def show(name, ode, point):
    rep = classify_point(ode, point)
    print(f"{name} at {point}")
    print("   kind:", rep.kind)
    print("   exponents:", [(str(r), m) for r, m in rep.indicial_exponents])
    print("   log bound:", rep.log_degree_bound, f"({rep.log_flag})")
    print("   newton slopes:", [(str(s), l) for s, l in rep.newton_slopes])
    if rep.kind == "irregular":
        print("   ramification:", rep.ramification,
              " exp-part degree:", rep.exp_part_degree)
    print()
    return rep


# the operator annihilating log(1/(1-z)): double exponent 0 forces a log
rep = show("(1-z) y'' - y'", DiffOp([P(1, -1), P(-1), Poly()]), 1)

# Euler operator: exponents +-1, no forced log
show("z^2 y'' + z y' - y", DiffOp([P(0, 0, 1), P(0, 1), P(-1)]), 0)

# e^z at infinity: irregular, slope 1
show("y' - y", DiffOp([P(1), P(-1)]), "infinity")

# Airy at infinity: ramified exponential part exp(+-(2/3) z^(3/2))
show("y'' - z y", DiffOp([P(1), Poly(), P(0, -1)]), "infinity")

# --- which asymptotic scales could a holonomic function produce? -----------
for scale in [AsymptoticScale(0, 1, 0),     # log x: fine
              AsymptoticScale(0, 2, 0),     # log^2 x: needs bound >= 2
              AsymptoticScale(0, -0.5, 0),  # 1/sqrt(log): never
              AsymptoticScale(0, 0, 1)]:    # loglog: never
    verdict = forbidden_asymptotics_check(rep, scale)
    print(f"scale {scale.describe():35s} -> {verdict.verdict}"
          + (f" ({verdict.reason})" if verdict.verdict == "incompatible" else ""))
