"""Classification of singular points of linear differential operators, and
the compatibility test between asymptotic scales and what such operators
can produce at a singularity.

Local analysis happens in the parameter t = z - z0 (t = 1/z at infinity).
Writing the operator in the Euler form theta = t d/dt, the lowest t-slice
is the indicial polynomial; the Newton polygon of the points
(derivative order m, valuation of its coefficient - m) decides regularity
and carries the ramification and degree data of any exponential part
exp(P(Z^(-1/r))).  Local solutions at a regular singular point look like
Z^alpha * (polynomial in log Z) with alpha an indicial root; iterated
logarithms, or log powers that are not small nonnegative integers, can
never arise, which is the lever every witness in this package pulls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .annihilators import DiffOp
from .kernel import Poly, rational_roots_and_cofactor

INFINITY = "infinity"


class NonRationalPoint(Exception):
    """Only rational points and infinity have exact local parameters here."""


@dataclass
class SingularPointReport:
    location: Union[Fraction, str]
    kind: str  # "ordinary" | "regular_singular" | "irregular"
    indicial_exponents: List[Tuple[Fraction, int]]
    nonrational_indicial: List[Tuple[tuple, int]]  # (coefficients, degree)
    log_degree_bound: int
    log_flag: str  # "none" | "possible" | "certain"
    newton_slopes: List[Tuple[Fraction, int]]
    ramification: int
    exp_part_degree: Fraction
    operator_order: int

    def to_dict(self) -> dict:
        return {
            "location": str(self.location),
            "kind": self.kind,
            "indicial_exponents": [[str(r), m] for r, m in self.indicial_exponents],
            "nonrational_indicial": [[[str(c) for c in coeffs], deg]
                                     for coeffs, deg in self.nonrational_indicial],
            "log_degree_bound": self.log_degree_bound,
            "log_flag": self.log_flag,
            "newton_slopes": [[str(s), length] for s, length in self.newton_slopes],
            "ramification": self.ramification,
            "exp_part_degree": str(self.exp_part_degree),
            "operator_order": self.operator_order,
        }


@dataclass
class CompatibilityVerdict:
    verdict: str  # "compatible" | "incompatible"
    reason: str
    matching_slot: Optional[Tuple[Fraction, int]] = None

    def __bool__(self):
        return self.verdict == "compatible"


def _coerce_point(z0):
    if isinstance(z0, str):
        if z0 in ("infinity", "inf", "oo"):
            return INFINITY
        raise NonRationalPoint(f"unsupported point {z0!r}")
    if z0 == math.inf:
        return INFINITY
    if isinstance(z0, (int, Fraction)):
        return Fraction(z0)
    if isinstance(z0, float):
        return Fraction(z0)  # floats are exact binary rationals
    raise NonRationalPoint(f"algebraic points of degree > 1 are out of scope: {z0!r}")


def local_operator(ode: DiffOp, z0) -> DiffOp:
    """The operator rewritten in the local parameter: t = z - z0 at a
    finite point, t = 1/z at infinity (dz/dt handled exactly)."""
    z0 = _coerce_point(z0)
    e = ode.order
    if z0 is not INFINITY:
        return DiffOp([q.shift_arg(z0) for q in ode.coeffs])
    # z = 1/w: D_z = -w^2 D_w, iterated
    a = [ode.coeffs[e - m] for m in range(e + 1)]  # a_m multiplies D_z^m
    reps = [[Poly([1])]]  # D_z^m as sum_j b_j(w) D_w^j
    for _ in range(e):
        prev = reps[-1]
        nxt = [Poly() for _ in range(len(prev) + 1)]
        w2 = Poly([0, 0, 1])
        for j, b in enumerate(prev):
            nxt[j] = nxt[j] - w2 * b.derivative()
            nxt[j + 1] = nxt[j + 1] - w2 * b
        reps.append(nxt)
    J = max(p.degree for p in a if not p.is_zero())
    out = [Poly() for _ in range(e + 1)]
    for m, am in enumerate(a):
        if am.is_zero():
            continue
        rev = am.reversed(J)  # w^J * a_m(1/w)
        for j, b in enumerate(reps[m]):
            if not b.is_zero():
                out[j] = out[j] + rev * b
    while len(out) > 1 and out[-1].is_zero():
        out.pop()
    return DiffOp(list(reversed(out)))


def _theta_slices(local: DiffOp) -> dict:
    """t^e L written as sum_i t^i B_i(theta); returns {i: B_i (Poly in theta)}."""
    e = local.order
    slices = {}
    ff = [Poly([1])]
    for m in range(1, e + 1):
        ff.append(ff[-1] * Poly([-(m - 1), 1]))  # theta (theta-1) ... (theta-m+1)
    for m in range(e + 1):
        am = local.coeffs[e - m]
        if am.is_zero():
            continue
        for i, c in enumerate(am.coeffs):
            if c == 0:
                continue
            key = i + e - m
            slices[key] = slices.get(key, Poly()) + ff[m] * c
    return {i: B for i, B in slices.items() if not B.is_zero()}


def indicial_polynomial(ode: DiffOp, z0) -> Poly:
    """Lowest theta-slice of the operator at the point (polynomial in
    theta = t d/dt); its degree equals the order exactly when the point is
    ordinary or regular singular."""
    local = local_operator(ode, z0)
    slices = _theta_slices(local)
    v = min(slices)
    return slices[v].primitive()


def newton_polygon(ode: DiffOp, z0) -> List[Tuple[Fraction, int]]:
    """Slopes (with horizontal lengths) of the local Newton polygon built
    on the points (m, val(a_m) - m); the slope-0 part is the regular
    (Fuchs) part, positive slopes signal exponential parts."""
    local = local_operator(ode, z0)
    e = local.order
    pts = []
    for m in range(e + 1):
        am = local.coeffs[e - m]
        if am.is_zero():
            continue
        pts.append((m, am.valuation() - m))
    # dominate leftward: each point also bounds everything to its left
    pts.sort()
    suffix = []
    running = None
    for m, h in reversed(pts):
        running = h if running is None else min(running, h)
        suffix.append((m, running))
    suffix.reverse()
    hull = []
    for p in suffix:  # lower convex hull, left to right
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    edges = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slope = Fraction(y2 - y1, x2 - x1)
        edges.append((slope, x2 - x1))
    if not edges:
        edges = [(Fraction(0), 0)]
    return edges


def _log_data(indicial: Poly):
    """(rational roots, nonrational factors, log bound, flag) from the
    indicial polynomial.  Logs are certain at a repeated root; distinct
    roots at integer distance only make them possible (deciding needs
    connection data no caller requires)."""
    roots, cofactor = rational_roots_and_cofactor(indicial)
    nonrational = []
    if cofactor.degree >= 1:
        for fac, mult in cofactor.squarefree_decomposition():
            nonrational.append((tuple(fac.coeffs), fac.degree * mult))
    bound = 0
    flag = "none"
    classes = {}
    for r, m in roots:
        key = r - math.floor(r)  # fractional part groups integer-distance roots
        classes.setdefault(key, []).append((r, m))
    for members in classes.values():
        total = sum(m for _, m in members)
        bound = max(bound, total - 1)
        if any(m >= 2 for _, m in members):
            flag = "certain"
        elif len(members) >= 2 and flag != "certain":
            flag = "possible"
    if cofactor.degree >= 1:
        for fac, mult in cofactor.squarefree_decomposition():
            if mult >= 2:
                flag = "certain"
                bound = max(bound, mult - 1)
            elif fac.degree >= 2 and flag == "none":
                # irrational roots at integer distance cannot be excluded
                # without factoring; stay conservative
                flag = "possible"
    return roots, nonrational, bound, flag


def classify_point(ode: DiffOp, z0) -> SingularPointReport:
    """Full local report: kind, indicial exponents with multiplicities and
    log-degree bound, Newton slopes, ramification, and the degree of the
    exponential part."""
    z0c = _coerce_point(z0)
    local = local_operator(ode, z0c)
    e = local.order
    slopes = newton_polygon(ode, z0c)
    ordinary = local.coeffs[0](Fraction(0)) != 0
    if ordinary:
        kind = "ordinary"
    elif all(s == 0 for s, _ in slopes):
        kind = "regular_singular"
    else:
        kind = "irregular"
    indicial = indicial_polynomial(ode, z0c)
    roots, nonrational, bound, flag = _log_data(indicial)
    if ordinary:
        bound, flag = 0, "none"
    positive = [s for s, _ in slopes if s > 0]
    if positive:
        ram = 1
        for s in positive:
            ram = ram * s.denominator // math.gcd(ram, s.denominator)
        exp_deg = max(positive) * ram
    else:
        ram = 1
        exp_deg = Fraction(0)
    return SingularPointReport(
        location=z0c,
        kind=kind,
        indicial_exponents=roots,
        nonrational_indicial=nonrational,
        log_degree_bound=bound,
        log_flag=flag,
        newton_slopes=slopes,
        ramification=ram,
        exp_part_degree=exp_deg,
        operator_order=e,
    )


def forbidden_asymptotics_check(report: SingularPointReport, scale) -> CompatibilityVerdict:
    """Can a singular expansion of the reported operator contain the scale
    x^alpha (log x)^beta (loglog x)^gamma?

    Incompatible exactly when gamma != 0 (iterated logarithms never occur)
    or beta is not a nonnegative integer within the report's log-degree
    bound.  Compatible verdicts name the matching (exponent, log-degree)
    slot when one is visible."""
    alpha, beta, gam = scale.alpha, scale.beta, scale.gamma
    if gam != 0:
        return CompatibilityVerdict(
            "incompatible",
            "iterated logarithms cannot appear in any solution expansion")
    beta_f = Fraction(beta) if not isinstance(beta, complex) else None
    if beta_f is None or beta_f.denominator != 1 or beta_f < 0:
        return CompatibilityVerdict(
            "incompatible",
            f"log power {beta} is not a nonnegative integer")
    if beta_f > report.log_degree_bound:
        return CompatibilityVerdict(
            "incompatible",
            f"log power {beta} exceeds the operator's log-degree bound "
            f"{report.log_degree_bound}")
    slot = None
    try:
        target = -(Fraction(alpha) + 1)
        for r, _m in report.indicial_exponents:
            if r == target:
                slot = (r, int(beta_f))
                break
    except (TypeError, ValueError):
        pass
    return CompatibilityVerdict("compatible",
                                "scale fits the regular expansion form", slot)
