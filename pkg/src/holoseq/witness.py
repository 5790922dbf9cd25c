"""Executable evidence for the three non-holonomicity arguments, emitting
machine-readable reports.

Every numeric verdict window here is a calibration of a qualitative O(.)
statement: the underlying asymptotics guarantee bounded error terms, not
constants, so each report carries its thresholds with a provenance tag and
a disclaimer.  Verdicts are recomputable from the stored samples.

Sign note: the alternating power differences sum_k binom(n,k)(-1)^k k^a
tend to -(log n)^(-a)/Gamma(1-a); the power witness normalizes with that
(computationally verified) sign.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List

import mpmath
import numpy as np
from mpmath import mp, mpf

from . import hpeval
from .abelian import AsymptoticScale, verify_transfer
from .annihilators import DiffOp
from .guess import guess_exact
from .kernel import Poly
from .primes import PrimeTable, nth_prime_grid, sieve
from .series import Series
from .singclass import classify_point, forbidden_asymptotics_check

_DISCLAIMER = ("verdict windows are derived calibrations of qualitative "
               "O(1)-type asymptotic statements; the windows are the "
               "tool's, the limit behavior is the theorem's")


@dataclass
class WitnessReport:
    experiment: str
    params: dict
    samples: List[dict]
    verdicts: dict
    thresholds: dict
    precision_bits: int
    runtime_ms: int
    notes: List[str] = field(default_factory=list)
    disclaimer: str = _DISCLAIMER

    def to_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "params": self.params,
            "samples": self.samples,
            "verdicts": self.verdicts,
            "thresholds": self.thresholds,
            "precision_bits": self.precision_bits,
            "runtime_ms": self.runtime_ms,
            "notes": self.notes,
            "disclaimer": self.disclaimer,
        }

    def passed(self) -> bool:
        return all(self.verdicts.values())


def _log_singular_op() -> DiffOp:
    # (1-z) y'' - y': the canonical regular-singular operator at 1 whose
    # solutions carry plain logarithms
    return DiffOp([Poly([1, -1]), Poly([-1]), Poly()])


def _log_seq(k, prec):
    with mp.workprec(prec):
        return mpmath.log(k)


def witness_log(nmax: int = 2000, grid=None, target_bits: int = 64) -> WitnessReport:
    """Alternating binomial differences of log k against loglog n:
    d_n = transform(n) - loglog(n) must stay inside (0, 2) with small
    spread, while the loglog scale itself is incompatible with any
    holonomic singular expansion."""
    if nmax > 5000:
        raise ValueError("nmax capped at 5000 for this witness")
    t0 = time.monotonic()
    ns = sorted(set(int(n) for n in (grid if grid is not None
                                     else range(100, nmax + 1))))
    if ns and ns[0] < 2:
        raise ValueError("grid indices need n >= 2 so loglog n is defined")
    values = hpeval.binomial_diff_grid(_log_seq, ns, target_bits)
    samples = []
    for n in ns:
        v = float(values[n].value)
        ref = math.log(math.log(n))
        samples.append({"x": n, "value": v, "reference": ref,
                        "deviation": v - ref})
    devs = [s["deviation"] for s in samples]
    window = [s for s in samples if s["x"] >= 100]
    wdevs = [s["deviation"] for s in window] or devs
    spread = max(wdevs) - min(wdevs)
    report = classify_point(_log_singular_op(), 1)
    check = forbidden_asymptotics_check(report, AsymptoticScale(-1, 0, 1))
    verdicts = {
        "bounded": all(0 < d < 2 for d in devs),
        "spread_small": spread <= 0.5,
        "loglog_scale_incompatible": check.verdict == "incompatible",
    }
    thresholds = {
        "bounded_window": {"low": 0, "high": 2,
                           "provenance": "derived: doubling-precision "
                                         "calibration of an O(1) estimate"},
        "spread_max": {"value": 0.5, "provenance": "derived calibration"},
    }
    p = hpeval._alternating_precision(ns[-1], target_bits)
    return WitnessReport("log", {"nmax": nmax, "grid_size": len(ns)},
                         samples, verdicts, thresholds, p,
                         int((time.monotonic() - t0) * 1000))


def _power_seq(alpha):
    half = (alpha == 0.5)

    def f(k, prec):
        with mp.workprec(prec):
            if half:
                return mpmath.sqrt(k)
            if k == 1:
                return mpf(1)
            return mpmath.exp(mpf(alpha) * mpmath.log(k))
    return f


def log_grid(lo: int, hi: int, points: int) -> List[int]:
    return sorted(set(int(round(x)) for x in np.geomspace(lo, hi, points)))


def witness_powers(alpha=0.5, nmax: int = 5000, grid=None,
                   target_bits: int = 64) -> WitnessReport:
    """Powers n^alpha: for non-integer alpha the normalized alternating
    differences rho_n = -w_n Gamma(1-alpha) (log n)^alpha tend to 1, and
    the fractional log power in the transferred scale is foreign to
    holonomic expansions; for integer alpha the sequence is holonomic and
    the guesser must find a certified recurrence."""
    t0 = time.monotonic()
    if hpeval.degenerate_power(alpha):
        a = int(alpha)
        terms = [Fraction(0)] + [Fraction(n) ** a for n in range(1, 100)]
        res = guess_exact(terms, 4, max(4, abs(a)))
        verdicts = {"holonomic_branch_recurrence_found": res.found}
        samples = [{"x": "guess", "value": bool(res.found),
                    "reference": True, "deviation": 0}]
        if res.found:
            d = res.recurrence.order
            from .annihilators import apply
            residuals = apply(res.recurrence, terms, range(100 - d))
            verdicts["certified_on_all_terms"] = all(r == 0 for r in residuals)
        return WitnessReport(
            "powers", {"alpha": a, "branch": "integer"},
            samples, verdicts,
            {"search_box": {"value": [4, max(4, abs(a))],
                            "provenance": "positive evidence by exact certificate"}},
            0, int((time.monotonic() - t0) * 1000))

    ns = sorted(set(int(n) for n in (grid if grid is not None
                                     else log_grid(500, nmax, 48))))
    values = hpeval.binomial_diff_grid(_power_seq(alpha), ns, target_bits)
    a_frac = (Fraction(alpha) if not isinstance(alpha, float)
              else Fraction(alpha).limit_denominator(10 ** 9))
    g1a = hpeval.gamma(1 - a_frac, target_bits)
    samples = []
    for n in ns:
        w = float(values[n].value)
        ref = -float((mpf(math.log(n)) ** mpf(-float(alpha))) / g1a.value)
        rho = -w * float(g1a.value) * math.log(n) ** float(alpha)
        samples.append({"x": n, "value": w, "reference": ref,
                        "deviation": rho - 1})
    verdicts = {
        "normalized_ratio_near_one":
            all(abs(s["deviation"]) <= 0.35 for s in samples),
    }
    report = classify_point(_log_singular_op(), 1)
    check = forbidden_asymptotics_check(report, AsymptoticScale(0, -a_frac, 0))
    verdicts["fractional_log_scale_incompatible"] = check.verdict == "incompatible"
    thresholds = {
        "ratio_window": {"value": 0.35,
                         "provenance": "derived: the estimate is "
                                       "1 + O(1/log n) with unknown constant"},
    }
    p = hpeval._alternating_precision(ns[-1], target_bits)
    rep = WitnessReport("powers", {"alpha": float(alpha), "nmax": nmax,
                                   "branch": "fractional",
                                   "grid_size": len(ns)},
                        samples, verdicts, thresholds, p,
                        int((time.monotonic() - t0) * 1000))
    rep.notes.append("normalization uses the computationally verified sign "
                     "w_n ~ -(log n)^(-alpha)/Gamma(1-alpha)")
    return rep


def witness_primes(nmax: int = 10 ** 6, grid_points: int = 60) -> WitnessReport:
    """The nth prime: e_n = (g_n - n H_n)/n - loglog n stays bounded (the
    two-term expansion), the guesser finds nothing at (4,4) on 300 primes,
    and the n loglog n term's scale is incompatible with holonomicity."""
    if nmax > 10 ** 6:
        raise ValueError("nmax capped at 10^6 primes")
    t0 = time.monotonic()
    ns = np.array(log_grid(100, nmax, grid_points), dtype=np.int64)
    table = PrimeTable()
    g = nth_prime_grid(ns, table=table)
    h = np.concatenate([[0.0], np.cumsum(1.0 / np.arange(1, int(ns.max()) + 1))])
    samples = []
    for n, gn in zip(ns.tolist(), g.tolist()):
        val = (gn - n * h[n]) / n
        ref = math.log(math.log(n))
        samples.append({"x": n, "value": val, "reference": ref,
                        "deviation": val - ref})
    prime300 = [int(p) for p in table.primes[:300]]
    res = guess_exact(prime300, 4, 4)
    report = classify_point(_log_singular_op(), 1)
    check = forbidden_asymptotics_check(report, AsymptoticScale(1, 0, 1))
    verdicts = {
        "bounded": all(abs(s["deviation"]) <= 2 for s in samples),
        "guesser_not_found": not res.found,
        "nloglogn_scale_incompatible": check.verdict == "incompatible",
    }
    thresholds = {
        "residual_window": {"value": 2,
                            "provenance": "derived: O(n)/n = O(1) with "
                                          "unknown constant"},
        "guess_box": {"value": [4, 4], "provenance": "bounded-search "
                                                     "negative evidence"},
    }
    return WitnessReport("primes", {"nmax": int(nmax), "grid_size": len(ns)},
                         samples, verdicts, thresholds, 53,
                         int((time.monotonic() - t0) * 1000))


def central_binomial_power_rec(k: int) -> "Recurrence":
    """Annihilator of binom(2n,n)^k built by iterated Hadamard closure;
    the powers are the guesser-positive specimens of the transcendence
    circle of ideas (their arithmetic nature itself is out of scope)."""
    from .annihilators import Recurrence
    from .closure import closure_hadamard
    from .kernel import Poly
    base = Recurrence([Poly([1, 1]), Poly([-2, -4])], initial_terms=[1])
    rec = base
    for _ in range(k - 1):
        rec = closure_hadamard(rec, base)
    return rec


def children_rounds_coefficients(N: int) -> List[Fraction]:
    """Exact Taylor coefficients of (1-z)^(-z) = exp(sum_{m>=1} z^{m+1}/m)."""
    u = Series([0, 0] + [Fraction(1, m) for m in range(1, N - 1)], N)
    return u.exp().coeffs


def bell_numbers(N: int) -> List[int]:
    """First N Bell numbers via the binomial recurrence."""
    bell = [1]
    for n in range(N - 1):
        binom = 1
        s = 0
        for k in range(n + 1):
            s += binom * bell[k]
            binom = binom * (n - k) // (k + 1)
        bell.append(s)
    return bell


def witness_misc(transfer_kmax: int = 12) -> WitnessReport:
    """The survey experiments: Lambert-W bootstrap, children-rounds and
    Bell guesser negatives, and the prime-counting Abelian transfer."""
    t0 = time.monotonic()
    samples = []
    verdicts = {}

    # (a) W(x) = log x - loglog x + O(1)
    w_ok = True
    for k in range(1, 9):
        x = 10 ** k
        w = hpeval.lambert_w(x, 64)
        ref = math.log(x) - math.log(math.log(x))
        dev = float(w.value) - ref
        samples.append({"x": f"W(10^{k})", "value": float(w.value),
                        "reference": ref, "deviation": dev})
        w_ok = w_ok and abs(dev) <= 1
    verdicts["lambert_bootstrap_bounded"] = w_ok

    # (b) children rounds: exact coefficients, guesser negative
    coeffs = children_rounds_coefficients(120)
    samples.append({"x": "children_rounds[2]", "value": float(coeffs[2]),
                    "reference": 1.0, "deviation": float(coeffs[2]) - 1.0})
    res_cr = guess_exact(coeffs, 4, 4)
    verdicts["children_rounds_not_found"] = not res_cr.found

    # (c) Bell numbers: guesser negative
    res_bell = guess_exact(bell_numbers(300), 4, 4)
    verdicts["bell_not_found"] = not res_bell.found

    # (d) prime counting function through the Abelian transfer; the ratio
    # overshoots before settling, so the trend is judged from k = 8 on
    N = math.ceil(2 ** transfer_kmax * transfer_kmax ** 2)
    primes = sieve(N + 10)
    pi = np.searchsorted(primes, np.arange(N + 1), side="right").astype(np.float64)
    rep = verify_transfer(pi, AsymptoticScale(1, -1, 0), 0.0,
                          kmax=transfer_kmax,
                          kmin=min(8, max(4, transfer_kmax - 2)))
    samples.append({"x": f"pi-transfer k={transfer_kmax}",
                    "value": rep.final_ratio, "reference": 1.0,
                    "deviation": rep.final_ratio - 1.0})
    verdicts["prime_pi_transfer_trend"] = rep.trend_improving

    thresholds = {
        "lambert_window": {"value": 1, "provenance": "derived: bootstrap "
                                                     "guarantees O(1)"},
        "guess_box": {"value": [4, 4], "provenance": "bounded-search "
                                                     "negative evidence"},
    }
    return WitnessReport("misc", {"transfer_kmax": transfer_kmax},
                         samples, verdicts, thresholds, 64,
                         int((time.monotonic() - t0) * 1000))
