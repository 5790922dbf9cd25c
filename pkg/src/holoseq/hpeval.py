"""High-precision numerics with explicit error control.

The central difficulty is the alternating binomial sum

    sum_k binom(n,k) (-1)^k f(k),

whose terms reach about 2^n while the result stays O(loglog n): the sum is
evaluated at a working precision of roughly n + g + 2*log2(n) bits to
absorb the cancellation, where 2^-g is the requested absolute error.

Values are carried as ``BigReal``: a midpoint at working precision plus an
absolute error bound.  Bounds are propagated conservatively (midpoint
arithmetic with doubled ulp slop, not directed rounding); the doubling
invariant (recompute at p+64 bits, compare within bounds) is the
operational check of the model.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from typing import Callable, Iterable, Union

import mpmath
from mpmath import mp, mpc, mpf

DEFAULT_PRECISION_CAP = 1 << 18  # bits


class PrecisionExhausted(Exception):
    """The requested error bound is unachievable at the configured
    precision cap (or with the precision of the supplied data)."""


class PoleAtNonpositiveInteger(Exception):
    """Gamma evaluated at a pole."""


def precision_cap() -> int:
    env = os.environ.get("HOLO_PRECISION_CAP")
    if env:
        return int(env)
    return DEFAULT_PRECISION_CAP


def _check_precision(p: int):
    cap = precision_cap()
    if p > cap:
        raise PrecisionExhausted(
            f"needs {p} working bits, precision cap is {cap}")


Number = Union[int, float, Fraction, mpf, mpc]


class BigReal:
    """Midpoint value (mpf or mpc) with an absolute error bound (mpf).

    invariant: |stored - true| <= bound.
    """

    __slots__ = ("value", "bound")

    def __init__(self, value, bound=0):
        self.value = value
        self.bound = mpf(bound)
        if self.bound < 0:
            raise ValueError("negative error bound")

    @classmethod
    def exact(cls, x: Number, prec: int = None) -> "BigReal":
        """Round an exact number to the given precision (default current);
        rationals carry a one-division rounding bound, machine numbers
        convert exactly."""
        with mp.workprec(prec or mp.prec):
            if isinstance(x, Fraction):
                v = mpf(x.numerator) / x.denominator
                return cls(v, 2 * _ulp(v))
            v = mpc(x) if isinstance(x, (complex, mpc)) else mpf(x)
            return cls(v, 0)

    def is_complex(self) -> bool:
        return isinstance(self.value, (mpc, complex))

    def __add__(self, other):
        other = _coerce(other)
        v = self.value + other.value
        return BigReal(v, self.bound + other.bound + 2 * _ulp(v))

    __radd__ = __add__

    def __neg__(self):
        return BigReal(-self.value, self.bound)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        v = self.value * other.value
        b = (abs(self.value) * other.bound + abs(other.value) * self.bound
             + self.bound * other.bound + 2 * _ulp(v))
        return BigReal(v, b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        denom = abs(other.value) - other.bound
        if denom <= 0:
            raise ZeroDivisionError("divisor interval contains zero")
        v = self.value / other.value
        b = (self.bound + abs(v) * other.bound) / denom + 2 * _ulp(v)
        return BigReal(v, b)

    def __abs__(self):
        return BigReal(abs(self.value), self.bound)

    def __float__(self):
        return float(self.value)

    def __complex__(self):
        return complex(self.value)

    def log2_bound(self) -> float:
        if self.bound == 0:
            return float("-inf")
        return float(mpmath.log(self.bound, 2))

    def agrees_with(self, other: "BigReal") -> bool:
        """Do the two enclosures overlap?"""
        return abs(self.value - other.value) <= self.bound + other.bound

    def __repr__(self):
        return f"BigReal({self.value}, bound~2^{self.log2_bound():.1f})"


def _coerce(x) -> BigReal:
    if isinstance(x, BigReal):
        return x
    if isinstance(x, Fraction):
        return BigReal.exact(x)
    return BigReal(mpf(x) if not isinstance(x, (complex, mpc)) else mpc(x), 0)


def _ulp(v) -> mpf:
    if v == 0:
        return mpf(2) ** (-mp.prec)
    m = abs(v.real) + abs(v.imag) if isinstance(v, mpc) else abs(v)
    _, e = mpmath.frexp(m)
    return mpf(2) ** (e - mp.prec + 1)


# ---------------------------------------------------------------------------
# Alternating binomial sums
# ---------------------------------------------------------------------------

def _alternating_precision(n: int, target_bits: int) -> int:
    return n + target_bits + 2 * math.ceil(math.log2(n + 2)) + 12


def binomial_diff_eval(f: Callable, n: int, target_bits: int,
                       start: int = 1) -> BigReal:
    """sum_{k=start}^{n} binom(n,k) (-1)^k f(k) with |error| <= 2^-target_bits.

    `f(k, prec)` must return an mpf/mpc with relative error at most
    2^(4-prec).  The working precision is raised to about
    n + target_bits + 2*log2(n) bits so the ~2^n cancellation between terms
    cannot contaminate the result.
    """
    return binomial_diff_grid(f, [n], target_bits, start=start)[n]


def binomial_diff_grid(f: Callable, ns: Iterable[int], target_bits: int,
                       start: int = 1) -> dict:
    """Evaluate the alternating binomial sum at every n in `ns`, sharing
    one table of f-values computed at the highest required precision.
    Deterministic: identical (ns, target_bits) give identical bits."""
    ns = sorted(set(int(n) for n in ns))
    if not ns:
        return {}
    if ns[0] < 0:
        raise ValueError("indices must be nonnegative")
    nmax = ns[-1]
    g = target_bits
    p = _alternating_precision(nmax, g)
    _check_precision(p)
    for _ in range(3):
        with mp.workprec(p):
            table = [None] * (nmax + 1)
            for k in range(start, nmax + 1):
                table[k] = f(k, p)
            out = {}
            worst_deficit = 0
            ns_set = set(ns)
            # walk n upward, updating the binomial row incrementally
            row = [1]  # binom(0, k)
            for n in range(0, nmax + 1):
                if n > 0:
                    new = [1] * (n + 1)
                    for k in range(1, n):
                        new[k] = row[k - 1] + row[k]
                    row = new
                if n not in ns_set:
                    continue
                s = mpf(0)
                gross = mpf(0)
                for k in range(max(start, 0), n + 1):
                    t = row[k] * table[k]
                    gross += abs(t)
                    s = s - t if k % 2 else s + t
                err = gross * mpf(2) ** (4 - p) * (2 * n + 6)
                target = mpf(2) ** (-g)
                if err > target:
                    deficit = int(mpmath.ceil(mpmath.log(err / target, 2)))
                    worst_deficit = max(worst_deficit, deficit)
                out[n] = BigReal(s, err)
            if worst_deficit == 0:
                return out
        p += worst_deficit + 16
        _check_precision(p)
    raise PrecisionExhausted("alternating sum failed to meet its bound")


def binomial_diff_stream_eval(stream, n: int, target_bits: int,
                              start: int = 0) -> BigReal:
    """Alternating binomial sum over stored float terms with per-term
    bounds.  The achievable accuracy is limited by the data: if the
    amplified input bounds exceed the target, PrecisionExhausted is raised
    (more working precision cannot help)."""
    terms = stream.terms
    bounds = stream.bounds or [0.0] * len(terms)
    if len(terms) <= n:
        raise ValueError("stream too short")
    p = _alternating_precision(n, target_bits)
    _check_precision(p)
    with mp.workprec(p):
        s = mpf(0)
        amplified = mpf(0)
        gross = mpf(0)
        binom = 1
        for k in range(0, n + 1):
            if k >= start:
                t = binom * mpf(terms[k]) if not isinstance(terms[k], (mpc, complex)) \
                    else binom * mpc(terms[k])
                gross += abs(t)
                amplified += binom * mpf(bounds[k])
                s = s - t if k % 2 else s + t
            binom = binom * (n - k) // (k + 1)
        err = amplified + gross * mpf(2) ** (4 - p) * (2 * n + 6)
        if err > mpf(2) ** (-target_bits):
            raise PrecisionExhausted(
                "input bounds amplify beyond the requested accuracy")
        return BigReal(s, err)


def degenerate_power(alpha) -> bool:
    """Integer exponents make k^alpha holonomic (polynomial or
    polylogarithmic); callers branch on this."""
    if isinstance(alpha, complex) or isinstance(alpha, mpc):
        return alpha.imag == 0 and float(alpha.real) == int(alpha.real)
    return float(alpha) == int(alpha)


def power_diff_eval(alpha, n: int, target_bits: int) -> BigReal:
    """w_n = sum_{k=1}^n binom(n,k) (-1)^k k^alpha, k^alpha = exp(alpha log k).

    alpha may be complex; integer alpha is allowed (the degenerate
    holonomic case, see `degenerate_power`)."""
    a_is_complex = isinstance(alpha, (complex, mpc)) and mpc(alpha).imag != 0

    def f(k, prec):
        with mp.workprec(prec):
            if a_is_complex:
                return mpmath.exp(mpc(alpha) * mpmath.log(k))
            return mpmath.exp(mpf(alpha) * mpmath.log(k)) if k > 1 else mpf(1)

    return binomial_diff_eval(f, n, target_bits, start=1)


# ---------------------------------------------------------------------------
# Gamma via argument-shifted Stirling
# ---------------------------------------------------------------------------

def _to_mpf_arg(x):
    if isinstance(x, BigReal):
        return x.value, x.bound
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator, mpf(0)
    return mpf(x), mpf(0)


def gamma(x, target_bits: int = 64) -> BigReal:
    """Gamma(x) for real x, via Stirling's series at a shifted argument
    with the tail truncated at a rigorously bounded term (for real positive
    arguments the remainder is bounded by the first omitted term)."""
    if isinstance(x, (int, Fraction)) and x == int(x) and x <= 0:
        raise PoleAtNonpositiveInteger(f"gamma pole at {x}")
    wp = target_bits + 24
    _check_precision(wp)
    with mp.workprec(wp):
        xv, xb = _to_mpf_arg(x)
        if xv == mpmath.floor(xv) and xv <= 0:
            raise PoleAtNonpositiveInteger(f"gamma pole at {xv}")
        shift = max(0, int(mpmath.ceil(wp / mpf(9) + 3 - xv)))
        xs = xv + shift
        # Stirling at xs: (xs - 1/2) log xs - xs + log(2 pi)/2 + series
        lg = (xs - mpf(1) / 2) * mpmath.log(xs) - xs \
            + mpmath.log(2 * mpmath.pi) / 2
        tail = None
        j = 1
        prev_mag = mpf("inf")
        while True:
            b2j = mpmath.bernoulli(2 * j)
            term = b2j / ((2 * j) * (2 * j - 1) * xs ** (2 * j - 1))
            mag = abs(term)
            if mag >= prev_mag or mag < mpf(2) ** (-wp - 4):
                tail = mag
                break
            lg += term
            prev_mag = mag
            j += 1
            if j > 4 * wp:
                tail = mag
                break
        gs = mpmath.exp(lg)
        prod = mpf(1)
        for i in range(shift):
            prod *= (xv + i)
        value = gs / prod
        # relative error: series tail + rounding on O(shift + j) operations,
        # plus first-order input sensitivity |digamma| * xb
        rel = tail + mpf(2) ** (-wp) * (shift + j + 8) * 4
        sens = abs(mpmath.digamma(xv)) * xb if xb else mpf(0)
        bound = abs(value) * rel * 2 + sens * abs(value) * 2
        br = BigReal(value, bound)
    if br.bound > mpf(2) ** (-target_bits) * max(1, abs(br.value)):
        raise PrecisionExhausted("gamma failed to meet its bound")
    return br


# ---------------------------------------------------------------------------
# Lambert W (principal branch, x >= e)
# ---------------------------------------------------------------------------

def lambert_w(x, target_bits: int = 64) -> BigReal:
    """w with w e^w = x, for x >= e, by Newton iteration seeded at
    log x - loglog x."""
    wp = target_bits + 32
    _check_precision(wp)
    with mp.workprec(wp):
        xv, xb = _to_mpf_arg(x)
        if xv < mpmath.e - mpf(2) ** (-20):
            raise ValueError("lambert_w domain is x >= e")
        lx = mpmath.log(xv)
        w = lx - mpmath.log(lx) if lx > 1 else mpf(1)
        last_step = mpf("inf")
        for _ in range(200):
            ew = mpmath.exp(w)
            step = (w * ew - xv) / (ew * (w + 1))
            w = w - step
            if abs(step) < mpf(2) ** (-wp + 4) * max(1, abs(w)):
                last_step = abs(step)
                break
            last_step = abs(step)
        # w'(x) = 1/(x (1 + w)); quadratic convergence makes the final
        # step a sound error proxy
        sens = xb / (xv * (1 + w)) if xb else mpf(0)
        return BigReal(w, 2 * last_step + 4 * _ulp(w) + sens)


# ---------------------------------------------------------------------------
# Harmonic numbers
# ---------------------------------------------------------------------------

def harmonic(n: int) -> Fraction:
    """Exact H_n = 1 + 1/2 + ... + 1/n."""
    if n < 1:
        raise ValueError("harmonic numbers start at n = 1")
    return _hsum(1, n + 1)


def _hsum(lo: int, hi: int) -> Fraction:
    # divide and conquer keeps intermediate denominators balanced
    if hi - lo <= 8:
        return sum(Fraction(1, k) for k in range(lo, hi))
    mid = (lo + hi) // 2
    return _hsum(lo, mid) + _hsum(mid, hi)
