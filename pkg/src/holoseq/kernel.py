"""Exact arithmetic foundation: dense univariate polynomials and rational
functions over arbitrary-precision rationals, plus exact nullspace
computation for matrices over the rationals or over the rational-function
field.

Everything in this module is pure value semantics; no operation mutates
its inputs.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class Poly:
    """Dense univariate polynomial with Fraction coefficients, ascending
    degree.  The zero polynomial is represented by an empty coefficient
    list; otherwise the trailing (leading-degree) coefficient is nonzero.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rational] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c: Rational) -> "Poly":
        return cls([c])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other) -> "Poly":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] += c
        return Poly(a)

    def __radd__(self, other) -> "Poly":
        return self.__add__(other)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other) -> "Poly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "Poly":
        return _as_poly(other) + (-self)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    def __rmul__(self, other) -> "Poly":
        return self.__mul__(other)

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x):
        """Horner evaluation; x may be Fraction, int, float, mpf or Poly."""
        if not self.coeffs:
            return x * 0
        acc = None
        for c in reversed(self.coeffs):
            if acc is None:
                acc = c if not isinstance(x, Poly) else Poly([c])
            else:
                acc = acc * x + c
        return acc

    def shift_arg(self, c: Rational) -> "Poly":
        """Return the polynomial X |-> p(X + c)."""
        return self(Poly([_frac(c), 1]))

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def reversed(self, degree: int = None) -> "Poly":
        """Coefficient reversal x^d * p(1/x) padded to the given degree."""
        d = self.degree if degree is None else degree
        if d < self.degree:
            raise ValueError("reversal degree below polynomial degree")
        cs = list(self.coeffs) + [Fraction(0)] * (d + 1 - len(self.coeffs))
        return Poly(cs[::-1])

    def valuation(self) -> int:
        """Index of the lowest nonzero coefficient; 0 for the zero poly."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return 0

    def divmod(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        dlead = other.coeffs[-1]
        dd = other.degree
        for i in range(len(rem) - 1, dd - 1, -1):
            if rem[i] == 0:
                continue
            f = rem[i] / dlead
            q[i - dd] = f
            for j, c in enumerate(other.coeffs):
                rem[i - dd + j] -= f * c
        return Poly(q), Poly(rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(_as_poly(other))[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(_as_poly(other))[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("inexact polynomial division")
        return q

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        return Poly([c / lead for c in self.coeffs])

    def content(self) -> Fraction:
        """Positive rational c such that self/c has coprime integer
        coefficients; 0 for the zero polynomial."""
        if self.is_zero():
            return Fraction(0)
        den = math.lcm(*[c.denominator for c in self.coeffs])
        num = math.gcd(*[c.numerator for c in self.coeffs])
        return Fraction(num, den)

    def primitive(self) -> "Poly":
        c = self.content()
        if c == 0:
            return self
        p = Poly([x / c for x in self.coeffs])
        if p.coeffs[-1] < 0:
            p = -p
        return p

    def squarefree_decomposition(self):
        """Yield (factor, multiplicity) with factor squarefree, product of
        factor^multiplicity equal to self up to a constant."""
        p = self
        if p.degree < 1:
            return []
        out = []
        g = poly_gcd(p, p.derivative())
        w = p.exact_div(g)
        m = 1
        while w.degree > 0:
            y = poly_gcd(w, g)
            fac = w.exact_div(y)
            if fac.degree > 0:
                out.append((fac.primitive(), m))
            w = y
            g = g.exact_div(y)
            m += 1
        return out

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*x")
            else:
                parts.append(f"{c}*x^{i}")
        return "Poly(" + " + ".join(parts) + ")"


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    return Poly([x])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd via the Euclidean algorithm."""
    while not b.is_zero():
        a, b = b, a % b
    if a.is_zero():
        return a
    return a.monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return Poly()
    return (a * b).exact_div(poly_gcd(a, b)).monic()


def poly_arith(a: Poly, b, op: str) -> Poly:
    """Spec-level polynomial arithmetic dispatcher.

    op = "add" | "mul" take two polynomials; op = "shift_arg" takes a
    polynomial and a rational shift c and returns X |-> a(X + c).
    """
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "shift_arg":
        return a.shift_arg(b)
    raise ValueError(f"unknown polynomial operation {op!r}")


class RatFun:
    """Rational function: quotient of two Polys, stored reduced with a
    monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _as_poly(num)
        den = Poly([1]) if den is None else _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly([1])
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        lead = den.coeffs[-1]
        if lead != 1:
            num = num * (1 / lead)
            den = den.monic()
        self.num, self.den = num, den

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFun(self.num * other.den + other.num * self.den,
                      self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den)

    def __sub__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _as_ratfun(other) + (-self)

    def __mul__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _as_ratfun(other) / self

    def derivative(self) -> "RatFun":
        return RatFun(self.num.derivative() * self.den
                      - self.num * self.den.derivative(),
                      self.den * self.den)

    def shift_arg(self, c: Rational) -> "RatFun":
        """X |-> self(X + c)."""
        return RatFun(self.num.shift_arg(c), self.den.shift_arg(c))

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def __repr__(self):
        if self.den == Poly([1]):
            return f"RatFun({self.num!r})"
        return f"RatFun({self.num!r}, {self.den!r})"


def _as_ratfun(x):
    if isinstance(x, RatFun):
        return x
    if isinstance(x, (int, Fraction, Poly)):
        return RatFun(x)
    return NotImplemented


# ---------------------------------------------------------------------------
# Exact nullspace
# ---------------------------------------------------------------------------

def nullspace(m: Sequence[Sequence]) -> list:
    """Exact basis of the right nullspace of a rectangular matrix.

    Entries may be ints/Fractions (fraction-free Bareiss elimination) or
    Poly/RatFun (field elimination over the rational functions).  Returns a
    list of basis vectors; entries are Fractions in the scalar case and
    RatFuns otherwise.  An empty list means the nullspace is trivial.
    """
    rows = [list(r) for r in m]
    if not rows:
        return []
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix")
    if ncols == 0:
        return []
    scalar = all(isinstance(x, (int, Fraction)) for r in rows for x in r)
    if scalar:
        return _nullspace_scalar(rows, ncols)
    return _nullspace_ratfun(rows, ncols)


def _nullspace_scalar(rows, ncols):
    # Scale each row to integers; Bareiss keeps intermediate entries as
    # minors of the original matrix, bounding coefficient growth.
    mat = []
    for r in rows:
        fr = [_frac(x) for x in r]
        den = math.lcm(*[x.denominator for x in fr]) if fr else 1
        mat.append([int(x * den) for x in fr])
    nrows = len(mat)
    pivots = []  # (row, col)
    prev = 1
    prow = 0
    for col in range(ncols):
        # find pivot
        piv = None
        for i in range(prow, nrows):
            if mat[i][col]:
                piv = i
                break
        if piv is None:
            continue
        mat[prow], mat[piv] = mat[piv], mat[prow]
        pc = mat[prow][col]
        # Bareiss one-step divisions stay exact only if every row below the
        # pivot is rescaled, including rows with a zero in the pivot column
        for i in range(prow + 1, nrows):
            ric = mat[i][col]
            row_i = mat[i]
            row_p = mat[prow]
            for j in range(col, ncols):
                row_i[j] = (pc * row_i[j] - ric * row_p[j]) // prev
            row_i[col] = 0
        pivots.append((prow, col))
        prev = pc
        prow += 1
        if prow == nrows:
            break
    return _back_substitute(mat, pivots, ncols, Fraction(1), Fraction(0))


def _nullspace_ratfun(rows, ncols):
    mat = [[x if isinstance(x, RatFun) else RatFun(x) for x in r]
           for r in rows]
    nrows = len(mat)
    pivots = []
    prow = 0
    for col in range(ncols):
        piv = None
        for i in range(prow, nrows):
            if not mat[i][col].is_zero():
                piv = i
                break
        if piv is None:
            continue
        mat[prow], mat[piv] = mat[piv], mat[prow]
        pc = mat[prow][col]
        for i in range(prow + 1, nrows):
            if mat[i][col].is_zero():
                continue
            f = mat[i][col] / pc
            for j in range(col, ncols):
                mat[i][j] = mat[i][j] - f * mat[prow][j]
        pivots.append((prow, col))
        prow += 1
        if prow == nrows:
            break
    one = RatFun(1)
    zero = RatFun(0)
    return _back_substitute(mat, pivots, ncols, one, zero)


def _back_substitute(mat, pivots, ncols, one, zero):
    pivot_cols = [c for _, c in pivots]
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        v = [zero] * ncols
        v[fc] = one
        for (pr, pc) in reversed(pivots):
            s = zero
            for j in range(pc + 1, ncols):
                if v[j] is not zero:
                    s = s + _frac_or_rf(mat[pr][j]) * v[j]
            piv = _frac_or_rf(mat[pr][pc])
            v[pc] = -s / piv
        basis.append(v)
    return basis


def _frac_or_rf(x):
    if isinstance(x, int):
        return Fraction(x)
    return x


# ---------------------------------------------------------------------------
# Rational roots
# ---------------------------------------------------------------------------

def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24 with these witnesses
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    if n % 2 == 0:
        return 2
    rng = random.Random(0xC0FFEE ^ n)
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _factorize(n: int) -> dict:
    """Prime factorization of a positive integer."""
    factors = {}
    for p in (2, 3, 5, 7, 11, 13):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_probable_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        d = _pollard_brent(m)
        stack.append(d)
        stack.append(m // d)
    return factors


def _divisors(n: int) -> list:
    divs = [1]
    for p, e in _factorize(n).items():
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return divs


def rational_roots(p: Poly) -> list:
    """All rational roots of p, with multiplicity (each root repeated).

    Rational-root test over the primitive part: candidates num/den with
    num dividing the trailing coefficient and den dividing the leading one.
    """
    roots, _ = rational_roots_and_cofactor(p)
    out = []
    for r, m in roots:
        out.extend([r] * m)
    return out


def rational_roots_and_cofactor(p: Poly):
    """Return ([(root, multiplicity), ...], cofactor) where the cofactor is
    the primitive polynomial left after deflating all rational roots (it has
    no rational roots; degree 0 when p splits over the rationals)."""
    if p.is_zero():
        raise ValueError("rational roots of the zero polynomial")
    q = p.primitive()
    roots = []
    # x = 0 roots
    v = q.valuation()
    if v > 0:
        roots.append((Fraction(0), v))
        q = Poly(q.coeffs[v:])
    if q.degree >= 1:
        a0 = abs(q.coeffs[0].numerator)
        alead = abs(q.coeffs[-1].numerator)
        cands = set()
        for num in _divisors(a0):
            for den in _divisors(alead):
                cands.add(Fraction(num, den))
                cands.add(Fraction(-num, den))
        for r in sorted(cands):
            if q.degree < 1:
                break
            mult = 0
            while q(r) == 0:
                mult += 1
                q = q.exact_div(Poly([-r, 1]))
            if mult:
                roots.append((r, mult))
    roots.sort()
    return roots, q.primitive() if not q.is_zero() else q
