"""Candidate annihilating recurrences from finite term data.

Positive results are certificates: a returned recurrence has exactly zero
residuals on every supplied term (exact mode) or normalized residuals
within tolerance on held-out terms (float mode).  A NotFound result is
*evidence*, never proof; the searched (order, degree) box is always
recorded in the provenance block.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from mpmath import mp, mpf

from .annihilators import Recurrence, apply
from .kernel import Poly, nullspace

# Mersenne prime 2^61 - 1: modular pre-filter rejects full-rank systems
# without touching big rationals
_FILTER_PRIME = (1 << 61) - 1


class InsufficientTerms(Exception):
    """Not enough terms for the requested search box."""


@dataclass
class GuessResult:
    found: bool
    recurrence: Optional[Recurrence]
    provenance: dict = field(default_factory=dict)

    def __bool__(self):
        return self.found


def _require_terms(n_terms: int, max_order: int, max_degree: int):
    need = (max_order + 1) * (max_degree + 1) + 20
    if n_terms < need:
        raise InsufficientTerms(
            f"need at least {need} terms for a ({max_order},{max_degree}) "
            f"search, got {n_terms}")


def _ansatz_rows(terms, r: int, d: int, n_rows: int):
    """Integer matrix rows of the linear system: row n has entries
    n^j * f_{n+r-i} for columns (i, j), scaled to clear denominators."""
    rows = []
    for n in range(n_rows):
        window = terms[n:n + r + 1]
        den = 1
        for t in window:
            den = den * t.denominator // math.gcd(den, t.denominator)
        npow = [1]
        for _ in range(d):
            npow.append(npow[-1] * n)
        row = []
        for i in range(r + 1):
            t = terms[n + r - i]
            base = t.numerator * (den // t.denominator)
            for j in range(d + 1):
                row.append(base * npow[j])
        rows.append(row)
    return rows


def _rank_mod_p(rows, ncols: int, p: int) -> int:
    mat = [[x % p for x in row] for row in rows]
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(mat)):
            if mat[i][col]:
                piv = i
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = pow(mat[rank][col], p - 2, p)
        prow = [x * inv % p for x in mat[rank]]
        mat[rank] = prow
        for i in range(rank + 1, len(mat)):
            c = mat[i][col]
            if c:
                mat[i] = [(a - c * b) % p for a, b in zip(mat[i], prow)]
        rank += 1
        if rank == min(len(mat), ncols):
            break
    return rank


def _vector_to_recurrence(vec, r: int, d: int) -> Optional[Recurrence]:
    polys = []
    for i in range(r + 1):
        polys.append(Poly(vec[i * (d + 1):(i + 1) * (d + 1)]))
    if all(p.is_zero() for p in polys):
        return None
    return Recurrence(polys).reduced()


def _certify_exact(rec: Recurrence, terms) -> bool:
    d = rec.order
    if d >= len(terms):
        return False
    res = apply(rec, terms, range(len(terms) - d))
    return all(x == 0 for x in res)


def _operator_size(rec: Recurrence) -> int:
    return sum(c.numerator.bit_length() + c.denominator.bit_length()
               for p in rec.coeffs for c in p.coeffs)


def guess_exact(terms: Sequence, max_order: int, max_degree: int) -> GuessResult:
    """Search the (order <= max_order, degree <= max_degree) box for a
    recurrence with exactly zero residuals on all supplied terms.

    The box is scanned in ascending (order, degree); each grid point is
    first screened by a rank computation modulo a 61-bit prime (full
    column rank modulo p proves full rank over Q, so nothing exists
    there), and only survivors pay for fraction-free elimination over Q.
    """
    terms = [t if isinstance(t, Fraction) else Fraction(t) for t in terms]
    _require_terms(len(terms), max_order, max_degree)
    prov = {
        "mode": "exact",
        "terms_used": len(terms),
        "max_order": max_order,
        "max_degree": max_degree,
        "searched": [],
    }

    if all(t == 0 for t in terms):
        rec = Recurrence([Poly([1]), Poly([-1])])
        prov["degenerate_data"] = "all supplied terms are zero; any operator fits"
        return GuessResult(True, rec, prov)

    # Nothing in the box exists if the largest system has full column rank.
    ncols_max = (max_order + 1) * (max_degree + 1)
    rows_max = _ansatz_rows(terms, max_order, max_degree,
                            len(terms) - max_order)
    prov["searched"].append((max_order, max_degree))
    if _rank_mod_p(rows_max, ncols_max, _FILTER_PRIME) == ncols_max:
        prov["reason"] = "ansatz system has full column rank"
        return GuessResult(False, None, prov)

    best = None
    for r in range(max_order + 1):
        for d in range(max_degree + 1):
            if (r, d) != (max_order, max_degree):
                prov["searched"].append((r, d))
            ncols = (r + 1) * (d + 1)
            rows = rows_max if (r, d) == (max_order, max_degree) else \
                _ansatz_rows(terms, r, d, len(terms) - r)
            if _rank_mod_p(rows, ncols, _FILTER_PRIME) == ncols:
                continue
            basis = nullspace(rows)
            for vec in basis:
                rec = _vector_to_recurrence(vec, r, d)
                if rec is None or not _certify_exact(rec, terms):
                    continue
                key = (rec.order, rec.degree, _operator_size(rec))
                if best is None or key < best[0]:
                    best = (key, rec)
            if best is not None:
                prov["residual_stats"] = {"max_abs": 0, "certified_terms": len(terms)}
                return GuessResult(True, best[1], prov)
    prov["reason"] = "modular filter passed but no exact certificate survived"
    return GuessResult(False, None, prov)


# ---------------------------------------------------------------------------
# Float mode
# ---------------------------------------------------------------------------

_HELD_OUT = 20


def _float_terms(terms):
    out = []
    bounds = []
    for t in terms:
        if hasattr(t, "value") and hasattr(t, "bound"):  # BigReal
            out.append(mpf(t.value))
            bounds.append(mpf(t.bound))
        elif isinstance(t, Fraction):
            out.append(mpf(t.numerator) / t.denominator)
            bounds.append(mpf(0))
        else:
            out.append(mpf(t))
            bounds.append(mpf(0))
    return out, bounds


def _float_rows(terms, r, d, n_rows, prec):
    with mp.workprec(prec):
        rows = []
        for n in range(n_rows):
            npow = [mpf(1)]
            for _ in range(d):
                npow.append(npow[-1] * n)
            row = []
            for i in range(r + 1):
                t = terms[n + r - i]
                for j in range(d + 1):
                    row.append(t * npow[j])
            rows.append(row)
        return rows


def _mpf_to_fraction(x) -> Fraction:
    """Exact rational value of an mpf (sign, mantissa, exponent)."""
    sign, man, exp, _ = x._mpf_
    if man == 0:
        return Fraction(0)
    frac = Fraction(man) * (Fraction(2) ** exp)
    return -frac if sign else frac


def _normalized_residual(rec: Recurrence, terms, n: int, prec) -> mpf:
    with mp.workprec(prec):
        d = rec.order
        window = terms[n:n + d + 1]
        s = mpf(0)
        for i, p in enumerate(rec.coeffs):
            c = p(Fraction(n))
            s += mpf(c.numerator) / c.denominator * window[d - i]
        scale = max(abs(t) for t in window)
        if scale == 0:
            scale = mpf(1)
        return abs(s) / scale


def guess_float(terms: Sequence, max_order: int, max_degree: int,
                residual_tol: float, precision_bits: int = 192) -> GuessResult:
    """Float-data guessing: column-scaled elimination with a relative
    pivot threshold 2^(-precision/2); a candidate is accepted only when its
    normalized residuals on the last 20 (held-out) terms stay within
    residual_tol.  Coefficients are snapped to small rationals before
    certification, so agreement with guess_exact is exact on holonomic
    data."""
    p = precision_bits
    with mp.workprec(p):
        vals, _bounds = _float_terms(terms)
    _require_terms(len(vals), max_order, max_degree)
    prov = {
        "mode": "float",
        "terms_used": len(vals),
        "max_order": max_order,
        "max_degree": max_degree,
        "residual_tol": float(residual_tol),
        "held_out": _HELD_OUT,
        "precision_bits": p,
        "searched": [],
    }
    n_train = len(vals) - _HELD_OUT
    tol = mpf(residual_tol)

    with mp.workprec(p):
        if all(v == 0 for v in vals):
            rec = Recurrence([Poly([1]), Poly([-1])])
            prov["degenerate_data"] = "all supplied terms are zero"
            return GuessResult(True, rec, prov)
        for r in range(max_order + 1):
            for d in range(max_degree + 1):
                prov["searched"].append((r, d))
                rec = _guess_float_box(vals, r, d, n_train, p, tol, prov)
                if rec is not None:
                    return GuessResult(True, rec, prov)
    prov["reason"] = "no candidate met the held-out residual tolerance"
    return GuessResult(False, None, prov)


def _guess_float_box(vals, r, d, n_train, p, tol, prov):
    ncols = (r + 1) * (d + 1)
    n_rows = n_train - r
    if n_rows < ncols + 2:
        return None
    rows = _float_rows(vals, r, d, n_rows, p)
    scales = []
    for j in range(ncols):
        m = max(abs(rows[i][j]) for i in range(n_rows))
        scales.append(m if m != 0 else mpf(1))
    for i in range(n_rows):
        rows[i] = [rows[i][j] / scales[j] for j in range(ncols)]

    threshold = mpf(2) ** (-(p // 2))
    pivots = []
    free_cols = []
    rank = 0
    for col in range(ncols):
        piv, pmag = None, threshold
        for i in range(rank, n_rows):
            m = abs(rows[i][col])
            if m > pmag:
                piv, pmag = i, m
        if piv is None:
            free_cols.append(col)
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        for i in range(rank + 1, n_rows):
            c = rows[i][col] / prow[col]
            if c != 0:
                rows[i] = [a - c * b for a, b in zip(rows[i], prow)]
        pivots.append((rank, col))
        rank += 1
    if not free_cols:
        return None

    for fc in free_cols:
        x = [mpf(0)] * ncols
        x[fc] = mpf(1)
        for (pr, pc) in reversed(pivots):
            if pc >= fc:
                continue
            s = mpf(0)
            for j in range(pc + 1, ncols):
                if x[j] != 0:
                    s += rows[pr][j] * x[j]
            x[pc] = -s / rows[pr][pc]
        # unscale back to raw coordinates and snap to rationals; the
        # continued-fraction snap works at full precision, so denominators
        # up to ~2^(p/2) are recoverable
        raw = [x[j] / scales[j] for j in range(ncols)]
        top = max(abs(v) for v in raw)
        exact = [_mpf_to_fraction(v / top) for v in raw]
        for denom_cap in (10 ** 3, 10 ** 9, 10 ** 15):
            frac = [v.limit_denominator(denom_cap) for v in exact]
            rec = _vector_to_recurrence(frac, r, d)
            if rec is None or rec.order > len(vals) - _HELD_OUT:
                continue
            res = [_normalized_residual(rec, vals, n, p)
                   for n in range(len(vals) - _HELD_OUT - rec.order,
                                  len(vals) - rec.order)]
            if res and max(res) <= tol:
                prov["residual_stats"] = {
                    "max_normalized_residual": float(max(res)),
                    "held_out_checked": len(res),
                }
                return rec
    return None
