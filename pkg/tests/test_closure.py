import math
import random
from fractions import Fraction

import pytest

from holoseq.annihilators import (
    DiffOp,
    Recurrence,
    SequenceStream,
    apply,
    apply_diffop_to_series,
    unroll,
)
from holoseq.closure import (
    DegenerateSubstitution,
    binomial_diff_seq,
    binomial_transform_op,
    closure_hadamard,
    closure_sum,
    multiply_by_ratfun,
    substitute_rational,
)
from holoseq.kernel import Poly, RatFun
from holoseq.series import Series, geometric


def P(*coeffs):
    return Poly(coeffs)


def fib_rec():
    return Recurrence([P(1), P(-1), P(-1)], initial_terms=[0, 1])


def catalan_rec():
    return Recurrence([P(2, 1), P(-2, -4)], initial_terms=[1])


def central_binomial_rec():
    # (n+1) c_{n+1} - (4n+2) c_n = 0 annihilates binom(2n, n)
    return Recurrence([P(1, 1), P(-2, -4)], initial_terms=[1])


def random_safe_rec(rng, max_order=2):
    """Random recurrence whose leading coefficient has no nonnegative real
    root, so it unrolls indefinitely."""
    d = rng.randint(1, max_order)
    coeffs = [Poly([rng.randint(1, 3) for _ in range(rng.randint(1, 2))])]
    for _ in range(d):
        c = Poly([rng.randint(-3, 3) for _ in range(rng.randint(1, 2))])
        coeffs.append(c)
    if coeffs[-1].is_zero():
        coeffs[-1] = Poly([1])
    init = [Fraction(rng.randint(-3, 3)) for _ in range(d)]
    return Recurrence(coeffs, initial_terms=init)


class TestClosureSum:
    def test_one_plus_two_pow(self):
        a = Recurrence([P(1), P(-1)], initial_terms=[1])
        b = Recurrence([P(1), P(-2)], initial_terms=[1])
        rec = closure_sum(a, b)
        assert rec.order <= 2
        terms = [1 + 2 ** n for n in range(201 + rec.order)]
        assert apply(rec, SequenceStream.exact(terms), range(201)) == [0] * 201

    def test_doubling(self):
        a = Recurrence([P(1), P(-1)], initial_terms=[1])
        rec = closure_sum(a, a)
        assert rec.order <= 2
        assert apply(rec, SequenceStream.exact([2] * 60), range(50)) == [0] * 50

    def test_fibonacci_plus_catalan(self):
        rec = closure_sum(fib_rec(), catalan_rec())
        assert rec.order <= 3
        fib = [0, 1]
        for _ in range(210):
            fib.append(fib[-1] + fib[-2])
        cat = [Fraction(math.comb(2 * n, n), n + 1) for n in range(212)]
        terms = [f + c for f, c in zip(fib, cat)]
        assert apply(rec, SequenceStream.exact(terms), range(200)) == [0] * 200

    def test_initial_terms_attached(self):
        rec = closure_sum(fib_rec(), catalan_rec())
        assert rec.initial_terms is not None
        assert rec.initial_terms[0] == 1  # fib_0 + catalan_0

    def test_order_bound_random(self):
        rng = random.Random(17)
        for _ in range(10):
            a = random_safe_rec(rng)
            b = random_safe_rec(rng)
            rec = closure_sum(a, b)
            assert rec.order <= a.order + b.order
            ua = unroll(a, a.initial_terms, 205).terms
            ub = unroll(b, b.initial_terms, 205).terms
            terms = [x + y for x, y in zip(ua, ub)]
            res = apply(rec, SequenceStream.exact(terms), range(200 - rec.order))
            assert all(r == 0 for r in res)


class TestClosureHadamard:
    def test_central_binomial_squared(self):
        rec = closure_hadamard(central_binomial_rec(), central_binomial_rec())
        assert rec.order <= 1
        terms = [Fraction(math.comb(2 * n, n)) ** 2 for n in range(102)]
        assert apply(rec, SequenceStream.exact(terms), range(100)) == [0] * 100

    def test_ones_identity(self):
        ones = Recurrence([P(1), P(-1)], initial_terms=[1])
        rec = closure_hadamard(catalan_rec(), ones)
        cat = unroll(catalan_rec(), [1], 120).terms
        res = apply(rec, SequenceStream.exact(cat), range(100))
        assert all(r == 0 for r in res)

    def test_factorial_times_reciprocal(self):
        fact = Recurrence([P(1), P(-1, -1)], initial_terms=[1])
        recip = Recurrence([P(1, 1), P(-1)], initial_terms=[1])
        rec = closure_hadamard(fact, recip)
        assert apply(rec, SequenceStream.exact([1] * 40), range(30)) == [0] * 30

    def test_order_bound_random(self):
        rng = random.Random(29)
        for _ in range(8):
            a = random_safe_rec(rng)
            b = random_safe_rec(rng)
            rec = closure_hadamard(a, b)
            assert rec.order <= max(a.order, 1) * max(b.order, 1)
            ua = unroll(a, a.initial_terms, 205).terms
            ub = unroll(b, b.initial_terms, 205).terms
            terms = [x * y for x, y in zip(ua, ub)]
            res = apply(rec, SequenceStream.exact(terms), range(200 - rec.order))
            assert all(r == 0 for r in res)


class TestBinomialDiffSeq:
    def test_ones(self):
        # (1-1)^n collapses: first term 1, everything else 0
        out = binomial_diff_seq(SequenceStream.exact([1] * 10), 9)
        assert out.terms == [1] + [0] * 9

    def test_linear(self):
        out = binomial_diff_seq(SequenceStream.exact(list(range(10))), 9)
        assert out.terms == [0, -1] + [0] * 8

    def test_involution_random(self):
        rng = random.Random(41)
        for _ in range(50):
            terms = [Fraction(rng.randint(-50, 50), rng.randint(1, 9))
                     for _ in range(60)]
            s = SequenceStream.exact(terms)
            twice = binomial_diff_seq(binomial_diff_seq(s, 59), 59)
            assert twice.terms == terms

    def test_start_index_flag(self):
        terms = [Fraction(5), Fraction(2), Fraction(7)]
        with_zero = binomial_diff_seq(SequenceStream.exact(terms), 2)
        without = binomial_diff_seq(SequenceStream.exact(terms), 2,
                                    include_zero_term=False)
        # they differ exactly by binom(n,0) f_0 = f_0
        assert [a - b for a, b in zip(with_zero.terms, without.terms)] == [5, 5, 5]

    def test_float_mode_delegation(self):
        # log-sequence stream at n = 2: the transform is log 2
        import math
        import mpmath
        from mpmath import mp, mpf
        with mp.workprec(120):
            terms = [mpf(0)] + [mpmath.log(k) for k in range(1, 4)]
            stream = SequenceStream(terms, "float", [mpf(2) ** -110] * 4)
        out = binomial_diff_seq(stream, 2, target_bits=64)
        assert out.mode == "float"
        assert abs(float(out.terms[2]) - math.log(2)) < 1e-15
        assert all(b <= 2.0 ** -64 for b in map(float, out.bounds))

    def test_gf_identity_vs_series_composition(self):
        # coefficients of (1/(1-z)) f(-z/(1-z)) equal the transform exactly
        N = 40
        rng = random.Random(53)
        for _ in range(5):
            rec = random_safe_rec(rng)
            terms = unroll(rec, rec.initial_terms, N).terms
            f = Series(terms, N)
            inner = Series([0] + [-1] * (N - 1), N)  # -z/(1-z)
            composed = f.compose(inner) * geometric(N)
            transformed = binomial_diff_seq(SequenceStream.exact(terms), N - 1)
            assert composed.coeffs == transformed.terms[:N]


class TestSubstituteRational:
    def test_geometric_substitution(self):
        # (1-z) y' - y annihilates 1/(1-z); composed with -w/(1-w) the
        # solution is 1 - w, and the new operator must kill it
        ode = DiffOp([P(1, -1), P(-1)])
        rho = RatFun(P(0, -1), P(1, -1))
        sub = substitute_rational(ode, rho)
        res = apply_diffop_to_series(sub, Series([1, -1], 50))
        assert all(c == 0 for c in res.coeffs)

    def test_identity_substitution(self):
        ode = DiffOp([P(1, -1), P(-1)])
        sub = substitute_rational(ode, RatFun(P(0, 1)))
        assert sub == ode

    def test_constants_stay_annihilated(self):
        ode = DiffOp([P(1), Poly()])  # y' = 0
        rho = RatFun(P(0, 0, 3), P(1, 1))
        sub = substitute_rational(ode, rho)
        res = apply_diffop_to_series(sub, Series([7], 30))
        assert all(c == 0 for c in res.coeffs)

    def test_degenerate_rejected(self):
        ode = DiffOp([P(1), P(-1)])
        with pytest.raises(DegenerateSubstitution):
            substitute_rational(ode, RatFun(P(5)))

    def test_series_composition_certificate(self):
        # exp ODE composed with w^2/(1 - w): check on truncated series
        N = 50
        ode = DiffOp([P(1), P(-1)])  # y' - y, solution e^z
        rho = RatFun(P(0, 0, 1), P(1, -1))
        sub = substitute_rational(ode, rho)
        # series of exp(rho(w))
        from fractions import Fraction as F
        expo = Series([F(1, math.factorial(k)) for k in range(N)], N)
        inner = Series([0, 0] + [1] * (N - 2), N)  # w^2/(1-w)
        comp = expo.compose(inner)
        res = apply_diffop_to_series(sub, comp)
        checkable = N - sub.order - sub.degree
        assert all(c == 0 for c in res.coeffs[:checkable])


class TestMultiplyByRatfun:
    def test_times_geometric(self):
        # y' = 0 (constants); (1/(1-w)) * 1 = geometric series
        ode = DiffOp([P(1), Poly()])
        mult = multiply_by_ratfun(ode, RatFun(P(1), P(1, -1)))
        res = apply_diffop_to_series(mult, geometric(40))
        assert all(c == 0 for c in res.coeffs[:35])


class TestBinomialTransformOp:
    def test_ones(self):
        ones = Recurrence([P(1), P(-1)], initial_terms=[1])
        rec = binomial_transform_op(ones)
        target = [1] + [0] * 30
        res = apply(rec, SequenceStream.exact(target), range(25))
        assert all(r == 0 for r in res)

    def test_linear(self):
        lin = Recurrence([P(1), P(-2), P(1)], initial_terms=[0, 1])
        rec = binomial_transform_op(lin)
        target = [0, -1] + [0] * 30
        res = apply(rec, SequenceStream.exact(target), range(25))
        assert all(r == 0 for r in res)

    def test_fibonacci_certified(self):
        rec = binomial_transform_op(fib_rec())
        fib = [Fraction(0), Fraction(1)]
        for _ in range(150):
            fib.append(fib[-1] + fib[-2])
        transformed = binomial_diff_seq(SequenceStream.exact(fib), 110)
        res = apply(rec, transformed, range(100))
        assert all(r == 0 for r in res)
