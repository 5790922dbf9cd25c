import random
from fractions import Fraction

import pytest

from holoseq.kernel import (
    Poly,
    RatFun,
    nullspace,
    poly_arith,
    poly_gcd,
    rational_roots,
    rational_roots_and_cofactor,
)


def P(*coeffs):
    return Poly(coeffs)


def _fraction_rank(m):
    """Independent rank oracle: plain Gaussian elimination over Fraction."""
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for i in range(rank + 1, nrows):
            c = m[i][col]
            if c:
                m[i] = [a - c * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


class TestPolyArith:
    def test_mul_expands(self):
        # (1+n)(1-n) = 1 - n^2
        assert poly_arith(P(1, 1), P(1, -1), "mul") == P(1, 0, -1)

    def test_additive_inverse(self):
        p = P(3, -2, 7)
        assert poly_arith(p, -p, "add") == Poly()

    def test_shift_arg_binomial(self):
        # n^2 at n+1 -> n^2 + 2n + 1
        assert poly_arith(P(0, 0, 1), 1, "shift_arg") == P(1, 2, 1)

    def test_shift_arg_rational(self):
        p = P(2, 0, 3)
        c = Fraction(1, 2)
        q = p.shift_arg(c)
        for x in [Fraction(0), Fraction(1), Fraction(-3, 2)]:
            assert q(x) == p(x + c)

    def test_product_evaluation_agrees(self):
        rng = random.Random(7)
        pts = [Fraction(1), Fraction(-2), Fraction(1, 3), Fraction(5), Fraction(-7, 2)]
        for _ in range(25):
            a = Poly([Fraction(rng.randint(-9, 9), rng.randint(1, 4))
                      for _ in range(rng.randint(1, 6))])
            b = Poly([Fraction(rng.randint(-9, 9), rng.randint(1, 4))
                      for _ in range(rng.randint(1, 6))])
            ab = a * b
            for x in pts:
                assert ab(x) == a(x) * b(x)

    def test_divmod_roundtrip(self):
        a = P(1, 2, 0, 5, 1)
        b = P(-1, 1)
        q, r = a.divmod(b)
        assert q * b + r == a
        assert r.degree < b.degree

    def test_gcd(self):
        a = P(-1, 1) * P(2, 1)
        b = P(-1, 1) * P(3, 0, 1)
        assert poly_gcd(a, b) == P(-1, 1)

    def test_pow(self):
        assert P(1, 1) ** 3 == P(1, 3, 3, 1)


class TestRatFun:
    def test_reduction_and_monic_denominator(self):
        r = RatFun(P(0, 2, 2), P(0, 0, 4))  # (2n+2n^2)/(4n^2) = (1+n)/(2n)
        assert r.num == P(Fraction(1, 2), Fraction(1, 2))
        assert r.den == P(0, 1)

    def test_field_ops(self):
        n = RatFun(P(0, 1))
        r = (n + 1) / n - 1 / n
        assert r == RatFun(1)

    def test_derivative(self):
        # d/dn (1/n) = -1/n^2
        r = RatFun(1, P(0, 1)).derivative()
        assert r == RatFun(-1, P(0, 0, 1))

    def test_zero_denominator_rejected(self):
        with pytest.raises(ZeroDivisionError):
            RatFun(P(1), Poly())


class TestNullspace:
    def test_rank_one(self):
        basis = nullspace([[1, 1], [2, 2]])
        assert len(basis) == 1
        v = basis[0]
        assert v[0] + v[1] == 0 and v != [0, 0]

    def test_full_rank_identity(self):
        assert nullspace([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == []

    def test_single_ratfun_relation(self):
        n = Poly([0, 1])
        basis = nullspace([[n, n * n]])
        assert len(basis) == 1
        v = basis[0]
        # span{(n, -1)} up to scaling
        assert v[0] * RatFun(1) == -v[1] * RatFun(n)

    def test_mv_zero_exact_random(self):
        rng = random.Random(11)
        for _ in range(60):
            rows = rng.randint(1, 7)
            cols = rng.randint(1, 7)
            # small range forces plenty of zeros into pivot columns
            m = [[Fraction(rng.randint(-2, 2), rng.randint(1, 3))
                  for _ in range(cols)] for _ in range(rows)]
            basis = nullspace(m)
            for v in basis:
                for row in m:
                    assert sum(a * b for a, b in zip(row, v)) == 0
            # nullity check against a plain Fraction-arithmetic rank oracle
            rank = _fraction_rank([row[:] for row in m])
            assert len(basis) == cols - rank

    def test_dimension_counts(self):
        # 2 x 4 generic matrix: nullity 2
        m = [[1, 2, 3, 4], [0, 1, 1, 1]]
        basis = nullspace(m)
        assert len(basis) == 2

    def test_ratfun_matrix_mv_zero(self):
        n = Poly([0, 1])
        m = [[RatFun(n), RatFun(1, n), RatFun(3)],
             [RatFun(n * n), RatFun(1), RatFun(3) * RatFun(n)]]
        for v in nullspace(m):
            for row in m:
                s = RatFun(0)
                for a, b in zip(row, v):
                    s = s + a * b
                assert s.is_zero()


class TestRationalRoots:
    def test_one_minus_z(self):
        assert rational_roots(P(1, -1)) == [Fraction(1)]

    def test_factored_input(self):
        # z(1-4z): roots 0 and 1/4
        assert sorted(rational_roots(P(0, 1, -4))) == [0, Fraction(1, 4)]

    def test_no_rational_roots(self):
        roots, cofactor = rational_roots_and_cofactor(P(1, 0, 1))
        assert roots == []
        assert cofactor.degree == 2

    def test_multiplicity(self):
        p = P(-1, 1) ** 3 * P(1, 2)
        roots, cof = rational_roots_and_cofactor(p)
        assert (Fraction(1), 3) in roots
        assert (Fraction(-1, 2), 1) in roots
        assert cof.degree == 0

    def test_roots_evaluate_to_zero(self):
        rng = random.Random(3)
        for _ in range(15):
            p = Poly([rng.randint(-6, 6) for _ in range(rng.randint(2, 7))])
            if p.is_zero():
                continue
            for r in rational_roots(p):
                assert p(r) == 0

    def test_big_coefficient_roots(self):
        # (3n - 7)(n + 2^40) has roots 7/3 and -2^40
        p = P(-7, 3) * P(1 << 40, 1)
        assert sorted(rational_roots(p)) == [-(1 << 40), Fraction(7, 3)]
