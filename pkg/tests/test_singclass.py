import random
from dataclasses import dataclass
from fractions import Fraction

import pytest

from holoseq.annihilators import DiffOp
from holoseq.kernel import Poly
from holoseq.singclass import (
    INFINITY,
    NonRationalPoint,
    classify_point,
    forbidden_asymptotics_check,
    indicial_polynomial,
    newton_polygon,
)


def P(*coeffs):
    return Poly(coeffs)


@dataclass
class Scale:
    alpha: object
    beta: object
    gamma: object


# the five canonical operators checked against hand-derived local data
def log_op():
    # (1-z) y'' - y'   (solution log(1/(1-z)) at z = 1)
    return DiffOp([P(1, -1), P(-1), Poly()])


def euler_op():
    # z^2 y'' + z y' - y   (solutions z and 1/z)
    return DiffOp([P(0, 0, 1), P(0, 1), P(-1)])


def exp_op():
    # y' - y
    return DiffOp([P(1), P(-1)])


def cosh_op():
    # y'' - y  (ordinary at 0)
    return DiffOp([P(1), Poly(), P(-1)])


def airy_op():
    # y'' - z y
    return DiffOp([P(1), Poly(), P(0, -1)])


class TestIndicialPolynomial:
    def test_log_operator_at_one(self):
        # local form -t theta^2: indicial theta^2
        assert indicial_polynomial(log_op(), 1) == P(0, 0, 1)

    def test_euler_at_zero(self):
        # theta^2 - 1
        assert indicial_polynomial(euler_op(), 0) == P(-1, 0, 1)

    def test_ordinary_point_falling_factorial(self):
        # theta (theta - 1)
        ind = indicial_polynomial(cosh_op(), 0)
        assert ind == Poly([0, 1]) * Poly([-1, 1])

    def test_z_y2_plus_y1(self):
        # z y'' + y' has theta-form t^{-1} theta^2
        ode = DiffOp([P(0, 1), P(1), Poly()])
        assert indicial_polynomial(ode, 0) == P(0, 0, 1)


class TestNewtonPolygon:
    def test_regular_singular_single_zero_slope(self):
        assert newton_polygon(euler_op(), 0) == [(Fraction(0), 2)]

    def test_exp_at_infinity(self):
        slopes = newton_polygon(exp_op(), INFINITY)
        assert slopes == [(Fraction(1), 1)]

    def test_airy_at_infinity(self):
        slopes = newton_polygon(airy_op(), INFINITY)
        assert slopes == [(Fraction(3, 2), 2)]

    def test_log_operator(self):
        assert all(s == 0 for s, _ in newton_polygon(log_op(), 1))


class TestClassifyPoint:
    def test_log_operator_report(self):
        rep = classify_point(log_op(), 1)
        assert rep.kind == "regular_singular"
        assert rep.indicial_exponents == [(Fraction(0), 2)]
        assert rep.log_degree_bound == 1
        assert rep.log_flag == "certain"
        assert rep.ramification == 1

    def test_euler_report(self):
        rep = classify_point(euler_op(), 0)
        assert rep.kind == "regular_singular"
        assert rep.indicial_exponents == [(Fraction(-1), 1), (Fraction(1), 1)]
        # roots differ by an integer: logs possible, not certain
        assert rep.log_flag == "possible"

    def test_exp_at_infinity_irregular(self):
        rep = classify_point(exp_op(), INFINITY)
        assert rep.kind == "irregular"
        assert rep.newton_slopes == [(Fraction(1), 1)]
        assert rep.ramification == 1
        assert rep.exp_part_degree == 1

    def test_ordinary(self):
        rep = classify_point(cosh_op(), 0)
        assert rep.kind == "ordinary"
        assert rep.indicial_exponents == [(Fraction(0), 1), (Fraction(1), 1)]
        assert rep.log_degree_bound == 0

    def test_airy_at_infinity(self):
        rep = classify_point(airy_op(), INFINITY)
        assert rep.kind == "irregular"
        assert rep.newton_slopes == [(Fraction(3, 2), 2)]
        assert rep.ramification == 2
        assert rep.exp_part_degree == 3

    def test_airy_finite_points_ordinary(self):
        rep = classify_point(airy_op(), 0)
        assert rep.kind == "ordinary"

    def test_exponent_count_at_regular_singular(self):
        for ode, z0 in [(log_op(), 1), (euler_op(), 0)]:
            rep = classify_point(ode, z0)
            total = sum(m for _, m in rep.indicial_exponents)
            total += sum(d for _, d in rep.nonrational_indicial)
            assert total == rep.operator_order

    def test_shift_invariance(self):
        rng = random.Random(13)
        for _ in range(8):
            coeffs = [Poly([rng.randint(-3, 3) for _ in range(rng.randint(1, 3))])
                      for _ in range(3)]
            if coeffs[0].is_zero():
                coeffs[0] = P(1, 1)
            ode = DiffOp(coeffs)
            c = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
            shifted = DiffOp([q.shift_arg(c) for q in ode.coeffs])
            a = classify_point(shifted, 0)
            b = classify_point(ode, c)
            assert (a.kind, a.indicial_exponents, a.log_degree_bound,
                    a.newton_slopes, a.ramification, a.exp_part_degree) == \
                   (b.kind, b.indicial_exponents, b.log_degree_bound,
                    b.newton_slopes, b.ramification, b.exp_part_degree)

    def test_fuchs_indicial_consistency_random(self):
        rng = random.Random(31)
        for _ in range(20):
            e = rng.randint(1, 3)
            coeffs = [Poly([rng.randint(-2, 2) for _ in range(rng.randint(1, 3))])
                      for _ in range(e + 1)]
            if coeffs[0].is_zero():
                coeffs[0] = P(0, 1)
            ode = DiffOp(coeffs)
            for z0 in [0, 1, INFINITY]:
                slopes = newton_polygon(ode, z0)
                ind = indicial_polynomial(ode, z0)
                assert (all(s == 0 for s, _ in slopes)) == (ind.degree == ode.order)

    def test_nonrational_point_rejected(self):
        with pytest.raises(NonRationalPoint):
            classify_point(euler_op(), "sqrt2")

    def test_singular_points_classify_consistently(self):
        # every rational root of the leading coefficient classifies as
        # non-ordinary, and every other small rational point as ordinary
        from holoseq.annihilators import singular_points
        rng = random.Random(47)
        for _ in range(10):
            q0 = Poly([rng.randint(-3, 3) for _ in range(rng.randint(2, 4))])
            if q0.degree < 1:
                continue
            ode = DiffOp([q0, P(1), P(rng.randint(-2, 2))])
            sp = singular_points(ode)
            roots = set(sp.locations())
            for r in roots:
                assert classify_point(ode, r).kind != "ordinary"
            for x in [Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2)]:
                if x not in roots:
                    assert classify_point(ode, x).kind == "ordinary"


class TestForbiddenAsymptotics:
    def test_iterated_log_always_incompatible(self):
        for ode, z0 in [(log_op(), 1), (euler_op(), 0), (cosh_op(), 0)]:
            rep = classify_point(ode, z0)
            v = forbidden_asymptotics_check(rep, Scale(-1, 0, 1))
            assert v.verdict == "incompatible"

    def test_fractional_log_power_incompatible(self):
        rep = classify_point(euler_op(), 0)
        v = forbidden_asymptotics_check(rep, Scale(0, Fraction(-1, 2), 0))
        assert v.verdict == "incompatible"

    def test_within_log_bound_compatible(self):
        # theta^3 at a point: triple root 0 gives log bound 2
        ode = DiffOp([P(0, 0, 1), P(0, 3), P(1), Poly()])
        rep = classify_point(ode, 0)
        assert rep.log_degree_bound >= 2
        v = forbidden_asymptotics_check(rep, Scale(0, 2, 0))
        assert v.verdict == "compatible"

    def test_beyond_log_bound_incompatible(self):
        rep = classify_point(log_op(), 1)  # bound 1
        v = forbidden_asymptotics_check(rep, Scale(0, 2, 0))
        assert v.verdict == "incompatible"

    def test_matching_slot_named(self):
        # scale (0, 0, 0) matches exponent -1 when present
        rep = classify_point(euler_op(), 0)
        v = forbidden_asymptotics_check(rep, Scale(0, 0, 0))
        assert v.verdict == "compatible"
        assert v.matching_slot == (Fraction(-1), 0)
