import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nla.poly_core import (
    MPoly,
    NotDivisible,
    NotHomogeneous,
    NotPerfectPower,
    ParseError,
    RegistryMismatch,
    VarRegistry,
    ZeroPolynomialError,
    exact_div,
    format_poly,
    graded_expand,
    parse_poly,
    poly_kth_root,
    proportionality_unit,
    t_order,
    u_divmod,
    u_gcd,
    u_mul,
    u_squarefree_decomposition,
)


REG = VarRegistry.make(["x1", "x2"], ["a", "b", "c", "t"])
x1, x2 = REG.var("x1"), REG.var("x2")
a, b, c, t = REG.var("a"), REG.var("b"), REG.var("c"), REG.var("t")


def rand_poly(reg, rng, max_terms=5, max_exp=3, max_coef=9):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        mono = tuple(rng.randint(0, max_exp) for _ in reg.names)
        terms[mono] = Fraction(rng.randint(-max_coef, max_coef), rng.randint(1, 4))
    return MPoly(reg, terms)


class TestArithmetic:
    def test_cancellation(self):
        assert (x1 + x2) + (x1 - x2) == 2 * x1

    def test_absorbing_zero(self):
        assert ((x1 + x2) * REG.zero()).is_zero()

    def test_binomial_square(self):
        assert (x1 + x2) ** 2 == x1 ** 2 + 2 * x1 * x2 + x2 ** 2

    def test_registry_mismatch_raises(self):
        other = VarRegistry.make(["y"])
        with pytest.raises(RegistryMismatch):
            x1 + other.var("y")

    def test_pow_rejects_negative(self):
        with pytest.raises(ValueError):
            x1 ** -1

    @given(st.integers(0, 2 ** 31))
    @settings(max_examples=25, deadline=None)
    def test_ring_axioms_random(self, seed):
        rng = random.Random(seed)
        p, q, r = (rand_poly(REG, rng) for _ in range(3))
        assert (p + q) + r == p + (q + r)
        assert p * (q + r) == p * q + p * r
        assert (p * q) * r == p * (q * r)
        assert p * q == q * p


class TestHomogeneity:
    def test_quadratic_form_degree(self):
        f = a * x1 ** 2 + b * x1 * x2 + c * x2 ** 2
        assert f.homogeneity_degree(["x1", "x2"]) == 2

    def test_inhomogeneous(self):
        assert (x1 + x2 ** 2).homogeneity_degree() is None

    def test_parameters_do_not_count(self):
        f = x1 ** 2 + 2 * a * x1 * x2
        assert f.homogeneity_degree(["x1", "x2"]) == 2

    def test_zero_poly_errors(self):
        with pytest.raises(ZeroPolynomialError):
            REG.zero().homogeneity_degree()


class TestDehomogenize:
    def test_quadratic_form(self):
        f = a * x1 ** 2 + b * x1 * x2 + c * x2 ** 2
        g = f.dehomogenize("x2")
        reg = g.registry
        z = reg.var("x1")
        assert g == reg.var("a") * z ** 2 + reg.var("b") * z + reg.var("c")

    def test_single_variable(self):
        assert x1.dehomogenize("x1") == 1

    def test_cross_check_by_evaluation(self):
        # oracle: dividing by the pivot power is checked by direct evaluation
        f = x1 ** 2 + 2 * a * x1 * x2
        g = f.dehomogenize("x1")
        val_f = f.evaluate({"x1": 2, "x2": 3, "a": 5})
        val_g = g.evaluate({"x2": Fraction(3, 2), "a": 5})
        assert val_f == val_g * 2 ** 2

    def test_not_homogeneous_raises(self):
        with pytest.raises(NotHomogeneous):
            (x1 + x2 ** 2).dehomogenize("x2")

    @given(st.integers(0, 2 ** 31))
    @settings(max_examples=25, deadline=None)
    def test_rehomogenize_round_trip(self, seed):
        rng = random.Random(seed)
        d = rng.randint(1, 4)
        terms = {}
        for _ in range(rng.randint(1, 5)):
            e1 = rng.randint(0, d)
            mono = [0] * len(REG.names)
            mono[0], mono[1] = e1, d - e1
            mono[2] = rng.randint(0, 2)  # parameter exponent
            terms[tuple(mono)] = Fraction(rng.randint(-5, 5))
        f = MPoly(REG, terms)
        if f.is_zero():
            return
        g = f.dehomogenize("x2")
        back = g.homogenize(REG, "x2", d)
        assert back == f


class TestEvaluate:
    def test_discriminant_double_root(self):
        p = 4 * a * c - b ** 2
        assert p.evaluate({"a": 1, "b": 2, "c": 1}) == 0

    def test_resultant_value(self):
        # derived: 1 - 4ab at a = b = -1 -> -3  (cross-checked in resultant tests)
        p = REG.one() - 4 * a * b
        assert p.evaluate({"a": -1, "b": -1}) == -3

    def test_identity(self):
        assert x1.evaluate({"x1": 5}) == 5

    def test_missing_variable(self):
        with pytest.raises(KeyError):
            (x1 + a).evaluate({"x1": 1})

    def test_complex_path(self):
        v = (x1 ** 2 + 1).evaluate({"x1": 1j})
        assert abs(v) < 1e-12


class TestTOrder:
    def test_paper_shape(self):
        p = t ** 2 * (a + c - b) ** 2 * (4 * a * c - b ** 2) + t ** 4 * a
        k, coef = t_order(p, "t")
        assert k == 2
        assert coef == (a + c - b) ** 2 * (4 * a * c - b ** 2)

    def test_constant_term(self):
        k, coef = t_order(REG.one() + t, "t")
        assert (k, coef) == (0, REG.one())

    def test_pure_power(self):
        k, coef = t_order(t ** 3 * x1, "t")
        assert k == 3 and coef == x1

    def test_zero_errors(self):
        with pytest.raises(ZeroPolynomialError):
            t_order(REG.zero(), "t")

    @given(st.integers(0, 2 ** 31), st.integers(0, 4))
    @settings(max_examples=25, deadline=None)
    def test_shift_property(self, seed, m):
        rng = random.Random(seed)
        p = rand_poly(REG, rng)
        if p.is_zero():
            return
        k, coef = t_order(p, "t")
        k2, coef2 = t_order(p * t ** m, "t")
        assert k2 == k + m and coef2 == coef


class TestKthRoot:
    def test_identity(self):
        p = a * x1 + b
        assert poly_kth_root(p, 1) == p

    def test_perfect_square(self):
        assert poly_kth_root(x1 ** 2 + 2 * x1 * x2 + x2 ** 2, 2) == x1 + x2

    def test_paper_power_product(self):
        base = (1 - 2 * a) ** 4 * (1 - 2 * b) ** 4
        assert poly_kth_root(base ** 3, 3) == base

    def test_sign_convention_even(self):
        q = -(x1 + x2)
        r = poly_kth_root(q ** 2, 2)
        _, lc = r.leading()
        assert lc > 0 and r ** 2 == q ** 2

    def test_negative_cube_root(self):
        q = -(x1 + 2 * x2)
        assert poly_kth_root(q ** 3, 3) == q

    def test_not_perfect_power(self):
        with pytest.raises(NotPerfectPower):
            poly_kth_root(x1 ** 2 + x2 ** 2, 2)
        with pytest.raises(NotPerfectPower):
            poly_kth_root(REG.const(2), 2)

    @given(st.integers(0, 2 ** 31), st.integers(2, 4))
    @settings(max_examples=20, deadline=None)
    def test_random_round_trip(self, seed, k):
        rng = random.Random(seed)
        q = rand_poly(REG, rng, max_terms=3, max_exp=2, max_coef=4)
        if q.is_zero():
            return
        p = q ** k
        r = poly_kth_root(p, k)
        assert r ** k == p


class TestGradedExpand:
    def test_scalar_square_at_one(self):
        reg = VarRegistry.make(["x"], [])
        x = reg.var("x")
        exp = graded_expand([x ** 2], [1])
        assert exp.component(0)[0] == 1
        assert exp.component(1)[0] == 2 * x
        assert exp.component(2)[0] == x ** 2
        # derived oracle: evaluate the shifted buckets at delta = 1/2
        total = sum(exp.component(d)[0].evaluate({"x": Fraction(1, 2)}) for d in (0, 1, 2))
        assert total == (x ** 2).evaluate({"x": Fraction(3, 2)})

    def test_linear_field_at_origin(self):
        reg = VarRegistry.make(["x", "y"], [])
        f = [reg.var("x") + reg.var("y"), reg.var("x") - reg.var("y")]
        exp = graded_expand(f, [0, 0])
        assert list(exp.components) == [1]

    @given(st.integers(0, 2 ** 31))
    @settings(max_examples=20, deadline=None)
    def test_bucket_sum_reproduces_field(self, seed):
        rng = random.Random(seed)
        reg = VarRegistry.make(["x", "y"], ["a"])
        p = rand_poly(reg, rng, max_terms=4, max_exp=3)
        pt = [Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3))]
        exp = graded_expand([p], pt)
        xv = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        yv = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        assign = {"x": xv - pt[0], "y": yv - pt[1], "a": Fraction(2)}
        total = sum(polys[0].evaluate(assign) for polys in exp.components.values())
        assert total == p.evaluate({"x": xv, "y": yv, "a": Fraction(2)})

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            graded_expand([x1], [1])


class TestExactDiv:
    def test_simple(self):
        p = (x1 + x2) * (a * x1 - b * x2)
        assert exact_div(p, x1 + x2) == a * x1 - b * x2

    def test_not_divisible(self):
        with pytest.raises(NotDivisible):
            exact_div(x1 ** 2 + x2, x1 + x2)

    @given(st.integers(0, 2 ** 31))
    @settings(max_examples=25, deadline=None)
    def test_random_product(self, seed):
        rng = random.Random(seed)
        p, q = rand_poly(REG, rng, 3, 2), rand_poly(REG, rng, 3, 2)
        if p.is_zero() or q.is_zero():
            return
        assert exact_div(p * q, q) == p


class TestTextForm:
    def test_round_trip(self):
        p = 3 * x1 ** 2 * x2 - Fraction(1, 2) * x2 ** 3 + a - 1
        assert parse_poly(format_poly(p), REG) == p

    def test_parse_examples(self):
        assert parse_poly("x1^2 + 2*a*x1*x2", REG) == x1 ** 2 + 2 * a * x1 * x2
        assert parse_poly("-x1 - 1/2*x2", REG) == -x1 - Fraction(1, 2) * x2
        assert parse_poly("0", REG).is_zero()

    def test_parse_errors(self):
        with pytest.raises(ParseError):
            parse_poly("x1 + unknown_var", REG)
        with pytest.raises(ParseError):
            parse_poly("x1 +", REG)

    @given(st.integers(0, 2 ** 31))
    @settings(max_examples=30, deadline=None)
    def test_random_round_trip(self, seed):
        rng = random.Random(seed)
        p = rand_poly(REG, rng)
        assert parse_poly(format_poly(p), REG) == p


class TestProportionality:
    def test_unit_found(self):
        p = 4 * a * c - b ** 2
        assert proportionality_unit(-3 * p, p) == -3

    def test_not_proportional(self):
        assert proportionality_unit(a + b, a - b) is None


class TestUnivariateHelpers:
    def test_divmod(self):
        # (x^2 - 1) = (x + 1)(x - 1)
        q, r = u_divmod([Fraction(-1), Fraction(0), Fraction(1)], [Fraction(1), Fraction(1)])
        assert q == [Fraction(-1), Fraction(1)] and r == []

    def test_gcd(self):
        p = u_mul([Fraction(1), Fraction(1)], [Fraction(2), Fraction(1)])
        q = u_mul([Fraction(1), Fraction(1)], [Fraction(3), Fraction(1)])
        g = u_gcd(p, q)
        assert g == [Fraction(1), Fraction(1)]

    def test_squarefree_decomposition(self):
        # (x-1)^2 (x+2)
        p = u_mul(u_mul([Fraction(-1), Fraction(1)], [Fraction(-1), Fraction(1)]),
                  [Fraction(2), Fraction(1)])
        parts = u_squarefree_decomposition(p)
        assert sorted(m for _, m in parts) == [1, 2]
