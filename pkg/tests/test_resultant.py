import random
from fractions import Fraction

import pytest

from nla.poly_core import MPoly, VarRegistry, proportionality_unit
from nla.resultant import (
    PencilUnavailable,
    PolySystem,
    bareiss_det,
    build_pencil,
    eliminate,
    macaulay_resultant,
    poisson_eval,
    resultant_of,
    sylvester_resultant,
    uni_resultant,
    vieta_tensor,
)


REG = VarRegistry.make(["x1", "x2"], ["a", "b", "c", "d"])
x1, x2 = REG.var("x1"), REG.var("x2")
a, b, c, d = (REG.var(n) for n in ("a", "b", "c", "d"))

R3 = VarRegistry.make(["x", "y", "z"], ["a", "b"])


def rand_form(reg, main, degree, rng, span=6):
    """Random homogeneous form with integer coefficients."""
    from itertools import combinations_with_replacement

    idx = [reg.index(n) for n in main]
    terms = {}
    for combo in combinations_with_replacement(idx, degree):
        mono = [0] * len(reg.names)
        for i in combo:
            mono[i] += 1
        cval = rng.randint(-span, span)
        if cval:
            terms[tuple(mono)] = Fraction(cval)
    return MPoly(reg, terms)


class TestBareiss:
    def test_identity(self):
        one, zero = REG.one(), REG.zero()
        assert bareiss_det([[one, zero], [zero, one]]) == 1

    def test_symbolic_2x2(self):
        assert bareiss_det([[a, b], [c, d]]) == a * d - b * c

    def test_rank_deficient(self):
        assert bareiss_det([[a, b], [a, b]]).is_zero()

    def test_random_vs_fraction_det(self):
        rng = random.Random(5)
        for _ in range(10):
            n = rng.randint(2, 5)
            mat = [[Fraction(rng.randint(-9, 9)) for _ in range(n)] for _ in range(n)]
            rows = [[REG.const(v) for v in r] for r in mat]
            import numpy as np

            expected = round(np.linalg.det(np.array(mat, dtype=float)))
            assert bareiss_det(rows).constant_value() == expected


class TestSylvester:
    def test_linear_pair_is_determinant(self):
        f, g = a * x1 + b * x2, c * x1 + d * x2
        assert sylvester_resultant(f, g, ("x1", "x2")) == a * d - b * c

    def test_canonical_quadratic_map(self):
        f = x1 ** 2 + 2 * a * x1 * x2
        g = x2 ** 2 + 2 * b * x1 * x2
        assert sylvester_resultant(f, g, ("x1", "x2")) == REG.one() - 4 * a * b

    def test_shared_root_vanishes(self):
        assert sylvester_resultant(x1 ** 2, x1 * x2, ("x1", "x2")).is_zero()

    def test_power_normalization(self):
        assert sylvester_resultant(x1 ** 3, x2 ** 2, ("x1", "x2")) == 1

    def test_multiplicativity_up_to_sign(self):
        rng = random.Random(11)
        for _ in range(6):
            f = rand_form(REG, ("x1", "x2"), rng.randint(1, 2), rng)
            h = rand_form(REG, ("x1", "x2"), rng.randint(1, 2), rng)
            g = rand_form(REG, ("x1", "x2"), rng.randint(1, 3), rng)
            if f.is_zero() or h.is_zero() or g.is_zero():
                continue
            lhs = sylvester_resultant(f * h, g, ("x1", "x2"))
            rhs = sylvester_resultant(f, g, ("x1", "x2")) * \
                sylvester_resultant(h, g, ("x1", "x2"))
            unit = proportionality_unit(lhs, rhs)
            assert unit in (1, -1), f"unit {unit}"

    def test_root_product_value(self):
        # Res(f, g) = lc_f^deg(g) * prod g(roots): f = (z-1)(z-2) homogenized
        f = (x1 - x2) * (x1 - 2 * x2)
        g = x1 - 5 * x2
        r = sylvester_resultant(f, g, ("x1", "x2")).constant_value()
        assert r == (1 - 5) * (2 - 5)


class TestMacaulay:
    def test_agrees_with_sylvester_n2(self):
        rng = random.Random(3)
        for _ in range(8):
            df, dg = rng.randint(1, 4), rng.randint(1, 4)
            f = rand_form(REG, ("x1", "x2"), df, rng)
            g = rand_form(REG, ("x1", "x2"), dg, rng)
            if f.is_zero() or g.is_zero():
                continue
            try:
                mac = macaulay_resultant(PolySystem.make([f, g], ("x1", "x2")))
            except Exception:
                continue
            syl = sylvester_resultant(f, g, ("x1", "x2"))
            unit = proportionality_unit(mac, syl)
            assert unit is not None and abs(unit) == 1, f"unit {unit} for deg ({df},{dg})"

    def test_quadratic_pair_value(self):
        f = x1 ** 2 + 2 * a * x1 * x2
        g = x2 ** 2 + 2 * b * x1 * x2
        mac = macaulay_resultant(PolySystem.make([f, g], ("x1", "x2")))
        unit = proportionality_unit(mac, REG.one() - 4 * a * b)
        assert unit is not None

    def test_zero_polynomial_gives_zero(self):
        sysz = PolySystem(polynomials=(x1, REG.zero()), main_vars=("x1", "x2"),
                          degrees=(1, 1))
        assert macaulay_resultant(sysz).is_zero()

    def test_identity_linear_map_n3(self):
        x, y, z = R3.var("x"), R3.var("y"), R3.var("z")
        r = macaulay_resultant(PolySystem.make([x, y, z], ("x", "y", "z")))
        assert abs(r.constant_value()) == 1

    def test_planted_common_root_vanishes(self):
        rng = random.Random(7)
        x, y, z = R3.var("x"), R3.var("y"), R3.var("z")
        for _ in range(5):
            # forms vanishing at (1, 2, 3): rows of (x - y/2), etc. combos
            l1 = 2 * x - y
            l2 = 3 * y - 2 * z
            f1 = l1 * rand_form(R3, ("x", "y", "z"), 1, rng)
            f2 = l2 * rand_form(R3, ("x", "y", "z"), 1, rng)
            f3 = l1 * rand_form(R3, ("x", "y", "z"), 2, rng)
            if f1.is_zero() or f2.is_zero() or f3.is_zero():
                continue
            r = macaulay_resultant(PolySystem.make([f1, f2, f3], ("x", "y", "z")))
            assert r.evaluate({n: 1 for n in r.variables_present()}) == 0 or r.is_zero()

    def test_generic_n3_nonzero(self):
        rng = random.Random(9)
        names = ("x", "y", "z")
        f = [rand_form(R3, names, 2, rng) for _ in range(3)]
        r = macaulay_resultant(PolySystem.make(f, names))
        assert not r.is_zero()


class TestEliminate:
    def test_linear_block_is_2x2_determinant(self):
        # eliminate (x1, x2) from two forms linear in x with y-dependent coeffs
        reg = VarRegistry.make(["x1", "x2", "y1", "y2"], [])
        X1, X2, Y1, Y2 = (reg.var(n) for n in reg.names)
        g = Y1 * X1 + Y2 * X2
        f = X1 - X2
        res = eliminate(PolySystem.make([g, f], ("x1", "x2")), ("x1", "x2"))
        assert proportionality_unit(res, Y1 + Y2) is not None

    def test_no_dependence_reduces_to_resultant(self):
        f = x1 ** 2 + 2 * a * x1 * x2
        g = x2 ** 2 + 2 * b * x1 * x2
        r1 = eliminate(PolySystem.make([f, g], ("x1", "x2")), ("x1", "x2"))
        r2 = sylvester_resultant(f, g, ("x1", "x2"))
        assert r1 == r2


class TestPoisson:
    def test_symbolic_linear_form(self):
        # oracle: product of g over the two roots of the quadratic, computed
        # from Vieta's formulas by hand:
        #   lc * prod(g1*root + g2) = c*g1^2 - b*g1*g2 + a*g2^2
        reg = VarRegistry.make(["x1", "x2"], ["a", "b", "c", "g1", "g2"])
        A, B, C, G1, G2 = (reg.var(n) for n in ("a", "b", "c", "g1", "g2"))
        f = A * reg.var("x1") ** 2 + B * reg.var("x1") * reg.var("x2") + C * reg.var("x2") ** 2
        g = G1 * reg.var("x1") + G2 * reg.var("x2")
        res = poisson_eval(PolySystem.make([f], ("x1", "x2")), g)
        expected = C * G1 ** 2 - B * G1 * G2 + A * G2 ** 2
        assert res == expected

    def test_g_in_ideal_vanishes(self):
        f = x1 ** 2 + 2 * a * x1 * x2
        res = poisson_eval(PolySystem.make([f], ("x1", "x2")), f)
        assert res.is_zero()

    def test_numeric_product_over_roots(self):
        # g = x2^2 against a random rational quadratic with no root at x2=0
        import numpy as np

        rng = random.Random(21)
        reg = VarRegistry.make(["x1", "x2"], [])
        X1, X2 = reg.var("x1"), reg.var("x2")
        f = 3 * X1 ** 2 + 5 * X1 * X2 - 2 * X2 ** 2
        res = poisson_eval(PolySystem.make([f], ("x1", "x2")), X2 ** 2).constant_value()
        roots = np.roots([3, 5, -2])  # x1/x2 ratios
        value = 3 ** 2 * np.prod([1.0 for _ in roots])  # lc^(deg g) * prod of 1
        assert abs(float(res) - value) < 1e-9


class TestVieta:
    def test_quadratic_entries(self):
        reg = VarRegistry.make(["x1", "x2"], ["a", "b", "c"])
        A, B, C = (reg.var(n) for n in ("a", "b", "c"))
        f = A * reg.var("x1") ** 2 + B * reg.var("x1") * reg.var("x2") + C * reg.var("x2") ** 2
        vt = vieta_tensor(PolySystem.make([f], ("x1", "x2")))
        assert vt.entry((1, 1)) == C
        assert vt.entry((1, 2)) == -B
        assert vt.entry((2, 2)) == A

    def test_linear_single_root(self):
        reg = VarRegistry.make(["x1", "x2"], ["a", "b"])
        A, B = reg.var("a"), reg.var("b")
        f = A * reg.var("x1") + B * reg.var("x2")
        vt = vieta_tensor(PolySystem.make([f], ("x1", "x2")))
        pairs = (vt.entry((1,)), vt.entry((2,)))
        assert pairs == (-B, A)

    def test_degree_in_coefficients(self):
        # entries have degree N/r_i in the i-th polynomial's coefficients
        reg = VarRegistry.make(["x", "y", "z"],
                               [f"p{i}" for i in range(6)] + [f"q{i}" for i in range(6)])
        from itertools import combinations_with_replacement

        monos = list(combinations_with_replacement(("x", "y", "z"), 2))
        f1 = reg.zero()
        f2 = reg.zero()
        for k, combo in enumerate(monos):
            m1 = reg.var(f"p{k}")
            m2 = reg.var(f"q{k}")
            for nme in combo:
                m1 = m1 * reg.var(nme)
                m2 = m2 * reg.var(nme)
            f1 = f1 + m1
            f2 = f2 + m2
        vt = vieta_tensor(PolySystem.make([f1, f2], ("x", "y", "z")))
        some = vt.entry((1, 1, 2, 3))
        pnames = [f"p{i}" for i in range(6)]
        qnames = [f"q{i}" for i in range(6)]
        assert some.degree_in(pnames) == 2  # N/r_1 = 4/2
        assert some.degree_in(qnames) == 2


class TestPencil:
    """The root-product engine must agree with the matrix resultants exactly."""

    def test_binary_pencil_matches_sylvester(self):
        rng = random.Random(31)
        reg = VarRegistry.make(["x1", "x2"], ["s"])
        for trial in range(12):
            r = rng.randint(1, 3)
            dh = rng.randint(1, 4)
            f = rand_form(reg, ("x1", "x2"), r, rng)
            h = rand_form(reg, ("x1", "x2"), dh, rng)
            h = h + reg.var("s") * rand_form(reg, ("x1", "x2"), dh, rng)
            if f.is_zero() or h.is_zero():
                continue
            try:
                pencil = build_pencil([f], ("x1", "x2"))
            except PencilUnavailable:
                continue
            got = pencil.pi(h, ("x1", "x2"))
            want = sylvester_resultant(f, h, ("x1", "x2"))
            assert got == want, f"trial {trial}: {got} vs {want}"

    def test_ternary_pencil_matches_macaulay(self):
        rng = random.Random(47)
        reg = VarRegistry.make(["x", "y", "z"], ["s"])
        checked = 0
        for trial in range(40):
            r1, r2 = rng.choice([(1, 2), (2, 2), (2, 1), (1, 1), (2, 3)])
            dh = rng.randint(1, 3)
            f1 = rand_form(reg, ("x", "y", "z"), r1, rng, span=4)
            f2 = rand_form(reg, ("x", "y", "z"), r2, rng, span=4)
            h = rand_form(reg, ("x", "y", "z"), dh, rng, span=4)
            h = h + reg.var("s") * rand_form(reg, ("x", "y", "z"), dh, rng, span=4)
            if f1.is_zero() or f2.is_zero() or h.is_zero():
                continue
            try:
                pencil = build_pencil([f1, f2], ("x", "y", "z"))
            except PencilUnavailable:
                continue
            got = pencil.pi(h, ("x", "y", "z"))
            want = resultant_of([f1, f2, h], ("x", "y", "z"))
            assert got == want, f"degrees ({r1},{r2}), dh={dh}: {got} vs {want}"
            checked += 1
            if checked >= 10:
                break
        assert checked >= 6

    def test_pencil_multiplicative(self):
        rng = random.Random(53)
        reg = VarRegistry.make(["x", "y", "z"], [])
        f1 = rand_form(reg, ("x", "y", "z"), 2, rng)
        f2 = rand_form(reg, ("x", "y", "z"), 2, rng)
        h1 = rand_form(reg, ("x", "y", "z"), 1, rng)
        h2 = rand_form(reg, ("x", "y", "z"), 2, rng)
        pencil = build_pencil([f1, f2], ("x", "y", "z"))
        assert pencil.pi(h1 * h2, ("x", "y", "z")) == \
            pencil.pi(h1, ("x", "y", "z")) * pencil.pi(h2, ("x", "y", "z"))

    def test_pencil_detects_parameter_base(self):
        f = x1 ** 2 + 2 * a * x1 * x2
        with pytest.raises(PencilUnavailable):
            build_pencil([f], ("x1", "x2"))


class TestUniResultant:
    def test_constant_cases(self):
        two = [REG.const(2)]
        lin = [REG.const(1), REG.const(1)]
        assert uni_resultant(lin + [REG.zero()], two) == 2  # deg 1 vs const
        assert uni_resultant(two, two) == 1
