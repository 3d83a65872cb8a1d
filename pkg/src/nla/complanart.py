"""Products of multi-argument functions over root tuples, the antisymmetric
t -> 0 limit trick, and the complanart of a homogeneous system.

The complanart of n-1 forms in n variables vanishes exactly when some n
distinct roots of the system are linearly dependent; for n = 2 it degenerates
to the classical discriminant (up to a recorded unit).  Evaluation never
touches the roots themselves: every product over root tuples is an iterated
resultant.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Callable, Sequence

from .poly_core import (
    ComputationError,
    MPoly,
    NlaError,
    NotPerfectPower,
    ScopeError,
    VarRegistry,
    exact_div,
    poly_kth_root,
    proportionality_unit,
    t_order,
    u_squarefree_decomposition,
    u_trim,
)
from .resultant import (
    PencilUnavailable,
    PolySystem,
    build_pencil,
    poisson_eval,
    resultant_of,
)


class LimitNotEvaluable(NlaError):
    """Degenerate g1: numerator and denominator orders do not match up."""


# ---------------------------------------------------------------------------
# root functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootFunction:
    """Polynomial in `arity` disjoint copies of a system's main variables,
    homogeneous of block_degrees[k] in the k-th copy."""

    arity: int
    block_degrees: tuple
    poly: MPoly
    blocks: tuple

    def __post_init__(self):
        for k, block in enumerate(self.blocks):
            d = self.poly.homogeneity_degree(block)
            if d is None or d != self.block_degrees[k]:
                raise ValueError(f"not homogeneous of degree {self.block_degrees[k]} "
                                 f"in block {k}")


def block_registry(system: PolySystem, arity: int, t_name: str | None = None):
    """Registry with `arity` copies of the system's main block plus its
    parameters (and an optional limit variable)."""
    base = system.registry
    blocks = tuple(tuple(f"{v}__{k}" for v in system.main_vars) for k in range(arity))
    names = [v for blk in blocks for v in blk]
    params = list(base.parameter_names)
    extra = [v for v in base.main_names if v not in system.main_vars]
    reg = VarRegistry.make(tuple(names) + tuple(extra), params + ([t_name] if t_name else []))
    return reg, blocks


def fresh_t_name(system: PolySystem) -> str:
    t = "t"
    while t in system.registry._index:
        t = "_" + t
    return t


def epsilon_function(system: PolySystem, arity: int | None = None) -> RootFunction:
    """The fully antisymmetric multilinear form on n root slots."""
    n = system.n
    if arity is None:
        arity = n
    if arity != n:
        raise ValueError("the antisymmetric form needs exactly n slots")
    reg, blocks = block_registry(system, arity)
    poly = reg.zero()
    for perm in permutations(range(n)):
        sign = _perm_sign(perm)
        term = reg.one()
        for slot in range(n):
            term = term * reg.var(blocks[slot][perm[slot]])
        poly = poly + sign * term
    return RootFunction(arity, (1,) * arity, poly, blocks)


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def default_g1(system: PolySystem, arity: int, block_degrees: Sequence[int]) -> RootFunction:
    """The all-ones product form: prod over blocks of (sum of block vars)^deg."""
    reg, blocks = block_registry(system, arity)
    poly = reg.one()
    for k, deg in enumerate(block_degrees):
        s = reg.zero()
        for v in blocks[k]:
            s = s + reg.var(v)
        poly = poly * s ** deg
    return RootFunction(arity, tuple(block_degrees), poly, blocks)


def random_g1(system: PolySystem, arity: int, block_degrees: Sequence[int],
              rng: random.Random) -> RootFunction:
    """Dense positive-coefficient variant; the same linear form is reused in
    every block so values depend only on the multiset of arguments."""
    reg, blocks = block_registry(system, arity)
    coeffs = [rng.randint(1, 9) for _ in range(system.n)]
    poly = reg.one()
    for k, deg in enumerate(block_degrees):
        s = reg.zero()
        for i, v in enumerate(blocks[k]):
            s = s + coeffs[i] * reg.var(v)
        poly = poly * s ** deg
    return RootFunction(arity, tuple(block_degrees), poly, blocks)


# ---------------------------------------------------------------------------
# products over root tuples
# ---------------------------------------------------------------------------


class _Engine:
    """Eliminates one block of variables against a fixed base system,
    through the eliminant pencil when the base has rational coefficients."""

    def __init__(self, system: PolySystem, seed: int = 0):
        self.system = system
        self.pencil = None
        self.pencil_error = None
        rational = all(set(p.variables_present()) <= set(system.main_vars)
                       for p in system.polynomials)
        if rational and system.n in (2, 3):
            try:
                self.pencil = build_pencil(list(system.polynomials),
                                           system.main_vars, seed)
            except PencilUnavailable as exc:
                self.pencil_error = str(exc)

    def eliminate_block(self, poly: MPoly, block: Sequence[str]) -> MPoly:
        if poly.is_zero():
            return poly
        if self.pencil is not None:
            return self.pencil.pi(poly, block)
        rename = dict(zip(self.system.main_vars, block))
        base = [p.map_to(poly.registry, rename) for p in self.system.polynomials]
        return resultant_of(base + [poly], block)


def product_over_roots(system: PolySystem, rf: RootFunction,
                       pattern: Sequence[int], seed: int = 0) -> MPoly:
    """Product of rf over root tuples whose index pattern is `pattern`:
    slots sharing a label take the same root, labels range over all roots
    independently.  Computed by substituting shared slots and eliminating
    one block per label."""
    if len(pattern) != rf.arity:
        raise ValueError("pattern length must equal the arity")
    engine = _Engine(system, seed)
    return _pattern_product(engine, rf.poly, rf.blocks, pattern)


def _pattern_product(engine: _Engine, poly: MPoly, blocks: Sequence[Sequence[str]],
                     pattern: Sequence[int]) -> MPoly:
    leader: dict = {}
    rename = {}
    for slot, label in enumerate(pattern):
        if label in leader:
            src = blocks[slot]
            dst = blocks[leader[label]]
            rename.update(dict(zip(src, dst)))
        else:
            leader[label] = slot
    cur = poly.map_to(poly.registry, rename) if rename else poly
    for label in leader:
        block = blocks[leader[label]]
        cur = engine.eliminate_block(cur, block)
        if cur.is_zero():
            return cur
    return cur


# numerator/denominator pattern exponents of the distinct-tuple limit,
# hardcoded for each supported dimension
LIMIT_PATTERNS = {
    2: ((((0, 1), 1),),
        (((0, 0), 1),)),
    3: ((((0, 1, 2), 1), ((0, 0, 0), 2)),
        (((0, 0, 1), 3),)),
    4: ((((0, 1, 2, 3), 1), ((0, 0, 0, 1), 8), ((0, 0, 1, 1), 3)),
        (((0, 0, 1, 2), 6), ((0, 0, 0, 0), 6))),
}


def distinct_product_limit(system: PolySystem, g0: RootFunction, g1: RootFunction,
                           seed: int = 0) -> MPoly:
    """Product of g0 over pairwise-distinct root tuples via the t -> 0 limit
    of products of g0 + t*g1.  Raises LimitNotEvaluable for degenerate g1."""
    n = system.n
    if n not in LIMIT_PATTERNS:
        raise ScopeError(f"distinct products implemented for n in 2..4, got {n}")
    if g0.arity != n or g1.arity != n:
        raise ValueError("root functions must have n argument slots")
    if g0.block_degrees != g1.block_degrees:
        raise ValueError("g0 and g1 must share block degrees")
    t = fresh_t_name(system)
    reg, blocks = block_registry(system, n, t_name=t)
    g = g0.poly.map_to(reg) + reg.var(t) * g1.poly.map_to(reg)
    engine = _Engine(system, seed)
    if engine.pencil is None and engine.pencil_error is not None \
            and "squarefree" in engine.pencil_error:
        raise ComputationError(
            "base system appears to have a multiple root; its distinct-tuple "
            "products degenerate")

    num_spec, den_spec = LIMIT_PATTERNS[n]
    cache: dict = {}

    def pat_order_coeff(pat):
        # only the lowest t-order term of each factor matters: the lowest
        # term of a product is the product of lowest terms
        if pat not in cache:
            prod = _pattern_product(engine, g, blocks, pat)
            if prod.is_zero():
                raise LimitNotEvaluable(
                    "limit not evaluable with this g1 "
                    "(a required product vanished identically)")
            cache[pat] = t_order(prod, t)
        return cache[pat]

    def combine(spec):
        order, coeff = 0, reg.one()
        for pat, e in spec:
            k, c = pat_order_coeff(pat)
            order += k * e
            coeff = coeff * c ** e
        return order, coeff

    kn, cn = combine(num_spec)
    kd, cd = combine(den_spec)
    if kn < kd:
        raise LimitNotEvaluable("limit not evaluable with this g1 (order mismatch)")
    if kn > kd:
        return system.registry.zero()
    try:
        quotient = exact_div(cn, cd)
    except NlaError:
        raise LimitNotEvaluable("limit not evaluable with this g1 "
                                "(leading coefficients do not divide)") from None
    return quotient.map_to(system.registry)


# ---------------------------------------------------------------------------
# complanart
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComplanartResult:
    raw_power: MPoly
    complanart: MPoly
    n: int
    N: int
    shortcut_applied: bool
    g1_used: str | None = None
    notes: tuple = ()


def complanart(system: PolySystem, seed: int = 0,
               g1_choice: RootFunction | None = None) -> ComplanartResult:
    """Complanart of a system of n-1 forms in n variables (n in 2..4).

    Systems whose total root count N is below n cannot have n distinct roots,
    so their complanart is exactly 1 and no elimination runs.
    """
    n = system.n
    if n < 2 or n > 4:
        raise ScopeError(f"complanart implemented for 2 <= n <= 4, got n = {n}")
    if len(system.polynomials) != n - 1:
        raise ValueError("complanart expects n-1 polynomials in n variables")
    N = system.root_count
    one = system.registry.one()
    if N < n:
        return ComplanartResult(one, one, n, N, True,
                                notes=("root count below dimension; "
                                       "no n distinct roots exist",))
    params = sorted({v for p in system.polynomials for v in p.variables_present()
                     if v not in system.main_vars})
    if n == 3 and params:
        if len(params) > 2:
            raise ScopeError(
                "symbolic three-variable complanarts support at most two "
                "parameters; specialize the rest")
        return _complanart_interpolated(system, params, seed)
    raw, used = _complanart_limit(system, seed, g1_choice)
    return _finish(system, raw, n, N, used)


def _finish(system: PolySystem, raw: MPoly, n: int, N: int, used: str,
            notes: tuple = ()) -> ComplanartResult:
    k = math.factorial(n) // 2
    if k == 1:
        comp = raw
    else:
        try:
            comp = poly_kth_root(raw, k)
        except NotPerfectPower as exc:
            raise ComputationError(
                f"limit value is not a perfect {k}-th power: {exc}") from exc
    return ComplanartResult(raw, comp, n, N, False, used, notes)


def _complanart_limit(system: PolySystem, seed: int,
                      g1_choice: RootFunction | None):
    """Run the limit with the default g1, retrying randomized dense g1."""
    n = system.n
    g0 = epsilon_function(system)
    rng = random.Random(seed)
    attempts = []
    if g1_choice is not None:
        attempts.append(("caller-provided g1", g1_choice))
    attempts.append(("default all-ones g1", default_g1(system, n, (1,) * n)))
    for i in range(3):
        attempts.append((f"randomized dense g1 #{i + 1}",
                         random_g1(system, n, (1,) * n, rng)))
    last = None
    for label, g1 in attempts:
        try:
            return distinct_product_limit(system, g0, g1, seed), label
        except LimitNotEvaluable as exc:
            last = exc
    raise ComputationError(f"limit failed for every g1 tried: {last}")


# -- symbolic three-variable systems via exact interpolation ----------------


def _complanart_interpolated(system: PolySystem, params: list,
                             seed: int) -> ComplanartResult:
    """Interpolate the complanart of a parametric ternary system from exact
    rational specializations; degree bounds follow the complanart degree
    formula, and the interpolant is re-verified at fresh sample points."""
    reg = system.registry
    n, N = system.n, system.root_count
    k = math.factorial(n) // 2
    bounds = {p: _param_degree_bound(system, p) for p in params}

    def value_at(point: dict):
        spec = {p: reg.const(v) for p, v in point.items()}
        polys = [q.substitute(spec) for q in system.polynomials]
        try:
            sub = PolySystem.make(polys, system.main_vars)
        except NlaError:
            return None
        if sub.degrees != system.degrees:
            return None
        try:
            raw, _ = _complanart_limit(sub, seed, None)
            raw_v = raw.constant_value()
        except (NlaError, ValueError):
            return None
        if raw_v == 0:
            return Fraction(0)
        try:
            return _fraction_kth_root(raw_v, k)
        except NotPerfectPower:
            return None

    comp = _interpolate_exact(value_at, params, bounds, reg, seed)
    if comp is None:
        raise ComputationError("parametric complanart interpolation failed")
    raw = comp ** k
    return ComplanartResult(raw, comp, n, N, False,
                            "default all-ones g1",
                            ("parametric value reconstructed from exact "
                             "rational specializations",))


def _param_degree_bound(system: PolySystem, param: str) -> int:
    n, N = system.n, system.root_count
    per_root = 2 * math.comb(N - 1, n - 1)
    bound = 0
    for p, r in zip(system.polynomials, system.degrees):
        dmax = 0
        for c in _coefficient_parts(p, system.main_vars):
            if param in c.variables_present():
                dmax = max(dmax, c.degree_in_var(param))
        bound += per_root * (N // r) * dmax
    return max(bound, 1)


def _coefficient_parts(p: MPoly, main) -> list:
    from .resultant import _main_decomposition

    return list(_main_decomposition(p, main).values())


def _fraction_kth_root(v: Fraction, k: int) -> Fraction:
    from .poly_core import _rational_kth_root

    return _rational_kth_root(v, k)


def _interpolate_exact(value_at: Callable, params: list, bounds: dict,
                       reg: VarRegistry, seed: int):
    """Exact interpolation in one or two parameters with adaptive degree
    detection; the interpolant is verified at fresh random points."""
    rng = random.Random(seed ^ 0x5EED)

    if len(params) == 1:
        p = params[0]
        coeffs1, ok = _interp_1d(lambda v: value_at({p: v}), bounds[p])
        if not ok:
            return None
        ip = reg.index(p)
        result = MPoly(reg, {_unit_mono(reg, {ip: e}): c
                             for e, c in enumerate(coeffs1) if c})
    else:
        pa, pb = params
        a_probe = Fraction(rng.randint(41, 71))
        col, ok = _interp_1d(lambda v: value_at({pa: a_probe, pb: v}), bounds[pb])
        if not ok:
            return None
        db = len(col) - 1 if col else 0
        b_probe = Fraction(rng.randint(41, 71))
        row, ok = _interp_1d(lambda v: value_at({pa: v, pb: b_probe}), bounds[pa])
        if not ok:
            return None
        da = len(row) - 1 if row else 0

        a_nodes, rows = [], []
        for v in _node_stream():
            col_poly, ok = _interp_1d(lambda w: value_at({pa: v, pb: w}),
                                      bounds[pb], fixed_count=db + 1)
            if ok:
                a_nodes.append(v)
                rows.append(col_poly + [Fraction(0)] * (db + 1 - len(col_poly)))
            if len(a_nodes) == da + 1:
                break
            if abs(v) > bounds[pa] + 30:
                return None
        ia, ib = reg.index(pa), reg.index(pb)
        terms = {}
        for j in range(db + 1):
            cj = _lagrange(a_nodes, [r[j] for r in rows])
            for i, c in enumerate(cj):
                if c:
                    terms[_unit_mono(reg, {ia: i, ib: j})] = c
        result = MPoly(reg, terms)

    # verification at fresh random rational points
    for _ in range(3):
        point = {p: Fraction(rng.randint(73, 197), rng.choice([1, 2, 3]))
                 for p in params}
        expected = value_at(point)
        if expected is None:
            continue
        if result.evaluate(point) != expected:
            return None
    return result


def _node_stream():
    i = 1
    while True:
        yield Fraction(i)
        yield Fraction(-i)
        i += 1


def _unit_mono(reg: VarRegistry, exps: dict) -> tuple:
    mono = [0] * len(reg.names)
    for i, e in exps.items():
        mono[i] = e
    return tuple(mono)


def _interp_1d(fn: Callable, bound: int, fixed_count: int | None = None):
    """Ascending coefficient list from exact samples.

    With fixed_count, exactly that many samples are taken.  Otherwise the
    fit is grown adaptively: once three consecutive fresh samples agree with
    the current interpolant the degree has stabilized (final certification
    happens at the caller's verification points)."""
    xs, ys = [], []
    fit: list = []
    streak = 0
    for v in _node_stream():
        if abs(v) > bound + 40:
            return [], False
        y = fn(v)
        if y is None:
            continue
        if fixed_count is None and len(xs) >= 2:
            predicted = sum(c * v ** e for e, c in enumerate(fit))
            if predicted == y:
                streak += 1
                xs.append(v)
                ys.append(y)
                if streak >= 3:
                    return fit, True
                continue
            streak = 0
        xs.append(v)
        ys.append(y)
        fit = _lagrange(xs, ys)
        if fixed_count is not None and len(xs) >= fixed_count:
            return fit, True
        if fixed_count is None and len(xs) >= bound + 3:
            return fit, True
    return [], False


def _lagrange(xs: list, ys: list) -> list:
    """Exact Lagrange interpolation, ascending coefficients."""
    m = len(xs)
    total = [Fraction(0)] * m
    for i in range(m):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(m):
            if j == i:
                continue
            basis = _u_shift_mul(basis, -xs[j])
            denom *= xs[i] - xs[j]
        w = ys[i] / denom
        for kk, c in enumerate(basis):
            total[kk] += w * c
    return u_trim(total)


def _u_shift_mul(poly: list, c: Fraction) -> list:
    # multiply by (x + c)
    out = [Fraction(0)] * (len(poly) + 1)
    for i, v in enumerate(poly):
        out[i + 1] += v
        out[i] += c * v
    return out


# ---------------------------------------------------------------------------
# degree bookkeeping
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DegreeCheckEntry:
    equation: int
    expected: int
    actual: int | None
    applicable: bool


@dataclass(frozen=True)
class DegreeCheckReport:
    entries: tuple

    @property
    def passed(self) -> bool:
        checked = [e for e in self.entries if e.applicable]
        return bool(checked) and all(e.expected == e.actual for e in checked)


def complanart_degree_check(result: ComplanartResult,
                            system: PolySystem) -> DegreeCheckReport:
    """Check deg of the complanart in each equation's coefficient symbols
    against 2*C(N-1, n-1)*N/r_i.  Only equations whose coefficients are
    distinct single parameter symbols admit the count; others are reported
    as not applicable."""
    if result.shortcut_applied:
        raise ValueError("degree check applies only to computed complanarts")
    n, N = result.n, result.N
    per_root = 2 * math.comb(N - 1, n - 1)
    used: set = set()
    entries = []
    param_sets = []
    for i, (p, r) in enumerate(zip(system.polynomials, system.degrees)):
        symbols = set()
        applicable = True
        for coeffpoly in _coefficient_parts(p, system.main_vars):
            present = coeffpoly.variables_present()
            if len(present) > 1:
                applicable = False
                break
            if len(present) == 1:
                sym = present[0]
                if coeffpoly.degree_in_var(sym) != 1 or sym in used or sym in symbols:
                    applicable = False
                    break
                symbols.add(sym)
        used |= symbols
        param_sets.append((applicable and bool(symbols), symbols))
    for i, (r, (applicable, symbols)) in enumerate(zip(system.degrees, param_sets)):
        expected = per_root * (N // r)
        actual = None
        if applicable:
            comp = result.complanart
            actual = comp.degree_in(sorted(symbols)) if not comp.is_zero() else 0
        entries.append(DegreeCheckEntry(i, expected, actual, applicable))
    return DegreeCheckReport(tuple(entries))


# ---------------------------------------------------------------------------
# numeric oracle
# ---------------------------------------------------------------------------

_PROBES2 = [(1, 2), (1, 3), (2, 5), (3, 7), (5, 11)]
_PROBES3 = [(1, 2, 3), (1, 3, 7), (2, 5, 11), (3, 7, 13), (5, 11, 17)]


def numeric_complanart_oracle(system: PolySystem, seed: int = 0) -> complex:
    """Evaluate the squared antisymmetric product over numerically solved
    roots, rescaled to the resultant normalization through an exact linear
    probe.  Supported for fully rational systems with n in {2, 3}."""
    import numpy as np

    n, N = system.n, system.root_count
    if n not in (2, 3):
        raise ScopeError("numeric oracle supports n = 2 or 3")
    for p in system.polynomials:
        if any(v not in system.main_vars for v in p.variables_present()):
            raise ValueError("numeric oracle needs a fully rational system")
    if N < n:
        return complex(1.0)

    if n == 2:
        roots, sys_for_probe = _binary_roots(system), system
    else:
        roots, sys_for_probe = _ternary_roots(system, seed)

    eps_prod = 1.0 + 0.0j
    from itertools import combinations

    for combo in combinations(range(N), n):
        vecs = [roots[i] for i in combo]
        det = _det_complex([list(v) for v in vecs])
        eps_prod *= det * det
    sign = -1 if math.comb(N, n) % 2 else 1
    kk = math.comb(N - 1, n - 1)

    reg = system.registry
    probes = _PROBES2 if n == 2 else _PROBES3
    scale_mag = max(max(abs(complex(c)) for c in v) for v in roots)
    for coeffs in probes:
        probe = reg.zero()
        for cval, name in zip(coeffs, system.main_vars):
            probe = probe + cval * reg.var(name)
        p_num = 1.0 + 0.0j
        for v in roots:
            p_num *= sum(c * complex(x) for c, x in zip(coeffs, v))
        if abs(p_num) < 1e-9 * max(scale_mag, 1.0) ** N:
            continue
        p_exact = poisson_eval(PolySystem.make(list(sys_for_probe.polynomials),
                                               sys_for_probe.main_vars), probe)
        scale = complex(Fraction(p_exact.constant_value())) / p_num
        return sign * eps_prod * scale ** (2 * kk)
    raise ComputationError("all probe forms vanished near a root")


def _det_complex(rows) -> complex:
    m = [list(map(complex, r)) for r in rows]
    n = len(m)
    det = 1.0 + 0.0j
    for k in range(n):
        piv = max(range(k, n), key=lambda i: abs(m[i][k]))
        if abs(m[piv][k]) == 0:
            return 0j
        if piv != k:
            m[piv], m[k] = m[k], m[piv]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            for j in range(k, n):
                m[i][j] -= f * m[k][j]
    return det


def _binary_roots(system: PolySystem) -> list:
    """Projective roots of a binary form as representative vectors,
    multiplicity included; roots at infinity become (1, 0)."""
    import numpy as np
    from .resultant import binary_coeffs

    f = system.polynomials[0]
    u, v = system.main_vars
    coeffs = [c.constant_value() for c in binary_coeffs(f, u, v)]
    r = len(coeffs) - 1
    affine = u_trim(list(coeffs))
    roots = []
    inf_mult = r - (len(affine) - 1)
    roots.extend([(1.0, 0.0)] * inf_mult)
    for factor, mult in u_squarefree_decomposition(affine):
        vals = np.roots([float(c) for c in reversed(factor)])
        for val in vals:
            roots.extend([(complex(val), 1.0)] * mult)
    if len(roots) != r:
        raise ComputationError("numeric root count mismatch")
    return roots


def _ternary_roots(system: PolySystem, seed: int):
    """Roots of two ternary forms via the eliminant chart; returns the roots
    of the (unimodularly) transformed system together with that system."""
    import numpy as np
    from .poly_core import u_eval
    from .resultant import transform_poly

    pencil = build_pencil(list(system.polynomials), system.main_vars, seed)
    ws = np.roots([float(c) for c in reversed(pencil.emonic)])
    roots = []
    for w in ws:
        s1v = u_eval([float(c) for c in pencil.s1], w)
        s0v = u_eval([float(c) for c in pencil.s0], w)
        if abs(s1v) < 1e-12:
            raise ComputationError("parametrization broke at a root; "
                                   "multiplicity ambiguity flagged")
        roots.append((complex(w), -s0v / s1v, 1.0))
    tps = [transform_poly(p, pencil.transform, system.main_vars)
           for p in system.polynomials]
    return roots, PolySystem.make(tps, system.main_vars)
