"""Resultants of square homogeneous systems.

Sylvester determinants handle the binary case, the Macaulay quotient
det(M)/det(M') the general one.  A root-product engine ("pencil") built from
a univariate eliminant serves products of polynomials over the roots of a
fixed rational-coefficient base system; it computes the same normalized
resultant as the matrix route but stays small when the eliminated polynomial
has high degree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

from .poly_core import (
    ComputationError,
    MPoly,
    NlaError,
    NotHomogeneous,
    VarRegistry,
    exact_div,
    u_deg,
    u_deriv,
    u_divmod,
    u_gcd,
    u_trim,
)


class DegenerateMinor(NlaError):
    """Macaulay minor vanished identically; caller retries in new coordinates."""


class PencilUnavailable(NlaError):
    """The base system resists the eliminant construction."""


@dataclass(frozen=True)
class PolySystem:
    """Ordered homogeneous system with its main-variable block."""

    polynomials: tuple
    main_vars: tuple
    degrees: tuple

    @classmethod
    def make(cls, polynomials: Sequence[MPoly], main_vars: Sequence[str]) -> "PolySystem":
        polynomials = tuple(polynomials)
        main_vars = tuple(main_vars)
        if not polynomials:
            raise ValueError("empty system")
        reg = polynomials[0].registry
        degrees = []
        for p in polynomials:
            if p.registry != reg:
                raise ValueError("system polynomials use different registries")
            d = p.homogeneity_degree(main_vars)
            if d is None:
                raise NotHomogeneous(f"system entry not homogeneous in {main_vars}: {p}")
            if d < 1:
                raise ValueError("system degrees must be >= 1")
            degrees.append(d)
        return cls(polynomials, main_vars, tuple(degrees))

    @property
    def registry(self) -> VarRegistry:
        return self.polynomials[0].registry

    @property
    def n(self) -> int:
        return len(self.main_vars)

    @property
    def root_count(self) -> int:
        out = 1
        for d in self.degrees:
            out *= d
        return out


# ---------------------------------------------------------------------------
# determinants
# ---------------------------------------------------------------------------


def bareiss_det(rows: Sequence[Sequence[MPoly]]) -> MPoly:
    """Fraction-free determinant of a square MPoly matrix."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix; caller decides the empty determinant")
    reg = rows[0][0].registry
    m = [list(r) for r in rows]
    sign = 1
    prev = reg.one()
    for k in range(n - 1):
        pivot_row = None
        best = None
        for i in range(k, n):
            e = m[i][k]
            if not e.is_zero():
                size = len(e.terms)
                if best is None or size < best:
                    best, pivot_row = size, i
        if pivot_row is None:
            return reg.zero()
        if pivot_row != k:
            m[pivot_row], m[k] = m[k], m[pivot_row]
            sign = -sign
        pk = m[k]
        for i in range(k + 1, n):
            mi = m[i]
            lead = mi[k]
            if lead.is_zero():
                if prev.is_constant():
                    inv = 1 / prev.constant_value()
                    for j in range(k + 1, n):
                        mi[j] = pk[k] * mi[j] * inv
                else:
                    for j in range(k + 1, n):
                        mi[j] = exact_div(pk[k] * mi[j], prev)
            else:
                for j in range(k + 1, n):
                    mi[j] = exact_div(pk[k] * mi[j] - lead * pk[j], prev)
            mi[k] = reg.zero()
        prev = m[k][k]
    out = m[n - 1][n - 1]
    return out if sign == 1 else -out


def det_fraction(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Plain Gaussian determinant over Q."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    m = [list(map(Fraction, r)) for r in rows]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[piv], m[k] = m[k], m[piv]
            det = -det
        det *= m[k][k]
        inv = 1 / m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] * inv
            if f:
                for j in range(k, n):
                    m[i][j] -= f * m[k][j]
    return det


# ---------------------------------------------------------------------------
# Sylvester resultant of binary forms
# ---------------------------------------------------------------------------


def binary_coeffs(f: MPoly, u: str, v: str, degree: int | None = None) -> list:
    """Coefficients of u^k v^(d-k), ascending in k, as MPoly free of u, v."""
    d = f.homogeneity_degree([u, v])
    if d is None:
        raise NotHomogeneous(f"not homogeneous in ({u}, {v}): {f}")
    if degree is not None and d != degree:
        raise ValueError("declared degree does not match")
    reg = f.registry
    iu, iv = reg.index(u), reg.index(v)
    coeffs = [dict() for _ in range(d + 1)]
    for mono, c in f.terms.items():
        k = mono[iu]
        rest = list(mono)
        rest[iu] = 0
        rest[iv] = 0
        coeffs[k][tuple(rest)] = c
    return [MPoly(reg, t) for t in coeffs]


def sylvester_matrix(ac: Sequence[MPoly], bc: Sequence[MPoly]) -> list:
    """Sylvester matrix from ascending coefficient lists (lengths deg+1)."""
    reg = ac[0].registry
    da, db = len(ac) - 1, len(bc) - 1
    size = da + db
    desc_a = list(reversed(ac))
    desc_b = list(reversed(bc))
    rows = []
    for i in range(db):
        rows.append([reg.zero()] * i + desc_a + [reg.zero()] * (size - da - 1 - i))
    for i in range(da):
        rows.append([reg.zero()] * i + desc_b + [reg.zero()] * (size - db - 1 - i))
    return rows


def uni_resultant(ac: Sequence[MPoly], bc: Sequence[MPoly]) -> MPoly:
    """Resultant of two polynomials given by ascending MPoly coefficient
    lists (zero-trimmed actual degrees); Res(0, anything) is 0."""
    ac = _trim_mp(list(ac))
    bc = _trim_mp(list(bc))
    if not ac and not bc:
        raise ValueError("resultant of two zero polynomials")
    if not ac or not bc:
        return (ac or bc)[0].registry.zero()
    reg = ac[0].registry
    da, db = len(ac) - 1, len(bc) - 1
    if da == 0 and db == 0:
        return reg.one()
    if da == 0:
        return ac[0] ** db
    if db == 0:
        return bc[0] ** da
    return bareiss_det(sylvester_matrix(ac, bc))


def _trim_mp(c: list) -> list:
    while c and c[-1].is_zero():
        c.pop()
    return c


def sylvester_resultant(f: MPoly, g: MPoly, vars2: Sequence[str]) -> MPoly:
    """Resultant of two binary forms, Res(u^d, v^e) = 1 convention.

    Coefficient lists keep their declared homogeneous length, so vanishing
    leading coefficients (roots at infinity) are handled like any other root.
    """
    u, v = vars2
    if f.is_zero() or g.is_zero():
        if f.is_zero() and g.is_zero():
            raise ValueError("resultant of two zero polynomials")
        return f.registry.zero()
    ac = binary_coeffs(f, u, v)
    bc = binary_coeffs(g, u, v)
    da, db = len(ac) - 1, len(bc) - 1
    if da == 0 and db == 0:
        return f.registry.one()
    if da == 0:
        return ac[0] ** db
    if db == 0:
        return bc[0] ** da
    return bareiss_det(sylvester_matrix(ac, bc))


# ---------------------------------------------------------------------------
# Macaulay resultant
# ---------------------------------------------------------------------------


def _monomials_of_degree(nvars: int, degree: int) -> list:
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


def _main_decomposition(p: MPoly, main: Sequence[str]) -> dict:
    """Split p as sum of (main monomial) * (parameter-part MPoly)."""
    reg = p.registry
    idx = [reg.index(n) for n in main]
    out: dict = {}
    for mono, c in p.terms.items():
        key = tuple(mono[i] for i in idx)
        rest = list(mono)
        for i in idx:
            rest[i] = 0
        out.setdefault(key, {})[tuple(rest)] = c
    return {k: MPoly(reg, t) for k, t in out.items()}


def _macaulay_quotient(polys: Sequence[MPoly], main: Sequence[str],
                       degrees: Sequence[int]) -> MPoly:
    reg = polys[0].registry
    n = len(main)
    D = sum(d - 1 for d in degrees) + 1
    cols = _monomials_of_degree(n, D)
    col_index = {m: j for j, m in enumerate(cols)}
    decomps = [_main_decomposition(p, main) for p in polys]
    zero = reg.zero()

    rows = []
    reduced_flags = []
    for mono in cols:
        hits = [i for i in range(n) if mono[i] >= degrees[i]]
        cls = hits[0]
        mult = tuple(mono[i] - (degrees[i] if i == cls else 0) for i in range(n))
        row = [zero] * len(cols)
        for key, coeffpoly in decomps[cls].items():
            target = tuple(a + b for a, b in zip(mult, key))
            row[col_index[target]] = coeffpoly
        rows.append(row)
        reduced_flags.append(len(hits) == 1)

    det_m = bareiss_det(rows)
    keep = [j for j, r in enumerate(reduced_flags) if not r]
    if keep:
        minor = [[rows[i][j] for j in keep] for i in keep]
        det_minor = bareiss_det(minor)
    else:
        det_minor = reg.one()
    if det_minor.is_zero():
        raise DegenerateMinor("Macaulay minor vanished identically")
    if det_m.is_zero():
        return reg.zero()
    return exact_div(det_m, det_minor)


def random_unimodular(n: int, rng: random.Random, shears: int = 4) -> tuple:
    """Random integer matrix of determinant 1 built from shear operations."""
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(shears):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        for k in range(n):
            m[i][k] += c * m[j][k]
    return tuple(tuple(r) for r in m)


def transform_poly(p: MPoly, matrix: Sequence[Sequence[int]], names: Sequence[str]) -> MPoly:
    """Substitute names[i] -> sum_j matrix[i][j] * names[j]  (i.e. p(T x))."""
    reg = p.registry
    mapping = {}
    for i, name in enumerate(names):
        acc = reg.zero()
        for j, other in enumerate(names):
            c = matrix[i][j]
            if c:
                acc = acc + c * reg.var(other)
        mapping[name] = acc
    return p.substitute(mapping)


def macaulay_resultant(system: PolySystem, rng_seed: int = 0) -> MPoly:
    """Macaulay resultant of a square homogeneous system.

    When the Macaulay minor degenerates the system is retried in sheared
    unimodular coordinates, which leaves the resultant unchanged.
    """
    polys = list(system.polynomials)
    main = list(system.main_vars)
    if len(polys) != len(main):
        raise ValueError("macaulay_resultant needs a square system")
    reg = system.registry
    if any(p.is_zero() for p in polys):
        return reg.zero()
    degrees = list(system.degrees)
    if len(main) == 1:
        return polys[0].coefficient_of_power(main[0], degrees[0])
    rng = random.Random(rng_seed)
    last: Exception | None = None
    for attempt in range(5):
        if attempt == 0:
            cur = polys
        else:
            t = random_unimodular(len(main), rng)
            cur = [transform_poly(p, t, main) for p in polys]
        try:
            return _macaulay_quotient(cur, main, degrees)
        except DegenerateMinor as exc:
            last = exc
    raise ComputationError(f"Macaulay minor degenerate in all coordinates tried: {last}")


def resultant_of(polys: Sequence[MPoly], main_vars: Sequence[str]) -> MPoly:
    """Resultant of len(main_vars) homogeneous polynomials; dispatches to the
    Sylvester determinant for two variables."""
    if len(polys) != len(main_vars):
        raise ValueError("need as many polynomials as variables")
    if len(main_vars) == 2:
        return sylvester_resultant(polys[0], polys[1], main_vars)
    return macaulay_resultant(PolySystem.make(polys, main_vars))


def eliminate(system: PolySystem, elim_vars: Sequence[str]) -> MPoly:
    """Resultant over elim_vars; all other variables ride as parameters."""
    sub = PolySystem.make(system.polynomials, elim_vars)
    return macaulay_resultant(sub) if len(elim_vars) != 2 else \
        sylvester_resultant(sub.polynomials[0], sub.polynomials[1], elim_vars)


# ---------------------------------------------------------------------------
# root-product engine
# ---------------------------------------------------------------------------


@dataclass
class RootPencil:
    """Eliminant data for products over the roots of a base system of n-1
    rational-coefficient forms in n variables (n = 2 or 3).

    pi(h) equals the Macaulay/Sylvester resultant R{f_1,...,f_{n-1}, h}
    exactly; see the cross-checks in the test suite.
    """

    n: int
    main_vars: tuple
    transform: tuple
    res_inf: Fraction
    emonic: list            # monic eliminant over Q, ascending, degree N
    s1: list | None         # n=3: second-coordinate parametrization u = -s0/s1
    s0: list | None
    prod_s1: Fraction | None

    def __post_init__(self):
        # powers of the companion matrix of the eliminant: multiplication by
        # w^k on the basis 1, w, ..., w^(N-1)
        nn = self.root_count
        comp = [[Fraction(0)] * nn for _ in range(nn)]
        for j in range(nn - 1):
            comp[j + 1][j] = Fraction(1)
        for i in range(nn):
            comp[i][nn - 1] = -Fraction(self.emonic[i])
        powers = [[[Fraction(1) if i == j else Fraction(0) for j in range(nn)]
                   for i in range(nn)]]
        for _ in range(nn - 1):
            powers.append(_mat_mul_frac(comp, powers[-1]))
        self.companion_powers = powers

    @property
    def root_count(self) -> int:
        return len(self.emonic) - 1

    def pi(self, h: MPoly, block: Sequence[str]) -> MPoly:
        """R{f_1,...,f_{n-1}, h} for h homogeneous in `block` (ordered to
        match the base main variables); other variables of h ride along."""
        d = h.homogeneity_degree(block)
        if d is None:
            raise NotHomogeneous(f"pencil input not homogeneous in {block}")
        reg = h.registry
        if d == 0:
            raise ValueError("pencil needs degree >= 1")
        ht = transform_poly(h, self.transform, block)
        h_aff = ht.substitute({block[-1]: reg.one()})
        w = block[0]
        if self.n == 2:
            hc = _trim_mp(h_aff.univariate_coeffs(w))
        else:
            hc = self._substituted_coeffs(h_aff, block, d, reg)
        prod_h = self._root_product(hc, reg)
        out = prod_h * self.res_inf ** d
        if self.n == 3:
            out = out * (1 / self.prod_s1 ** d)
        return out

    def _substituted_coeffs(self, h_aff: MPoly, block, d: int, reg) -> list:
        """w-coefficient list of s1^d * h_aff(w, -s0/s1) using rational
        coefficient lists, so no large polynomial products arise."""
        from .poly_core import u_mul

        w, u = block[0], block[1]
        # rational w-polynomials (-s0)^j * s1^(d-j)
        neg_s0 = [-c for c in self.s0]
        s1_pows = [[Fraction(1)]]
        for _ in range(d):
            s1_pows.append(u_mul(s1_pows[-1], self.s1))
        neg_pows = [[Fraction(1)]]
        for _ in range(d):
            neg_pows.append(u_mul(neg_pows[-1], neg_s0))
        out: list = []
        for j, cj in enumerate(h_aff.univariate_coeffs(u)):
            if cj.is_zero():
                continue
            weight = u_mul(neg_pows[j], s1_pows[d - j])
            for m, cm in enumerate(cj.univariate_coeffs(w)):
                if cm.is_zero():
                    continue
                for e, scal in enumerate(weight):
                    if not scal:
                        continue
                    idx = m + e
                    while len(out) <= idx:
                        out.append(reg.zero())
                    out[idx] = out[idx] + cm * scal
        return _trim_mp(out)

    def _root_product(self, hc: list, reg: VarRegistry) -> MPoly:
        """Product of H over the eliminant roots (with multiplicity):
        determinant of H evaluated on the companion matrix."""
        if not hc:
            return reg.zero()
        nn = self.root_count
        r = list(hc)
        while len(r) > nn:
            c = r.pop()
            if c.is_zero():
                continue
            k = len(r) - nn
            for j in range(nn):
                if self.emonic[j]:
                    r[k + j] = r[k + j] - c * self.emonic[j]
        r = _trim_mp(r)
        if not r:
            return reg.zero()
        if len(r) == 1:
            return r[0] ** nn
        zero = reg.zero()
        mat = [[zero] * nn for _ in range(nn)]
        for k, ck in enumerate(r):
            if ck.is_zero():
                continue
            pk = self.companion_powers[k]
            for i in range(nn):
                for j in range(nn):
                    s = pk[i][j]
                    if s:
                        mat[i][j] = mat[i][j] + ck * s
        return _det_division_free(mat, reg)


def _mat_mul_frac(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)]


def _det_division_free(mat, reg: VarRegistry) -> MPoly:
    """Cofactor determinant (no exact divisions); intended for n <= 4-ish."""
    n = len(mat)
    if n == 1:
        return mat[0][0]
    if n == 2:
        return mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    total = reg.zero()
    for j in range(n):
        entry = mat[0][j]
        if entry.is_zero():
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in mat[1:]]
        sub = _det_division_free(minor, reg)
        term = entry * sub
        total = total + term if j % 2 == 0 else total - term
    return total


def _rational_binary_coeffs(f: MPoly, u: str, v: str) -> list:
    return [c.constant_value() for c in binary_coeffs(f, u, v)]


def build_pencil(polys: Sequence[MPoly], main_vars: Sequence[str],
                 rng_seed: int = 0) -> RootPencil:
    """Construct the eliminant data, shearing coordinates until generic.

    Requires rational coefficients (no parameters inside the base system)
    and n in {2, 3}.
    """
    main_vars = tuple(main_vars)
    n = len(main_vars)
    if n not in (2, 3):
        raise PencilUnavailable(f"pencil supports 2 or 3 variables, got {n}")
    if len(polys) != n - 1:
        raise ValueError("base system must have n-1 polynomials")
    for p in polys:
        if any(v not in main_vars for v in p.variables_present()):
            raise PencilUnavailable("base system coefficients must be rational")
    rng = random.Random(rng_seed)
    last = "no attempt"
    for attempt in range(8):
        t = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)) \
            if attempt == 0 else random_unimodular(n, rng)
        cur = [transform_poly(p, t, main_vars) for p in polys]
        try:
            return _pencil_from(cur, main_vars, t)
        except PencilUnavailable as exc:
            last = str(exc)
    raise PencilUnavailable(f"no generic coordinates found: {last}")


def _pencil_from(polys, main_vars, transform) -> RootPencil:
    n = len(main_vars)
    if n == 2:
        f = polys[0]
        coeffs = _rational_binary_coeffs(f, main_vars[0], main_vars[1])
        r = len(coeffs) - 1
        lc = coeffs[-1]
        if lc == 0:
            raise PencilUnavailable("root at infinity (leading coefficient vanished)")
        emonic = [c / lc for c in coeffs]
        return RootPencil(2, main_vars, transform, lc, emonic, None, None, None)

    w, u, z = main_vars
    f1, f2 = polys
    r1 = f1.homogeneity_degree(main_vars)
    r2 = f2.homogeneity_degree(main_vars)
    inf1 = f1.substitute({z: f1.registry.zero()})
    inf2 = f2.substitute({z: f2.registry.zero()})
    if inf1.is_zero() or inf2.is_zero():
        raise PencilUnavailable("form at infinity vanished")
    res_inf_p = sylvester_resultant(inf1, inf2, (w, u))
    res_inf = res_inf_p.constant_value()
    if res_inf == 0:
        raise PencilUnavailable("roots at infinity")
    p1 = f1.substitute({z: f1.registry.one()})
    p2 = f2.substitute({z: f2.registry.one()})
    # coefficient lists in u, entries univariate in w over Q
    a = _w_ucoeffs(p1, u, w)
    b = _w_ucoeffs(p2, u, w)
    if len(a) - 1 != r1 or len(b) - 1 != r2:
        raise PencilUnavailable("u-degree dropped in this chart")
    eml = _u_resultant_frac(a, b)
    N = r1 * r2
    if u_deg(eml) != N:
        raise PencilUnavailable("eliminant degree dropped")
    lc = eml[-1]
    emonic = [c / lc for c in eml]
    if u_deg(u_gcd(emonic, u_deriv(emonic))) > 0:
        raise PencilUnavailable("eliminant not squarefree")
    s1, s0 = _degree_one_remainder(a, b)
    if s1 is None:
        raise PencilUnavailable("no degree-one remainder")
    prod_s1 = _res_frac_vs_monic(emonic, s1)
    if prod_s1 == 0:
        raise PencilUnavailable("parametrization denominator hits a root")
    return RootPencil(3, main_vars, transform, res_inf, emonic, s1, s0, prod_s1)


def _w_ucoeffs(p: MPoly, u: str, w: str) -> list:
    """p as ascending u-coefficient lists, each a Fraction list in w."""
    out = []
    for c in p.univariate_coeffs(u):
        present = c.variables_present()
        if any(v != w for v in present):
            raise PencilUnavailable("unexpected variable in base system chart")
        iw = c.registry.index(w)
        if c.is_zero():
            out.append([])
            continue
        d = max(m[iw] for m in c.terms)
        lst = [Fraction(0)] * (d + 1)
        for m, coef in c.terms.items():
            lst[m[iw]] += coef
        out.append(u_trim(lst))
    while out and not out[-1]:
        out.pop()
    return out


def _u_resultant_frac(a: list, b: list) -> list:
    """Resultant in u of two polynomials whose u-coefficients are Fraction
    lists in w; returns a Fraction list in w (Sylvester + Bareiss on lists)."""
    da, db = len(a) - 1, len(b) - 1
    size = da + db
    zero: list = []
    rows = []
    desc_a = list(reversed(a))
    desc_b = list(reversed(b))
    for i in range(db):
        rows.append([zero] * i + desc_a + [zero] * (size - da - 1 - i))
    for i in range(da):
        rows.append([zero] * i + desc_b + [zero] * (size - db - 1 - i))
    return _bareiss_upoly(rows)


def _bareiss_upoly(rows: list) -> list:
    from .poly_core import u_mul

    n = len(rows)
    m = [list(r) for r in rows]
    sign = 1
    prev = [Fraction(1)]
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            return []
        if piv != k:
            m[piv], m[k] = m[k], m[piv]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = [x - y for x, y in _zip_pad(u_mul(m[k][k], m[i][j]),
                                                  u_mul(m[i][k], m[k][j]))]
                q, r = u_divmod(u_trim(num), prev)
                assert not r, "Bareiss division must be exact"
                m[i][j] = q
            m[i][k] = []
        prev = m[k][k]
    out = m[n - 1][n - 1]
    return out if sign == 1 else [-c for c in out]


def _zip_pad(a: list, b: list):
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return zip(a, b)


def _strip_w_content(coeffs: list) -> list:
    """Remove the common univariate-in-w factor from a u-coefficient list."""
    polys = [c for c in coeffs if c]
    if not polys:
        return coeffs
    g = polys[0]
    for c in polys[1:]:
        g = u_gcd(g, c)
        if u_deg(g) == 0:
            break
    if u_deg(g) == 0:
        return coeffs
    out = []
    for c in coeffs:
        if not c:
            out.append([])
        else:
            q, r = u_divmod(list(c), g)
            assert not r
            out.append(q)
    return out


def _prem_u(r0: list, r1: list):
    """Pseudo-remainder in u of coefficient lists over Q[w]; the result lies
    in the ideal spanned by r0, r1."""
    from .poly_core import u_mul

    lead = r1[-1]
    rem = [list(c) for c in r0]
    while len(rem) >= len(r1):
        if not rem[-1]:
            rem.pop()
            continue
        top = rem[-1]
        rem = [u_mul(c, lead) for c in rem]
        shift = len(rem) - len(r1)
        for j in range(len(r1)):
            rem[shift + j] = u_trim([x - y for x, y in _zip_pad(rem[shift + j],
                                                               u_mul(top, r1[j]))])
        assert not rem[-1], "pseudo-division top must cancel"
        rem.pop()
    while rem and not rem[-1]:
        rem.pop()
    return rem


def _degree_one_remainder(a: list, b: list):
    """Euclidean remainder sequence in u over Q(w) down to degree one;
    returns (s1, s0) with w-content removed, or (None, None)."""
    r0 = [u_trim(list(c)) for c in a]
    r1 = [u_trim(list(c)) for c in b]
    if len(r0) < len(r1):
        r0, r1 = r1, r0
    for _ in range(12):
        if len(r1) - 1 == 1:
            return u_trim(list(r1[1])), u_trim(list(r1[0]))
        if len(r1) - 1 < 1:
            return None, None
        nxt = _strip_w_content(_prem_u(r0, r1))
        if not nxt:
            return None, None
        r0, r1 = r1, nxt
    return None, None


def _res_frac_vs_monic(emonic: list, h: list) -> Fraction:
    """Res(E, h) for monic E over Q and h a Fraction list (= prod of h over
    the roots of E)."""
    nn = len(emonic) - 1
    r = list(h)
    while len(r) > nn:
        c = r.pop()
        if c:
            k = len(r) - nn
            for j in range(nn):
                r[k + j] -= c * emonic[j]
    r = u_trim(r)
    if not r:
        return Fraction(0)
    if len(r) == 1:
        return r[0] ** nn
    da, db = nn, len(r) - 1
    rows = []
    desc_a = list(reversed(emonic))
    desc_b = list(reversed(r))
    for i in range(db):
        rows.append([Fraction(0)] * i + desc_a + [Fraction(0)] * (da + db - da - 1 - i))
    for i in range(da):
        rows.append([Fraction(0)] * i + desc_b + [Fraction(0)] * (da + db - db - 1 - i))
    return det_fraction(rows)


# ---------------------------------------------------------------------------
# Poisson evaluation and Vieta tensors
# ---------------------------------------------------------------------------


def poisson_eval(system: PolySystem, g: MPoly) -> MPoly:
    """R{f_1, ..., f_{n-1}, g}: the product of g over the system's roots in
    the resultant normalization (g is appended last)."""
    n = system.n
    if len(system.polynomials) != n - 1:
        raise ValueError("poisson_eval expects n-1 polynomials in n variables")
    if g.is_zero():
        return system.registry.zero()
    d = g.homogeneity_degree(system.main_vars)
    if d is None:
        raise NotHomogeneous("g is not homogeneous in the system's main variables")
    if n == 3 and d >= 4:
        base_ok = all(set(p.variables_present()) <= set(system.main_vars)
                      for p in system.polynomials)
        if base_ok:
            try:
                pencil = build_pencil(system.polynomials, system.main_vars)
                return pencil.pi(g, system.main_vars)
            except PencilUnavailable:
                pass
    return resultant_of(list(system.polynomials) + [g], system.main_vars)


@dataclass(frozen=True)
class VietaTensor:
    """Symmetric root-product tensor: entries keyed by sorted index multisets
    (1-based variable indices), values polynomial in the system coefficients."""

    n: int
    root_count: int
    entries: dict

    def entry(self, indices: Sequence[int]) -> MPoly:
        return self.entries[tuple(sorted(indices))]


def vieta_tensor(system: PolySystem) -> VietaTensor:
    """Read the generalized Vieta data off the resultant against a fully
    symbolic linear form."""
    n = system.n
    if len(system.polynomials) != n - 1:
        raise ValueError("vieta_tensor expects n-1 polynomials in n variables")
    reg = system.registry
    gnames = []
    for i in range(1, n + 1):
        name = f"g{i}"
        while name in reg._index:
            name = "_" + name
        gnames.append(name)
    ext = reg.extend(gnames, "parameter")
    polys = [p.map_to(ext) for p in system.polynomials]
    g = ext.zero()
    for name, x in zip(gnames, system.main_vars):
        g = g + ext.var(name) * ext.var(x)
    res = poisson_eval(PolySystem.make(polys, system.main_vars), g)
    gidx = [ext.index(nm) for nm in gnames]
    buckets: dict = {}
    for mono, c in res.terms.items():
        profile = tuple(mono[i] for i in gidx)
        indices = []
        for var_i, e in enumerate(profile):
            indices.extend([var_i + 1] * e)
        rest = list(mono)
        for i in gidx:
            rest[i] = 0
        buckets.setdefault(tuple(indices), {})[tuple(rest)] = c
    entries = {k: MPoly(ext, t).map_to(reg) for k, t in buckets.items()}
    N = system.root_count
    entries = {k: v for k, v in entries.items() if len(k) == N}
    return VietaTensor(n, N, entries)
