"""Exact multivariate polynomial arithmetic over the rationals.

Variables are tagged either "main" or "parameter"; main variables carry the
geometric content (homogeneity, elimination), parameters ride along in the
coefficient ring.  Everything here is immutable and pure.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Rational = Fraction

MAIN = "main"
PARAMETER = "parameter"

Scalar = Union[int, Fraction]


class NlaError(Exception):
    """Base class for all toolkit errors."""


class RegistryMismatch(NlaError):
    pass


class NotHomogeneous(NlaError):
    pass


class ZeroPolynomialError(NlaError):
    pass


class NotDivisible(NlaError):
    pass


class NotPerfectPower(NlaError):
    pass


class ParseError(NlaError):
    pass


class ComputationError(NlaError):
    pass


class ScopeError(NlaError):
    pass


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


class VarRegistry:
    """Ordered set of named variables, each tagged main or parameter.

    The order is fixed for the registry's lifetime and defines the monomial
    order (graded lexicographic in registry order).
    """

    __slots__ = ("names", "kinds", "_index")

    def __init__(self, names: Sequence[str], kinds: Sequence[str]):
        names = tuple(names)
        kinds = tuple(kinds)
        if len(names) != len(kinds):
            raise ValueError("names and kinds must have equal length")
        if len(set(names)) != len(names):
            raise ValueError(f"variable names must be unique: {names}")
        for n in names:
            if not _NAME_RE.fullmatch(n):
                raise ValueError(f"invalid variable name: {n!r}")
        for k in kinds:
            if k not in (MAIN, PARAMETER):
                raise ValueError(f"unknown variable kind: {k!r}")
        self.names = names
        self.kinds = kinds
        self._index = {n: i for i, n in enumerate(names)}

    @classmethod
    def make(cls, main: Sequence[str], parameters: Sequence[str] = ()) -> "VarRegistry":
        return cls(tuple(main) + tuple(parameters),
                   (MAIN,) * len(main) + (PARAMETER,) * len(parameters))

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, VarRegistry)
                and self.names == other.names and self.kinds == other.kinds)

    def __hash__(self) -> int:
        return hash((self.names, self.kinds))

    def __len__(self) -> int:
        return len(self.names)

    def __repr__(self) -> str:
        return f"VarRegistry({list(self.names)})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def kind(self, name: str) -> str:
        return self.kinds[self.index(name)]

    @property
    def main_names(self) -> tuple:
        return tuple(n for n, k in zip(self.names, self.kinds) if k == MAIN)

    @property
    def parameter_names(self) -> tuple:
        return tuple(n for n, k in zip(self.names, self.kinds) if k == PARAMETER)

    def extend(self, names: Sequence[str], kind: str) -> "VarRegistry":
        """New registry with extra variables appended."""
        return VarRegistry(self.names + tuple(names), self.kinds + (kind,) * len(names))

    def drop(self, names: Iterable[str]) -> "VarRegistry":
        gone = set(names)
        keep = [(n, k) for n, k in zip(self.names, self.kinds) if n not in gone]
        return VarRegistry(tuple(n for n, _ in keep), tuple(k for _, k in keep))

    # -- polynomial factories ------------------------------------------------

    def zero(self) -> "MPoly":
        return MPoly(self, {})

    def const(self, c: Scalar) -> "MPoly":
        c = Fraction(c)
        if c == 0:
            return MPoly(self, {})
        return MPoly(self, {(0,) * len(self.names): c})

    def one(self) -> "MPoly":
        return self.const(1)

    def var(self, name: str) -> "MPoly":
        e = [0] * len(self.names)
        e[self.index(name)] = 1
        return MPoly(self, {tuple(e): Fraction(1)})


def _grlex_key(exps: tuple) -> tuple:
    return (sum(exps), exps)


class MPoly:
    """Multivariate polynomial: mapping exponent tuple -> nonzero Fraction."""

    __slots__ = ("registry", "terms")

    def __init__(self, registry: VarRegistry, terms: Mapping[tuple, Scalar]):
        # integral coefficients are kept as plain ints: they mix freely with
        # Fraction and keep the hot arithmetic loops gcd-free
        clean = {}
        nvars = len(registry.names)
        for mono, c in terms.items():
            if type(c) is not int:
                c = Fraction(c)
                if c.denominator == 1:
                    c = c.numerator
            if c == 0:
                continue
            if len(mono) != nvars:
                raise ValueError("monomial length does not match registry")
            clean[mono] = c
        self.registry = registry
        self.terms = clean

    # -- basics --------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MPoly):
            return self.registry == other.registry and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.registry.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.registry, frozenset(self.terms.items())))

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.registry != self.registry:
                raise RegistryMismatch(
                    f"operands use different registries: {self.registry} vs {other.registry}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.registry.const(other)
        return NotImplemented  # type: ignore[return-value]

    # -- ring operations -----------------------------------------------------

    def __add__(self, other) -> "MPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms:
            return other
        if not other.terms:
            return self
        res = dict(self.terms)
        for mono, c in other.terms.items():
            s = res.get(mono)
            if s is None:
                res[mono] = c
            else:
                s = s + c
                if s:
                    res[mono] = s
                else:
                    del res[mono]
        out = MPoly.__new__(MPoly)
        out.registry = self.registry
        out.terms = res
        return out

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        out = MPoly.__new__(MPoly)
        out.registry = self.registry
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other) -> "MPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MPoly":
        return (-self) + other

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            c = other
            if c == 0:
                return self.registry.zero()
            if type(c) is Fraction and c.denominator == 1:
                c = c.numerator
            out = MPoly.__new__(MPoly)
            out.registry = self.registry
            out.terms = {m: v * c for m, v in self.terms.items()}
            return out
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        res: dict = {}
        get = res.get
        from operator import add as _add
        bitems = list(b.items())
        for m1, c1 in a.items():
            for m2, c2 in bitems:
                mono = tuple(map(_add, m1, m2))
                c = c1 * c2
                s = get(mono)
                if s is None:
                    res[mono] = c
                else:
                    s = s + c
                    if s:
                        res[mono] = s
                    else:
                        del res[mono]
        out = MPoly.__new__(MPoly)
        out.registry = self.registry
        out.terms = res
        return out

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.registry.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- structure -----------------------------------------------------------

    def total_degree(self) -> int:
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no degree")
        return max(sum(m) for m in self.terms)

    def degree_in(self, names: Sequence[str]) -> int:
        """Max total degree over the given variables; zero polynomial errors."""
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no degree")
        idx = [self.registry.index(n) for n in names]
        return max(sum(m[i] for i in idx) for m in self.terms)

    def degree_in_var(self, name: str) -> int:
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no degree")
        i = self.registry.index(name)
        return max(m[i] for m in self.terms)

    def variables_present(self) -> tuple:
        seen = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    seen.add(i)
        return tuple(self.registry.names[i] for i in sorted(seen))

    def leading(self) -> tuple:
        """(exponents, coefficient) of the graded-lex leading term."""
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no leading term")
        mono = max(self.terms, key=_grlex_key)
        return mono, self.terms[mono]

    def coeff(self, mono: tuple) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial; errors if any variable appears."""
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1:
            mono, c = next(iter(self.terms.items()))
            if not any(mono):
                return Fraction(c)
        raise NlaError("polynomial is not constant")

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def univariate_coeffs(self, name: str) -> list:
        """Coefficients of powers of `name`, ascending; entries are MPoly
        free of `name` (same registry)."""
        i = self.registry.index(name)
        if not self.terms:
            return []
        d = max(m[i] for m in self.terms)
        buckets: list = [dict() for _ in range(d + 1)]
        for m, c in self.terms.items():
            rest = m[:i] + (0,) + m[i + 1:]
            buckets[m[i]][rest] = c
        return [MPoly(self.registry, b) for b in buckets]

    def coefficient_of_power(self, name: str, k: int) -> "MPoly":
        i = self.registry.index(name)
        out = {}
        for m, c in self.terms.items():
            if m[i] == k:
                out[m[:i] + (0,) + m[i + 1:]] = c
        return MPoly(self.registry, out)

    # -- homogeneity ---------------------------------------------------------

    def homogeneity_degree(self, names: Sequence[str] | None = None):
        """Degree d if every term has total degree d in `names` (default: all
        main variables), else None.  The zero polynomial errors."""
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial: homogeneity degree undefined")
        if names is None:
            names = self.registry.main_names
        idx = [self.registry.index(n) for n in names]
        degs = {sum(m[i] for i in idx) for m in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def dehomogenize(self, pivot: str) -> "MPoly":
        """Divide by pivot^d and set pivot = 1.  The remaining main variables
        keep their names but now denote ratios against the pivot."""
        d = self.homogeneity_degree()
        if d is None:
            raise NotHomogeneous("polynomial is not homogeneous in its main variables")
        new_reg = self.registry.drop([pivot])
        i = self.registry.index(pivot)
        out = {}
        for m, c in self.terms.items():
            rest = m[:i] + m[i + 1:]
            out[rest] = out.get(rest, Fraction(0)) + c
        return MPoly(new_reg, out)

    def homogenize(self, registry: VarRegistry, pivot: str, degree: int) -> "MPoly":
        """Inverse of dehomogenize: multiply each term by pivot^(degree - deg)."""
        i = registry.index(pivot)
        main = [n for n in registry.main_names if n != pivot]
        out = {}
        for m, c in self.terms.items():
            exps = [0] * len(registry.names)
            for n, e in zip(self.registry.names, m):
                exps[registry.index(n)] = e
            d = sum(exps[registry.index(n)] for n in main)
            if d > degree:
                raise ValueError("degree smaller than existing main degree")
            exps[i] = degree - d
            out[tuple(exps)] = c
        return MPoly(registry, out)

    # -- evaluation and substitution ------------------------------------------

    def evaluate(self, assignment: Mapping[str, object]):
        """Evaluate with a full assignment of every variable present.

        Rational values give an exact Fraction; any float/complex value makes
        the result a complex float.
        """
        missing = [n for n in self.variables_present() if n not in assignment]
        if missing:
            raise KeyError(f"missing variables in assignment: {missing}")
        vals = {self.registry.index(n): v for n, v in assignment.items()
                if n in self.registry._index}
        total = None
        for m, c in self.terms.items():
            term: object = c
            for i, e in enumerate(m):
                if e:
                    term = term * vals[i] ** e
            total = term if total is None else total + term
        return Fraction(0) if total is None else total

    def substitute(self, mapping: Mapping[str, "MPoly | Scalar"]) -> "MPoly":
        """Replace variables by polynomials of the same registry."""
        reg = self.registry
        polys = {}
        for name, val in mapping.items():
            polys[reg.index(name)] = val if isinstance(val, MPoly) else reg.const(val)
            if isinstance(val, MPoly) and val.registry != reg:
                raise RegistryMismatch("substitution value uses a different registry")
        # cache powers of each substituted variable
        pow_cache: dict = {}

        def power(i: int, e: int) -> MPoly:
            key = (i, e)
            if key not in pow_cache:
                pow_cache[key] = polys[i] ** e
            return pow_cache[key]

        total = reg.zero()
        for m, c in self.terms.items():
            term = reg.const(c)
            for i, e in enumerate(m):
                if not e:
                    continue
                if i in polys:
                    term = term * power(i, e)
                else:
                    term = term * MPoly(reg, {tuple(e if j == i else 0
                                                    for j in range(len(reg.names))): 1})
            total = total + term
        return total

    def map_to(self, registry: VarRegistry, rename: Mapping[str, str] | None = None) -> "MPoly":
        """Transfer into another registry, optionally renaming variables."""
        rename = rename or {}
        out = {}
        nv = len(registry.names)
        for m, c in self.terms.items():
            exps = [0] * nv
            for n, e in zip(self.registry.names, m):
                if e:
                    exps[registry.index(rename.get(n, n))] += e
            key = tuple(exps)
            out[key] = out.get(key, Fraction(0)) + c
        return MPoly(registry, out)

    # -- printing ------------------------------------------------------------

    def __repr__(self) -> str:
        return f"MPoly({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


# ---------------------------------------------------------------------------
# exact division, t-orders, roots, graded expansion
# ---------------------------------------------------------------------------


def exact_div(p: MPoly, d: MPoly) -> MPoly:
    """Exact quotient p/d; raises NotDivisible if the division has a remainder."""
    if isinstance(d, (int, Fraction)):
        d = p.registry.const(d)
    if d.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if p.is_zero():
        return p.registry.zero()
    if d.is_constant():
        inv = 1 / d.constant_value()
        return p * inv
    dm, dc = d.leading()
    quo = p.registry.zero()
    rem = p
    while not rem.is_zero():
        rm, rc = rem.leading()
        qm = tuple(a - b for a, b in zip(rm, dm))
        if any(e < 0 for e in qm):
            raise NotDivisible("leading monomial not divisible")
        qt = MPoly(p.registry, {qm: Fraction(rc) / Fraction(dc)})
        quo = quo + qt
        rem = rem - qt * d
    return quo


def divides(p: MPoly, d: MPoly) -> bool:
    try:
        exact_div(p, d)
        return True
    except NotDivisible:
        return False


def t_order(p: MPoly, t: str) -> tuple:
    """(k, c): k is the minimal exponent of `t` over all terms and c the exact
    coefficient polynomial of t^k (with t removed)."""
    if p.is_zero():
        raise ZeroPolynomialError("t_order of the zero polynomial is undefined")
    i = p.registry.index(t)
    k = min(m[i] for m in p.terms)
    out = {}
    for m, c in p.terms.items():
        if m[i] == k:
            out[m[:i] + (0,) + m[i + 1:]] = c
    return k, MPoly(p.registry, out)


def _rational_kth_root(c: Fraction, k: int) -> Fraction:
    """Exact k-th root of a rational, or raises NotPerfectPower."""
    if k == 1:
        return c
    if c == 0:
        return Fraction(0)
    neg = c < 0
    if neg and k % 2 == 0:
        raise NotPerfectPower(f"{c} has no rational {k}-th root")
    num, den = abs(c.numerator), c.denominator
    rn = round(num ** (1.0 / k)) if num.bit_length() < 50 else _int_kth_root(num, k)
    rd = round(den ** (1.0 / k)) if den.bit_length() < 50 else _int_kth_root(den, k)
    # float seed may be off by one
    rn = _fix_root(num, rn, k)
    rd = _fix_root(den, rd, k)
    if rn is None or rd is None:
        raise NotPerfectPower(f"{c} has no rational {k}-th root")
    r = Fraction(rn, rd)
    return -r if neg else r


def _int_kth_root(n: int, k: int) -> int:
    lo, hi = 0, 1 << (n.bit_length() // k + 2)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** k < n:
            lo = mid + 1
        else:
            hi = mid
    return lo


def _fix_root(n: int, guess: int, k: int):
    for r in (guess - 1, guess, guess + 1):
        if r >= 0 and r ** k == n:
            return r
    return None


def poly_kth_root(p: MPoly, k: int) -> MPoly:
    """Exact k-th root over Q, verified by re-raising.

    Recurses on the last registry variable present; for even k the
    representative with positive graded-lex leading coefficient is returned.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return p
    if p.is_zero():
        return p
    reg = p.registry
    present = p.variables_present()
    if not present:
        return reg.const(_rational_kth_root(p.constant_value(), k))
    var = present[-1]
    coeffs = p.univariate_coeffs(var)
    m = len(coeffs) - 1
    if m % k != 0:
        raise NotPerfectPower(f"degree in {var} not divisible by {k}")
    dq = m // k
    top = poly_kth_root(coeffs[m], k)
    q_coeffs = [reg.zero()] * (dq + 1)
    q_coeffs[dq] = top
    # coefficient matching from the top down: coefficient of var^(m-j) in q^k
    # determines q_coeffs[dq-j] via division by k*top^(k-1)
    lead_factor = k * top ** (k - 1)
    for j in range(1, dq + 1):
        # known part: terms of q^k at degree m-j using already fixed coefficients
        known = _power_coeff_without(q_coeffs, k, m - j, skip_index=dq - j)
        target = coeffs[m - j] - known
        try:
            q_coeffs[dq - j] = exact_div(target, lead_factor)
        except NotDivisible:
            raise NotPerfectPower("coefficient matching failed") from None
    q = reg.zero()
    v = reg.var(var)
    for e, c in enumerate(q_coeffs):
        q = q + c * v ** e
    if (q ** k) != p:
        raise NotPerfectPower("re-raising the candidate root failed")
    if k % 2 == 0:
        _, lc = q.leading()
        if lc < 0:
            q = -q
    return q


def _power_coeff_without(q_coeffs, k, degree, skip_index):
    """Coefficient of var^degree in q^k restricted to multisets of k exponents
    that avoid skip_index (those terms involve the still-unknown coefficient)."""
    from itertools import combinations_with_replacement

    reg = q_coeffs[0].registry
    dq = len(q_coeffs) - 1
    total = reg.zero()
    for combo in combinations_with_replacement(range(dq + 1), k):
        if sum(combo) != degree or skip_index in combo:
            continue
        prod = reg.one()
        for e in combo:
            prod = prod * q_coeffs[e]
        total = total + prod * _multinomial(combo, k)
    return total


def _multinomial(combo, k: int) -> int:
    counts: dict = {}
    for e in combo:
        counts[e] = counts.get(e, 0) + 1
    r = math.factorial(k)
    for c in counts.values():
        r //= math.factorial(c)
    return r


@dataclass(frozen=True)
class GradedExpansion:
    """Homogeneous-degree buckets of a polynomial field shifted to a point.

    components[d][i] is the degree-d part (in the shifted variables) of the
    i-th field component; degree 0 holds the residual value at the point.
    """
    base_point: tuple
    components: dict

    def component(self, degree: int) -> list:
        return self.components.get(degree, [])


def graded_expand(field: Sequence[MPoly], point: Sequence[Scalar]) -> GradedExpansion:
    """Shift main variables by `point` and bucket each component by degree."""
    if not field:
        raise ValueError("empty field")
    reg = field[0].registry
    main = reg.main_names
    if len(point) != len(main):
        raise ValueError(f"point has dimension {len(point)}, field has {len(main)}")
    point = tuple(Fraction(v) for v in point)
    shift = {n: reg.var(n) + reg.const(v) for n, v in zip(main, point)}
    buckets: dict = {}
    for i, f in enumerate(field):
        if f.registry != reg:
            raise RegistryMismatch("field components use different registries")
        shifted = f.substitute(shift)
        idx = [reg.index(n) for n in main]
        per_degree: dict = {}
        for m, c in shifted.terms.items():
            d = sum(m[j] for j in idx)
            per_degree.setdefault(d, {})[m] = c
        for d, terms in per_degree.items():
            buckets.setdefault(d, [reg.zero()] * len(field))[i] = MPoly(reg, terms)
    return GradedExpansion(point, buckets)


# ---------------------------------------------------------------------------
# canonical text form:  signed sum of  coef*v1^e1*...  with rational coef
# ---------------------------------------------------------------------------


def format_poly(p: MPoly) -> str:
    if not p.terms:
        return "0"
    items = sorted(p.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)
    parts = []
    for mono, c in items:
        factors = []
        for n, e in zip(p.registry.names, mono):
            if e == 1:
                factors.append(n)
            elif e > 1:
                factors.append(f"{n}^{e}")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = str(mag) + "*" + "*".join(factors)
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


_TOKEN_RE = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*|\d+/\d+|\d+|\^|\*|\+|-)")


def parse_poly(text: str, registry: VarRegistry) -> MPoly:
    """Parse the canonical text form (signed sum of coef*var^exp products)."""
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"cannot tokenize {text[pos:pos+20]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    if not tokens:
        raise ParseError("empty polynomial text")

    result = registry.zero()
    i = 0
    n = len(tokens)
    while i < n:
        sign = 1
        while i < n and tokens[i] in "+-":
            if tokens[i] == "-":
                sign = -sign
            i += 1
        if i >= n:
            raise ParseError("dangling sign")
        coeff = Fraction(sign)
        mono = [0] * len(registry.names)
        expect_factor = True
        while i < n:
            tok = tokens[i]
            if tok in "+-":
                break
            if tok == "*":
                i += 1
                expect_factor = True
                continue
            if not expect_factor:
                raise ParseError(f"unexpected token {tok!r} (missing '*'?)")
            if re.fullmatch(r"\d+(/\d+)?", tok):
                coeff *= Fraction(tok)
                i += 1
            elif _NAME_RE.fullmatch(tok):
                try:
                    vi = registry.index(tok)
                except KeyError:
                    raise ParseError(f"unknown variable {tok!r}") from None
                e = 1
                i += 1
                if i < n and tokens[i] == "^":
                    i += 1
                    if i >= n or not tokens[i].isdigit():
                        raise ParseError("exponent expected after '^'")
                    e = int(tokens[i])
                    i += 1
                mono[vi] += e
            else:
                raise ParseError(f"unexpected token {tok!r}")
            expect_factor = False
        if expect_factor:
            raise ParseError("empty term")
        result = result + MPoly(registry, {tuple(mono): coeff})
    return result


def proportionality_unit(p: MPoly, q: MPoly):
    """If p = u*q for a nonzero rational u, return u; else None."""
    if p.is_zero() and q.is_zero():
        return Fraction(1)
    if p.is_zero() or q.is_zero():
        return None
    if set(p.terms) != set(q.terms):
        return None
    it = iter(p.terms)
    m0 = next(it)
    u = Fraction(p.terms[m0]) / Fraction(q.terms[m0])
    for m in it:
        if p.terms[m] != u * q.terms[m]:
            return None
    return u


# ---------------------------------------------------------------------------
# univariate helpers over Fraction coefficient lists (ascending order)
# ---------------------------------------------------------------------------


def u_trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def u_deg(c: Sequence[Fraction]) -> int:
    return len(c) - 1


def u_add(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, v in enumerate(a):
        out[i] += v
    for i, v in enumerate(b):
        out[i] += v
    return u_trim(out)


def u_scale(a, c):
    c = Fraction(c)
    return u_trim([v * c for v in a])


def u_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return u_trim(out)


def u_divmod(a, b):
    """Quotient and remainder over Q (b nonzero)."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    r = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    db, lb = len(b) - 1, b[-1]
    while len(r) >= len(b) and u_trim(r):
        if len(r) < len(b):
            break
        k = len(r) - 1 - db
        c = r[-1] / lb
        q[k] = c
        for j, y in enumerate(b):
            r[k + j] -= c * y
        u_trim(r)
    return u_trim(q), u_trim(r)


def u_gcd(a, b):
    a, b = u_trim(list(a)), u_trim(list(b))
    while b:
        _, r = u_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [v / lead for v in a]
    return a


def u_deriv(a):
    return u_trim([a[i] * i for i in range(1, len(a))])


def u_eval(a, x):
    total = 0
    for c in reversed(a):
        total = total * x + c
    return total


def u_squarefree_decomposition(a):
    """Yun-style decomposition: list of (factor, multiplicity) with
    product(factor^multiplicity) = a up to a constant."""
    a = u_trim(list(a))
    if u_deg(a) < 1:
        return []
    g = u_gcd(a, u_deriv(a))
    out = []
    if u_deg(g) == 0:
        return [(a, 1)]
    w, _ = u_divmod(a, g)
    mult = 1
    while u_deg(w) > 0:
        y = u_gcd(w, g)
        z, _ = u_divmod(w, y)
        if u_deg(z) > 0:
            out.append((z, mult))
        w = y
        g, _ = u_divmod(g, y)
        mult += 1
    if u_deg(g) > 0:
        # remaining factor at top multiplicity (only for non-squarefree gcd tails)
        out.append((g, mult))
    return out
