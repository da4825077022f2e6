"""Sparse multivariate polynomials over a FieldSpec.

Terms live in a dict mapping exponent tuples to nonzero coefficients; the
canonical term order everywhere (leading terms, serialization) is graded
lexicographic, descending.  gcd works by recursive content / primitive-part
reduction with a subresultant remainder sequence in the highest present
variable, with a plain Euclid fast path when only one variable occurs.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

from .errors import CasError, NotDivisible
from .fields import PRIME_FIELD, RATIONAL_P_ADIC, Coeff, FieldSpec

Monomial = tuple  # exponent tuples; total degree is sum of the entries


def grlex_key(exps: Monomial):
    return (sum(exps), exps)


class MvPoly:
    __slots__ = ("spec", "m", "terms")

    def __init__(self, spec: FieldSpec, m: int, terms: dict):
        """Assumes ``terms`` has no zero coefficients; use the constructors."""
        self.spec = spec
        self.m = m
        self.terms = terms

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero(spec: FieldSpec, m: int) -> "MvPoly":
        return MvPoly(spec, m, {})

    @staticmethod
    def constant(spec: FieldSpec, m: int, c: Coeff) -> "MvPoly":
        if c.is_zero():
            return MvPoly.zero(spec, m)
        return MvPoly(spec, m, {(0,) * m: c})

    @staticmethod
    def one(spec: FieldSpec, m: int) -> "MvPoly":
        return MvPoly.constant(spec, m, spec.one())

    @staticmethod
    def variable(spec: FieldSpec, m: int, i: int) -> "MvPoly":
        exps = tuple(1 if j == i else 0 for j in range(m))
        return MvPoly(spec, m, {exps: spec.one()})

    @staticmethod
    def from_terms(spec: FieldSpec, m: int, pairs) -> "MvPoly":
        terms: dict = {}
        for exps, c in pairs:
            exps = tuple(int(e) for e in exps)
            if len(exps) != m:
                raise CasError("DIMENSION_MISMATCH", f"exponent vector {exps} has wrong length")
            if any(e < 0 for e in exps):
                raise CasError("VALIDATION_ERROR", "negative exponent")
            if exps in terms:
                c = terms[exps] + c
            if c.is_zero():
                terms.pop(exps, None)
            else:
                terms[exps] = c
        return MvPoly(spec, m, terms)

    # -- basic queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.m in self.terms)

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def min_degree(self) -> int:
        if not self.terms:
            raise CasError("ZERO_POLY", "minimum degree of the zero polynomial")
        return min(sum(e) for e in self.terms)

    def degree_in(self, v: int) -> int:
        if not self.terms:
            return -1
        return max(e[v] for e in self.terms)

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise CasError("ZERO_POLY", "leading monomial of the zero polynomial")
        return max(self.terms, key=grlex_key)

    def leading_coeff(self) -> Coeff:
        return self.terms[self.leading_monomial()]

    def constant_coeff(self) -> Coeff:
        return self.terms.get((0,) * self.m, self.spec.zero())

    def sorted_terms(self):
        """Terms in canonical (graded-lex descending) order."""
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def _check(self, other: "MvPoly"):
        if self.spec != other.spec or self.m != other.m:
            raise CasError("SPEC_MISMATCH", "mixed polynomial rings")

    # -- ring operations ---------------------------------------------------------

    def __add__(self, other: "MvPoly") -> "MvPoly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = out[e] + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return MvPoly(self.spec, self.m, out)

    def __neg__(self) -> "MvPoly":
        return MvPoly(self.spec, self.m, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MvPoly") -> "MvPoly":
        return self + (-other)

    def __mul__(self, other: "MvPoly") -> "MvPoly":
        self._check(other)
        if not self.terms or not other.terms:
            return MvPoly.zero(self.spec, self.m)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                if e in out:
                    s = out[e] + c
                    if s.is_zero():
                        del out[e]
                    else:
                        out[e] = s
                elif not c.is_zero():
                    out[e] = c
        return MvPoly(self.spec, self.m, out)

    def scale(self, c: Coeff) -> "MvPoly":
        if c.is_zero():
            return MvPoly.zero(self.spec, self.m)
        return MvPoly(self.spec, self.m, {e: x * c for e, x in self.terms.items()})

    def mul_monomial(self, exps: Monomial, c: Coeff) -> "MvPoly":
        if c.is_zero():
            return MvPoly.zero(self.spec, self.m)
        return MvPoly(self.spec, self.m,
                      {tuple(a + b for a, b in zip(e, exps)): x * c for e, x in self.terms.items()})

    def __pow__(self, n: int) -> "MvPoly":
        if n < 0:
            raise CasError("VALIDATION_ERROR", "negative power")
        out = MvPoly.one(self.spec, self.m)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, MvPoly):
            return NotImplemented
        return self.spec == other.spec and self.m == other.m and self.terms == other.terms

    def __hash__(self):
        return hash((self.spec, self.m, frozenset(self.terms.items())))

    # -- normalization ------------------------------------------------------------

    def normalized(self) -> "MvPoly":
        """Scaled so the graded-lex leading coefficient is 1."""
        if not self.terms:
            return self
        lc = self.leading_coeff()
        if lc.is_one():
            return self
        return self.scale(lc.inverse())

    # -- text -----------------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            cs = str(c)
            if any(ch in cs[1:] for ch in "+-"):
                cs = f"({cs})"
            factors = [cs]
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(f"z{i + 1}")
                elif e > 1:
                    factors.append(f"z{i + 1}^{e}")
            parts.append(" * ".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"MvPoly({self})"


def _split_top_level(text: str, sep: str):
    parts = []
    depth = 0
    cur = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def poly_from_text(spec: FieldSpec, m: int, text: str) -> MvPoly:
    """Parse the term grammar "coeff * z1^e1 * z2^e2 ...", '+'-separated."""
    from .fields import parse_coeff
    from .errors import ParseError

    text = text.strip()
    if not text:
        raise ParseError("empty polynomial")
    if text == "0":
        return MvPoly.zero(spec, m)
    pairs = []
    for term in _split_top_level(text, "+"):
        term = term.strip()
        if not term:
            raise ParseError(f"empty term in {text!r}")
        exps = [0] * m
        coeff = None
        for factor in _split_top_level(term, "*"):
            factor = factor.strip()
            if factor.startswith("z") and factor[1:2].isdigit():
                name, _, power = factor.partition("^")
                idx = int(name[1:]) - 1
                if not 0 <= idx < m:
                    raise ParseError(f"variable {name!r} out of range")
                exps[idx] += int(power) if power else 1
            else:
                if factor.startswith("(") and factor.endswith(")"):
                    factor = factor[1:-1]
                c = parse_coeff(spec, factor)
                coeff = c if coeff is None else coeff * c
        if coeff is None:
            coeff = spec.one()
        pairs.append((tuple(exps), coeff))
    return MvPoly.from_terms(spec, m, pairs)


def poly_arith(f: MvPoly, g: MvPoly, op: str) -> MvPoly:
    if op == "+":
        return f + g
    if op == "-":
        return f - g
    if op == "*":
        return f * g
    raise CasError("VALIDATION_ERROR", f"unknown operation {op!r}")


def exact_div(f: MvPoly, g: MvPoly) -> MvPoly:
    """The quotient f/g when g divides f exactly; NotDivisible otherwise."""
    f._check(g)
    if g.is_zero():
        raise CasError("DIVISION_BY_ZERO_POLY", "polynomial division by zero")
    if f.is_zero():
        return MvPoly.zero(f.spec, f.m)
    if g.is_constant():
        return f.scale(g.constant_coeff().inverse())
    g_lead = g.leading_monomial()
    g_lc = g.terms[g_lead]
    rem = dict(f.terms)
    quo: dict = {}
    g_items = list(g.terms.items())
    while rem:
        e = max(rem, key=grlex_key)
        diff = tuple(a - b for a, b in zip(e, g_lead))
        if any(d < 0 for d in diff):
            raise NotDivisible(f"remainder has leading monomial {e}")
        q = rem[e] / g_lc
        quo[diff] = q
        for ge, gc in g_items:
            ee = tuple(a + b for a, b in zip(diff, ge))
            c = rem.get(ee)
            s = (c - q * gc) if c is not None else -(q * gc)
            if s.is_zero():
                rem.pop(ee, None)
            else:
                rem[ee] = s
    return MvPoly(f.spec, f.m, quo)


def divides(g: MvPoly, f: MvPoly) -> bool:
    try:
        exact_div(f, g)
        return True
    except NotDivisible:
        return False


# ---------------------------------------------------------------------------
# gcd machinery

def _present_vars(f: MvPoly, g: MvPoly):
    out = []
    for v in range(f.m):
        if f.degree_in(v) > 0 or g.degree_in(v) > 0:
            out.append(v)
    return out


def _to_dense_univar(f: MvPoly, v: int):
    out = [None] * (f.degree_in(v) + 1)
    zero = f.spec.zero()
    for e, c in f.terms.items():
        out[e[v]] = c
    return [c if c is not None else zero for c in out]


def _fp_dense(f: MvPoly, v: int, p: int):
    out = [0] * (f.degree_in(v) + 1)
    for e, c in f.terms.items():
        out[e[v]] = c.val
    return out


def _from_dense_univar(spec: FieldSpec, m: int, v: int, coeffs) -> MvPoly:
    terms = {}
    for i, c in enumerate(coeffs):
        if isinstance(c, int):
            c = Coeff(spec, c)
        if not c.is_zero():
            e = [0] * m
            e[v] = i
            terms[tuple(e)] = c
    return MvPoly(spec, m, terms)


def _univar_gcd_fp(a, b, p):
    """Monic gcd of dense int coefficient lists over F_p."""
    def trim(c):
        n = len(c)
        while n and c[n - 1] == 0:
            n -= 1
        return c[:n]

    a, b = trim(list(a)), trim(list(b))
    while b:
        inv = pow(b[-1], p - 2, p)
        db = len(b) - 1
        rem = list(a)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c:
                q = (c * inv) % p
                for j in range(db + 1):
                    rem[k - db + j] = (rem[k - db + j] - q * b[j]) % p
        a, b = b, trim(rem)
    if not a:
        return []
    inv = pow(a[-1], p - 2, p)
    return [(x * inv) % p for x in a]


def _int_primitive(c):
    g = 0
    for x in c:
        g = int_gcd(g, abs(x))
    return [x // g for x in c] if g else []


def _int_pseudo_rem(a, b):
    """Remainder of a by b over the integers, up to content (stripped later)."""
    db = len(b) - 1
    lc = b[-1]
    r = list(a)
    while len(r) - 1 >= db and r:
        dr = len(r) - 1
        head = r[-1]
        r = [x * lc for x in r]
        for j in range(db + 1):
            r[dr - db + j] -= head * b[j]
        while r and r[-1] == 0:
            r.pop()
    return r


def _univar_gcd_q(a, b):
    """Monic gcd of dense Fraction lists via an integer primitive PRS."""
    def to_int(c):
        den = 1
        for x in c:
            den = den * x.denominator // int_gcd(den, x.denominator)
        return _int_primitive([int(x * den) for x in c])

    a, b = to_int(a), to_int(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _int_primitive(_int_pseudo_rem(a, b))
        a, b = b, r
    if not a:
        return []
    return [Fraction(x, a[-1]) for x in a]


def _univar_gcd_generic(a, b, spec):
    """Monic Euclid over the coefficient field (used for F_p(t))."""
    def trim(c):
        n = len(c)
        while n and c[n - 1].is_zero():
            n -= 1
        return c[:n]

    a, b = trim(list(a)), trim(list(b))
    while b:
        inv = b[-1].inverse()
        db = len(b) - 1
        rem = list(a)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if not c.is_zero():
                q = c * inv
                for j in range(db + 1):
                    rem[k - db + j] = rem[k - db + j] - q * b[j]
        a, b = b, trim(rem)
    if not a:
        return []
    inv = a[-1].inverse()
    return [x * inv for x in a]


def _gcd_single_var(f: MvPoly, g: MvPoly, v: int) -> MvPoly:
    spec = f.spec
    if spec.kind == PRIME_FIELD:
        res = _univar_gcd_fp(_fp_dense(f, v, spec.p), _fp_dense(g, v, spec.p), spec.p)
        return _from_dense_univar(spec, f.m, v, res)
    if spec.kind == RATIONAL_P_ADIC:
        res = _univar_gcd_q([c.val for c in _to_dense_univar(f, v)],
                            [c.val for c in _to_dense_univar(g, v)])
        return _from_dense_univar(spec, f.m, v, [spec.from_fraction(x) for x in res])
    res = _univar_gcd_generic(_to_dense_univar(f, v), _to_dense_univar(g, v), spec)
    return _from_dense_univar(spec, f.m, v, res)


def _split_main(f: MvPoly, v: int) -> dict:
    """View f as a univariate polynomial in z_v with MvPoly coefficients."""
    out: dict = {}
    for e, c in f.terms.items():
        d = e[v]
        ee = e[:v] + (0,) + e[v + 1:]
        coeff = out.get(d)
        if coeff is None:
            out[d] = {ee: c}
        else:
            coeff[ee] = c
    return {d: MvPoly(f.spec, f.m, t) for d, t in out.items()}


def _join_main(spec: FieldSpec, m: int, v: int, coeffs: dict) -> MvPoly:
    terms: dict = {}
    for d, poly in coeffs.items():
        for e, c in poly.terms.items():
            terms[e[:v] + (d,) + e[v + 1:]] = c
    return MvPoly(spec, m, terms)


def _main_deg(A: dict) -> int:
    return max(A) if A else -1


def _main_mul_poly(A: dict, q: MvPoly) -> dict:
    out = {}
    for d, c in A.items():
        prod = c * q
        if not prod.is_zero():
            out[d] = prod
    return out


def _main_sub(A: dict, B: dict) -> dict:
    out = dict(A)
    for d, c in B.items():
        if d in out:
            s = out[d] - c
            if s.is_zero():
                del out[d]
            else:
                out[d] = s
        else:
            out[d] = -c
    return out


def _prem(A: dict, B: dict, v: int) -> dict:
    """Pseudo-remainder: lc(B)^(degA-degB+1) * A  mod  B, in the main variable."""
    dB = _main_deg(B)
    lcB = B[dB]
    R = dict(A)
    e = _main_deg(A) - dB + 1
    while R and _main_deg(R) >= dB:
        dR = _main_deg(R)
        lcR = R[dR]
        shifted = {d + dR - dB: c * lcR for d, c in B.items()}
        R = _main_sub(_main_mul_poly(R, lcB), shifted)
        R.pop(dR, None)
        e -= 1
    if e > 0:
        q = lcB ** e
        R = _main_mul_poly(R, q)
    return R


def _content_and_pp(A: dict):
    """gcd of the main-variable coefficients and the primitive part."""
    cont = None
    for d in sorted(A):
        cont = A[d] if cont is None else poly_gcd(cont, A[d])
        if cont.is_constant():
            break
    if cont.is_constant():
        spec = cont.spec
        return MvPoly.one(spec, cont.m), dict(A)
    return cont, {d: exact_div(c, cont) for d, c in A.items()}


def poly_gcd(f: MvPoly, g: MvPoly) -> MvPoly:
    """A gcd of f and g, normalized to graded-lex leading coefficient 1."""
    f._check(g)
    if f.is_zero() and g.is_zero():
        raise CasError("BOTH_ZERO", "gcd(0, 0) is undefined")
    if f.is_zero():
        return g.normalized()
    if g.is_zero():
        return f.normalized()
    if f.is_constant() or g.is_constant():
        return MvPoly.one(f.spec, f.m)
    fv = _present_vars(f, g)
    if len(fv) == 1:
        return _gcd_single_var(f, g, fv[0])
    v = fv[-1]
    if f.degree_in(v) == 0 or g.degree_in(v) == 0:
        # one side is free of the main variable: gcd divides its content
        A = f if f.degree_in(v) == 0 else g
        B = g if f.degree_in(v) == 0 else f
        cont = None
        for _, c in _split_main(B, v).items():
            cont = c if cont is None else poly_gcd(cont, c)
            if cont.is_constant():
                return MvPoly.one(f.spec, f.m)
        return poly_gcd(A, cont)
    A = _split_main(f, v)
    B = _split_main(g, v)
    contA, A = _content_and_pp(A)
    contB, B = _content_and_pp(B)
    cont = poly_gcd(contA, contB)
    if _main_deg(A) < _main_deg(B):
        A, B = B, A
    # subresultant remainder sequence on the primitive parts
    one = MvPoly.one(f.spec, f.m)
    gprev, h = one, one
    while True:
        delta = _main_deg(A) - _main_deg(B)
        R = _prem(A, B, v)
        if not R:
            _, pp = _content_and_pp(B)
            result = _join_main(f.spec, f.m, v, pp)
            break
        if _main_deg(R) == 0:
            result = one
            break
        divisor = gprev * (h ** delta)
        A = B
        B = {d: exact_div(c, divisor) for d, c in R.items()}
        gprev = A[_main_deg(A)]
        if delta > 0:
            h = exact_div(gprev ** delta, h ** (delta - 1)) if delta > 1 else gprev
    return (cont * result).normalized()


def poly_lcm(f: MvPoly, g: MvPoly) -> MvPoly:
    if f.is_zero() or g.is_zero():
        raise CasError("ZERO_INPUT", "lcm needs nonzero inputs")
    return exact_div(f * g, poly_gcd(f, g)).normalized()


def multiplicity(f: MvPoly, P: MvPoly) -> int:
    """Largest e with P^e | f."""
    if f.is_zero():
        raise CasError("ZERO_POLY", "multiplicity in the zero polynomial")
    if P.is_constant():
        raise CasError("CONSTANT_DIVISOR", "multiplicity of a constant divisor")
    e = 0
    cur = f
    while True:
        try:
            cur = exact_div(cur, P)
        except NotDivisible:
            return e
        e += 1


def gcd_with_power(f: MvPoly, base: MvPoly, k: int) -> MvPoly:
    """gcd(f, base^k) for squarefree base, without expanding the power.

    Peels one squarefree layer per round: the product of the first k layers
    carries each shared irreducible with multiplicity min(k, its multiplicity
    in f).
    """
    if f.is_zero():
        raise CasError("ZERO_POLY", "gcd with zero")
    if k < 0:
        raise CasError("VALIDATION_ERROR", "negative power")
    out = MvPoly.one(f.spec, f.m)
    cur = f
    for _ in range(k):
        if base.is_constant() or cur.is_constant():
            break
        d = poly_gcd(cur, base)
        if d.is_constant():
            break
        out = out * d
        cur = exact_div(cur, d)
    return out.normalized()
