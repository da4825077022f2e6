"""Exact coefficient fields carrying a computable non-Archimedean valuation.

Three field kinds are supported:

* ``rational_p_adic`` -- the rationals with the p-adic absolute value,
* ``prime_field``     -- F_p with the trivial valuation,
* ``ratfunc_t_adic``  -- F_p(t) with the t-adic valuation.

All absolute values are handled on a log-base-p scale, so every comparison
the rest of the package makes is an exact comparison of ``Fraction`` values.
``log_abs(a)`` returns log_p|a| as a ``Fraction`` and ``NEG_INFINITY`` for 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CasError, ParseError

RATIONAL_P_ADIC = "rational_p_adic"
PRIME_FIELD = "prime_field"
RATFUNC_T_ADIC = "ratfunc_t_adic"

FIELD_KINDS = (RATIONAL_P_ADIC, PRIME_FIELD, RATFUNC_T_ADIC)


class _NegInfinity:
    """Sentinel for log|0|.  Orders below every Fraction; absorbs addition."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __neg__(self):
        raise CasError("BAD_LOG_VALUE", "cannot negate -infinity")

    def __repr__(self):
        return "-inf"


NEG_INFINITY = _NegInfinity()


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Which coefficient field the computation runs in."""

    kind: str
    p: int

    def __post_init__(self):
        if self.kind not in FIELD_KINDS:
            raise CasError("VALIDATION_ERROR", f"unknown field kind {self.kind!r}")
        if not is_prime(self.p):
            raise CasError("VALIDATION_ERROR", f"p = {self.p} is not prime")

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == RATIONAL_P_ADIC else self.p

    def zero(self) -> "Coeff":
        return Coeff(self, _zero_payload(self))

    def one(self) -> "Coeff":
        return self.from_int(1)

    def from_int(self, k: int) -> "Coeff":
        if self.kind == RATIONAL_P_ADIC:
            return Coeff(self, Fraction(k))
        if self.kind == PRIME_FIELD:
            return Coeff(self, k % self.p)
        kp = k % self.p
        return Coeff(self, (((kp,) if kp else ()), (1,)))

    def from_fraction(self, q: Fraction) -> "Coeff":
        if self.kind != RATIONAL_P_ADIC:
            raise CasError("VALIDATION_ERROR", "fractions only embed in characteristic 0")
        return Coeff(self, Fraction(q))

    def t(self) -> "Coeff":
        """The valuation parameter t of F_p(t)."""
        if self.kind != RATFUNC_T_ADIC:
            raise CasError("VALIDATION_ERROR", "t exists only in ratfunc fields")
        return Coeff(self, ((0, 1), (1,)))

    def parse(self, text: str) -> "Coeff":
        return parse_coeff(self, text)

    def __str__(self):
        if self.kind == RATIONAL_P_ADIC:
            return f"Q({self.p}-adic)"
        if self.kind == PRIME_FIELD:
            return f"F_{self.p}"
        return f"F_{self.p}(t)"


def _zero_payload(spec: FieldSpec):
    if spec.kind == RATIONAL_P_ADIC:
        return Fraction(0)
    if spec.kind == PRIME_FIELD:
        return 0
    return ((), (1,))


# ---------------------------------------------------------------------------
# dense univariate arithmetic over F_p, used for the F_p(t) payloads
# (tuples of ints in [0, p), ascending powers, no trailing zeros)

def _fpt_trim(c: list) -> tuple:
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


def _fpt_add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = (out[i] + x) % p
    return _fpt_trim(out)


def _fpt_neg(a, p):
    return tuple((-x) % p for x in a)

def _fpt_sub(a, b, p):
    return _fpt_add(a, _fpt_neg(b, p), p)


def _fpt_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _fpt_trim(out)


def _fpt_divmod(a, b, p):
    if not b:
        raise CasError("DIVISION_BY_ZERO", "polynomial division by zero")
    inv = pow(b[-1], p - 2, p)
    rem = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return (), tuple(a)
    quo = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = rem[k]
        if c:
            q = (c * inv) % p
            quo[k - db] = q
            for j in range(db + 1):
                rem[k - db + j] = (rem[k - db + j] - q * b[j]) % p
    return _fpt_trim(quo), _fpt_trim(rem)


def _fpt_gcd(a, b, p):
    while b:
        _, r = _fpt_divmod(a, b, p)
        a, b = b, r
    if not a:
        return ()
    inv = pow(a[-1], p - 2, p)
    return tuple((x * inv) % p for x in a)


def _fpt_ord(a) -> int:
    """t-adic order: index of the lowest nonzero coefficient."""
    for i, x in enumerate(a):
        if x:
            return i
    raise CasError("BAD_LOG_VALUE", "order of the zero polynomial")


def _fpt_str(a) -> str:
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        if i == 0:
            parts.append(str(c))
        elif i == 1:
            parts.append("t" if c == 1 else f"{c}*t")
        else:
            parts.append(f"t^{i}" if c == 1 else f"{c}*t^{i}")
    return "+".join(parts)


def _fpt_parse(text: str, p: int):
    text = text.replace(" ", "")
    if not text:
        raise ParseError("empty polynomial in t")
    # normalize leading sign, then split on +/-
    coeffs: dict[int, int] = {}
    i = 0
    sign = 1
    if text[0] in "+-":
        sign = -1 if text[0] == "-" else 1
        i = 1
    term = ""
    tokens = []
    while i <= len(text):
        ch = text[i] if i < len(text) else None
        if ch in ("+", "-", None):
            if not term:
                raise ParseError(f"dangling sign in {text!r}")
            tokens.append((sign, term))
            if ch is None:
                break
            sign = -1 if ch == "-" else 1
            term = ""
        else:
            term += ch
        i += 1
    for sign, term in tokens:
        c, e = 1, 0
        for factor in term.split("*"):
            if not factor:
                raise ParseError(f"empty factor in {text!r}")
            if factor[0] == "t":
                if factor == "t":
                    e += 1
                elif factor.startswith("t^"):
                    e += int(factor[2:])
                else:
                    raise ParseError(f"bad factor {factor!r}")
            else:
                c *= int(factor)
        coeffs[e] = (coeffs.get(e, 0) + sign * c) % p
    if not coeffs:
        return ()
    out = [0] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        out[e] = c % p
    return _fpt_trim(out)


def _ratfunc_canonical(num, den, p):
    if not den:
        raise CasError("DIVISION_BY_ZERO", "zero denominator")
    if not num:
        return ((), (1,))
    g = _fpt_gcd(num, den, p)
    if len(g) > 1 or g[0] != 1:
        num, _ = _fpt_divmod(num, g, p)
        den, _ = _fpt_divmod(den, g, p)
    lead = den[-1]
    if lead != 1:
        inv = pow(lead, p - 2, p)
        num = tuple((x * inv) % p for x in num)
        den = tuple((x * inv) % p for x in den)
    return (num, den)


# ---------------------------------------------------------------------------

class Coeff:
    """An element of a FieldSpec field, always kept in canonical form.

    Payloads: Fraction for the rationals, int in [0, p) for F_p, and a
    (numerator, denominator) pair of F_p[t] coefficient tuples for F_p(t)
    with monic denominator and coprime parts.
    """

    __slots__ = ("spec", "val")

    def __init__(self, spec: FieldSpec, val):
        self.spec = spec
        self.val = val

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        k = self.spec.kind
        if k == PRIME_FIELD:
            return self.val == 0
        if k == RATIONAL_P_ADIC:
            return self.val == 0
        return not self.val[0]

    def is_one(self) -> bool:
        k = self.spec.kind
        if k == PRIME_FIELD:
            return self.val == 1
        if k == RATIONAL_P_ADIC:
            return self.val == 1
        return self.val == ((1,), (1,))

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "Coeff"):
        if self.spec != other.spec:
            raise CasError("SPEC_MISMATCH", "mixed coefficient fields")

    def __add__(self, other: "Coeff") -> "Coeff":
        self._check(other)
        k = self.spec.kind
        if k == PRIME_FIELD:
            return Coeff(self.spec, (self.val + other.val) % self.spec.p)
        if k == RATIONAL_P_ADIC:
            return Coeff(self.spec, self.val + other.val)
        p = self.spec.p
        (n1, d1), (n2, d2) = self.val, other.val
        num = _fpt_add(_fpt_mul(n1, d2, p), _fpt_mul(n2, d1, p), p)
        return Coeff(self.spec, _ratfunc_canonical(num, _fpt_mul(d1, d2, p), p))

    def __sub__(self, other: "Coeff") -> "Coeff":
        return self + (-other)

    def __neg__(self) -> "Coeff":
        k = self.spec.kind
        if k == PRIME_FIELD:
            return Coeff(self.spec, (-self.val) % self.spec.p)
        if k == RATIONAL_P_ADIC:
            return Coeff(self.spec, -self.val)
        n, d = self.val
        return Coeff(self.spec, (_fpt_neg(n, self.spec.p), d))

    def __mul__(self, other: "Coeff") -> "Coeff":
        self._check(other)
        k = self.spec.kind
        if k == PRIME_FIELD:
            return Coeff(self.spec, (self.val * other.val) % self.spec.p)
        if k == RATIONAL_P_ADIC:
            return Coeff(self.spec, self.val * other.val)
        p = self.spec.p
        (n1, d1), (n2, d2) = self.val, other.val
        return Coeff(self.spec, _ratfunc_canonical(_fpt_mul(n1, n2, p), _fpt_mul(d1, d2, p), p))

    def __truediv__(self, other: "Coeff") -> "Coeff":
        self._check(other)
        if other.is_zero():
            raise CasError("DIVISION_BY_ZERO", "division by zero coefficient")
        k = self.spec.kind
        if k == PRIME_FIELD:
            inv = pow(other.val, self.spec.p - 2, self.spec.p)
            return Coeff(self.spec, (self.val * inv) % self.spec.p)
        if k == RATIONAL_P_ADIC:
            return Coeff(self.spec, self.val / other.val)
        p = self.spec.p
        (n1, d1), (n2, d2) = self.val, other.val
        return Coeff(self.spec, _ratfunc_canonical(_fpt_mul(n1, d2, p), _fpt_mul(d1, n2, p), p))

    def inverse(self) -> "Coeff":
        return self.spec.one() / self

    def __eq__(self, other):
        if not isinstance(other, Coeff):
            return NotImplemented
        return self.spec == other.spec and self.val == other.val

    def __hash__(self):
        return hash((self.spec, self.val))

    # -- valuation -----------------------------------------------------------

    def log_abs(self):
        """log_p of the absolute value, NEG_INFINITY when zero."""
        if self.is_zero():
            return NEG_INFINITY
        k = self.spec.kind
        if k == PRIME_FIELD:
            return Fraction(0)
        if k == RATIONAL_P_ADIC:
            p = self.spec.p
            v = 0
            n = self.val.numerator
            while n % p == 0:
                n //= p
                v += 1
            d = self.val.denominator
            while d % p == 0:
                d //= p
                v -= 1
            return Fraction(-v)
        num, den = self.val
        return Fraction(-(_fpt_ord(num) - _fpt_ord(den)))

    def pth_root(self, s: int = 1) -> "Coeff":
        """A b with b^(p^s) = self, in the represented field."""
        if self.spec.characteristic == 0:
            raise CasError("WRONG_CHARACTERISTIC", "p-th roots need characteristic p")
        if s < 1:
            raise CasError("VALIDATION_ERROR", "root exponent must be positive")
        if self.spec.kind == PRIME_FIELD:
            return self  # Frobenius is the identity on F_p
        q = self.spec.p ** s
        num, den = self.val

        def root(poly):
            out = [0] * ((len(poly) - 1) // q + 1) if poly else []
            for i, c in enumerate(poly):
                if c == 0:
                    continue
                if i % q:
                    raise CasError("NOT_A_PTH_POWER", f"t-exponent {i} not divisible by {q}")
                out[i // q] = c  # c^(p^s) = c on F_p
            return _fpt_trim(out)

        return Coeff(self.spec, (root(num), root(den)))

    # -- text ----------------------------------------------------------------

    def __str__(self):
        k = self.spec.kind
        if k == PRIME_FIELD:
            return str(self.val)
        if k == RATIONAL_P_ADIC:
            return str(self.val)
        num, den = self.val
        ns = _fpt_str(num)
        if den == (1,):
            return ns
        ds = _fpt_str(den)
        if "+" in ns or "-" in ns:
            ns = f"({ns})"
        if "+" in ds or "-" in ds:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"Coeff({self.spec}, {self})"


def field_arith(a: Coeff, b: Coeff, op: str) -> Coeff:
    """Dispatch form of the four field operations ('+', '-', '*', '/')."""
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        return a / b
    raise CasError("VALIDATION_ERROR", f"unknown operation {op!r}")


def log_abs(a: Coeff):
    return a.log_abs()


def coeff_pth_root(a: Coeff, s: int = 1) -> Coeff:
    return a.pth_root(s)


def _split_top_level_slash(text: str):
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            return text[:i], text[i + 1:]
    return text, None


def parse_coeff(spec: FieldSpec, text: str) -> Coeff:
    """Parse the coefficient grammar: "n", "n/d", "k", "P(t)" or "P(t)/Q(t)"."""
    text = text.strip()
    if not text:
        raise ParseError("empty coefficient")
    try:
        if spec.kind == RATIONAL_P_ADIC:
            return Coeff(spec, Fraction(text))
        if spec.kind == PRIME_FIELD:
            return Coeff(spec, int(text) % spec.p)
        num_s, den_s = _split_top_level_slash(text)
        num_s = num_s.strip()
        if num_s.startswith("(") and num_s.endswith(")"):
            num_s = num_s[1:-1]
        num = _fpt_parse(num_s, spec.p)
        if den_s is None:
            den = (1,)
        else:
            den_s = den_s.strip()
            if den_s.startswith("(") and den_s.endswith(")"):
                den_s = den_s[1:-1]
            den = _fpt_parse(den_s, spec.p)
        return Coeff(spec, _ratfunc_canonical(num, den, spec.p))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad coefficient {text!r}: {exc}") from exc
