"""Exact sparse multivariate polynomials and rational functions.

Everything downstream (edge factors, Euler classes, the final invariant)
is a quotient of polynomials in the independent torus weights
lambda_1, lambda_3, ..., lambda_{2m-1}.  This module provides the two
value types and the handful of exact operations the calculator needs:

* ``SparsePoly`` -- a dictionary from exponent tuples to ``Fraction``
  coefficients.  An exponent tuple has one slot per independent weight;
  no zero coefficients are ever stored.  Terms are ordered graded
  lexicographically (total degree first, then lex) for printing and for
  the leading-term conventions below.

* ``RationalFunction`` -- a normalized quotient ``num/den``:
  gcd(num, den) = 1, the denominator has integer coefficients with
  content 1, and its leading coefficient is positive.  With those three
  conditions the representative is unique, so equality is structural.

The GCD is computed by content extraction plus a subresultant
pseudo-remainder sequence, recursing one variable at a time.  That is
entirely adequate here: at most three variables and degrees of a few
tens appear in practice.

Variables are named ``x1..xm``; for m = 1 the alias ``x`` and for m = 2
the aliases ``x, y`` are used when printing (and accepted when parsing),
matching the conventions used for P^3 throughout.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Dict, Iterable, Optional, Sequence, Tuple, Union

Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction]


def var_names(m: int) -> Tuple[str, ...]:
    """Printing names for the m independent weight variables."""
    if m == 1:
        return ("x",)
    if m == 2:
        return ("x", "y")
    return tuple("x%d" % (i + 1) for i in range(m))


def _grlex_key(mono: Monomial) -> Tuple[int, Monomial]:
    return (sum(mono), mono)


class SparsePoly:
    """Sparse polynomial with Fraction coefficients in m variables."""

    __slots__ = ("m", "terms", "_hash")

    def __init__(self, m: int, terms: Optional[Dict[Monomial, Fraction]] = None):
        self.m = m
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                if len(mono) != m:
                    raise ValueError("monomial length %d does not match m=%d" % (len(mono), m))
                c = Fraction(c)
                if c:
                    clean[mono] = c
        self.terms = clean
        self._hash: Optional[int] = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, m: int) -> "SparsePoly":
        return cls(m, {})

    @classmethod
    def const(cls, m: int, c: Scalar) -> "SparsePoly":
        c = Fraction(c)
        return cls(m, {(0,) * m: c} if c else {})

    @classmethod
    def variable(cls, m: int, index: int) -> "SparsePoly":
        if not 0 <= index < m:
            raise ValueError("variable index out of range")
        mono = tuple(1 if i == index else 0 for i in range(m))
        return cls(m, {mono: Fraction(1)})

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0,) * self.m: Fraction(1)}

    def is_constant(self) -> bool:
        return all(sum(mono) == 0 for mono in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms[(0,) * self.m]

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(mono) for mono in self.terms)

    def leading(self) -> Tuple[Monomial, Fraction]:
        """Leading (monomial, coefficient) in graded-lex order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        mono = max(self.terms, key=_grlex_key)
        return mono, self.terms[mono]

    def sorted_terms(self) -> Iterable[Tuple[Monomial, Fraction]]:
        for mono in sorted(self.terms, key=_grlex_key, reverse=True):
            yield mono, self.terms[mono]

    # -- ring arithmetic ---------------------------------------------------

    def _check(self, other: "SparsePoly") -> None:
        if self.m != other.m:
            raise ValueError("mixing polynomials over different weight rings")

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        self._check(other)
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            s = terms.get(mono, Fraction(0)) + c
            if s:
                terms[mono] = s
            else:
                terms.pop(mono, None)
        return SparsePoly(self.m, terms)

    def __neg__(self) -> "SparsePoly":
        return SparsePoly(self.m, {mono: -c for mono, c in self.terms.items()})

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        return self + (-other)

    def __mul__(self, other: "SparsePoly") -> "SparsePoly":
        self._check(other)
        terms: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                s = terms.get(mono, Fraction(0)) + c1 * c2
                if s:
                    terms[mono] = s
                else:
                    terms.pop(mono, None)
        return SparsePoly(self.m, terms)

    def scaled(self, c: Scalar) -> "SparsePoly":
        c = Fraction(c)
        if not c:
            return SparsePoly.zero(self.m)
        return SparsePoly(self.m, {mono: coef * c for mono, coef in self.terms.items()})

    def __pow__(self, n: int) -> "SparsePoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = SparsePoly.const(self.m, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SparsePoly) and self.m == other.m and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.m, tuple(sorted(self.terms.items()))))
        return self._hash

    def __repr__(self) -> str:
        return "SparsePoly(%r)" % (poly_to_string(self),)

    # -- evaluation and substitutions ---------------------------------------

    def eval(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self.m:
            raise ValueError("point length does not match variable count")
        vals = [Fraction(v) for v in point]
        total = Fraction(0)
        for mono, c in self.terms.items():
            term = c
            for v, e in zip(vals, mono):
                if e:
                    term *= v ** e
            total += term
        return total

    def scale_vars(self, c: Scalar) -> "SparsePoly":
        """Substitute every variable v -> c*v."""
        c = Fraction(c)
        return SparsePoly(
            self.m, {mono: coef * c ** sum(mono) for mono, coef in self.terms.items()}
        )

    # -- content helpers -----------------------------------------------------

    def rational_content(self) -> Fraction:
        """Positive rational c with self/c integer-coefficient, content 1."""
        if not self.terms:
            return Fraction(1)
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            num_gcd = math.gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
        return Fraction(num_gcd, den_lcm)


# ---------------------------------------------------------------------------
# division and GCD
# ---------------------------------------------------------------------------


def poly_divexact(p: SparsePoly, q: SparsePoly) -> Optional[SparsePoly]:
    """Exact quotient p/q, or None when q does not divide p."""
    p._check(q)
    if q.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    quot: Dict[Monomial, Fraction] = {}
    rem = p
    q_mono, q_coef = q.leading()
    while not rem.is_zero():
        r_mono, r_coef = rem.leading()
        mono = tuple(a - b for a, b in zip(r_mono, q_mono))
        if any(e < 0 for e in mono):
            return None
        c = r_coef / q_coef
        quot[mono] = quot.get(mono, Fraction(0)) + c
        rem = rem - q * SparsePoly(p.m, {mono: c})
    return SparsePoly(p.m, quot)


def _deg_in(p: SparsePoly, v: int) -> int:
    if not p.terms:
        return -1
    return max(mono[v] for mono in p.terms)


def _coeff_in(p: SparsePoly, v: int, k: int) -> SparsePoly:
    """Coefficient of v^k, as a polynomial with a zeroed v slot."""
    terms: Dict[Monomial, Fraction] = {}
    for mono, c in p.terms.items():
        if mono[v] == k:
            reduced = tuple(0 if i == v else e for i, e in enumerate(mono))
            terms[reduced] = terms.get(reduced, Fraction(0)) + c
    return SparsePoly(p.m, terms)


def _shift_in(p: SparsePoly, v: int, k: int) -> SparsePoly:
    """Multiply by v^k."""
    return SparsePoly(
        p.m,
        {tuple(e + k if i == v else e for i, e in enumerate(mono)): c for mono, c in p.terms.items()},
    )


def _prem(f: SparsePoly, g: SparsePoly, v: int) -> SparsePoly:
    """Pseudo-remainder of f by g with respect to variable v."""
    n, d = _deg_in(f, v), _deg_in(g, v)
    if d < 0:
        raise ZeroDivisionError("pseudo-division by zero")
    lc_g = _coeff_in(g, v, d)
    r = f
    e = n - d + 1
    while not r.is_zero() and _deg_in(r, v) >= d:
        k = _deg_in(r, v)
        lead = _shift_in(_coeff_in(r, v, k), v, k - d)
        r = lc_g * r - lead * g
        e -= 1
    for _ in range(e):
        r = lc_g * r
    return r

def _int_primitive(p: SparsePoly) -> SparsePoly:
    """Strip the rational content and make the leading coefficient positive."""
    if p.is_zero():
        return p
    c = p.rational_content()
    if p.leading()[1] < 0:
        c = -c
    return p.scaled(1 / c)


def _content_and_primitive(p: SparsePoly, v: int) -> Tuple[SparsePoly, SparsePoly]:
    coeffs = [_coeff_in(p, v, k) for k in range(_deg_in(p, v) + 1)]
    coeffs = [c for c in coeffs if not c.is_zero()]
    content = coeffs[0]
    for c in coeffs[1:]:
        if content.is_one():
            break
        content = poly_gcd(content, c)
    pp = poly_divexact(p, content)
    assert pp is not None
    return content, pp


def _subresultant_prs(a: SparsePoly, b: SparsePoly, v: int) -> SparsePoly:
    """GCD of two v-primitive polynomials via the subresultant sequence."""
    if _deg_in(a, v) < _deg_in(b, v):
        a, b = b, a
    g = SparsePoly.const(a.m, 1)
    h = SparsePoly.const(a.m, 1)
    while True:
        delta = _deg_in(a, v) - _deg_in(b, v)
        r = _prem(a, b, v)
        if r.is_zero():
            _, pp = _content_and_primitive(b, v)
            return pp
        if _deg_in(r, v) == 0:
            return SparsePoly.const(a.m, 1)
        divisor = g * h ** delta
        nxt = poly_divexact(r, divisor)
        assert nxt is not None, "subresultant division must be exact"
        a, b = b, nxt
        g = _coeff_in(a, v, _deg_in(a, v))
        if delta > 0:
            h_new = poly_divexact(g ** delta, h ** (delta - 1))
            assert h_new is not None
            h = h_new


def poly_gcd(p: SparsePoly, q: SparsePoly) -> SparsePoly:
    """Primitive GCD with positive leading coefficient; gcd(0, q) = primitive q."""
    p._check(q)
    if p.is_zero():
        return _int_primitive(q)
    if q.is_zero():
        return _int_primitive(p)
    a = _int_primitive(p)
    b = _int_primitive(q)
    # first variable actually present in either argument
    v = next((i for i in range(p.m) if _deg_in(a, i) > 0 or _deg_in(b, i) > 0), None)
    if v is None:
        return SparsePoly.const(p.m, 1)
    if _deg_in(a, v) == 0 or _deg_in(b, v) == 0:
        # one argument is free of v: gcd divides the v-content of the other
        cont_a, _ = _content_and_primitive(a, v)
        cont_b, _ = _content_and_primitive(b, v)
        return _int_primitive(poly_gcd(cont_a, cont_b))
    cont_a, pp_a = _content_and_primitive(a, v)
    cont_b, pp_b = _content_and_primitive(b, v)
    content = poly_gcd(cont_a, cont_b)
    core = _subresultant_prs(pp_a, pp_b, v)
    return _int_primitive(content * core)


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------


class RationalFunction:
    """Normalized quotient of two sparse polynomials.

    Invariants: gcd(num, den) = 1; den has integer coefficients of
    content 1; den's graded-lex leading coefficient is positive.  The
    numerator absorbs the remaining rational scalar, so a constant value
    c is stored as (c)/(1).
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: SparsePoly, den: SparsePoly, _normalized: bool = False):
        if not _normalized:
            f = rf_normalize(num, den)
            num, den = f.num, f.den
        self.num = num
        self.den = den
        self._hash: Optional[int] = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_poly(cls, p: SparsePoly) -> "RationalFunction":
        return cls(p, SparsePoly.const(p.m, 1), _normalized=True)

    @classmethod
    def const(cls, m: int, c: Scalar) -> "RationalFunction":
        return cls(SparsePoly.const(m, c), SparsePoly.const(m, 1), _normalized=True)

    @classmethod
    def variable(cls, m: int, index: int) -> "RationalFunction":
        return cls.from_poly(SparsePoly.variable(m, index))

    @property
    def m(self) -> int:
        return self.num.m

    # -- field arithmetic --------------------------------------------------

    def _check(self, other: "RationalFunction") -> "RationalFunction":
        if isinstance(other, (int, Fraction)):
            other = RationalFunction.const(self.m, other)
        if self.m != other.m:
            raise ValueError("mixing rational functions over different weight rings")
        return other

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        other = self._check(other)
        g = poly_gcd(self.den, other.den)
        if g.is_one():
            num = self.num * other.den + other.num * self.den
            return RationalFunction(num, self.den * other.den)
        d1 = poly_divexact(self.den, g)
        d2 = poly_divexact(other.den, g)
        assert d1 is not None and d2 is not None
        num = self.num * d2 + other.num * d1
        return RationalFunction(num, d1 * other.den)

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den, _normalized=True)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        other = self._check(other)
        # cross-cancel before multiplying to keep intermediates small
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1 = self.num if g1.is_one() else poly_divexact(self.num, g1)
        d2 = other.den if g1.is_one() else poly_divexact(other.den, g1)
        n2 = other.num if g2.is_one() else poly_divexact(other.num, g2)
        d1 = self.den if g2.is_one() else poly_divexact(self.den, g2)
        assert None not in (n1, d2, n2, d1)
        return RationalFunction(n1 * n2, d1 * d2)

    def inverse(self) -> "RationalFunction":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of the zero function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        return self * self._check(other).inverse()

    def __radd__(self, other: "RationalFunction") -> "RationalFunction":
        return self + other

    def __rmul__(self, other: "RationalFunction") -> "RationalFunction":
        return self * other

    def __rsub__(self, other: "RationalFunction") -> "RationalFunction":
        return -(self - other)

    def __rtruediv__(self, other: "RationalFunction") -> "RationalFunction":
        return self._check(other) * self.inverse()

    def __pow__(self, n: int) -> "RationalFunction":
        if n < 0:
            return self.inverse() ** (-n)
        result = RationalFunction.const(self.m, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self) -> str:
        return "RationalFunction(%r)" % (rf_to_string(self),)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def scale_vars(self, c: Scalar) -> "RationalFunction":
        return RationalFunction(self.num.scale_vars(c), self.den.scale_vars(c))

    def negate_vars(self) -> "RationalFunction":
        """The image under lambda_i -> -lambda_i for every weight."""
        return self.scale_vars(-1)


def rf_normalize(num: SparsePoly, den: SparsePoly) -> RationalFunction:
    """Canonical representative of num/den; error on a zero denominator."""
    num._check(den)
    if den.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if num.is_zero():
        return RationalFunction(
            SparsePoly.zero(num.m), SparsePoly.const(num.m, 1), _normalized=True
        )
    g = poly_gcd(num, den)
    if not g.is_one():
        num2, den2 = poly_divexact(num, g), poly_divexact(den, g)
        assert num2 is not None and den2 is not None
        num, den = num2, den2
    c = den.rational_content()
    if den.leading()[1] < 0:
        c = -c
    return RationalFunction(num.scaled(1 / c), den.scaled(1 / c), _normalized=True)


def rf_arith(a: RationalFunction, b: RationalFunction, op: str) -> RationalFunction:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError("unknown operation %r" % (op,))


def rf_eval(f: RationalFunction, point: Sequence[Scalar]) -> Fraction:
    """Exact evaluation; raises if the denominator vanishes at the point."""
    den_val = f.den.eval(point)
    if den_val == 0:
        raise ZeroDivisionError(
            "denominator vanishes at %s" % (tuple(Fraction(p) for p in point),)
        )
    return f.num.eval(point) / den_val


def rf_is_constant(f: RationalFunction) -> Optional[Fraction]:
    """The constant value of f, or None when f genuinely depends on the weights."""
    if f.num.is_zero():
        return Fraction(0)
    if f.den.is_constant() and f.num.is_constant():
        return f.num.constant_value() / f.den.constant_value()
    # normalized forms make this unreachable for constants, but stay safe
    c = f.num.leading()[1] / f.den.leading()[1]
    if (f.num - f.den.scaled(c)).is_zero():
        return c
    return None


# ---------------------------------------------------------------------------
# text serialization:  "(<poly>)/(<poly>)" with integer coefficients
# ---------------------------------------------------------------------------


def poly_to_string(p: SparsePoly, names: Optional[Sequence[str]] = None) -> str:
    if names is None:
        names = var_names(p.m)
    if p.is_zero():
        return "0"
    pieces = []
    for mono, c in p.sorted_terms():
        factors = []
        for name, e in zip(names, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append("%s^%d" % (name, e))
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        pieces.append(("- " if c < 0 else "+ ") + body)
    out = pieces[0][2:] if pieces[0][0] == "+" else "-" + pieces[0][2:]
    for piece in pieces[1:]:
        out += " " + piece[0] + " " + piece[2:]
    return out


def rf_to_string(f: RationalFunction) -> str:
    """Serialize with integer coefficients by clearing the numerator's content."""
    q = 1
    for c in f.num.terms.values():
        q = q * c.denominator // math.gcd(q, c.denominator)
    num = f.num.scaled(q)
    den = f.den.scaled(q)
    return "(%s)/(%s)" % (poly_to_string(num), poly_to_string(den))


_TERM_RE = re.compile(r"^(?P<coef>\d+)?(?P<rest>(?:\*?[A-Za-z][A-Za-z0-9]*(?:\^\d+)?)*)$")
_FACTOR_RE = re.compile(r"([A-Za-z][A-Za-z0-9]*)(?:\^(\d+))?")


def _name_to_index(name: str, m: int) -> int:
    aliases = {"x": 0, "y": 1} if m >= 2 else {"x": 0}
    if name in aliases and aliases[name] < m:
        return aliases[name]
    match = re.fullmatch(r"x(\d+)", name)
    if match:
        idx = int(match.group(1)) - 1
        if 0 <= idx < m:
            return idx
    raise ValueError("unknown variable %r for m=%d" % (name, m))


def poly_from_string(s: str, m: int) -> SparsePoly:
    s = s.strip()
    if not s:
        raise ValueError("empty polynomial string")
    # split into signed terms
    s = s.replace("-", "+-")
    terms: Dict[Monomial, Fraction] = {}
    for chunk in s.split("+"):
        chunk = chunk.replace(" ", "")
        if not chunk:
            continue
        sign = 1
        if chunk.startswith("-"):
            sign = -1
            chunk = chunk[1:]
        match = _TERM_RE.match(chunk)
        if not match:
            raise ValueError("cannot parse term %r" % (chunk,))
        coef = Fraction(sign) * Fraction(int(match.group("coef") or 1))
        expo = [0] * m
        for name, power in _FACTOR_RE.findall(match.group("rest") or ""):
            expo[_name_to_index(name, m)] += int(power or 1)
        mono = tuple(expo)
        prev = terms.get(mono, Fraction(0)) + coef
        if prev:
            terms[mono] = prev
        else:
            terms.pop(mono, None)
    return SparsePoly(m, terms)


_RF_RE = re.compile(r"^\s*\((?P<num>[^()]*)\)\s*/\s*\((?P<den>[^()]*)\)\s*$")


def rf_from_string(s: str, m: int) -> RationalFunction:
    match = _RF_RE.match(s)
    if not match:
        raise ValueError("expected '(<poly>)/(<poly>)', got %r" % (s,))
    num = poly_from_string(match.group("num"), m)
    den = poly_from_string(match.group("den"), m)
    return rf_normalize(num, den)
