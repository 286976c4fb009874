"""Univariate polynomials over an exact field, with Euclidean division and GCDs.

Associate classes are represented by their monic member, so ``gcd`` and
``lcm`` always return monic polynomials (or zero).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import CoefficientError, DivisionByZero, FieldMismatch, PolySyntaxError
from .fields import GAUSSIAN, PRIME, FieldSpec, GaussianRational


class Poly:
    """Dense polynomial in ``t``; ``coeffs[k]`` is the coefficient of ``t^k``.

    No trailing zero coefficients are stored, so the zero polynomial has an
    empty coefficient tuple.
    """

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs: Iterable = ()):
        cs = [spec.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.spec = spec
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, spec: FieldSpec, coeffs: list) -> Poly:
        # coefficients already in the field
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        p = cls.__new__(cls)
        p.spec = spec
        p.coeffs = tuple(coeffs)
        return p

    @classmethod
    def constant(cls, spec: FieldSpec, c=1) -> Poly:
        return cls(spec, [c])

    @classmethod
    def t(cls, spec: FieldSpec) -> Poly:
        return cls(spec, [0, 1])

    @classmethod
    def parse(cls, text: str, spec: FieldSpec) -> Poly:
        return parse(text, spec)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else self.spec.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __bool__(self):
        return bool(self.coeffs)

    def _check(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.spec != self.spec:
                raise FieldMismatch(f"{self.spec} vs {other.spec}")
            return other
        return Poly(self.spec, [other])

    def __add__(self, other):
        o = self._check(other)
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly._raw(self.spec, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.spec, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        o = self._check(other)
        if not self.coeffs or not o.coeffs:
            return Poly._raw(self.spec, [])
        out = [self.spec.zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly._raw(self.spec, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise ValueError("negative polynomial power")
        result = Poly.constant(self.spec, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other) -> tuple[Poly, Poly]:
        return poly_divmod(self, self._check(other))

    def __floordiv__(self, other) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other) -> Poly:
        return divmod(self, other)[1]

    def divides(self, other: Poly) -> bool:
        """True if ``self | other`` (zero divides only zero)."""
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def monic(self) -> Poly:
        if not self.coeffs:
            return self
        inv = self.spec.inv(self.coeffs[-1])
        return Poly._raw(self.spec, [c * inv for c in self.coeffs])

    def scale(self, c) -> Poly:
        c = self.spec.coerce(c)
        return Poly._raw(self.spec, [x * c for x in self.coeffs])

    def __call__(self, x):
        acc = self.spec.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.spec == other.spec and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly(self.spec, [other])
        return NotImplemented

    def __hash__(self):
        return hash((self.spec, self.coeffs))

    def sort_key(self) -> tuple:
        """Degree first, then coefficients from the top down."""
        return (self.degree, tuple(_coeff_key(c) for c in reversed(self.coeffs)))

    def __repr__(self):
        return f"Poly({self.spec}, {str(self)!r})"

    def __str__(self):
        return format_poly(self)


def _coeff_key(c) -> tuple:
    if isinstance(c, GaussianRational):
        return (c.re, c.im)
    if isinstance(c, Fraction):
        return (c, 0)
    return (int(c), 0)


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Euclidean division ``a = q*b + r`` with ``deg r < deg b``."""
    if b.is_zero():
        raise DivisionByZero("polynomial division by zero")
    if a.spec != b.spec:
        raise FieldMismatch(f"{a.spec} vs {b.spec}")
    spec = a.spec
    r = list(a.coeffs)
    db = b.degree
    if len(r) - 1 < db:
        return Poly._raw(spec, []), a
    inv_lead = spec.inv(b.coeffs[-1])
    q = [spec.zero] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if not c:
            continue
        c = c * inv_lead
        q[k - db] = c
        for j, bc in enumerate(b.coeffs):
            r[k - db + j] = r[k - db + j] - c * bc
    return Poly._raw(spec, q), Poly._raw(spec, r[:db])


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; ``gcd(0, 0) = 0``."""
    a, b = a.monic(), b.monic()
    while b:
        a, b = b, (a % b).monic()
    return a


def lcm(a: Poly, b: Poly) -> Poly:
    """Monic lcm; ``lcm(a, 0) = 0``."""
    if a.is_zero() or b.is_zero():
        return Poly._raw(a.spec, [])
    return ((a * b) // gcd(a, b)).monic()


def extended_gcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, r, s)`` with ``r*a + s*b = g`` and ``g`` the monic gcd."""
    spec = a.spec
    zero, one = Poly(spec), Poly.constant(spec, 1)
    r0, r1 = a, b
    s0, s1 = one, zero
    t0, t1 = zero, one
    while r1:
        q, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, zero, zero
    inv = spec.inv(r0.lead)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def product(polys: Sequence[Poly], spec: FieldSpec) -> Poly:
    out = Poly.constant(spec, 1)
    for p in polys:
        out = out * p
    return out


# --- printing -------------------------------------------------------------


def _coeff_text(c, spec: FieldSpec) -> tuple[str, str]:
    """(sign, magnitude text) for a coefficient; magnitude '' means 1."""
    if spec.kind == PRIME:
        return "+", "" if c == 1 else str(c)
    if isinstance(c, GaussianRational) and not c.is_real():
        return "+", f"({c})"
    value = c.re if isinstance(c, GaussianRational) else c
    sign = "-" if value < 0 else "+"
    mag = abs(value)
    if mag == 1:
        return sign, ""
    if mag.denominator == 1:
        return sign, str(mag.numerator)
    return sign, f"({mag})"


def format_poly(p: Poly, var: str = "t", unit: str = "") -> str:
    """Expanded form with descending powers, e.g. ``t^5 - t^4 - t + 1``.

    ``var`` renames the indeterminate and ``unit`` is appended to the constant
    term, so ``format_poly(p, "A", "I")`` gives ``A^2 - I``.
    """
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        sign, mag = _coeff_text(c, p.spec)
        if k == 0 and not unit:
            body = mag.strip("()") if mag and "i" not in mag else (mag or "1")
        else:
            mono = unit if k == 0 else (var if k == 1 else f"{var}^{k}")
            body = mag + mono
        if not parts:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


# --- parsing --------------------------------------------------------------


class _Parser:
    """Recursive descent over ``+ - * ^``, parentheses and implicit products.

    expr   := term (('+'|'-') term)*
    term   := unary (['*'] power)*
    unary  := ('+'|'-') unary | power
    power  := atom ['^' INT]
    atom   := NUMBER ['/' NUMBER] | 't' | 'i' | '(' expr ')'
    """

    def __init__(self, text: str, spec: FieldSpec):
        self.text = text
        self.spec = spec
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text: str) -> list[tuple[str, object, int]]:
        out = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                num = int(text[i:j])
                den = 1
                if j < len(text) and text[j] == "/":
                    k = j + 1
                    while k < len(text) and text[k].isdigit():
                        k += 1
                    if k == j + 1:
                        raise PolySyntaxError("expected denominator", text, j + 1)
                    den = int(text[j + 1 : k])
                    j = k
                out.append(("num", (num, den), i))
                i = j
            elif ch in "+-*^()":
                out.append((ch, None, i))
                i += 1
            elif ch == "t":
                out.append(("t", None, i))
                i += 1
            elif ch == "i" and self.spec.kind == GAUSSIAN:
                out.append(("i", None, i))
                i += 1
            else:
                raise PolySyntaxError(f"unexpected character {ch!r}", text, i)
        out.append(("end", None, len(text)))
        return out

    def peek(self) -> str:
        return self.tokens[self.pos][0]

    def take(self, kind: str | None = None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise PolySyntaxError(f"expected {kind!r}, found {tok[0]!r}", self.text, tok[2])
        self.pos += 1
        return tok

    def parse(self) -> Poly:
        if self.peek() == "end":
            raise PolySyntaxError("empty polynomial", self.text, 0)
        p = self.expr()
        if self.peek() != "end":
            tok = self.tokens[self.pos]
            raise PolySyntaxError(f"unexpected {tok[0]!r}", self.text, tok[2])
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek() in "+-" and self.peek() != "end":
            op = self.take()[0]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.unary()
        while True:
            kind = self.peek()
            if kind == "*":
                self.take()
                p = p * self.power()
            elif kind in ("num", "t", "i", "("):
                p = p * self.power()
            else:
                return p

    def unary(self) -> Poly:
        kind = self.peek()
        if kind == "-":
            self.take()
            return -self.unary()
        if kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            tok = self.take("num")
            num, den = tok[1]
            if den != 1:
                raise PolySyntaxError("exponent must be a nonnegative integer", self.text, tok[2])
            return base ** num
        return base

    def atom(self) -> Poly:
        kind, value, where = self.take()
        if kind == "num":
            num, den = value
            if den == 0:
                raise CoefficientError(f"zero denominator in {num}/0 at position {where}")
            if self.spec.kind == PRIME and den % self.spec.p == 0:
                raise CoefficientError(
                    f"{num}/{den} has no value in {self.spec} (position {where})"
                )
            return Poly(self.spec, [self.spec.normalize(num, den)])
        if kind == "t":
            return Poly.t(self.spec)
        if kind == "i":
            return Poly(self.spec, [GaussianRational(0, 1)])
        if kind == "(":
            p = self.expr()
            self.take(")")
            return p
        raise PolySyntaxError(f"unexpected {kind!r}", self.text, where)


def parse(text: str, spec: FieldSpec) -> Poly:
    """Parse a polynomial in ``t``; see :class:`_Parser` for the grammar."""
    return _Parser(text, spec).parse()


def parse_scalar(text: str, spec: FieldSpec):
    """Parse a constant (e.g. ``-3/4`` or ``1+2i``) into a field element."""
    p = parse(text, spec)
    if p.degree > 0:
        raise PolySyntaxError("expected a constant", text, 0)
    return p.coeffs[0] if p.coeffs else spec.zero
