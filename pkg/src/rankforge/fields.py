"""Exact scalar fields: the rationals, prime fields F_p and the Gaussian rationals Q(i).

Elements are immutable and kept in canonical form after every operation, so
``==`` on elements is equality of values.  Rationals are plain
:class:`fractions.Fraction` objects; the other two fields get small value
classes below.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import CharTwoUnsupported, DivisionByZero, FieldMismatch, InputError, ZeroDenominator

Rational = Union[int, Fraction]

RATIONALS = "Q"
PRIME = "F"
GAUSSIAN = "Qi"


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class GF:
    """Residue class modulo a prime ``p``, stored as an int in ``[0, p)``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other) -> int | None:
        if isinstance(other, GF):
            if other.p != self.p:
                raise FieldMismatch(f"F{self.p} vs F{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise DivisionByZero(f"{other} has no image in F{self.p}")
            return other.numerator * pow(other.denominator, -1, self.p)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else GF(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else GF(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else GF(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else GF(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * GF(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else GF(o, self.p) * self.inverse()

    def __neg__(self):
        return GF(-self.v, self.p)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return GF(pow(self.v, k, self.p), self.p)

    def inverse(self) -> GF:
        if self.v == 0:
            raise DivisionByZero(f"0 is not invertible in F{self.p}")
        return GF(pow(self.v, -1, self.p), self.p)

    def conjugate(self) -> GF:
        return self

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        if isinstance(other, GF):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"GF({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class GaussianRational:
    """``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Rational = 0, im: Rational = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o * self.inverse()

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = GaussianRational(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> GaussianRational:
        n = self.norm()
        if n == 0:
            raise DivisionByZero("0 is not invertible in Qi")
        return GaussianRational(self.re / n, -self.im / n)

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.im == 1:
            imag = "i"
        elif self.im == -1:
            imag = "-i"
        else:
            imag = f"{self.im}i"
        if self.re == 0:
            return imag
        sign = "" if imag.startswith("-") else "+"
        return f"{self.re}{sign}{imag}"


_SPEC_RE = re.compile(r"^\s*(?:(Q)|(Qi)|F(\d+))\s*$")


@dataclass(frozen=True)
class FieldSpec:
    """One of ``Q``, ``F<p>`` or ``Qi``."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == PRIME:
            if self.p is None or not is_prime(self.p):
                raise InputError(f"F{self.p}: modulus must be prime")
        elif self.kind in (RATIONALS, GAUSSIAN):
            if self.p is not None:
                raise InputError(f"{self.kind} takes no modulus")
        else:
            raise InputError(f"unknown field kind {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        m = _SPEC_RE.match(text)
        if not m:
            raise InputError(f"bad field spec {text!r}; expected Q, Qi or F<p>")
        if m.group(1):
            return RATIONAL_FIELD
        if m.group(2):
            return GAUSSIAN_FIELD
        return cls(PRIME, int(m.group(3)))

    def __str__(self):
        return f"F{self.p}" if self.kind == PRIME else self.kind

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == PRIME else 0

    @property
    def has_involution(self) -> bool:
        """True where conjugate-transpose gives positive-definite Gram matrices."""
        return self.kind != PRIME

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def from_int(self, n: int):
        if self.kind == RATIONALS:
            return Fraction(n)
        if self.kind == PRIME:
            return GF(n, self.p)
        return GaussianRational(n)

    def normalize(self, raw, den=1):
        """Canonical element for ``raw / den``.

        ``raw`` may be an int, Fraction, an element of this field, or (for Qi)
        an ``(re, im)`` pair.
        """
        if not den:
            raise ZeroDenominator(f"{raw}/{den}")
        if isinstance(raw, tuple):
            if self.kind != GAUSSIAN:
                raise FieldMismatch(f"complex pair {raw} outside Qi")
            raw = GaussianRational(*raw)
        if self.kind == RATIONALS:
            if isinstance(raw, (GF, GaussianRational)):
                if isinstance(raw, GaussianRational) and raw.is_real():
                    raw = raw.re
                else:
                    raise FieldMismatch(f"{raw!r} is not rational")
            return Fraction(raw) / Fraction(den)
        if self.kind == PRIME:
            if isinstance(raw, GaussianRational):
                raise FieldMismatch(f"{raw!r} is not in F{self.p}")
            num = raw if isinstance(raw, GF) else GF(0, self.p) + raw
            d = GF(0, self.p) + den
            if not d:
                raise ZeroDenominator(f"{den} vanishes in F{self.p}")
            return num / d
        if isinstance(raw, GF):
            raise FieldMismatch(f"{raw!r} is not in Qi")
        value = raw if isinstance(raw, GaussianRational) else GaussianRational(raw)
        return value if den == 1 else value / GaussianRational(den)

    def inv(self, a):
        if not a:
            raise DivisionByZero(f"0 is not invertible in {self}")
        if isinstance(a, Fraction) or isinstance(a, int):
            return 1 / Fraction(a)
        return a.inverse()

    def conj(self, a):
        return a.conjugate() if isinstance(a, GaussianRational) else a

    def contains(self, a) -> bool:
        if self.kind == RATIONALS:
            return isinstance(a, Fraction)
        if self.kind == PRIME:
            return isinstance(a, GF) and a.p == self.p
        return isinstance(a, GaussianRational)

    def coerce(self, a):
        """Map an int/Fraction/element into this field."""
        if self.contains(a):
            return a
        return self.normalize(a)

    def half(self):
        """The scalar 1/2; raises CharTwoUnsupported in characteristic 2."""
        if self.characteristic == 2:
            raise CharTwoUnsupported(f"2 is not invertible in {self}")
        return self.inv(self.from_int(2))

    def random_element(self, rng, box: int = 3):
        """Uniform residue over F_p; integers (or Gaussian integers) in [-box, box] otherwise."""
        if self.kind == PRIME:
            return GF(int(rng.integers(0, self.p)), self.p)
        if self.kind == RATIONALS:
            return Fraction(int(rng.integers(-box, box + 1)))
        re, im = rng.integers(-box, box + 1, size=2)
        return GaussianRational(int(re), int(im))

    def to_str(self, a) -> str:
        return str(a)


RATIONAL_FIELD = FieldSpec(RATIONALS)
GAUSSIAN_FIELD = FieldSpec(GAUSSIAN)
