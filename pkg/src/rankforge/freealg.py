"""Noncommutative polynomials with optional idempotent letters, and block-matrix certificates.

Letters are short identifiers (``e``, ``f``, ``x``, ``t1``).  A :class:`Mode`
names the letters that satisfy ``g*g = g``; every other letter is free.
Words are kept reduced (no two equal adjacent idempotent letters), which is
a confluent, length-nonincreasing rewriting, so equality of elements is
equality of their term maps.

A :class:`Certificate` packages matrices ``A, A_inv, B, B_inv, X, Y`` over
such an algebra together with the claims ``A A_inv = A_inv A = I``,
``B B_inv = B_inv B = I`` and ``A X B = Y``.  When they hold, ``X`` and ``Y``
have equal rank under every rank function, for every substitution of
idempotents for the idempotent letters.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .errors import (
    CharTwoUnsupported,
    FieldMismatch,
    InputError,
    ModeMismatch,
    PolySyntaxError,
    SizeMismatch,
)
from .fields import RATIONAL_FIELD, FieldSpec

Word = tuple[str, ...]


@dataclass(frozen=True)
class Mode:
    """Set of letters subject to ``g^2 = g``; empty for the free algebra."""

    idempotents: frozenset[str] = frozenset()

    @classmethod
    def free(cls) -> Mode:
        return cls(frozenset())

    @classmethod
    def idempotent(cls, letters: Iterable[str] = ("e", "f")) -> Mode:
        return cls(frozenset(letters))

    @property
    def name(self) -> str:
        if not self.idempotents:
            return "free"
        return "idempotent(" + ",".join(sorted(self.idempotents)) + ")"

    def __str__(self):
        return self.name


FREE = Mode.free()
IDEMPOTENT_EF = Mode.idempotent(("e", "f"))


def reduce_word(letters: Sequence[str], mode: Mode) -> Word:
    out: list[str] = []
    for g in letters:
        if out and out[-1] == g and g in mode.idempotents:
            continue
        out.append(g)
    return tuple(out)


def word_mul(u: Word, v: Word, mode: Mode) -> Word:
    """Concatenate reduced words; only the junction can need rewriting."""
    if u and v and u[-1] == v[0] and v[0] in mode.idempotents:
        return u + v[1:]
    return u + v


def word_key(w: Word) -> tuple:
    return (len(w), w)


class FreeElem:
    """Finite linear combination of reduced words; the empty word is 1."""

    __slots__ = ("spec", "mode", "terms")

    def __init__(self, spec: FieldSpec, mode: Mode, terms: Mapping[Word, object] | None = None):
        self.spec = spec
        self.mode = mode
        clean: dict[Word, object] = {}
        for w, c in (terms or {}).items():
            w = reduce_word(w, mode)
            c = spec.coerce(c)
            total = clean.get(w, spec.zero) + c
            if total:
                clean[w] = total
            else:
                clean.pop(w, None)
        self.terms = clean

    @classmethod
    def _raw(cls, spec: FieldSpec, mode: Mode, terms: dict) -> FreeElem:
        x = cls.__new__(cls)
        x.spec, x.mode, x.terms = spec, mode, terms
        return x

    @classmethod
    def scalar(cls, spec: FieldSpec, mode: Mode, c=1) -> FreeElem:
        return cls(spec, mode, {(): c})

    @classmethod
    def letter(cls, spec: FieldSpec, mode: Mode, g: str) -> FreeElem:
        return cls(spec, mode, {(g,): 1})

    @classmethod
    def parse(cls, text: str, spec: FieldSpec, mode: Mode) -> FreeElem:
        return parse_elem(text, spec, mode)

    def _check(self, other) -> FreeElem:
        if isinstance(other, FreeElem):
            if other.spec != self.spec:
                raise FieldMismatch(f"{self.spec} vs {other.spec}")
            if other.mode != self.mode:
                raise ModeMismatch(f"{self.mode} vs {other.mode}")
            return other
        return FreeElem.scalar(self.spec, self.mode, other)

    def __add__(self, other):
        o = self._check(other)
        terms = dict(self.terms)
        zero = self.spec.zero
        for w, c in o.terms.items():
            s = terms.get(w, zero) + c
            if s:
                terms[w] = s
            else:
                terms.pop(w, None)
        return FreeElem._raw(self.spec, self.mode, terms)

    __radd__ = __add__

    def __neg__(self):
        return FreeElem._raw(self.spec, self.mode, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        o = self._check(other)
        terms: dict[Word, object] = {}
        zero = self.spec.zero
        for u, a in self.terms.items():
            for v, b in o.terms.items():
                w = word_mul(u, v, self.mode)
                s = terms.get(w, zero) + a * b
                if s:
                    terms[w] = s
                else:
                    terms.pop(w, None)
        return FreeElem._raw(self.spec, self.mode, terms)

    def __rmul__(self, other):
        return self._check(other) * self

    def scale(self, c) -> FreeElem:
        c = self.spec.coerce(c)
        if not c:
            return FreeElem._raw(self.spec, self.mode, {})
        return FreeElem._raw(self.spec, self.mode, {w: c * x for w, x in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def letters(self) -> set[str]:
        return {g for w in self.terms for g in w}

    def __eq__(self, other):
        if isinstance(other, FreeElem):
            return self.spec == other.spec and self.mode == other.mode and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == FreeElem.scalar(self.spec, self.mode, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.spec, self.mode, frozenset(self.terms.items())))

    def __repr__(self):
        return f"FreeElem({str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=word_key):
            c = self.terms[w]
            mono = "".join(w)
            text = str(c)
            neg = text.startswith("-") and "i" not in text
            mag = text[1:] if neg else text
            if not w:
                body = mag
            elif mag == "1":
                body = mono
            elif re.fullmatch(r"[0-9/]+", mag):
                body = f"{mag}{mono}"
            else:
                body = f"({mag}){mono}"
            if not parts:
                parts.append("-" + body if neg else body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def evaluate(self, assignment: Mapping[str, object], n: int):
        """Substitute square matrices for letters (``ExactMatrix`` values)."""
        from .exactmat.matrix import ExactMatrix

        acc = ExactMatrix.zeros(self.spec, n)
        eye = ExactMatrix.identity(self.spec, n)
        for w, c in self.terms.items():
            m = eye
            for g in w:
                if g not in assignment:
                    raise InputError(f"no value for letter {g!r}")
                m = m @ assignment[g]
            acc = acc + m.scale(c)
        return acc


def elem_arith(op: str, a: FreeElem, b) -> FreeElem:
    """``op`` is ``add``, ``mul`` or ``scalar_mul`` (``b`` a scalar)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "scalar_mul":
        return a.scale(b)
    raise InputError(f"unknown operation {op!r}")


# --- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([a-z][0-9]*)|([-+*()]))")


def parse_elem(text: str, spec: FieldSpec, mode: Mode) -> FreeElem:
    """Parse e.g. ``1 - e``, ``1/2*(1+f)``, ``t1 t2 + 1``; juxtaposition multiplies."""
    tokens = []
    pos = 0
    text_s = text.rstrip()
    while pos < len(text_s):
        m = _TOKEN.match(text_s, pos)
        if not m:
            raise PolySyntaxError("unexpected character", text, pos)
        tokens.append((m.lastindex, m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    tokens.append((0, "", len(text)))
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        i += 1
        return tokens[i - 1]

    def expr():
        x = term()
        while peek()[1] in ("+", "-") and peek()[0] == 3:
            op = take()[1]
            y = term()
            x = x + y if op == "+" else x - y
        return x

    def term():
        if peek()[1] in ("+", "-") and peek()[0] == 3:
            op = take()[1]
            x = term()
            return -x if op == "-" else x
        x = atom()
        while True:
            kind, val, _ = peek()
            if kind == 3 and val == "*":
                take()
                x = x * atom()
            elif kind in (1, 2) or (kind == 3 and val == "("):
                x = x * atom()
            else:
                return x

    def atom():
        kind, val, where = take()
        if kind == 1:
            num, _, den = val.partition("/")
            return FreeElem.scalar(spec, mode, spec.normalize(int(num), int(den or 1)))
        if kind == 2:
            return FreeElem.letter(spec, mode, val)
        if kind == 3 and val == "(":
            x = expr()
            k, v, w = take()
            if v != ")":
                raise PolySyntaxError("expected ')'", text, w)
            return x
        raise PolySyntaxError(f"unexpected {val or 'end of input'!r}", text, where)

    if len(tokens) == 1:
        raise PolySyntaxError("empty expression", text, 0)
    out = expr()
    if peek()[0] != 0:
        raise PolySyntaxError(f"unexpected {peek()[1]!r}", text, peek()[2])
    return out


# --- matrices over the algebra ------------------------------------------------

Grid = tuple[tuple[FreeElem, ...], ...]


def grid(rows: Sequence[Sequence[str | FreeElem]], spec: FieldSpec, mode: Mode) -> Grid:
    out = tuple(
        tuple(x if isinstance(x, FreeElem) else parse_elem(str(x), spec, mode) for x in row) for row in rows
    )
    if len({len(r) for r in out}) > 1:
        raise SizeMismatch("ragged grid")
    return out


def identity_grid(n: int, spec: FieldSpec, mode: Mode) -> Grid:
    one, zero = FreeElem.scalar(spec, mode, 1), FreeElem(spec, mode)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def mat_mul(M: Grid, N: Grid) -> Grid:
    """Matrix product; factor order is kept inside every entry."""
    if not M or not N or len(M[0]) != len(N):
        raise SizeMismatch(f"cannot multiply {len(M)}x{len(M[0]) if M else 0} by {len(N)}x{len(N[0]) if N else 0}")
    cols = list(zip(*N))
    out = []
    for row in M:
        out_row = []
        for col in cols:
            acc = row[0] * col[0]
            for a, b in zip(row[1:], col[1:]):
                if a and b:
                    acc = acc + a * b
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


def grid_to_strings(M: Grid) -> list[list[str]]:
    return [[str(x) for x in row] for row in M]


def evaluate_grid(M: Grid, assignment: Mapping[str, object], n: int):
    """Block matrix obtained by substituting ``n x n`` matrices for letters."""
    from .exactmat.matrix import ExactMatrix

    blocks = [[x.evaluate(assignment, n) for x in row] for row in M]
    spec = M[0][0].spec
    rows = []
    for brow in blocks:
        for i in range(n):
            rows.append([v for b in brow for v in b.entries[i]])
    return ExactMatrix(spec, rows)


# --- certificates -------------------------------------------------------------

CLAIMS = ("A*A_inv=I", "A_inv*A=I", "B*B_inv=I", "B_inv*B=I", "A*X*B=Y")


@dataclass(frozen=True)
class Certificate:
    name: str
    mode: Mode
    size: int
    spec: FieldSpec
    A: Grid | None
    A_inv: Grid | None
    B: Grid | None
    B_inv: Grid | None
    X: Grid | None
    Y: Grid | None
    claims: tuple[str, ...] = CLAIMS
    needs_half: bool = False
    statement: str = ""

    def matrices(self) -> dict[str, Grid | None]:
        return {"A": self.A, "A_inv": self.A_inv, "B": self.B, "B_inv": self.B_inv, "X": self.X, "Y": self.Y}

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "mode": self.mode.name,
            "size": self.size,
            "field": str(self.spec),
            "statement": self.statement,
            "claims": list(self.claims),
            "needs_half": self.needs_half,
            "matrices": {k: None if v is None else grid_to_strings(v) for k, v in self.matrices().items()},
        }


@dataclass(frozen=True)
class CheckResult:
    """Outcome of :func:`verify_certificate`; on failure names the first bad entry."""

    name: str
    passed: bool
    claim: str | None = None
    entry: tuple[int, int] | None = None
    difference: str | None = None
    checked: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "pass": self.passed,
            "claims_checked": list(self.checked),
            "failed_claim": self.claim,
            "entry": None if self.entry is None else list(self.entry),
            "difference": self.difference,
        }


def _first_difference(lhs: Grid, rhs: Grid) -> tuple[tuple[int, int], str] | None:
    if len(lhs) != len(rhs) or any(len(a) != len(b) for a, b in zip(lhs, rhs)):
        return (0, 0), "shape mismatch"
    for i, (ra, rb) in enumerate(zip(lhs, rhs)):
        for j, (a, b) in enumerate(zip(ra, rb)):
            d = a - b
            if d:
                return (i, j), str(d)
    return None


def verify_certificate(c: Certificate) -> CheckResult:
    """Expand every claim symbolically; stop at the first nonzero difference."""
    if c.needs_half and c.spec.characteristic == 2:
        raise CharTwoUnsupported(f"certificate {c.name} needs 1/2, which does not exist in {c.spec}")
    eye = identity_grid(c.size, c.spec, c.mode)
    products: dict[str, Callable[[], tuple[Grid, Grid]]] = {
        "A*A_inv=I": lambda: (mat_mul(c.A, c.A_inv), eye),
        "A_inv*A=I": lambda: (mat_mul(c.A_inv, c.A), eye),
        "B*B_inv=I": lambda: (mat_mul(c.B, c.B_inv), eye),
        "B_inv*B=I": lambda: (mat_mul(c.B_inv, c.B), eye),
        "A*X*B=Y": lambda: (mat_mul(mat_mul(c.A, c.X), c.B), c.Y),
    }
    done = []
    for claim in c.claims:
        if claim not in products:
            raise InputError(f"unknown claim {claim!r}")
        lhs, rhs = products[claim]()
        diff = _first_difference(lhs, rhs)
        done.append(claim)
        if diff is not None:
            return CheckResult(c.name, False, claim, diff[0], diff[1], tuple(done))
    return CheckResult(c.name, True, checked=tuple(done))


# --- catalog ------------------------------------------------------------------

MIXED = Mode.idempotent(("e", "f"))  # x, y, t1, t2 stay free


def _g(spec: FieldSpec, mode: Mode, rows) -> Grid:
    return grid(rows, spec, mode)


def _embed13(spec: FieldSpec, mode: Mode, block) -> Grid:
    """3x3 identity with a 2x2 block on rows/columns 1 and 3."""
    (a, b), (c, d) = block
    return _g(spec, mode, [[a, "0", b], ["0", "1", "0"], [c, "0", d]])


def _cert(name, spec, mode, statement, X, Y, A=None, A_inv=None, B=None, B_inv=None, needs_half=False) -> Certificate:
    X = _g(spec, mode, X)
    n = len(X)
    eye = identity_grid(n, spec, mode)
    A = eye if A is None else (A if isinstance(A, tuple) else _g(spec, mode, A))
    A_inv = eye if A_inv is None else (A_inv if isinstance(A_inv, tuple) else _g(spec, mode, A_inv))
    B = eye if B is None else (B if isinstance(B, tuple) else _g(spec, mode, B))
    B_inv = eye if B_inv is None else (B_inv if isinstance(B_inv, tuple) else _g(spec, mode, B_inv))
    return Certificate(name, mode, n, spec, A, A_inv, B, B_inv, X, _g(spec, mode, Y), CLAIMS, needs_half, statement)


# self-inverse 2x2 blocks built from one idempotent
def _m1(g: str):
    return [[g, f"1-({g})"], [f"1+({g})", f"-({g})"]]


def _m2(g: str):
    return [[g, f"1+({g})"], [f"1-({g})", f"-({g})"]]


def _fund_id(spec: FieldSpec) -> list[Certificate]:
    m = MIXED
    return [
        _cert(
            "lemma-fund-id-i", spec, m,
            "rank [[xe,0],[y(1-e),0]] = rank(xe) + rank(y(1-e))",
            X=[["x e", "0"], ["y(1-e)", "0"]], Y=[["x e", "0"], ["0", "y(1-e)"]],
            B=_m1("e"), B_inv=_m1("e"),
        ),
        _cert(
            "lemma-fund-id-ii", spec, m,
            "rank [[ex,(1-e)y],[0,0]] = rank(ex) + rank((1-e)y)",
            X=[["e x", "(1-e)y"], ["0", "0"]], Y=[["e x", "0"], ["0", "(1-e)y"]],
            A=_m2("e"), A_inv=_m2("e"),
        ),
        _cert(
            "lemma-fund-id-iii", spec, m,
            "rank [[e,0],[x,0]] = rank(e) + rank(x(1-e))",
            X=[["e", "0"], ["x", "0"]], Y=[["e", "0"], ["0", "x(1-e)"]],
            A=[["1", "0"], ["-x", "1"]], A_inv=[["1", "0"], ["x", "1"]],
            B=_m1("e"), B_inv=_m1("e"),
        ),
        _cert(
            "lemma-fund-id-iv", spec, m,
            "rank [[e,x],[0,0]] = rank(e) + rank((1-e)x)",
            X=[["e", "x"], ["0", "0"]], Y=[["e", "0"], ["0", "(1-e)x"]],
            A=_m2("e"), A_inv=_m2("e"),
            B=[["1", "-x"], ["0", "1"]], B_inv=[["1", "x"], ["0", "1"]],
        ),
    ]


def _two_by_two_units(spec: FieldSpec) -> list[Certificate]:
    """Invertible 2x2 blocks ``[[x,1],[1,0]]``-type, checked in the free algebra."""
    m = FREE
    return [
        _cert(
            "block-swap-unit", spec, m,
            "rank [[1,y],[x,0]] = rank(xy) + rank(1)",
            X=[["1", "y"], ["x", "0"]], Y=[["x y", "0"], ["0", "1"]],
            A=[["x", "-1"], ["1", "0"]], A_inv=[["0", "1"], ["-1", "x"]],
            B=[["-y", "1"], ["1", "0"]], B_inv=[["0", "1"], ["1", "y"]],
        ),
    ]


def _fund_id_cor(spec: FieldSpec) -> list[Certificate]:
    m = IDEMPOTENT_EF
    swap = [["0", "1"], ["1", "0"]]
    return [
        _cert(
            "cor-fund-id-i", spec, m,
            "rank(e) + rank(f(1-e)) = rank(f) + rank(e(1-f))",
            X=[["e", "f"], ["0", "0"]], Y=[["f", "e"], ["0", "0"]],
            B=swap, B_inv=swap,
        ),
        _cert(
            "cor-fund-id-ii", spec, m,
            "rank(e) + rank((1-e)f) = rank(f) + rank((1-f)e)",
            X=[["e", "0"], ["f", "0"]], Y=[["f", "0"], ["e", "0"]],
            A=swap, A_inv=swap,
        ),
    ]


def _diff_rank_id(spec: FieldSpec) -> Certificate:
    return _cert(
        "lemma-diff-rank-id", spec, IDEMPOTENT_EF,
        "rank(e-f) = rank(e(1-f)) + rank((1-e)f)",
        X=[["e", "f", "0", "0"], ["0", "0", "0", "0"], ["0", "0", "e", "0"], ["0", "0", "f", "0"]],
        Y=[["-e", "0", "0", "0"], ["0", "f", "0", "0"], ["0", "0", "e-f", "0"], ["0", "0", "0", "0"]],
        A=[["0", "0", "1", "0"], ["f", "0", "0", "1"], ["1-f", "0", "1", "-1"], ["0", "1", "0", "0"]],
        A_inv=[["-1", "1", "1", "0"], ["0", "0", "0", "1"], ["1", "0", "0", "0"], ["f", "1-f", "-f", "0"]],
        B=[["1", "0", "1", "0"], ["0", "1", "-1", "0"], ["-e", "0", "1-e", "0"], ["0", "0", "0", "1"]],
        B_inv=[["1-e", "0", "-1", "0"], ["e", "1", "1", "0"], ["e", "0", "1", "0"], ["0", "0", "0", "1"]],
    )


def _two_rank_f(spec: FieldSpec) -> Certificate:
    """``[[e,f],[f,0]] (+) 0`` against ``diag(g, f, f)`` with ``g = (1-f)e(1-f)``.

    Built as a product of elementary and self-inverse factors: clear ``fe``
    below the pivot, clear ``(1-f)ef`` to its right, then split the
    remaining ``f`` entries with the self-inverse blocks for ``1-f``.
    """
    m = IDEMPOTENT_EF
    g = lambda rows: _g(spec, m, rows)  # noqa: E731
    C1 = g([["1", "0", "0"], ["-f e", "1", "0"], ["0", "0", "1"]])
    C1_inv = g([["1", "0", "0"], ["f e", "1", "0"], ["0", "0", "1"]])
    R1 = g([["1", "-(1-f)e f", "0"], ["0", "1", "0"], ["0", "0", "1"]])
    R1_inv = g([["1", "(1-f)e f", "0"], ["0", "1", "0"], ["0", "0", "1"]])
    A3 = _embed13(spec, m, _m2("1-f"))
    C4 = _embed13(spec, m, _m1("1-f"))
    P23 = g([["1", "0", "0"], ["0", "0", "1"], ["0", "1", "0"]])
    return _cert(
        "prop-two-rank-f", spec, m,
        "rank [[e,f],[f,0]] = 2 rank(f) + rank((1-f)e(1-f))",
        X=[["e", "f", "0"], ["f", "0", "0"], ["0", "0", "0"]],
        Y=[["(1-f)e(1-f)", "0", "0"], ["0", "f", "0"], ["0", "0", "f"]],
        A=mat_mul(A3, R1), A_inv=mat_mul(R1_inv, A3),
        B=mat_mul(mat_mul(C1, C4), P23), B_inv=mat_mul(mat_mul(P23, C4), C1_inv),
    )


def _rank_sub(spec: FieldSpec) -> Certificate:
    m = IDEMPOTENT_EF
    if spec.characteristic == 2:
        return Certificate("thm-rank-sub", m, 3, spec, None, None, None, None, None, None, CLAIMS, True,
                           "rank(e) + rank(f) + rank(e+f) = rank(e) + rank [[e,f],[f,0]]")
    return _cert(
        "thm-rank-sub", spec, m,
        "rank(e) + rank(f) + rank(e+f) = rank(e) + rank [[e,f],[f,0]]",
        X=[["e", "0", "0"], ["0", "f", "0"], ["0", "0", "-e-f"]],
        Y=[["e", "0", "0"], ["0", "e", "f"], ["0", "f", "0"]],
        A=[["1/2", "0", "0"], ["1/2", "1", "1"], ["1/2 f", "-1/2(1-f)", "1/2 f"]],
        A_inv=[["2", "0", "0"], ["f", "f", "-2"], ["-(1+f)", "1-f", "2"]],
        B=[["1+e", "e-1", "0"], ["e", "e-2", "1"], ["e", "e-2", "0"]],
        B_inv=[["1-1/2 e", "0", "1/2(e-1)"], ["1/2 e", "0", "-1/2(1+e)"], ["0", "1", "-1"]],
        needs_half=True,
    )


def _commutator(spec: FieldSpec) -> list[Certificate]:
    m = IDEMPOTENT_EF
    Z = [["1", "e+f-1"], ["e-f", "0"]]
    return [
        _cert(
            "prop-commutator-rank-a", spec, m,
            "[[1,e+f-1],[e-f,0]] is equivalent to diag(e-f, e+f-1)",
            X=Z, Y=[["e-f", "0"], ["0", "e+f-1"]],
            A=[["0", "1"], ["1", "1-2e"]], A_inv=[["2e-1", "1"], ["1", "0"]],
            B=[["1", "0"], ["1-2f", "1"]], B_inv=[["1", "0"], ["2f-1", "1"]],
        ),
        _cert(
            "prop-commutator-rank-b", spec, m,
            "[[1,e+f-1],[e-f,0]] is equivalent to diag(ef-fe, 1)",
            X=Z, Y=[["(e-f)(e+f-1)", "0"], ["0", "1"]],
            A=[["e-f", "-1"], ["1", "0"]], A_inv=[["0", "1"], ["-1", "e-f"]],
            B=[["1-e-f", "1"], ["1", "0"]], B_inv=[["0", "1"], ["1", "e+f-1"]],
        ),
    ]


def _free_products(spec: FieldSpec) -> list[Certificate]:
    m = FREE
    g = lambda rows: _g(spec, m, rows)  # noqa: E731
    P1, P1i = g([["t2", "1"], ["1", "0"]]), g([["0", "1"], ["1", "-t2"]])
    P2, P2i = g([["1", "t1"], ["0", "1"]]), g([["1", "-t1"], ["0", "1"]])
    P3, P3i = g([["1", "0"], ["-t2", "1"]]), g([["1", "0"], ["t2", "1"]])
    P4, P4i = g([["-t1", "1"], ["1", "0"]]), g([["0", "1"], ["1", "t1"]])
    # row and column operations taking diag(1+t2t1, t1) to diag(t1(1+t2t1), 1)
    S = g([["0", "1"], ["1", "0"]])
    L1, L1i = g([["1", "-t2"], ["0", "1"]]), g([["1", "t2"], ["0", "1"]])
    L2, L2i = g([["1", "0"], ["-t1", "1"]]), g([["1", "0"], ["t1", "1"]])
    C1, C1i = g([["1", "0"], ["1", "1"]]), g([["1", "0"], ["-1", "1"]])
    C2, C2i = g([["1", "t2 t1"], ["0", "1"]]), g([["1", "-t2 t1"], ["0", "1"]])
    return [
        _cert(
            "free-assoc-one-plus-product", spec, m,
            "diag(1+t1t2, 1) is equivalent to diag(1+t2t1, 1)",
            X=[["1+t1 t2", "0"], ["0", "1"]], Y=[["1+t2 t1", "0"], ["0", "1"]],
            A=mat_mul(P1, P2), A_inv=mat_mul(P2i, P1i),
            B=mat_mul(P3, P4), B_inv=mat_mul(P4i, P3i),
        ),
        _cert(
            "free-assoc-factor-split", spec, m,
            "diag(1+t2t1, t1) is equivalent to diag(t1(1+t2t1), 1)",
            X=[["1+t2 t1", "0"], ["0", "t1"]], Y=[["t1(1+t2 t1)", "0"], ["0", "1"]],
            A=mat_mul(mat_mul(S, L2), L1), A_inv=mat_mul(mat_mul(L1i, L2i), S),
            B=mat_mul(mat_mul(C1, C2), S), B_inv=mat_mul(mat_mul(S, C2i), C1i),
        ),
    ]


def builtin_certificates(spec: FieldSpec = RATIONAL_FIELD) -> list[Certificate]:
    """Every certificate in the catalog, instantiated over ``spec``.

    Over a field of characteristic 2 the entries needing 1/2 are present as
    stubs without matrices; verifying them raises CharTwoUnsupported.
    """
    return [
        *_fund_id(spec),
        *_fund_id_cor(spec),
        _diff_rank_id(spec),
        _two_rank_f(spec),
        _rank_sub(spec),
        *_commutator(spec),
        *_free_products(spec),
        *_two_by_two_units(spec),
    ]


def certificate_names() -> list[str]:
    return [c.name for c in builtin_certificates(RATIONAL_FIELD)]


_STEP = re.compile(r"-step[12](?=-|$)")


def builtin_certificate(name: str, spec: FieldSpec = RATIONAL_FIELD) -> Certificate:
    """Look up by name; a ``-step1``/``-step2`` infix is accepted and ignored."""
    key = _STEP.sub("", name)
    for c in builtin_certificates(spec):
        if c.name == key:
            return c
    raise InputError(f"unknown certificate {name!r}; known: {', '.join(certificate_names())}")


# --- rank identities in idempotents, for matrix-level checks -------------------


@dataclass(frozen=True)
class IdempotentIdentity:
    """``sum rank(lhs_i) = sum rank(rhs_i)`` in letters e, f (idempotent) and free letters."""

    name: str
    lhs: tuple[str, ...]
    rhs: tuple[str, ...]
    needs_half: bool = False

    def terms(self, spec: FieldSpec) -> tuple[list[FreeElem], list[FreeElem]]:
        p = lambda s: parse_elem(s, spec, MIXED)  # noqa: E731
        return [p(s) for s in self.lhs], [p(s) for s in self.rhs]

    def render(self) -> str:
        side = lambda xs: " + ".join(f"rank({x})" for x in xs)  # noqa: E731
        return f"{side(self.lhs)} = {side(self.rhs)}"


IDEMPOTENT_RANK_IDENTITIES = (
    IdempotentIdentity("diff-rank-i", ("e-f",), ("e(1-f)", "(1-e)f")),
    IdempotentIdentity("diff-rank-i-alt", ("e-f",), ("e(1-f)", "f(1-e)")),
    IdempotentIdentity("diff-rank-ii", ("e-f", "f"), ("e", "f(1-e)", "(1-e)f")),
    IdempotentIdentity("diff-rank-complement", ("1-e-f", "e", "f"), ("e f", "f e", "1")),
    IdempotentIdentity("rank-sub", ("e+f",), ("(1-f)e(1-f)", "f"), needs_half=True),
    IdempotentIdentity("rank-sub-sym", ("e+f",), ("e", "(1-e)f(1-e)"), needs_half=True),
    IdempotentIdentity("comm-anticomm-i", ("e f-f e", "1"), ("e-f", "1-e-f")),
    IdempotentIdentity("comm-anticomm-ii", ("e f+f e", "1"), ("e+f", "1-e-f")),
    IdempotentIdentity("fund-id-cor-i", ("e", "f(1-e)"), ("f", "e(1-f)")),
    IdempotentIdentity("fund-id-cor-ii", ("e", "(1-e)f"), ("f", "(1-f)e")),
    IdempotentIdentity("complement", ("e", "1-e"), ("1",)),
)


def idempotent_identity(name: str) -> IdempotentIdentity:
    for ident in IDEMPOTENT_RANK_IDENTITIES:
        if ident.name == name:
            return ident
    raise InputError(f"unknown idempotent identity {name!r}")
