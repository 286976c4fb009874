"""Generate rank identities by shuffling exponent columns, and decide validity.

Given pairwise-coprime polynomials ``p_1..p_n`` and an ``m x n`` exponent
matrix ``L``, row ``i`` yields ``q_i = prod_j p_j^L[i][j]``.  Permuting the
entries within each column of ``L`` gives a second tuple ``r_i``, and
``sum rank(q_i(A)) = sum rank(r_i(A))`` holds for every square ``A``.
Any pair of tuples can be decided by comparing canonical divisor chains.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ._rng import rng_for
from .errors import InputError, LengthMismatch, NotCoprime, ZeroPolynomial
from .fields import RATIONAL_FIELD, FieldSpec
from .fmonoid import canonical_form
from .poly import Poly, format_poly, gcd, parse

Matrix = tuple[tuple[int, ...], ...]


def _as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    out = tuple(tuple(int(x) for x in row) for row in rows)
    if not out:
        raise InputError("exponent matrix has no rows")
    widths = {len(r) for r in out}
    if len(widths) != 1:
        raise InputError("exponent matrix rows differ in length")
    if any(x < 0 for r in out for x in r):
        raise InputError("exponents must be nonnegative")
    return out


@dataclass(frozen=True)
class ShuffleSpec:
    """Basis, exponent matrix and one permutation of row indices per column.

    Permutations are 0-based: ``mu[i][j] = lam[column_perms[j][i]][j]``.
    """

    basis: tuple[Poly, ...]
    lam: Matrix
    column_perms: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        object.__setattr__(self, "lam", _as_matrix(self.lam))
        object.__setattr__(self, "column_perms", tuple(tuple(int(i) for i in p) for p in self.column_perms))
        m, n = len(self.lam), len(self.lam[0])
        if len(self.basis) != n:
            raise InputError(f"{len(self.basis)} basis polynomials but {n} exponent columns")
        if len(self.column_perms) != n:
            raise InputError(f"need {n} column permutations, got {len(self.column_perms)}")
        for perm in self.column_perms:
            if sorted(perm) != list(range(m)):
                raise InputError(f"{list(perm)} is not a permutation of 0..{m - 1}")

    @property
    def spec(self) -> FieldSpec:
        return self.basis[0].spec

    @property
    def mu(self) -> Matrix:
        m, n = len(self.lam), len(self.lam[0])
        return tuple(tuple(self.lam[self.column_perms[j][i]][j] for j in range(n)) for i in range(m))


@dataclass(frozen=True)
class RankIdentity:
    """Claim ``sum_i rank(lhs_i(A)) = sum_i rank(rhs_i(A))``."""

    field: FieldSpec
    lhs: tuple[Poly, ...]
    rhs: tuple[Poly, ...]
    provenance: str = ""
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "lhs", tuple(self.lhs))
        object.__setattr__(self, "rhs", tuple(self.rhs))

    def to_dict(self) -> dict:
        out = {
            "field": str(self.field),
            "lhs": [str(p) for p in self.lhs],
            "rhs": [str(p) for p in self.rhs],
            "provenance": self.provenance,
        }
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_dict(cls, data: dict, field_override: FieldSpec | None = None) -> RankIdentity:
        """Inverse of :meth:`to_dict`; unknown keys are ignored."""
        if not isinstance(data, dict):
            raise InputError("identity JSON must be an object")
        try:
            lhs_text, rhs_text = data["lhs"], data["rhs"]
        except KeyError as exc:
            raise InputError(f"identity JSON lacks {exc.args[0]!r}") from None
        if field_override is not None:
            spec = field_override
        else:
            spec = FieldSpec.parse(str(data.get("field", "Q")))
        if not isinstance(lhs_text, list) or not isinstance(rhs_text, list):
            raise InputError("'lhs' and 'rhs' must be lists of polynomial strings")
        return cls(
            spec,
            tuple(parse(str(s), spec) for s in lhs_text),
            tuple(parse(str(s), spec) for s in rhs_text),
            str(data.get("provenance", "")),
            str(data.get("name", "")),
        )

    def render(self) -> str:
        def side(polys):
            return " + ".join(f"rank({format_poly(p, 'A', 'I')})" for p in polys) or "0"

        return f"{side(self.lhs)} = {side(self.rhs)}"

    def is_valid(self) -> bool:
        return check_lattice_condition(self.lhs, self.rhs)


def _check_coprime(basis: Sequence[Poly]) -> None:
    for i in range(len(basis)):
        if basis[i].is_zero():
            raise ZeroPolynomial(f"basis entry {i} is zero")
        for j in range(i + 1, len(basis)):
            g = gcd(basis[i], basis[j])
            if g.degree > 0:
                raise NotCoprime(i, j, str(g))


def build_tuple(basis: Sequence[Poly], exponents: Sequence[Sequence[int]]) -> list[Poly]:
    """Row ``i`` becomes ``prod_j basis[j] ** exponents[i][j]``."""
    lam = _as_matrix(exponents)
    if len(lam[0]) != len(basis):
        raise InputError(f"{len(basis)} basis polynomials but {len(lam[0])} exponent columns")
    _check_coprime(basis)
    spec = basis[0].spec
    out = []
    for row in lam:
        q = Poly.constant(spec, 1)
        for b, e in zip(basis, row):
            if e:
                q = q * b**e
        out.append(q)
    return out


def shuffle_columns(lam: Sequence[Sequence[int]], seed: int | None) -> list[tuple[int, ...]]:
    """One uniform permutation per column; ``seed=None`` gives identity permutations.

    Column ``j`` draws from ``rng_for(seed, j)`` (PCG64 seeded by
    ``SeedSequence([seed, j])``), so each column's shuffle is reproducible
    on its own.
    """
    mat = _as_matrix(lam)
    m, n = len(mat), len(mat[0])
    if seed is None:
        return [tuple(range(m)) for _ in range(n)]
    return [tuple(int(i) for i in rng_for(seed, j).permutation(m)) for j in range(n)]


def make_identity(spec: ShuffleSpec, provenance: str = "", name: str = "") -> RankIdentity:
    lhs = build_tuple(spec.basis, spec.lam)
    rhs = build_tuple(spec.basis, spec.mu)
    ident = RankIdentity(spec.spec, tuple(lhs), tuple(rhs), provenance, name)
    # column multisets agree, so the chains must too
    if not check_lattice_condition(lhs, rhs):
        raise AssertionError("generated identity failed the lattice condition")
    return ident


def check_lattice_condition(lhs: Sequence[Poly], rhs: Sequence[Poly]) -> bool:
    """True iff the two tuples have the same canonical divisor chain."""
    if len(lhs) != len(rhs):
        raise LengthMismatch(f"{len(lhs)} polynomials on the left, {len(rhs)} on the right")
    for side, polys in (("left", lhs), ("right", rhs)):
        for i, p in enumerate(polys):
            if p.is_zero():
                raise ZeroPolynomial(f"{side} entry {i} is the zero polynomial")
    if not lhs:
        return True
    spec = lhs[0].spec
    return canonical_form(list(lhs), spec) == canonical_form(list(rhs), spec)


# --- catalog ----------------------------------------------------------------

EXAMPLE_BASIS = ("t - 1", "t + 1", "t^2 + 1")
EXAMPLE_LAMBDA = ((0, 0, 0), (1, 1, 1), (2, 1, 1))
EXAMPLE_PERMS = ((2, 1, 0), (0, 1, 2), (1, 0, 2))


def example_shuffle(spec: FieldSpec = RATIONAL_FIELD) -> ShuffleSpec:
    """Basis ``(t-1, t+1, t^2+1)`` with a three-row exponent matrix and a fixed shuffle."""
    basis = tuple(parse(s, spec) for s in EXAMPLE_BASIS)
    return ShuffleSpec(basis, EXAMPLE_LAMBDA, EXAMPLE_PERMS)


def _complement(spec: FieldSpec) -> RankIdentity:
    t = Poly.t(spec)
    one = Poly.constant(spec, 1)
    return RankIdentity(
        spec,
        (t, one - t),
        (one, t - t * t),
        "rank(A) + rank(I - A) = n + rank(A - A^2)",
        "eq-1.1",
    )


def _coprime_product(spec: FieldSpec) -> RankIdentity:
    basis = (Poly.t(spec), parse("t + 1", spec))
    shuffle = ShuffleSpec(basis, ((0, 0), (1, 1)), ((1, 0), (0, 1)))
    return make_identity(shuffle, "coprime factors: rank(I) + rank(A^2 + A) = rank(A) + rank(A + I)", "coprime-product")


BUILTIN_NAMES = ("eq-1.1", "example-6.5", "coprime-product")


def builtin_identities(spec: FieldSpec = RATIONAL_FIELD) -> list[RankIdentity]:
    """Named identities over ``spec``.

    ``example-6.5`` is left out in characteristic 2, where its basis
    ``t-1, t+1`` collapses to one factor and the identity is false.
    """
    out = [_complement(spec)]
    if spec.characteristic != 2:
        out.append(make_identity(example_shuffle(spec), "basis (t-1, t+1, t^2+1), fixed column shuffle", "example-6.5"))
    out.append(_coprime_product(spec))
    return out


def builtin_identity(name: str, spec: FieldSpec = RATIONAL_FIELD) -> RankIdentity:
    for ident in builtin_identities(spec):
        if ident.name == name:
            return ident
    if name in BUILTIN_NAMES:
        raise InputError(f"built-in identity {name!r} is not available over {spec}")
    raise InputError(f"unknown built-in identity {name!r}; known: {', '.join(BUILTIN_NAMES)}")
