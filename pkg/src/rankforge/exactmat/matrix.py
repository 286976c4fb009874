"""Dense exact matrices and the elimination kernels behind ``rank``.

Kernels by field:

* Q  -- rows are scaled to integers and reduced with fraction-free
  (Bareiss) elimination, so no Fraction objects are created in the loop.
* F_p -- plain Gaussian elimination on residues held as Python ints.
* Qi -- Gaussian elimination on :class:`GaussianRational` entries.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from ..errors import DivisionByZero, FieldMismatch, NotSquare, ShapeMismatch
from ..fields import GAUSSIAN, PRIME, RATIONALS, FieldSpec, GF


# --- raw kernels ------------------------------------------------------------


def rank_int(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by Bareiss elimination (rows are consumed)."""
    n = len(rows)
    m = len(rows[0]) if n else 0
    r = 0
    prev = 1
    for c in range(m):
        piv = None
        for i in range(r, n):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        p = prow[c]
        for i in range(r + 1, n):
            row = rows[i]
            a = row[c]
            if a:
                for j in range(c + 1, m):
                    row[j] = (p * row[j] - a * prow[j]) // prev
            else:
                for j in range(c + 1, m):
                    row[j] = (p * row[j]) // prev
            row[c] = 0
        prev = p
        r += 1
        if r == n:
            break
    return r


def rank_mod(rows: list[list[int]], p: int) -> int:
    """Rank over F_p of a residue matrix (rows are consumed)."""
    n = len(rows)
    m = len(rows[0]) if n else 0
    r = 0
    for c in range(m):
        piv = None
        for i in range(r, n):
            if rows[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = pow(prow[c], -1, p)
        for i in range(r + 1, n):
            row = rows[i]
            f = row[c] * inv % p
            if f:
                for j in range(c, m):
                    row[j] = (row[j] - f * prow[j]) % p
        r += 1
        if r == n:
            break
    return r


def rank_generic(rows: list[list], spec: FieldSpec) -> int:
    n = len(rows)
    m = len(rows[0]) if n else 0
    r = 0
    for c in range(m):
        piv = None
        for i in range(r, n):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = spec.inv(prow[c])
        for i in range(r + 1, n):
            row = rows[i]
            if row[c]:
                f = row[c] * inv
                for j in range(c, m):
                    row[j] = row[j] - f * prow[j]
        r += 1
        if r == n:
            break
    return r


def rational_rows_to_int(rows: Iterable[Sequence[Fraction]]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators (rank-preserving)."""
    out = []
    for row in rows:
        d = 1
        for x in row:
            d = lcm(d, x.denominator)
        out.append([x.numerator * (d // x.denominator) for x in row])
    return out


def matmul_int(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matmul_mod(a: list[list[int]], b: list[list[int]], p: int) -> list[list[int]]:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) % p for col in bt] for row in a]


# --- ExactMatrix ------------------------------------------------------------


class ExactMatrix:
    """Immutable ``rows x cols`` matrix over an exact field."""

    __slots__ = ("spec", "rows", "cols", "entries")

    def __init__(self, spec: FieldSpec, entries: Iterable[Iterable], cols: int | None = None):
        grid = tuple(tuple(spec.coerce(x) for x in row) for row in entries)
        widths = {len(r) for r in grid}
        if len(widths) > 1:
            raise ShapeMismatch("ragged matrix rows")
        self.spec = spec
        self.rows = len(grid)
        self.cols = widths.pop() if widths else (cols or 0)
        self.entries = grid

    @classmethod
    def _raw(cls, spec: FieldSpec, grid: tuple, rows: int, cols: int) -> ExactMatrix:
        m = cls.__new__(cls)
        m.spec, m.entries, m.rows, m.cols = spec, grid, rows, cols
        return m

    @classmethod
    def identity(cls, spec: FieldSpec, n: int) -> ExactMatrix:
        one, zero = spec.one, spec.zero
        grid = tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))
        return cls._raw(spec, grid, n, n)

    @classmethod
    def zeros(cls, spec: FieldSpec, rows: int, cols: int | None = None) -> ExactMatrix:
        cols = rows if cols is None else cols
        zero = spec.zero
        return cls._raw(spec, tuple((zero,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def diag(cls, spec: FieldSpec, values: Sequence) -> ExactMatrix:
        n = len(values)
        zero = spec.zero
        grid = tuple(
            tuple(spec.coerce(values[i]) if i == j else zero for j in range(n)) for i in range(n)
        )
        return cls._raw(spec, grid, n, n)

    @classmethod
    def from_strings(cls, spec: FieldSpec, grid: Sequence[Sequence[str]]) -> ExactMatrix:
        from ..poly import parse_scalar

        return cls(spec, [[parse_scalar(str(x), spec) for x in row] for row in grid])

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.entries]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.spec == other.spec and self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.spec, self.entries))

    def __repr__(self):
        return f"ExactMatrix({self.spec}, {self.to_strings()})"

    def _like(self, other: ExactMatrix) -> None:
        if other.spec != self.spec:
            raise FieldMismatch(f"{self.spec} vs {other.spec}")

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        self._like(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        grid = tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries))
        return ExactMatrix._raw(self.spec, grid, self.rows, self.cols)

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        self._like(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} - {other.shape}")
        grid = tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries))
        return ExactMatrix._raw(self.spec, grid, self.rows, self.cols)

    def __neg__(self) -> ExactMatrix:
        grid = tuple(tuple(-a for a in r) for r in self.entries)
        return ExactMatrix._raw(self.spec, grid, self.rows, self.cols)

    def scale(self, c) -> ExactMatrix:
        c = self.spec.coerce(c)
        grid = tuple(tuple(c * a for a in r) for r in self.entries)
        return ExactMatrix._raw(self.spec, grid, self.rows, self.cols)

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        self._like(other)
        if self.cols != other.rows:
            raise ShapeMismatch(f"{self.shape} @ {other.shape}")
        spec = self.spec
        if spec.kind == PRIME:
            p = spec.p
            a = [[x.v for x in r] for r in self.entries]
            b = [[x.v for x in r] for r in other.entries]
            grid = tuple(tuple(GF(x, p) for x in r) for r in matmul_mod(a, b, p))
        elif spec.kind == RATIONALS:
            a, da = _scaled(self.entries)
            b, db = _scaled(other.entries)
            d = da * db
            grid = tuple(tuple(Fraction(x, d) for x in r) for r in matmul_int(a, b))
        else:
            cols = list(zip(*other.entries))
            zero = spec.zero
            grid = tuple(
                tuple(sum((x * y for x, y in zip(row, col)), zero) for col in cols)
                for row in self.entries
            )
        return ExactMatrix._raw(spec, grid, self.rows, other.cols)

    def __pow__(self, k: int) -> ExactMatrix:
        if not self.is_square():
            raise NotSquare(f"power of a {self.rows}x{self.cols} matrix")
        result = ExactMatrix.identity(self.spec, self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    @property
    def T(self) -> ExactMatrix:
        grid = tuple(zip(*self.entries)) if self.rows else ()
        return ExactMatrix._raw(self.spec, tuple(tuple(r) for r in grid), self.cols, self.rows)

    @property
    def H(self) -> ExactMatrix:
        """Conjugate transpose (plain transpose when the field has trivial conjugation)."""
        conj = self.spec.conj
        grid = tuple(tuple(conj(x) for x in col) for col in zip(*self.entries)) if self.rows else ()
        return ExactMatrix._raw(self.spec, grid, self.cols, self.rows)

    def trace(self):
        if not self.is_square():
            raise NotSquare("trace of a non-square matrix")
        return sum((self.entries[i][i] for i in range(self.rows)), self.spec.zero)

    def is_zero(self) -> bool:
        return not any(x for r in self.entries for x in r)

    def is_idempotent(self) -> bool:
        return self.is_square() and self @ self == self

    def rank(self) -> int:
        return rank(self)

    def inverse(self) -> ExactMatrix:
        return inverse(self)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> ExactMatrix:
        grid = tuple(tuple(self.entries[i][j] for j in cols) for i in rows)
        return ExactMatrix._raw(self.spec, grid, len(rows), len(cols))

    def hstack(self, other: ExactMatrix) -> ExactMatrix:
        self._like(other)
        if self.rows != other.rows:
            raise ShapeMismatch("hstack with different row counts")
        grid = tuple(a + b for a, b in zip(self.entries, other.entries))
        return ExactMatrix._raw(self.spec, grid, self.rows, self.cols + other.cols)


def _scaled(grid) -> tuple[list[list[int]], int]:
    """Integer matrix and common denominator for a rational grid."""
    d = 1
    for row in grid:
        for x in row:
            d = lcm(d, x.denominator)
    return [[x.numerator * (d // x.denominator) for x in row] for row in grid], d


def block_diag(blocks: Sequence[ExactMatrix]) -> ExactMatrix:
    if not blocks:
        raise ShapeMismatch("block_diag of no blocks")
    spec = blocks[0].spec
    n = sum(b.rows for b in blocks)
    m = sum(b.cols for b in blocks)
    zero = spec.zero
    grid = [[zero] * m for _ in range(n)]
    r = c = 0
    for b in blocks:
        if b.spec != spec:
            raise FieldMismatch(f"{b.spec} vs {spec}")
        for i in range(b.rows):
            grid[r + i][c : c + b.cols] = b.entries[i]
        r += b.rows
        c += b.cols
    return ExactMatrix._raw(spec, tuple(tuple(row) for row in grid), n, m)


def rank(M: ExactMatrix) -> int:
    """Exact rank; see the module docstring for the kernel used per field."""
    if M.rows == 0 or M.cols == 0:
        return 0
    spec = M.spec
    if spec.kind == RATIONALS:
        return rank_int(rational_rows_to_int(M.entries))
    if spec.kind == PRIME:
        return rank_mod([[x.v for x in r] for r in M.entries], spec.p)
    return rank_generic([list(r) for r in M.entries], spec)


def rref(M: ExactMatrix) -> tuple[list[list], list[int]]:
    """Reduced row echelon form (as a mutable grid) and pivot columns."""
    spec = M.spec
    rows = [list(r) for r in M.entries]
    pivots: list[int] = []
    r = 0
    for c in range(M.cols):
        piv = next((i for i in range(r, M.rows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = spec.inv(rows[r][c])
        rows[r] = [x * inv for x in rows[r]]
        for i in range(M.rows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == M.rows:
            break
    return rows, pivots


def inverse(M: ExactMatrix) -> ExactMatrix:
    if not M.is_square():
        raise NotSquare(f"inverse of a {M.rows}x{M.cols} matrix")
    n = M.rows
    aug = M.hstack(ExactMatrix.identity(M.spec, n))
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise DivisionByZero("matrix is singular")
    return ExactMatrix(M.spec, [row[n:] for row in rows])


def column_basis(M: ExactMatrix) -> ExactMatrix:
    """The pivot columns of ``M``: a basis of its column space (may have 0 columns)."""
    _, pivots = rref(M)
    if not pivots:
        return ExactMatrix._raw(M.spec, tuple(() for _ in range(M.rows)), M.rows, 0)
    return M.submatrix(range(M.rows), pivots)


def null_space(M: ExactMatrix) -> ExactMatrix:
    """Columns spanning ``{v : Mv = 0}``."""
    spec = M.spec
    rows, pivots = rref(M)
    free = [c for c in range(M.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [spec.zero] * M.cols
        v[f] = spec.one
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][f]
        basis.append(v)
    if not basis:
        return ExactMatrix._raw(spec, tuple(() for _ in range(M.cols)), M.cols, 0)
    return ExactMatrix(spec, basis).T


def companion(p) -> ExactMatrix:
    """Companion matrix of the monic associate of ``p`` (ones on the subdiagonal)."""
    from ..errors import BadDimension

    q = p.monic()
    n = q.degree
    if n < 1:
        raise BadDimension("companion matrix needs a nonconstant polynomial")
    spec = q.spec
    grid = [[spec.zero] * n for _ in range(n)]
    for i in range(1, n):
        grid[i][i - 1] = spec.one
    for i in range(n):
        grid[i][n - 1] = -q.coeffs[i]
    return ExactMatrix(spec, grid)


def eval_poly(p, A: ExactMatrix) -> ExactMatrix:
    """``p(A)`` by Horner's rule, with the constant term times the identity."""
    if not A.is_square():
        raise NotSquare(f"cannot evaluate a polynomial at a {A.rows}x{A.cols} matrix")
    if p.spec != A.spec:
        raise FieldMismatch(f"{p.spec} vs {A.spec}")
    n = A.rows
    acc = ExactMatrix.zeros(A.spec, n)
    eye = ExactMatrix.identity(A.spec, n)
    for c in reversed(p.coeffs):
        acc = acc @ A + eye.scale(c)
    return acc
