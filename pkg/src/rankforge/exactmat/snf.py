"""Matrices over K[t] and their Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..errors import FieldMismatch, NotSquare, ShapeMismatch
from ..fields import FieldSpec
from ..poly import Poly


class PolyMatrix:
    """Square or rectangular grid of polynomials over one field (mutable copy-on-use)."""

    __slots__ = ("spec", "rows", "cols", "entries")

    def __init__(self, spec: FieldSpec, entries: Sequence[Sequence[Poly]]):
        grid = [list(r) for r in entries]
        widths = {len(r) for r in grid}
        if len(widths) > 1:
            raise ShapeMismatch("ragged matrix rows")
        for row in grid:
            for i, x in enumerate(row):
                if not isinstance(x, Poly):
                    row[i] = Poly(spec, [x])
                elif x.spec != spec:
                    raise FieldMismatch(f"{x.spec} vs {spec}")
        self.spec = spec
        self.rows = len(grid)
        self.cols = widths.pop() if widths else 0
        self.entries = tuple(tuple(r) for r in grid)

    @classmethod
    def identity(cls, spec: FieldSpec, n: int) -> PolyMatrix:
        one, zero = Poly.constant(spec, 1), Poly(spec)
        return cls(spec, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, spec: FieldSpec, polys: Sequence[Poly]) -> PolyMatrix:
        zero = Poly(spec)
        n = len(polys)
        return cls(spec, [[polys[i] if i == j else zero for j in range(n)] for i in range(n)])

    def __matmul__(self, other: PolyMatrix) -> PolyMatrix:
        if self.cols != other.rows:
            raise ShapeMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        zero = Poly(self.spec)
        out = []
        for row in self.entries:
            out_row = []
            for j in range(other.cols):
                acc = zero
                for k, a in enumerate(row):
                    if a:
                        acc = acc + a * other.entries[k][j]
                out_row.append(acc)
            out.append(out_row)
        return PolyMatrix(self.spec, out)

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.spec == other.spec and self.entries == other.entries

    def __hash__(self):
        return hash((self.spec, self.entries))

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.entries]

    def det(self) -> Poly:
        """Determinant by fraction-free elimination over K[t]."""
        if self.rows != self.cols:
            raise NotSquare("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return Poly.constant(self.spec, 1)
        m = [list(r) for r in self.entries]
        sign = 1
        prev = Poly.constant(self.spec, 1)
        for k in range(n - 1):
            if not m[k][k]:
                swap = next((i for i in range(k + 1, n) if m[i][k]), None)
                if swap is None:
                    return Poly(self.spec)
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = Poly(self.spec)
            prev = m[k][k]
        d = m[n - 1][n - 1]
        return d if sign > 0 else -d


@dataclass(frozen=True)
class SmithForm:
    """Invariant factors with transforms satisfying ``U @ M @ V == diag(factors)``."""

    factors: tuple[Poly, ...]
    U: PolyMatrix
    V: PolyMatrix


def smith_normal_form(M: PolyMatrix) -> SmithForm:
    """Smith form of a square matrix over K[t].

    Pivots on a nonzero entry of least degree, clears its row and column by
    Euclidean division, and folds in any entry the pivot fails to divide.
    Each restart strictly lowers the pivot degree, so the loop terminates.
    Factors are monic, with zeros last.
    """
    if M.rows != M.cols:
        raise NotSquare(f"Smith form needs a square matrix, got {M.rows}x{M.cols}")
    spec, n = M.spec, M.rows
    A = [list(r) for r in M.entries]
    U = [list(r) for r in PolyMatrix.identity(spec, n).entries]
    V = [list(r) for r in PolyMatrix.identity(spec, n).entries]

    def row_axpy(mat, dst, src, q):  # row dst -= q * row src
        mat[dst] = [a - q * b for a, b in zip(mat[dst], mat[src])]

    def col_axpy(mat, dst, src, q):  # col dst -= q * col src
        for row in mat:
            row[dst] = row[dst] - q * row[src]

    for k in range(n):
        while True:
            best = None
            for i in range(k, n):
                for j in range(k, n):
                    if A[i][j] and (best is None or A[i][j].degree < A[best[0]][best[1]].degree):
                        best = (i, j)
            if best is None:
                break
            i, j = best
            A[k], A[i] = A[i], A[k]
            U[k], U[i] = U[i], U[k]
            for mat in (A, V):
                for row in mat:
                    row[k], row[j] = row[j], row[k]
            pivot = A[k][k]
            dirty = False
            for i in range(k + 1, n):
                if A[i][k]:
                    q, r = divmod(A[i][k], pivot)
                    row_axpy(A, i, k, q)
                    row_axpy(U, i, k, q)
                    dirty = dirty or bool(r)
            for j in range(k + 1, n):
                if A[k][j]:
                    q, r = divmod(A[k][j], pivot)
                    col_axpy(A, j, k, q)
                    col_axpy(V, j, k, q)
                    dirty = dirty or bool(r)
            if dirty:
                continue
            bad = next(
                (i for i in range(k + 1, n) for j in range(k + 1, n) if not pivot.divides(A[i][j])),
                None,
            )
            if bad is None:
                break
            # row k += row bad puts a non-multiple into row k
            A[k] = [a + b for a, b in zip(A[k], A[bad])]
            U[k] = [a + b for a, b in zip(U[k], U[bad])]
        if A[k][k]:
            inv = spec.inv(A[k][k].lead)
            A[k] = [x.scale(inv) for x in A[k]]
            U[k] = [x.scale(inv) for x in U[k]]
    factors = tuple(A[i][i] for i in range(n))
    return SmithForm(factors, PolyMatrix(spec, U), PolyMatrix(spec, V))
