"""Finite-dimensional model of a finite von Neumann algebra.

The algebra is a direct sum of full matrix algebras ``M_{n_1} (+) ... (+)
M_{n_m}`` over Qi, with conjugate transpose as the involution.  Its center
is ``Qi^m``, so center-valued quantities are length-``m`` tuples: the trace
of block ``i`` divided by ``n_i``, and the rank of block ``i`` divided by
``n_i``.  Range projections are computed exactly as ``B (B*B)^-1 B*`` for a
column basis ``B``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from ._rng import rng_for
from .errors import (
    CharTwoUnsupported,
    InputError,
    NotAProjection,
    NotIdempotent,
    ShapeMismatch,
    SumMismatch,
)
from .exactmat.matrix import ExactMatrix, column_basis, inverse, rank
from .fields import GAUSSIAN_FIELD, FieldSpec, GaussianRational

QI = GAUSSIAN_FIELD


@dataclass(frozen=True)
class BlockShape:
    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise InputError(f"block sizes must be a nonempty list of positive integers, got {list(self.dims)}")
        object.__setattr__(self, "dims", dims)

    @classmethod
    def parse(cls, text: str) -> BlockShape:
        try:
            return cls(tuple(int(x) for x in text.split(",") if x.strip()))
        except ValueError:
            raise InputError(f"bad shape {text!r}; expected e.g. 2,3") from None

    def __len__(self):
        return len(self.dims)

    def __str__(self):
        return ",".join(map(str, self.dims))


def _real(x):
    if isinstance(x, GaussianRational) and x.is_real():
        return x.re
    return x


class CenterValue:
    """Element of the center, one scalar per block; ordered componentwise."""

    __slots__ = ("components",)

    def __init__(self, components: Iterable):
        self.components = tuple(_real(c) if not isinstance(c, int) else Fraction(c) for c in components)

    @classmethod
    def ones(cls, m: int) -> CenterValue:
        return cls([Fraction(1)] * m)

    @classmethod
    def zeros(cls, m: int) -> CenterValue:
        return cls([Fraction(0)] * m)

    def _check(self, other: CenterValue) -> None:
        if len(self.components) != len(other.components):
            raise ShapeMismatch(f"{len(self.components)} vs {len(other.components)} center components")

    def __add__(self, other: CenterValue) -> CenterValue:
        self._check(other)
        return CenterValue(a + b for a, b in zip(self.components, other.components))

    def __sub__(self, other: CenterValue) -> CenterValue:
        self._check(other)
        return CenterValue(a - b for a, b in zip(self.components, other.components))

    def __le__(self, other: CenterValue) -> bool:
        self._check(other)
        for a, b in zip(self.components, other.components):
            if not isinstance(a, Fraction) or not isinstance(b, Fraction):
                raise InputError("order comparison needs real center values")
            if a > b:
                return False
        return True

    def __lt__(self, other: CenterValue) -> bool:
        return self <= other and self != other

    def __ge__(self, other: CenterValue) -> bool:
        return other <= self

    def __eq__(self, other):
        return isinstance(other, CenterValue) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def to_strings(self) -> list[str]:
        return [str(c) for c in self.components]

    def __repr__(self):
        return f"CenterValue({self.to_strings()})"


class BlockAlgebraElem:
    """Tuple of square Qi matrices, one per block of the shape."""

    __slots__ = ("shape", "blocks")

    def __init__(self, shape: BlockShape, blocks: Sequence[ExactMatrix]):
        blocks = tuple(blocks)
        if len(blocks) != len(shape.dims):
            raise ShapeMismatch(f"{len(blocks)} blocks for shape {shape}")
        for b, n in zip(blocks, shape.dims):
            if b.shape != (n, n):
                raise ShapeMismatch(f"block of shape {b.shape} where {n}x{n} expected")
            if b.spec != QI:
                raise ShapeMismatch("blocks must be matrices over Qi")
        self.shape = shape
        self.blocks = blocks

    @classmethod
    def identity(cls, shape: BlockShape) -> BlockAlgebraElem:
        return cls(shape, [ExactMatrix.identity(QI, n) for n in shape.dims])

    @classmethod
    def zero(cls, shape: BlockShape) -> BlockAlgebraElem:
        return cls(shape, [ExactMatrix.zeros(QI, n) for n in shape.dims])

    @classmethod
    def from_rows(cls, shape: BlockShape, blocks: Sequence[Sequence[Sequence]]) -> BlockAlgebraElem:
        return cls(shape, [ExactMatrix(QI, b) for b in blocks])

    def _check(self, other: BlockAlgebraElem) -> None:
        if self.shape != other.shape:
            raise ShapeMismatch(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other: BlockAlgebraElem) -> BlockAlgebraElem:
        self._check(other)
        return BlockAlgebraElem(self.shape, [a + b for a, b in zip(self.blocks, other.blocks)])

    def __sub__(self, other: BlockAlgebraElem) -> BlockAlgebraElem:
        self._check(other)
        return BlockAlgebraElem(self.shape, [a - b for a, b in zip(self.blocks, other.blocks)])

    def __neg__(self) -> BlockAlgebraElem:
        return BlockAlgebraElem(self.shape, [-a for a in self.blocks])

    def __mul__(self, other: BlockAlgebraElem) -> BlockAlgebraElem:
        self._check(other)
        return BlockAlgebraElem(self.shape, [a @ b for a, b in zip(self.blocks, other.blocks)])

    def scale(self, c) -> BlockAlgebraElem:
        return BlockAlgebraElem(self.shape, [a.scale(c) for a in self.blocks])

    @property
    def adjoint(self) -> BlockAlgebraElem:
        return BlockAlgebraElem(self.shape, [a.H for a in self.blocks])

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)

    def is_idempotent(self) -> bool:
        return self * self == self

    def is_self_adjoint(self) -> bool:
        return self.adjoint == self

    def is_projection(self) -> bool:
        return self.is_self_adjoint() and self.is_idempotent()

    def is_invertible(self) -> bool:
        return all(rank(b) == b.rows for b in self.blocks)

    def __eq__(self, other):
        return isinstance(other, BlockAlgebraElem) and self.shape == other.shape and self.blocks == other.blocks

    def __hash__(self):
        return hash((self.shape, self.blocks))

    def to_strings(self) -> list[list[list[str]]]:
        return [b.to_strings() for b in self.blocks]

    def __repr__(self):
        return f"BlockAlgebraElem({self.shape}, {self.to_strings()})"


def _same_shape(*elems: BlockAlgebraElem) -> None:
    shapes = {e.shape for e in elems}
    if len(shapes) > 1:
        raise ShapeMismatch(f"mixed shapes {sorted(map(str, shapes))}")


def center_trace(a: BlockAlgebraElem) -> CenterValue:
    """Normalized trace of each block; ``center_trace(I) = (1, ..., 1)``."""
    return CenterValue(b.trace() / GaussianRational(b.rows) for b in a.blocks)


def _range_block(b: ExactMatrix) -> ExactMatrix:
    basis = column_basis(b)
    if basis.cols == 0:
        return ExactMatrix.zeros(b.spec, b.rows)
    return basis @ inverse(basis.H @ basis) @ basis.H


def range_projection(a: BlockAlgebraElem) -> BlockAlgebraElem:
    """Orthogonal projection onto the column space, block by block."""
    return BlockAlgebraElem(a.shape, [_range_block(b) for b in a.blocks])


def null_projection(a: BlockAlgebraElem) -> BlockAlgebraElem:
    """Projection onto the kernel, as ``I - R(a*)``."""
    return BlockAlgebraElem.identity(a.shape) - range_projection(a.adjoint)


def center_rank(a: BlockAlgebraElem) -> CenterValue:
    """``rank(block_i) / n_i``, which equals the normalized trace of the range projection."""
    return CenterValue(Fraction(rank(b), b.rows) for b in a.blocks)


def _require_projection(*elems: BlockAlgebraElem) -> None:
    for e in elems:
        if not e.is_projection():
            raise NotAProjection("argument is not a self-adjoint idempotent")


def proj_join(E: BlockAlgebraElem, F: BlockAlgebraElem) -> BlockAlgebraElem:
    _same_shape(E, F)
    _require_projection(E, F)
    return range_projection(E + F)


def proj_meet(E: BlockAlgebraElem, F: BlockAlgebraElem) -> BlockAlgebraElem:
    """``I - ((I-E) v (I-F))``."""
    _same_shape(E, F)
    _require_projection(E, F)
    eye = BlockAlgebraElem.identity(E.shape)
    return eye - range_projection((eye - E) + (eye - F))


@dataclass(frozen=True)
class SubadditivityResult:
    lhs: CenterValue
    rhs: CenterValue
    subadditive: bool
    equal: bool
    condition_holds: bool

    @property
    def consistent(self) -> bool:
        return self.subadditive and self.equal == self.condition_holds

    def to_dict(self) -> dict:
        return {
            "rank_sum": self.lhs.to_strings(),
            "sum_of_ranks": self.rhs.to_strings(),
            "subadditive": self.subadditive,
            "equal": self.equal,
            "condition_holds": self.condition_holds,
            "consistent": self.consistent,
        }


def subadditivity_check(A: BlockAlgebraElem, B: BlockAlgebraElem) -> SubadditivityResult:
    """Compare ``r(A+B)`` with ``r(A) + r(B)`` and the range/kernel condition for equality.

    The condition ``R(A) ^ R(B) = 0`` and ``N(A) v N(B) = I`` is computed from
    projections only, independently of any rank.
    """
    _same_shape(A, B)
    lhs = center_rank(A + B)
    rhs = center_rank(A) + center_rank(B)
    meet = proj_meet(range_projection(A), range_projection(B))
    join = proj_join(null_projection(A), null_projection(B))
    cond = meet.is_zero() and join == BlockAlgebraElem.identity(A.shape)
    return SubadditivityResult(lhs, rhs, lhs <= rhs, lhs == rhs, cond)


@dataclass(frozen=True)
class CochranResult:
    rank_sum_matches: bool
    mutually_orthogonal_idempotents: bool

    @property
    def consistent(self) -> bool:
        return self.rank_sum_matches == self.mutually_orthogonal_idempotents

    def to_dict(self) -> dict:
        return {
            "rank_sum_matches": self.rank_sum_matches,
            "mutually_orthogonal_idempotents": self.mutually_orthogonal_idempotents,
            "consistent": self.consistent,
        }


def _orthogonal_idempotents(As: Sequence[BlockAlgebraElem]) -> bool:
    zero = BlockAlgebraElem.zero(As[0].shape)
    for i, a in enumerate(As):
        for j, b in enumerate(As):
            if (a * b) != (a if i == j else zero):
                return False
    return True


def cochran_check(As: Sequence[BlockAlgebraElem], E: BlockAlgebraElem) -> CochranResult:
    """Rank additivity of ``sum As = E`` versus mutual orthogonality of the summands."""
    if not As:
        raise SumMismatch("need at least one summand")
    _same_shape(E, *As)
    total = BlockAlgebraElem.zero(E.shape)
    for a in As:
        total = total + a
    if total != E:
        raise SumMismatch("summands do not add up to E")
    if not E.is_idempotent():
        raise NotIdempotent("E is not idempotent")
    ranks = CenterValue.zeros(len(E.shape))
    for a in As:
        ranks = ranks + center_rank(a)
    return CochranResult(ranks == center_rank(E), _orthogonal_idempotents(As))


@dataclass(frozen=True)
class IdempotentSumResult:
    sum_idempotent: bool
    mutually_orthogonal: bool

    @property
    def consistent(self) -> bool:
        return self.sum_idempotent == self.mutually_orthogonal

    def to_dict(self) -> dict:
        return {
            "sum_idempotent": self.sum_idempotent,
            "mutually_orthogonal": self.mutually_orthogonal,
            "consistent": self.consistent,
        }


def idempotent_sum_check(Es: Sequence[BlockAlgebraElem]) -> IdempotentSumResult:
    """Whether ``sum Es`` is idempotent, and whether the ``Es`` are mutually orthogonal."""
    if not Es:
        raise InputError("need at least one idempotent")
    _same_shape(*Es)
    for e in Es:
        if not e.is_idempotent():
            raise NotIdempotent("summand is not idempotent")
    total = BlockAlgebraElem.zero(Es[0].shape)
    for e in Es:
        total = total + e
    return IdempotentSumResult(total.is_idempotent(), _orthogonal_idempotents(Es))


def two_idempotent_sum_check(E1: ExactMatrix, E2: ExactMatrix) -> IdempotentSumResult:
    """Plain-matrix version for two idempotents over any field of characteristic not 2."""
    if E1.spec.characteristic == 2:
        raise CharTwoUnsupported(f"the two-idempotent criterion fails in {E1.spec}")
    for e in (E1, E2):
        if not e.is_idempotent():
            raise NotIdempotent("summand is not idempotent")
    s = E1 + E2
    zero = ExactMatrix.zeros(E1.spec, E1.rows)
    return IdempotentSumResult(s.is_idempotent(), (E1 @ E2).is_zero() and (E2 @ E1) == zero)


# --- samplers -------------------------------------------------------------------

BOX = 2


def _gauss(rng: np.random.Generator) -> GaussianRational:
    re, im = rng.integers(-BOX, BOX + 1, size=2)
    return GaussianRational(int(re), int(im))


def _general_block(n: int, rng: np.random.Generator, cols: int | None = None) -> ExactMatrix:
    cols = n if cols is None else cols
    return ExactMatrix(QI, [[_gauss(rng) for _ in range(cols)] for _ in range(n)])


def _invertible_block(n: int, rng: np.random.Generator) -> ExactMatrix:
    while True:
        m = _general_block(n, rng)
        if rank(m) == n:
            return m


def random_element(shape: BlockShape, rng: np.random.Generator) -> BlockAlgebraElem:
    return BlockAlgebraElem(shape, [_general_block(n, rng) for n in shape.dims])


def random_low_rank(shape: BlockShape, rng: np.random.Generator) -> BlockAlgebraElem:
    """Each block is a product ``n x r`` by ``r x n`` with ``r`` uniform in ``0..n``."""
    blocks = []
    for n in shape.dims:
        r = int(rng.integers(0, n + 1))
        if r == 0:
            blocks.append(ExactMatrix.zeros(QI, n))
        else:
            blocks.append(_general_block(n, rng, r) @ _general_block(r, rng, n))
    return BlockAlgebraElem(shape, blocks)


def disjoint_pair(shape: BlockShape, rng: np.random.Generator) -> tuple[BlockAlgebraElem, BlockAlgebraElem]:
    """``A = S D1 T`` and ``B = S D2 T`` with disjointly supported 0/1 diagonals.

    Ranges and co-ranges are then independent, so rank is additive.
    """
    As, Bs = [], []
    for n in shape.dims:
        S, T = _invertible_block(n, rng), _invertible_block(n, rng)
        labels = rng.integers(0, 3, size=n)  # 0: in A, 1: in B, 2: neither
        D1 = ExactMatrix.diag(QI, [int(x == 0) for x in labels])
        D2 = ExactMatrix.diag(QI, [int(x == 1) for x in labels])
        As.append(S @ D1 @ T)
        Bs.append(S @ D2 @ T)
    return BlockAlgebraElem(shape, As), BlockAlgebraElem(shape, Bs)


def random_idempotent(shape: BlockShape, rng: np.random.Generator) -> BlockAlgebraElem:
    """``S diag(I_r, 0) S^-1`` per block, generally not self-adjoint."""
    blocks = []
    for n in shape.dims:
        r = int(rng.integers(0, n + 1))
        S = _invertible_block(n, rng)
        blocks.append(S @ ExactMatrix.diag(QI, [1] * r + [0] * (n - r)) @ inverse(S))
    return BlockAlgebraElem(shape, blocks)


def random_projection(shape: BlockShape, rng: np.random.Generator) -> BlockAlgebraElem:
    blocks = []
    for n in shape.dims:
        r = int(rng.integers(0, n + 1))
        if r == 0:
            blocks.append(ExactMatrix.zeros(QI, n))
            continue
        while True:
            B = _general_block(n, rng, r)
            if rank(B) == r:
                break
        blocks.append(B @ inverse(B.H @ B) @ B.H)
    return BlockAlgebraElem(shape, blocks)


def orthogonal_family(shape: BlockShape, k: int, rng: np.random.Generator) -> list[BlockAlgebraElem]:
    """``k`` mutually orthogonal idempotents ``S D_j S^-1`` from a random coordinate partition.

    Some coordinates may be left out, so the sum need not be the identity.
    """
    per_block = []
    for n in shape.dims:
        S = _invertible_block(n, rng)
        S_inv = inverse(S)
        labels = rng.integers(0, k + 1, size=n)  # label k: unused coordinate
        per_block.append([S @ ExactMatrix.diag(QI, [int(x == j) for x in labels]) @ S_inv for j in range(k)])
    return [BlockAlgebraElem(shape, [blocks[j] for blocks in per_block]) for j in range(k)]


def perturb_family(family: Sequence[BlockAlgebraElem], rng: np.random.Generator) -> list[BlockAlgebraElem]:
    """Add ``N`` to one summand and subtract it from another; the sum is unchanged."""
    shape = family[0].shape
    out = list(family)
    while True:
        N = random_element(shape, rng)
        if not N.is_zero():
            break
    i, j = 0, 1 + int(rng.integers(0, len(family) - 1))
    out[i] = out[i] + N
    out[j] = out[j] - N
    return out


def reconjugate_family(family: Sequence[BlockAlgebraElem], rng: np.random.Generator) -> list[BlockAlgebraElem]:
    """Conjugate the last idempotent by a fresh invertible; idempotency is kept, orthogonality usually lost."""
    shape = family[0].shape
    blocks = []
    for b in family[-1].blocks:
        T = _invertible_block(b.rows, rng)
        blocks.append(T @ b @ inverse(T))
    return list(family[:-1]) + [BlockAlgebraElem(shape, blocks)]


# --- experiments ------------------------------------------------------------------

EXPERIMENTS = ("cochran", "subadd", "idemsum")


def _sum(elems: Sequence[BlockAlgebraElem]) -> BlockAlgebraElem:
    total = BlockAlgebraElem.zero(elems[0].shape)
    for e in elems:
        total = total + e
    return total


def run_experiment(name: str, shape: BlockShape, trials: int, seed: int = 0) -> dict:
    """Seeded batch of checks; trial ``i`` uses the stream ``(seed, i)``.

    ``cochran``  even trials use orthogonal families, odd trials perturbed ones.
    ``subadd``   even trials use disjointly supported pairs, odd trials random low-rank pairs.
    ``idemsum``  even trials use orthogonal families, odd trials re-conjugated ones.
    Every record carries a ``consistent`` flag; the run passes when all are true.
    """
    if name not in EXPERIMENTS:
        raise InputError(f"unknown experiment {name!r}; expected one of {', '.join(EXPERIMENTS)}")
    records = []
    for i in range(trials):
        rng = rng_for(seed, i)
        if name == "subadd":
            if i % 2 == 0:
                A, B = disjoint_pair(shape, rng)
                kind = "disjoint"
            else:
                A, B = random_low_rank(shape, rng), random_low_rank(shape, rng)
                kind = "low-rank"
            rec = subadditivity_check(A, B).to_dict()
        else:
            k = 2 + int(rng.integers(0, 2))
            family = orthogonal_family(shape, k, rng)
            if i % 2 == 0:
                kind = "orthogonal"
            elif name == "cochran":
                family = perturb_family(family, rng)
                kind = "perturbed"
            else:
                family = reconjugate_family(family, rng)
                kind = "reconjugated"
            if name == "cochran":
                rec = cochran_check(family, _sum(family)).to_dict()
            else:
                rec = idempotent_sum_check(family).to_dict()
        rec = {"index": i, "kind": kind, **rec}
        records.append(rec)
    return {
        "experiment": name,
        "shape": list(shape.dims),
        "trials": trials,
        "seed": seed,
        "pass": all(r["consistent"] for r in records),
        "records": records,
    }
