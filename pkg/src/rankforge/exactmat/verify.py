"""Randomised verification of rank identities and counterexample search."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterator, Sequence

import numpy as np

from .._rng import MASK64, rng_for
from ..errors import FieldMismatch, LengthMismatch, NotSquare, SizeMismatch, ZeroPolynomial
from ..fields import GF, PRIME, RATIONALS, FieldSpec
from ..identgen import RankIdentity, check_lattice_condition
from ..poly import Poly
from .matrix import (
    ExactMatrix,
    block_diag,
    companion,
    matmul_int,
    matmul_mod,
    rank,
    rank_generic,
    rank_int,
    rank_mod,
)
from .sampling import coprime_basis, general, idempotent, structured

DEFAULT_BUDGET = 256


class _PowerTable:
    """Powers of one square matrix in a field-specific raw form, for cheap ``rank(p(A))``."""

    def __init__(self, A: ExactMatrix):
        if not A.is_square():
            raise NotSquare(f"cannot evaluate a polynomial at a {A.rows}x{A.cols} matrix")
        self.spec = A.spec
        self.n = A.rows
        kind = A.spec.kind
        if kind == RATIONALS:
            d = 1
            for row in A.entries:
                for x in row:
                    d = lcm(d, x.denominator)
            self.den = d
            self.pows = [[[int(i == j) for j in range(self.n)] for i in range(self.n)]]
            self.base = [[x.numerator * (d // x.denominator) for x in row] for row in A.entries]
        elif kind == PRIME:
            self.pows = [[[int(i == j) for j in range(self.n)] for i in range(self.n)]]
            self.base = [[x.v for x in row] for row in A.entries]
        else:
            self.pows = [ExactMatrix.identity(A.spec, self.n)]
            self.base = A

    def power(self, k: int):
        while len(self.pows) <= k:
            last = self.pows[-1]
            kind = self.spec.kind
            if kind == RATIONALS:
                self.pows.append(matmul_int(last, self.base))
            elif kind == PRIME:
                self.pows.append(matmul_mod(last, self.base, self.spec.p))
            else:
                self.pows.append(last @ self.base)
        return self.pows[k]

    def rank_of(self, p: Poly) -> int:
        if p.spec != self.spec:
            raise FieldMismatch(f"{p.spec} vs {self.spec}")
        n = self.n
        if p.is_zero():
            return 0
        kind = self.spec.kind
        if kind == RATIONALS:
            # p(A) = sum c_k M_k / den^k; clear every denominator at once
            top = p.degree
            scale = lcm(*(c.denominator for c in p.coeffs)) * self.den**top
            acc = [[0] * n for _ in range(n)]
            for k, c in enumerate(p.coeffs):
                if not c:
                    continue
                m = c.numerator * (scale // (c.denominator * self.den**k))
                Mk = self.power(k)
                for i in range(n):
                    row, src = acc[i], Mk[i]
                    for j in range(n):
                        row[j] += m * src[j]
            return rank_int(acc)
        if kind == PRIME:
            q = self.spec.p
            acc = [[0] * n for _ in range(n)]
            for k, c in enumerate(p.coeffs):
                if not c:
                    continue
                m = c.v
                Mk = self.power(k)
                for i in range(n):
                    row, src = acc[i], Mk[i]
                    for j in range(n):
                        row[j] += m * src[j]
            return rank_mod([[x % q for x in row] for row in acc], q)
        acc = ExactMatrix.zeros(self.spec, n)
        for k, c in enumerate(p.coeffs):
            if c:
                acc = acc + self.power(k).scale(c)
        return rank_generic([list(r) for r in acc.entries], self.spec)


def rank_sum(polys: Sequence[Poly], A: ExactMatrix) -> int:
    """``sum_i rank(p_i(A))``."""
    table = _PowerTable(A)
    return sum(table.rank_of(p) for p in polys)


def rank_sums(lhs: Sequence[Poly], rhs: Sequence[Poly], A: ExactMatrix) -> tuple[int, int]:
    table = _PowerTable(A)
    return sum(table.rank_of(p) for p in lhs), sum(table.rank_of(p) for p in rhs)


@dataclass(frozen=True)
class TrialRecord:
    index: int
    seed: int
    dim: int
    kind: str
    lhs: int
    rhs: int

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "seed": self.seed,
            "dim": self.dim,
            "kind": self.kind,
            "lhs_rank_sum": self.lhs,
            "rhs_rank_sum": self.rhs,
            "pass": self.passed,
        }


@dataclass
class VerificationReport:
    identity: RankIdentity
    seed: int
    dims: list[int]
    trials: list[TrialRecord] = field(default_factory=list)
    counterexample: ExactMatrix | None = None

    @property
    def passed(self) -> bool:
        return all(t.passed for t in self.trials)

    @property
    def failures(self) -> int:
        return sum(1 for t in self.trials if not t.passed)

    def to_dict(self) -> dict:
        return {
            "identity": self.identity.to_dict(),
            "seed": self.seed,
            "dims": list(self.dims),
            "trial_count": len(self.trials),
            "failures": self.failures,
            "pass": self.passed,
            "trials": [t.to_dict() for t in self.trials],
            "counterexample": None if self.counterexample is None else self.counterexample.to_strings(),
        }


TRIAL_KINDS = ("general", "structured", "idempotent", "structured")


def trial_seed(seed: int, index: int) -> int:
    """64-bit seed for one trial, derived from the run seed and trial index."""
    state = np.random.SeedSequence([int(seed) & MASK64, index]).generate_state(2, np.uint32)
    return (int(state[0]) << 32) | int(state[1])


def sample_for_trial(polys: Sequence[Poly], n: int, spec: FieldSpec, kind: str, seed: int) -> ExactMatrix:
    """The matrix used by one verification trial; reproducible from ``seed`` alone."""
    rng = rng_for(seed)
    if kind == "general":
        return general(n, spec, rng)
    if kind == "idempotent":
        return idempotent(n, int(rng.integers(0, n + 1)), spec, rng)
    return structured(polys, n, spec, rng)


def verify_identity(
    identity: RankIdentity, trials: int = 50, dims: Sequence[int] = (2, 3, 4), seed: int = 0
) -> VerificationReport:
    """Compare both rank sums on ``trials`` sampled matrices.

    Trial ``i`` uses dimension ``dims[i % len(dims)]`` and cycles through
    plain random, structured (companion blocks of the identity's own factors,
    conjugated) and idempotent samples.
    """
    if not dims or any(d < 1 for d in dims):
        raise SizeMismatch(f"dimensions must be positive, got {list(dims)}")
    spec = identity.field
    polys = list(identity.lhs) + list(identity.rhs)
    report = VerificationReport(identity, seed, list(dims))
    for i in range(trials):
        n = dims[i % len(dims)]
        kind = TRIAL_KINDS[i % len(TRIAL_KINDS)]
        s = trial_seed(seed, i)
        A = sample_for_trial(polys, n, spec, kind, s)
        lhs, rhs = rank_sums(identity.lhs, identity.rhs, A)
        report.trials.append(TrialRecord(i, s, n, kind, lhs, rhs))
        if lhs != rhs and report.counterexample is None:
            report.counterexample = A
    return report


def _multiplicity(p: Poly, b: Poly) -> int:
    k = 0
    if p.is_zero():
        return 0
    while True:
        q, r = divmod(p, b)
        if r:
            return k
        p, k = q, k + 1


def _candidates(lhs: Sequence[Poly], rhs: Sequence[Poly], spec: FieldSpec, seed: int) -> Iterator[ExactMatrix]:
    polys = list(lhs) + list(rhs)
    basis = coprime_basis(polys)
    comps = []
    # cyclic matrices with minimal polynomial b^k separate exponent multisets
    for b in basis:
        top = max((_multiplicity(p, b) for p in polys), default=0)
        for k in range(1, top + 2):
            C = companion(b**k)
            comps.append(C)
            yield C
    for v in (0, 1, -1, 2, -2, 3):
        yield ExactMatrix(spec, [[v]])
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            yield block_diag([comps[i], comps[j]])
    rng = rng_for(seed)
    while True:
        n = int(rng.integers(1, 7))
        if rng.random() < 0.5 and basis:
            yield structured(polys, n, spec, rng)
        else:
            yield general(n, spec, rng)


def counterexample_search(
    lhs: Sequence[Poly], rhs: Sequence[Poly], budget: int = DEFAULT_BUDGET, seed: int = 0
) -> ExactMatrix | None:
    """First matrix with unequal rank sums, or None.

    Returns None at once when the lattice condition certifies the identity.
    A None after the budget runs out is not a proof of validity.
    """
    polys = list(lhs) + list(rhs)
    if not polys:
        return None
    spec = polys[0].spec
    try:
        if check_lattice_condition(lhs, rhs):
            return None
    except (ZeroPolynomial, LengthMismatch):
        pass
    for count, A in enumerate(_candidates(lhs, rhs, spec, seed)):
        if count >= budget:
            break
        l, r = rank_sums(lhs, rhs, A)
        if l != r:
            return A
    warnings.warn(f"no counterexample within a budget of {budget} candidates", RuntimeWarning, stacklevel=2)
    return None


def two_sided_identities_check(A: ExactMatrix, B: ExactMatrix, n: int | None = None) -> bool:
    """``rank(I+AB) = rank(I+BA)`` and ``rank(A) + rank(I+BA) = rank(A+ABA) + n``."""
    if not (A.is_square() and B.is_square()) or A.shape != B.shape:
        raise SizeMismatch(f"need square matrices of equal size, got {A.shape} and {B.shape}")
    if n is not None and n != A.rows:
        raise SizeMismatch(f"n={n} but matrices are {A.rows}x{A.rows}")
    n = A.rows
    eye = ExactMatrix.identity(A.spec, n)
    AB, BA = A @ B, B @ A
    first = rank(eye + AB) == rank(eye + BA)
    second = rank(A) + rank(eye + BA) == rank(A + AB @ A) + n
    return first and second
