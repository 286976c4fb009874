"""Seeded random matrices of several structured kinds."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .._rng import as_rng
from ..errors import BadDimension, InputError, SamplerExhausted
from ..fields import FieldSpec
from ..poly import Poly, gcd
from .matrix import ExactMatrix, block_diag, companion, inverse, rank

KINDS = ("general", "invertible", "unimodular", "idempotent", "projection", "companion")
MAX_RETRIES = 64
BOX = 3


def general(n: int, spec: FieldSpec, rng: np.random.Generator, cols: int | None = None) -> ExactMatrix:
    cols = n if cols is None else cols
    return ExactMatrix(spec, [[spec.random_element(rng, BOX) for _ in range(cols)] for _ in range(n)])


def invertible(n: int, spec: FieldSpec, rng: np.random.Generator) -> ExactMatrix:
    for _ in range(MAX_RETRIES):
        m = general(n, spec, rng)
        if rank(m) == n:
            return m
    raise SamplerExhausted(f"no invertible {n}x{n} matrix after {MAX_RETRIES} draws")


def unimodular(n: int, spec: FieldSpec, rng: np.random.Generator) -> tuple[ExactMatrix, ExactMatrix]:
    """``(S, S^-1)`` with ``S = L U`` for unitriangular integer ``L, U``.

    Both factors have integer inverses, so conjugating an integer matrix by
    ``S`` keeps every entry integral; this keeps rational kernels cheap.
    """
    lo = [[0] * n for _ in range(n)]
    up = [[0] * n for _ in range(n)]
    for i in range(n):
        lo[i][i] = up[i][i] = 1
        for j in range(i):
            lo[i][j] = int(rng.integers(-2, 3))
            up[j][i] = int(rng.integers(-2, 3))
    L, U = ExactMatrix(spec, lo), ExactMatrix(spec, up)
    S = L @ U
    return S, inverse(U) @ inverse(L)


def idempotent(n: int, r: int, spec: FieldSpec, rng: np.random.Generator) -> ExactMatrix:
    """``S diag(I_r, 0) S^-1`` for a random invertible ``S``."""
    if not 0 <= r <= n:
        raise BadDimension(f"idempotent rank {r} outside 0..{n}")
    S = invertible(n, spec, rng)
    D = ExactMatrix.diag(spec, [1] * r + [0] * (n - r))
    return S @ D @ inverse(S)


def projection(n: int, r: int, spec: FieldSpec, rng: np.random.Generator) -> ExactMatrix:
    """``B (B*B)^-1 B*`` for a random full-column-rank ``n x r`` matrix ``B``."""
    if not spec.has_involution:
        raise InputError(f"projections need Q or Qi, not {spec}")
    if not 0 <= r <= n:
        raise BadDimension(f"projection rank {r} outside 0..{n}")
    if r == 0:
        return ExactMatrix.zeros(spec, n)
    for _ in range(MAX_RETRIES):
        B = general(n, spec, rng, cols=r)
        if rank(B) == r:
            return B @ inverse(B.H @ B) @ B.H
    raise SamplerExhausted(f"no full-rank {n}x{r} matrix after {MAX_RETRIES} draws")


def sample(
    kind: str,
    n: int,
    spec: FieldSpec,
    seed=None,
    *,
    r: int | None = None,
    poly: Poly | None = None,
) -> ExactMatrix:
    """Draw one matrix; ``seed`` is an integer seed or a numpy Generator.

    Kinds: ``general`` (entries in [-3, 3], uniform residues over F_p),
    ``invertible`` (redrawn up to 64 times), ``unimodular``,
    ``idempotent`` and ``projection`` (rank ``r``) and ``companion`` (of ``poly``).
    """
    if n < 1:
        raise BadDimension(f"dimension must be positive, got {n}")
    rng = as_rng(seed)
    if kind == "general":
        return general(n, spec, rng)
    if kind == "invertible":
        return invertible(n, spec, rng)
    if kind == "unimodular":
        return unimodular(n, spec, rng)[0]
    if kind == "idempotent":
        return idempotent(n, int(rng.integers(0, n + 1)) if r is None else r, spec, rng)
    if kind == "projection":
        return projection(n, int(rng.integers(0, n + 1)) if r is None else r, spec, rng)
    if kind == "companion":
        if poly is None:
            raise InputError("companion sampling needs a polynomial")
        if poly.degree != n:
            raise BadDimension(f"companion of degree {poly.degree} polynomial is not {n}x{n}")
        return companion(poly)
    raise InputError(f"unknown sample kind {kind!r}; expected one of {', '.join(KINDS)}")


def coprime_basis(polys: Sequence[Poly]) -> list[Poly]:
    """Pairwise-coprime monic nonconstant polynomials that generate every input multiplicatively.

    Refines by repeated gcd splitting, so no factorisation is needed.
    """
    work = [p.monic() for p in polys if p.degree > 0]
    basis: list[Poly] = []
    while work:
        p = work.pop()
        if p.degree < 1:
            continue
        for i, b in enumerate(basis):
            g = gcd(p, b)
            if g.degree > 0:
                basis.pop(i)
                work.extend([g, (b // g).monic(), (p // g).monic()])
                break
        else:
            basis.append(p)
    # dedupe and sort for reproducible ordering
    uniq = {b: None for b in basis}
    return sorted(uniq, key=Poly.sort_key)


def structured(
    polys: Sequence[Poly], n: int, spec: FieldSpec, rng: np.random.Generator, conjugate: bool = True
) -> ExactMatrix:
    """Block sum of companions of powers of basis factors, padded with scalars.

    Random matrices rarely make ``q(A)`` singular; these do by design.
    """
    basis = coprime_basis(polys)
    blocks: list[ExactMatrix] = []
    room = n
    while room > 0:
        fits = [b for b in basis if b.degree <= room]
        if fits and rng.random() < 0.8:
            b = fits[int(rng.integers(0, len(fits)))]
            kmax = room // b.degree
            k = int(rng.integers(1, min(kmax, 3) + 1))
            blocks.append(companion(b**k))
            room -= k * b.degree
        else:
            blocks.append(ExactMatrix(spec, [[spec.random_element(rng, BOX)]]))
            room -= 1
    A = block_diag(blocks)
    if conjugate:
        S, S_inv = unimodular(n, spec, rng)
        A = S @ A @ S_inv
    return A
