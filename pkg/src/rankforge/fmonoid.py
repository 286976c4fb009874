"""Canonical forms in the monoid of diagonal-equivalence classes of tuples over K[t].

A tuple ``(x1, ..., xn)`` is represented by the ascending divisor chain of
its order statistics with every ``[0]`` removed; two tuples are equivalent
exactly when these chains coincide.  Units ``[1]`` are kept because each one
contributes a full-rank term to a rank identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import FieldMismatch, NotAChain
from .fields import FieldSpec
from .lattice import DivClass, class_product, is_chain, order_statistics
from .poly import Poly


@dataclass(frozen=True)
class FMonoidElem:
    spec: FieldSpec
    chain: tuple[DivClass, ...] = ()

    def __post_init__(self):
        if any(c.is_top() for c in self.chain):
            raise NotAChain("canonical chains may not contain [0]")
        if not is_chain(self.chain):
            raise NotAChain("chain is not ascending under divisibility")

    @classmethod
    def identity(cls, spec: FieldSpec) -> FMonoidElem:
        return cls(spec, ())

    def __add__(self, other: FMonoidElem) -> FMonoidElem:
        return oplus(self, other)

    def polys(self) -> list[Poly]:
        return [c.rep for c in self.chain]

    def to_strings(self) -> list[str]:
        return [str(c.rep) for c in self.chain]

    def __len__(self):
        return len(self.chain)


def canonical_form_with_zeros(polys: Sequence[Poly], spec: FieldSpec | None = None) -> tuple[FMonoidElem, int]:
    """Canonical element plus the number of ``[0]`` entries that were stripped."""
    if spec is None:
        if not polys:
            raise ValueError("field spec needed for an empty tuple")
        spec = polys[0].spec
    for p in polys:
        if p.spec != spec:
            raise FieldMismatch(f"{p.spec} vs {spec}")
    if not polys:
        return FMonoidElem(spec), 0
    stats = order_statistics([DivClass.of(p) for p in polys])
    kept = tuple(c for c in stats if not c.is_top())
    return FMonoidElem(spec, kept), len(stats) - len(kept)


def canonical_form(polys: Sequence[Poly], spec: FieldSpec | None = None) -> FMonoidElem:
    return canonical_form_with_zeros(polys, spec)[0]


def oplus(a: FMonoidElem, b: FMonoidElem) -> FMonoidElem:
    """Sum of two classes: canonical form of the concatenated tuples."""
    if a.spec != b.spec:
        raise FieldMismatch(f"{a.spec} vs {b.spec}")
    return canonical_form(a.polys() + b.polys(), a.spec)


def equals(a: FMonoidElem, b: FMonoidElem) -> bool:
    if a.spec != b.spec:
        raise FieldMismatch(f"{a.spec} vs {b.spec}")
    return a.chain == b.chain


def invariants_S_Delta(a: FMonoidElem) -> tuple[int, DivClass]:
    """Chain length and product of entries; both additive under ``oplus``."""
    return len(a.chain), class_product(a.chain, a.spec)


def sum_all(elems: Iterable[FMonoidElem], spec: FieldSpec) -> FMonoidElem:
    out = FMonoidElem.identity(spec)
    for e in elems:
        out = oplus(out, e)
    return out
