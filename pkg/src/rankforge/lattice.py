"""Divisibility lattice of associate classes in K[t].

A class is stored by its monic representative; the zero polynomial stands
for the top element ``[0]`` and the constant 1 for the bottom ``[1]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import EmptyMultiset, FieldMismatch, NotAChain
from .fields import FieldSpec
from .poly import Poly, gcd, lcm


@dataclass(frozen=True)
class DivClass:
    rep: Poly

    def __post_init__(self):
        if self.rep and not self.rep.is_monic():
            object.__setattr__(self, "rep", self.rep.monic())

    @classmethod
    def of(cls, p: Poly) -> DivClass:
        return cls(p.monic())

    @classmethod
    def unit(cls, spec: FieldSpec) -> DivClass:
        return cls(Poly.constant(spec, 1))

    @classmethod
    def top(cls, spec: FieldSpec) -> DivClass:
        return cls(Poly(spec))

    @property
    def spec(self) -> FieldSpec:
        return self.rep.spec

    def is_top(self) -> bool:
        return self.rep.is_zero()

    def is_unit(self) -> bool:
        return self.rep.degree == 0

    def __le__(self, other: DivClass) -> bool:
        return leq(self, other)

    def sort_key(self) -> tuple:
        # [0] sorts after every nonzero class
        return (1, ()) if self.is_top() else (0, self.rep.sort_key())

    def __str__(self):
        return str(self.rep)


def _same(a: DivClass, b: DivClass) -> None:
    if a.spec != b.spec:
        raise FieldMismatch(f"{a.spec} vs {b.spec}")


def meet(a: DivClass, b: DivClass) -> DivClass:
    _same(a, b)
    return DivClass(gcd(a.rep, b.rep))


def join(a: DivClass, b: DivClass) -> DivClass:
    _same(a, b)
    return DivClass(lcm(a.rep, b.rep))


def leq(a: DivClass, b: DivClass) -> bool:
    """``a <= b`` iff ``a`` divides ``b``."""
    _same(a, b)
    return a.rep.divides(b.rep)


def class_product(classes: Iterable[DivClass], spec: FieldSpec) -> DivClass:
    out = Poly.constant(spec, 1)
    for c in classes:
        out = out * c.rep
    return DivClass(out)


class DivMultiset:
    """Finite multiset of classes, kept sorted so insertion order is irrelevant."""

    __slots__ = ("spec", "items")

    def __init__(self, spec: FieldSpec, items: Iterable[DivClass | Poly] = ()):
        classes = []
        for x in items:
            c = x if isinstance(x, DivClass) else DivClass.of(x)
            if c.spec != spec:
                raise FieldMismatch(f"{c.spec} vs {spec}")
            classes.append(c)
        self.spec = spec
        self.items = tuple(sorted(classes, key=DivClass.sort_key))

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __eq__(self, other):
        return isinstance(other, DivMultiset) and (self.spec, self.items) == (other.spec, other.items)

    def __hash__(self):
        return hash((self.spec, self.items))

    def __add__(self, other: DivMultiset) -> DivMultiset:
        return DivMultiset(self.spec, self.items + other.items)

    def multiplicity(self, c: DivClass) -> int:
        return sum(1 for x in self.items if x == c)


def is_chain(chain: Sequence[DivClass]) -> bool:
    return all(leq(chain[i], chain[i + 1]) for i in range(len(chain) - 1))


def merge_chain(chain: Sequence[DivClass], y: DivClass) -> list[DivClass]:
    """Insert ``y`` into an ascending chain, keeping the class product.

    Returns ``y∧x1, (y∨x1)∧x2, ..., (y∨x_{n-1})∧x_n, y∨x_n``.
    """
    if not is_chain(chain):
        raise NotAChain("input is not ascending under divisibility")
    if not chain:
        return [y]
    out = [meet(y, chain[0])]
    for prev, cur in zip(chain, chain[1:]):
        out.append(meet(join(y, prev), cur))
    out.append(join(y, chain[-1]))
    return out


def order_statistics(X: DivMultiset | Sequence[DivClass]) -> list[DivClass]:
    """``(X_(1), ..., X_(n))`` by folding :func:`merge_chain` over ``X``."""
    items = list(X)
    if not items:
        raise EmptyMultiset("order statistics of an empty multiset")
    chain: list[DivClass] = []
    for y in items:
        chain = merge_chain(chain, y)
    return chain


def order_statistics_bruteforce(X: DivMultiset | Sequence[DivClass]) -> list[DivClass]:
    """Meet over all k-subsets of their joins; exponential, for small oracles only."""
    items = list(X)
    if not items:
        raise EmptyMultiset("order statistics of an empty multiset")
    spec = items[0].spec
    out = []
    for k in range(1, len(items) + 1):
        acc = DivClass.top(spec)
        for subset in combinations(items, k):
            j = DivClass.unit(spec)
            for c in subset:
                j = join(j, c)
            acc = meet(acc, j)
        out.append(acc)
    return out
