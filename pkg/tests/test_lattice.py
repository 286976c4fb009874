from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import F5, Q, polys
from rankforge.errors import EmptyMultiset, NotAChain
from rankforge.lattice import (
    DivClass,
    DivMultiset,
    class_product,
    is_chain,
    join,
    leq,
    meet,
    merge_chain,
    order_statistics,
    order_statistics_bruteforce,
)
from rankforge.poly import parse


def C(text, spec=Q):
    return DivClass.of(parse(text, spec))


def test_meet_join_examples():
    assert meet(C("t^2-1"), C("t-1")) == C("t-1")
    assert join(C("t"), C("0")) == C("0")
    assert meet(C("t"), C("t+1")) == C("1")


def test_classes_are_monic():
    assert C("2t+2") == C("t+1")
    assert C("0").is_top() and C("5").is_unit()


def test_order_statistics_examples():
    assert order_statistics([C("t"), C("t+1"), C("t^2+t")]) == [C("1"), C("t^2+t"), C("t^2+t")]
    assert order_statistics([C("t"), C("t"), C("t^2")]) == [C("t"), C("t"), C("t^2")]
    assert order_statistics([C("t-1"), C("t^2-1")]) == [C("t-1"), C("t^2-1")]
    with pytest.raises(EmptyMultiset):
        order_statistics([])


def test_merge_chain_examples():
    assert merge_chain([C("t"), C("t^2")], C("t+1")) == [C("1"), C("t"), C("t^3+t^2")]
    assert merge_chain([C("1")], C("1")) == [C("1"), C("1")]
    assert merge_chain([C("t")], C("0")) == [C("t"), C("0")]
    with pytest.raises(NotAChain):
        merge_chain([C("t"), C("t+1")], C("1"))


def test_multiset_is_unordered():
    a = DivMultiset(Q, [C("t"), C("t+1")])
    b = DivMultiset(Q, [C("t+1"), C("t")])
    assert a == b and a.multiplicity(C("t")) == 1


def classes(spec, max_size=5):
    return st.lists(polys(spec, 4).map(DivClass.of), min_size=1, max_size=max_size)


@pytest.mark.parametrize("spec", [Q, F5], ids=str)
@given(data=st.data())
def test_fold_matches_bruteforce(spec, data):
    X = data.draw(classes(spec))
    assert order_statistics(X) == order_statistics_bruteforce(X)


@pytest.mark.parametrize("spec", [Q, F5], ids=str)
@given(data=st.data())
def test_order_statistics_chain_and_product(spec, data):
    X = data.draw(classes(spec))
    stats = order_statistics(X)
    assert is_chain(stats) and len(stats) == len(X)
    assert class_product(X, spec) == class_product(stats, spec)


@given(data=st.data())
def test_merge_chain_product_identity(data):
    X = data.draw(classes(Q, 4))
    y = data.draw(polys(Q, 3).map(DivClass.of))
    chain = order_statistics(X)
    merged = merge_chain(chain, y)
    assert is_chain(merged)
    assert class_product(merged, Q) == class_product(chain + [y], Q)


@given(data=st.data())
def test_lattice_laws(data):
    a, b, c = (data.draw(polys(F5, 3).map(DivClass.of)) for _ in range(3))
    assert meet(a, a) == a and join(a, a) == a
    assert meet(a, b) == meet(b, a) and join(a, b) == join(b, a)
    assert meet(meet(a, b), c) == meet(a, meet(b, c))
    assert join(join(a, b), c) == join(a, join(b, c))
    assert meet(a, join(a, b)) == a and join(a, meet(a, b)) == a
    assert meet(a, join(b, c)) == join(meet(a, b), meet(a, c))
    assert join(a, meet(b, c)) == meet(join(a, b), join(a, c))
    assert leq(meet(a, b), a) and leq(a, join(a, b))
