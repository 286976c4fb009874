from __future__ import annotations

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import F2, F7, Q
from rankforge.errors import InputError, LengthMismatch, NotCoprime, ZeroPolynomial
from rankforge.exactmat.verify import verify_identity
from rankforge.identgen import (
    BUILTIN_NAMES,
    RankIdentity,
    ShuffleSpec,
    build_tuple,
    builtin_identities,
    builtin_identity,
    check_lattice_condition,
    example_shuffle,
    make_identity,
    shuffle_columns,
)
from rankforge.poly import parse


def Ps(*texts, spec=Q):
    return [parse(t, spec) for t in texts]


BASIS = Ps("t-1", "t+1", "t^2+1")


def test_build_tuple_examples():
    assert build_tuple(BASIS, [[1, 1, 1]]) == Ps("t^4-1")
    assert build_tuple(BASIS, [[2, 1, 1]]) == Ps("t^5-t^4-t+1")
    assert build_tuple(BASIS, [[0, 0, 0]]) == Ps("1")


def test_build_tuple_rejects_common_factor():
    with pytest.raises(NotCoprime) as info:
        build_tuple(Ps("t^2-1", "t-1"), [[1, 1]])
    assert info.value.pair == (0, 1)
    with pytest.raises(ZeroPolynomial):
        build_tuple(Ps("0", "t"), [[1, 1]])


def test_identity_seed_gives_identity_shuffle():
    lam = [[0, 1], [2, 3], [1, 1]]
    perms = shuffle_columns(lam, None)
    spec = ShuffleSpec(tuple(Ps("t", "t+1")), lam, perms)
    assert spec.mu == spec.lam
    ident = make_identity(spec)
    assert ident.lhs == ident.rhs


@given(seed=st.integers(0, 2**64 - 1))
def test_single_row_is_fixed(seed):
    lam = [[1, 2, 0]]
    spec = ShuffleSpec(tuple(BASIS), lam, shuffle_columns(lam, seed))
    assert spec.mu == spec.lam


def test_shuffle_is_reproducible():
    lam = [[0, 0], [1, 2], [3, 1], [2, 2]]
    assert shuffle_columns(lam, 42) == shuffle_columns(lam, 42)


def test_example_shuffle():
    ident = make_identity(example_shuffle(Q))
    assert ident.lhs == tuple(Ps("1", "t^4-1", "t^5-t^4-t+1"))
    assert ident.rhs == tuple(Ps("t^4-2t^3+2t^2-2t+1", "t^2-1", "t^3+t^2+t+1"))


def test_two_factor_swap():
    spec = ShuffleSpec(tuple(Ps("t", "1-t")), [[1, 0], [0, 1]], [[1, 0], [0, 1]])
    ident = make_identity(spec)
    assert ident.lhs == tuple(Ps("t", "1-t"))
    assert ident.rhs == tuple(Ps("1", "t-t^2"))


def test_lattice_condition_examples():
    ex = builtin_identity("example-6.5")
    assert check_lattice_condition(ex.lhs, ex.rhs)
    assert not check_lattice_condition(Ps("t"), Ps("t^2"))
    assert check_lattice_condition(Ps("t", "1-t"), Ps("1", "t-t^2"))
    with pytest.raises(LengthMismatch):
        check_lattice_condition(Ps("t"), Ps("t", "1"))
    with pytest.raises(ZeroPolynomial):
        check_lattice_condition(Ps("0"), Ps("t"))


def test_catalog():
    names = [i.name for i in builtin_identities(Q)]
    assert names == list(BUILTIN_NAMES)
    for ident in builtin_identities(Q) + builtin_identities(F7):
        assert ident.is_valid()


def test_catalog_over_f2_omits_shuffled_example():
    names = [i.name for i in builtin_identities(F2)]
    assert "example-6.5" not in names
    with pytest.raises(InputError):
        builtin_identity("example-6.5", F2)
    # the basis collapses in characteristic 2 and the identity genuinely fails
    ex = builtin_identity("example-6.5", Q)
    lhs = [parse(str(p), F2) for p in ex.lhs]
    rhs = [parse(str(p), F2) for p in ex.rhs]
    assert not check_lattice_condition(lhs, rhs)


def test_dict_round_trip():
    ident = builtin_identity("example-6.5")
    data = json.loads(json.dumps(ident.to_dict()))
    data["extra"] = 1
    assert RankIdentity.from_dict(data) == ident
    with pytest.raises(InputError):
        RankIdentity.from_dict({"lhs": ["t"]})


def test_render():
    assert builtin_identity("eq-1.1").render() == "rank(A) + rank(-A + I) = rank(I) + rank(-A^2 + A)"


def test_reducible_coprime_basis_still_sound():
    spec = ShuffleSpec(tuple(Ps("t^2-1", "t^2+2")), [[0, 1], [2, 0], [1, 1]], shuffle_columns([[0, 1], [2, 0], [1, 1]], 5))
    ident = make_identity(spec)
    assert verify_identity(ident, trials=50, dims=(2, 3, 4, 5), seed=1).passed


@given(data=st.data())
def test_generator_soundness(data):
    m = data.draw(st.integers(1, 4))
    lam = data.draw(st.lists(st.lists(st.integers(0, 2), min_size=3, max_size=3), min_size=m, max_size=m))
    seed = data.draw(st.integers(0, 2**32))
    spec = ShuffleSpec(tuple(BASIS), lam, shuffle_columns(lam, seed))
    ident = make_identity(spec)
    assert ident.is_valid()
