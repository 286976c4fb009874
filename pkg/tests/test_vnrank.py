from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import F2, F3, F5, F7, Q
from rankforge._rng import rng_for
from rankforge.errors import (
    CharTwoUnsupported,
    InputError,
    NotAProjection,
    NotIdempotent,
    ShapeMismatch,
    SumMismatch,
)
from rankforge.exactmat import ExactMatrix, rank
from rankforge.exactmat.sampling import idempotent
from rankforge.vnrank import (
    QI,
    BlockAlgebraElem,
    BlockShape,
    CenterValue,
    center_rank,
    center_trace,
    cochran_check,
    disjoint_pair,
    idempotent_sum_check,
    null_projection,
    orthogonal_family,
    perturb_family,
    proj_join,
    proj_meet,
    random_element,
    random_idempotent,
    random_low_rank,
    random_projection,
    range_projection,
    run_experiment,
    subadditivity_check,
    two_idempotent_sum_check,
)

H = Fraction(1, 2)
S2 = BlockShape((2,))
S23 = BlockShape((2, 3))


def el(shape, *blocks):
    return BlockAlgebraElem.from_rows(shape, blocks)


def cv(*xs):
    return CenterValue(Fraction(x) for x in xs)


E11 = el(S2, [[1, 0], [0, 0]])
E12 = el(S2, [[0, 1], [0, 0]])
E22 = el(S2, [[0, 0], [0, 1]])
I2 = BlockAlgebraElem.identity(S2)
Z2 = BlockAlgebraElem.zero(S2)
DIAG = el(S23, [[1, 0], [0, 0]], [[1, 0, 0], [0, 1, 0], [0, 0, 0]])


def test_shape_validation():
    with pytest.raises(InputError):
        BlockShape(())
    with pytest.raises(InputError):
        BlockShape.parse("2,x")
    with pytest.raises(ShapeMismatch):
        el(S2, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def test_center_trace_examples():
    assert center_trace(BlockAlgebraElem.identity(S23)) == cv(1, 1)
    assert center_trace(DIAG) == CenterValue([H, Fraction(2, 3)])


@given(seed=st.integers(0, 2**32))
def test_trace_kills_commutators(seed):
    rng = rng_for(seed)
    A, B = random_element(S23, rng), random_element(S23, rng)
    assert center_trace(A * B - B * A) == cv(0, 0)


def test_range_projection_examples():
    assert range_projection(el(S2, [[2, 0], [0, 0]])) == E11
    assert range_projection(el(S2, [[1, 1], [1, 1]])) == el(S2, [[H, H], [H, H]])
    assert range_projection(Z2) == Z2


def test_center_rank_examples():
    assert center_rank(BlockAlgebraElem.identity(S23)) == cv(1, 1)
    assert center_rank(DIAG) == CenterValue([H, Fraction(2, 3)])
    E = el(S2, [[1, 1], [0, 0]])
    assert center_rank(E) == CenterValue([H]) == center_trace(E)


def test_meet_join_examples():
    F = el(S2, [[H, H], [H, H]])
    assert proj_meet(E11, E11) == E11
    assert proj_meet(E11, F) == Z2
    assert proj_join(E11, F) == I2
    assert proj_join(E11, Z2) == E11
    with pytest.raises(NotAProjection):
        proj_meet(el(S2, [[1, 1], [0, 0]]), E11)


def _intersection_dim(P: ExactMatrix, R: ExactMatrix) -> int:
    return rank(P) + rank(R) - rank(P.hstack(R))


@given(seed=st.integers(0, 2**32))
def test_meet_is_intersection_of_ranges(seed):
    rng = rng_for(seed)
    E, F = random_projection(S23, rng), random_projection(S23, rng)
    meet, join = proj_meet(E, F), proj_join(E, F)
    assert meet.is_projection() and join.is_projection()
    for m, j, e, f in zip(meet.blocks, join.blocks, E.blocks, F.blocks):
        assert rank(m) == _intersection_dim(e, f)
        assert (e @ m) == m and (f @ m) == m
        assert rank(j) == rank(e.hstack(f))


def test_subadditivity_examples():
    r = subadditivity_check(E11, E22)
    assert r.equal and r.condition_holds
    r = subadditivity_check(E11, E12)
    assert r.lhs == CenterValue([H]) and r.rhs == cv(1)
    assert r.lhs < r.rhs and not r.equal and not r.condition_holds
    r = subadditivity_check(E12, Z2)
    assert r.equal and r.condition_holds
    with pytest.raises(ShapeMismatch):
        subadditivity_check(E11, DIAG)


def test_cochran_examples():
    assert cochran_check([E11, E22], I2).to_dict()["rank_sum_matches"]
    r = cochran_check([el(S2, [[1, 1], [0, 0]]), el(S2, [[0, -1], [0, 1]])], I2)
    assert r.rank_sum_matches and r.mutually_orthogonal_idempotents
    half = I2.scale(QI.normalize(H))
    r = cochran_check([half, half], I2)
    assert not r.rank_sum_matches and not r.mutually_orthogonal_idempotents
    with pytest.raises(SumMismatch):
        cochran_check([E11], I2)
    with pytest.raises(NotIdempotent):
        cochran_check([E12], E12)


def test_idempotent_sum_examples():
    r = idempotent_sum_check([E11, E22])
    assert r.sum_idempotent and r.mutually_orthogonal
    r = idempotent_sum_check([E11, E11])
    assert not r.sum_idempotent and not r.mutually_orthogonal
    fam = orthogonal_family(S23, 3, rng_for(4))
    assert idempotent_sum_check(fam).consistent
    with pytest.raises(NotIdempotent):
        idempotent_sum_check([E12])


def test_conjugated_partition_of_unity():
    S = ExactMatrix(QI, [[1, 2], [0, 1]])
    S_inv = ExactMatrix(QI, [[1, -2], [0, 1]])
    fam = [BlockAlgebraElem(S2, [S @ b.blocks[0] @ S_inv]) for b in (E11, E22)]
    assert fam[0] + fam[1] == I2
    r = idempotent_sum_check(fam)
    assert r.sum_idempotent and r.mutually_orthogonal


@given(seed=st.integers(0, 2**32))
def test_rank_properties(seed):
    rng = rng_for(seed)
    A = random_low_rank(S23, rng)
    assert center_rank(A) == center_rank(A.adjoint) == center_rank(A.adjoint * A)
    assert center_rank(A) == center_trace(range_projection(A))
    X = random_element(S23, rng)
    if X.is_invertible():
        assert center_rank(X * A) == center_rank(A) == center_rank(A * X)
    assert (center_rank(A) == cv(0, 0)) == A.is_zero()
    N = null_projection(A)
    assert (A * N).is_zero()


@given(seed=st.integers(0, 2**32))
def test_equivalent_projections_have_equal_ranks(seed):
    rng = rng_for(seed)
    E, F = random_projection(S23, rng), random_projection(S23, rng)
    same = center_rank(E) == center_rank(F)
    assert same == all(rank(a) == rank(b) for a, b in zip(E.blocks, F.blocks))


@given(seed=st.integers(0, 2**32))
def test_idempotent_rank_family(seed):
    rng = rng_for(seed)
    E, F = random_idempotent(S23, rng), random_idempotent(S23, rng)
    I = BlockAlgebraElem.identity(S23)
    ones = cv(1, 1)
    r = center_rank
    assert r(E - F) == r(E * (I - F)) + r((I - E) * F)
    assert r(E - F) + r(F) == r(E) + r(F * (I - E)) + r((I - E) * F)
    assert r(E + F) == r((I - F) * E * (I - F)) + r(F) == r(E) + r((I - E) * F * (I - E))
    assert r(E * F - F * E) + ones == r(E - F) + r(I - E - F)
    assert r(E * F + F * E) + ones == r(E + F) + r(I - E - F)
    assert r(E) == center_trace(E)


@given(seed=st.integers(0, 2**32))
def test_projection_sum_rank(seed):
    rng = rng_for(seed)
    E, F = random_projection(S23, rng), random_projection(S23, rng)
    I = BlockAlgebraElem.identity(S23)
    assert center_rank(E + F) == center_rank(E * (I - F)) + center_rank(F)


@given(seed=st.integers(0, 2**32))
def test_complement_rank_bound(seed):
    rng = rng_for(seed)
    I = BlockAlgebraElem.identity(S23)
    for A in (random_element(S23, rng), random_idempotent(S23, rng)):
        total = center_rank(A) + center_rank(I - A)
        assert cv(1, 1) <= total
        assert (total == cv(1, 1)) == A.is_idempotent()


@given(seed=st.integers(0, 2**32))
def test_subadditivity_random(seed):
    rng = rng_for(seed)
    for A, B in (disjoint_pair(S23, rng), (random_low_rank(S23, rng), random_low_rank(S23, rng))):
        r = subadditivity_check(A, B)
        assert r.subadditive and r.equal == r.condition_holds


@given(seed=st.integers(0, 2**32))
def test_perturbed_families_fail_both(seed):
    rng = rng_for(seed)
    fam = orthogonal_family(S23, 2, rng)
    total = fam[0] + fam[1]
    bad = perturb_family(fam, rng)
    r = cochran_check(bad, total)
    assert r.consistent


@pytest.mark.parametrize("spec", [Q, F3, F5, F7], ids=str)
@given(seed=st.integers(0, 2**32))
def test_two_idempotents_odd_characteristic(spec, seed):
    rng = rng_for(seed)
    n = int(rng.integers(1, 5))
    E1 = idempotent(n, int(rng.integers(0, n + 1)), spec, rng)
    E2 = idempotent(n, int(rng.integers(0, n + 1)), spec, rng)
    assert two_idempotent_sum_check(E1, E2).consistent
    assert two_idempotent_sum_check(E1, ExactMatrix.zeros(spec, n)).sum_idempotent


def test_two_idempotents_fail_in_characteristic_two():
    one = ExactMatrix.identity(F2, 1)
    # 1 + 1 = 0 is idempotent over F2 although 1 * 1 != 0
    assert (one + one).is_idempotent() and not (one @ one).is_zero()
    with pytest.raises(CharTwoUnsupported):
        two_idempotent_sum_check(one, one)


def test_center_value_order():
    assert cv(0, 1) <= cv(1, 1) and not cv(1, 0) <= cv(0, 1)
    with pytest.raises(ShapeMismatch):
        cv(1) + cv(1, 1)


@pytest.mark.parametrize("name", ["cochran", "subadd", "idemsum"])
def test_experiments_are_deterministic(name):
    a = run_experiment(name, S23, 6, seed=3)
    assert a == run_experiment(name, S23, 6, seed=3)
    assert a["pass"] and len(a["records"]) == 6


def test_unknown_experiment():
    with pytest.raises(InputError):
        run_experiment("nope", S23, 1)
