"""Acceptance criteria, one test per criterion, with the stated sample counts.

``conftest.py`` prints one PASS/FAIL line per criterion after the run.
"""

from __future__ import annotations

import time

import pytest

from conftest import F2, F3, F5, F7, F101, Q
from rankforge._rng import rng_for
from rankforge.errors import CharTwoUnsupported
from rankforge.exactmat import ExactMatrix, counterexample_search, rank, verify_identity
from rankforge.exactmat.sampling import general, idempotent
from rankforge.exactmat.snf import PolyMatrix, smith_normal_form
from rankforge.exactmat.verify import rank_sums
from rankforge.fmonoid import canonical_form_with_zeros
from rankforge.freealg import builtin_certificates, idempotent_identity, verify_certificate
from rankforge.identgen import RankIdentity, ShuffleSpec, check_lattice_condition, make_identity, shuffle_columns
from rankforge.poly import Poly, gcd, parse
from rankforge.vnrank import (
    BlockShape,
    center_rank,
    center_trace,
    cochran_check,
    idempotent_sum_check,
    orthogonal_family,
    perturb_family,
    random_idempotent,
    reconjugate_family,
    run_experiment,
)

SEED = 20260101


def _random_poly(spec, rng, max_degree, monic=False):
    d = int(rng.integers(0, max_degree + 1))
    coeffs = [spec.from_int(int(c)) for c in rng.integers(-3, 4, size=d + 1)]
    if monic:
        coeffs[-1] = spec.one
    return Poly(spec, coeffs)


def _complement_sample(spec):
    """200 general matrices per field, n cycling through 2..6."""
    out = []
    for i in range(200):
        rng = rng_for(SEED, 1, i)
        n = 2 + i % 5
        out.append(general(n, spec, rng))
    return out


FIELDS_1 = [Q, F2, F7, F101]


def test_criterion_01_complement_identity():
    start = time.perf_counter()
    for spec in FIELDS_1:
        for A in _complement_sample(spec):
            n = A.rows
            eye = ExactMatrix.identity(spec, n)
            assert rank(A) + rank(eye - A) == n + rank(A - A @ A)
    assert time.perf_counter() - start < 10


def test_criterion_02_complement_equality_iff_idempotent():
    for spec in FIELDS_1:
        for A in _complement_sample(spec):
            n = A.rows
            eye = ExactMatrix.identity(spec, n)
            holds = rank(A) + rank(eye - A) == n
            if A @ A != A:
                assert not holds
            else:
                assert holds
        for i in range(100):
            rng = rng_for(SEED, 2, i)
            n = 2 + i % 5
            E = idempotent(n, int(rng.integers(0, n + 1)), spec, rng)
            assert E @ E == E
            assert rank(E) + rank(ExactMatrix.identity(spec, n) - E) == n


EXAMPLE_LHS = ("1", "t^4 - 1", "t^5 - t^4 - t + 1")
EXAMPLE_RHS = ("t^4 - 2t^3 + 2t^2 - 2t + 1", "t^2 - 1", "t^3 + t^2 + t + 1")


@pytest.mark.parametrize("spec", [Q, F101], ids=str)
def test_criterion_03_explicit_shuffled_identity(spec):
    start = time.perf_counter()
    lhs = tuple(parse(s, spec) for s in EXAMPLE_LHS)
    rhs = tuple(parse(s, spec) for s in EXAMPLE_RHS)
    assert check_lattice_condition(lhs, rhs)
    report = verify_identity(RankIdentity(spec, lhs, rhs), trials=100, dims=tuple(range(1, 9)), seed=SEED)
    assert len(report.trials) == 100 and report.passed
    assert time.perf_counter() - start < 30


def _random_shuffle_spec(spec, rng):
    n = int(rng.integers(1, 4))
    basis: list[Poly] = []
    while len(basis) < n:
        p = _random_poly(spec, rng, 3, monic=True)
        if p.degree < 1:
            continue
        if all(gcd(p, b).degree == 0 for b in basis):
            basis.append(p)
    m = int(rng.integers(1, 5))
    lam = [[int(x) for x in rng.integers(0, 3, size=n)] for _ in range(m)]
    perms = shuffle_columns(lam, int(rng.integers(0, 2**63)))
    return ShuffleSpec(tuple(basis), lam, perms)


def test_criterion_04_generator_soundness():
    start = time.perf_counter()
    for spec in (Q, F7):
        for i in range(100):
            rng = rng_for(SEED, 4, i)
            shuffle = _random_shuffle_spec(spec, rng)
            ident = make_identity(shuffle)
            assert check_lattice_condition(ident.lhs, ident.rhs)
            report = verify_identity(ident, trials=50, dims=(2, 3, 4), seed=SEED + i)
            assert report.passed, ident.to_dict()
    assert time.perf_counter() - start < 60


def test_criterion_05_smith_form_oracle():
    start = time.perf_counter()
    for spec in (F7, Q):
        for i in range(200):
            rng = rng_for(SEED, 5, i)
            n = int(rng.integers(1, 5))
            diag = []
            for _ in range(n):
                # bias toward shared factors and some zeros
                roll = rng.random()
                if roll < 0.1:
                    diag.append(Poly(spec))
                elif roll < 0.4 and diag and not diag[-1].is_zero():
                    diag.append(diag[-1] * _random_poly(spec, rng, 2))
                else:
                    diag.append(_random_poly(spec, rng, 4))
            elem, zeros = canonical_form_with_zeros(diag, spec)
            factors = smith_normal_form(PolyMatrix.diag(spec, diag)).factors
            nonzero = [f for f in factors if not f.is_zero()]
            assert nonzero == elem.polys()
            assert len(factors) - len(nonzero) == zeros
    assert time.perf_counter() - start < 30


def test_criterion_06_certificate_suite():
    start = time.perf_counter()
    for spec in (Q, F3, F5, F7):
        for cert in builtin_certificates(spec):
            assert verify_certificate(cert).passed, (str(spec), cert.name)
    rank_sub = [c for c in builtin_certificates(F2) if c.name == "thm-rank-sub"]
    assert rank_sub
    with pytest.raises(CharTwoUnsupported):
        verify_certificate(rank_sub[0])
    assert time.perf_counter() - start < 5


BRIDGE = ["diff-rank-i", "diff-rank-ii", "diff-rank-complement", "rank-sub", "comm-anticomm-i", "comm-anticomm-ii"]


def test_criterion_07_certificate_matrix_bridge():
    start = time.perf_counter()
    for name in BRIDGE:
        ident = idempotent_identity(name)
        for spec in (Q, F7):
            if ident.needs_half and spec.characteristic == 2:
                continue
            lhs, rhs = ident.terms(spec)
            for i in range(100):
                rng = rng_for(SEED, 7, i)
                n = 1 + i % 6
                env = {
                    "e": idempotent(n, int(rng.integers(0, n + 1)), spec, rng),
                    "f": idempotent(n, int(rng.integers(0, n + 1)), spec, rng),
                }
                left = sum(rank(t.evaluate(env, n)) for t in lhs)
                right = sum(rank(t.evaluate(env, n)) for t in rhs)
                assert left == right, (name, str(spec), i)
    assert time.perf_counter() - start < 60


@pytest.mark.parametrize("spec", [Q, F7], ids=str)
def test_criterion_08_two_variable_identities(spec):
    for i in range(200):
        rng = rng_for(SEED, 8, i)
        n = 1 + i % 6
        A, B = general(n, spec, rng), general(n, spec, rng)
        eye = ExactMatrix.identity(spec, n)
        assert rank(eye + A @ B) == rank(eye + B @ A)
        assert rank(A) + rank(eye + B @ A) == rank(A + A @ B @ A) + n


def test_criterion_09_counterexample_search():
    found = 0
    i = 0
    while found < 50:
        rng = rng_for(SEED, 9, i)
        i += 1
        k = int(rng.integers(1, 4))
        lhs = [_random_poly(Q, rng, 3) for _ in range(k)]
        rhs = [_random_poly(Q, rng, 3) for _ in range(k)]
        if any(p.is_zero() for p in lhs + rhs) or check_lattice_condition(lhs, rhs):
            continue
        witness = counterexample_search(lhs, rhs, seed=i)
        assert witness is not None, ([str(p) for p in lhs], [str(p) for p in rhs])
        l, r = rank_sums(lhs, rhs, witness)
        assert l != r
        found += 1


def test_criterion_10_subadditivity_equality_condition():
    report = run_experiment("subadd", BlockShape((2, 3)), 200, seed=SEED)
    assert len(report["records"]) == 200
    for rec in report["records"]:
        assert rec["subadditive"]
        assert rec["equal"] == rec["condition_holds"]


def test_criterion_11_orthogonal_idempotent_families():
    shape = BlockShape((2, 3))
    for i in range(100):
        rng = rng_for(SEED, 11, i)
        k = 2 + i % 2
        fam = orthogonal_family(shape, k, rng)
        total = fam[0]
        for e in fam[1:]:
            total = total + e
        r = cochran_check(fam, total)
        assert r.rank_sum_matches and r.mutually_orthogonal_idempotents
        s = idempotent_sum_check(fam)
        assert s.sum_idempotent and s.mutually_orthogonal

        bad = perturb_family(fam, rng)
        r = cochran_check(bad, total)
        assert not r.rank_sum_matches and not r.mutually_orthogonal_idempotents

        other = reconjugate_family(fam, rng)
        s = idempotent_sum_check(other)
        assert s.sum_idempotent == s.mutually_orthogonal
    for i in range(200):
        E = random_idempotent(shape, rng_for(SEED, 12, i))
        assert center_rank(E) == center_trace(E)
