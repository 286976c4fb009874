"""Exact matrices over Q, F_p and Qi; Smith forms over K[t]; identity verification."""

from .matrix import ExactMatrix, block_diag, column_basis, companion, eval_poly, inverse, null_space, rank
from .sampling import coprime_basis, sample
from .snf import PolyMatrix, SmithForm, smith_normal_form
from .verify import (
    DEFAULT_BUDGET,
    TrialRecord,
    VerificationReport,
    counterexample_search,
    rank_sum,
    rank_sums,
    two_sided_identities_check,
    verify_identity,
)

__all__ = [
    "DEFAULT_BUDGET",
    "ExactMatrix",
    "PolyMatrix",
    "SmithForm",
    "TrialRecord",
    "VerificationReport",
    "block_diag",
    "column_basis",
    "companion",
    "coprime_basis",
    "counterexample_search",
    "eval_poly",
    "inverse",
    "null_space",
    "rank",
    "rank_sum",
    "rank_sums",
    "sample",
    "smith_normal_form",
    "two_sided_identities_check",
    "verify_identity",
]
