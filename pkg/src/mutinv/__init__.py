"""Mutation of skew-symmetrizable integer matrices and determinant invariants."""

from .errors import MutinvError
from .explorer import (
    MutationClassReport,
    Verdict,
    VerdictKind,
    binary_evidence,
    distinguish,
    explore,
)
from .invariants import (
    DeltaValue,
    delta,
    delta_prime,
    det_exact,
    perturbation_congruence_check,
    sym_det_expansion,
)
from .matrix import ExchangeMatrix, SymmetrizedMatrix, alt_symmetrize, symmetrize, validate
from .mutation import (
    CanonicalForm,
    apply_permutation,
    build_mutation_factors,
    canonical_form,
    mutate,
    mutate_sequence,
)

__all__ = [
    "CanonicalForm",
    "DeltaValue",
    "ExchangeMatrix",
    "MutationClassReport",
    "MutinvError",
    "SymmetrizedMatrix",
    "Verdict",
    "VerdictKind",
    "alt_symmetrize",
    "apply_permutation",
    "binary_evidence",
    "build_mutation_factors",
    "canonical_form",
    "delta",
    "delta_prime",
    "det_exact",
    "distinguish",
    "explore",
    "mutate",
    "mutate_sequence",
    "perturbation_congruence_check",
    "sym_det_expansion",
    "symmetrize",
    "validate",
]
