"""Randomized consistency checks shipped with the package."""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import invariants, mutation
from .explorer import random_exchange_matrix
from .matrix import ExchangeMatrix, alt_symmetrize, is_pairwise_coprime, symmetrize

WEIGHTS = (1, 1, 1, 2, 3, 5)


@dataclass(frozen=True)
class Failure:
    check: str
    matrix: ExchangeMatrix
    detail: str


def _check_one(B: ExchangeMatrix, k: int) -> list[Failure]:
    out = []
    mu = mutation.mutate(B, k)
    if mutation.mutate(mu, k) != B:
        out.append(Failure("involution", B, f"mu_{k} mu_{k} B != B"))
    by_factors = mutation._mutate_by_factors(B, k)
    if by_factors != mu.rows:
        out.append(Failure("factor-form", B, f"M_{k} B N_{k} = {by_factors} but entrywise gave {mu.rows}"))
    fast = invariants.sym_det(B)
    slow = invariants.sym_det_expansion(symmetrize(B))
    if fast != slow:
        out.append(Failure("det-oracle", B, f"Bareiss {fast} vs expansion {slow}"))
    if invariants.sym_det(mu) % 4 != fast % 4:
        out.append(Failure("delta-invariance", B, f"delta changed under mu_{k}"))
    if is_pairwise_coprime(B.symmetrizer):
        d = B.symmetrizer
        fast_p = invariants.det_exact(invariants._folded(B, d))
        slow_p = invariants.sym_det_expansion(alt_symmetrize(B))
        if fast_p != slow_p:
            out.append(Failure("det'-oracle", B, f"Bareiss {fast_p} vs expansion {slow_p}"))
    return out


def run(samples: int = 200, seed: int = 20240611, max_n: int = 6) -> list[Failure]:
    """Run ``samples`` randomized checks; returns the failures (empty on pass)."""
    rng = random.Random(seed)
    failures: list[Failure] = []
    for _ in range(samples):
        n = rng.randint(2, max_n)
        d = [rng.choice(WEIGHTS) for _ in range(n)]
        B = random_exchange_matrix(rng, d, rng.randint(1, 4))
        try:
            failures.extend(_check_one(B, rng.randint(1, n)))
        except Exception as exc:  # any crash is a failed check
            failures.append(Failure("exception", B, repr(exc)))
    return failures
