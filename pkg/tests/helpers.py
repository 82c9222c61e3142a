"""Shared hypothesis strategies and checkers."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from mutinv.explorer import random_exchange_matrix
from mutinv.matrix import symmetrize
from mutinv.mutation import apply_permutation


@st.composite
def exchange_matrices(draw, max_n=6, weights=(1, 2, 3, 4, 5, 6)):
    n = draw(st.integers(1, max_n))
    d = draw(st.lists(st.sampled_from(weights), min_size=n, max_size=n))
    seed = draw(st.integers(0, 2**32))
    return random_exchange_matrix(random.Random(seed), d, draw(st.integers(1, 4)))



def adjacent_swap_discrepancy_holds(B, k: int) -> bool:
    """P S(B) P^T - S(P B P^T) == 2 sgn(b_k,k+1) sqrt|b_k,k+1 b_k+1,k| (E_k,k+1 + E_k+1,k)."""
    n = B.n
    sigma = list(range(1, n + 1))
    sigma[k - 1], sigma[k] = sigma[k], sigma[k - 1]
    S = symmetrize(B).entries
    # P S P^T: entry (sigma(i), sigma(j)) = S[i][j]
    moved = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            moved[sigma[i] - 1][sigma[j] - 1] = S[i][j]
    T = symmetrize(apply_permutation(B, sigma)).entries
    b, c = B.rows[k - 1][k], B.rows[k][k - 1]
    expected_sign, m = (b > 0) - (b < 0), abs(b * c)
    for i in range(n):
        for j in range(n):
            if {i, j} == {k - 1, k}:
                # moved - T = 2 e sqrt(m)  <=>  moved = (e, m), T = (-e, m)
                if moved[i][j] != (expected_sign, m) or T[i][j] != (-expected_sign, m):
                    return False
            elif moved[i][j] != T[i][j]:
                return False
    return True
