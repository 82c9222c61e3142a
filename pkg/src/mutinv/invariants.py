"""Exact determinants of symmetrized matrices and the delta invariants.

Two independent routes to det S(B) are provided:

* :func:`sym_det_expansion` sums the Leibniz expansion directly over the
  radical entries.  Every permutation term is an integer because, along
  each cycle of the permutation, the product of radicands is a perfect
  square.
* The fast path used by :func:`delta` and :func:`delta_prime` relies on
  S(B) = D^(1/2) (2I + F) D^(-1/2), where F is B with its strictly lower
  triangle negated.  It computes det(2I + F) by Bareiss elimination.  The
  identity is checked against the expansion whenever delta checks are on.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt, prod
from typing import Sequence

from .config import DEFAULT_EXPANSION_CAP, DELTA_ORACLE_MAX_N, current_checks
from .errors import (
    DimensionTooLarge,
    InternalDisagreement,
    NotPerfectSquare,
    PreconditionViolated,
    SymmetrizerMismatch,
)
from .matrix import (
    ExchangeMatrix,
    SymmetrizedMatrix,
    alt_symmetrize,
    certifies,
    check_pairwise_coprime,
    symmetrize,
)

# entry (i, j) as a sum of terms coef * sqrt(radicand)
RadicalSum = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class DeltaValue:
    residue: int
    modulus: int
    raw_det: int

    def to_json(self) -> dict:
        return {"residue": self.residue, "modulus": self.modulus, "det": str(self.raw_det)}

    @classmethod
    def from_json(cls, obj: dict) -> DeltaValue:
        return cls(int(obj["residue"]), int(obj["modulus"]), int(obj["det"]))


def det_exact(M: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free Bareiss elimination."""
    a = [list(r) for r in M]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def radical_sum_det(entries: Sequence[Sequence[RadicalSum]], cap: int = DEFAULT_EXPANSION_CAP) -> int:
    """Leibniz expansion of a matrix whose entries are sums of signed radicals.

    Permutations are enumerated cycle by cycle, so each cycle's radicand
    product can be checked for being a perfect square as soon as it
    closes. Zero entries (empty sums) prune the search.
    """
    n = len(entries)
    if n > cap:
        raise DimensionTooLarge(n, cap)
    used = [False] * n
    total = 0

    def next_cycle(acc: int) -> None:
        nonlocal total
        for s in range(n):
            if not used[s]:
                break
        else:
            total += acc
            return
        used[s] = True
        walk(s, s, [s], 1, 1, acc)
        used[s] = False

    def walk(start: int, c: int, cyc: list[int], coef: int, rad: int, acc: int) -> None:
        row = entries[c]
        for cf, m in row[start]:
            r2 = rad * m
            r = isqrt(r2)
            if r * r != r2:
                raise NotPerfectSquare(tuple(v + 1 for v in cyc), r2)
            value = coef * cf * r
            if len(cyc) % 2 == 0:
                value = -value
            next_cycle(acc * value)
        for x in range(start + 1, n):
            if used[x] or not row[x]:
                continue
            used[x] = True
            cyc.append(x)
            for cf, m in row[x]:
                walk(start, x, cyc, coef * cf, rad * m, acc)
            cyc.pop()
            used[x] = False

    next_cycle(1)
    return total


def _as_sums(S: SymmetrizedMatrix) -> list[list[RadicalSum]]:
    return [[((e, m),) if e else () for e, m in row] for row in S.entries]


def sym_det_expansion(S: SymmetrizedMatrix, cap: int = DEFAULT_EXPANSION_CAP) -> int:
    """Exact det S by expansion over all permutations (oracle; n <= cap)."""
    return radical_sum_det(_as_sums(S), cap)


def _folded(B: ExchangeMatrix, diag: Sequence[int]) -> list[list[int]]:
    rows = B.rows
    n = B.n
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                out[i][j] = 2 * diag[i]
            elif i < j:
                out[i][j] = rows[i][j]
            else:
                out[i][j] = -rows[i][j]
    return out


def _cross_check(fast: int, S: SymmetrizedMatrix, what: str) -> None:
    if current_checks().delta and S.n <= DELTA_ORACLE_MAX_N:
        slow = sym_det_expansion(S)
        if slow != fast:
            raise InternalDisagreement(f"{what}: Bareiss gave {fast}, expansion gave {slow}")


def sym_det(B: ExchangeMatrix) -> int:
    """det S(B) via the fast path."""
    return det_exact(_folded(B, [1] * B.n))


def delta(B: ExchangeMatrix) -> DeltaValue:
    """det S(B) reduced mod 4."""
    det = sym_det(B)
    _cross_check(det, symmetrize(B), f"det S({B!r})")
    return DeltaValue(det % 4, 4, det)


def delta_prime(B: ExchangeMatrix, d: Sequence[int] | None = None) -> DeltaValue:
    """det S'(B) reduced mod 4*prod(d), for pairwise coprime ``d``.

    ``d`` defaults to the minimal symmetrizer of ``B``.
    """
    d = B.symmetrizer if d is None else tuple(int(x) for x in d)
    check_pairwise_coprime(d)
    if not certifies(d, B):
        raise SymmetrizerMismatch(f"{list(d)} does not skew-symmetrize {B!r}")
    det = det_exact(_folded(B, d))
    _cross_check(det, alt_symmetrize(B, d), f"det S'({B!r})")
    p = prod(d)
    if det % p:
        raise InternalDisagreement(f"det S'({B!r}) = {det} is not divisible by {p}")
    return DeltaValue(det % (4 * p), 4 * p, det)


def perturbation_congruence_check(
    S: SymmetrizedMatrix, i: int, j: int, eps: int, b_ij: int, b_ji: int
) -> bool:
    """Whether det(S - 2a(E_ij + E_ji)) == det(S) mod 4, a = eps*sqrt|b_ij*b_ji|.

    Indices are 1-based. ``b_ij, b_ji`` must satisfy
    d_i*b_ij = -d_j*b_ji for the weights ``S`` was built with.
    """
    n = S.n
    if not (1 <= i <= n and 1 <= j <= n) or i == j:
        raise PreconditionViolated(f"need distinct indices in 1..{n}, got ({i},{j})")
    d = S.weights
    if d[i - 1] * b_ij != -d[j - 1] * b_ji:
        raise PreconditionViolated(
            f"d_{i}*b_ij = {d[i - 1] * b_ij} but -d_{j}*b_ji = {-d[j - 1] * b_ji}"
        )
    base = _as_sums(S)
    bumped = [list(r) for r in base]
    m = abs(b_ij * b_ji)
    if eps and m:
        extra = ((-2 * eps, m),)
        bumped[i - 1][j - 1] = base[i - 1][j - 1] + extra
        bumped[j - 1][i - 1] = base[j - 1][i - 1] + extra
    return (radical_sum_det(bumped) - radical_sum_det(base)) % 4 == 0
