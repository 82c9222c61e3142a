"""Matrix mutation, simultaneous permutation and canonical forms.

Mutation indices and permutations are 1-based. A permutation is given in
one-line notation: ``sigma[i-1]`` is the image of ``i``. Applying ``sigma``
to ``B`` moves entry ``b_ij`` to position ``(sigma(i), sigma(j))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .config import canon_cap, current_checks
from .errors import (
    DimensionTooLarge,
    IndexOutOfRange,
    InternalDisagreement,
    InvalidPermutation,
    ParseError,
)
from .matrix import ExchangeMatrix, Rows, certifies

IntMatrix = tuple[tuple[int, ...], ...]
Permutation = tuple[int, ...]


def _check_index(k: int, n: int) -> None:
    if not 1 <= k <= n:
        raise IndexOutOfRange(k, n)


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def build_mutation_factors(B: ExchangeMatrix, k: int) -> tuple[IntMatrix, IntMatrix]:
    """Return ``(M_k, N_k)`` with ``mu_k(B) = M_k @ B @ N_k``.

    M_k = J + E, where E is zero except column k, e_ik = max(0, -b_ik).
    N_k = J + F, where F is zero except row k, f_ki = max(0, b_ki).
    J is the identity with -1 at (k, k).
    """
    n = B.n
    _check_index(k, n)
    c = k - 1
    rows = B.rows
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    N = [[int(i == j) for j in range(n)] for i in range(n)]
    M[c][c] = N[c][c] = -1
    for i in range(n):
        M[i][c] += max(0, -rows[i][c])
        N[c][i] += max(0, rows[c][i])
    return tuple(map(tuple, M)), tuple(map(tuple, N))


def _mutate_entrywise(rows: Rows, c: int) -> Rows:
    n = len(rows)
    rk = rows[c]
    out = []
    for i in range(n):
        ri = rows[i]
        bik = ri[c]
        if i == c:
            out.append(tuple(-x for x in ri))
            continue
        neg = max(0, -bik)
        new = []
        for j in range(n):
            if j == c:
                new.append(-bik)
            else:
                bkj = rk[j]
                new.append(ri[j] + neg * bkj + bik * max(0, bkj))
        out.append(tuple(new))
    return tuple(out)


def _mutate_by_factors(B: ExchangeMatrix, k: int) -> Rows:
    M, N = build_mutation_factors(B, k)
    return matmul(matmul(M, B.rows), N)


def mutate(B: ExchangeMatrix, k: int) -> ExchangeMatrix:
    """Mutation of ``B`` at ``k`` (1-based).

    Uses the entrywise exchange rule. With mutation checks enabled the
    product ``M_k B N_k`` is also formed and compared, and the result is
    re-validated against ``B``'s symmetrizer.
    """
    _check_index(k, B.n)
    rows = _mutate_entrywise(B.rows, k - 1)
    if current_checks().mutation:
        other = _mutate_by_factors(B, k)
        if other != rows:
            raise InternalDisagreement(
                f"entrywise and factored mutation differ at k={k} for {B!r}: "
                f"{[list(r) for r in rows]} vs {[list(r) for r in other]}"
            )
        if not certifies(B.symmetrizer, rows):
            raise InternalDisagreement(f"symmetrizer of {B!r} does not certify mu_{k}")
        fresh = ExchangeMatrix(rows)
        if fresh.symmetrizer != B.symmetrizer:
            raise InternalDisagreement(f"minimal symmetrizer changed under mu_{k} of {B!r}")
    # components of the nonzero graph survive mutation, so the minimal
    # symmetrizer is unchanged
    return ExchangeMatrix._trusted(rows, B.symmetrizer)


def mutate_sequence(B: ExchangeMatrix, seq: Iterable[int]) -> ExchangeMatrix:
    seq = list(seq)
    for k in seq:
        _check_index(k, B.n)
    for k in seq:
        B = mutate(B, k)
    return B


def check_permutation(sigma: Sequence[int], n: int) -> Permutation:
    sigma = tuple(int(x) for x in sigma)
    if sorted(sigma) != list(range(1, n + 1)):
        raise InvalidPermutation(f"{list(sigma)} is not a permutation of 1..{n}")
    return sigma


def invert(sigma: Sequence[int]) -> Permutation:
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma, 1):
        inv[s - 1] = i
    return tuple(inv)


def compose(outer: Sequence[int], inner: Sequence[int]) -> Permutation:
    """``outer o inner``: apply ``inner`` first."""
    return tuple(outer[s - 1] for s in inner)


def apply_permutation(B: ExchangeMatrix, sigma: Sequence[int]) -> ExchangeMatrix:
    """Return ``P B P^T`` where ``P e_i = e_sigma(i)``.

    The minimal symmetrizer is permuted the same way: d'_sigma(i) = d_i.
    """
    n = B.n
    sigma = check_permutation(sigma, n)
    pre = [s - 1 for s in invert(sigma)]
    rows = B.rows
    out = tuple(tuple(rows[pre[a]][pre[b]] for b in range(n)) for a in range(n))
    d = tuple(B.symmetrizer[pre[a]] for a in range(n))
    return ExchangeMatrix._trusted(out, d)


@dataclass(frozen=True)
class CanonicalForm:
    """``representative == apply_permutation(B, witness)``."""

    representative: ExchangeMatrix
    witness: Permutation


def lexmin_conjugate(rows: Sequence[Sequence[int]]) -> tuple[Rows, list[int]]:
    """Row-major lexicographic minimum of ``P X P^T`` over all permutations.

    Returns the minimum and ``pre``, where result row ``a`` is input row
    ``pre[a]`` (0-based). Depth-first search fixes ``pre[0], pre[1], ...``
    in turn. A partial assignment of t rows is pruned when a lower bound on
    the first t result rows (known entries, then the row's remaining values
    sorted ascending) already exceeds the best matrix found. Vertices whose
    transposition is an automorphism ("twins") give isomorphic subtrees, so
    only the first unused twin is tried at each level. Ties keep the first
    permutation found, so an already-minimal input maps to itself via the
    identity.
    """
    n = len(rows)
    twin = list(range(n))
    for w in range(n):
        for v in range(w):
            if twin[v] == v and _swap_is_automorphism(rows, v, w):
                twin[w] = v
                break
    best: list[tuple[int, ...]] | None = None
    best_pre: list[int] = []
    pre: list[int] = []
    used = [False] * n

    def bound(t: int) -> list[tuple[int, ...]]:
        free = [v for v in range(n) if not used[v]]
        out = []
        for a in range(t):
            r = rows[pre[a]]
            out.append(tuple(r[pre[b]] for b in range(t)) + tuple(sorted(r[v] for v in free)))
        return out

    def search() -> None:
        nonlocal best, best_pre
        t = len(pre)
        if t == n:
            cand = [tuple(rows[pre[a]][pre[b]] for b in range(n)) for a in range(n)]
            if best is None or cand < best:
                best, best_pre = cand, list(pre)
            return
        tried = set()
        for v in range(n):
            if used[v] or twin[v] in tried:
                continue
            tried.add(twin[v])
            pre.append(v)
            used[v] = True
            if best is None or bound(t + 1) <= best[: t + 1]:
                search()
            used[v] = False
            pre.pop()

    search()
    return tuple(best), best_pre


def _swap_is_automorphism(rows: Sequence[Sequence[int]], v: int, w: int) -> bool:
    if rows[v][v] != rows[w][w] or rows[v][w] != rows[w][v]:
        return False
    return all(
        rows[v][x] == rows[w][x] and rows[x][v] == rows[x][w]
        for x in range(len(rows))
        if x != v and x != w
    )


def canonical_form(B: ExchangeMatrix, cap: int | None = None) -> CanonicalForm:
    """Lexicographically minimal simultaneous conjugate ``P B P^T``.

    Exhaustive search with branch-and-bound (see :func:`lexmin_conjugate`);
    refuses dimensions above ``cap`` (default from ``MUTINV_CANON_CAP``, or 8).
    """
    cap = canon_cap() if cap is None else cap
    if B.n > cap:
        raise DimensionTooLarge(B.n, cap)
    best, pre = lexmin_conjugate(B.rows)
    sigma = invert([p + 1 for p in pre])
    d = tuple(B.symmetrizer[p] for p in pre)
    return CanonicalForm(ExchangeMatrix._trusted(best, d), sigma)


def labelled_canonical_form(
    B: ExchangeMatrix, labels: Sequence[int], cap: int | None = None
) -> tuple[Rows, Permutation]:
    """Canonical key for the pair (B, labels) under simultaneous permutation.

    The labels are written onto the (otherwise zero) diagonal before
    minimizing, so only permutations that also carry the labels along are
    identified. Returns the key and the witness permutation.
    """
    cap = canon_cap() if cap is None else cap
    if B.n > cap:
        raise DimensionTooLarge(B.n, cap)
    rows = [list(r) for r in B.rows]
    for i, w in enumerate(labels):
        rows[i][i] = w
    best, pre = lexmin_conjugate(rows)
    return best, invert([p + 1 for p in pre])


def parse_sequence(text: str) -> list[int]:
    """Parse ``"1,3,2"``; the empty string is the empty sequence."""
    text = text.strip()
    if not text:
        return []
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError as exc:
        raise ParseError(f"bad mutation sequence {text!r}") from exc


def format_sequence(seq: Iterable[int]) -> str:
    return ",".join(str(k) for k in seq)


def parse_permutation(text: str, n: int | None = None) -> Permutation:
    try:
        sigma = tuple(int(tok) for tok in text.strip().split(","))
    except ValueError as exc:
        raise ParseError(f"bad permutation {text!r}") from exc
    return check_permutation(sigma, len(sigma) if n is None else n)
