"""Exchange matrices, skew-symmetrizers and symbolic symmetrizations.

Indices in the public API are 1-based; entries are stored 0-based.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import (
    InconsistentRatios,
    NonzeroDiagonal,
    NotPairwiseCoprime,
    NotSquare,
    SignIncoherent,
    SymmetrizerMismatch,
)

Rows = tuple[tuple[int, ...], ...]
Symmetrizer = tuple[int, ...]
# (sign, radicand) with value sign * sqrt(radicand)
RadicalEntry = tuple[int, int]


def _sgn(x: int) -> int:
    return (x > 0) - (x < 0)


class ExchangeMatrix:
    """A validated skew-symmetrizable integer matrix.

    Build one with :func:`validate` (or ``ExchangeMatrix(rows)``, which is the
    same thing). Instances are immutable and hashable; the minimal
    skew-symmetrizer is computed once at construction.
    """

    __slots__ = ("_rows", "_d", "_hash")

    def __init__(self, rows: Iterable[Iterable[int]]):
        checked = _coerce(rows)
        self._rows = checked
        self._d = minimal_symmetrizer(checked)
        self._hash = hash(checked)

    @classmethod
    def _trusted(cls, rows: Rows, d: Symmetrizer) -> ExchangeMatrix:
        # caller guarantees rows are valid and d is their minimal symmetrizer
        self = object.__new__(cls)
        self._rows = rows
        self._d = d
        self._hash = hash(rows)
        return self

    @property
    def n(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> Rows:
        return self._rows

    @property
    def symmetrizer(self) -> Symmetrizer:
        return self._d

    def __getitem__(self, ij: tuple[int, int]) -> int:
        """1-based entry access: ``B[i, j]`` is b_ij."""
        i, j = ij
        return self._rows[i - 1][j - 1]

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def max_abs_entry(self) -> int:
        return max((abs(x) for r in self._rows for x in r), default=0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExchangeMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"ExchangeMatrix({self.to_lists()!r})"


def _coerce(rows: Iterable[Iterable[int]]) -> Rows:
    out = tuple(tuple(int(x) for x in r) for r in rows)
    n = len(out)
    bad = [len(r) for r in out if len(r) != n]
    if n == 0 or bad:
        raise NotSquare(f"{n} rows, row lengths {[len(r) for r in out]}")
    for i in range(n):
        if out[i][i] != 0:
            raise NonzeroDiagonal(i + 1)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = out[i][j], out[j][i]
            if (a == 0) != (b == 0) or a * b > 0:
                raise SignIncoherent(i + 1, j + 1)
    return out


def validate(raw: Iterable[Iterable[int]]) -> ExchangeMatrix:
    """Check that ``raw`` is skew-symmetrizable and wrap it.

    Raises one of :class:`NotSquare`, :class:`NonzeroDiagonal`,
    :class:`SignIncoherent` or :class:`InconsistentRatios`.
    """
    return ExchangeMatrix(raw)


def minimal_symmetrizer(rows: Rows) -> Symmetrizer:
    """Minimal positive weights d with d_i*b_ij = -d_j*b_ji.

    Ratios are propagated breadth-first over the graph of nonzero entries;
    each connected component is scaled to integers with gcd 1. Assumes
    zero diagonal and sign coherence have already been checked.
    """
    n = len(rows)
    ratio: list[Fraction | None] = [None] * n
    parent: list[int] = [-1] * n
    d = [0] * n
    for root in range(n):
        if ratio[root] is not None:
            continue
        ratio[root] = Fraction(1)
        component = [root]
        queue = deque([root])
        while queue:
            i = queue.popleft()
            for j in range(n):
                bij = rows[i][j]
                if bij == 0:
                    continue
                # d_j = d_i * |b_ij| / |b_ji|
                want = ratio[i] * abs(bij) / abs(rows[j][i])
                if ratio[j] is None:
                    ratio[j] = want
                    parent[j] = i
                    component.append(j)
                    queue.append(j)
                elif ratio[j] != want:
                    raise InconsistentRatios(_cycle(parent, i, j))
        scale = lcm(*(ratio[v].denominator for v in component))
        ints = [int(ratio[v] * scale) for v in component]
        g = gcd(*ints)
        for v, x in zip(component, ints):
            d[v] = x // g
    return tuple(d)


def _cycle(parent: list[int], i: int, j: int) -> list[int]:
    def chain(v: int) -> list[int]:
        out = [v]
        while parent[v] != -1:
            v = parent[v]
            out.append(v)
        return out

    up_i, up_j = chain(i), chain(j)
    common = set(up_i) & set(up_j)
    head_i = []
    for v in up_i:
        head_i.append(v)
        if v in common:
            break
    meet = head_i[-1]
    head_j = up_j[: up_j.index(meet)]
    # meet -> ... -> i -> j -> ... -> meet
    cyc = list(reversed(head_i)) + head_j + [meet]
    return [v + 1 for v in cyc]


def certifies(d: Sequence[int], B: ExchangeMatrix | Rows) -> bool:
    """True when every d_i > 0 and d_i*b_ij + d_j*b_ji == 0 for all i, j."""
    rows = B.rows if isinstance(B, ExchangeMatrix) else B
    n = len(rows)
    if len(d) != n or any(x <= 0 for x in d):
        return False
    return all(
        d[i] * rows[i][j] + d[j] * rows[j][i] == 0
        for i in range(n)
        for j in range(i + 1, n)
    )


def check_pairwise_coprime(d: Sequence[int]) -> None:
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            if gcd(d[i], d[j]) != 1:
                raise NotPairwiseCoprime(i + 1, j + 1)


def is_pairwise_coprime(d: Sequence[int]) -> bool:
    try:
        check_pairwise_coprime(d)
    except NotPairwiseCoprime:
        return False
    return True


@dataclass(frozen=True)
class SymmetrizedMatrix:
    """Symmetric matrix whose entries are exact radicals sign*sqrt(radicand).

    ``weights`` records the skew-symmetrizer the radicands were built from;
    the integrality argument for the determinant depends on it.
    """

    entries: tuple[tuple[RadicalEntry, ...], ...]
    weights: Symmetrizer

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> RadicalEntry:
        i, j = ij
        return self.entries[i - 1][j - 1]

    def values(self) -> list[list[float]]:
        """Floating-point view, for display only."""
        return [[s * m ** 0.5 for s, m in row] for row in self.entries]


def _symmetrized(B: ExchangeMatrix, diag: Sequence[int], d: Symmetrizer) -> SymmetrizedMatrix:
    rows = B.rows
    n = B.n
    out = [[(0, 0)] * n for _ in range(n)]
    for i in range(n):
        out[i][i] = (1, 4 * diag[i] * diag[i])
        for j in range(i + 1, n):
            m = abs(rows[i][j] * rows[j][i])
            e = (_sgn(rows[i][j]), m)
            out[i][j] = out[j][i] = e
    return SymmetrizedMatrix(tuple(map(tuple, out)), d)


def symmetrize(B: ExchangeMatrix) -> SymmetrizedMatrix:
    """Diagonal 2; entry (i,j), i<j, is sgn(b_ij)*sqrt|b_ij*b_ji|, mirrored.

    Radicands are kept exactly as |b_ij*b_ji|, never square-reduced.
    """
    return _symmetrized(B, [1] * B.n, B.symmetrizer)


def alt_symmetrize(B: ExchangeMatrix, d: Sequence[int] | None = None) -> SymmetrizedMatrix:
    """Like :func:`symmetrize` but with diagonal 2*d_i.

    ``d`` defaults to the minimal symmetrizer of ``B`` and must be pairwise
    coprime and certify ``B``.
    """
    d = B.symmetrizer if d is None else tuple(int(x) for x in d)
    check_pairwise_coprime(d)
    if not certifies(d, B):
        raise SymmetrizerMismatch(f"{list(d)} does not skew-symmetrize {B!r}")
    return _symmetrized(B, d, d)
