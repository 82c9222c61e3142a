"""Bounded exploration of mutation classes up to simultaneous permutation."""

from __future__ import annotations

import enum
import json
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from typing import IO, Iterable, Sequence

from .config import canon_cap
from .errors import (
    DimensionTooLarge,
    InternalDisagreement,
    InvariantViolation,
    ParseError,
    SymmetrizerMismatch,
)
from .invariants import delta, delta_prime
from .matrix import ExchangeMatrix, Rows, certifies, is_pairwise_coprime, validate
from .mutation import (
    Permutation,
    apply_permutation,
    canonical_form,
    compose,
    invert,
    labelled_canonical_form,
    mutate,
    mutate_sequence,
)

DUMP_FORMAT = "mutinv-class/1"
DEFAULT_MAGNITUDE_LIMIT = 10**60


@dataclass(frozen=True)
class MutationClassReport:
    seed: ExchangeMatrix
    representatives: tuple[ExchangeMatrix, ...]
    delta_values: frozenset[int]
    delta_prime_values: frozenset[int]
    complete: bool
    max_entry_seen: int
    depth_reached: int
    # members left unexpanded because an entry exceeded the magnitude limit
    magnitude_capped: int = 0

    @property
    def members(self) -> int:
        return len(self.representatives)

    def to_json(self) -> dict:
        return {
            "seed": self.seed.to_lists(),
            "members": self.members,
            "delta_values": sorted(self.delta_values),
            "delta_prime_values": sorted(self.delta_prime_values),
            "complete": self.complete,
            "max_entry_seen": str(self.max_entry_seen),
            "depth_reached": self.depth_reached,
            "magnitude_capped": self.magnitude_capped,
        }


@dataclass
class _Node:
    rep: ExchangeMatrix
    depth: int
    delta: int
    delta_prime: int | None = None


def _neighbours(args: tuple[Rows, tuple[int, ...], bool, int]) -> list[tuple[int, Rows, tuple[int, ...], int, int | None]]:
    # top-level so that process pools can pickle it
    rows, d, with_prime, cap = args
    node = ExchangeMatrix._trusted(rows, d)
    out = []
    for k in range(1, node.n + 1):
        canon = canonical_form(mutate(node, k), cap).representative
        dp = delta_prime(canon).residue if with_prime else None
        out.append((k, canon.rows, canon.symmetrizer, delta(canon).residue, dp))
    return out


def _read_dump(lines: Iterable[str]) -> tuple[dict, list[tuple[Rows, int, int]]]:
    it = iter(lines)
    try:
        header = json.loads(next(it))
    except (StopIteration, json.JSONDecodeError) as exc:
        raise ParseError("class dump has no valid header line") from exc
    if header.get("format") != DUMP_FORMAT:
        raise ParseError(f"unsupported dump format {header.get('format')!r}")
    members = []
    for lineno, line in enumerate(it, 2):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            rows = tuple(tuple(int(x) for x in r) for r in obj["canonical"])
            members.append((rows, int(obj["delta"]), int(obj["depth"])))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"dump line {lineno} is malformed") from exc
    return header, members


def explore(
    B: ExchangeMatrix | None,
    max_depth: int,
    max_nodes: int,
    *,
    magnitude_limit: int = DEFAULT_MAGNITUDE_LIMIT,
    cap: int | None = None,
    jobs: int = 1,
    dump: IO[str] | None = None,
    resume: Iterable[str] | None = None,
) -> MutationClassReport:
    """Breadth-first search of the mutation class of ``B`` up to permutation.

    Nodes are canonical forms; each is expanded by mutating at every index.
    Delta (and delta' when the minimal symmetrizer is pairwise coprime) is
    recomputed for every node found, and any change raises
    :class:`InvariantViolation`. ``complete`` is true only when the search
    ran out of new nodes before hitting a budget.

    ``dump`` receives a JSON Lines class dump as nodes are found; ``resume``
    takes the lines of an earlier dump (``B`` may then be None) and
    continues from its members.
    """
    if max_depth < 0 or max_nodes <= 0:
        raise ValueError("budgets must be positive")
    cap = canon_cap() if cap is None else cap
    loaded: list[tuple[Rows, int, int]] = []
    if resume is not None:
        header, loaded = _read_dump(resume)
        resumed_seed = validate(header["seed"])
        if B is not None and B != resumed_seed:
            raise ValueError("seed differs from the dump being resumed")
        B = resumed_seed
    if B is None:
        raise ValueError("need a seed matrix or a dump to resume")
    if B.n > cap:
        raise DimensionTooLarge(B.n, cap)

    with_prime = is_pairwise_coprime(B.symmetrizer)
    start = canonical_form(B, cap).representative
    base_delta = delta(start).residue
    base_prime = delta_prime(start).residue if with_prime else None

    seen: dict[Rows, _Node] = {}
    order: list[_Node] = []

    def record(node: _Node) -> None:
        seen[node.rep.rows] = node
        order.append(node)
        if dump is not None:
            dump.write(json.dumps({
                "canonical": node.rep.to_lists(), "delta": node.delta, "depth": node.depth,
            }) + "\n")

    if dump is not None:
        dump.write(json.dumps({
            "format": DUMP_FORMAT,
            "seed": B.to_lists(),
            "symmetrizer": list(B.symmetrizer),
            "max_depth": max_depth,
            "max_nodes": max_nodes,
            "delta": base_delta,
        }) + "\n")

    if loaded:
        for rows, dv, depth in loaded:
            if dv != base_delta:
                raise InvariantViolation(B, 0, base_delta, dv)
            rep = canonical_form(validate(rows), cap).representative
            if rep.rows not in seen:
                record(_Node(rep, depth, dv, base_prime))
        # nodes already expanded are expanded again; that only revisits seen nodes
        frontier = sorted(order, key=lambda nd: nd.depth)
    else:
        record(_Node(start, 0, base_delta, base_prime))
        frontier = [order[0]]

    complete = True
    capped = 0
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        while frontier:
            depth = frontier[0].depth
            layer = [nd for nd in frontier if nd.depth == depth]
            rest = frontier[len(layer):]
            expandable = []
            for nd in layer:
                if nd.rep.max_abs_entry() > magnitude_limit:
                    capped += 1
                    complete = False
                else:
                    expandable.append(nd)
            args = [(nd.rep.rows, nd.rep.symmetrizer, with_prime, cap) for nd in expandable]
            results = pool.map(_neighbours, args, chunksize=8) if pool else map(_neighbours, args)
            found: list[_Node] = []
            for nd, nbrs in zip(expandable, results):
                for k, rows, d, dv, dp in nbrs:
                    if dv != base_delta:
                        raise InvariantViolation(nd.rep, k, base_delta, dv)
                    if with_prime and dp != base_prime:
                        raise InvariantViolation(nd.rep, k, base_prime, dp)
                    if rows in seen:
                        continue
                    if depth >= max_depth or len(seen) >= max_nodes:
                        complete = False
                        continue
                    node = _Node(ExchangeMatrix._trusted(rows, d), depth + 1, dv, dp)
                    record(node)
                    found.append(node)
                if depth >= max_depth and not complete:
                    break
            frontier = sorted(rest + found, key=lambda nd: nd.depth)
    finally:
        if pool is not None:
            pool.shutdown()

    return MutationClassReport(
        seed=B,
        representatives=tuple(nd.rep for nd in order),
        delta_values=frozenset(nd.delta for nd in order),
        delta_prime_values=frozenset(nd.delta_prime for nd in order if nd.delta_prime is not None),
        complete=complete,
        max_entry_seen=max(nd.rep.max_abs_entry() for nd in order),
        depth_reached=max(nd.depth for nd in order),
        magnitude_capped=capped,
    )


class VerdictKind(enum.Enum):
    PROVABLY_DIFFERENT = "ProvablyDifferent"
    SAME_CLASS = "SameClass"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    # ProvablyDifferent: which statistic separated the inputs, and its values
    statistic: str | None = None
    values: tuple = ()
    # SameClass: permutation(mutate_sequence(B1, sequence)) == B2
    sequence: tuple[int, ...] | None = None
    permutation: Permutation | None = None
    # Unknown: what ran out
    budgets: dict = field(default_factory=dict)

    def describe(self) -> str:
        if self.kind is VerdictKind.PROVABLY_DIFFERENT:
            a, b = self.values
            return f"ProvablyDifferent: {self.statistic} {a} ≠ {b}"
        if self.kind is VerdictKind.SAME_CLASS:
            seq = ",".join(map(str, self.sequence))
            perm = ",".join(map(str, self.permutation))
            return f"SameClass: seq={seq} perm={perm}"
        spent = ", ".join(f"{k}={v}" for k, v in self.budgets.items())
        return f"Unknown: budgets exhausted ({spent})"

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "statistic": self.statistic,
            "values": [v if isinstance(v, (int, str)) else str(v) for v in self.values],
            "sequence": list(self.sequence) if self.sequence is not None else None,
            "permutation": list(self.permutation) if self.permutation is not None else None,
            "budgets": self.budgets,
        }


@dataclass
class _Seen:
    rep: ExchangeMatrix
    labels: tuple[int, ...]
    seq: tuple[int, ...]
    # rep == apply_permutation(mutate_sequence(origin, seq), sigma)
    sigma: Permutation


def _start(B: ExchangeMatrix, w: tuple[int, ...], cap: int) -> tuple[Rows, _Seen]:
    key, sigma = labelled_canonical_form(B, w, cap)
    rep = apply_permutation(B, sigma)
    labels = tuple(w[i - 1] for i in invert(sigma))
    return key, _Seen(rep, labels, (), sigma)


def _step(node: _Seen, k_orig: int, cap: int) -> tuple[Rows, _Seen]:
    # mutating the representative at sigma(k) is mutating the origin path at k
    Y = mutate(node.rep, node.sigma[k_orig - 1])
    key, tau = labelled_canonical_form(Y, node.labels, cap)
    rep = apply_permutation(Y, tau)
    labels = tuple(node.labels[i - 1] for i in invert(tau))
    return key, _Seen(rep, labels, node.seq + (k_orig,), compose(tau, node.sigma))


def _join(a: _Seen, b: _Seen) -> tuple[tuple[int, ...], Permutation]:
    # mu_r(B2) = P_pi mu_s(B1) P_pi^T with pi = rho^-1 o sigma; undo r on the B1 side
    pi = compose(invert(b.sigma), a.sigma)
    pi_inv = invert(pi)
    return a.seq + tuple(pi_inv[j - 1] for j in reversed(b.seq)), pi


def distinguish(
    B1: ExchangeMatrix,
    B2: ExchangeMatrix,
    max_depth: int,
    max_nodes: int,
    *,
    d1: Sequence[int] | None = None,
    d2: Sequence[int] | None = None,
    magnitude_limit: int = DEFAULT_MAGNITUDE_LIMIT,
    cap: int | None = None,
) -> Verdict:
    """Try to decide whether ``B1`` and ``B2`` are mutation equivalent.

    Cheap separating statistics are tried first (dimension, symmetrizer
    multiset, delta, delta'), then a bidirectional breadth-first search
    looks for a mutation sequence plus permutation taking ``B1`` to ``B2``.

    By default the minimal symmetrizers are used. Passing ``d1``/``d2``
    asks the narrower question of whether the pairs (B1, d1) and (B2, d2)
    are related, with the symmetrizer carried along by every permutation.
    """
    if max_depth < 0 or max_nodes <= 0:
        raise ValueError("budgets must be positive")
    cap = canon_cap() if cap is None else cap
    different = VerdictKind.PROVABLY_DIFFERENT
    if B1.n != B2.n:
        return Verdict(different, "dimension", (B1.n, B2.n))
    w1 = tuple(B1.symmetrizer if d1 is None else d1)
    w2 = tuple(B2.symmetrizer if d2 is None else d2)
    for B, w in ((B1, w1), (B2, w2)):
        if not certifies(w, B):
            raise SymmetrizerMismatch(f"{list(w)} does not skew-symmetrize {B!r}")
    if Counter(w1) != Counter(w2):
        return Verdict(different, "symmetrizer", (sorted(w1), sorted(w2)))
    a, b = delta(B1).residue, delta(B2).residue
    if a != b:
        return Verdict(different, "delta", (a, b))
    if is_pairwise_coprime(w1) and is_pairwise_coprime(w2):
        a, b = delta_prime(B1, w1).residue, delta_prime(B2, w2).residue
        if a != b:
            return Verdict(different, "delta'", (a, b))
    if B1.n > cap:
        raise DimensionTooLarge(B1.n, cap)

    key1, s1 = _start(B1, w1, cap)
    key2, s2 = _start(B2, w2, cap)
    sides = [{key1: s1}, {key2: s2}]
    frontiers = [[key1], [key2]]
    depths = [0, 0]
    hit = (s1, s2) if key1 == key2 else None
    while hit is None:
        open_sides = [i for i in (0, 1) if frontiers[i] and depths[i] < max_depth]
        if not open_sides or len(sides[0]) + len(sides[1]) >= max_nodes:
            break
        side = min(open_sides, key=lambda i: (len(frontiers[i]), i))
        mine, theirs = sides[side], sides[1 - side]
        nxt = []
        for key in frontiers[side]:
            node = mine[key]
            if node.rep.max_abs_entry() > magnitude_limit:
                continue
            for k in range(1, node.rep.n + 1):
                nkey, child = _step(node, k, cap)
                if nkey in mine:
                    continue
                if nkey in theirs:
                    hit = (child, theirs[nkey]) if side == 0 else (theirs[nkey], child)
                    break
                if len(sides[0]) + len(sides[1]) >= max_nodes:
                    continue
                mine[nkey] = child
                nxt.append(nkey)
            if hit is not None:
                break
        frontiers[side] = nxt
        depths[side] += 1

    if hit is None:
        return Verdict(
            VerdictKind.UNKNOWN,
            budgets={
                "max_depth": max_depth,
                "max_nodes": max_nodes,
                "visited": len(sides[0]) + len(sides[1]),
                "depths": list(depths),
            },
        )
    seq, pi = _join(*hit)
    if apply_permutation(mutate_sequence(B1, seq), pi) != B2:
        raise InternalDisagreement(f"witness {seq}, {pi} does not replay")
    return Verdict(VerdictKind.SAME_CLASS, sequence=seq, permutation=pi)


def random_exchange_matrix(
    rng: random.Random, d: Sequence[int], entry_bound: int, *, scale: bool = True
) -> ExchangeMatrix:
    """Random matrix skew-symmetrized by ``d``.

    Draws the skew-symmetric matrix C = DB entry by entry: c_ij is a
    uniform multiple of lcm(d_i, d_j) with |c_ij| <= entry_bound * d_i * d_j
    (or <= entry_bound when ``scale`` is false), then B = D^-1 C.
    """
    n = len(d)
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            step = d[i] * d[j] // gcd(d[i], d[j])
            limit = entry_bound * d[i] * d[j] if scale else entry_bound
            c = step * rng.randint(-(limit // step), limit // step)
            rows[i][j] = c // d[i]
            rows[j][i] = -c // d[j]
    return validate(rows)


def binary_evidence(
    n: int, d: Sequence[int], samples: int, entry_bound: int, rng_seed: int
) -> frozenset[int]:
    """Delta residues observed on ``samples`` random matrices compatible with ``d``."""
    if samples <= 0 or entry_bound < 1:
        raise ValueError("need samples > 0 and entry_bound >= 1")
    if len(d) != n or any(x <= 0 for x in d):
        raise ValueError(f"symmetrizer must be {n} positive integers")
    rng = random.Random(rng_seed)
    return frozenset(delta(random_exchange_matrix(rng, d, entry_bound)).residue for _ in range(samples))
