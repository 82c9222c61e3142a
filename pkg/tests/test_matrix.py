from __future__ import annotations

import json
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import B_of
from helpers import adjacent_swap_discrepancy_holds, exchange_matrices
from mutinv.errors import (
    InconsistentRatios,
    NonzeroDiagonal,
    NotPairwiseCoprime,
    NotSquare,
    ParseError,
    SignIncoherent,
    SymmetrizerMismatch,
)
from mutinv.io import dumps_json, dumps_text, read_matrix
from mutinv.matrix import alt_symmetrize, certifies, symmetrize, validate


class TestValidate:
    def test_skew_symmetric(self):
        assert validate([[0, 1], [-1, 0]]).symmetrizer == (1, 1)

    def test_weighted_family(self):
        assert B_of(1, 1, 1).symmetrizer == (1, 2, 3)

    def test_sign_incoherent(self):
        with pytest.raises(SignIncoherent) as exc:
            validate([[0, 1], [1, 0]])
        assert (exc.value.i, exc.value.j) == (1, 2)

    def test_one_sided_zero(self):
        with pytest.raises(SignIncoherent):
            validate([[0, 1], [0, 0]])

    def test_not_square(self):
        with pytest.raises(NotSquare):
            validate([[0, 1, 2], [-1, 0, 3]])
        with pytest.raises(NotSquare):
            validate([])

    def test_nonzero_diagonal(self):
        with pytest.raises(NonzeroDiagonal) as exc:
            validate([[0, 1], [-1, 5]])
        assert exc.value.i == 2

    def test_inconsistent_cycle(self):
        # ratios around 1-2-3 multiply to 2, not 1
        with pytest.raises(InconsistentRatios) as exc:
            validate([[0, 1, 1], [-2, 0, 1], [-1, -1, 0]])
        cyc = exc.value.cycle
        assert cyc[0] == cyc[-1] and sorted(set(cyc)) == [1, 2, 3]

    def test_isolated_vertices_get_one(self):
        B = validate([[0, 2, 0], [-1, 0, 0], [0, 0, 0]])
        assert B.symmetrizer == (1, 2, 1)

    def test_minimal_per_component(self):
        # components {1,2} and {3,4}, each scaled to gcd 1
        B = validate([[0, 3, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
        assert B.symmetrizer == (1, 3, 1, 1)

    def test_entries_untouched(self):
        raw = [[0, 4, -6], [-2, 0, 3], [2, -2, 0]]
        assert validate(raw).to_lists() == raw

    def test_big_entries(self):
        big = 10**40
        B = validate([[0, 2 * big], [-big, 0]])
        assert B.symmetrizer == (1, 2)

    @given(exchange_matrices())
    @settings(max_examples=150, deadline=None)
    def test_symmetrizer_certifies_and_is_minimal(self, B):
        d = B.symmetrizer
        n = B.n
        for i in range(n):
            for j in range(n):
                assert d[i] * B.rows[i][j] + d[j] * B.rows[j][i] == 0
        # connected components of the nonzero graph
        comp = list(range(n))

        def find(v):
            while comp[v] != v:
                v = comp[v]
            return v

        for i in range(n):
            for j in range(n):
                if B.rows[i][j]:
                    comp[find(i)] = find(j)
        groups: dict[int, list[int]] = {}
        for v in range(n):
            groups.setdefault(find(v), []).append(d[v])
        for ws in groups.values():
            assert gcd(*ws) == 1

    @given(exchange_matrices())
    @settings(max_examples=50, deadline=None)
    def test_validate_is_identity_on_entries(self, B):
        assert validate(B.to_lists()) == B


class TestSymmetrize:
    def test_zero(self):
        S = symmetrize(validate([[0, 0], [0, 0]]))
        assert S.entries == (((1, 4), (0, 0)), ((0, 0), (1, 4)))

    def test_weighted_family(self):
        S = symmetrize(B_of(1, 1, 1))
        assert S[1, 2] == (1, 2) and S[1, 3] == (1, 3) and S[2, 3] == (1, 6)
        assert all(S[i, i] == (1, 4) for i in (1, 2, 3))

    def test_sign_from_upper_entry(self):
        S = symmetrize(validate([[0, -3], [1, 0]]))
        assert S[1, 2] == (-1, 3) and S[2, 1] == (-1, 3)

    def test_radicands_not_reduced(self):
        S = symmetrize(validate([[0, 2], [-2, 0]]))
        assert S[1, 2] == (1, 4)

    def test_alt_weighted_family(self):
        S = alt_symmetrize(B_of(1, 1, 1), (1, 2, 3))
        assert [S[i, i] for i in (1, 2, 3)] == [(1, 4), (1, 16), (1, 36)]
        assert [round(S.values()[i][i]) for i in range(3)] == [2, 4, 6]

    def test_alt_trivial_weights(self):
        B = validate([[0, 1, -2], [-1, 0, 3], [2, -3, 0]])
        assert alt_symmetrize(B, (1, 1, 1)) == symmetrize(B)

    def test_alt_not_coprime(self):
        B = validate([[0, 2], [-1, 0]])
        with pytest.raises(NotPairwiseCoprime) as exc:
            alt_symmetrize(B, (2, 4))
        assert (exc.value.i, exc.value.j) == (1, 2)

    def test_alt_mismatch(self):
        with pytest.raises(SymmetrizerMismatch):
            alt_symmetrize(B_of(1, 1, 1), (1, 3, 2))

    @given(exchange_matrices())
    @settings(max_examples=100, deadline=None)
    def test_symmetric_and_canonical_zero(self, B):
        S = symmetrize(B)
        for i in range(B.n):
            for j in range(B.n):
                assert S.entries[i][j] == S.entries[j][i]
                e, m = S.entries[i][j]
                assert (e == 0) == (m == 0)

    @given(exchange_matrices(weights=(1, 2, 3, 5, 7)))
    @settings(max_examples=100, deadline=None)
    def test_alt_agrees_off_diagonal(self, B):
        d = B.symmetrizer
        if any(gcd(d[i], d[j]) > 1 for i in range(B.n) for j in range(i + 1, B.n)):
            return
        S, T = symmetrize(B), alt_symmetrize(B)
        for i in range(B.n):
            for j in range(B.n):
                if i != j:
                    assert S.entries[i][j] == T.entries[i][j]
                else:
                    assert T.entries[i][i] == (1, 4 * d[i] ** 2)


@given(exchange_matrices(max_n=6), st.data())
@settings(max_examples=150, deadline=None)
def test_adjacent_transposition_identity(B, data):
    if B.n < 2:
        return
    k = data.draw(st.integers(1, B.n - 1))
    assert adjacent_swap_discrepancy_holds(B, k)


class TestIO:
    def test_text(self):
        B, d = read_matrix("3\n0 2 3\n-1 0 3\n-1 -2 0\n")
        assert B == B_of(1, 1, 1) and d is None

    def test_json_with_symmetrizer(self):
        B, d = read_matrix('{"n": 3, "entries": [[0,2,0],[-1,0,0],[0,0,0]], "symmetrizer": [1,2,3]}')
        assert B.symmetrizer == (1, 2, 1) and d == (1, 2, 3)

    @pytest.mark.parametrize(
        "text",
        [
            "2\n0 1\n-1 0\n5\n",
            "2\n0 1 7\n-1 0\n",
            "2\n0 x\n-1 0\n",
            "2 2\n0 1\n-1 0\n",
            '{"n": 2, "entries": [[0,1],[-1,0]]} trailing',
            '{"n": 3, "entries": [[0,1],[-1,0]]}',
            '{"n": 2, "entries": [[0,1],[-1,0]], "extra": 1}',
            '{"n": 2, "entries": [[0,1.5],[-1,0]]}',
            "",
        ],
    )
    def test_rejects_garbage(self, text):
        with pytest.raises(ParseError):
            read_matrix(text)

    def test_supplied_symmetrizer_must_certify(self):
        with pytest.raises(SymmetrizerMismatch):
            read_matrix('{"n": 2, "entries": [[0,2],[-1,0]], "symmetrizer": [2,1]}')

    @given(exchange_matrices())
    @settings(max_examples=60, deadline=None)
    def test_round_trips(self, B):
        again, d = read_matrix(dumps_json(B))
        assert again == B and d == B.symmetrizer
        assert read_matrix(dumps_text(B), "text")[0] == B
        assert json.loads(dumps_json(B))["n"] == B.n

    def test_certifies(self):
        assert certifies((1, 2, 3), B_of(1, 1, 1))
        assert not certifies((1, 2, 3, 4), B_of(1, 1, 1))
        assert not certifies((0, 0, 0), B_of(0, 0, 0))
