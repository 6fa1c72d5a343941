"""Tests for support digraphs, invariant coordinate ideals and chains."""

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lattice_core.exceptions import DimensionMismatchError, TooLargeError
from lattice_core.ratmat import RationalMatrix, is_upper_triangular
from lattice_core.reducibility import (
    IdealChain,
    complete_decomposition,
    invariant_ideals,
    is_closed,
    is_ideal_irreducible,
    is_invariant_ideal,
    maximal_ideal_chain,
    permute,
    reachability_closure,
    strongly_connected_components,
    support_digraph,
)

CYCLIC = RationalMatrix.from_rows([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
EX1_A = RationalMatrix.from_rows([[0, 1, 0], [-1, 1, 0], [1, 0, 0]])
EX1_B = RationalMatrix.from_rows([[0, 0, 0], [0, 1, 1], [0, 0, 0]])


def shift(n: int) -> RationalMatrix:
    """Weighted-shift pattern S[m-1][m] = 1."""
    return RationalMatrix.from_flat(
        n, n, [1 if j == i + 1 else 0 for i in range(n) for j in range(n)]
    )


def sparse_families(n: int) -> st.SearchStrategy[list[RationalMatrix]]:
    matrix = st.lists(st.sampled_from([0, 0, 0, 1, -1]), min_size=n * n, max_size=n * n).map(
        lambda xs: RationalMatrix.from_flat(n, n, xs)
    )
    return st.lists(matrix, min_size=1, max_size=2)


class TestSupportDigraph:
    """Tests for support_digraph and reachability."""

    def test_diagonal_has_no_edges(self):
        """Test that a diagonal matrix has an empty support digraph."""
        d = RationalMatrix.from_rows([[1, 0, 0], [0, 2, 0], [0, 0, 3]])
        assert support_digraph([d]).edges == frozenset()

    def test_cyclic_edges(self):
        """Test the three edges of the cyclic permutation."""
        assert support_digraph([CYCLIC]).edges == frozenset({(1, 0), (2, 1), (0, 2)})

    def test_adjacency(self):
        """Test that adjacency lists follow the edge direction j -> i."""
        assert support_digraph([CYCLIC]).adjacency() == [[2], [0], [1]]
        assert support_digraph([shift(3)]).adjacency() == [[], [0], [1]]

    def test_reachability(self):
        """Test closure under the shift pattern runs towards index 0."""
        graph = support_digraph([shift(4)])
        assert reachability_closure(graph, [2]) == frozenset({0, 1, 2})
        assert is_closed(graph, {0, 1})
        assert not is_closed(graph, {1, 2})

    def test_empty_family(self):
        """Test that an empty family is rejected."""
        with pytest.raises(DimensionMismatchError):
            support_digraph([])


class TestInvariantIdeals:
    """Tests for enumeration and irreducibility."""

    def test_cyclic_is_irreducible(self):
        """Test that the cyclic permutation leaves no coordinate ideal invariant."""
        assert is_ideal_irreducible([CYCLIC])
        assert invariant_ideals([CYCLIC]) == []

    def test_identity_every_subset_invariant(self):
        """Test that all 2^n - 2 proper subsets are invariant under I."""
        assert len(invariant_ideals([RationalMatrix.identity(3)])) == 6

    def test_too_large(self):
        """Test the exhaustive enumeration size limit."""
        with pytest.raises(TooLargeError):
            invariant_ideals([RationalMatrix.identity(13)])

    @settings(max_examples=60, deadline=None)
    @given(st.integers(2, 5).flatmap(sparse_families))
    def test_closure_matches_direct_check(self, family):
        """Test that digraph closure and the column check give the same ideals."""
        n = family[0].rows
        graph = support_digraph(family)
        closed = {
            frozenset(s)
            for size in range(1, n)
            for s in combinations(range(n), size)
            if is_closed(graph, s)
        }
        assert closed == set(invariant_ideals(family))
        assert is_ideal_irreducible(family) == (not closed)

    def test_components_sinks_first(self):
        """Test that component order puts sinks before their sources."""
        comps = strongly_connected_components(support_digraph([shift(3)]))
        assert comps == [[0], [1], [2]]


class TestCompleteDecomposition:
    """Tests for complete_decomposition and permute."""

    def test_upper_triangular_pair(self):
        """Test that an upper triangular pair needs no permutation."""
        a = RationalMatrix.from_rows([[1, 2], [0, 3]])
        b = RationalMatrix.from_rows([[0, 1], [0, 1]])
        assert complete_decomposition([a, b]) == [0, 1]

    def test_lower_triangular_pair(self):
        """Test that a lower triangular pair is reversed."""
        a = RationalMatrix.from_rows([[1, 0], [1, 1]])
        b = RationalMatrix.from_rows([[2, 0], [3, 1]])
        sigma = complete_decomposition([a, b])
        assert sigma == [1, 0]
        assert is_upper_triangular(permute(a, sigma))
        assert is_upper_triangular(permute(b, sigma))

    def test_example_one_pair(self):
        """Test that the first example pair is not completely decomposable."""
        assert complete_decomposition([EX1_A, EX1_B]) is None

    @settings(max_examples=60, deadline=None)
    @given(st.integers(2, 5).flatmap(sparse_families))
    def test_permutation_triangularizes(self, family):
        """Test that a returned σ makes every member upper triangular with invariant prefixes."""
        sigma = complete_decomposition(family)
        if sigma is None:
            return
        n = len(sigma)
        for m in family:
            assert is_upper_triangular(permute(m, sigma))
        for k in range(1, n):
            assert is_invariant_ideal(family, sigma[:k])

    def test_permute_rejects_non_permutation(self):
        """Test that σ must be a permutation."""
        with pytest.raises(DimensionMismatchError):
            permute(RationalMatrix.identity(2), [0, 0])


class TestMaximalChain:
    """Tests for maximal_ideal_chain and IdealChain."""

    def test_diagonal(self):
        """Test the greedy chain of a diagonal matrix."""
        d = RationalMatrix.from_rows([[1, 0, 0], [0, 2, 0], [0, 0, 3]])
        chain = maximal_ideal_chain([d])
        assert chain.subsets == (frozenset({0}), frozenset({0, 1}))
        assert chain.is_complete
        assert chain.to_json() == [[0], [0, 1]]

    def test_cyclic_empty(self):
        """Test that an irreducible family has an empty chain."""
        chain = maximal_ideal_chain([CYCLIC])
        assert chain.subsets == ()
        assert not chain.is_complete

    def test_shift_prefix_chain(self):
        """Test that the shift pattern gives the prefix sets."""
        chain = maximal_ideal_chain([shift(5)])
        assert chain.to_json() == [[0], [0, 1], [0, 1, 2], [0, 1, 2, 3]]

    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 5).flatmap(sparse_families))
    def test_chain_members_invariant(self, family):
        """Test every chain member is an invariant ideal."""
        for s in maximal_ideal_chain(family).subsets:
            assert is_invariant_ideal(family, s)

    def test_chain_validation(self):
        """Test that non-increasing or improper chains are rejected."""
        with pytest.raises(ValueError):
            IdealChain(n=3, subsets=(frozenset({0, 1}), frozenset({0})))
        with pytest.raises(ValueError):
            IdealChain(n=2, subsets=(frozenset({0, 1}),))
