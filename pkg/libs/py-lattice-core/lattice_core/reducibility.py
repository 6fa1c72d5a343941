"""
Coordinate-ideal invariance for families of matrices on R^n.

Closed ideals of R^n are the coordinate subspaces span{e_j : j ∈ S}. Such a
subspace is invariant under a family iff S is closed under reachability in
the support digraph, which has an edge j → i whenever some member has a
nonzero entry in row i, column j.
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from itertools import combinations

from .exceptions import DimensionMismatchError, TooLargeError
from .ratmat import RationalMatrix

MAX_ENUMERATION = 12


@dataclass(frozen=True)
class SupportDigraph:
    """Support digraph on vertices 0..n-1; self-loops are not stored."""

    n: int
    edges: frozenset[tuple[int, int]]

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for src, dst in sorted(self.edges):
            adj[src].append(dst)
        return adj


@dataclass(frozen=True)
class IdealChain:
    """Strictly increasing chain ∅ ⊂ S_1 ⊂ ... ⊂ S_k ⊂ {0..n-1} of invariant index sets."""

    n: int
    subsets: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        previous: frozenset[int] = frozenset()
        for s in self.subsets:
            if not previous < s or len(s) >= self.n:
                raise ValueError("Chain subsets must be strictly increasing and proper")
            previous = s

    @property
    def is_complete(self) -> bool:
        """n-1 interior sets with singleton jumps: a complete decomposition."""
        return len(self.subsets) == self.n - 1

    def to_json(self) -> list[list[int]]:
        return [sorted(s) for s in self.subsets]


def _family_size(family: Sequence[RationalMatrix]) -> int:
    if not family:
        raise DimensionMismatchError("Family must contain at least one matrix")
    n = family[0].rows
    for i, m in enumerate(family):
        if m.shape != (n, n):
            raise DimensionMismatchError(
                f"Member {i} has shape {m.shape}, expected {(n, n)}", {"index": i}
            )
    return n


def support_digraph(family: Sequence[RationalMatrix]) -> SupportDigraph:
    n = _family_size(family)
    edges = {
        (j, i)
        for m in family
        for i in range(n)
        for j in range(n)
        if i != j and m[i, j] != 0
    }
    return SupportDigraph(n=n, edges=frozenset(edges))


def reachability_closure(graph: SupportDigraph, seeds: Iterable[int]) -> frozenset[int]:
    adj = graph.adjacency()
    seen = set(seeds)
    stack = list(seen)
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return frozenset(seen)


def is_closed(graph: SupportDigraph, subset: Iterable[int]) -> bool:
    s = frozenset(subset)
    return all(dst in s for src, dst in graph.edges if src in s)


def is_invariant_ideal(family: Sequence[RationalMatrix], subset: Iterable[int]) -> bool:
    """Direct check: every member maps each e_j, j ∈ subset, into span{e_i : i ∈ subset}."""
    n = _family_size(family)
    s = frozenset(subset)
    for m in family:
        for j in s:
            column = m.col(j)
            if any(column[i] != 0 for i in range(n) if i not in s):
                return False
    return True


def invariant_ideals(
    family: Sequence[RationalMatrix], limit: int = MAX_ENUMERATION
) -> list[frozenset[int]]:
    """All nontrivial invariant coordinate ideals, by exhaustive enumeration."""
    n = _family_size(family)
    if n > limit:
        raise TooLargeError(
            f"Exhaustive enumeration is limited to n <= {limit}, got {n}",
            {"n": n},
        )
    found: list[frozenset[int]] = []
    for size in range(1, n):
        for subset in combinations(range(n), size):
            if is_invariant_ideal(family, subset):
                found.append(frozenset(subset))
    return found


def strongly_connected_components(graph: SupportDigraph) -> list[list[int]]:
    """
    Iterative Tarjan.

    Components are returned in completion order: every component appears
    after all components reachable from it, so sinks come first.
    """
    adj = graph.adjacency()
    index: dict[int, int] = {}
    lowlink: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    components: list[list[int]] = []
    counter = 0

    for root in range(graph.n):
        if root in index:
            continue
        work: list[tuple[int, int]] = [(root, 0)]
        while work:
            v, child = work.pop()
            if child == 0:
                index[v] = lowlink[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            recurse = False
            for pos in range(child, len(adj[v])):
                w = adj[v][pos]
                if w not in index:
                    work.append((v, pos + 1))
                    work.append((w, 0))
                    recurse = True
                    break
                if w in on_stack:
                    lowlink[v] = min(lowlink[v], index[w])
            if recurse:
                continue
            if lowlink[v] == index[v]:
                component: list[int] = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    component.append(w)
                    if w == v:
                        break
                components.append(sorted(component))
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
    return components


def is_ideal_irreducible(family: Sequence[RationalMatrix]) -> bool:
    """No nontrivial invariant coordinate ideal: the support digraph is strongly connected."""
    return len(strongly_connected_components(support_digraph(family))) == 1


def complete_decomposition(family: Sequence[RationalMatrix]) -> list[int] | None:
    """
    Permutation σ making every member upper triangular, or None.

    The conjugated matrix has entries M[σ[k]][σ[l]]; it exists iff every
    strongly connected component is a singleton, and σ lists the vertices
    sinks first.
    """
    components = strongly_connected_components(support_digraph(family))
    if any(len(c) > 1 for c in components):
        return None
    return [c[0] for c in components]


def permute(m: RationalMatrix, sigma: Sequence[int]) -> RationalMatrix:
    """P_σ M P_σᵀ, i.e. the matrix with entries M[σ[k]][σ[l]]."""
    n = m.rows
    if sorted(sigma) != list(range(n)) or not m.is_square:
        raise DimensionMismatchError(f"σ is not a permutation of 0..{n - 1}")
    return RationalMatrix(n, n, tuple(m[sigma[k], sigma[l]] for k in range(n) for l in range(n)))


def maximal_ideal_chain(family: Sequence[RationalMatrix]) -> IdealChain:
    """
    Maximal chain of invariant coordinate ideals by greedy refinement.

    Between consecutive members L ⊂ U, the candidate L ∪ closure(v) for the
    smallest v ∈ U \\ L that gives a proper subset of U is inserted, until no
    gap can be refined.
    """
    graph = support_digraph(family)
    n = graph.n
    chain: list[frozenset[int]] = [frozenset(), frozenset(range(n))]
    refined = True
    while refined:
        refined = False
        for pos in range(len(chain) - 1):
            lower, upper = chain[pos], chain[pos + 1]
            for v in sorted(upper - lower):
                candidate = lower | reachability_closure(graph, [v])
                if candidate != upper:
                    chain.insert(pos + 1, candidate)
                    refined = True
                    break
            if refined:
                break
    return IdealChain(n=n, subsets=tuple(chain[1:-1]))
