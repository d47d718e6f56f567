"""Finding and checking spine / split structure.

A spine partition is a traceable set X, witnessed by an explicit Hamiltonian
path ``x_order`` of D[X], plus a stable set Y covering the rest. Every
search here is deterministic (smallest id first, lexicographic subsets) so
that fuzz failures replay exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .digraph import Digraph, Path, is_path, is_stable_set, iter_bits, to_mask
from .errors import BudgetExceeded, EmptyX, NotSemicomplete

HAMILTONIAN_MAX = 20
SPINE_SEARCH_MAX = 20
TIGHTNESS_BUDGET = 10**6


@dataclass(frozen=True)
class SpinePartition:
    x_order: Path
    y_set: frozenset[int]

    @classmethod
    def of(cls, x_order: Sequence[int], y_set: Iterable[int]) -> "SpinePartition":
        return cls(tuple(x_order), frozenset(y_set))

    @property
    def x_set(self) -> frozenset[int]:
        return frozenset(self.x_order)


@dataclass(frozen=True)
class ZigzagViolation:
    """A vertex of Y that spoils zigzag-freeness of the spine path.

    ``i`` is a 0-based position, only set for ``kind == "zigzag"``: the arcs
    ``(x_order[i], y)`` and ``(y, x_order[i + 1])`` both exist.
    """

    kind: str
    y: int
    i: int | None = None


@dataclass(frozen=True)
class LooseWitness:
    """A k-subset S of X with no Y-vertex adjacent to all of S.

    ``small_x`` marks the other looseness reason, |X| < k, where S is empty.
    """

    s_set: frozenset[int]
    small_x: bool = False


def check_spine_partition(D: Digraph, x_order: Sequence[int], y_set: Iterable[int]) -> list[str]:
    problems: list[str] = []
    y_list = sorted(set(y_set))
    out_of_range = [v for v in list(x_order) + y_list if not 0 <= v < D.n]
    if out_of_range:
        return [f"vertices {sorted(set(out_of_range))} out of range 0..{D.n - 1}"]
    if len(set(x_order)) != len(x_order):
        problems.append(f"x_order {list(x_order)} repeats a vertex")
    both = sorted(set(x_order) & set(y_list))
    if both:
        problems.append(f"vertices {both} are in both X and Y")
    missing = sorted(set(range(D.n)) - set(x_order) - set(y_list))
    if missing:
        problems.append(f"vertices {missing} in neither X nor Y")
    if not is_path(D, x_order):
        problems.append(f"x_order {list(x_order)} is not a path of D")
    if not is_stable_set(D, y_list):
        bad = [(u, v) for u, v in D.sorted_arcs() if u in y_list and v in y_list]
        problems.append(f"Y {y_list} is not stable (arc {bad[0]})")
    return problems


def find_hamiltonian_path(D: Digraph, subset: Iterable[int]) -> Path | None:
    """Backtracking search for a Hamiltonian path of D[subset].

    Starts are tried in increasing id, successors likewise; dead
    (end vertex, visited set) states are remembered. The empty set yields
    the empty path.
    """
    verts = sorted(set(subset))
    if len(verts) > HAMILTONIAN_MAX:
        raise BudgetExceeded(f"Hamiltonian search limited to {HAMILTONIAN_MAX} vertices, got {len(verts)}")
    if not verts:
        return ()
    target = to_mask(verts)
    dead: set[tuple[int, int]] = set()
    path: list[int] = []

    def extend(v: int, visited: int) -> bool:
        if visited == target:
            return True
        if (v, visited) in dead:
            return False
        for w in iter_bits(D.out_mask[v] & target & ~visited):
            path.append(w)
            if extend(w, visited | 1 << w):
                return True
            path.pop()
        dead.add((v, visited))
        return False

    for start in verts:
        path[:] = [start]
        if extend(start, 1 << start):
            return tuple(path)
    return None


def is_semicomplete(D: Digraph, subset: Iterable[int]) -> bool:
    mask = to_mask(subset)
    return all((D.adj_mask(v) | 1 << v) & mask == mask for v in iter_bits(mask))


def hamiltonian_path_semicomplete(D: Digraph, subset: Iterable[int]) -> Path:
    """Insertion construction of a Hamiltonian path in a semi-complete D[subset].

    Vertices are inserted in increasing id: in front of the path if they
    point to its head, else between the first consecutive pair (a, b) with
    arcs (a, v) and (v, b), else at the end.
    """
    verts = sorted(set(subset))
    if not is_semicomplete(D, verts):
        raise NotSemicomplete(f"D[{verts}] is not semi-complete")
    path: list[int] = []
    for v in verts:
        if not path:
            path.append(v)
        elif D.has_arc(v, path[0]):
            path.insert(0, v)
        else:
            for j in range(len(path) - 1):
                if D.has_arc(path[j], v) and D.has_arc(v, path[j + 1]):
                    path.insert(j + 1, v)
                    break
            else:
                path.append(v)
    return tuple(path)


def find_spine_partition(D: Digraph) -> SpinePartition | None:
    """Exhaustive spine search: largest stable Y first, X kept nonempty.

    Stable sets of equal size are tried in lexicographic order of their
    sorted vertex lists; the first Y whose complement is traceable wins.
    """
    if D.n > SPINE_SEARCH_MAX:
        raise BudgetExceeded(f"spine search limited to {SPINE_SEARCH_MAX} vertices, got {D.n}")
    if D.n == 0:
        return SpinePartition((), frozenset())
    for size in range(D.n - 1, -1, -1):
        for ys in combinations(range(D.n), size):
            ymask = to_mask(ys)
            if any(D.adj_mask(y) & ymask for y in ys):
                continue
            x_order = find_hamiltonian_path(D, (v for v in range(D.n) if not ymask >> v & 1))
            if x_order is not None:
                return SpinePartition(x_order, frozenset(ys))
    return None


def find_split_partition(D: Digraph) -> SpinePartition | None:
    """Split partition of the underlying graph from its degree sequence.

    With degrees sorted d_1 >= ... >= d_n and m the largest i with
    d_i >= i - 1, the graph is split iff sum(d_1..d_m) = m(m-1) + sum(d_{m+1}..d_n);
    the m highest-degree vertices then form the clique.
    """
    if D.n == 0:
        return SpinePartition((), frozenset())
    degree = [bin(D.adj_mask(v)).count("1") for v in range(D.n)]
    order = sorted(range(D.n), key=lambda v: (-degree[v], v))
    d = [degree[v] for v in order]
    m = max(i for i in range(1, D.n + 1) if d[i - 1] >= i - 1)
    if sum(d[:m]) != m * (m - 1) + sum(d[m:]):
        return None
    clique, stable = order[:m], order[m:]
    # the characterization guarantees both; keep the invariant loud
    assert is_semicomplete(D, clique) and is_stable_set(D, stable)
    return SpinePartition(hamiltonian_path_semicomplete(D, clique), frozenset(stable))


def zigzag_violation(D: Digraph, spine: SpinePartition) -> ZigzagViolation | None:
    xs = spine.x_order
    if not xs:
        raise EmptyX("zigzag test needs a nonempty spine path")
    first, last = xs[0], xs[-1]
    for y in sorted(spine.y_set):
        if D.has_arc(y, first):
            return ZigzagViolation("enters-first", y)
        if D.has_arc(last, y):
            return ZigzagViolation("leaves-last", y)
        for i in range(len(xs) - 1):
            if D.has_arc(xs[i], y) and D.has_arc(y, xs[i + 1]):
                return ZigzagViolation("zigzag", y, i)
    return None


def is_loose_witness(D: Digraph, spine: SpinePartition, k: int, witness: LooseWitness) -> bool:
    """Does ``witness`` really show that (D, spine) is k-loose?"""
    if witness.small_x:
        return len(spine.x_order) < k
    if len(witness.s_set) != k or not witness.s_set <= spine.x_set:
        return False
    return _common_y_neighbours(D, spine, witness.s_set) == 0


def _common_y_neighbours(D: Digraph, spine: SpinePartition, S: Iterable[int]) -> int:
    common = to_mask(spine.y_set)
    for x in S:
        common &= D.adj_mask(x)
    return common


def classify_tightness(D: Digraph, spine: SpinePartition, k: int) -> LooseWitness | None:
    """Return a looseness witness, or ``None`` when the spine digraph is k-tight.

    Enumerates k-subsets of X (sorted ids, lexicographic) and returns the
    first one without a common neighbour in Y.
    """
    xs = sorted(spine.x_order)
    if len(xs) < k:
        return LooseWitness(frozenset(), small_x=True)
    if math.comb(len(xs), k) > TIGHTNESS_BUDGET:
        raise BudgetExceeded(f"C({len(xs)}, {k}) subsets exceed the budget of {TIGHTNESS_BUDGET}")
    for S in combinations(xs, k):
        if _common_y_neighbours(D, spine, S) == 0:
            return LooseWitness(frozenset(S))
    return None
