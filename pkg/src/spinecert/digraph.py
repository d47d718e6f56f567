"""Immutable digraphs over dense integer vertex ids.

Vertices are ``0..n-1``. Arcs are ordered pairs ``(tail, head)``; loops and
parallel arcs are rejected, opposite arcs (2-cycles) are fine. Adjacency is
kept as per-vertex bitmasks so membership and neighbourhood tests are O(1)
and exhaustive searches can work on plain ints.

A path is just a tuple of vertex ids; its size is its number of vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DuplicateArc, LoopArc, OverlapError, VertexOutOfRange

Path = tuple[int, ...]
Arc = tuple[int, int]


@dataclass(frozen=True)
class Digraph:
    n: int
    arcs: frozenset[Arc]
    out_mask: tuple[int, ...] = field(repr=False, compare=False)
    in_mask: tuple[int, ...] = field(repr=False, compare=False)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_arc(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and 0 <= v < self.n and bool(self.out_mask[u] >> v & 1)

    def adj_mask(self, v: int) -> int:
        """Bitmask of vertices adjacent to ``v`` in either direction."""
        return self.out_mask[v] | self.in_mask[v]

    def sorted_arcs(self) -> list[Arc]:
        return sorted(self.arcs)

    def induced(self, subset: Iterable[int]) -> "Digraph":
        """Sub-digraph induced by ``subset``; vertex ids are kept (others become isolated)."""
        keep = set(subset)
        return make_digraph(self.n, [(u, v) for u, v in self.arcs if u in keep and v in keep])


def make_digraph(n: int, arcs: Iterable[Sequence[int]]) -> Digraph:
    if n < 0:
        raise VertexOutOfRange(f"vertex count must be nonnegative, got {n}")
    seen: set[Arc] = set()
    out_mask = [0] * n
    in_mask = [0] * n
    for pair in arcs:
        u, v = int(pair[0]), int(pair[1])
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"arc ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise LoopArc(f"loop arc ({u}, {u})")
        if (u, v) in seen:
            raise DuplicateArc(f"arc ({u}, {v}) given twice")
        seen.add((u, v))
        out_mask[u] |= 1 << v
        in_mask[v] |= 1 << u
    return Digraph(n, frozenset(seen), tuple(out_mask), tuple(in_mask))


def _check_vertex(D: Digraph, v: int) -> None:
    if not 0 <= v < D.n:
        raise VertexOutOfRange(f"vertex {v} outside 0..{D.n - 1}")


def adjacent(D: Digraph, u: int, v: int) -> bool:
    _check_vertex(D, u)
    _check_vertex(D, v)
    return bool((D.out_mask[u] | D.in_mask[u]) >> v & 1)


def is_stable_set(D: Digraph, S: Iterable[int]) -> bool:
    mask = 0
    for v in S:
        _check_vertex(D, v)
        mask |= 1 << v
    for v in iter_bits(mask):
        if D.adj_mask(v) & mask:
            return False
    return True


def is_path(D: Digraph, seq: Sequence[int]) -> bool:
    if any(not 0 <= v < D.n for v in seq):
        return False
    if len(set(seq)) != len(seq):
        return False
    return all(D.out_mask[a] >> b & 1 for a, b in zip(seq, seq[1:]))


def concat(W: Sequence[int], Q: Sequence[int], D: Digraph | None = None) -> Path:
    """Concatenate two vertex-disjoint paths.

    When ``D`` is given the joining arc ``(ter(W), first(Q))`` must exist.
    """
    overlap = set(W) & set(Q)
    if overlap:
        raise OverlapError(f"paths share vertices {sorted(overlap)}")
    if D is not None and W and Q and not D.has_arc(W[-1], Q[0]):
        raise OverlapError(f"no arc ({W[-1]}, {Q[0]}) to join the paths")
    return tuple(W) + tuple(Q)


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
