"""Constructive proof of pi_k(D) <= alpha_k(D) for spine digraphs.

``certify`` never computes pi_k, alpha_k, lambda(D) or global tightness.
It tests zigzag-freeness of the given spine path (cheap), and otherwise runs
the fish-bone recursion lazily: when a level cannot find the Y-vertex it
needs, the vertices collected so far form a k-subset of X with no common
Y-neighbour, i.e. a looseness witness. Every branch therefore ends in a
(partition, colouring) pair matching one of the known bounds.
"""

from __future__ import annotations

from dataclasses import dataclass

from .certificates import (
    Certificate,
    KPartialColoring,
    PathPartition,
    coloring_weight,
    k_norm,
)
from .digraph import Digraph, Path, adjacent, is_path
from .errors import InvalidViolation, InvalidWitness, NotZigzagFree, XSmallerThanK
from .recognition import LooseWitness, SpinePartition, ZigzagViolation, is_loose_witness, zigzag_violation


@dataclass(frozen=True)
class FishboneResult:
    """Two disjoint paths covering X, |p1| + |p2| = |X| + k + 1.

    ``p1`` ends at ``y_terminal`` (a Y-vertex), ``p2`` ends at the last
    vertex of the spine path.
    """

    p1: Path
    p2: Path
    y_terminal: int


def fishbone_problems(D: Digraph, spine: SpinePartition, k: int, result: FishboneResult) -> list[str]:
    """List every fish-bone condition that ``result`` breaks."""
    problems: list[str] = []
    p1, p2 = result.p1, result.p2
    for name, p in (("p1", p1), ("p2", p2)):
        if not p or not is_path(D, p):
            problems.append(f"{name} {list(p)} is not a nonempty path of D")
    if set(p1) & set(p2):
        problems.append(f"paths share {sorted(set(p1) & set(p2))}")
    if len(p1) + len(p2) != len(spine.x_order) + k + 1:
        problems.append(f"|p1|+|p2| = {len(p1) + len(p2)} != |X|+k+1 = {len(spine.x_order) + k + 1}")
    terminals = {p1[-1] if p1 else None, p2[-1] if p2 else None}
    if result.y_terminal not in spine.y_set or terminals != {spine.x_order[-1], result.y_terminal}:
        problems.append(f"terminals {terminals} != {{x_last, y in Y}}")
    if not spine.x_set <= set(p1) | set(p2):
        problems.append(f"X vertices {sorted(spine.x_set - set(p1) - set(p2))} uncovered")
    return problems


def trivial_partition(D: Digraph, spine: SpinePartition) -> PathPartition:
    paths = [spine.x_order] if spine.x_order else []
    paths += [(y,) for y in sorted(spine.y_set)]
    return PathPartition(tuple(paths))


def baseline_coloring(D: Digraph, spine: SpinePartition, k: int) -> KPartialColoring:
    xs = spine.x_order
    singles = xs if len(xs) < k else xs[: k - 1]
    return KPartialColoring(k, (spine.y_set,) + tuple(frozenset((x,)) for x in singles))


def loose_coloring(D: Digraph, spine: SpinePartition, k: int, witness: LooseWitness) -> KPartialColoring:
    """Seed one class per witness vertex and drop every y into the first class it can join."""
    if witness.small_x or len(witness.s_set) != k:
        raise InvalidWitness(f"need a {k}-subset of X, got {sorted(witness.s_set)}")
    seeds = sorted(witness.s_set)
    classes = [{x} for x in seeds]
    for y in sorted(spine.y_set):
        for x, cls in zip(seeds, classes):
            if not adjacent(D, x, y):
                cls.add(y)
                break
        else:
            raise InvalidWitness(f"vertex {y} is adjacent to every witness vertex {seeds}")
    return KPartialColoring(k, tuple(frozenset(c) for c in classes))


def long_path_partition(D: Digraph, spine: SpinePartition, violation: ZigzagViolation) -> PathPartition:
    """Splice the violating Y-vertex into the spine path, giving a path on |X| + 1 vertices."""
    xs, y = spine.x_order, violation.y
    if violation.kind == "enters-first":
        needed = [(y, xs[0])] if xs else []
        q = (y,) + xs
    elif violation.kind == "leaves-last":
        needed = [(xs[-1], y)] if xs else []
        q = xs + (y,)
    elif violation.kind == "zigzag" and violation.i is not None and 0 <= violation.i < len(xs) - 1:
        i = violation.i
        needed = [(xs[i], y), (y, xs[i + 1])]
        q = xs[: i + 1] + (y,) + xs[i + 1:]
    else:
        raise InvalidViolation(f"malformed violation {violation}")
    if not xs or y not in spine.y_set or not all(D.has_arc(a, b) for a, b in needed):
        raise InvalidViolation(f"{violation} is not witnessed by the arcs of D")
    rest = tuple((v,) for v in sorted(spine.y_set - {y}))
    return PathPartition((q,) + rest)


def prefix_orientation_check(D: Digraph, spine: SpinePartition, y: int, t: int) -> bool:
    return all(D.has_arc(x, y) for x in spine.x_order[:t])


def fishbone(D: Digraph, spine: SpinePartition, k: int) -> FishboneResult | LooseWitness:
    """Fish-bone pair for a zigzag-free spine path, or a k-looseness witness.

    Level state: prefix ``xs`` of the spine path, the surviving Y-vertices
    ``ys``, the remaining budget ``kk`` and the cut vertices collected on the
    way down. A Y-vertex adjacent to every cut vertex survives every filter,
    so when a level finds no suitable Y-vertex, (its leading vertices + the
    cuts) has no common Y-neighbour and is returned as the witness.
    """
    if len(spine.x_order) < k:
        raise XSmallerThanK(f"|X| = {len(spine.x_order)} < k = {k}")
    if k < 1:
        raise XSmallerThanK(f"k must be positive, got {k}")
    if zigzag_violation(D, spine) is not None:
        raise NotZigzagFree(f"spine path {list(spine.x_order)} is not zigzag-free")

    def last_out_arc(xs: Path, ys: list[int]) -> tuple[int, int]:
        # max position first, then smallest y
        for i in range(len(xs) - 1, -1, -1):
            for y in ys:
                if D.has_arc(xs[i], y):
                    return i, y
        raise AssertionError("caller guarantees an X->Y arc")

    def level(xs: Path, ys: list[int], kk: int, cuts: tuple[int, ...]) -> tuple[Path, Path, int] | frozenset[int]:
        # returns (path ending at some y, path ending at xs[-1], that y) or a witness set
        if kk == 1:
            y1 = next((y for y in ys if adjacent(D, xs[0], y)), None)
            if y1 is None:
                return frozenset((xs[0],) + cuts)
            assert D.has_arc(xs[0], y1)
            i, y = last_out_arc(xs, ys)
            assert i < len(xs) - 1
            y2 = next((y for y in ys if adjacent(D, xs[i + 1], y)), None)
            if y2 is None:
                return frozenset((xs[i + 1],) + cuts)
            assert D.has_arc(y2, xs[i + 1]) and y2 != y
            return xs[: i + 1] + (y,), (y2,) + xs[i + 1:], y

        head = xs[:kk]
        star = next((y for y in ys if all(adjacent(D, x, y) for x in head)), None)
        if star is None:
            return frozenset(head + cuts)
        assert prefix_orientation_check(D, SpinePartition(xs, frozenset(ys)), star, kk)
        i, y = last_out_arc(xs, ys)
        assert kk - 1 <= i < len(xs) - 1
        cut = xs[i + 1]
        survivors = [yy for yy in ys if adjacent(D, cut, yy)]
        sub = level(xs[: i + 1], survivors, kk - 1, cuts + (cut,))
        if isinstance(sub, frozenset):
            return sub
        to_y, to_x, y_end = sub
        # to_x ends at xs[i]; to_y ends at y_end, which points into the cut vertex
        assert D.has_arc(y_end, cut)
        return to_x + (y,), to_y + xs[i + 1:], y

    out = level(spine.x_order, sorted(spine.y_set), k, ())
    if isinstance(out, frozenset):
        return LooseWitness(out)
    p1, p2, y = out
    return FishboneResult(p1, p2, y)


def _certificate(D: Digraph, k: int, case: str, partition: PathPartition,
                 coloring: KPartialColoring, evidence=None) -> Certificate:
    return Certificate(
        n=D.n,
        k=k,
        case=case,
        partition=partition,
        coloring=coloring,
        k_norm=k_norm(partition, k),
        weight=coloring_weight(coloring),
        evidence=evidence,
    )


def certify(D: Digraph, spine: SpinePartition, k: int) -> Certificate:
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if len(spine.x_order) < k:
        return _certificate(D, k, "small-x", trivial_partition(D, spine), baseline_coloring(D, spine, k))

    violation = zigzag_violation(D, spine)
    if violation is not None:
        return _certificate(D, k, "long-path", long_path_partition(D, spine, violation),
                            baseline_coloring(D, spine, k), violation)

    outcome = fishbone(D, spine, k)
    if isinstance(outcome, FishboneResult):
        broken = fishbone_problems(D, spine, k, outcome)
        assert not broken, broken
        used = set(outcome.p1) | set(outcome.p2)
        rest = tuple((y,) for y in sorted(spine.y_set - used))
        partition = PathPartition((outcome.p1, outcome.p2) + rest)
        return _certificate(D, k, "fishbone", partition, baseline_coloring(D, spine, k), outcome)

    assert is_loose_witness(D, spine, k, outcome), outcome
    return _certificate(D, k, "loose", trivial_partition(D, spine),
                        loose_coloring(D, spine, k, outcome), outcome)
