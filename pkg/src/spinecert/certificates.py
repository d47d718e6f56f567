"""Path partitions, k-partial colourings and the certificate that pairs them.

Validators never raise on bad input: they return a list of human-readable
violations, empty when everything checks out. All violations are collected,
not just the first one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .digraph import Digraph, Path, is_path

CASES = ("small-x", "long-path", "fishbone", "loose")


@dataclass(frozen=True)
class PathPartition:
    paths: tuple[Path, ...]

    @classmethod
    def of(cls, paths: Iterable[Sequence[int]]) -> "PathPartition":
        return cls(tuple(tuple(p) for p in paths))


@dataclass(frozen=True)
class KPartialColoring:
    k: int
    classes: tuple[frozenset[int], ...]

    @classmethod
    def of(cls, k: int, classes: Iterable[Iterable[int]]) -> "KPartialColoring":
        return cls(k, tuple(frozenset(c) for c in classes))


@dataclass(frozen=True)
class Coloring:
    classes: tuple[frozenset[int], ...]

    @classmethod
    def of(cls, classes: Iterable[Iterable[int]]) -> "Coloring":
        return cls(tuple(frozenset(c) for c in classes))


@dataclass(frozen=True)
class KPath:
    paths: tuple[Path, ...]

    @property
    def k(self) -> int:
        return len(self.paths)

    @classmethod
    def of(cls, paths: Iterable[Sequence[int]]) -> "KPath":
        return cls(tuple(tuple(p) for p in paths))


def k_norm(partition: PathPartition, k: int) -> int:
    return sum(min(len(p), k) for p in partition.paths)


def coloring_weight(C: KPartialColoring) -> int:
    return sum(len(c) for c in C.classes)


def coloring_k_norm(C: Coloring, k: int) -> int:
    return sum(min(len(c), k) for c in C.classes)


def k_path_weight(Pk: KPath) -> int:
    return sum(len(p) for p in Pk.paths)


def validate_path_partition(D: Digraph, P: PathPartition) -> list[str]:
    problems: list[str] = []
    owner: dict[int, int] = {}
    for idx, path in enumerate(P.paths):
        if not path:
            problems.append(f"path #{idx} is empty")
            continue
        if not is_path(D, path):
            problems.append(f"path #{idx} {list(path)} is not a directed path of D")
        for v in path:
            if not 0 <= v < D.n:
                problems.append(f"path #{idx}: vertex {v} out of range")
            elif v in owner:
                problems.append(f"vertex {v} repeated (paths #{owner[v]} and #{idx})")
            else:
                owner[v] = idx
    missing = sorted(set(range(D.n)) - owner.keys())
    if missing:
        problems.append(f"vertices {missing} uncovered")
    return problems


def _stability_problems(D: Digraph, classes: Sequence[frozenset[int]]) -> list[str]:
    problems: list[str] = []
    owner: dict[int, int] = {}
    for idx, cls in enumerate(classes):
        members = sorted(cls)
        for v in members:
            if not 0 <= v < D.n:
                problems.append(f"class #{idx}: vertex {v} out of range")
            elif v in owner and owner[v] != idx:
                problems.append(f"vertex {v} in classes #{owner[v]} and #{idx}")
            else:
                owner[v] = idx
        for i, u in enumerate(members):
            for v in members[i + 1:]:
                if 0 <= u < D.n and 0 <= v < D.n and (D.has_arc(u, v) or D.has_arc(v, u)):
                    problems.append(f"class #{idx} not stable: {u},{v} adjacent")
    return problems


def validate_k_partial_coloring(D: Digraph, C: KPartialColoring) -> list[str]:
    problems = _stability_problems(D, C.classes)
    if C.k < 1:
        problems.append(f"k must be positive, got {C.k}")
    if len(C.classes) > C.k:
        problems.append(f"{len(C.classes)} classes > k={C.k}")
    return problems


def validate_coloring(D: Digraph, C: Coloring) -> list[str]:
    problems = _stability_problems(D, C.classes)
    covered = set().union(*C.classes) if C.classes else set()
    missing = sorted(set(range(D.n)) - covered)
    if missing:
        problems.append(f"vertices {missing} uncoloured")
    return problems


def validate_k_path(D: Digraph, Pk: KPath) -> list[str]:
    problems: list[str] = []
    seen: set[int] = set()
    for idx, path in enumerate(Pk.paths):
        if not is_path(D, path):
            problems.append(f"path #{idx} {list(path)} is not a directed path of D")
        clash = seen & set(path)
        if clash:
            problems.append(f"path #{idx} reuses vertices {sorted(clash)}")
        seen |= set(path)
    return problems


@dataclass(frozen=True)
class Certificate:
    """A (partition, colouring) pair with ``k_norm <= weight``.

    ``evidence`` carries the object the construction branch worked from
    (zigzag violation, fish-bone pair or loose witness); it is not serialized.
    """

    n: int
    k: int
    case: str
    partition: PathPartition
    coloring: KPartialColoring
    k_norm: int
    weight: int
    spine_source: str | None = None
    evidence: Any = field(default=None, compare=False, repr=False)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "n": self.n,
            "k": self.k,
            "case": self.case,
            "partition": [list(p) for p in self.partition.paths],
            "coloring": [sorted(c) for c in self.coloring.classes],
            "k_norm": self.k_norm,
            "weight": self.weight,
        }
        if self.spine_source is not None:
            out["spine_source"] = self.spine_source
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Certificate":
        k = int(data["k"])
        return cls(
            n=int(data["n"]),
            k=k,
            case=str(data["case"]),
            partition=PathPartition.of(data["partition"]),
            coloring=KPartialColoring.of(k, data["coloring"]),
            k_norm=int(data["k_norm"]),
            weight=int(data["weight"]),
            spine_source=data.get("spine_source"),
        )

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        return cls.from_dict(json.loads(text))


def verify_certificate(D: Digraph, cert: Certificate) -> list[str]:
    """Re-check a certificate from scratch against ``D``."""
    problems: list[str] = []
    if cert.n != D.n:
        problems.append(f"certificate is for n={cert.n}, digraph has n={D.n}")
    if cert.case not in CASES:
        problems.append(f"unknown case tag {cert.case!r}")
    if cert.coloring.k != cert.k:
        problems.append(f"colouring built for k={cert.coloring.k}, certificate says k={cert.k}")
    problems += [f"partition: {p}" for p in validate_path_partition(D, cert.partition)]
    problems += [f"coloring: {p}" for p in validate_k_partial_coloring(D, cert.coloring)]
    norm = k_norm(cert.partition, cert.k)
    weight = coloring_weight(cert.coloring)
    if norm != cert.k_norm:
        problems.append(f"norm mismatch: recorded k_norm={cert.k_norm}, recomputed {norm}")
    if weight != cert.weight:
        problems.append(f"weight mismatch: recorded weight={cert.weight}, recomputed {weight}")
    if norm > weight:
        problems.append(f"inequality fails: k_norm {norm} > weight {weight}")
    return problems
