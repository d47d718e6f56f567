from dataclasses import replace
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from spinecert.certificates import (
    Certificate,
    Coloring,
    KPartialColoring,
    KPath,
    PathPartition,
    coloring_k_norm,
    coloring_weight,
    k_norm,
    k_path_weight,
    validate_coloring,
    validate_k_partial_coloring,
    validate_k_path,
    validate_path_partition,
    verify_certificate,
)
from spinecert.digraph import make_digraph

from . import brute


def test_k_norm_examples():
    assert k_norm(PathPartition.of([(0, 1, 2, 3, 4)]), 2) == 2
    split = PathPartition.of([(0, 1), (2,), (3, 4)])
    assert k_norm(split, 1) == 3
    assert k_norm(split, 5) == 5


def test_c5_max_stable_pair_weight(c5):
    # brute force: the best two disjoint stable sets of C5 cover 4 vertices
    stables = [set(s) for r in range(6) for s in combinations(range(5), r) if brute.stable(c5, s)]
    best = max(len(a) + len(b) for a in stables for b in stables if not a & b)
    assert best == 4
    assert coloring_weight(KPartialColoring.of(2, [{0, 2}, {1, 3}])) == best


def test_weights_trivial():
    assert coloring_weight(KPartialColoring.of(3, [set(), set(), set()])) == 0
    assert coloring_weight(KPartialColoring.of(1, [{0}])) == 1
    assert k_path_weight(KPath.of([(), ()])) == 0
    assert k_path_weight(KPath.of([(0, 1), (3,)])) == 3


def test_coloring_k_norm(c5):
    col = Coloring.of([{0, 2}, {1, 3}, {4}])
    assert validate_coloring(c5, col) == []
    assert brute.chi_k(c5, 1) == 3
    assert coloring_k_norm(col, 1) == 3
    assert coloring_k_norm(col, 2) == 5
    assert coloring_k_norm(Coloring.of([{0}]), 7) == 1


def test_k_path_weight_c5(c5):
    ham = KPath.of([(0, 1, 2, 3, 4)])
    assert validate_k_path(c5, ham) == []
    assert k_path_weight(ham) == 5


def test_validate_path_partition(c5):
    assert validate_path_partition(c5, PathPartition.of([(0, 1, 2, 3, 4)])) == []
    repeated = validate_path_partition(c5, PathPartition.of([(0, 1), (1, 2), (3,), (4,)]))
    assert any("vertex 1 repeated" in p for p in repeated)
    uncovered = validate_path_partition(c5, PathPartition.of([(0, 1)]))
    assert uncovered == ["vertices [2, 3, 4] uncovered"]
    assert validate_path_partition(c5, PathPartition.of([(0, 2), (1,), (3,), (4,)]))


def test_validate_k_partial_coloring(c5):
    assert validate_k_partial_coloring(c5, KPartialColoring.of(2, [{0, 2}, {1, 3}])) == []
    assert validate_k_partial_coloring(c5, KPartialColoring.of(2, [{0, 1}])) == ["class #0 not stable: 0,1 adjacent"]
    assert validate_k_partial_coloring(c5, KPartialColoring.of(1, [{0}, {2}])) == ["2 classes > k=1"]


def test_violations_collected_exhaustively(c5):
    problems = validate_k_partial_coloring(c5, KPartialColoring.of(1, [{0, 1}, {1, 2}]))
    assert len(problems) >= 4  # two unstable classes, a shared vertex, too many classes


def _c5_cert():
    return Certificate(5, 1, "long-path", PathPartition.of([(0, 1, 2, 3, 4)]),
                       KPartialColoring.of(1, [{0}]), k_norm=1, weight=1)


def test_verify_certificate(c5):
    cert = _c5_cert()
    assert verify_certificate(c5, cert) == []
    tampered = replace(cert, k_norm=2)
    assert any("norm mismatch" in p for p in verify_certificate(c5, tampered))
    unstable = replace(cert, coloring=KPartialColoring.of(1, [{0, 1}]), weight=2)
    assert any("not stable" in p for p in verify_certificate(c5, unstable))
    wrong_n = replace(cert, n=6)
    assert verify_certificate(c5, wrong_n)


def test_certificate_json_round_trip(c5):
    cert = _c5_cert()
    data = cert.to_dict()
    assert set(data) == {"n", "k", "case", "partition", "coloring", "k_norm", "weight"}
    back = Certificate.from_json(cert.to_json())
    assert back == cert
    assert verify_certificate(c5, back) == []


def test_empty_classes_serialize():
    cert = Certificate(1, 2, "small-x", PathPartition.of([(0,)]), KPartialColoring.of(2, [set(), {0}]), 1, 1)
    assert cert.to_dict()["coloring"] == [[], [0]]


@st.composite
def partitions(draw):
    n = draw(st.integers(1, 10))
    order = draw(st.permutations(range(n)))
    cuts = sorted(draw(st.sets(st.integers(1, n - 1), max_size=n - 1))) if n > 1 else []
    bounds = [0] + cuts + [n]
    return n, PathPartition.of([order[a:b] for a, b in zip(bounds, bounds[1:])])


@given(partitions(), st.integers(1, 11))
def test_k_norm_monotone_and_limits(np, k):
    n, part = np
    assert k_norm(part, k) <= k_norm(part, k + 1)
    assert k_norm(part, 1) == len(part.paths)
    if k >= max(len(p) for p in part.paths):
        assert k_norm(part, k) == n


@given(st.integers(1, 7), st.data())
def test_coloring_weight_bounded(n, data):
    D = make_digraph(n, [])
    labels = data.draw(st.lists(st.integers(0, 3), min_size=n, max_size=n))
    classes = [{v for v in range(n) if labels[v] == c} for c in (1, 2, 3)]
    col = KPartialColoring.of(3, classes)
    assert validate_k_partial_coloring(D, col) == []
    assert coloring_weight(col) <= n
    assert (coloring_weight(col) == n) == (set().union(*classes) == set(range(n)))
