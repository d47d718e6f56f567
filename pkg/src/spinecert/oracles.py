"""Exact, exponential ground truth for pi_k, alpha_k, lambda, lambda_k, chi_k.

Nothing here imports the construction code; agreement between the two is
meant to be evidence. Everything works on vertex bitmasks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .digraph import Digraph, iter_bits
from .errors import BudgetExceeded


@dataclass(frozen=True)
class OracleBudget:
    max_n: int = 9
    max_states: int = 20_000_000

    def __post_init__(self) -> None:
        if self.max_n < 1 or self.max_states < 1:
            raise ValueError("oracle budget caps must be positive")


DEFAULT_BUDGET = OracleBudget()
LAMBDA_BUDGET = OracleBudget(max_n=12)


class _Counter:
    def __init__(self, budget: OracleBudget) -> None:
        self.budget = budget
        self.states = 0

    def tick(self) -> None:
        self.states += 1
        if self.states > self.budget.max_states:
            raise BudgetExceeded(f"search expanded more than {self.budget.max_states} states")


def _guard(D: Digraph, budget: OracleBudget) -> _Counter:
    if D.n > budget.max_n:
        raise BudgetExceeded(f"oracle limited to n <= {budget.max_n}, got n = {D.n}")
    return _Counter(budget)


def _adj(D: Digraph) -> list[int]:
    return [D.out_mask[v] | D.in_mask[v] for v in range(D.n)]


@lru_cache(maxsize=4096)
def _traceable_masks(D: Digraph) -> tuple[bool, ...]:
    """traceable[S] is True iff D[S] has a Hamiltonian path (S nonempty)."""
    n = D.n
    ends = [0] * (1 << n)  # ends[S]: bitmask of possible last vertices of a Hamiltonian path of D[S]
    for v in range(n):
        ends[1 << v] = 1 << v
    for S in range(1, 1 << n):
        e = ends[S]
        if not e:
            continue
        for v in iter_bits(e):
            for w in iter_bits(D.out_mask[v] & ~S):
                ends[S | 1 << w] |= 1 << w
    return tuple(bool(e) for e in ends)


def _pi_k_memo(D: Digraph, k: int, counter: _Counter) -> int:
    traceable = _traceable_masks(D)
    best: dict[int, int] = {0: 0}

    def solve(mask: int) -> int:
        if mask in best:
            return best[mask]
        counter.tick()
        low = mask & -mask
        rest = mask ^ low
        value = None
        sub = rest
        while True:
            part = sub | low
            if traceable[part]:
                cand = min(bin(part).count("1"), k) + solve(mask ^ part)
                if value is None or cand < value:
                    value = cand
            if sub == 0:
                break
            sub = (sub - 1) & rest
        best[mask] = value
        return value

    return solve(D.full_mask)


def _pi_k_naive(D: Digraph, k: int, counter: _Counter) -> int:
    """Enumerate path partitions outright: every path through the smallest uncovered vertex."""
    out = D.out_mask
    into = D.in_mask
    best = [D.n]

    def paths_through(v: int, free: int):
        # grow backwards from v, then forwards from v; yields vertex masks
        def forward(last: int, used: int, size: int):
            yield used, size
            for w in iter_bits(out[last] & free & ~used):
                yield from forward(w, used | 1 << w, size + 1)

        def backward(first: int, used: int, size: int):
            yield from forward(v, used, size)
            for w in iter_bits(into[first] & free & ~used):
                yield from backward(w, used | 1 << w, size + 1)

        yield from backward(v, 1 << v, 1)

    def recurse(free: int, norm: int) -> None:
        counter.tick()
        if norm >= best[0]:
            return
        if not free:
            best[0] = norm
            return
        v = (free & -free).bit_length() - 1
        for used, size in paths_through(v, free):
            recurse(free & ~used, norm + min(size, k))

    recurse(D.full_mask, 0)
    return best[0]


def pi_k_oracle(D: Digraph, k: int, budget: OracleBudget = DEFAULT_BUDGET, memo: bool = True) -> int:
    """Minimum k-norm over all path partitions of D."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    counter = _guard(D, budget)
    if D.n == 0:
        return 0
    return _pi_k_memo(D, k, counter) if memo else _pi_k_naive(D, k, counter)


def alpha_k_oracle(D: Digraph, k: int, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Maximum total size of k disjoint stable sets.

    Each vertex in turn is left uncoloured or put in a class; a new class may
    only be opened right after the last used one (class order symmetry).
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    counter = _guard(D, budget)
    adj = _adj(D)
    n = D.n
    classes = [0] * k
    best = [0]

    def assign(v: int, used: int, weight: int) -> None:
        counter.tick()
        if weight + (n - v) <= best[0]:
            return
        if v == n:
            best[0] = weight
            return
        for c in range(min(used + 1, k)):
            if not adj[v] & classes[c]:
                classes[c] |= 1 << v
                assign(v + 1, max(used, c + 1), weight + 1)
                classes[c] &= ~(1 << v)
        assign(v + 1, used, weight)

    assign(0, 0, 0)
    return best[0]


def lambda_oracle(D: Digraph, budget: OracleBudget = LAMBDA_BUDGET) -> int:
    """Size of a longest path; DFS over simple paths, each (vertex set, end) state visited once."""
    counter = _guard(D, budget)
    if D.n == 0:
        return 0
    best = 1
    seen: set[tuple[int, int]] = set()
    stack = [(1 << v, v) for v in range(D.n)]
    while stack:
        used, last = stack.pop()
        if (used, last) in seen:
            continue
        seen.add((used, last))
        counter.tick()
        best = max(best, bin(used).count("1"))
        for w in iter_bits(D.out_mask[last] & ~used):
            stack.append((used | 1 << w, w))
    return best


def lambda_k_oracle(D: Digraph, k: int, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Maximum total size of k disjoint (possibly empty) paths.

    A vertex set U is covered by k disjoint paths iff D[U] has a path
    partition into at most k paths, so we take the largest such U.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    counter = _guard(D, budget)
    traceable = _traceable_masks(D)
    size = 1 << D.n
    # fewest[S] = fewest paths partitioning D[S]
    fewest = [0] * size
    for S in range(1, size):
        counter.tick()
        low = S & -S
        rest = S ^ low
        value = D.n + 1
        sub = rest
        while True:
            part = sub | low
            if traceable[part] and fewest[S ^ part] + 1 < value:
                value = fewest[S ^ part] + 1
            if sub == 0:
                break
            sub = (sub - 1) & rest
        fewest[S] = value
    return max(bin(S).count("1") for S in range(size) if fewest[S] <= k)


def chi_k_oracle(D: Digraph, k: int, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Minimum of sum(min(|C|, k)) over partitions of V into stable sets."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    counter = _guard(D, budget)
    adj = _adj(D)
    n = D.n
    classes: list[int] = []
    best = [n]

    def assign(v: int, cost: int) -> None:
        counter.tick()
        if cost >= best[0] and v < n:
            return
        if v == n:
            best[0] = min(best[0], cost)
            return
        for c in range(len(classes)):
            if not adj[v] & classes[c]:
                grows = bin(classes[c]).count("1") < k
                classes[c] |= 1 << v
                assign(v + 1, cost + grows)
                classes[c] &= ~(1 << v)
        classes.append(1 << v)
        assign(v + 1, cost + 1)
        classes.pop()

    if n == 0:
        return 0
    assign(0, 0)
    return best[0]


@dataclass(frozen=True)
class LinialRow:
    k: int
    pi_k: int
    alpha_k: int

    @property
    def holds(self) -> bool:
        return self.pi_k <= self.alpha_k


@dataclass(frozen=True)
class DualRow:
    k: int
    chi_k: int
    lambda_k: int

    @property
    def holds(self) -> bool:
        return self.chi_k <= self.lambda_k


def check_linial(D: Digraph, k_range, budget: OracleBudget = DEFAULT_BUDGET) -> list[LinialRow]:
    return [LinialRow(k, pi_k_oracle(D, k, budget), alpha_k_oracle(D, k, budget)) for k in k_range]


def check_dual(D: Digraph, k_range, budget: OracleBudget = DEFAULT_BUDGET) -> list[DualRow]:
    return [DualRow(k, chi_k_oracle(D, k, budget), lambda_k_oracle(D, k, budget)) for k in k_range]
