"""Seeded instance generation and the fuzz loop.

Instance ``i`` of a run uses seed ``seed + i`` and its own ``random.Random``,
so any logged instance can be replayed alone. The JSONL log holds a header
line followed by one record per (instance, k) check, in index order.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Any, Iterable, Sequence

from .certificates import verify_certificate
from .constructions import FishboneResult, fishbone_problems, prefix_orientation_check
from .constructions import certify
from .digraph import Digraph, make_digraph
from .errors import BudgetExceeded, InvalidParams
from .oracles import (
    DEFAULT_BUDGET,
    alpha_k_oracle,
    chi_k_oracle,
    lambda_k_oracle,
    pi_k_oracle,
)
from .recognition import (
    LooseWitness,
    SpinePartition,
    check_spine_partition,
    classify_tightness,
    is_loose_witness,
    zigzag_violation,
)

KINDS = ("spine", "split", "tournament", "general", "transitive-acyclic")
CHECKS = ("constructive", "linial", "dual")
CASE_TAGS = ("small-x", "long-path", "fishbone", "loose")


@dataclass(frozen=True)
class GenParams:
    """Generator settings.

    ``density`` may be a tuple, in which case instance ``i`` of a fuzz run
    uses ``density[i % len(density)]``. For the n-sized kinds the vertex
    count is drawn uniformly from ``min_n..n`` (exactly ``n`` by default).
    """

    kind: str
    n: int | None = None
    max_x: int | None = None
    max_y: int | None = None
    density: float | tuple[float, ...] = 0.5
    seed: int = 0
    min_n: int | None = None

    def densities(self) -> tuple[float, ...]:
        return self.density if isinstance(self.density, tuple) else (self.density,)

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise InvalidParams(f"unknown kind {self.kind!r}; expected one of {KINDS}")
        if not self.densities() or any(not 0.0 <= d <= 1.0 for d in self.densities()):
            raise InvalidParams(f"density must lie in [0, 1], got {self.density}")
        if self.kind in ("spine", "split"):
            if self.max_x is None or self.max_y is None:
                raise InvalidParams(f"{self.kind} instances need max_x and max_y")
            if self.max_x < 0 or self.max_y < 0 or self.max_x + self.max_y < 1:
                raise InvalidParams("need max_x, max_y >= 0 and max_x + max_y >= 1")
        else:
            if self.n is None or self.n < 0:
                raise InvalidParams(f"{self.kind} instances need n >= 0")
            lo = self.n if self.min_n is None else self.min_n
            if not 0 <= lo <= self.n:
                raise InvalidParams(f"min_n must lie in 0..n, got {self.min_n}")

    def at(self, index: int) -> "GenParams":
        """Parameters of instance ``index`` within a run."""
        ds = self.densities()
        return GenParams(self.kind, self.n, self.max_x, self.max_y, ds[index % len(ds)],
                         self.seed + index, self.min_n)


@dataclass(frozen=True)
class Instance:
    digraph: Digraph
    spine: SpinePartition | None = None


def _spine_like(rng: random.Random, max_x: int, max_y: int, density: float, split: bool) -> Instance:
    while True:
        nx, ny = rng.randint(0, max_x), rng.randint(0, max_y)
        if nx + ny >= 1:
            break
    xs = list(range(nx))
    ys = list(range(nx, nx + ny))
    arcs = {(i, i + 1) for i in range(nx - 1)}
    for u in xs:
        for v in xs:
            if u != v and (u, v) not in arcs and rng.random() < density:
                arcs.add((u, v))
    if split:
        for u, v in combinations(xs, 2):
            if (u, v) not in arcs and (v, u) not in arcs:
                arcs.add((u, v) if rng.random() < 0.5 else (v, u))
    for x in xs:
        for y in ys:
            if rng.random() < density:
                arcs.add((x, y))
            if rng.random() < density:
                arcs.add((y, x))
    D = make_digraph(nx + ny, sorted(arcs))
    return Instance(D, SpinePartition(tuple(xs), frozenset(ys)))


def gen_instance(params: GenParams) -> Instance:
    params.validate()
    density = params.densities()[0]
    rng = random.Random(params.seed)
    if params.kind in ("spine", "split"):
        inst = _spine_like(rng, params.max_x, params.max_y, density, params.kind == "split")
        problems = check_spine_partition(inst.digraph, inst.spine.x_order, inst.spine.y_set)
        assert not problems, problems
        return inst

    n = rng.randint(params.n if params.min_n is None else params.min_n, params.n)
    arcs: list[tuple[int, int]] = []
    if params.kind == "tournament":
        for u, v in combinations(range(n), 2):
            arcs.append((u, v) if rng.random() < 0.5 else (v, u))
    elif params.kind == "general":
        arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < density]
    else:
        order = list(range(n))
        rng.shuffle(order)
        reach = {v: set() for v in order}
        for i, j in combinations(range(n), 2):
            if rng.random() < density:
                reach[order[i]].add(order[j])
        # close transitively, sinks first
        for v in reversed(order):
            for w in list(reach[v]):
                reach[v] |= reach[w]
        arcs = [(u, v) for u in range(n) for v in sorted(reach[u])]
    return Instance(make_digraph(n, sorted(arcs)))


@dataclass
class FuzzReport:
    instances_run: int = 0
    case_counts: Counter = field(default_factory=Counter)
    violations: list[dict[str, Any]] = field(default_factory=list)
    records: list[dict[str, Any]] = field(default_factory=list, repr=False)

    @property
    def ok(self) -> bool:
        return not self.violations


def _record(seed: int, kind: str, inst: Instance, k: int) -> dict[str, Any]:
    D, spine = inst.digraph, inst.spine
    return {
        "seed": seed,
        "kind": kind,
        "n": D.n,
        "arcs": [list(a) for a in D.sorted_arcs()],
        "x": list(spine.x_order) if spine else None,
        "y": sorted(spine.y_set) if spine else None,
        "k": k,
        "case": None,
        "k_norm": None,
        "weight": None,
        "pi_k": None,
        "alpha_k": None,
        "chi_k": None,
        "lambda_k": None,
        "status": "ok",
        "check": None,
    }


def _constructive_failures(D: Digraph, spine: SpinePartition, k: int, rec: dict[str, Any],
                           oracle_max_n: int) -> list[str]:
    failed: list[str] = []
    cert = certify(D, spine, k)
    rec.update(case=cert.case, k_norm=cert.k_norm, weight=cert.weight)
    problems = verify_certificate(D, cert)
    if problems:
        failed.append("verify: " + "; ".join(problems))

    nx, ny = len(spine.x_order), len(spine.y_set)
    if cert.case in ("small-x", "loose") and cert.k_norm != ny + min(nx, k):
        failed.append(f"{cert.case}: k_norm {cert.k_norm} != |Y|+min(|X|,k)")
    if cert.case in ("long-path", "fishbone"):
        if cert.weight != ny + k - 1 or cert.k_norm > ny + k - 1:
            failed.append(f"{cert.case}: norm/weight off the |Y|+k-1 bound")

    ev = cert.evidence
    if isinstance(ev, FishboneResult):
        broken = fishbone_problems(D, spine, k, ev)
        if broken:
            failed.append("fishbone: " + "; ".join(broken))
    if isinstance(ev, LooseWitness):
        if not is_loose_witness(D, spine, k, ev):
            failed.append(f"witness {sorted(ev.s_set)} has a common Y-neighbour")
        try:
            if classify_tightness(D, spine, k) is None:
                failed.append("classify_tightness says tight but fishbone returned a witness")
        except BudgetExceeded:
            pass
    if spine.x_order and zigzag_violation(D, spine) is None:
        for y in sorted(spine.y_set):
            t = 0
            while t < nx and D.adj_mask(spine.x_order[t]) >> y & 1:
                t += 1
            if not prefix_orientation_check(D, spine, y, t):
                failed.append(f"prefix orientation fails for y={y}, t={t}")

    if D.n <= oracle_max_n:
        pi_k, alpha_k = pi_k_oracle(D, k), alpha_k_oracle(D, k)
        rec.update(pi_k=pi_k, alpha_k=alpha_k)
        if not pi_k <= cert.k_norm:
            failed.append(f"sandwich: pi_k {pi_k} > k_norm {cert.k_norm}")
        if not cert.weight <= alpha_k:
            failed.append(f"sandwich: weight {cert.weight} > alpha_k {alpha_k}")
        if pi_k > ny + min(nx, k):
            failed.append("upper-bound lemma: pi_k > |Y|+min(|X|,k)")
        if alpha_k < ny + min(nx, k - 1):
            failed.append("lower-bound lemma: alpha_k < |Y|+min(|X|,k-1)")
    return failed


def run_instance(params: GenParams, index: int, k_policy: str | int = "all",
                 checks: Sequence[str] = ("constructive",),
                 oracle_max_n: int = DEFAULT_BUDGET.max_n) -> list[dict[str, Any]]:
    """Generate instance ``index`` of a run and return one log record per k."""
    p = params.at(index)
    inst = gen_instance(p)
    D = inst.digraph
    ks: Iterable[int] = range(1, D.n + 1) if k_policy == "all" else [int(k_policy)]
    records = []
    for k in ks:
        rec = _record(p.seed, p.kind, inst, k)
        failed: list[str] = []
        try:
            if "constructive" in checks:
                if inst.spine is None:
                    raise InvalidParams(f"constructive checks need spine or split instances, not {p.kind}")
                failed += _constructive_failures(D, inst.spine, k, rec, oracle_max_n)
            if "linial" in checks:
                pi_k, alpha_k = pi_k_oracle(D, k), alpha_k_oracle(D, k)
                rec.update(pi_k=pi_k, alpha_k=alpha_k)
                if pi_k > alpha_k:
                    failed.append(f"linial: pi_k {pi_k} > alpha_k {alpha_k}")
            if "dual" in checks:
                chi_k, lambda_k = chi_k_oracle(D, k), lambda_k_oracle(D, k)
                rec.update(chi_k=chi_k, lambda_k=lambda_k)
                if chi_k > lambda_k:
                    failed.append(f"dual: chi_k {chi_k} > lambda_k {lambda_k}")
        except (AssertionError, ArithmeticError, LookupError, ValueError) as exc:
            if isinstance(exc, InvalidParams):
                raise
            failed.append(f"exception: {type(exc).__name__}: {exc}")
        if failed:
            rec.update(status="violation", check=" | ".join(failed))
        records.append(rec)
    return records


def fuzz_run(params: GenParams, count: int, k_policy: str | int = "all",
             checks: Sequence[str] = ("constructive",), log_path: str | None = None,
             jobs: int = 1, oracle_max_n: int = DEFAULT_BUDGET.max_n) -> FuzzReport:
    params.validate()
    if count < 0:
        raise InvalidParams(f"count must be nonnegative, got {count}")
    unknown = set(checks) - set(CHECKS)
    if unknown:
        raise InvalidParams(f"unknown checks {sorted(unknown)}")
    if k_policy != "all" and int(k_policy) < 1:
        raise InvalidParams(f"k must be positive, got {k_policy}")

    args = [(params, i, k_policy, tuple(checks), oracle_max_n) for i in range(count)]
    if jobs > 1 and count > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            per_instance = list(pool.map(_run_packed, args))
    else:
        per_instance = [_run_packed(a) for a in args]

    report = FuzzReport(instances_run=count)
    for records in per_instance:
        for rec in records:
            report.records.append(rec)
            if rec["case"] is not None:
                report.case_counts[rec["case"]] += 1
            if rec["status"] != "ok":
                report.violations.append(rec)
    if log_path is not None:
        write_log(log_path, params, count, k_policy, checks, report.records)
    return report


def _run_packed(args: tuple) -> list[dict[str, Any]]:
    return run_instance(*args)


def log_header(params: GenParams, count: int, k_policy: str | int, checks: Sequence[str]) -> dict[str, Any]:
    head = asdict(params)
    head["density"] = list(params.densities())
    return {"header": head, "count": count, "k_policy": k_policy, "checks": list(checks)}


def write_log(path: str, params: GenParams, count: int, k_policy: str | int,
              checks: Sequence[str], records: Iterable[dict[str, Any]]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(log_header(params, count, k_policy, checks)) + "\n")
        for rec in records:
            fh.write(json.dumps(rec) + "\n")
