"""Backtracking discovery of distance-3 one-factorizations for small
instances, used as an existence oracle independent of the constructions.

The first factor's first edge is pinned to {(1,1),(2,1)}: any decomposition
can be carried onto one containing that edge in its first factor by permuting
parts, permuting symbols within a part, and reordering factors, all of which
preserve parallel-edge structure, so the pin loses no existence information.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable

from .core import Decomposition, Edge, Factor, Instance, Vertex, bound_A
from .verify import verify_decomposition


@dataclass(frozen=True)
class SearchProgress:
    nodes: int
    depth: int
    factors_done: int


@dataclass(frozen=True)
class SearchOutcome:
    status: str  # "found", "exhausted" or "infeasible"
    decomposition: Decomposition | None
    nodes: int
    complete: bool = False  # True when the symmetry-reduced space was exhausted


class _BudgetExceeded(Exception):
    pass


class _Stopped(Exception):
    pass


def _partner_rank(inst: Instance, seed: int) -> dict:
    verts = [Vertex(x, a) for x in range(1, inst.n + 1) for a in range(1, inst.g + 1)]
    if seed:
        random.Random(seed).shuffle(verts)
    return {v: i for i, v in enumerate(verts)}


def search_of(
    n: int,
    g: int,
    budget: int,
    seed: int = 0,
    prune: bool = True,
    progress: Callable[[SearchProgress], None] | None = None,
    progress_every: int = 100_000,
    stop: Callable[[], bool] | None = None,
) -> SearchOutcome:
    """Depth-first extraction of g(n-1) distance-3 one-factors, each grown
    from its lowest uncovered vertex.  With prune=True an edge repeating a
    part pair already used in the current factor is rejected immediately;
    with prune=False the same condition is checked at factor completion.
    Deterministic for fixed (n, g, budget, seed)."""
    if budget <= 0:
        raise ValueError(f"budget must be positive, got {budget}")
    if n <= g:
        raise ValueError(f"search_of needs n > g, got (n,g)=({n},{g})")
    inst = Instance(n, g)
    if (n * g) % 2 == 1:
        return SearchOutcome("infeasible", None, 0, complete=True)

    target_factors = g * (n - 1)
    rank = _partner_rank(inst, seed)
    all_verts = sorted(Vertex(x, a) for x in range(1, n + 1) for a in range(1, g + 1))
    remaining = {e for e in inst.all_edges()}
    nodes = 0
    factors_done: list[tuple] = []

    def tick():
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _BudgetExceeded
        if stop is not None and nodes % 1024 == 0 and stop():
            raise _Stopped
        if progress is not None and nodes % progress_every == 0:
            progress(SearchProgress(nodes, sum(len(f) for f in factors_done), len(factors_done)))

    def grow(current: list, covered: set, used_pairs: set) -> bool:
        if len(covered) == len(all_verts):
            if not prune:
                pairs = [(e.u.part, e.v.part) for e in current]
                if len(set(pairs)) != len(pairs):
                    return False
            factors_done.append(tuple(current))
            for e in current:
                remaining.discard(e)
            if solve():
                return True
            remaining.update(current)
            factors_done.pop()
            return False
        v = next(w for w in all_verts if w not in covered)
        candidates = []
        for w in all_verts:
            if w in covered or w == v or w.part == v.part:
                continue
            e = Edge.make(v.part, v.symbol, w.part, w.symbol)
            if e not in remaining:
                continue
            if prune and (e.u.part, e.v.part) in used_pairs:
                continue
            candidates.append((rank[w], e))
        if not factors_done and not current:
            # symmetry pin: the very first edge is 1_1 2_1
            candidates = [(r, e) for r, e in candidates if e == Edge.make(1, 1, 2, 1)]
        candidates.sort()
        for _, e in candidates:
            tick()
            current.append(e)
            covered.add(e.u)
            covered.add(e.v)
            used_pairs.add((e.u.part, e.v.part))
            if grow(current, covered, used_pairs):
                return True
            current.pop()
            covered.discard(e.u)
            covered.discard(e.v)
            used_pairs.discard((e.u.part, e.v.part))
        return False

    def solve() -> bool:
        if len(factors_done) == target_factors:
            return not remaining
        return grow([], set(), set())

    try:
        found = solve()
    except _BudgetExceeded:
        return SearchOutcome("exhausted", None, nodes, complete=False)
    except _Stopped:
        return SearchOutcome("exhausted", None, nodes, complete=False)

    if not found:
        return SearchOutcome("exhausted", None, nodes, complete=True)
    dec = Decomposition(
        inst,
        3,
        tuple(Factor(inst, f"S_{i}", edges) for i, edges in enumerate(factors_done, start=1)),
    )
    report = verify_decomposition(dec)
    if not report.ok:
        raise AssertionError(f"search produced an invalid decomposition: {report.first().message}")
    return SearchOutcome("found", dec, nodes, complete=False)


def search_ar(
    n: int,
    g: int,
    exclude: Iterable = (),
    budget: int = 10**6,
) -> Factor | None:
    """One AR-graph avoiding the excluded edges, or None when the branch is
    exhausted.  Single-factor subroutine of the decomposition search."""
    inst = Instance(n, g)
    target = bound_A(n, 3, 2, inst.q)
    excluded = set(exclude)
    allowed = [e for e in inst.all_edges() if e not in excluded]
    nodes = 0

    def compatible(e, used_pairs, covered):
        if (e.u.part, e.v.part) in used_pairs:
            return False
        return e.u not in covered and e.v not in covered

    def dfs(start: int, chosen: list, used_pairs: set, covered: set):
        nonlocal nodes
        if len(chosen) == target:
            return list(chosen)
        if len(allowed) - start < target - len(chosen):
            return None
        for idx in range(start, len(allowed)):
            e = allowed[idx]
            nodes += 1
            if nodes > budget:
                return None
            if not compatible(e, used_pairs, covered):
                continue
            chosen.append(e)
            used_pairs.add((e.u.part, e.v.part))
            covered.update((e.u, e.v))
            out = dfs(idx + 1, chosen, used_pairs, covered)
            if out is not None:
                return out
            chosen.pop()
            used_pairs.discard((e.u.part, e.v.part))
            covered.difference_update((e.u, e.v))
        return None

    out = dfs(0, [], set(), set())
    if out is None:
        return None
    return Factor(inst, "AR", tuple(out))


def search_of_portfolio(
    n: int,
    g: int,
    budget: int,
    seeds: Iterable,
    max_workers: int | None = None,
) -> SearchOutcome:
    """Run independent seeds concurrently; first verified success wins."""
    import threading
    from concurrent.futures import ThreadPoolExecutor

    seeds = list(seeds)
    if not seeds:
        raise ValueError("portfolio needs at least one seed")
    stop_event = threading.Event()

    def run(seed):
        out = search_of(n, g, budget, seed=seed, stop=stop_event.is_set)
        if out.status in ("found", "infeasible"):
            stop_event.set()
        return out

    with ThreadPoolExecutor(max_workers=max_workers or min(4, len(seeds))) as pool:
        outcomes = list(pool.map(run, seeds))
    for out in outcomes:
        if out.status in ("found", "infeasible"):
            return out
    return max(outcomes, key=lambda o: o.nodes)
