"""Branch-Search: grow a candidate pool by branching, then find a minimum cover inside it."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from ..bounds import t_star
from ..cover import Budget, CoverScheme, SearchLimitExceeded, SearchLimits
from ..gf2 import BitMatrix, insert_vector, rank_of, reduce_vector
from ..verify import Decomposer
from .scheme1 import _check_targets, verbatim


@dataclass(frozen=True)
class Intermediate:
    value: int
    parents: tuple[int, int]


@dataclass
class CoverGraph:
    """Bipartite dependency graph of a target matrix.

    Node ids ``0..T-1`` are the basis rows ``u_nodes``; intermediate branch
    nodes get ids ``T, T+1, ...`` in creation order.  ``inbound`` maps the
    row index of each dependent row to the node ids whose values sum to it.
    """

    dim: int
    u_nodes: list[int]
    u_values: list[int]
    v_nodes: list[int]
    v_values: dict[int, int]
    inbound: dict[int, list[int]]
    intermediates: list[Intermediate] = field(default_factory=list)
    branches: list[tuple[int, tuple[int, ...]]] = field(default_factory=list)

    def value(self, node: int) -> int:
        t = len(self.u_values)
        return self.u_values[node] if node < t else self.intermediates[node - t].value

    def degree(self, v: int) -> int:
        return len(self.inbound[v])

    def out_degrees(self) -> dict[int, int]:
        deg: dict[int, int] = {}
        for nodes in self.inbound.values():
            for node in nodes:
                deg[node] = deg.get(node, 0) + 1
        return deg


def build_graph(g: BitMatrix) -> CoverGraph:
    """Greedy basis (rows that raise the rank, in order) plus inbound sets for the rest."""
    basis: dict[int, tuple[int, int]] = {}
    u_nodes: list[int] = []
    v_nodes: list[int] = []
    for i, row in enumerate(g.packed):
        v, combo = row, 0
        while v:
            hit = basis.get(v.bit_length() - 1)
            if hit is None:
                break
            v ^= hit[0]
            combo ^= hit[1]
        if v:
            basis[v.bit_length() - 1] = (v, combo ^ (1 << len(u_nodes)))
            u_nodes.append(i)
        else:
            v_nodes.append(i)
    if len(u_nodes) != g.dim:
        raise ValueError(f"target matrix has rank {len(u_nodes)} < dimension {g.dim}")
    inbound = {}
    for i in v_nodes:
        v, combo = g.packed[i], 0
        while v:
            hit = basis[v.bit_length() - 1]
            v ^= hit[0]
            combo ^= hit[1]
        inbound[i] = [u for u in range(len(u_nodes)) if (combo >> u) & 1]
    return CoverGraph(
        dim=g.dim,
        u_nodes=u_nodes,
        u_values=[g.packed[i] for i in u_nodes],
        v_nodes=v_nodes,
        v_values={i: g.packed[i] for i in v_nodes},
        inbound=inbound,
    )


def branch(g: BitMatrix, k: int, include_dependents: bool = False) -> tuple[CoverGraph, BitMatrix]:
    """Branch until every dependent row has at most ``k`` inbound nodes.

    Each round picks the dependent row of highest degree (lowest index on
    ties), orders its inbound nodes by decreasing out-degree (lowest id on
    ties), chains them with prefix-sum nodes, and collapses every inbound set
    of degree >= k whose overlap with the chain is an exact prefix.

    Returns the graph and the pool R: basis values followed by intermediate
    values, deduplicated (plus dependent values if ``include_dependents``).
    """
    if k < 2:
        raise ValueError("branching needs k >= 2")
    _check_targets(g)
    graph = build_graph(g)
    t = g.dim
    while True:
        heavy = [v for v in graph.v_nodes if graph.degree(v) > k]
        if not heavy:
            break
        picked = max(heavy, key=lambda v: (graph.degree(v), -v))
        out = graph.out_degrees()
        chain = tuple(sorted(graph.inbound[picked], key=lambda node: (-out[node], node)))
        prefix_node = [chain[0]]
        acc = graph.value(chain[0])
        prev = chain[0]
        for node in chain[1:]:
            acc ^= graph.value(node)
            graph.intermediates.append(Intermediate(acc, (prev, node)))
            prev = t + len(graph.intermediates) - 1
            prefix_node.append(prev)
        graph.branches.append((picked, chain))
        position = {node: j for j, node in enumerate(chain)}
        for v in graph.v_nodes:
            nodes = graph.inbound[v]
            if len(nodes) < k:
                continue
            overlap = [node for node in nodes if node in position]
            ell = len(overlap)
            if ell < 2 or sorted(position[node] for node in overlap) != list(range(ell)):
                continue
            graph.inbound[v] = [node for node in nodes if node not in position] + [prefix_node[ell - 1]]
    values = list(graph.u_values) + [node.value for node in graph.intermediates]
    if include_dependents:
        values += [graph.v_values[v] for v in graph.v_nodes]
    pool = list(dict.fromkeys(values))
    return graph, BitMatrix(g.dim, tuple(pool))


# -- exact minimum cover over a candidate pool --------------------------------

class _Exhausted(Exception):
    pass


class _Optimal(Exception):
    pass


def witness_options(candidates: Sequence[int], targets: Sequence[int], k: int) -> list[list[int]]:
    """For every target, all index sets (as bitmasks) of at most ``k`` candidates summing to it."""
    want = {v: j for j, v in enumerate(targets)}
    options: list[list[int]] = [[] for _ in targets]
    m = len(candidates)
    big_size = (k + 1) // 2
    tables: dict[int, dict[int, list[tuple[int, int]]]] = {}
    for size in range(1, big_size + 1):
        table: dict[int, list[tuple[int, int]]] = {}
        for combo in combinations(range(m), size):
            acc = mask = 0
            for i in combo:
                acc ^= candidates[i]
                mask |= 1 << i
            table.setdefault(acc, []).append((mask, combo[-1]))
            if acc in want:
                options[want[acc]].append(mask)
        tables[size] = table
    # Sizes above ceil(k/2): split into a lower part of ceil(s/2) indices and
    # an upper part whose smallest index exceeds the lower part's largest.
    for size in range(big_size + 1, k + 1):
        lo = (size + 1) // 2
        hi = size - lo
        for combo in combinations(range(m), hi):
            acc = mask = 0
            for i in combo:
                acc ^= candidates[i]
                mask |= 1 << i
            first = combo[0]
            for v, j in want.items():
                for low_mask, low_last in tables[lo].get(v ^ acc, ()):
                    if low_last < first:
                        options[j].append(low_mask | mask)
    return options


def _covers(S: int, options: list[list[int]]) -> bool:
    return all(any(o & ~S == 0 for o in opts) for opts in options)


def greedy_cover(options: list[list[int]], m: int) -> int:
    """A cover chosen by repeatedly taking the candidate that completes the most targets."""
    S = 0
    pending = list(range(len(options)))
    while pending:
        gains = [0] * m
        for j in pending:
            completing = 0
            for o in options[j]:
                extra = o & ~S
                if extra.bit_count() == 1:
                    completing |= extra
            while completing:
                low = completing & -completing
                gains[low.bit_length() - 1] += 1
                completing ^= low
        best = max(range(m), key=lambda e: (gains[e], -e))
        if gains[best]:
            S |= 1 << best
        else:
            j = pending[0]
            S |= min(options[j], key=lambda o: ((o & ~S).bit_count(), o))
        pending = [j for j in pending if not any(o & ~S == 0 for o in options[j])]
    for e in reversed(range(m)):
        if (S >> e) & 1 and _covers(S & ~(1 << e), options):
            S &= ~(1 << e)
    return S


def min_cover(
    candidates: Sequence[int],
    targets: Sequence[int],
    k: int,
    lower: int,
    limits: SearchLimits,
) -> tuple[int, bool, int]:
    """Minimum number of candidates covering every target with at most ``k`` of them.

    Depth-first branch and bound: pick the uncovered target with the fewest
    affordable witness options, then include or exclude one candidate from
    those options.  Subtrees are cut when the remaining room is below the
    rank deficit or a disjoint-options packing bound.

    Returns ``(mask, proved_optimal, nodes_examined)``; on budget
    exhaustion the best cover found so far is returned unproved.
    """
    options = witness_options(candidates, targets, k)
    for j, opts in enumerate(options):
        if not opts:
            raise ValueError(f"target {j} has no witness of at most {k} candidates")
    target_rank = rank_of(targets)
    best = greedy_cover(options, len(candidates))
    best_size = best.bit_count()
    budget = Budget(limits)

    def subset_rank(S: int) -> int:
        basis: dict[int, int] = {}
        while S:
            low = S & -S
            insert_vector(basis, candidates[low.bit_length() - 1])
            S ^= low
        return len(basis)

    def dfs(S: int, size: int, opts: list[list[int]]) -> None:
        nonlocal best, best_size
        if not budget.tick():
            raise _Exhausted
        room = best_size - 1 - size
        if room < 0:
            return
        pending = []
        for lst in opts:
            viable = []
            for o in lst:
                extra = (o & ~S).bit_count()
                if extra == 0:
                    break
                if extra <= room:
                    viable.append(o)
            else:
                if not viable:
                    return
                pending.append(viable)
        if not pending:
            best, best_size = S, size
            if size <= lower:
                raise _Optimal
            return
        if target_rank - subset_rank(S) > room:
            return
        pending.sort(key=len)
        used = 0
        need = 0
        for lst in pending:
            reach = 0
            for o in lst:
                reach |= o
            reach &= ~S
            if not reach & used:
                used |= reach
                need += 1
                if need > room:
                    return
        first = pending[0]
        if len(first) == 1:
            o = first[0]
            dfs(S | o, size + (o & ~S).bit_count(), pending)
            return
        counts: dict[int, int] = {}
        for o in first:
            extra = o & ~S
            while extra:
                low = extra & -extra
                counts[low] = counts.get(low, 0) + 1
                extra ^= low
        e = max(counts, key=lambda b: (counts[b], -b))
        dfs(S | e, size + 1, pending)
        dfs(S, size, [[o for o in lst if not o & e] for lst in pending])

    if best_size <= lower:
        return best, True, 0
    try:
        dfs(0, 0, options)
    except _Optimal:
        pass
    except _Exhausted:
        return best, False, budget.examined
    return best, True, budget.examined


def _cover_from_mask(candidates: Sequence[int], targets_by_row: Sequence[int], mask: int, k: int, dim: int) -> CoverScheme:
    chosen = [i for i in range(len(candidates)) if (mask >> i) & 1]
    rows = [candidates[i] for i in chosen]
    dec = Decomposer(rows, k)
    witnesses = {}
    for j, v in enumerate(targets_by_row):
        found = dec.find(v)
        assert found, "search produced a non-cover"
        witnesses[j] = frozenset(found)
    return CoverScheme(k, BitMatrix(dim, tuple(rows)), witnesses)


def search(r: BitMatrix, g: BitMatrix, k: int, limits: SearchLimits | None = None) -> CoverScheme:
    """Smallest subset of the rows of ``r`` covering every row of ``g`` with at most ``k`` additions.

    Raises ``ValueError`` if some row of ``g`` is outside the span of ``r``
    or cannot be reached with ``k`` rows of ``r`` at all, and
    ``SearchLimitExceeded`` (carrying the best cover found) when the limits
    run out before optimality is proved.
    """
    limits = limits or SearchLimits()
    if r.dim != g.dim:
        raise ValueError("dimension mismatch between pool and targets")
    _check_targets(g)
    basis: dict[int, int] = {}
    for row in r.packed:
        insert_vector(basis, row)
    for i, v in enumerate(g.packed):
        if reduce_vector(basis, v):
            raise ValueError(f"target row {i} is not in the span of the pool")
    candidates = list(dict.fromkeys(v for v in r.packed if v))
    targets = list(g.packed)
    if set(targets) <= set(candidates) and rank_of(targets) == len(targets):
        return verbatim(g, k)
    lower = max(rank_of(targets), t_star(len(targets), k))
    mask, proved, examined = min_cover(candidates, targets, k, lower, limits)
    scheme = _cover_from_mask(candidates, targets, mask, k, g.dim)
    if not proved:
        raise SearchLimitExceeded(
            f"search stopped after {examined} nodes; best cover has {scheme.size} rows",
            best=scheme,
            examined=examined,
        )
    return scheme


def branch_search(g: BitMatrix, k: int, limits: SearchLimits | None = None) -> CoverScheme:
    _, pool = branch(g, k)
    return search(pool, g, k, limits)
