"""Accordability of states, the count M, and the three equivalent determination tests.

Two states are accordable when some composition of maps from H sends them to
the same point, i.e. when the diagonal is reachable from the pair under the
coupled kernel. All routes here are exact graph searches; weights play no role.
"""

from collections import deque
from dataclasses import dataclass, field

from .errors import CapExceeded, ConsistencyError
from .graphs import max_clique, strongly_connected_components, terminal_components
from .model import DEFAULT_MAX_STATES, build_kernel, require_irreducible

MERGED = "MERGED"


def _pairs(d):
    return [(x, y) for x in range(d) for y in range(x + 1, d)]


def pair_graph(system):
    """Nodes: unordered pairs x<y plus MERGED. Returns (nodes, succ) with succ[node][h]."""
    nodes = _pairs(system.d)
    succ = {MERGED: [MERGED] * system.n_maps}
    for x, y in nodes:
        row = []
        for h in system.maps:
            a, b = h[x], h[y]
            row.append(MERGED if a == b else (min(a, b), max(a, b)))
        succ[(x, y)] = row
    return nodes + [MERGED], succ


def _merge_distances(system):
    """Shortest merge length for every pair, by backward BFS from MERGED."""
    nodes, succ = pair_graph(system)
    pred = {v: [] for v in nodes}
    for v in nodes:
        if v == MERGED:
            continue
        for w in succ[v]:
            pred[w].append(v)
    dist = {MERGED: 0}
    queue = deque([MERGED])
    while queue:
        w = queue.popleft()
        for v in pred[w]:
            if v not in dist:
                dist[v] = dist[w] + 1
                queue.append(v)
    return dist, succ


def _witness(system, pair, dist, succ):
    """Shortest merging word; at each step the lowest map index that makes progress."""
    applied = []
    node = pair
    while node != MERGED:
        for i, nxt in enumerate(succ[node]):
            if nxt in dist and dist[nxt] == dist[node] - 1:
                applied.append(i)
                node = nxt
                break
    # first-applied map goes last in the composition word
    return applied[::-1]


@dataclass(frozen=True)
class Accordance:
    verdict: bool
    witness: list | None


def accordable(system, x, y):
    d = system.d
    if not (0 <= x < d and 0 <= y < d):
        raise IndexError(f"state index out of range: {x}, {y}")
    if x == y:
        return Accordance(True, [])
    pair = (min(x, y), max(x, y))
    dist, succ = _merge_distances(system)
    if pair not in dist:
        return Accordance(False, None)
    return Accordance(True, _witness(system, pair, dist, succ))


def accordability_relation(system):
    """Symmetric boolean matrix (list of lists), diagonal true."""
    d = system.d
    dist, _ = _merge_distances(system)
    rel = [[x == y for y in range(d)] for x in range(d)]
    for x, y in _pairs(d):
        rel[x][y] = rel[y][x] = (x, y) in dist
    return rel


def accord_witnesses(system):
    dist, succ = _merge_distances(system)
    return {p: _witness(system, p, dist, succ) for p in _pairs(system.d) if p in dist}


@dataclass(frozen=True)
class AccordReport:
    relation: list
    m: int
    witness_set: list
    witnesses: dict = field(default_factory=dict)


def max_non_accordable(system, with_witnesses=True):
    rel = accordability_relation(system)
    best = max_clique(system.d, lambda u, v: not rel[u][v])
    return AccordReport(
        relation=rel,
        m=len(best),
        witness_set=best,
        witnesses=accord_witnesses(system) if with_witnesses else {},
    )


@dataclass(frozen=True)
class DiagonalCheck:
    holds: bool
    offenders: list  # ordered pairs (x, y), x != y


def coupled_support(system):
    """Support digraph of the coupled kernel on E x E; node (x, y) has index x*d + y."""
    d = system.d
    adj = []
    for x in range(d):
        for y in range(d):
            adj.append(sorted({h[x] * d + h[y] for h in system.maps}))
    return adj


def diagonal_recurrence_check(system):
    d = system.d
    adj = coupled_support(system)
    offenders = []
    for comp in terminal_components(adj, strongly_connected_components(adj)):
        offenders.extend(divmod(v, d) for v in comp if v // d != v % d)
    offenders.sort()
    return DiagonalCheck(holds=not offenders, offenders=offenders)


@dataclass(frozen=True)
class RankResult:
    rank: int
    witness: list


def _check_cap(d, cap):
    if d > cap:
        raise CapExceeded(f"{d} states exceeds the subset-traversal cap of {cap}")


def min_rank(system, cap=DEFAULT_MAX_STATES):
    """Least image size over S (and the identity) by BFS on image sets starting from E."""
    _check_cap(system.d, cap)
    start = frozenset(range(system.d))
    words = {start: []}
    queue = deque([start])
    best = start
    while queue:
        a = queue.popleft()
        for i, h in enumerate(system.maps):
            b = frozenset(h[x] for x in a)
            if b not in words:
                words[b] = [i] + words[a]
                queue.append(b)
                if len(b) < len(best):
                    best = b
    return RankResult(len(best), words[best])


@dataclass(frozen=True)
class Determination:
    verdict: bool
    all_pairs_accordable: bool
    diagonal_recurrence: DiagonalCheck
    rank: RankResult


def innovations_determine(system, cap=DEFAULT_MAX_STATES):
    """Decide whether the innovations determine the stationary chain.

    Runs pairwise accordability, the terminal-class test on the coupled chain and
    the min-rank test; raises :class:`ConsistencyError` if they disagree.
    """
    require_irreducible(build_kernel(system), system.labels)
    rel = accordability_relation(system)
    cond1 = all(all(row) for row in rel)
    cond3 = diagonal_recurrence_check(system)
    rank = min_rank(system, cap)
    votes = {cond1, cond3.holds, rank.rank == 1}
    if len(votes) != 1:
        raise ConsistencyError(
            f"determination tests disagree: pairwise={cond1}, "
            f"diagonal={cond3.holds}, min_rank={rank.rank}"
        )
    return Determination(cond1, cond1, cond3, rank)
