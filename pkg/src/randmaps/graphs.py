"""Small exact graph routines on adjacency lists indexed 0..n-1."""

from collections import deque
from math import gcd


def strongly_connected_components(adj):
    """Tarjan's algorithm, iterative. Returns a list of components (sorted lists).

    Components come out in reverse topological order of the condensation.
    """
    n = len(adj)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack = []
    comps = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            succ = adj[v]
            if i < len(succ):
                work[-1] = (v, i + 1)
                w = succ[i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return comps


def component_index(comps, n):
    where = [-1] * n
    for k, comp in enumerate(comps):
        for v in comp:
            where[v] = k
    return where


def terminal_components(adj, comps=None):
    """Components with no edge leaving them (the recurrent classes of a finite chain)."""
    if comps is None:
        comps = strongly_connected_components(adj)
    where = component_index(comps, len(adj))
    out = []
    for k, comp in enumerate(comps):
        if all(where[w] == k for v in comp for w in adj[v]):
            out.append(comp)
    return out


def period(adj, start=0):
    """Period of the strongly connected class containing ``start``.

    gcd over edges u->v inside the class of level(u) + 1 - level(v), with BFS levels.
    """
    level = {start: 0}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in level:
                level[v] = level[u] + 1
                queue.append(v)
    comps = strongly_connected_components(adj)
    where = component_index(comps, len(adj))
    g = 0
    for u in level:
        for v in adj[u]:
            if where[v] == where[start]:
                g = gcd(g, level[u] + 1 - level[v])
    return g


def max_clique(n, adjacent):
    """Exact maximum clique by Bron-Kerbosch with pivoting over bitmasks.

    ``adjacent(u, v)`` is a symmetric predicate. Returns a sorted list of vertices;
    ties resolve to the first clique found in vertex order.
    """
    nbr = [0] * n
    for u in range(n):
        for v in range(n):
            if u != v and adjacent(u, v):
                nbr[u] |= 1 << v
    best = []

    def bits(mask):
        out = []
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out

    def expand(r, p, x):
        nonlocal best
        if not p and not x:
            if len(r) > len(best):
                best = list(r)
            return
        if len(r) + bin(p).count("1") <= len(best):
            return
        pivot = max(bits(p | x), key=lambda u: bin(p & nbr[u]).count("1"))
        for v in bits(p & ~nbr[pivot]):
            expand(r + [v], p & nbr[v], x & nbr[v])
            p &= ~(1 << v)
            x |= 1 << v

    expand([], (1 << n) - 1, 0)
    return sorted(best)
