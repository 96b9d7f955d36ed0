"""The semigroup generated by H and the backward walk T_n on it.

T_0 = id and T_{n+1} = T_n ∘ h with h the next (older) innovation, so the walk
moves along right-multiplication edges s -> s∘h.
"""

from dataclasses import dataclass

import numpy as np

from .accord import accordability_relation, max_non_accordable, min_rank
from .errors import CapExceeded
from .graphs import strongly_connected_components, terminal_components
from .model import build_kernel, compose_tables, require_irreducible

DEFAULT_CAP = 10**6


@dataclass(frozen=True)
class SemigroupTable:
    elements: list  # map tables
    words: list  # a generating word per element
    right_edges: list  # right_edges[s][h] = index of s∘h

    def __len__(self):
        return len(self.elements)

    def index(self, table):
        return self.elements.index(tuple(table))


def enumerate_semigroup(system, cap=DEFAULT_CAP):
    """BFS closure of H under s -> s∘h. Raises CapExceeded rather than truncating."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    elements, words, where = [], [], {}

    def add(table, word):
        if table not in where:
            if len(elements) >= cap:
                raise CapExceeded(
                    f"semigroup exceeds cap {cap} (enumerated {len(elements)} so far)",
                    partial_size=len(elements),
                )
            where[table] = len(elements)
            elements.append(table)
            words.append(word)
        return where[table]

    for i, h in enumerate(system.maps):
        add(h, [i])
    right = []
    k = 0
    while k < len(elements):
        s = elements[k]
        right.append([add(compose_tables(s, h), words[k] + [i]) for i, h in enumerate(system.maps)])
        k += 1
    return SemigroupTable(elements, words, right)


@dataclass(frozen=True)
class WalkGraph:
    """Nodes 0..len(S)-1 are semigroup elements; ``start`` is the identity node.

    When the identity belongs to S, ``start`` is its index and no extra node exists.
    """

    table: SemigroupTable
    start: int
    adj: list
    sccs: list
    terminal: list

    @property
    def recurrent(self):
        return sorted(v for comp in self.terminal for v in comp)


def walk_structure(table):
    n = len(table)
    d = len(table.elements[0]) if n else 0
    ident = tuple(range(d))
    adj = [sorted(set(row)) for row in table.right_edges]
    try:
        start = table.index(ident)
    except ValueError:
        start = n
        # id∘h = h: the generators are elements 0..|H|-1 by construction
        adj.append(sorted(set(range(len(table.right_edges[0]) if n else 0))))
    sccs = strongly_connected_components(adj)
    terminal = terminal_components(adj, sccs)
    return WalkGraph(table, start, adj, sccs, terminal)


@dataclass(frozen=True)
class Prop10Detail:
    element: tuple
    word: list
    image: list
    size: int
    pairwise_non_accordable: bool


@dataclass(frozen=True)
class Prop10Result:
    ok: bool
    m: int
    size_of_s: int
    min_image_over_s: int
    details: list


def check_prop10(system, cap=DEFAULT_CAP):
    """Every recurrent element of the walk has an image of M pairwise non-accordable points."""
    require_irreducible(build_kernel(system), system.labels, aperiodic=True)
    rel = accordability_relation(system)
    m = max_non_accordable(system, with_witnesses=False).m
    table = enumerate_semigroup(system, cap)
    walk = walk_structure(table)
    details = []
    for v in walk.recurrent:
        el = table.elements[v]
        img = sorted(set(el))
        sep = all(not rel[a][b] for i, a in enumerate(img) for b in img[i + 1:])
        details.append(Prop10Detail(el, table.words[v], img, len(img), sep))
    min_img = min(len(set(el)) for el in table.elements)
    ok = all(x.size == m and x.pairwise_non_accordable for x in details) and min_img == m
    return Prop10Result(ok, m, len(table), min_img, details)


class MapSampler:
    """Draws map indices i.i.d. by weight. Weights are turned into floats once."""

    def __init__(self, system, seed):
        self.rng = np.random.default_rng(seed)
        self.cum = np.cumsum([float(w) for w in system.weights])
        self.cum[-1] = 1.0

    def draw(self, k=1):
        u = self.rng.random(k)
        return [int(i) for i in np.searchsorted(self.cum, u, side="right")]


@dataclass
class BackwardTrace:
    seed: int
    word: list
    images: list  # images[n] = T_n(E), n = 0..len(word)
    limit_image: frozenset | None
    stabilization_index: int | None
    target_size: int

    @property
    def stabilized(self):
        return self.stabilization_index is not None


def sample_backward_walk(system, seed, horizon, target=None):
    """Sample T_1, T_2, ... and stop once |T_n(E)| reaches the minimal rank (or at horizon)."""
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    if target is None:
        target = min_rank(system).rank
    sampler = MapSampler(system, seed)
    t = tuple(range(system.d))
    images = [frozenset(t)]
    word = []
    if len(images[0]) == target:
        return BackwardTrace(seed, word, images, images[0], 0, target)
    for n in range(1, horizon + 1):
        i = sampler.draw()[0]
        word.append(i)
        t = compose_tables(t, system.maps[i])
        images.append(frozenset(t))
        if len(images[-1]) == target:
            return BackwardTrace(seed, word, images, images[-1], n, target)
    return BackwardTrace(seed, word, images, None, None, target)
