"""Built-in example systems and parameterized generators."""

import itertools
import random
import re
from fractions import Fraction

from .errors import InputError
from .model import DEFAULT_MAX_STATES, make_system

BUILTIN_NAMES = ("vinokourov", "non-h-example", "counterexample-truncated(K)")

# Element lists printed alongside a builtin, as words of map names (composition order).
# Reports compare them with the enumerated semigroup.
LISTED_SEMIGROUPS = {
    "non-h-example": ["f1", "f2", "f3", "f1 f1", "f2 f2"],
}


def vinokourov():
    """Two-state sign chain X_{n+1} = X_n V_{n+1}, with p = q = 1/2."""
    return make_system(
        ["-1", "1"],
        [[0, 1], [1, 0]],
        [Fraction(1, 2), Fraction(1, 2)],
        ["id", "swap"],
    )


def non_h_example():
    """Four states, three maps; the uniform law cannot be made invariant."""
    # f(1..4) written with 1-based labels, stored 0-based
    tables = {
        "f1": [2, 3, 1, 1],
        "f2": [2, 4, 1, 1],
        "f3": [1, 2, 3, 3],
    }
    return make_system(
        ["1", "2", "3", "4"],
        [[v - 1 for v in t] for t in tables.values()],
        [Fraction(1, 3)] * 3,
        list(tables),
    )


def counterexample_truncated(k=4):
    """The shift-down / shift-up pair on {0..k}, with f2 reflected at k.

    On N the pair has every two states accordable but no constant composition.
    Capping f2(k) = k changes that: f1^k is constant on {0..k}, so the truncated
    system has minimal rank 1. It is a finite stand-in, not the original example.
    """
    if k < 1:
        raise InputError("truncation level must be >= 1")
    states = list(range(k + 1))
    down = [max(x - 1, 0) for x in states]
    up = [min(x + 1, k) for x in states]
    return make_system(
        [str(x) for x in states],
        [down, up],
        [Fraction(2, 3), Fraction(1, 3)],
        ["f1", "f2"],
        max_states=max(DEFAULT_MAX_STATES, min(k + 1, 24)),
    )


def builtin(name):
    key = name.strip().lower()
    if key == "vinokourov":
        return vinokourov()
    if key == "non-h-example":
        return non_h_example()
    m = re.fullmatch(r"counterexample-truncated(?:\((\d+)\)|[:=](\d+))?", key)
    if m:
        k = int(m.group(1) or m.group(2) or 4)
        return counterexample_truncated(k)
    raise InputError(f"unknown builtin {name!r}; choose from {', '.join(BUILTIN_NAMES)}")


def colored_graph_tables(d, colors, seed):
    """Random edge-colored digraph: one edge of each color leaves every node and
    exactly ``colors`` edges enter every node. Returns one table per color.

    Built from ``colors`` random permutations whose edges are recolored at each
    node by a random shuffle, which keeps the in-degrees and out-colors intact.
    """
    if d < 1 or colors < 1:
        raise InputError("need d >= 1 and at least one color")
    rng = random.Random(seed)
    perms = []
    for _ in range(colors):
        p = list(range(d))
        rng.shuffle(p)
        perms.append(p)
    tables = [[0] * d for _ in range(colors)]
    for x in range(d):
        order = list(range(colors))
        rng.shuffle(order)
        for c in range(colors):
            tables[c][x] = perms[order[c]][x]
    return tables


def identify(system):
    """Name of the builtin equal to ``system`` (for k <= 8 truncations), else None."""
    candidates = [("vinokourov", vinokourov()), ("non-h-example", non_h_example())]
    candidates += [(f"counterexample-truncated({k})", counterexample_truncated(k)) for k in range(1, 9)]
    return next((name for name, s in candidates if s == system), None)


def gen_colored_graph(d, colors, seed):
    """Colored-graph system with weight 1/colors per color (equal color maps merge)."""
    return make_system(
        [str(x) for x in range(d)],
        colored_graph_tables(d, colors, seed),
        [Fraction(1, colors)] * colors,
        [f"c{c + 1}" for c in range(colors)],
    )


def color_uniform_alpha(system, tables):
    """The uniform-over-colors reweighting expressed on the merged map set."""
    colors = len(tables)
    alpha = {name: Fraction(0) for name in system.names}
    for t in tables:
        alpha[system.names[system.maps.index(tuple(t))]] += Fraction(1, colors)
    return alpha


def check_group_table(table):
    n = len(table)
    if n == 0 or any(len(row) != n for row in table):
        raise InputError("group table must be square and nonempty")
    if any(not 0 <= v < n for row in table for v in row):
        raise InputError("group table entries out of range")
    e = next((g for g in range(n) if all(table[g][x] == x for x in range(n))), None)
    if e is None or any(table[x][e] != x for x in range(n)):
        raise InputError("group table has no two-sided identity")
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise InputError("group table is not associative")
    for g in range(n):
        if not any(table[g][x] == e for x in range(n)):
            raise InputError(f"element {g} has no inverse")
    return e


def gen_group_action(group_table, generator_weights, labels=None):
    """Left-translation walk x -> g.x on a finite group; every map is a bijection."""
    check_group_table(group_table)
    n = len(group_table)
    labels = [str(g) for g in range(n)] if labels is None else [str(x) for x in labels]
    items = sorted(generator_weights.items())
    return make_system(
        labels,
        [list(group_table[g]) for g, _ in items],
        [Fraction(w) for _, w in items],
        [f"g{labels[g]}" for g, _ in items],
    )


def cyclic_group(n):
    return [str(k) for k in range(n)], [[(a + b) % n for b in range(n)] for a in range(n)]


def symmetric_group(k):
    """Elements are tuples p with p[i] the image of i; product (p*q)(i) = p(q(i))."""
    perms = list(itertools.permutations(range(k)))
    where = {p: i for i, p in enumerate(perms)}
    table = [[where[tuple(p[q[i]] for i in range(k))] for q in perms] for p in perms]
    return ["".join(map(str, p)) for p in perms], table


def random_system(rng, d_max=6, h_max=4, d_min=1, denom_max=9):
    """Random maps on d <= d_max states with random positive rational weights."""
    d = rng.randint(d_min, d_max)
    k = rng.randint(1, h_max)
    tables = [[rng.randrange(d) for _ in range(d)] for _ in range(k)]
    raw = [Fraction(rng.randint(1, denom_max)) for _ in range(k)]
    total = sum(raw)
    return make_system([str(x) for x in range(d)], tables, [w / total for w in raw])
