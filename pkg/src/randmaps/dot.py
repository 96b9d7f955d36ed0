"""Graphviz DOT text for the pair graph, the accordability relation and the walk graph."""

from .accord import MERGED, accordability_relation, pair_graph


def _q(s):
    return '"' + str(s).replace('"', r"\"") + '"'


def pair_graph_dot(system):
    nodes, succ = pair_graph(system)
    lab = system.labels

    def name(v):
        return MERGED if v == MERGED else "{" + f"{lab[v[0]]},{lab[v[1]]}" + "}"

    lines = ["digraph pairs {", f"  {_q(MERGED)} [shape=doublecircle];"]
    for v in nodes:
        if v == MERGED:
            continue
        for i, w in enumerate(succ[v]):
            lines.append(f"  {_q(name(v))} -> {_q(name(w))} [label={_q(system.names[i])}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def relation_dot(system, rel=None):
    rel = accordability_relation(system) if rel is None else rel
    lines = ["graph accordable {"]
    lines += [f"  {_q(x)};" for x in system.labels]
    for x in range(system.d):
        for y in range(x + 1, system.d):
            if rel[x][y]:
                lines.append(f"  {_q(system.labels[x])} -- {_q(system.labels[y])};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def walk_graph_dot(system, walk):
    """Elements are labeled by their generating words; terminal classes are filled."""
    table = walk.table
    recurrent = set(walk.recurrent)
    palette = ["lightblue", "palegreen", "khaki", "pink", "lightsalmon", "plum"]

    def name(v):
        if v == len(table):
            return "id"
        return "".join(system.names[i] + " " for i in table.words[v]).strip()

    lines = ["digraph walk {", f"  {_q(name(walk.start))} [shape=box];"]
    for k, comp in enumerate(walk.terminal):
        color = palette[k % len(palette)]
        for v in comp:
            lines.append(f"  {_q(name(v))} [style=filled, fillcolor={color}, peripheries=2];")
    for v, succ in enumerate(walk.adj):
        if v not in recurrent and v < len(table):
            lines.append(f"  {_q(name(v))};")
        for w in succ:
            lines.append(f"  {_q(name(v))} -> {_q(name(w))};")
    lines.append("}")
    return "\n".join(lines) + "\n"
