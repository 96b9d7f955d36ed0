import random
from fractions import Fraction

import pytest

from randmaps import catalog
from randmaps.errors import InputError
from randmaps.model import build_kernel, classify_kernel
from randmaps.structure import verify_h_certificate


def test_builtin_names(trunc):
    assert catalog.builtin("vinokourov").names == ("id", "swap")
    assert catalog.builtin("Non-H-Example").d == 4
    assert catalog.builtin("counterexample-truncated") == trunc
    assert catalog.builtin("counterexample-truncated(6)").d == 7
    assert catalog.builtin("counterexample-truncated:3").d == 4
    with pytest.raises(InputError):
        catalog.builtin("nope")
    with pytest.raises(InputError):
        catalog.counterexample_truncated(0)


def test_identify(vino, nonh):
    assert catalog.identify(vino) == "vinokourov"
    assert catalog.identify(nonh) == "non-h-example"
    assert catalog.identify(catalog.counterexample_truncated(5)) == "counterexample-truncated(5)"
    assert catalog.identify(catalog.gen_colored_graph(4, 2, 0)) is None


def test_truncated_tables(trunc):
    assert trunc.maps == ((0, 0, 1, 2, 3), (1, 2, 3, 4, 4))
    assert trunc.weights == (Fraction(2, 3), Fraction(1, 3))


@pytest.mark.parametrize("d,colors", [(4, 2), (6, 3), (8, 2), (5, 4)])
def test_colored_graph_degrees(d, colors):
    for seed in range(20):
        tables = catalog.colored_graph_tables(d, colors, seed)
        indeg = [0] * d
        for t in tables:
            for y in t:
                indeg[y] += 1
        assert indeg == [colors] * d
        s = catalog.gen_colored_graph(d, colors, seed)
        assert verify_h_certificate(s, catalog.color_uniform_alpha(s, tables))
    assert catalog.colored_graph_tables(d, colors, 1) == catalog.colored_graph_tables(d, colors, 1)


def test_group_tables():
    for labels, table in (catalog.cyclic_group(5), catalog.symmetric_group(3)):
        e = catalog.check_group_table(table)
        assert all(table[e][x] == x for x in range(len(table)))
    with pytest.raises(InputError):
        catalog.check_group_table([[0, 1], [0, 1]])
    with pytest.raises(InputError):
        catalog.check_group_table([[0, 1, 2], [1, 2, 0]])


def test_group_action_is_bijective_and_weights():
    labels, table = catalog.symmetric_group(3)
    s = catalog.gen_group_action(table, {1: "1/3", 3: "2/3"}, labels)
    assert s.all_bijections() and s.weights == (Fraction(1, 3), Fraction(2, 3))
    labels, table = catalog.cyclic_group(4)
    s = catalog.gen_group_action(table, {1: 1}, labels)
    assert classify_kernel(build_kernel(s)).period == 4


def test_random_system_is_deterministic():
    a = catalog.random_system(random.Random(3))
    b = catalog.random_system(random.Random(3))
    assert a == b and sum(a.weights) == 1
