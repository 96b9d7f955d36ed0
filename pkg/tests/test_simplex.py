import itertools
from fractions import Fraction

import numpy as np
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog

from randmaps.simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, solve_lp


def test_small_optimum():
    # max x + y  s.t.  x + 2y + s1 = 4, 3x + y + s2 = 6
    res = solve_lp([1, 1, 0, 0], [[1, 2, 1, 0], [3, 1, 0, 1]], [4, 6])
    assert res.status == OPTIMAL
    assert res.value == Fraction(14, 5)
    assert res.x[:2] == (Fraction(8, 5), Fraction(6, 5))


def test_infeasible_and_unbounded():
    assert solve_lp([1, 0], [[1, 1]], [-1]).status == INFEASIBLE
    assert solve_lp([1, 0], [[1, -1]], [0]).status == UNBOUNDED


def test_redundant_rows():
    res = solve_lp([1, 0], [[1, 1], [2, 2], [1, 1]], [1, 2, 1])
    assert res.status == OPTIMAL and res.x == (1, 0)
    assert solve_lp([1, 0], [[1, 1], [1, 1]], [1, 2]).status == INFEASIBLE


def test_degenerate_cycling_example():
    """Beale's example cycles under the textbook rule; Bland's rule must terminate."""
    c = [Fraction(3, 4), -150, Fraction(1, 50), -6, 0, 0, 0]
    A = [
        [Fraction(1, 4), -60, Fraction(-1, 25), 9, 1, 0, 0],
        [Fraction(1, 2), -90, Fraction(-1, 50), 3, 0, 1, 0],
        [0, 0, 1, 0, 0, 0, 1],
    ]
    res = solve_lp(c, A, [0, 0, 1])
    assert res.status == OPTIMAL and res.value == Fraction(1, 20)


def _brute_vertices(c, A, b):
    """Best basic feasible solution by trying every column basis."""
    A = np.array(A, dtype=object)
    m, n = A.shape
    best = None
    for cols in itertools.combinations(range(n), m):
        M = [[Fraction(A[i][j]) for j in cols] + [Fraction(b[i])] for i in range(m)]
        # gauss-jordan
        ok = True
        for k in range(m):
            p = next((r for r in range(k, m) if M[r][k] != 0), None)
            if p is None:
                ok = False
                break
            M[k], M[p] = M[p], M[k]
            M[k] = [v / M[k][k] for v in M[k]]
            for r in range(m):
                if r != k and M[r][k] != 0:
                    M[r] = [a - M[r][k] * bb for a, bb in zip(M[r], M[k])]
        if not ok:
            continue
        xs = [M[k][m] for k in range(m)]
        if min(xs) < 0:
            continue
        val = sum(Fraction(c[j]) * v for j, v in zip(cols, xs))
        best = val if best is None else max(best, val)
    return best


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3).flatmap(lambda m: st.tuples(
    st.lists(st.lists(st.integers(-3, 3), min_size=m + 2, max_size=m + 2), min_size=m, max_size=m),
    st.lists(st.integers(0, 4), min_size=m, max_size=m),
    st.lists(st.integers(-3, 3), min_size=m + 2, max_size=m + 2),
)))
def test_against_scipy_and_vertices(data):
    A, b, c = data
    # bound the region so the optimum exists when feasible
    n = len(c)
    A = [row + [0] for row in A] + [[1] * n + [1]]
    b = b + [5]
    c = c + [0]
    res = solve_lp(c, A, b)
    ref = linprog([-v for v in c], A_eq=A, b_eq=b, bounds=[(0, None)] * len(c), method="highs")
    if ref.status == 2:
        assert res.status == INFEASIBLE
        return
    assert res.status == OPTIMAL
    assert abs(float(res.value) + ref.fun) < 1e-7
    assert all(v >= 0 for v in res.x)
    assert all(sum(Fraction(a) * x for a, x in zip(row, res.x)) == bi for row, bi in zip(A, b))
    brute = _brute_vertices(c, A, b)
    if brute is not None:
        assert res.value == brute
