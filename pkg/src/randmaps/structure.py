"""Uniform-reweighting hypothesis, the count N, and the block partition of E.

The hypothesis asks for strictly positive weights alpha on H under which the
uniform law on E is invariant: sum_h alpha_h * |h^-1{y}| = 1 for every y. It is
decided by an exact LP that maximizes the smallest weight.
"""

import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .accord import accordability_relation, max_non_accordable, min_rank
from .errors import CapExceeded, ConsistencyError, PreconditionError
from .filtering import filtered_law
from .model import DEFAULT_MAX_STATES, build_kernel, require_irreducible
from .simplex import OPTIMAL, solve_lp


def preimage_counts(system):
    """counts[h][y] = |h^-1{y}|."""
    out = []
    for h in system.maps:
        row = [0] * system.d
        for y in h:
            row[y] += 1
        out.append(row)
    return out


@dataclass(frozen=True)
class HFeasibility:
    feasible: bool
    alpha: dict | None
    t_star: Fraction | None


def check_hypothesis_h(system):
    """Exact LP: maximize t s.t. alpha_h >= t, sum alpha = 1, uniform law invariant."""
    k, d = system.n_maps, system.d
    counts = preimage_counts(system)
    # columns: alpha_0..alpha_{k-1}, t, s_0..s_{k-1}
    n = 2 * k + 1
    A, b = [], []
    for i in range(k):
        row = [0] * n
        row[i], row[k], row[k + 1 + i] = 1, -1, -1
        A.append(row)
        b.append(0)
    A.append([1] * k + [0] * (k + 1))
    b.append(1)
    for y in range(d):
        A.append([counts[i][y] for i in range(k)] + [0] * (k + 1))
        b.append(1)
    c = [0] * k + [1] + [0] * k
    res = solve_lp(c, A, b)
    if res.status != OPTIMAL:
        return HFeasibility(False, None, None)
    alpha = {system.names[i]: res.x[i] for i in range(k)}
    t_star = res.x[k]
    return HFeasibility(t_star > 0, alpha if t_star > 0 else None, t_star)


def verify_h_certificate(system, alpha):
    """Re-check a reweighting exactly, independently of the LP."""
    weights = [Fraction(alpha[name]) for name in system.names]
    if any(w <= 0 for w in weights) or sum(weights) != 1:
        return False
    counts = preimage_counts(system)
    return all(
        sum(w * counts[i][y] for i, w in enumerate(weights)) == 1 for y in range(system.d)
    )


@dataclass(frozen=True)
class Collapse:
    """A largest simultaneously accordable set, the word collapsing it, and its value."""

    n: int
    block: frozenset
    word: list
    value: int


def _preimage(h, states, d):
    return frozenset(x for x in range(d) if h[x] in states)


def collapsible_preimages(system, cap=DEFAULT_MAX_STATES):
    """All sets s^-1{c}, s in S, with a word for s and the value c.

    Backward BFS from singletons: B -> h^-1(B) corresponds to s -> s∘h.
    Every simultaneously accordable set sits inside one of these.
    """
    d = system.d
    if d > cap:
        raise CapExceeded(f"{d} states exceeds the subset-traversal cap of {cap}")
    found = {}
    queue = deque()
    for c in range(d):
        for i, h in enumerate(system.maps):
            pre = _preimage(h, {c}, d)
            key = (pre, c)
            if pre and key not in found:
                found[key] = [i]
                queue.append(key)
    while queue:
        pre, c = queue.popleft()
        for i, h in enumerate(system.maps):
            nxt = _preimage(h, pre, d)
            key = (nxt, c)
            if nxt and key not in found:
                found[key] = found[(pre, c)] + [i]
                queue.append(key)
    return found


def simultaneous_accordability_number(system, cap=DEFAULT_MAX_STATES):
    found = collapsible_preimages(system, cap)
    best = None
    for (pre, c), word in found.items():
        if best is None or len(pre) > len(best[0]):
            best = (pre, c, word)
    pre, c, word = best
    return Collapse(len(pre), pre, word, c)


def collapses_forward(system, states):
    """Forward check that some word of H maps ``states`` to one point."""
    start = frozenset(states)
    if len(start) <= 1:
        return True
    seen = {start}
    queue = deque([start])
    while queue:
        a = queue.popleft()
        for h in system.maps:
            b = frozenset(h[x] for x in a)
            if len(b) == 1:
                return True
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return False


def _require_h(system, aperiodic=True):
    require_irreducible(build_kernel(system), system.labels, aperiodic=aperiodic)
    feas = check_hypothesis_h(system)
    if not feas.feasible:
        raise PreconditionError(
            "uniform-reweighting hypothesis fails (no positive alpha makes the uniform law invariant)",
            condition="hypothesis_h",
        )
    return feas


@dataclass(frozen=True)
class Lemma12Result:
    ok: bool
    n: int
    blocks_checked: int
    counterexample: dict | None


def check_lemma12(system, seed=0, deep_words=200, max_len=20):
    """Preimages of a largest collapsible set stay collapsible and keep size N.

    Checked for every generator and for random deep words.
    """
    _require_h(system)
    n = simultaneous_accordability_number(system).n
    blocks = sorted({pre for (pre, _c) in collapsible_preimages(system) if len(pre) == n}, key=sorted)
    rng = random.Random(seed)
    for block in blocks:
        words = [[i] for i in range(system.n_maps)]
        words += [
            [rng.randrange(system.n_maps) for _ in range(rng.randint(2, max_len))]
            for _ in range(deep_words // max(1, len(blocks)) + 1)
        ]
        for word in words:
            s = system.compose(word)
            pre = _preimage(s, block, system.d)
            if len(pre) != n or not collapses_forward(system, pre):
                return Lemma12Result(
                    False, n, len(blocks),
                    {"block": sorted(block), "word": word, "preimage": sorted(pre)},
                )
    return Lemma12Result(True, n, len(blocks), None)


@dataclass(frozen=True)
class Partition:
    blocks: list  # frozensets
    word: list  # collapsing word
    values: list  # c_i, one per block


def validate_partition(system, part, n=None, rel=None):
    """Return a list of violated conditions (empty when valid)."""
    problems = []
    s = system.compose(part.word)
    seen = set()
    for block, c in zip(part.blocks, part.values):
        if seen & block:
            problems.append(f"block {sorted(block)} overlaps an earlier block")
        seen |= block
        if n is not None and len(block) != n:
            problems.append(f"block {sorted(block)} has size {len(block)}, expected {n}")
        if {s[x] for x in block} != {c}:
            problems.append(f"collapsing word is not constant = {c} on {sorted(block)}")
    if len(part.blocks) != len(part.values):
        problems.append("blocks and values differ in number")
    if rel is not None:
        vals = part.values
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                if rel[vals[i]][vals[j]]:
                    problems.append(f"block values {vals[i]} and {vals[j]} are accordable")
    return problems


def initial_partition(system):
    col = simultaneous_accordability_number(system)
    return Partition([col.block], list(col.word), [col.value])


def _path_word(system, src, dst):
    """Nonempty word t with t(src) = dst, by BFS over single-state moves."""
    parent = {}
    queue = deque()
    for i, h in enumerate(system.maps):
        y = h[src]
        if y not in parent:
            parent[y] = (None, i)
            queue.append(y)
    while queue and dst not in parent:
        x = queue.popleft()
        for i, h in enumerate(system.maps):
            y = h[x]
            if y not in parent:
                parent[y] = (x, i)
                queue.append(y)
    if dst not in parent:
        return None
    applied = []
    node = dst
    while node is not None:
        prev, i = parent[node]
        applied.append(i)
        node = prev
    # applied is last-applied-first, which is already composition order
    return applied


def extend_partition(system, partial, n=None, rel=None):
    """One step of the block construction: from k blocks to k + 1.

    With s the current collapsing map, a a state outside the blocks and t in S
    sending c_1 to a, the new blocks are the preimages of c_1..c_k, s(a) under
    s∘t∘s. The postconditions are verified, not assumed.
    """
    _require_h(system)
    if n is None:
        n = simultaneous_accordability_number(system).n
    if rel is None:
        rel = accordability_relation(system)
    bad = validate_partition(system, partial, n)
    if bad:
        raise ValueError("invalid partial partition: " + "; ".join(bad))
    covered = frozenset().union(*partial.blocks)
    rest = [x for x in range(system.d) if x not in covered]
    if not rest:
        raise PreconditionError("blocks already cover the state space", condition="union_ne_E")
    s = system.compose(partial.word)
    a = rest[0]
    values = list(partial.values) + [s[a]]
    t_word = _path_word(system, partial.values[0], a)
    if t_word is None:
        raise ConsistencyError(f"no element of S sends {partial.values[0]} to {a} despite irreducibility")
    word = list(partial.word) + t_word + list(partial.word)
    u = system.compose(word)
    blocks = [frozenset(x for x in range(system.d) if u[x] == c) for c in values]
    out = Partition(blocks, word, values)
    bad = validate_partition(system, out, n, rel)
    if len(set(values)) != len(values):
        bad.append("block values are not distinct")
    if bad:
        raise ConsistencyError(
            "block construction failed verification: " + "; ".join(bad)
            + f" (a={a}, t={t_word}, word={word})"
        )
    return out


def build_full_partition(system):
    """Iterate :func:`extend_partition` until the blocks cover E. Returns (partition, steps)."""
    _require_h(system)
    n = simultaneous_accordability_number(system).n
    rel = accordability_relation(system)
    part = initial_partition(system)
    steps = 0
    while sum(len(b) for b in part.blocks) < system.d:
        part = extend_partition(system, part, n, rel)
        steps += 1
    return part, steps


@dataclass(frozen=True)
class Thm13Result:
    m: int
    n: int
    mn_equals_d: bool
    fiber_check: bool
    fibers: list
    prime_branch: str | None


def _is_prime(k):
    return k >= 2 and all(k % p for p in range(2, int(k**0.5) + 1))


def check_thm13(system):
    """M*N = |E|, fibers of a minimal-rank element have N points, prime dichotomy."""
    _require_h(system)
    m = max_non_accordable(system, with_witnesses=False).m
    n = simultaneous_accordability_number(system).n
    s = system.compose(min_rank(system).witness)
    fibers = [sorted(x for x in range(system.d) if s[x] == c) for c in sorted(set(s))]
    fiber_ok = all(len(f) == n for f in fibers)
    branch = None
    if _is_prime(system.d):
        if system.all_bijections():
            uniform = tuple(Fraction(1, system.d) for _ in range(system.d))
            words = [[]] + [[i] for i in range(system.n_maps)]
            words += [[i, j] for i in range(system.n_maps) for j in range(system.n_maps)]
            ok = all(filtered_law(system, w) == uniform for w in words)
            branch = "all_bijections" if ok else "neither"
        elif n == system.d and m == 1:
            branch = "all_accordable"
        else:
            branch = "neither"
    return Thm13Result(m, n, m * n == system.d, fiber_ok, fibers, branch)


@dataclass(frozen=True)
class HReport:
    feasible: bool
    alpha: dict | None
    t_star: Fraction | None
    n: int
    m: int
    product_check: bool


def h_report(system):
    feas = check_hypothesis_h(system)
    n = simultaneous_accordability_number(system).n
    m = max_non_accordable(system, with_witnesses=False).m
    return HReport(feas.feasible, feas.alpha, feas.t_star, n, m, m * n == system.d)
