"""Exact conditional law of X_0 given a finite window of innovations.

Given the newest-first word (V_0, V_{-1}, ..., V_{-n+1}), X_0 = T_n(X_{-n}) with
X_{-n} ~ pi independent of the window, so the conditional law of X_0 is the
push-forward of pi through T_n. Growing the window replaces conditioning on the
whole innovation sequence; the stationary chain makes this exact at each n.
"""

import statistics
from dataclasses import dataclass, field
from fractions import Fraction

from .accord import min_rank
from .model import build_kernel, require_irreducible, stationary_distribution
from .semigroup import MapSampler


def _pi(system):
    return stationary_distribution(build_kernel(system), system.labels)


def filtered_law(system, word, pi=None):
    if pi is None:
        pi = _pi(system)
    t = system.compose(word)
    law = [Fraction(0)] * system.d
    for x, y in enumerate(t):
        law[y] += pi[x]
    return tuple(law)


def tv_to_uniform(law):
    support = [p for p in law if p > 0]
    u = 1.0 / len(support)
    return 0.5 * sum(abs(float(p) - u) for p in support)


@dataclass(frozen=True)
class FilterStep:
    n: int
    support: frozenset
    law: tuple
    tv: float
    atom_count: int


@dataclass
class FilteredTrace:
    seed: int
    word: list = field(default_factory=list)
    steps: list = field(default_factory=list)
    m: int = 0

    @property
    def final(self):
        return self.steps[-1]

    def stabilized_at(self):
        """First n with atom count equal to M, or None."""
        return next((s.n for s in self.steps if s.atom_count == self.m), None)


def convergence_trace(system, seed, horizon, pi=None, m=None):
    """Extend a sampled backward word one older innovation at a time for ``horizon`` steps."""
    require_irreducible(build_kernel(system), system.labels, aperiodic=True)
    if pi is None:
        pi = _pi(system)
    if m is None:
        m = min_rank(system).rank
    sampler = MapSampler(system, seed)
    trace = FilteredTrace(seed=seed, m=m)
    t = list(range(system.d))
    for n in range(horizon + 1):
        if n:
            i = sampler.draw()[0]
            trace.word.append(i)
            h = system.maps[i]
            t = [t[h[x]] for x in range(system.d)]
        law = [Fraction(0)] * system.d
        for x, y in enumerate(t):
            law[y] += pi[x]
        law = tuple(law)
        support = frozenset(y for y, p in enumerate(law) if p > 0)
        trace.steps.append(FilterStep(n, support, law, tv_to_uniform(law), len(support)))
    return trace


@dataclass(frozen=True)
class AtomProfile:
    final_count: int
    matches_m: bool
    nonincreasing: bool
    equal_masses_at_limit: bool


def atom_profile(trace, tol=1e-6):
    counts = [s.atom_count for s in trace.steps]
    masses = [float(p) for p in trace.final.law if p > 0]
    return AtomProfile(
        final_count=counts[-1],
        matches_m=counts[-1] == trace.m,
        nonincreasing=all(a >= b for a, b in zip(counts, counts[1:])),
        equal_masses_at_limit=max(masses) - min(masses) <= tol,
    )


def tower_identity_holds(system, word, pi=None):
    """filtered_law(w) == sum_h weight(h) * filtered_law(w + [h]), exactly."""
    if pi is None:
        pi = _pi(system)
    lhs = filtered_law(system, word, pi)
    rhs = [Fraction(0)] * system.d
    for i, w in enumerate(system.weights):
        for y, p in enumerate(filtered_law(system, list(word) + [i], pi)):
            rhs[y] += w * p
    return lhs == tuple(rhs)


def summarize_traces(traces):
    """Stabilization rate and median final TV over traces that reached M atoms."""
    stab = [t for t in traces if t.stabilized_at() is not None]
    return {
        "runs": len(traces),
        "stabilized": len(stab),
        "rate": len(stab) / len(traces) if traces else 0.0,
        "median_final_tv": statistics.median(t.final.tv for t in stab) if stab else None,
        "final_atom_counts": sorted({t.final.atom_count for t in traces}),
    }
