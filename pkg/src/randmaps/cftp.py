"""Coupling from the past on the full state space.

The backward horizon doubles (1, 2, 4, ...). Innovations already drawn for
recent times are reused and only older ones are appended, which is what makes
the output an exact draw from the stationary law. Running forward until the
maps coalesce is biased and deliberately not offered.
"""

from dataclasses import dataclass

import numpy as np

from .accord import min_rank
from .errors import CapExceeded, PreconditionError
from .model import build_kernel, compose_tables, require_irreducible
from .semigroup import MapSampler, sample_backward_walk

MAX_DEPTH = 2**20


@dataclass(frozen=True)
class CftpResult:
    sample: int
    coalescence_depth: int  # least n with T_n constant
    horizon: int  # doubled horizon at which coalescence was detected
    word: list  # newest innovation first; length == horizon


def first_constant_depth(system, word):
    t = tuple(range(system.d))
    if len(set(t)) == 1:
        return 0
    for n, i in enumerate(word, start=1):
        t = compose_tables(t, system.maps[i])
        if len(set(t)) == 1:
            return n
    return None


def check_cftp_preconditions(system):
    require_irreducible(build_kernel(system), system.labels, aperiodic=True)
    rank = min_rank(system).rank
    if rank != 1:
        raise PreconditionError(
            f"innovations do not determine the chain (M = {rank}); "
            "coupling from the past needs a synchronizing word (Thm 9, condition (1))",
            condition="M == 1",
        )


def cftp_sample(system, seed, max_depth=MAX_DEPTH, checked=False):
    """Exact sample of the stationary law. Requires M = 1 and an irreducible aperiodic kernel."""
    if not checked:
        check_cftp_preconditions(system)
    sampler = MapSampler(system, seed)
    word = []
    horizon = 1
    while horizon <= max_depth:
        word.extend(sampler.draw(horizon - len(word)))
        t = system.compose(word)
        if len(set(t)) == 1:
            depth = first_constant_depth(system, word)
            return CftpResult(t[0], depth, horizon, word)
        horizon *= 2
    raise CapExceeded(f"no coalescence within depth {max_depth}", partial_size=len(word))


def cftp_many(system, seeds):
    check_cftp_preconditions(system)
    return [cftp_sample(system, s, checked=True) for s in seeds]


@dataclass(frozen=True)
class ResidualSample:
    r0: frozenset
    sample: int
    stabilization_index: int


def cftp_residual_sample(system, seed, aux_seed, horizon=10**5, target=None):
    """Walk backward until the image shrinks to M points, then pick one uniformly.

    The uniform pick uses its own generator seeded by ``aux_seed``, independent of
    the innovations. Works for any M; for M = 1 it returns the CFTP value.
    """
    if target is None:
        require_irreducible(build_kernel(system), system.labels, aperiodic=True)
        target = min_rank(system).rank
    trace = sample_backward_walk(system, seed, horizon, target=target)
    if not trace.stabilized:
        raise CapExceeded(f"image did not shrink to {target} points within {horizon} steps")
    r0 = trace.limit_image
    pick = sorted(r0)[int(np.random.default_rng(aux_seed).integers(len(r0)))]
    return ResidualSample(r0, pick, trace.stabilization_index)


def empirical_law(samples, d):
    counts = np.bincount(np.asarray(samples, dtype=int), minlength=d)
    return counts / counts.sum()
