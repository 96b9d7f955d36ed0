"""Analysis of finite constructive Markov chains X_{n+1} = f(X_n, V_{n+1}).

Decides whether i.i.d. innovations determine the stationary chain, measures the
missing information (the limit image R_0 and the counts M, N), and samples the
stationary law exactly by coupling from the past.
"""

from .accord import (
    accordability_relation,
    accordable,
    diagonal_recurrence_check,
    innovations_determine,
    max_non_accordable,
    min_rank,
)
from .catalog import builtin, gen_colored_graph, gen_group_action
from .cftp import cftp_residual_sample, cftp_sample
from .errors import CapExceeded, ConsistencyError, InputError, PreconditionError
from .filtering import atom_profile, convergence_trace, filtered_law
from .model import (
    RandomMapSystem,
    build_kernel,
    classify_kernel,
    load_system,
    make_system,
    mixing_profile,
    serialize,
    stationary_distribution,
)
from .semigroup import check_prop10, enumerate_semigroup, sample_backward_walk, walk_structure
from .structure import (
    build_full_partition,
    check_hypothesis_h,
    check_lemma12,
    check_thm13,
    extend_partition,
    simultaneous_accordability_number,
)

__version__ = "0.1.0"
