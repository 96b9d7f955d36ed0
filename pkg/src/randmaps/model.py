"""Random-map systems on a finite state space, their kernels and stationary laws.

A system is the essential map set H with exact rational weights. Maps are
tuples ``t`` with ``t[x]`` the image of state index ``x``. Words over H are
lists of map indices read as compositions: ``[a, b, c]`` is ``a∘b∘c``, so the
last entry is applied first. This matches the backward walk, whose newest
innovation sits at position 0.
"""

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InputError, PreconditionError
from .graphs import period, strongly_connected_components

DEFAULT_MAX_STATES = 16
HARD_MAX_STATES = 24


@dataclass(frozen=True)
class RandomMapSystem:
    labels: tuple
    maps: tuple
    weights: tuple
    names: tuple

    @property
    def d(self):
        return len(self.labels)

    @property
    def n_maps(self):
        return len(self.maps)

    def index(self, label):
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise InputError(f"unknown state label {label!r}") from None

    def map_index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise InputError(f"unknown map name {name!r}") from None

    def compose(self, word):
        """Table of the composition denoted by ``word`` (identity for the empty word)."""
        table = tuple(range(self.d))
        for i in reversed(word):
            h = self.maps[i]
            table = tuple(h[y] for y in table)
        return table

    def image(self, word, states=None):
        t = self.compose(word)
        src = range(self.d) if states is None else states
        return frozenset(t[x] for x in src)

    def word_names(self, word):
        return [self.names[i] for i in word]

    def all_bijections(self):
        return all(len(set(h)) == self.d for h in self.maps)


def compose_tables(s, t):
    """(s∘t)(x) = s(t(x))."""
    return tuple(s[y] for y in t)


def _parse_weight(raw):
    if isinstance(raw, float):
        raise InputError(f"weight {raw!r} must be a rational string such as '1/3'")
    try:
        return Fraction(str(raw).strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot parse weight {raw!r}") from None


def make_system(labels, maps, weights, names=None, max_states=DEFAULT_MAX_STATES):
    """Validate and canonicalize; duplicate tables are merged with summed weights."""
    if max_states > HARD_MAX_STATES:
        raise InputError(f"state cap {max_states} exceeds the hard limit {HARD_MAX_STATES}")
    labels = tuple(str(x) for x in labels)
    d = len(labels)
    if d < 1:
        raise InputError("at least one state is required")
    if len(set(labels)) != d:
        raise InputError("duplicate state labels")
    if d > max_states:
        raise InputError(f"{d} states exceeds the configured cap of {max_states}")
    if names is None:
        names = [f"f{i + 1}" for i in range(len(maps))]
    if not (len(maps) == len(weights) == len(names)):
        raise InputError("maps, weights and names differ in length")
    merged = {}
    order = []
    for table, w, name in zip(maps, weights, names):
        table = tuple(int(v) for v in table)
        if len(table) != d or any(not 0 <= v < d for v in table):
            raise InputError(f"map {name!r} is not a total function on the state space")
        w = Fraction(w)
        if w <= 0:
            raise InputError(f"map {name!r} has non-positive weight {w}")
        if table in merged:
            merged[table][0] += w
        else:
            merged[table] = [w, str(name)]
            order.append(table)
    if not order:
        raise InputError("at least one map is required")
    total = sum(merged[t][0] for t in order)
    if total != 1:
        raise InputError(f"weights sum to {total}, not 1")
    if len({merged[t][1] for t in order}) != len(order):
        raise InputError("duplicate map names")
    return RandomMapSystem(
        labels=labels,
        maps=tuple(order),
        weights=tuple(merged[t][0] for t in order),
        names=tuple(merged[t][1] for t in order),
    )


def load_system(document, max_states=DEFAULT_MAX_STATES):
    """Build a system from a JSON string or an already-parsed dict."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from None
    if not isinstance(document, dict) or "states" not in document or "maps" not in document:
        raise InputError("document needs 'states' and 'maps'")
    labels = [str(x) for x in document["states"]]
    if len(set(labels)) != len(labels):
        raise InputError("duplicate state labels")
    pos = {lab: i for i, lab in enumerate(labels)}
    tables, weights, names = [], [], []
    for k, entry in enumerate(document["maps"]):
        name = str(entry.get("name", f"f{k + 1}"))
        raw = entry.get("table")
        if not isinstance(raw, dict):
            raise InputError(f"map {name!r} needs a label->label table")
        for key, val in raw.items():
            if str(key) not in pos:
                raise InputError(f"map {name!r}: unknown label {key!r}")
            if str(val) not in pos:
                raise InputError(f"map {name!r}: unknown label {val!r}")
        if len(raw) != len(labels) or any(lab not in {str(k) for k in raw} for lab in labels):
            raise InputError(f"map {name!r} is not a total function on the state space")
        table = {str(k): str(v) for k, v in raw.items()}
        tables.append([pos[table[lab]] for lab in labels])
        weights.append(_parse_weight(entry.get("weight")))
        names.append(name)
    return make_system(labels, tables, weights, names, max_states=max_states)


def serialize(system):
    """Inverse of :func:`load_system` on canonical systems (returns a dict)."""
    return {
        "states": list(system.labels),
        "maps": [
            {
                "name": name,
                "weight": str(w),
                "table": {system.labels[x]: system.labels[h[x]] for x in range(system.d)},
            }
            for h, w, name in zip(system.maps, system.weights, system.names)
        ],
    }


def dumps(system):
    return json.dumps(serialize(system), indent=2, sort_keys=False)


@dataclass(frozen=True)
class Kernel:
    matrix: tuple  # rows of Fractions
    support: tuple  # adjacency lists

    @property
    def d(self):
        return len(self.matrix)

    def as_float(self):
        return np.array([[float(p) for p in row] for row in self.matrix])


@dataclass(frozen=True)
class KernelClass:
    irreducible: bool
    aperiodic: bool
    period: int | None
    components: tuple


def build_kernel(system):
    d = system.d
    rows = [[Fraction(0)] * d for _ in range(d)]
    for h, w in zip(system.maps, system.weights):
        for x in range(d):
            rows[x][h[x]] += w
    matrix = tuple(tuple(r) for r in rows)
    support = tuple(tuple(y for y in range(d) if matrix[x][y] > 0) for x in range(d))
    return Kernel(matrix, support)


def classify_kernel(kernel):
    comps = strongly_connected_components(kernel.support)
    irreducible = len(comps) == 1
    per = period(kernel.support, 0) if irreducible else None
    return KernelClass(
        irreducible=irreducible,
        aperiodic=irreducible and per == 1,
        period=per,
        components=tuple(tuple(c) for c in comps),
    )


def require_irreducible(kernel, labels=None, aperiodic=False):
    """Raise :class:`PreconditionError` unless the kernel meets the hypotheses."""
    cls = classify_kernel(kernel)
    if not cls.irreducible:
        named = [[labels[i] if labels else i for i in c] for c in cls.components]
        raise PreconditionError(
            f"irreducibility required (Thm 9 / Prop 2 hypotheses); "
            f"strongly connected components: {named}",
            condition="irreducible",
        )
    if aperiodic and not cls.aperiodic:
        raise PreconditionError(
            f"aperiodicity required (Prop 2 hypotheses); period is {cls.period}",
            condition="aperiodic",
        )
    return cls


def solve_exact(a, b):
    """Solve the square system a x = b over the rationals by Gauss-Jordan elimination."""
    n = len(a)
    m = [list(map(Fraction, row)) + [Fraction(rhs)] for row, rhs in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [v / p for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [v - f * u for v, u in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def stationary_distribution(kernel, labels=None):
    """Exact invariant law: pi (P - I) = 0 with the last equation replaced by sum(pi) = 1."""
    require_irreducible(kernel, labels)
    d = kernel.d
    # transpose: rows are equations indexed by target state y
    a = [[kernel.matrix[x][y] - (1 if x == y else 0) for x in range(d)] for y in range(d)]
    a[-1] = [Fraction(1)] * d
    b = [Fraction(0)] * (d - 1) + [Fraction(1)]
    return tuple(solve_exact(a, b))


def push_forward(law, P):
    d = len(law)
    return tuple(sum(law[x] * P[x][y] for x in range(d)) for y in range(d))


def tv_distance(p, q):
    return 0.5 * float(np.abs(np.asarray(p, dtype=float) - np.asarray(q, dtype=float)).sum())


def mixing_profile(kernel, n_max, labels=None):
    """[d(0), ..., d(n_max)] with d(n) = max_x TV(P^n(x, .), pi), in floating point."""
    require_irreducible(kernel, labels, aperiodic=True)
    pi = np.array([float(p) for p in stationary_distribution(kernel)])
    P = kernel.as_float()
    Pn = np.eye(kernel.d)
    out = []
    for _ in range(n_max + 1):
        out.append(float(0.5 * np.abs(Pn - pi).sum(axis=1).max()))
        Pn = Pn @ P
    return out
