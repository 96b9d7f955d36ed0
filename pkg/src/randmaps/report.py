"""Full analysis report: a JSON-serializable dict plus a plain-text rendering.

Rationals are emitted as strings ("p/q"), floats with fixed precision, and keys
in a fixed order, so identical input gives byte-identical JSON.
"""

import json

from . import catalog
from .accord import diagonal_recurrence_check, innovations_determine, max_non_accordable, min_rank
from .errors import CapExceeded
from .model import build_kernel, classify_kernel, mixing_profile, require_irreducible, stationary_distribution
from .semigroup import check_prop10, enumerate_semigroup
from .structure import check_thm13, h_report

THEORY_MAP = {
    "accordability": "Def 8",
    "determination": "Thm 9",
    "recurrent_image": "Prop 10",
    "conditional_law": "Thm 11",
    "hypothesis_h": "section 3.2 hypothesis H",
    "mn_product": "Thm 13",
    "tail_triviality": "Prop 2",
}

REPORT_SCHEMA_VERSION = 1


def fmt_float(x):
    return float(f"{x:.12e}")


def word_str(system, word):
    return " ".join(system.names[i] for i in word)


def system_summary(system):
    return {
        "states": list(system.labels),
        "n_states": system.d,
        "maps": [
            {"name": n, "weight": str(w), "table": [system.labels[v] for v in h]}
            for h, w, n in zip(system.maps, system.weights, system.names)
        ],
    }


def analyze(system, semigroup_cap=10**5, mixing_horizon=500, name=None):
    """Run every analysis. Raises PreconditionError for reducible kernels."""
    kernel = build_kernel(system)
    require_irreducible(kernel, system.labels)
    cls = classify_kernel(kernel)
    lab = system.labels
    pi = stationary_distribution(kernel, lab)
    acc = max_non_accordable(system)
    rank = min_rank(system)
    det = innovations_determine(system)
    diag = diagonal_recurrence_check(system)
    hr = h_report(system)
    notes = []

    rep = {
        "schema": REPORT_SCHEMA_VERSION,
        "system": system_summary(system),
        "kernel": {
            "irreducible": cls.irreducible,
            "aperiodic": cls.aperiodic,
            "period": cls.period,
            "matrix": [[str(p) for p in row] for row in kernel.matrix],
        },
        "stationary": {lab[x]: str(p) for x, p in enumerate(pi)},
        "accordability": {
            "relation": [[int(v) for v in row] for row in acc.relation],
            "accordable_pairs": [
                [lab[x], lab[y]] for x in range(system.d) for y in range(x + 1, system.d) if acc.relation[x][y]
            ],
            "witnesses": {f"{lab[x]},{lab[y]}": word_str(system, w) for (x, y), w in sorted(acc.witnesses.items())},
        },
        "M": acc.m,
        "M_witness_set": [lab[x] for x in acc.witness_set],
        "min_rank": {"rank": rank.rank, "word": word_str(system, rank.witness)},
        "diagonal_recurrence": {
            "holds": diag.holds,
            "offenders": [[lab[x], lab[y]] for x, y in diag.offenders],
        },
        "determination": {
            "verdict": det.verdict,
            "all_pairs_accordable": det.all_pairs_accordable,
            "diagonal_recurrence": det.diagonal_recurrence.holds,
            "min_rank_is_one": det.rank.rank == 1,
        },
        "hypothesis_h": {
            "feasible": hr.feasible,
            "t_star": None if hr.t_star is None else str(hr.t_star),
            "alpha": None if hr.alpha is None else {k: str(v) for k, v in hr.alpha.items()},
        },
        "N": hr.n,
        "MN_equals_d": hr.product_check,
        "M_divides_d": system.d % acc.m == 0,
    }
    if system.d % acc.m:
        notes.append(f"M = {acc.m} does not divide |E| = {system.d}")

    if hr.feasible and cls.aperiodic:
        t13 = check_thm13(system)
        rep["thm13"] = {
            "mn_equals_d": t13.mn_equals_d,
            "fiber_check": t13.fiber_check,
            "fibers": [[lab[x] for x in f] for f in t13.fibers],
            "prime_branch": t13.prime_branch,
        }

    if cls.aperiodic:
        try:
            p10 = check_prop10(system, cap=semigroup_cap)
            rep["prop10"] = {
                "ok": p10.ok,
                "semigroup_size": p10.size_of_s,
                "min_image_over_s": p10.min_image_over_s,
                "recurrent_elements": len(p10.details),
            }
        except CapExceeded as exc:
            rep["prop10"] = {"ok": None, "skipped": str(exc)}
        profile = mixing_profile(kernel, mixing_horizon)
        below = next((n for n, v in enumerate(profile) if v < 1e-8), None)
        rep["mixing"] = {"d_1": fmt_float(profile[1]) if len(profile) > 1 else None,
                         "first_n_below_1e-8": below}
    else:
        rep["prop10"] = {"ok": None, "skipped": f"aperiodicity required (period {cls.period})"}
        rep["mixing"] = None

    name = name or catalog.identify(system)
    listed = catalog.LISTED_SEMIGROUPS.get(name) if name else None
    if listed is not None:
        try:
            table = enumerate_semigroup(system, semigroup_cap)
            have = {tuple(e) for e in table.elements}
            want = [system.compose([system.map_index(n) for n in w.split()]) for w in listed]
            rep["semigroup"] = {
                "size": len(table),
                "listed": listed,
                "listed_contained": all(tuple(w) in have for w in want),
            }
            if len(table) != len(listed):
                extra = sorted(word_str(system, table.words[i]) for i, e in enumerate(table.elements)
                               if e not in {tuple(w) for w in want})
                notes.append(
                    f"enumerated semigroup has {len(table)} elements; the listed {len(listed)} "
                    f"omit {', '.join(extra)}"
                )
        except CapExceeded as exc:
            rep["semigroup"] = {"skipped": str(exc)}

    rep["theory_map"] = THEORY_MAP
    rep["notes"] = notes
    return rep


def to_json(rep):
    return json.dumps(rep, indent=2, sort_keys=False) + "\n"


def to_text(rep):
    lines = []
    s = rep["system"]
    lines.append(f"states: {', '.join(s['states'])}  ({s['n_states']})")
    for m in s["maps"]:
        lines.append(f"  {m['name']:>8}  w={m['weight']:<6} {' '.join(m['table'])}")
    k = rep["kernel"]
    lines.append(f"kernel: irreducible={k['irreducible']} aperiodic={k['aperiodic']} period={k['period']}")
    lines.append("pi: " + ", ".join(f"{x}={p}" for x, p in rep["stationary"].items()))
    pairs = rep["accordability"]["accordable_pairs"]
    lines.append("accordable pairs: " + (", ".join("{" + ",".join(p) + "}" for p in pairs) or "none"))
    lines.append(f"M = {rep['M']}  witness {{{', '.join(rep['M_witness_set'])}}}")
    lines.append(f"min rank = {rep['min_rank']['rank']}  word: {rep['min_rank']['word'] or '(empty)'}")
    d = rep["determination"]
    lines.append(
        f"innovations determine the chain: {d['verdict']} "
        f"(pairs={d['all_pairs_accordable']}, diagonal={d['diagonal_recurrence']}, rank1={d['min_rank_is_one']})"
    )
    h = rep["hypothesis_h"]
    alpha = "" if not h["alpha"] else "  alpha: " + ", ".join(f"{k}={v}" for k, v in h["alpha"].items())
    lines.append(f"hypothesis H feasible: {h['feasible']}{alpha}")
    lines.append(f"N = {rep['N']}  M*N == |E|: {rep['MN_equals_d']}  M divides |E|: {rep['M_divides_d']}")
    if "thm13" in rep:
        t = rep["thm13"]
        lines.append(f"fibers of a minimal-rank map: {t['fibers']}  prime branch: {t['prime_branch']}")
    p = rep.get("prop10")
    if p:
        lines.append(f"recurrent images check: {p}")
    if rep.get("semigroup"):
        lines.append(f"semigroup: {rep['semigroup']}")
    for n in rep["notes"]:
        lines.append(f"note: {n}")
    return "\n".join(lines) + "\n"

