"""Command-line interface.

Every FILE argument is a system document (JSON) or ``builtin:NAME``.
Exit codes: 0 success, 1 analysis refused (hypotheses not met or a cap hit),
2 input error, 3 internal consistency failure.
"""

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import catalog, dot, report
from .accord import accordable, max_non_accordable, min_rank
from .cftp import cftp_residual_sample, cftp_sample, check_cftp_preconditions, empirical_law
from .errors import CapExceeded, ConsistencyError, InputError, PreconditionError
from .filtering import atom_profile, convergence_trace, summarize_traces
from .model import (
    DEFAULT_MAX_STATES,
    build_kernel,
    dumps,
    load_system,
    require_irreducible,
    stationary_distribution,
    tv_distance,
)
from .semigroup import enumerate_semigroup, walk_structure
from .structure import build_full_partition, h_report, verify_h_certificate


def read_system(spec, max_states=DEFAULT_MAX_STATES):
    if spec.startswith("builtin:"):
        return catalog.builtin(spec.split(":", 1)[1])
    path = Path(spec)
    if not path.exists():
        raise InputError(f"no such file: {spec}")
    return load_system(path.read_text(), max_states=max_states)


def _emit(text, path=None):
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args):
    system = read_system(args.file, args.max_states)
    name = args.file.split(":", 1)[1] if args.file.startswith("builtin:") else None
    rep = report.analyze(system, semigroup_cap=args.cap, name=name)
    _emit(report.to_text(rep) if args.text else report.to_json(rep))
    return 0


def cmd_accord(args):
    system = read_system(args.file, args.max_states)
    if args.dot:
        Path(args.dot).write_text(dot.pair_graph_dot(system))
    if args.relation_dot:
        Path(args.relation_dot).write_text(dot.relation_dot(system))
    if args.pair:
        x, y = (system.index(v) for v in args.pair)
        res = accordable(system, x, y)
        out = {"pair": args.pair, "accordable": res.verdict}
        if args.witness:
            out["witness"] = None if res.witness is None else " ".join(system.word_names(res.witness))
        print(json.dumps(out))
        return 0
    rep = max_non_accordable(system)
    lab = system.labels
    print(json.dumps({
        "relation": [[int(v) for v in row] for row in rep.relation],
        "M": rep.m,
        "witness_set": [lab[x] for x in rep.witness_set],
        "witnesses": {f"{lab[x]},{lab[y]}": " ".join(system.word_names(w))
                      for (x, y), w in sorted(rep.witnesses.items())} if args.witness else None,
    }, indent=2))
    return 0


def cmd_semigroup(args):
    system = read_system(args.file, args.max_states)
    table = enumerate_semigroup(system, args.cap)
    walk = walk_structure(table)
    if args.dot:
        Path(args.dot).write_text(dot.walk_graph_dot(system, walk))
    print(json.dumps({
        "size": len(table),
        "elements": [
            {"word": " ".join(system.word_names(table.words[i])),
             "table": [system.labels[v] for v in e],
             "image_size": len(set(e)),
             "recurrent": i in set(walk.recurrent)}
            for i, e in enumerate(table.elements)
        ],
        "terminal_classes": len(walk.terminal),
    }, indent=2))
    return 0


def _trace_job(payload):
    system, seed, horizon = payload
    return convergence_trace(system, seed, horizon)


def cmd_conditional(args):
    system = read_system(args.file, args.max_states)
    require_irreducible(build_kernel(system), system.labels, aperiodic=True)
    seeds = list(range(args.seed, args.seed + args.reps))
    jobs = [(system, s, args.horizon) for s in seeds]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            traces = list(pool.map(_trace_job, jobs))
    else:
        traces = [_trace_job(j) for j in jobs]
    if args.dump:
        rows = ["seed,n,support,law,tv"]
        for t in traces:
            for s in t.steps:
                support = " ".join(system.labels[y] for y in sorted(s.support))
                law = " ".join(str(p) for p in s.law)
                rows.append(f"{t.seed},{s.n},{support},{law},{s.tv:.12e}")
        Path(args.dump).write_text("\n".join(rows) + "\n")
    print(f"{'seed':>6} {'stab_n':>7} {'atoms':>5} {'final_tv':>12}")
    for t in traces:
        at = t.stabilized_at()
        print(f"{t.seed:>6} {str(at):>7} {t.final.atom_count:>5} {t.final.tv:>12.3e}")
    summ = summarize_traces(traces)
    prof = [atom_profile(t) for t in traces]
    summ["all_nonincreasing"] = all(p.nonincreasing for p in prof)
    summ["M"] = traces[0].m
    print(json.dumps(summ))
    return 0


def cmd_cftp(args):
    system = read_system(args.file, args.max_states)
    kernel = build_kernel(system)
    pi = stationary_distribution(kernel, system.labels)
    seeds = range(args.seed, args.seed + args.samples)
    if args.residual:
        require_irreducible(kernel, system.labels, aperiodic=True)
        m = min_rank(system).rank
        results = [cftp_residual_sample(system, s, s + 10**9, target=m) for s in seeds]
        samples = [r.sample for r in results]
        depths = [r.stabilization_index for r in results]
    else:
        check_cftp_preconditions(system)
        results = [cftp_sample(system, s, checked=True) for s in seeds]
        samples = [r.sample for r in results]
        depths = [r.coalescence_depth for r in results]
    emp = empirical_law(samples, system.d)
    print(f"{'state':>8} {'empirical':>10} {'exact':>10}")
    for x in range(system.d):
        print(f"{system.labels[x]:>8} {emp[x]:>10.4f} {float(pi[x]):>10.4f}  ({pi[x]})")
    summary = {"samples": len(samples), "tv": round(tv_distance(emp, [float(p) for p in pi]), 6),
               "max_depth": max(depths), "mean_depth": round(sum(depths) / len(depths), 3)}
    if args.json:
        summary["depths"] = dict(zip(map(str, seeds), depths))
    print(json.dumps(summary))
    return 0


def cmd_check_h(args):
    system = read_system(args.file, args.max_states)
    hr = h_report(system)
    out = {
        "feasible": hr.feasible,
        "t_star": None if hr.t_star is None else str(hr.t_star),
        "alpha": None if hr.alpha is None else {k: str(v) for k, v in hr.alpha.items()},
        "certificate_verified": bool(hr.alpha) and verify_h_certificate(system, hr.alpha),
        "M": hr.m,
        "N": hr.n,
        "MN_equals_d": hr.product_check,
    }
    print(json.dumps(out, indent=2))
    return 0


def cmd_partition(args):
    system = read_system(args.file, args.max_states)
    part, steps = build_full_partition(system)
    lab = system.labels
    print(json.dumps({
        "blocks": [[lab[x] for x in sorted(b)] for b in part.blocks],
        "values": [lab[c] for c in part.values],
        "word": " ".join(system.word_names(part.word)),
        "extension_steps": steps,
    }, indent=2))
    return 0


def cmd_builtin(args):
    system = catalog.builtin(args.name)
    _emit(dumps(system) + "\n", args.emit)
    return 0


def _parse_weights(text):
    out = {}
    for item in text.split(","):
        g, w = item.split(":")
        out[int(g)] = Fraction(w)
    return out


def cmd_gen(args):
    if args.kind == "colored-graph":
        system = catalog.gen_colored_graph(args.d, args.colors, args.seed)
    else:
        if args.cyclic:
            labels, table = catalog.cyclic_group(args.cyclic)
        elif args.symmetric:
            labels, table = catalog.symmetric_group(args.symmetric)
        else:
            raise InputError("gen group needs --cyclic N or --symmetric K")
        if not args.weights:
            raise InputError("gen group needs --weights 'index:p/q,...'")
        system = catalog.gen_group_action(table, _parse_weights(args.weights), labels)
    _emit(dumps(system) + "\n", args.emit)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="randmaps", description=__doc__.splitlines()[0])
    p.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="full report")
    a.add_argument("file")
    fmt = a.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", default=True)
    fmt.add_argument("--text", action="store_true")
    a.add_argument("--cap", type=int, default=10**5, help="semigroup enumeration cap")
    a.set_defaults(func=cmd_analyze)

    a = sub.add_parser("accord", help="accordability relation, M, witnesses")
    a.add_argument("file")
    a.add_argument("--pair", nargs=2, metavar=("X", "Y"))
    a.add_argument("--witness", action="store_true")
    a.add_argument("--dot", help="write the pair graph as DOT")
    a.add_argument("--relation-dot", help="write the accordability relation as DOT")
    a.set_defaults(func=cmd_accord)

    a = sub.add_parser("semigroup", help="enumerate S and the walk structure")
    a.add_argument("file")
    a.add_argument("--cap", type=int, default=10**6)
    a.add_argument("--dot")
    a.set_defaults(func=cmd_semigroup)

    a = sub.add_parser("conditional", help="filtered-law traces")
    a.add_argument("file")
    a.add_argument("--seed", type=int, required=True)
    a.add_argument("--horizon", type=int, required=True)
    a.add_argument("--reps", type=int, default=1)
    a.add_argument("--jobs", type=int, default=1)
    a.add_argument("--dump", help="write per-step rows as CSV")
    a.set_defaults(func=cmd_conditional)

    a = sub.add_parser("cftp", help="exact sampling")
    a.add_argument("file")
    a.add_argument("--samples", type=int, required=True)
    a.add_argument("--seed", type=int, required=True)
    a.add_argument("--residual", action="store_true", help="stabilized image + uniform pick (any M)")
    a.add_argument("--json", action="store_true", help="include per-seed depths")
    a.set_defaults(func=cmd_cftp)

    a = sub.add_parser("check-h", help="uniform-reweighting LP, N, M*N")
    a.add_argument("file")
    a.set_defaults(func=cmd_check_h)

    a = sub.add_parser("partition", help="block partition of E into M blocks of N states")
    a.add_argument("file")
    a.set_defaults(func=cmd_partition)

    a = sub.add_parser("builtin", help="emit a builtin system")
    a.add_argument("name")
    a.add_argument("--emit")
    a.set_defaults(func=cmd_builtin)

    a = sub.add_parser("gen", help="generate a system")
    a.add_argument("kind", choices=["colored-graph", "group"])
    a.add_argument("--d", type=int, default=4)
    a.add_argument("--colors", type=int, default=2)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--cyclic", type=int)
    a.add_argument("--symmetric", type=int)
    a.add_argument("--weights")
    a.add_argument("--emit")
    a.set_defaults(func=cmd_gen)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, json.JSONDecodeError, ValueError, IndexError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except (PreconditionError, CapExceeded) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 1
    except ConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
