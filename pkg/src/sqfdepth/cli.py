"""Command line front end.

Exit codes: 0 success, 1 mathematical inconsistency, 2 input error,
3 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .generate import (
    CORPUS_NAMES,
    TARGETS,
    GenerationExhausted,
    GenSpec,
    UnknownName,
    UnrealizableGraph,
    corpus,
    random_ideal,
)
from .graph import (
    build_graph,
    complement_spanning_path,
    complement_spanning_tree,
    concatenation_split,
    depth_by_theorem,
    export_dot,
    good_vertices,
    is_join_graph,
)
from .homology import BudgetExceeded, depth_oracle
from .ideal import IdealError, profile
from .sdepth import (
    DEFAULT_BUDGET_MS,
    FEASIBLE,
    UNKNOWN,
    size_lower_bound,
    sdepth_at_least,
    sdepth_exact,
    split_variable_bound,
)
from .validation import load_ideal
from .verify import check_instance, run_random, shrink

SCHEMA = "sqfdepth.report/v1"
EXIT_OK, EXIT_INCONSISTENT, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def _report(command, ideal=None, **sections):
    out = {"schema": SCHEMA, "command": command}
    if ideal is not None:
        out["input"] = ideal.to_dict()
    out.update(sections)
    return out


def _emit(report, args, human):
    if getattr(args, "stable", False):
        report.pop("timings", None)
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(human(report))


def _ms(start):
    return round((time.perf_counter() - start) * 1000, 3)


def graph_section(ideal):
    if ideal.s == 1:
        return {"trivial": True, "reason": "single prime"}
    g = build_graph(ideal)
    join = is_join_graph(g)
    path = complement_spanning_path(g)
    tree = complement_spanning_tree(g)
    concat = concatenation_split(g)
    out = g.to_dict()
    out.update(
        trivial=False,
        join_split=[sorted(b) for b in join] if join else None,
        good_vertices=sorted(good_vertices(g)),
        triangle_property=bool(good_vertices(g)),
        complement_path=path,
        complement_tree=[list(p) for p in tree] if tree else None,
        concatenation=(
            {"vertex": concat[0], "blocks": [sorted(concat[1]), sorted(concat[2])]}
            if concat
            else None
        ),
    )
    return out


def _human_analyze(rep):
    p, g, v = rep["profile"], rep["graph"], rep["theorem"]
    lines = [
        f"n={rep['input']['n']} s={len(rep['input']['primes'])} support size h={p['h']}",
        f"size={p['size']} bigsize={p['bigsize']} q={p['q']}",
    ]
    if g.get("trivial"):
        lines.append("graph: trivial (single prime)")
    else:
        lines.append("graph edges: " + " ".join(f"{a}{b}" if max(a, b) < 10 else f"{a}-{b}" for a, b in g["edges"]))
        lines.append(f"good vertices: {g['good_vertices']}")
        lines.append(f"join split: {g['join_split']}")
        lines.append(f"complement path: {g['complement_path']}")
    if v["applicable"]:
        lines.append(
            f"depth S/I = {v['module_depth']}, depth I = {v['ideal_depth']} "
            f"({v['certificate']['type']})"
        )
    else:
        lines.append(f"graph reading not applicable: {v['reason']}")
    return "\n".join(lines)


def cmd_analyze(args):
    ideal = load_ideal(args.file)
    start = time.perf_counter()
    g = graph_section(ideal)
    verdict = depth_by_theorem(ideal)
    rep = _report(
        "analyze",
        ideal,
        profile=profile(ideal).to_dict(),
        graph=g,
        theorem=verdict.to_dict(),
        timings={"total_ms": _ms(start)},
    )
    if args.dot and ideal.s > 1:
        Path(args.dot).write_text(export_dot(build_graph(ideal), deficits=True))
    _emit(rep, args, _human_analyze)
    return EXIT_OK


def cmd_depth(args):
    ideal = load_ideal(args.file)
    chars = [0, 2] if args.all_chars else [args.char]
    start = time.perf_counter()
    results, timings = {}, {}
    for c in chars:
        t = time.perf_counter()
        res = depth_oracle(ideal, c, max_vars=args.max_vars)
        timings[f"char{c}_ms"] = _ms(t)
        results[f"char{c}"] = {
            "module_depth": res.module_depth,
            "ideal_depth": res.ideal_depth,
            "projective_dimension": res.projective_dimension,
            "betti_totals": {str(i): b for i, b in res.betti.totals().items()},
        }
        if args.betti:
            results[f"char{c}"]["betti"] = res.betti.to_dict()["entries"]
    depths = {k: r["ideal_depth"] for k, r in results.items()}
    rep = _report(
        "depth",
        ideal,
        oracle=results,
        consistency={"characteristic_disagreement": len(set(depths.values())) > 1},
        timings=dict(timings, total_ms=_ms(start)),
    )

    def human(r):
        lines = [f"{k}: depth S/I = {v['module_depth']}, depth I = {v['ideal_depth']}, pd = {v['projective_dimension']}"
                 for k, v in r["oracle"].items()]
        if len(chars) > 1:
            lines.append(f"characteristic disagreement: {r['consistency']['characteristic_disagreement']}")
        return "\n".join(lines)

    _emit(rep, args, human)
    return EXIT_OK


def cmd_sdepth(args):
    ideal = load_ideal(args.file)
    start = time.perf_counter()
    if args.exact:
        res = sdepth_exact(ideal, budget_ms=args.budget_ms)
        section = {
            "mode": "exact",
            "value": res.value,
            "next_level": res.upper_checked,
            "levels": {str(k): v for k, v in sorted(res.levels.items())},
            "certificate": res.partition.to_json(),
        }
        code = EXIT_OK
    elif args.at_least is not None:
        res = sdepth_at_least(ideal, args.at_least, budget_ms=args.budget_ms)
        section = {
            "mode": "at_least",
            "target": args.at_least,
            "status": res.status,
            "nodes": res.nodes,
            "certificate": res.partition.to_json() if res.status == FEASIBLE else None,
        }
        code = EXIT_OK
    else:
        splits = {
            str(x): split_variable_bound(ideal, x, budget_ms=args.budget_ms / max(len(ideal.support), 1))
            for x in sorted(ideal.support)
        }
        floor = size_lower_bound(ideal)
        section = {
            "mode": "bounds",
            "size_lower_bound": floor,
            "split_variable_bounds": splits,
            "lower_bound": max([floor, *splits.values()]),
        }
        code = EXIT_OK
    rep = _report("sdepth", ideal, sdepth=section, timings={"total_ms": _ms(start)})

    def human(r):
        s = r["sdepth"]
        if s["mode"] == "exact":
            return f"sdepth I = {s['value']} ({len(s['certificate'])} intervals)"
        if s["mode"] == "at_least":
            return f"sdepth I >= {s['target']}: {s['status']}"
        return f"sdepth I >= {s['lower_bound']} (1+size = {s['size_lower_bound']})"

    _emit(rep, args, human)
    return code


def cmd_verify(args):
    start = time.perf_counter()
    if args.random:
        batch = run_random(args.random, args.seed, args.n, args.s, budget_ms=args.budget_ms)
        cases, violations = batch["cases"], batch["violations"]
        skipped = batch["skipped"]
        label = None
    else:
        if not args.file:
            raise InputError("verify needs a FILE or --random N")
        ideal = load_ideal(args.file)
        case = check_instance(ideal)
        cases, violations, skipped, label = [case], case.violations, [], ideal
    minimized = []
    for v in violations[:1]:
        small = shrink(v.ideal, v.check) if v.check != "concatenation_min_law" else v.ideal
        minimized.append({"check": v.check, "counterexample": small.to_dict(), "detail": v.detail})
    rep = _report(
        "verify",
        label,
        cases=len(cases),
        checks=_tally(cases),
        skipped=skipped,
        violations=[v.to_dict() for v in violations],
        minimized=minimized,
        consistency={"ok": not violations},
        timings={"total_ms": _ms(start)},
    )

    def human(r):
        lines = [f"{r['cases']} case(s) checked"]
        for name, counts in r["checks"].items():
            lines.append(f"  {name}: " + ", ".join(f"{k}={v}" for k, v in counts.items()))
        if r["skipped"]:
            lines.append(f"  skipped generations: {len(r['skipped'])}")
        if r["minimized"]:
            m = r["minimized"][0]
            lines.append(f"VIOLATION {m['check']}: {m['detail']}")
            lines.append("counterexample: " + json.dumps(m["counterexample"]))
        else:
            lines.append("all checks passed")
        return "\n".join(lines)

    _emit(rep, args, human)
    return EXIT_INCONSISTENT if violations else EXIT_OK


def _tally(cases):
    out = {}
    for c in cases:
        for name, status in c.checks.items():
            out.setdefault(name, {}).setdefault(status, 0)
            out[name][status] += 1
    return {k: dict(sorted(v.items())) for k, v in sorted(out.items())}


def parse_edges(text: str) -> tuple:
    """``"23,14"`` or ``"2-3,1-4"`` into pairs."""
    edges = []
    for token in text.replace(" ", "").split(","):
        if not token:
            continue
        if "-" in token:
            a, b = token.split("-", 1)
        elif len(token) == 2:
            a, b = token
        else:
            raise InputError(f"cannot read edge {token!r}; use '23' or '2-3'")
        edges.append((int(a), int(b)))
    return tuple(edges)


def cmd_gen(args):
    if args.corpus:
        ideal = corpus(args.corpus)
        attempts = 0
    else:
        if args.s is None:
            raise InputError("--s is required with --target")
        spec = GenSpec(
            n=args.n,
            s=args.s,
            target=args.target,
            seed=args.seed,
            q=args.q,
            edges=parse_edges(args.edges) if args.edges else (),
        )
        gen = random_ideal(spec)
        ideal, attempts = gen.ideal, gen.attempts
    text = json.dumps(ideal.to_dict(), sort_keys=True) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    if attempts:
        print(f"generated after {attempts} attempt(s)", file=sys.stderr)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sqfdepth",
        description="Depth, graph and Stanley depth of squarefree monomial ideals.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, file_required=True):
        if file_required:
            p.add_argument("file", help="JSON ideal file or corpus:NAME (" + ", ".join(CORPUS_NAMES) + ")")
        p.add_argument("--json", action="store_true", help="emit the JSON report")
        p.add_argument("--stable", action="store_true", help="omit timing fields")

    p = sub.add_parser("analyze", help="profile, graph and graph-based depth")
    common(p)
    p.add_argument("--dot", metavar="PATH", help="write the graph in DOT format")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("depth", help="homological depth via Hochster's formula")
    common(p)
    p.add_argument("--char", type=int, default=0, help="field characteristic (0 or a prime)")
    p.add_argument("--all-chars", action="store_true", help="run characteristics 0 and 2")
    p.add_argument("--max-vars", type=int, default=16)
    p.add_argument("--betti", action="store_true", help="include every Betti number")
    p.set_defaults(func=cmd_depth)

    p = sub.add_parser("sdepth", help="Stanley depth")
    common(p)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--at-least", type=int, metavar="D")
    mode.add_argument("--bounds", action="store_true")
    p.add_argument("--budget-ms", type=float, default=DEFAULT_BUDGET_MS)
    p.set_defaults(func=cmd_sdepth)

    p = sub.add_parser("verify", help="consistency checks")
    common(p, file_required=False)
    p.add_argument("file", nargs="?")
    p.add_argument("--random", type=int, metavar="N")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--s", type=int, default=4)
    p.add_argument("--budget-ms", type=float, default=DEFAULT_BUDGET_MS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="write an ideal in the JSON format")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--corpus", choices=CORPUS_NAMES)
    src.add_argument("--target", choices=TARGETS)
    p.add_argument("--n", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--edges", help="graph edges for --target graph, e.g. '23,14'")
    p.add_argument("-o", "--output", metavar="FILE")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "budget_ms", 1) <= 0:
        parser.error("--budget-ms must be positive")
    try:
        return args.func(args)
    except (IdealError, InputError, UnknownName, UnrealizableGraph, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except GenerationExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
