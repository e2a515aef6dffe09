"""Command-line front door.

Exit codes: 0 success / covers, 1 negative answer, 2 unsupported or
refused or unknown, 3 input error.  All results are JSON on stdout;
``--pretty`` adds a human-readable summary on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import gadgets
from .classify import block_shapes, classify_shape, verdict
from .covers import CoveringProjection, DEFAULT_BUDGET, oracle_cover, verify_cover
from .graphs import Graph, GraphError, parse_graph, serialize_graph
from .partition import degree_adjust, degree_partition, normalize_colours, reduce_pair
from .solver import UnsupportedTarget, solve_cover

EXIT_OK = 0
EXIT_NO = 1
EXIT_REFUSED = 2
EXIT_INPUT = 3


def _load(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def _emit(data, pretty: bool) -> None:
    print(json.dumps(data, indent=2 if pretty else None, sort_keys=True))


def _budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("COVERKIT_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def cmd_classify(args) -> int:
    from .graphs import is_tree, total_degree

    h = _load(args.target)
    v = verdict(h)
    shapes = []
    try:
        if is_tree(h) or all(total_degree(h, x) <= 2 for x in h.vertices()):
            hr = h
        else:
            hr, _ = degree_adjust(h)
        part, _ = degree_partition(hr)
        if all(len(b) <= 2 for b in part.blocks):
            hn = normalize_colours(hr, part)
            pn, _ = degree_partition(hn)
            for bg in block_shapes(hn, pn):
                shapes.append({
                    "blocks": list(bg.blocks),
                    "colour": bg.colour,
                    "shape": str(bg.shape),
                    "class": classify_shape(bg.shape),
                })
    except GraphError:
        pass
    out = {"verdict": v.kind, "reason": v.reason, "shapes": shapes}
    if v.witness is not None:
        out["witness"] = {"blocks": list(v.witness.blocks), "shape": str(v.witness.shape)}
    _emit(out, args.pretty)
    return EXIT_OK


def cmd_solve(args) -> int:
    g, h = _load(args.graph), _load(args.target)
    try:
        res = solve_cover(g, h)
    except UnsupportedTarget as exc:
        _emit({"status": "refused", "reason": str(exc)}, args.pretty)
        return EXIT_REFUSED
    out = {"status": "covers" if res.yes else "does-not-cover"}
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            json.dump(res.trace.to_dict(), fh, indent=2)
    if res.yes and args.certificate:
        with open(args.certificate, "w", encoding="utf-8") as fh:
            fh.write(res.projection.to_json())
    if res.yes:
        out["certificate"] = {"fv": res.projection.fv, "fe": res.projection.fe}
    else:
        out["failure"] = res.trace.failure
    _emit(out, args.pretty)
    return EXIT_OK if res.yes else EXIT_NO


def cmd_oracle(args) -> int:
    g, h = _load(args.graph), _load(args.target)
    res = oracle_cover(g, h, budget=_budget(args))
    out = {"status": res.status, "nodes": res.nodes}
    if res.yes:
        out["certificate"] = {"fv": res.projection.fv, "fe": res.projection.fe}
        if args.certificate:
            with open(args.certificate, "w", encoding="utf-8") as fh:
                fh.write(res.projection.to_json())
    _emit(out, args.pretty)
    return EXIT_OK if res.yes else (EXIT_NO if res.no else EXIT_REFUSED)


def cmd_verify(args) -> int:
    g, h = _load(args.graph), _load(args.target)
    with open(args.map, encoding="utf-8") as fh:
        f = CoveringProjection.from_json(fh.read())
    res = verify_cover(g, h, f)
    _emit({"valid": res.ok, "violations": res.violations}, args.pretty)
    return EXIT_OK if res.ok else EXIT_NO


def cmd_partition(args) -> int:
    g = _load(args.graph)
    part, matrix = degree_partition(g)
    entries = [
        {"from": i, "to": j, "colour": c, "direction": d, "count": n}
        for (i, j, c, d), n in sorted(matrix.entries.items())
    ]
    _emit({"blocks": part.blocks, "matrix": entries}, args.pretty)
    return EXIT_OK


def cmd_reduce(args) -> int:
    g = _load(args.graph)
    if args.target:
        h = _load(args.target)
        gr, hr, record = reduce_pair(g, h)
        out = {"g": serialize_graph(gr), "h": serialize_graph(hr), "record": json.loads(record.to_json())}
    else:
        gr, record = degree_adjust(g)
        out = {"g": serialize_graph(gr), "record": json.loads(record.to_json())}
    _emit(out, args.pretty)
    return EXIT_OK


def cmd_gen(args) -> int:
    name = args.gadget.lower()
    seed = args.seed or 0
    if name == "tripod":
        g = gadgets.limping_tripod()
    elif name == "fw2":
        g = gadgets.fw2_target()
    elif name in ("c0", "ck", "dk", "b1"):
        vg = gadgets.variable_gadget(name, args.k or 1)
        if args.formula:
            with open(args.formula, encoding="utf-8") as fh:
                f = gadgets.Formula.from_json(fh.read())
            g = gadgets.compose_claimA(vg, f)
        else:
            g = vg.graph
    elif name == "target":
        g = gadgets.gadget_target(args.case or "c0", args.k or 1)
    elif name == "gphi":
        c = args.c or 3
        if args.formula:
            with open(args.formula, encoding="utf-8") as fh:
                f = gadgets.Formula.from_json(fh.read())
        else:
            f = gadgets.random_formula(c, args.clauses or 3, c, seed)
        g = gadgets.build_gphi_fw(c, f)
    elif name == "fwtarget":
        g = gadgets.fw_target(args.c or 3)
    elif name == "wdtarget":
        g = gadgets.wd_target(args.b or 2, args.c or 1)
    elif name == "wdlift":
        b, c = args.b or 2, args.c or 1
        base, _ = gadgets.random_regular("bipartite", b + c, args.m or 4, seed)
        g = gadgets.directed_lift_wd(base, b, c)
    elif name == "regular":
        g, _ = gadgets.random_regular(args.case or "even", args.k or 2, args.m or 6, seed)
    elif name == "formula":
        f = gadgets.random_formula(args.c or 2, args.clauses or 4, args.k or 4, seed)
        text = f.to_json()
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            print(text)
        return EXIT_OK
    else:
        raise GraphError(f"unknown gadget {args.gadget!r}")
    text = serialize_graph(g)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_dot(args) -> int:
    g = _load(args.graph)
    lines = [f"graph \"{g.name}\" {{"]
    colours = sorted(g.vertex_colours() | g.edge_colours())
    palette = ["black", "red", "blue", "green3", "orange", "purple", "brown", "cyan3"]
    cmap = {c: palette[i % len(palette)] for i, c in enumerate(colours)}
    for v in g.vertices():
        lines.append(f'  "{v}" [color={cmap[g.vertex_colour(v)]}];')
    stub = 0
    for e in g.edges():
        col = cmap[e.colour]
        if e.kind == "edge":
            lines.append(f'  "{e.u}" -- "{e.v}" [color={col}];')
        elif e.kind == "arc":
            lines.append(f'  "{e.tail}" -- "{e.head}" [color={col}, dir=forward];')
        elif e.kind == "loop":
            lines.append(f'  "{e.u}" -- "{e.u}" [color={col}];')
        elif e.kind == "dloop":
            lines.append(f'  "{e.u}" -- "{e.u}" [color={col}, dir=forward];')
        else:
            stub += 1
            lines.append(f'  "__stub{stub}" [style=invis, shape=point];')
            lines.append(f'  "{e.u}" -- "__stub{stub}" [color={col}];')
    lines.append("}")
    print("\n".join(lines))
    return EXIT_OK


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="coverkit", description="graph cover decision toolkit")
    ap.add_argument("--pretty", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="complexity verdict for a target graph")
    p.add_argument("target")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("solve", help="polynomial decision for harmless targets")
    p.add_argument("graph")
    p.add_argument("target")
    p.add_argument("--certificate")
    p.add_argument("--trace")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="exhaustive search, any target")
    p.add_argument("graph")
    p.add_argument("target")
    p.add_argument("--budget", type=int)
    p.add_argument("--certificate")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="check a covering projection certificate")
    p.add_argument("graph")
    p.add_argument("target")
    p.add_argument("map")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("partition", help="degree partition and refinement matrix")
    p.add_argument("graph")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("reduce", help="degree-adjusting reduction")
    p.add_argument("graph")
    p.add_argument("target", nargs="?")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("gen", help="generate gadgets, targets and instances")
    p.add_argument("gadget")
    p.add_argument("--c", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--clauses", type=int)
    p.add_argument("--case")
    p.add_argument("--formula")
    p.add_argument("--seed", type=int)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("dot", help="DOT export (semi-edges as half-edges)")
    p.add_argument("graph")
    p.set_defaults(func=cmd_dot)

    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
