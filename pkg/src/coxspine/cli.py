"""Command-line harness: enumeration, verification suites, and export.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 resource cap exceeded.  All commands are deterministic given their
flags; suite reports carry no timing data (timing goes to stderr), so
re-runs and different --threads values produce bit-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time

from . import verify as verify_mod
from .graphs import (InvariantError, act, canonicalize, graph_from_json,
                     graph_to_dot, graph_to_json, standard_zero_star)
from .links import link_graph, link_to_dot, link_to_json
from .spine import BudgetExceeded, ball, ball_to_dot, ball_to_json
from .splittings import (canonical_splitting, common_refinement,
                         factor_partition, neighbor_stream,
                         splitting_from_json, splitting_to_json)
from .words import compose, conj_gen, identity, sigma, transposition

DEFAULT_BUDGET = 10 ** 6


def _budget(args):
    if args.budget is not None:
        return args.budget
    env = os.environ.get("COXSPINE_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _emit(text, args):
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def cmd_ball(args):
    b = ball(standard_zero_star(args.n), args.radius,
             max_vertices=_budget(args), threads=args.threads)
    if args.format == "dot":
        _emit(ball_to_dot(b), args)
    else:
        _emit(json.dumps(ball_to_json(b), sort_keys=True), args)
    return 0


def cmd_verify(args):
    kwargs = {"threads": args.threads}
    if args.seed is not None:
        kwargs["seed"] = args.seed
    if args.samples is not None:
        kwargs["samples"] = args.samples
    if args.instances is not None:
        kwargs["instances"] = args.instances
    t0 = time.monotonic()
    report = verify_mod.run_suite(args.suite, args.n, **kwargs)
    elapsed = time.monotonic() - t0
    print(json.dumps(report, sort_keys=True))
    print("suite %s n=%d: %d/%d in %.1fs"
          % (args.suite, args.n, report["passed"], report["checks"], elapsed),
          file=sys.stderr)
    return 0 if report["passed"] == report["checks"] else 1


def _sniff_splitting(data):
    verts = data.get("vertices", [])
    return bool(verts) and "labels" in verts[0]


def cmd_canon(args):
    data = _load_json(args.file)
    if _sniff_splitting(data):
        s = canonical_splitting(splitting_from_json(data))
        _emit(json.dumps(splitting_to_json(s), sort_keys=True), args)
    else:
        g = canonicalize(graph_from_json(data))
        _emit(json.dumps(graph_to_json(g), sort_keys=True), args)
    return 0


_TOKEN = re.compile(r"([st])\((\d+),(\d+)\)")


def parse_automorphism(spec, n):
    """Product string over s(j,i) (conjugate x_j by x_i) and t(i,j)
    (swap x_i and x_j) tokens, applied left to right."""
    f = identity(n)
    rest = spec
    for m in _TOKEN.finditer(spec):
        rest = rest.replace(m.group(0), "", 1)
        kind, a, b = m.group(1), int(m.group(2)), int(m.group(3))
        if not (1 <= a <= n and 1 <= b <= n):
            raise ValueError("index out of range in token %s" % m.group(0))
        move = sigma(n, a, b) if kind == "s" else transposition(n, a, b)
        f = compose(f, move)
    if rest.strip().replace("*", ""):
        raise ValueError("unparsed automorphism text: %r" % rest.strip())
    return f


def cmd_act(args):
    g = graph_from_json(_load_json(args.file))
    f = parse_automorphism(args.automorphism, g.n)
    _emit(json.dumps(graph_to_json(act(f, g)), sort_keys=True), args)
    return 0


def cmd_link(args):
    g = graph_from_json(_load_json(args.file))
    lg = link_graph(g, max_classes=_budget(args))
    if args.format == "dot":
        _emit(link_to_dot(lg), args)
    else:
        _emit(json.dumps(link_to_json(lg), sort_keys=True), args)
    return 0


def cmd_splitting_refine(args):
    data = _load_json(args.file)
    n = data["n"]
    parts = [factor_partition(
        n,
        [conj_gen(c["core"], c.get("conj", ())) for c in p["left"]],
        [conj_gen(c["core"], c.get("conj", ())) for c in p["right"]])
        for p in data["partitions"]]
    s = common_refinement(n, parts)
    _emit(json.dumps(splitting_to_json(s), sort_keys=True), args)
    return 0


def cmd_neighbors(args):
    s = splitting_from_json(_load_json(args.file))
    out = [splitting_to_json(t) for t in neighbor_stream(s, args.count)]
    _emit(json.dumps(out, sort_keys=True), args)
    return 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="coxspine",
        description="Spine, link, and splitting computations for the "
                    "universal Coxeter group W_n.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt=False):
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--budget", type=int, default=None,
                        help="vertex/class cap (default COXSPINE_BUDGET "
                             "or %d)" % DEFAULT_BUDGET)
        sp.add_argument("--output", default=None)
        if fmt:
            sp.add_argument("--format", choices=("json", "dot"),
                            default="json")

    sp = sub.add_parser("ball", help="enumerate a star-graph ball")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--radius", type=int, required=True)
    common(sp, fmt=True)
    sp.set_defaults(func=cmd_ball)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("suite", choices=sorted(verify_mod.SUITES))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--samples", type=int, default=None)
    sp.add_argument("--instances", type=int, default=None)
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("canon", help="canonical form of a graph or "
                                      "splitting JSON file")
    sp.add_argument("file")
    common(sp)
    sp.set_defaults(func=cmd_canon)

    sp = sub.add_parser("act", help="apply an automorphism to a graph")
    sp.add_argument("automorphism",
                    help='product of s(j,i) and t(i,j) tokens')
    sp.add_argument("file")
    common(sp)
    sp.set_defaults(func=cmd_act)

    sp = sub.add_parser("link", help="positive/negative link of a graph")
    sp.add_argument("file")
    common(sp, fmt=True)
    sp.set_defaults(func=cmd_link)

    sp = sub.add_parser("splitting-refine",
                        help="common refinement of one-edge splittings")
    sp.add_argument("file")
    common(sp)
    sp.set_defaults(func=cmd_splitting_refine)

    sp = sub.add_parser("neighbors",
                        help="stream distinct neighbors of a splitting")
    sp.add_argument("file")
    sp.add_argument("--count", type=int, default=10)
    common(sp)
    sp.set_defaults(func=cmd_neighbors)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print("resource cap exceeded: %s (seen %s)" % (exc, exc.seen),
              file=sys.stderr)
        return 3
    except RuntimeError as exc:
        if "cap" in str(exc) or "budget" in str(exc):
            print("resource cap exceeded: %s" % exc, file=sys.stderr)
            return 3
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except (InvariantError, ValueError, KeyError,
            json.JSONDecodeError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
