"""Command-line front end.

Exit status conventions: 0 on success, 1 on a semantic negative (input graph
is not threshold/split, instance not equivalent to its conflict graph), 2 on
malformed input.  Output is line-oriented and stable for fixed inputs.
"""
from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from .graphs import format_graph, parse_graph
from .knapsack import (
    BpInstance,
    DkpInstance,
    DkpItem,
    KpInstance,
    KpItem,
    NotEquivalentError,
    bp_lower_bound,
    check_equivalence_dkp,
    check_equivalence_kp,
    dbp_lower_bound,
    dvp_lower_bound,
    format_instance,
    format_report,
    format_solution,
    parse_instance,
    rational,
    solve_dkp_equivalent,
    solve_kp_equivalent,
)
from .kthreshold import (
    enumerate_im_k,
    enumerate_is_k,
    enumerate_mc_intersection,
    enumerate_mis_k,
    parse_cover,
)
from .split import recognize_split
from .threshold import (
    RecognitionFailure,
    count_im,
    count_is,
    count_mc,
    count_mis,
    enumerate_im,
    enumerate_is,
    enumerate_max_cliques,
    enumerate_mis,
    parse_sequence,
    recognize_threshold,
    sequence_from_bits,
    serialize_sequence,
    threshold_to_kp,
)


def _read(path):
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _sniff(text):
    """'graph' for `p ...` input, 'cover' for `k ...`, else 'sequence'."""
    for raw in text.splitlines():
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        tok = s.split()[0]
        if tok == "p":
            return "graph"
        if tok == "k":
            return "cover"
        return "sequence"
    return "sequence"


def _witness_line(failure):
    if failure.witness is None:
        return None
    verts = " ".join(str(v) for v in failure.witness)
    return f"induced {failure.tag}: {verts}"


def _cmd_recognize(args):
    g = parse_graph(_read(args.file))
    if args.split:
        got = recognize_split(g, want_witness=args.witness)
        if isinstance(got, RecognitionFailure):
            print("not a split graph")
            line = _witness_line(got)
            if line:
                print(line)
            return 1
        print("K " + " ".join(str(v) for v in got.K))
        print("S " + " ".join(str(v) for v in got.S))
        return 0
    got = recognize_threshold(g, want_witness=args.witness)
    if isinstance(got, RecognitionFailure):
        print("not a threshold graph")
        line = _witness_line(got)
        if line:
            print(line)
        return 1
    sys.stdout.write(serialize_sequence(got))
    return 0


_SINGLE_COUNT = {"mis": count_mis, "im": count_im, "is": count_is, "mc": count_mc}
_SINGLE_ENUM = {
    "mis": enumerate_mis,
    "im": enumerate_im,
    "is": enumerate_is,
    "mc": enumerate_max_cliques,
}
_COVER_ENUM = {
    "mis": enumerate_mis_k,
    "im": enumerate_im_k,
    "is": enumerate_is_k,
    "mc": enumerate_mc_intersection,
}


def _print_family(fam):
    for s in fam:
        print(" ".join(str(v) for v in s))


def _cmd_enumerate(args):
    text = _read(args.file)
    shape = _sniff(text)
    if shape == "cover":
        cover = parse_cover(text)
        fam = _COVER_ENUM[args.kind](cover)
        if args.count_only:
            print(len(fam))
        else:
            _print_family(fam)
        return 0
    if shape == "graph":
        g = parse_graph(text)
        got = recognize_threshold(g)
        if isinstance(got, RecognitionFailure):
            print(
                "not a threshold graph; supply a cover file (`k <k>` header) instead",
                file=sys.stderr,
            )
            return 1
        cs = got
    else:
        cs = parse_sequence(text)
    if args.count_only:
        print(_SINGLE_COUNT[args.kind](cs))
    else:
        _print_family(_SINGLE_ENUM[args.kind](cs))
    return 0


def _cmd_convert(args):
    text = _read(args.file)
    if args.direction == "graph-to-kp":
        if _sniff(text) == "graph":
            g = parse_graph(text)
            got = recognize_threshold(g)
            if isinstance(got, RecognitionFailure):
                print("not a threshold graph", file=sys.stderr)
                return 1
            cs = got
        else:
            cs = parse_sequence(text)
        profits = None
        if args.profits:
            profits = [rational(p) for p in args.profits.split(",")]
        inst = threshold_to_kp(cs, profits)
        sys.stdout.write(format_instance(inst))
        return 0
    inst = parse_instance(text)
    if isinstance(inst, KpInstance):
        rep = check_equivalence_kp(inst)
    else:
        rep = check_equivalence_dkp(inst)
    sys.stdout.write(format_graph(rep.conflict_graph))
    print("EQUIVALENT" if rep.equivalent else "NOT EQUIVALENT")
    if rep.witness:
        print("witness: " + " ".join(rep.witness))
    return 0 if rep.equivalent else 1


def _cmd_check(args):
    inst = parse_instance(_read(args.file))
    if isinstance(inst, KpInstance):
        rep = check_equivalence_kp(inst)
    else:
        rep = check_equivalence_dkp(inst)
    sys.stdout.write(format_report(rep))
    return 0 if rep.equivalent else 1


def _cmd_solve(args):
    inst = parse_instance(_read(args.file))
    try:
        if isinstance(inst, KpInstance):
            sol = solve_kp_equivalent(inst)
        else:
            sol = solve_dkp_equivalent(inst)
    except NotEquivalentError as e:
        sys.stdout.write(format_report(e.report))
        return 1
    sys.stdout.write(format_solution(sol))
    return 0


def _as_dkp(inst):
    if isinstance(inst, DkpInstance):
        return inst
    items = tuple(DkpItem(it.id, it.profit, (it.size,)) for it in inst.items)
    return DkpInstance(items, (inst.capacity,))


def _cmd_bound(args):
    inst = parse_instance(_read(args.file))
    try:
        if args.kind == "bp":
            dkp = _as_dkp(inst)
            if dkp.d != 1:
                raise ValueError("bp bound expects a one-dimensional instance")
            if dkp.capacities[0] != 1:
                raise ValueError("bp bound expects capacity 1")
            val = bp_lower_bound(BpInstance(tuple(it.sizes[0] for it in dkp.items)))
        elif args.kind == "dvp":
            val = dvp_lower_bound(_as_dkp(inst))
        else:
            val = dbp_lower_bound(_as_dkp(inst))
    except NotEquivalentError as e:
        sys.stdout.write(format_report(e.report))
        return 1
    print(val)
    return 0


def _random_bits(rng, n):
    return "1" + "".join(rng.choice("01") for _ in range(n - 1))


def _cmd_gen(args):
    rng = random.Random(args.seed)
    if args.kind == "threshold":
        cs = sequence_from_bits(_random_bits(rng, args.n))
        sys.stdout.write(serialize_sequence(cs))
        return 0
    if args.kind == "cover":
        print(f"k {args.k}")
        for _ in range(args.k):
            sys.stdout.write(serialize_sequence(sequence_from_bits(_random_bits(rng, args.n))))
        return 0
    cs = sequence_from_bits(_random_bits(rng, args.n))
    profits = [rng.randint(0, 3 * args.n) for _ in range(args.n)]
    inst = threshold_to_kp(cs, profits)
    q = Fraction(rng.randint(1, 30), rng.randint(1, 30))
    inst = KpInstance(
        tuple(KpItem(it.id, it.profit, it.size * q) for it in inst.items),
        inst.capacity * q,
    )
    sys.stdout.write(format_instance(inst))
    return 0


def _positive_int(text):
    val = int(text)
    if val < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return val


def build_parser():
    parser = argparse.ArgumentParser(
        prog="threshknap",
        description="Threshold-graph enumeration and equivalent-knapsack tools.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("recognize", help="recognize a graph file as threshold (or split)")
    p.add_argument("file")
    p.add_argument("--split", action="store_true", help="test for a split partition instead")
    p.add_argument("--witness", action="store_true", help="report a forbidden induced subgraph on failure")
    p.set_defaults(func=_cmd_recognize)

    p = sub.add_parser("enumerate", help="enumerate or count set families")
    p.add_argument("kind", choices=["mis", "im", "is", "mc"])
    p.add_argument("file", help="graph, creation sequence, or cover file")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--jobs", type=_positive_int, default=1, help="worker budget (results identical)")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("convert", help="translate between graphs and knapsack instances")
    p.add_argument("direction", choices=["graph-to-kp", "kp-to-graph"])
    p.add_argument("file")
    p.add_argument("--profits", help="comma-separated profits for graph-to-kp")
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("check", help="equivalence report for an instance JSON")
    p.add_argument("file")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("solve", help="solve an equivalent instance exactly")
    p.add_argument("file")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("bound", help="packing lower bounds")
    p.add_argument("kind", choices=["bp", "dvp", "dbp"])
    p.add_argument("file")
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("gen", help="deterministic random test inputs")
    p.add_argument("kind", choices=["threshold", "cover", "kp"])
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=_positive_int, default=2, help="cover members")
    p.set_defaults(func=_cmd_gen)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotEquivalentError as e:  # bounds outside explicit handlers
        sys.stdout.write(format_report(e.report))
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
